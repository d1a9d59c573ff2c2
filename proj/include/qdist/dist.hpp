#ifndef QDIST_DIST_HPP
#define QDIST_DIST_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "qdist/qcalc.hpp"

namespace qdist {

// Category counts (x_1, ..., x_k). For the n-trial distributions the counts
// must satisfy sum x_j <= n; the remaining n - sum trials are failures.
using Outcome = std::vector<long>;

struct QBinomialParams {
  long n;
  double theta;  // odds parameter, > 0
  QContext ctx;

  QBinomialParams(long n_, double theta_, QContext ctx_);
};

struct QMultinomialParams {
  long n;
  std::vector<double> thetas;  // one odds parameter per success kind, all > 0
  QContext ctx;

  QMultinomialParams(long n_, std::vector<double> thetas_, QContext ctx_);
  std::size_t k() const { return thetas.size(); }
};

struct HeineParams {
  double lambda;  // rate, > 0
  QContext ctx;

  HeineParams(double lambda_, QContext ctx_);
};

struct MultipleHeineParams {
  std::vector<double> lambdas;  // one rate per coordinate, all > 0
  QContext ctx;

  MultipleHeineParams(std::vector<double> lambdas_, QContext ctx_);
  std::size_t k() const { return lambdas.size(); }
};

// Mean and variance of a deformed variable [X]_{1/q}, possibly conditional
// on earlier coordinates.
struct MomentPair {
  double mean;
  double variance;
};

// ---------------------------------------------------------------------------
// Exact probability functions. Each pmf has a log-domain twin; the linear
// value is exp() of it, so extreme tails degrade gracefully instead of
// underflowing mid-computation.

double qbinomial_log_pmf(const QBinomialParams& params, long x);
double qbinomial_pmf(const QBinomialParams& params, long x);

double heine_log_pmf(const HeineParams& params, long x);
double heine_pmf(const HeineParams& params, long x);

double qmultinomial_log_pmf(const QMultinomialParams& params,
                            const Outcome& outcome);
double qmultinomial_pmf(const QMultinomialParams& params,
                        const Outcome& outcome);

double multiple_heine_log_pmf(const MultipleHeineParams& params,
                              const Outcome& outcome);
double multiple_heine_pmf(const MultipleHeineParams& params,
                          const Outcome& outcome);

// ---------------------------------------------------------------------------
// Deformed-variable moments.

// Mean/variance of [X]_{1/q} for a q-binomial(n, theta):
//   mean = [n]_q theta / (1 + theta q^{n-1})
//   var  = (1-q)/q [n]_q^2 theta^2 / ((1+theta q^{n-1})^2 (1+theta q^{n-2}))
//        + [n]_q theta / ((1+theta q^{n-1})(1+theta q^{n-2}))
MomentPair qbinomial_deformed_moments(const QBinomialParams& params);

// Moments of [X_1]_{1/q} under the q-multinomial (its marginal is the
// q-binomial with odds theta_1).
MomentPair marginal_moments(const QMultinomialParams& params);

// Conditional moments of [X_j]_{1/q} given X_1..X_{j-1} = prefix; j is
// 1-based and must be >= 2. The conditional law is q-binomial with
// n - s_{j-1} trials and odds theta_j.
MomentPair conditional_moments(const QMultinomialParams& params, std::size_t j,
                               std::span<const long> prefix);

// Moments of [X]_{1/q} under Heine(lambda): mean lambda, variance
// lambda^2 q^{-1} (1-q) + lambda.
MomentPair heine_deformed_moments(const HeineParams& params);

// Smallest x_max such that the Heine pmf mass beyond x_max is <= tail_bound.
// Uses the geometric majorant pmf(x+1)/pmf(x) = q^x lambda / [x+1]_q <= 1/2
// past the returned point.
long heine_support_cutoff(const HeineParams& params, double tail_bound);

// ---------------------------------------------------------------------------
// Sampling. Draws the conditional chain X_1 ~ qBinomial(n, theta_1),
// X_2 | X_1 ~ qBinomial(n - x_1, theta_2), ... by inverse CDF over the finite
// support. Deterministic for a given seed; distinct seeds give independent
// streams.
std::vector<Outcome> sample(const QMultinomialParams& params, long count,
                            std::uint64_t seed);

}  // namespace qdist

#endif  // QDIST_DIST_HPP
