#ifndef QDIST_QCALC_HPP
#define QDIST_QCALC_HPP

#include <span>

#include "qdist/errors.hpp"

namespace qdist {

// Deformation parameter q together with the truncation policy for infinite
// products. Every distribution in this library lives in the 0 < q < 1 regime;
// q = 1 and q > 1 are rejected.
struct QContext {
  double q;
  double tail_tol = 1e-15;  // stop infinite products once |a q^{i-1}| < tail_tol
  int max_terms = 10000;

  explicit QContext(double q_, double tail_tol_ = 1e-15, int max_terms_ = 10000);
};

// Natural log of a strictly positive quantity. All coefficients and pmf
// factors handled here are positive, so a single log carries the value;
// conversion to linear domain happens only at the API edge.
class LogValue {
 public:
  static LogValue from_log(double lg) { return LogValue(lg); }
  static LogValue from_value(double v);

  double log() const { return log_; }
  double value() const;  // exp(log()); may round to 0 or inf at the extremes

 private:
  explicit LogValue(double lg) : log_(lg) {}
  double log_;
};

// log(1 + e^y), stable for any y.
double log1p_exp(double y);

// x(x-1)/2, the exponent of q in the q^(x choose 2) pmf factors.
long choose2(long x);

// [t]_q = (1 - q^t)/(1 - q) for real t. Equals 1 + q + ... + q^{t-1} at
// nonnegative integers and tends to t as q -> 1-.
double q_number(double t, double q);

// [t]_{1/q} = (q^{-t} - 1)/(q^{-1} - 1), the deformation used for the
// standardized variables; q is still the base parameter in (0,1).
double q_number_1q(double t, double q);

// log [t]_{1/q} for t > 0, safe where q^{-t} would overflow.
double q_number_1q_log(double t, double q);

// log [n]_q! = log prod_{k=1}^n [k]_q; n = 0 gives log 1 = 0.
LogValue q_factorial_log(long n, const QContext& ctx);

// log of the Gaussian binomial coefficient [n]_q!/([x]_q! [n-x]_q!).
LogValue q_binomial_coeff_log(long n, long x, const QContext& ctx);

// log of [n]_q!/([x_1]_q! ... [x_k]_q! [n - sum]_q!), the q-multinomial
// coefficient of Eq.-type pmfs with an implicit failure block n - sum.
LogValue q_multinomial_coeff_log(long n, std::span<const long> xs,
                                 const QContext& ctx);

struct InfiniteTerms {};
inline constexpr InfiniteTerms infinite_terms{};

// log (a; q)_n = log prod_{i=1}^n (1 - a q^{i-1}). Requires every factor
// positive, which holds for a < 0 and for 0 <= a < 1.
LogValue q_pochhammer_log(double a, long n, const QContext& ctx);

// log (a; q)_inf, truncated once |a q^{i-1}| < ctx.tail_tol. The neglected
// tail satisfies |log tail| <= |a| q^N / (1-q); if tail_bound is non-null the
// bound is written there.
LogValue q_pochhammer_log(double a, InfiniteTerms, const QContext& ctx,
                          double* tail_bound = nullptr);

// log e_q(z) via the product form e_q(z) = 1/((1-q)z; q)_inf. Valid for
// z <= 0 (all factors > 1) and for 0 <= (1-q)z < 1. The series form of
// e_q only converges for |z| < 1; the product extends it to all z <= 0,
// which the Heine pmf needs at z = -lambda.
LogValue q_exponential(double z, const QContext& ctx);

// log of the q-Stirling approximation to [n]_q!: the closed form
//   q^{-1/8} (2 pi (1-q))^{1/2} (q log q^{-1})^{-1/2}
//     * q^{n(n-1)/2} q^{-n/2} [n]_{1/q}^{n+1/2} / prod_{j>=1}(1+(q^{-n}-1)q^{j-1})
// without its (1+O(1/n)) factor. Everything is assembled in the log domain;
// the infinite product goes through log1p_exp so q^{-n} never materializes.
LogValue q_stirling_log(long n, const QContext& ctx);

}  // namespace qdist

#endif  // QDIST_QCALC_HPP
