#include "qdist/dist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_map>

namespace qdist {

namespace {

void check_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw DomainError(std::string(name) + " must be positive");
  }
}

// log prod_{i=1}^{m} (1 + theta q^{i-1}), the normalizing product of the
// q-binomial pmf. Identical to the finite q-Pochhammer at a = -theta.
double log_success_product(double theta, long m, const QContext& ctx) {
  return q_pochhammer_log(-theta, m, ctx).log();
}

double qbinomial_log_pmf_raw(long n, double theta, long x,
                             const QContext& ctx) {
  if (x < 0 || x > n) {
    throw DomainError("qbinomial pmf requires 0 <= x <= n");
  }
  return q_binomial_coeff_log(n, x, ctx).log() +
         static_cast<double>(choose2(x)) * std::log(ctx.q) +
         static_cast<double>(x) * std::log(theta) -
         log_success_product(theta, n, ctx);
}

MomentPair deformed_moments_raw(long m, double theta, double q) {
  if (m == 0) {
    return {0.0, 0.0};
  }
  const double qm1 = std::pow(q, static_cast<double>(m - 1));
  const double qm2 = std::pow(q, static_cast<double>(m - 2));
  const double nq = q_number(static_cast<double>(m), q);
  const double d1 = 1.0 + theta * qm1;
  const double d2 = 1.0 + theta * qm2;
  const double mean = nq * theta / d1;
  const double var =
      (1.0 - q) / q * nq * nq * theta * theta / (d1 * d1 * d2) +
      nq * theta / (d1 * d2);
  return {mean, var};
}

}  // namespace

QBinomialParams::QBinomialParams(long n_, double theta_, QContext ctx_)
    : n(n_), theta(theta_), ctx(ctx_) {
  if (n < 0) {
    throw DomainError("q-binomial trial count must be >= 0");
  }
  check_positive(theta, "theta");
}

QMultinomialParams::QMultinomialParams(long n_, std::vector<double> thetas_,
                                       QContext ctx_)
    : n(n_), thetas(std::move(thetas_)), ctx(ctx_) {
  if (n < 0) {
    throw DomainError("q-multinomial trial count must be >= 0");
  }
  if (thetas.empty()) {
    throw DomainError("q-multinomial needs at least one category");
  }
  for (double th : thetas) {
    check_positive(th, "theta_j");
  }
}

HeineParams::HeineParams(double lambda_, QContext ctx_)
    : lambda(lambda_), ctx(ctx_) {
  check_positive(lambda, "lambda");
}

MultipleHeineParams::MultipleHeineParams(std::vector<double> lambdas_,
                                         QContext ctx_)
    : lambdas(std::move(lambdas_)), ctx(ctx_) {
  if (lambdas.empty()) {
    throw DomainError("multiple Heine needs at least one coordinate");
  }
  for (double l : lambdas) {
    check_positive(l, "lambda_j");
  }
}

double qbinomial_log_pmf(const QBinomialParams& params, long x) {
  return qbinomial_log_pmf_raw(params.n, params.theta, x, params.ctx);
}

double qbinomial_pmf(const QBinomialParams& params, long x) {
  return std::exp(qbinomial_log_pmf(params, x));
}

double heine_log_pmf(const HeineParams& params, long x) {
  if (x < 0) {
    throw DomainError("Heine pmf requires x >= 0");
  }
  const QContext& ctx = params.ctx;
  return q_exponential(-params.lambda, ctx).log() +
         static_cast<double>(choose2(x)) * std::log(ctx.q) +
         static_cast<double>(x) * std::log(params.lambda) -
         q_factorial_log(x, ctx).log();
}

double heine_pmf(const HeineParams& params, long x) {
  return std::exp(heine_log_pmf(params, x));
}

double qmultinomial_log_pmf(const QMultinomialParams& params,
                            const Outcome& outcome) {
  if (outcome.size() != params.k()) {
    throw DomainError("outcome length must equal the category count");
  }
  const QContext& ctx = params.ctx;
  const double lq = std::log(ctx.q);

  double lp =
      q_multinomial_coeff_log(params.n, std::span<const long>(outcome), ctx)
          .log();
  long s = 0;  // s_{j-1}, successes of earlier kinds
  for (std::size_t j = 0; j < params.k(); ++j) {
    const long xj = outcome[j];
    const double th = params.thetas[j];
    // Same term order as the q-binomial path, so k = 1 reduces bit-exactly.
    lp += static_cast<double>(choose2(xj)) * lq +
          static_cast<double>(xj) * std::log(th) -
          log_success_product(th, params.n - s, ctx);
    s += xj;
  }
  return lp;
}

double qmultinomial_pmf(const QMultinomialParams& params,
                        const Outcome& outcome) {
  return std::exp(qmultinomial_log_pmf(params, outcome));
}

double multiple_heine_log_pmf(const MultipleHeineParams& params,
                              const Outcome& outcome) {
  if (outcome.size() != params.k()) {
    throw DomainError("outcome length must equal the coordinate count");
  }
  double lp = 0.0;
  for (std::size_t j = 0; j < params.k(); ++j) {
    lp += heine_log_pmf(HeineParams(params.lambdas[j], params.ctx), outcome[j]);
  }
  return lp;
}

double multiple_heine_pmf(const MultipleHeineParams& params,
                          const Outcome& outcome) {
  return std::exp(multiple_heine_log_pmf(params, outcome));
}

MomentPair qbinomial_deformed_moments(const QBinomialParams& params) {
  return deformed_moments_raw(params.n, params.theta, params.ctx.q);
}

MomentPair marginal_moments(const QMultinomialParams& params) {
  return deformed_moments_raw(params.n, params.thetas[0], params.ctx.q);
}

MomentPair conditional_moments(const QMultinomialParams& params, std::size_t j,
                               std::span<const long> prefix) {
  if (j < 2 || j > params.k()) {
    throw DomainError("conditional_moments requires 2 <= j <= k");
  }
  if (prefix.size() != j - 1) {
    throw DomainError("conditional_moments needs exactly j-1 prefix counts");
  }
  long s = 0;
  for (long x : prefix) {
    if (x < 0) {
      throw DomainError("prefix counts must be nonnegative");
    }
    s += x;
  }
  if (s > params.n) {
    throw DomainError("prefix counts exceed the trial count");
  }
  return deformed_moments_raw(params.n - s, params.thetas[j - 1], params.ctx.q);
}

MomentPair heine_deformed_moments(const HeineParams& params) {
  const double l = params.lambda;
  const double q = params.ctx.q;
  // Variance is lambda^2 q^{-1}(1-q) + lambda: the theta-fixed n -> infinity
  // limit of the q-binomial deformed variance, and what direct summation
  // against the pmf gives.
  return {l, l * l * (1.0 - q) / q + l};
}

long heine_support_cutoff(const HeineParams& params, double tail_bound) {
  if (!(tail_bound > 0.0)) {
    throw DomainError("tail_bound must be positive");
  }
  const double q = params.ctx.q;
  const double lambda = params.lambda;
  // Successive ratio r(x) = pmf(x+1)/pmf(x) = q^x lambda / [x+1]_q. Once
  // r(x) <= 1/2 the tail beyond x is bounded by pmf(x+1) * 2 <= 2 r(x) pmf(x).
  long x = 0;
  double log_pmf = heine_log_pmf(params, 0);
  const double lq = std::log(q);
  while (true) {
    const double r = std::exp(static_cast<double>(x) * lq) * lambda /
                     q_number(static_cast<double>(x + 1), q);
    if (r <= 0.5 && 2.0 * r * std::exp(log_pmf) <= tail_bound) {
      return x;
    }
    log_pmf += static_cast<double>(x) * lq + std::log(lambda) -
               std::log(q_number(static_cast<double>(x + 1), q));
    ++x;
    if (x > 100000) {
      throw ConvergenceError("heine_support_cutoff: no cutoff below 100000");
    }
  }
}

namespace {

// Lazily built inverse-CDF tables, one per (kind j, remaining trials m).
class ChainSampler {
 public:
  explicit ChainSampler(const QMultinomialParams& params)
      : params_(params), tables_(params.k()) {}

  const std::vector<double>& cdf(std::size_t j, long m) {
    auto& per_kind = tables_[j];
    auto it = per_kind.find(m);
    if (it != per_kind.end()) {
      return it->second;
    }
    std::vector<double> cdf(static_cast<std::size_t>(m) + 1);
    double acc = 0.0;
    for (long x = 0; x <= m; ++x) {
      acc += std::exp(
          qbinomial_log_pmf_raw(m, params_.thetas[j], x, params_.ctx));
      cdf[static_cast<std::size_t>(x)] = acc;
    }
    return per_kind.emplace(m, std::move(cdf)).first->second;
  }

  template <typename Rng>
  Outcome draw(Rng& rng) {
    Outcome xs(params_.k());
    long remaining = params_.n;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t j = 0; j < params_.k(); ++j) {
      const std::vector<double>& c = cdf(j, remaining);
      const double u = unif(rng);
      const auto it = std::lower_bound(c.begin(), c.end(), u);
      // Roundoff can leave the final cumulative slightly below 1.
      const long x = it == c.end() ? remaining
                                   : static_cast<long>(it - c.begin());
      xs[j] = x;
      remaining -= x;
    }
    return xs;
  }

 private:
  const QMultinomialParams& params_;
  std::vector<std::unordered_map<long, std::vector<double>>> tables_;
};

}  // namespace

std::vector<Outcome> sample(const QMultinomialParams& params, long count,
                            std::uint64_t seed) {
  if (count < 1) {
    throw DomainError("sample count must be >= 1");
  }
  ChainSampler sampler(params);
  std::mt19937_64 rng(seed);
  std::vector<Outcome> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    out.push_back(sampler.draw(rng));
  }
  return out;
}

}  // namespace qdist
