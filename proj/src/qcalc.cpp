#include "qdist/qcalc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qdist {

namespace {

void check_q(double q) {
  if (!(q > 0.0) || !(q < 1.0)) {
    throw DomainError("q must lie strictly inside (0,1), got " +
                      std::to_string(q));
  }
}

}  // namespace

QContext::QContext(double q_, double tail_tol_, int max_terms_)
    : q(q_), tail_tol(tail_tol_), max_terms(max_terms_) {
  check_q(q);
  if (!(tail_tol > 0.0)) {
    throw DomainError("tail_tol must be positive");
  }
  if (max_terms < 1) {
    throw DomainError("max_terms must be >= 1");
  }
}

LogValue LogValue::from_value(double v) {
  if (!(v > 0.0)) {
    throw DomainError("LogValue requires a strictly positive value");
  }
  return LogValue(std::log(v));
}

double LogValue::value() const { return std::exp(log_); }

double log1p_exp(double y) {
  if (y > 36.0) {
    // log(1+e^y) = y + log(1+e^-y) and e^-y is below double epsilon afterwards
    return y;
  }
  if (y < -36.0) {
    return std::exp(y);
  }
  return std::log1p(std::exp(y));
}

long choose2(long x) { return x * (x - 1) / 2; }

double q_number(double t, double q) {
  check_q(q);
  // (1 - q^t)/(1 - q) = expm1(t log q)/expm1(log q), exact as q -> 1-.
  const double lq = std::log(q);
  return std::expm1(t * lq) / std::expm1(lq);
}

double q_number_1q(double t, double q) {
  check_q(q);
  const double lq = std::log(q);
  return std::expm1(-t * lq) / std::expm1(-lq);
}

double q_number_1q_log(double t, double q) {
  check_q(q);
  if (!(t > 0.0)) {
    throw DomainError("q_number_1q_log requires t > 0");
  }
  const double lq = std::log(q);
  // log(q^-t - 1) - log(q^-1 - 1), with q^-t handled in the log domain.
  const double log_num = -t * lq + std::log1p(-std::exp(t * lq));
  const double log_den = -lq + std::log1p(-q);
  return log_num - log_den;
}

LogValue q_factorial_log(long n, const QContext& ctx) {
  if (n < 0) {
    throw DomainError("q_factorial_log requires n >= 0");
  }
  const double lq = std::log(ctx.q);
  double sum = 0.0;
  for (long k = 1; k <= n; ++k) {
    // log [k]_q = log(1 - q^k) - log(1 - q)
    sum += std::log1p(-std::exp(static_cast<double>(k) * lq));
  }
  sum -= static_cast<double>(n) * std::log1p(-ctx.q);
  return LogValue::from_log(sum);
}

LogValue q_binomial_coeff_log(long n, long x, const QContext& ctx) {
  if (n < 0 || x < 0 || x > n) {
    throw DomainError("q_binomial_coeff_log requires 0 <= x <= n");
  }
  const double lg = q_factorial_log(n, ctx).log() -
                    q_factorial_log(x, ctx).log() -
                    q_factorial_log(n - x, ctx).log();
  return LogValue::from_log(lg);
}

LogValue q_multinomial_coeff_log(long n, std::span<const long> xs,
                                 const QContext& ctx) {
  if (n < 0) {
    throw DomainError("q_multinomial_coeff_log requires n >= 0");
  }
  long sum = 0;
  for (long x : xs) {
    if (x < 0) {
      throw DomainError("q_multinomial_coeff_log requires nonnegative counts");
    }
    sum += x;
  }
  if (sum > n) {
    throw DomainError("q_multinomial_coeff_log requires sum of counts <= n");
  }
  double lg = q_factorial_log(n, ctx).log();
  for (long x : xs) {
    lg -= q_factorial_log(x, ctx).log();
  }
  lg -= q_factorial_log(n - sum, ctx).log();
  return LogValue::from_log(lg);
}

LogValue q_pochhammer_log(double a, long n, const QContext& ctx) {
  if (n < 0) {
    throw DomainError("q_pochhammer_log requires n >= 0");
  }
  const double lq = std::log(ctx.q);
  double sum = 0.0;
  for (long i = 1; i <= n; ++i) {
    const double aq = a * std::exp(static_cast<double>(i - 1) * lq);
    if (aq >= 1.0) {
      throw DomainError("q_pochhammer_log: nonpositive factor 1 - a q^{i-1}");
    }
    sum += std::log1p(-aq);
  }
  return LogValue::from_log(sum);
}

LogValue q_pochhammer_log(double a, InfiniteTerms, const QContext& ctx,
                          double* tail_bound) {
  const double lq = std::log(ctx.q);
  double sum = 0.0;
  long i = 1;
  double aq = a;
  for (; std::abs(aq) >= ctx.tail_tol; ++i) {
    if (i > ctx.max_terms) {
      throw ConvergenceError(
          "q_pochhammer_log: infinite product did not converge within "
          "max_terms = " +
          std::to_string(ctx.max_terms));
    }
    if (aq >= 1.0) {
      throw DomainError("q_pochhammer_log: nonpositive factor 1 - a q^{i-1}");
    }
    sum += std::log1p(-aq);
    aq = a * std::exp(static_cast<double>(i) * lq);
  }
  if (tail_bound != nullptr) {
    // |sum_{j >= i} log(1 - a q^{j-1})| <= sum |a| q^{j-1} = |a q^{i-1}|/(1-q)
    *tail_bound = std::abs(aq) / (1.0 - ctx.q);
  }
  return LogValue::from_log(sum);
}

LogValue q_exponential(double z, const QContext& ctx) {
  const double a = (1.0 - ctx.q) * z;
  if (a >= 1.0) {
    throw DomainError("q_exponential requires (1-q) z < 1");
  }
  return LogValue::from_log(-q_pochhammer_log(a, infinite_terms, ctx).log());
}

LogValue q_stirling_log(long n, const QContext& ctx) {
  if (n < 1) {
    throw DomainError("q_stirling_log requires n >= 1");
  }
  const double q = ctx.q;
  const double lq = std::log(q);
  const double nd = static_cast<double>(n);

  const double prefactor = -lq / 8.0 +
                           0.5 * std::log(2.0 * std::numbers::pi * (1.0 - q)) -
                           0.5 * std::log(q * (-lq));
  const double powers = (nd * (nd - 1.0) / 2.0) * lq - (nd / 2.0) * lq +
                        (nd + 0.5) * q_number_1q_log(nd, q);

  // prod_{j>=1} (1 + (q^-n - 1) q^{j-1}) with log(q^-n - 1) kept symbolic,
  // so the product survives n far beyond double overflow.
  const double log_a = -nd * lq + std::log1p(-std::exp(nd * lq));
  const double log_tol = std::log(ctx.tail_tol);
  double denom = 0.0;
  long j = 0;
  while (log_a + static_cast<double>(j) * lq >= log_tol) {
    if (j >= ctx.max_terms) {
      throw ConvergenceError(
          "q_stirling_log: denominator product did not converge within "
          "max_terms");
    }
    denom += log1p_exp(log_a + static_cast<double>(j) * lq);
    ++j;
  }
  return LogValue::from_log(prefactor + powers - denom);
}

}  // namespace qdist
