#include "chargraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chargraph::stats {

std::string_view to_string(Variant v) { return v == Variant::pooled ? "pooled" : "welch"; }

std::string_view to_string(Tail t) {
  switch (t) {
    case Tail::two_sided: return "two-sided";
    case Tail::less: return "less";
    case Tail::greater: return "greater";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "pooled") return Variant::pooled;
  if (s == "welch") return Variant::welch;
  return std::nullopt;
}

std::optional<Tail> parse_tail(std::string_view s) {
  if (s == "two-sided") return Tail::two_sided;
  if (s == "less") return Tail::less;
  if (s == "greater") return Tail::greater;
  return std::nullopt;
}

namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  return h;
}

struct Moments {
  double mean;
  double variance;  // sample variance (n - 1)
};

Moments moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / (n - 1.0)};
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0)) {
    throw StatsError(StatsErrorKind::domain, "incomplete beta needs a > 0, b > 0, 0 <= x <= 1");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw StatsError(StatsErrorKind::domain, "degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult t_test(std::span<const double> a, std::span<const double> b, const TTestOptions& options) {
  if (a.size() < 2 || b.size() < 2) {
    throw StatsError(StatsErrorKind::sample_too_small, "each sample needs at least two values");
  }
  const auto ma = moments(a);
  const auto mb = moments(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  TTestResult r;
  r.variant = options.variant;
  r.tail = options.tail;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = ma.mean;
  r.mean_b = mb.mean;

  double se2 = 0.0;
  if (options.variant == Variant::pooled) {
    r.df = na + nb - 2.0;
    const double pooled = ((na - 1.0) * ma.variance + (nb - 1.0) * mb.variance) / r.df;
    se2 = pooled * (1.0 / na + 1.0 / nb);
  } else {
    const double va = ma.variance / na;
    const double vb = mb.variance / nb;
    se2 = va + vb;
    const double denom = va * va / (na - 1.0) + vb * vb / (nb - 1.0);
    r.df = denom > 0.0 ? se2 * se2 / denom : na + nb - 2.0;
  }

  const double diff = ma.mean - mb.mean;
  if (!(se2 > 0.0)) {
    if (diff != 0.0) {
      throw StatsError(StatsErrorKind::degenerate_variance, "zero variance with unequal means");
    }
    r.t = 0.0;
    r.p = 1.0;
    r.significant = false;
    return r;
  }
  r.t = diff / std::sqrt(se2);
  switch (options.tail) {
    case Tail::two_sided:
      r.p = regularized_incomplete_beta(0.5 * r.df, 0.5, r.df / (r.df + r.t * r.t));
      break;
    case Tail::less:
      r.p = student_t_cdf(r.t, r.df);
      break;
    case Tail::greater:
      r.p = 1.0 - student_t_cdf(r.t, r.df);
      break;
  }
  r.p = std::clamp(r.p, 0.0, 1.0);
  r.significant = r.p < options.alpha;
  return r;
}

}  // namespace chargraph::stats
