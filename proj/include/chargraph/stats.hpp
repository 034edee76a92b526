// Independent two-sample t-test with p-values from the regularized
// incomplete beta function.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

namespace chargraph::stats {

enum class Variant { pooled, welch };
enum class Tail { two_sided, less, greater };

std::string_view to_string(Variant v);
std::string_view to_string(Tail t);
std::optional<Variant> parse_variant(std::string_view s);
std::optional<Tail> parse_tail(std::string_view s);

struct TTestOptions {
  Variant variant = Variant::pooled;
  Tail tail = Tail::two_sided;
  double alpha = 0.05;
};

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  Variant variant = Variant::pooled;
  Tail tail = Tail::two_sided;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  bool significant = false;  // p < alpha
};

enum class StatsErrorKind { sample_too_small, degenerate_variance, domain };

class StatsError : public std::domain_error {
 public:
  StatsError(StatsErrorKind kind, const char* what) : std::domain_error(what), kind_(kind) {}
  StatsErrorKind kind() const noexcept { return kind_; }

 private:
  StatsErrorKind kind_;
};

/// I_x(a, b) by Lentz's continued fraction, evaluated on the side of
/// x = (a + 1) / (a + b + 2) where it converges fast.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);

/// Throws StatsError(sample_too_small) when either sample has fewer than two
/// values and StatsError(degenerate_variance) when both variances are zero
/// but the means differ. Equal constant samples give t = 0, p = 1.
TTestResult t_test(std::span<const double> a, std::span<const double> b, const TTestOptions& options = {});

}  // namespace chargraph::stats
