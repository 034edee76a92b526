#include <doctest.h>

#include <cmath>
#include <random>

#include "chargraph/stats.hpp"

using namespace chargraph::stats;

TEST_CASE("pooled t-test reference vector") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5, 6};
  const auto r = t_test(a, b);
  CHECK(r.t == doctest::Approx(-3.6742).epsilon(1e-4));
  CHECK(r.df == 4.0);
  CHECK(r.p == doctest::Approx(0.02131).epsilon(1e-3));
  CHECK(std::fabs(r.p - 0.02131) < 1e-4);
  CHECK(r.significant);
  CHECK(r.n_a == 3);
  CHECK(r.mean_b == 5.0);
}

TEST_CASE("identical and constant samples") {
  const std::vector<double> a{1, 2, 3};
  const auto r = t_test(a, a);
  CHECK(r.t == 0.0);
  CHECK(r.p == doctest::Approx(1.0));
  CHECK_FALSE(r.significant);
  const std::vector<double> c{2, 2};
  CHECK(t_test(c, c).p == 1.0);
  const std::vector<double> d{3, 3};
  CHECK_THROWS_AS(t_test(c, d), StatsError);
  try {
    t_test(c, d);
  } catch (const StatsError& e) {
    CHECK(e.kind() == StatsErrorKind::degenerate_variance);
  }
  const std::vector<double> one{1};
  try {
    t_test(one, a);
    FAIL("expected error");
  } catch (const StatsError& e) {
    CHECK(e.kind() == StatsErrorKind::sample_too_small);
  }
}

TEST_CASE("incomplete beta") {
  CHECK(regularized_incomplete_beta(2, 2, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(3, 4, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(3, 4, 1.0) == 1.0);
  for (double x : {0.1, 0.37, 0.5, 0.92}) {
    CHECK(std::fabs(regularized_incomplete_beta(1, 1, x) - x) < 1e-12);
    CHECK(std::fabs(regularized_incomplete_beta(2, 2, x) - (3 * x * x - 2 * x * x * x)) < 1e-12);
    CHECK(std::fabs(regularized_incomplete_beta(2.5, 3.5, x) + regularized_incomplete_beta(3.5, 2.5, 1 - x) - 1) <
          1e-12);
  }
  CHECK_THROWS_AS(regularized_incomplete_beta(0, 1, 0.5), StatsError);
  CHECK_THROWS_AS(regularized_incomplete_beta(1, 1, 1.5), StatsError);
}

TEST_CASE("student t cdf") {
  CHECK(student_t_cdf(0, 5) == doctest::Approx(0.5));
  // df = 1 is Cauchy
  CHECK(std::fabs(student_t_cdf(1, 1) - 0.75) < 1e-12);
  CHECK(std::fabs(student_t_cdf(-2, 2) - 0.5 * (1 - 2 / std::sqrt(6.0))) < 1e-12);
}

TEST_CASE("welch and tails") {
  const std::vector<double> a{1, 2, 3, 4};
  const std::vector<double> b{2, 4, 6, 9, 12};
  TTestOptions w;
  w.variant = Variant::welch;
  const auto r = t_test(a, b, w);
  const double va = 5.0 / 3 / 4;
  const double vb = (std::pow(2 - 6.6, 2) + std::pow(4 - 6.6, 2) + std::pow(6 - 6.6, 2) + std::pow(9 - 6.6, 2) +
                     std::pow(12 - 6.6, 2)) /
                    4 / 5;
  CHECK(r.t == doctest::Approx((2.5 - 6.6) / std::sqrt(va + vb)));
  CHECK(r.df == doctest::Approx((va + vb) * (va + vb) / (va * va / 3 + vb * vb / 4)));
  TTestOptions less;
  less.tail = Tail::less;
  TTestOptions greater;
  greater.tail = Tail::greater;
  const auto two = t_test(a, b);
  CHECK(t_test(a, b, less).p == doctest::Approx(two.p / 2));
  CHECK(t_test(a, b, greater).p == doctest::Approx(1 - two.p / 2));
  CHECK(parse_variant("welch") == Variant::welch);
  CHECK(parse_tail("greater") == Tail::greater);
  CHECK_FALSE(parse_tail("up"));
}

TEST_CASE("welch equals pooled for equal sizes and variances") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{5, 6, 7};
  TTestOptions w;
  w.variant = Variant::welch;
  CHECK(t_test(a, b, w).t == doctest::Approx(t_test(a, b).t));
  CHECK(t_test(a, b, w).df == doctest::Approx(4));
  CHECK(t_test(a, b, w).p == doctest::Approx(t_test(a, b).p));
}

TEST_CASE("antisymmetry, location and scale invariance") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d(0, 1);
  std::uniform_int_distribution<int> n(2, 12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(n(rng));
    std::vector<double> b(n(rng));
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = d(rng) + 0.5;
    for (const auto variant : {Variant::pooled, Variant::welch}) {
      TTestOptions o;
      o.variant = variant;
      const auto r = t_test(a, b, o);
      const auto s = t_test(b, a, o);
      CHECK(s.t == doctest::Approx(-r.t));
      CHECK(s.p == doctest::Approx(r.p));
      CHECK(r.p >= 0.0);
      CHECK(r.p <= 1.0);
      CHECK(r.significant == (r.p < o.alpha));
      auto a2 = a;
      auto b2 = b;
      for (auto& x : a2) x = 3.5 * x + 10;
      for (auto& x : b2) x = 3.5 * x + 10;
      CHECK(t_test(a2, b2, o).t == doctest::Approx(r.t).epsilon(1e-9));
    }
  }
}

TEST_CASE("p decreases as |t| grows") {
  double prev = 1.0;
  for (double t = 0.0; t < 10; t += 0.25) {
    const double p = 2 * student_t_cdf(-t, 7);
    CHECK(p <= prev + 1e-15);
    prev = p;
  }
}
