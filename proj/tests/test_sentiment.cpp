#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "chargraph/sentiment.hpp"

using namespace chargraph;

namespace {

SentimentLexicon good_bad() { return SentimentLexicon::parse("good\t1\nbad\t-1\n"); }

}  // namespace

TEST_CASE("lexicon scoring") {
  const auto lex = good_bad();
  CHECK(score_sentence("good good bad", lex) == doctest::Approx(1.0 / 3));
  CHECK(score_sentence("nothing here", lex) == 0.0);
  CHECK(score_sentence("GOOD!", lex) == 1.0);
  CHECK(score_sentence("", lex) == 0.0);
}

TEST_CASE("negation flips the following token only when enabled") {
  auto lex = SentimentLexicon::parse("good\t1\n");
  lex.negations.insert("not");
  CHECK(score_sentence("not good", lex, true) == -1.0);
  CHECK(score_sentence("not good", lex, false) == 1.0);
  CHECK(score_sentence("not very good", lex, true) == 1.0);
}

TEST_CASE("lexicon parse errors name the line") {
  CHECK_THROWS_WITH(SentimentLexicon::parse("# c\ngood\t1\nbad\n"), doctest::Contains("line 3"));
  CHECK_THROWS(SentimentLexicon::parse("good\tabc\n"));
  CHECK(SentimentLexicon::parse("\n# only comments\n").polarity.empty());
}

TEST_CASE("table scorer looks up chapter and sentence") {
  const auto t = TableScorer::parse("1\t2\t0.5\n2\t1\t-0.25\n");
  CHECK(t.score(1, 2, "x") == 0.5);
  CHECK(t.score(2, 1, "x") == -0.25);
  CHECK(t.score(1, 1, "x") == 0.0);
  CHECK_THROWS(TableScorer::parse("1\t2\n"));
}

TEST_CASE("standardize") {
  CHECK(standardize(std::vector<double>{0, 0, 0}) == std::vector<double>{0, 0, 0});
  CHECK(standardize(std::vector<double>{0.7}) == std::vector<double>{0});
  const auto s = standardize(std::vector<double>{-1, 1});
  CHECK(classify(s[0]) == Polarity::negative);
  CHECK(classify(s[1]) == Polarity::positive);
  CHECK(s[0] == doctest::Approx(-0.5));
  CHECK(standardize(std::vector<double>{}).empty());
}

TEST_CASE("standardized scores are bounded and order-preserving") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> raw(std::uniform_int_distribution<int>(1, 40)(rng));
    for (auto& x : raw) x = d(rng);
    const auto s = standardize(raw);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      CHECK(std::fabs(s[i]) < 1.0);
      for (std::size_t j = 0; j < raw.size(); ++j) {
        if (raw[i] < raw[j]) CHECK(s[i] < s[j]);
      }
    }
  }
}

TEST_CASE("entity sentiment and classification") {
  CHECK(entity_sentiment(std::vector<double>{0.2, -0.2}) == doctest::Approx(0.0));
  CHECK(classify(entity_sentiment(std::vector<double>{0.2, -0.2})) == Polarity::neutral);
  CHECK(entity_sentiment(std::vector<double>{-0.3}) == -0.3);
  CHECK(classify(-0.3) == Polarity::negative);
  CHECK(entity_sentiment(std::vector<double>{0.10, 0.06}) == doctest::Approx(0.08));
  CHECK(classify(0.08) == Polarity::positive);
  CHECK(classify(0.05) == Polarity::neutral);
  CHECK(classify(-0.05) == Polarity::neutral);
  CHECK(classify(0.08, 0.1) == Polarity::neutral);
  CHECK_THROWS_AS(entity_sentiment(std::vector<double>{}), NoSegmentsError);
  CHECK(to_string(Polarity::positive) == "positive");
}

TEST_CASE("entity sentiment ignores segment order") {
  std::vector<double> v{0.3, -0.1, 0.25, 0.7};
  const double a = entity_sentiment(v);
  std::reverse(v.begin(), v.end());
  CHECK(entity_sentiment(v) == doctest::Approx(a));
}

TEST_CASE("span sentiment averages the inclusive range") {
  const std::vector<double> s{0.1, 0.2, 0.3, 0.4};
  CHECK(span_sentiment(s, 2, 3) == doctest::Approx(0.25));
  CHECK(span_sentiment(s, 1, 4) == doctest::Approx(0.25));
  CHECK_THROWS(span_sentiment(s, 0, 2));
  CHECK_THROWS(span_sentiment(s, 3, 5));
}
