#include <doctest.h>

#include <cmath>
#include <numeric>

#include "chargraph/topics.hpp"
#include "fixtures.hpp"

using namespace chargraph;

namespace {

Roster two_people() {
  Roster r;
  CharacterRecord a;
  a.id = "maya";
  a.canonical_name = "Maya";
  a.aliases = {"Maya"};
  CharacterRecord b;
  b.id = "hari";
  b.canonical_name = "Hari";
  b.aliases = {"Hari", "Uncle Hari"};
  r.characters = {a, b};
  return r;
}

bool normalized(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) {
    if (x < 0) return false;
    s += x;
  }
  return std::fabs(s - 1.0) <= 1e-9;
}

}  // namespace

TEST_CASE("preprocessing removes exactly the union of removal sets") {
  const auto roster = two_people();
  const TokenizerConfig tok;
  const AliasMatcher matcher(roster, tok);
  TopicConfig cfg;
  cfg.stopwords = {"the", "and", "was"};
  cfg.common_verbs = {"went", "said"};
  Chapter ch;
  ch.index = 1;
  // 22 tokens
  ch.sentences = {"Maya went to the river and the boat was old.", "Uncle Hari said a harvest song was long x.",
                  "The monsoon came."};
  const auto doc = preprocess_chapter("s", ch, matcher, cfg);
  const std::vector<std::string> expected{"to", "river", "boat", "old", "harvest", "song", "long", "monsoon", "came"};
  CHECK(doc.tokens == expected);
  CHECK(doc.sentence == std::vector<int>{1, 1, 1, 1, 2, 2, 2, 3, 3});
  CHECK(doc.chapter == 1);
}

TEST_CASE("stopword-only chapter stays as an empty document") {
  const auto roster = two_people();
  const AliasMatcher matcher(roster, TokenizerConfig{});
  TopicConfig cfg;
  cfg.stopwords = {"the", "and"};
  Chapter ch;
  ch.sentences = {"The and the.", "Maya."};
  const auto doc = preprocess_chapter("s", ch, matcher, cfg);
  CHECK(doc.tokens.empty());
  CHECK_THROWS_AS(fit_lda(std::vector<TokenDocument>{doc}, cfg), TopicFitError);
}

TEST_CASE("single topic gives unit vectors") {
  TopicConfig cfg;
  cfg.topics = 1;
  cfg.iterations = 20;
  cfg.burn_in = 10;
  const auto m = fit_lda(fixtures::separability_documents(), cfg);
  for (const auto& row : m.doc_topic) CHECK(row == std::vector<double>{1.0});
  const auto ct = story_topics(m, fixtures::separability_documents(), "sep", 2);
  CHECK(segment_topics(ct[0], 1, 3) == std::vector<double>{1.0});
}

TEST_CASE("fitted distributions are normalized and seed-deterministic") {
  const auto docs = fixtures::separability_documents();
  auto cfg = fixtures::separability_config(4);
  cfg.topics = 3;
  const auto a = fit_lda(docs, cfg);
  const auto b = fit_lda(docs, cfg);
  CHECK(a.topic_word == b.topic_word);
  CHECK(a.doc_topic == b.doc_topic);
  CHECK(a.assignments == b.assignments);
  for (const auto& row : a.topic_word) CHECK(normalized(row));
  for (const auto& row : a.doc_topic) CHECK(normalized(row));
  CHECK(a.vocabulary.size() == 10);
  CHECK(std::is_sorted(a.vocabulary.begin(), a.vocabulary.end()));
}

TEST_CASE("disjoint vocabularies separate") {
  int passes = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    passes += fixtures::separable(fit_lda(fixtures::separability_documents(), fixtures::separability_config(seed)));
  }
  CHECK(passes >= 18);
}

TEST_CASE("config validation") {
  TopicConfig c;
  CHECK(c.alpha() == doctest::Approx(2.5));
  c.burn_in = c.iterations;
  CHECK_THROWS(c.validate());
  c.burn_in = 0;
  c.topics = 0;
  CHECK_THROWS(c.validate());
  c.topics = 2;
  c.topic_word_prior = 0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("segment topics and character vectors") {
  ChapterTopics ct;
  ct.chapter = 1;
  ct.sentence_of_token = {1, 1, 2, 3, 3, 3};
  ct.topic_of_token = {0, 1, 1, 0, 0, 1};
  ct.theta = {0.4, 0.6};
  CHECK(segment_topics(ct, 1, 2) == std::vector<double>{1.0 / 3, 2.0 / 3});
  CHECK(segment_topics(ct, 3, 3) == std::vector<double>{2.0 / 3, 1.0 / 3});
  // no tokens in the span
  CHECK(segment_topics(ct, 4, 5) == std::vector<double>{0.4, 0.6});

  const std::vector<std::vector<double>> d{{1, 0}, {0, 1}};
  const auto v = character_topics(d, std::vector<int>{30, 10});
  CHECK(v[0] == doctest::Approx(0.75));
  CHECK(v[1] == doctest::Approx(0.25));
  CHECK(character_topics(d, std::vector<int>{5, 5}) == std::vector<double>{0.5, 0.5});
  const std::vector<std::vector<double>> one{{0.2, 0.8}};
  CHECK(character_topics(one, std::vector<int>{7}) == std::vector<double>{0.2, 0.8});
  CHECK_THROWS(character_topics(std::vector<std::vector<double>>{}, std::vector<int>{}));
}

TEST_CASE("character topics commute with topic relabeling") {
  const std::vector<std::vector<double>> d{{0.1, 0.3, 0.6}, {0.5, 0.25, 0.25}};
  const std::vector<std::vector<double>> p{{0.6, 0.1, 0.3}, {0.25, 0.5, 0.25}};
  const std::vector<int> l{4, 9};
  const auto a = character_topics(d, l);
  const auto b = character_topics(p, l);
  CHECK(b[0] == doctest::Approx(a[2]));
  CHECK(b[1] == doctest::Approx(a[0]));
  CHECK(b[2] == doctest::Approx(a[1]));
  CHECK(normalized(a));
}
