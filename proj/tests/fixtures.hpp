// Hand-built chapters shared by unit and acceptance tests.
#pragma once

#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <string>
#include <vector>

#include "chargraph/corpus.hpp"
#include "chargraph/graph.hpp"
#include "chargraph/segmentation.hpp"
#include "chargraph/topics.hpp"

namespace fixtures {

inline chargraph::OccurrenceMatrix occurrences(int length, const std::map<std::string, std::vector<int>>& occ) {
  chargraph::OccurrenceMatrix m;
  m.length = length;
  for (const auto& [id, s] : occ) {
    chargraph::CharacterOccurrences o;
    o.sentences = s;
    o.counts.assign(s.size(), 1);
    m.by_character[id] = o;
  }
  return m;
}

/// Three characters over 30 sentences. Character 3 has two runs ten
/// sentences apart; character 1's second run and character 2's third run
/// stay farther apart than the padding allows.
inline chargraph::OccurrenceMatrix three_runs() {
  return occurrences(30, {{"1", {2, 3, 4, 24, 25}}, {"2", {5, 6, 13, 14, 18, 19}}, {"3", {3, 4, 5, 15, 16}}});
}

inline chargraph::SegmentationParams three_runs_params() {
  chargraph::SegmentationParams p;
  p.automatic = false;
  p.delta_a = 3;
  p.delta_b = 2;
  p.delta_c = 1;
  return p;
}

struct SpanExpect {
  int start;
  int end;
  bool operator==(const SpanExpect&) const = default;
};

inline const std::map<std::string, std::vector<SpanExpect>>& three_runs_segments() {
  static const std::map<std::string, std::vector<SpanExpect>> v{
      {"1", {{2, 4}, {24, 25}}}, {"2", {{5, 6}, {13, 14}, {18, 19}}}, {"3", {{3, 5}, {15, 16}}}};
  return v;
}

inline const std::map<std::pair<std::string, std::string>, std::vector<SpanExpect>>& three_runs_interactions() {
  static const std::map<std::pair<std::string, std::string>, std::vector<SpanExpect>> v{
      {{"1", "2"}, {{2, 6}}}, {{"1", "3"}, {{2, 5}}}, {{"2", "3"}, {{3, 6}, {13, 19}}}};
  return v;
}

/// Segment with length l and l' occurrence sentences.
inline chargraph::Segment segment(int start, int length, int occurrences) {
  chargraph::Segment s;
  s.character = "c";
  s.start = start;
  s.end = start + length - 1;
  for (int i = 0; i < occurrences; ++i) s.occurrences.push_back(start + i);
  return s;
}

inline chargraph::InteractionSegment interaction(int start, int length, int one, int both) {
  chargraph::InteractionSegment s;
  s.first = "a";
  s.second = "b";
  s.start = start;
  s.end = start + length - 1;
  s.one_present = one;
  s.both_present = both;
  return s;
}

/// Two chapters, each cycling through its own five words twelve times.
inline std::vector<chargraph::TokenDocument> separability_documents() {
  static const std::vector<std::string> a{"amber", "birch", "cedar", "dune", "ember"};
  static const std::vector<std::string> b{"flint", "grove", "heron", "iris", "jade"};
  std::vector<chargraph::TokenDocument> docs(2);
  for (int d = 0; d < 2; ++d) {
    docs[d].story_id = "sep";
    docs[d].chapter = d + 1;
    for (int i = 0; i < 60; ++i) {
      docs[d].tokens.push_back((d == 0 ? a : b)[static_cast<std::size_t>(i % 5)]);
      docs[d].sentence.push_back(i / 5 + 1);
    }
  }
  return docs;
}

inline chargraph::TopicConfig separability_config(std::uint64_t seed) {
  chargraph::TopicConfig c;
  c.topics = 2;
  c.iterations = 500;
  c.burn_in = 250;
  c.seed = seed;
  return c;
}

/// Every topic's five most probable words come from one vocabulary.
inline bool separable(const chargraph::TopicModel& m) {
  for (int k = 0; k < m.topics; ++k) {
    int first = 0;
    for (const auto i : m.top_words(k, 5)) first += m.vocabulary[i] < "f" ? 1 : 0;
    if (first != 0 && first != 5) return false;
  }
  return true;
}

struct Person {
  std::string id;
  chargraph::Gender gender = chargraph::Gender::male;
  chargraph::AgeGroup age = chargraph::AgeGroup::A2;
  chargraph::Role role = chargraph::Role::regular;
  std::optional<chargraph::FamilyStatus> family;
};

inline chargraph::Roster roster(const std::vector<Person>& people) {
  chargraph::Roster r;
  for (const auto& p : people) {
    chargraph::CharacterRecord c;
    c.id = p.id;
    c.canonical_name = p.id;
    c.aliases = {p.id};
    c.gender = p.gender;
    c.age_group = p.age;
    c.role = p.role;
    c.family_status = p.family;
    r.characters.push_back(c);
  }
  return r;
}

inline chargraph::StoryGraph graph(const std::vector<std::pair<std::string, double>>& nodes,
                                   const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  chargraph::StoryGraph g;
  g.story_id = "s";
  g.sentences = 100;
  for (const auto& [id, w] : nodes) {
    g.nodes[id].omega = w;
    g.nodes[id].chapter_presence = 1;
  }
  for (const auto& [a, b, w] : edges) g.edges[chargraph::make_edge_key(a, b)].omega = w;
  return g;
}

/// Random roster and graph with up to `max_nodes` nodes.
inline std::pair<chargraph::Roster, chargraph::StoryGraph> random_story(std::mt19937_64& rng, int max_nodes) {
  const int n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<Person> people;
  std::vector<std::pair<std::string, double>> nodes;
  for (int i = 0; i < n; ++i) {
    const auto id = "n" + std::to_string(i);
    people.push_back({id, pick(rng) == 0 ? chargraph::Gender::female : chargraph::Gender::male,
                      static_cast<chargraph::AgeGroup>(pick(rng)), static_cast<chargraph::Role>(pick(rng)),
                      pick(rng) == 0 ? std::optional(chargraph::FamilyStatus::mother) : std::nullopt});
    nodes.emplace_back(id, w(rng));
  }
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (pick(rng) == 0) edges.emplace_back(nodes[i].first, nodes[j].first, w(rng));
    }
  }
  return {roster(people), graph(nodes, edges)};
}

}  // namespace fixtures
