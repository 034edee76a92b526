#include <doctest.h>

#include <cmath>
#include <random>

#include "chargraph/analytics.hpp"
#include "fixtures.hpp"

using namespace chargraph;
using fixtures::Person;

namespace {

constexpr auto M = Gender::male;
constexpr auto F = Gender::female;

AnalyzedStory analyzed(const std::string& id, const std::string& writer, std::optional<int> year, const Roster& r,
                       const StoryGraph& g) {
  return {id, writer, year, {Genre::social}, &r, &g};
}

}  // namespace

TEST_CASE("density and degree") {
  const auto tri = fixtures::graph({{"a", 1}, {"b", 1}, {"c", 1}}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}});
  CHECK(graph_features(tri).density == 1.0);
  const auto path = fixtures::graph({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}},
                                    {{"a", "b", 0.1}, {"b", "c", 0.2}, {"c", "d", 0.3}});
  const auto f = graph_features(path);
  CHECK(f.density == 0.5);
  CHECK(f.node("b")->degree == 2);
  CHECK(f.node("b")->strength == doctest::Approx(0.3));
  CHECK(f.node("zz") == nullptr);
  const auto single = graph_features(fixtures::graph({{"a", 1}}, {}));
  CHECK(single.density == 0.0);
  CHECK(single.nodes[0].degree == 0);
  CHECK(graph_features(fixtures::graph({}, {})).density == 0.0);
}

TEST_CASE("strength and degree identities on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [r, g] = fixtures::random_story(rng, 10);
    const auto f = graph_features(g);
    double strengths = 0;
    int degrees = 0;
    for (const auto& n : f.nodes) {
      strengths += n.strength;
      degrees += n.degree;
    }
    CHECK(strengths == doctest::Approx(2 * f.total_edge_weight));
    CHECK(degrees == 2 * f.edge_count);
    CHECK(f.density >= 0.0);
    CHECK(f.density <= 1.0);
  }
}

TEST_CASE("gender group summary worked example") {
  const auto r = fixtures::roster({{"a", M}, {"b", M}, {"c", F}});
  const auto g = fixtures::graph({{"a", 0.4}, {"b", 0.2}, {"c", 0.4}}, {{"a", "c", 0.1}});
  const std::vector<AnalyzedStory> s{analyzed("s1", "w", 1900, r, g)};
  const auto sum = group_summary(s, GroupKey::gender);
  REQUIRE(sum.stories.size() == 1);
  const auto& cells = sum.stories[0].cells;
  CHECK(cells.at("M").weight_share == doctest::Approx(0.6));
  CHECK(cells.at("F").weight_share == doctest::Approx(0.4));
  CHECK(cells.at("M").proportion == doctest::Approx(2.0 / 3));
  CHECK(cells.at("F").proportion == doctest::Approx(1.0 / 3));
  CHECK(*cells.at("M").mean_degree == doctest::Approx(0.5));
  CHECK(sum.writers.back().writer_id == "ALL");
}

TEST_CASE("all-male cast and writer means") {
  const auto r1 = fixtures::roster({{"a", M}, {"b", M}});
  const auto g1 = fixtures::graph({{"a", 0.4}, {"b", 0.2}}, {});
  const auto r2 = fixtures::roster({{"a", M}, {"b", F}});
  const auto g2 = fixtures::graph({{"a", 0.5}, {"b", 0.5}}, {});
  const auto r3 = fixtures::roster({{"a", M}, {"b", F}});
  const auto g3 = fixtures::graph({{"a", 0.3}, {"b", 0.7}}, {});
  const std::vector<AnalyzedStory> s{analyzed("s1", "w", 1900, r1, g1), analyzed("s2", "v", 1910, r2, g2),
                                     analyzed("s3", "v", 1920, r3, g3)};
  const auto sum = group_summary(s, GroupKey::gender);
  CHECK(sum.stories[0].cells.at("M").weight_share == 1.0);
  CHECK(sum.stories[0].cells.at("F").count == 0);
  CHECK_FALSE(sum.stories[0].cells.at("F").mean_degree);
  const auto v = std::find_if(sum.writers.begin(), sum.writers.end(), [](auto& w) { return w.writer_id == "v"; });
  REQUIRE(v != sum.writers.end());
  CHECK(v->stories == 2);
  CHECK(v->cells.at("F").weight_share == doctest::Approx(0.6));
  CHECK(sum.weight_shares("v", "F") == std::vector<double>{0.5, 0.7});
  CHECK(sum.weight_shares("ALL", "F").size() == 3);
  CHECK(sum.mean_degrees("ALL", "F").size() == 2);
}

TEST_CASE("node without roster record is an error") {
  const auto r = fixtures::roster({{"a", M}});
  const auto g = fixtures::graph({{"a", 0.4}, {"ghost", 0.2}}, {});
  const std::vector<AnalyzedStory> s{analyzed("s1", "w", 1900, r, g)};
  CHECK_THROWS_WITH_AS(group_summary(s, GroupKey::gender), doctest::Contains("ghost"), AnalyticsError);
}

TEST_CASE("partitions sum to one per story") {
  std::mt19937_64 rng(13);
  std::vector<std::pair<Roster, StoryGraph>> data;
  for (int i = 0; i < 50; ++i) data.push_back(fixtures::random_story(rng, 10));
  std::vector<AnalyzedStory> s;
  for (std::size_t i = 0; i < data.size(); ++i) {
    s.push_back(analyzed("s" + std::to_string(i), i % 2 ? "a" : "b", 1900, data[i].first, data[i].second));
  }
  for (const auto key : {GroupKey::gender, GroupKey::age, GroupKey::age_gender, GroupKey::family, GroupKey::role}) {
    const auto sum = group_summary(s, key);
    CHECK(sum.stories.size() == 50);
    for (const auto& st : sum.stories) {
      double p = 0;
      double w = 0;
      for (const auto& [label, cell] : st.cells) {
        p += cell.proportion;
        w += cell.weight_share;
      }
      CHECK(std::fabs(p - 1) <= 1e-9);
      CHECK(std::fabs(w - 1) <= 1e-9);
    }
  }
}

TEST_CASE("group summary matches brute-force regrouping") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [r, g] = fixtures::random_story(rng, 10);
    const std::vector<AnalyzedStory> s{analyzed("s", "w", 1900, r, g)};
    const auto sum = group_summary(s, GroupKey::age_gender);
    double total = 0;
    for (const auto& [id, n] : g.nodes) total += n.omega;
    for (const auto& label : group_labels(GroupKey::age_gender)) {
      double w = 0;
      int count = 0;
      int degree = 0;
      for (const auto& [id, n] : g.nodes) {
        if (group_of(*r.find(id), GroupKey::age_gender) != label) continue;
        w += n.omega;
        ++count;
        for (const auto& [key, e] : g.edges) degree += key.first == id || key.second == id;
      }
      const auto& cell = sum.stories[0].cells.at(label);
      CHECK(cell.count == count);
      CHECK(cell.weight_share == doctest::Approx(w / total));
      if (count > 0) CHECK(*cell.mean_degree == doctest::Approx(static_cast<double>(degree) / count));
    }
  }
}

TEST_CASE("combined age-gender distribution") {
  const auto r = fixtures::roster({{"a", M, AgeGroup::A1}, {"b", M, AgeGroup::A2}, {"c", F, AgeGroup::A3}});
  const auto g = fixtures::graph({{"a", 0.4}, {"b", 0.2}, {"c", 0.4}}, {});
  const std::vector<AnalyzedStory> s{analyzed("s1", "w", 1900, r, g)};
  const auto rows = combined_age_gender(s);
  const auto& all = rows.back();
  CHECK(all.first == "ALL");
  CHECK(all.second.at("M-A1") == doctest::Approx(50.0));
  CHECK(all.second.at("F-A3") == doctest::Approx(100.0));
}

TEST_CASE("edge type distribution") {
  const auto r = fixtures::roster({{"a", M, AgeGroup::A2}, {"b", F, AgeGroup::A3}, {"c", M, AgeGroup::A2}});
  const auto g = fixtures::graph({{"a", 1}, {"b", 1}, {"c", 1}}, {{"a", "b", 0.3}, {"a", "c", 0.1}});
  const auto d = edge_type_distribution(g, r);
  CHECK(d.edges == 2);
  CHECK(d.gender.at("M-F") == 0.5);
  CHECK(d.gender.at("M-M") == 0.5);
  CHECK(d.gender.at("F-F") == 0.0);
  CHECK(d.age.at("A2-A3") == 0.5);
  const auto w = edge_type_distribution(g, r, true);
  CHECK(w.gender.at("M-F") == doctest::Approx(0.75));

  const auto single = fixtures::graph({{"a", 1}, {"b", 1}}, {{"a", "b", 0.3}});
  CHECK(edge_type_distribution(single, r).age.at("A2-A3") == 1.0);
  const auto none = edge_type_distribution(fixtures::graph({{"a", 1}}, {}), r);
  CHECK(none.empty());
  CHECK(none.gender.empty());
  CHECK(gender_pair_labels().size() == 3);
  CHECK(age_pair_labels().size() == 6);
}

TEST_CASE("edge type classes sum to one") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [r, g] = fixtures::random_story(rng, 8);
    const auto d = edge_type_distribution(g, r);
    if (d.empty()) continue;
    double a = 0;
    double b = 0;
    for (const auto& [k, v] : d.gender) a += v;
    for (const auto& [k, v] : d.age) b += v;
    CHECK(std::fabs(a - 1) <= 1e-9);
    CHECK(std::fabs(b - 1) <= 1e-9);
  }
}

TEST_CASE("protagonist profile") {
  const auto r1 = fixtures::roster({{"p", F, AgeGroup::A2, Role::protagonist}, {"x", M}});
  auto g1 = fixtures::graph({{"p", 0.9}, {"x", 0.1}}, {{"p", "x", 0.2}});
  g1.nodes["p"].sentiment = -0.1;
  const std::vector<AnalyzedStory> one{analyzed("s1", "w", 1900, r1, g1)};
  const auto prof = protagonist_profile(one);
  const auto& w = prof.front();
  CHECK(w.writer_id == "w");
  REQUIRE(w.by_gender.size() == 1);
  CHECK(w.by_gender[0].gender == F);
  CHECK(w.by_gender[0].mean_weight == 0.9);
  CHECK(w.by_gender[0].mean_degree == 1.0);
  CHECK(w.by_gender[0].mean_sentiment == -0.1);
  CHECK(w.by_gender[0].share == 1.0);

  auto r2 = fixtures::roster({{"m1", M, AgeGroup::A2, Role::protagonist}, {"m2", M, AgeGroup::A2, Role::protagonist}});
  r2.co_protagonists = true;
  std::vector<std::pair<std::string, double>> nodes{{"m1", 0.5}, {"m2", 0.4}};
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int i = 0; i < 9; ++i) {
    const auto id = "o" + std::to_string(i);
    nodes.emplace_back(id, 0.1);
    edges.emplace_back("m1", id, 0.1);
    if (i < 7) edges.emplace_back("m2", id, 0.1);
  }
  auto r2full = r2;
  for (int i = 0; i < 9; ++i) r2full.characters.push_back(fixtures::roster({{"o" + std::to_string(i), F}}).characters[0]);
  const auto g2 = fixtures::graph(nodes, edges);
  const std::vector<AnalyzedStory> two{analyzed("s2", "v", 1900, r2full, g2)};
  const auto p2 = protagonist_profile(two);
  REQUIRE(p2.front().by_gender.size() == 1);
  CHECK(p2.front().by_gender[0].mean_degree == 8.0);
  CHECK(p2.front().by_gender[0].count == 2);
}

TEST_CASE("protagonist profile matches regrouping") {
  std::mt19937_64 rng(23);
  std::vector<std::pair<Roster, StoryGraph>> data;
  for (int i = 0; i < 20; ++i) data.push_back(fixtures::random_story(rng, 8));
  std::vector<AnalyzedStory> s;
  for (std::size_t i = 0; i < data.size(); ++i) {
    s.push_back(analyzed("s" + std::to_string(i), "w", 1900, data[i].first, data[i].second));
  }
  const auto prof = protagonist_profile(s);
  const auto& all = prof.back();
  CHECK(all.writer_id == "ALL");
  int total = 0;
  for (const auto& row : all.by_gender) {
    std::vector<double> w;
    for (const auto& d : data) {
      for (const auto& c : d.first.characters) {
        if (c.role == Role::protagonist && c.gender == row.gender && d.second.nodes.count(c.id)) {
          w.push_back(d.second.nodes.at(c.id).omega);
        }
      }
    }
    CHECK(row.count == static_cast<int>(w.size()));
    double m = 0;
    for (double x : w) m += x;
    CHECK(row.mean_weight == doctest::Approx(m / w.size()));
    total += row.count;
  }
  CHECK(total == static_cast<int>(all.entries.size()));
}

TEST_CASE("time series") {
  const auto r1 = fixtures::roster({{"a", M, AgeGroup::A1, Role::regular, FamilyStatus::father}, {"b", F}});
  const auto g1 = fixtures::graph({{"a", 0.3}, {"b", 0.7}}, {});
  const auto r2 = fixtures::roster({{"a", M}, {"b", F, AgeGroup::A2, Role::regular, FamilyStatus::none}});
  const auto g2 = fixtures::graph({{"a", 0.3}, {"b", 0.7}}, {});
  const auto r3 = fixtures::roster({{"a", M, AgeGroup::A1, Role::regular, FamilyStatus::uncle}});
  const auto g3 = fixtures::graph({{"a", 0.3}}, {});
  const std::vector<AnalyzedStory> s{analyzed("late", "w", 1950, r1, g1), analyzed("early", "w", 1910, r2, g2),
                                     analyzed("undated", "w", std::nullopt, r3, g3),
                                     analyzed("full", "w", 1930, r3, g3)};
  std::vector<std::string> warnings;
  const auto fam = time_series(s, SeriesMetric::family_weight, &warnings);
  REQUIRE(fam.size() == 3);
  CHECK(fam[0].story_id == "early");
  CHECK(fam[0].values.at("family_weight") == 0.0);
  CHECK(fam[1].values.at("family_weight") == 1.0);
  CHECK(fam[2].values.at("family_weight") == doctest::Approx(0.3));
  CHECK(warnings.size() == 1);
  const auto age = time_series(s, SeriesMetric::age_proportions);
  CHECK(age[2].values.at("A1") == 0.5);
  CHECK(age[2].values.at("A2") == 0.5);
  CHECK(age[2].values.at("A3") == 0.0);
}

TEST_CASE("genre structure lists multi-genre stories once per tag") {
  const auto r = fixtures::roster({{"a", M}, {"b", F}});
  const auto g = fixtures::graph({{"a", 0.3}, {"b", 0.7}}, {{"a", "b", 0.1}});
  AnalyzedStory st = analyzed("s", "w", 1900, r, g);
  st.genres = {Genre::social, Genre::romantic};
  const std::vector<AnalyzedStory> s{st};
  const auto pts = genre_structure(s);
  CHECK(pts.size() == 2);
  CHECK(pts[0].density == 1.0);
  CHECK(pts[0].nodes == 2);
}

TEST_CASE("group key names") {
  CHECK(parse_group_key("age_gender") == GroupKey::age_gender);
  CHECK_FALSE(parse_group_key("height"));
  CHECK(to_string(GroupKey::family) == "family");
}
