// Structural features and group-level aggregates over story graphs.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chargraph/corpus.hpp"
#include "chargraph/graph.hpp"

namespace chargraph {

/// A story graph together with the metadata analytics needs.
struct AnalyzedStory {
  std::string story_id;
  std::string writer_id;
  std::optional<int> year;
  std::set<Genre> genres;
  const Roster* roster = nullptr;
  const StoryGraph* graph = nullptr;
};

class AnalyticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodeFeatures {
  std::string id;
  double weight = 0.0;
  int degree = 0;
  double strength = 0.0;  // sum of incident edge weights
  int chapter_presence = 0;
  double sentiment = 0.0;
};

struct GraphFeatures {
  int node_count = 0;
  int edge_count = 0;
  double density = 0.0;  // 2E / (N (N - 1)), 0 for N < 2
  double total_node_weight = 0.0;
  double total_edge_weight = 0.0;
  double mean_degree = 0.0;
  double mean_strength = 0.0;
  std::vector<NodeFeatures> nodes;  // sorted by id

  const NodeFeatures* node(std::string_view id) const;
};

GraphFeatures graph_features(const CharacterGraph& graph);

enum class GroupKey { gender, age, age_gender, family, role };

std::string_view to_string(GroupKey k);
std::optional<GroupKey> parse_group_key(std::string_view s);
/// Group labels in report order, e.g. {"M", "F"} or {"A1", "A2", "A3"}.
std::vector<std::string> group_labels(GroupKey k);
std::string group_of(const CharacterRecord& c, GroupKey k);

struct GroupCell {
  int count = 0;
  double proportion = 0.0;    // share of the story's nodes
  double weight_share = 0.0;  // group weight / total node weight
  std::optional<double> mean_degree;
  std::optional<double> mean_sentiment;
};

struct StoryGroups {
  std::string story_id;
  std::string writer_id;
  std::optional<int> year;
  std::map<std::string, GroupCell> cells;  // every label present, zero when empty
};

/// Unweighted means over a writer's stories. Proportion and weight share
/// treat an absent group as 0; degree and sentiment average only over the
/// stories where the group appears.
struct GroupRollup {
  std::string writer_id;  // "ALL" for the corpus-wide row
  int stories = 0;
  std::map<std::string, GroupCell> cells;
};

struct GroupSummary {
  GroupKey key = GroupKey::gender;
  std::vector<std::string> groups;
  std::vector<StoryGroups> stories;  // stories with at least one node
  std::vector<GroupRollup> writers;  // manifest order, then ALL

  /// Per-story weight shares of `group` for `writer_id` ("ALL" = every story).
  std::vector<double> weight_shares(std::string_view writer_id, std::string_view group) const;
  /// Per-story mean degree of `group`, stories without the group skipped.
  std::vector<double> mean_degrees(std::string_view writer_id, std::string_view group) const;
};

inline constexpr std::string_view kAllWriters = "ALL";

/// Throws AnalyticsError when a node has no roster record.
GroupSummary group_summary(std::span<const AnalyzedStory> stories, GroupKey key);

/// Within-gender age distribution in percent ("M-A1" = share of male nodes
/// in A1), averaged over stories where the gender appears.
std::vector<std::pair<std::string, std::map<std::string, double>>> combined_age_gender(
    std::span<const AnalyzedStory> stories);

std::vector<std::string> gender_pair_labels();  // M-M, M-F, F-F
std::vector<std::string> age_pair_labels();     // A1-A1 ... A3-A3

struct EdgeTypeDistribution {
  int edges = 0;
  std::map<std::string, double> gender;  // empty when the graph has no edges
  std::map<std::string, double> age;

  bool empty() const noexcept { return edges == 0; }
};

/// Class proportions by edge count, or by edge weight when `by_weight`.
EdgeTypeDistribution edge_type_distribution(const CharacterGraph& graph, const Roster& roster,
                                            bool by_weight = false);

struct EdgeTypeRollup {
  std::string writer_id;
  int stories = 0;  // stories with at least one edge
  EdgeTypeDistribution mean;
};

std::vector<EdgeTypeRollup> edge_type_rollup(std::span<const AnalyzedStory> stories, bool by_weight = false);

struct ProtagonistEntry {
  std::string story_id;
  std::string writer_id;
  std::string character_id;
  Gender gender = Gender::male;
  AgeGroup age_group = AgeGroup::A2;
  double weight = 0.0;
  int degree = 0;
  double sentiment = 0.0;
};

struct ProtagonistGenderRow {
  Gender gender = Gender::male;
  int count = 0;
  double share = 0.0;
  double mean_weight = 0.0;
  double mean_degree = 0.0;
  double mean_sentiment = 0.0;
};

struct ProtagonistProfile {
  std::string writer_id;
  std::vector<ProtagonistEntry> entries;
  std::vector<ProtagonistGenderRow> by_gender;  // genders with at least one protagonist
};

/// Roster-flagged protagonists that appear in their story graph, per writer
/// and for ALL.
std::vector<ProtagonistProfile> protagonist_profile(std::span<const AnalyzedStory> stories);

enum class SeriesMetric { age_proportions, family_weight };

struct TimeSeriesPoint {
  int year = 0;
  std::string story_id;
  std::string writer_id;
  std::map<std::string, double> values;
};

/// One point per story with a year and at least one node, sorted by year
/// then story id. Stories without a year are skipped and reported in
/// `warnings` when given.
std::vector<TimeSeriesPoint> time_series(std::span<const AnalyzedStory> stories, SeriesMetric metric,
                                         std::vector<std::string>* warnings = nullptr);

struct GenreStructurePoint {
  Genre genre = Genre::social;
  std::string story_id;
  std::string writer_id;
  int nodes = 0;
  int edges = 0;
  double density = 0.0;
};

/// Node count and density per genre tag; multi-genre stories appear once per tag.
std::vector<GenreStructurePoint> genre_structure(std::span<const AnalyzedStory> stories);

}  // namespace chargraph
