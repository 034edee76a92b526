// Weighted character interaction graphs at chapter and story level.
#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chargraph/corpus.hpp"
#include "chargraph/segmentation.hpp"

namespace chargraph {

/// How l' counts sentences inside an interaction hull.
enum class LPrimeMode {
  exactly_one,  // exactly one of the pair present
  either,       // at least one present (includes joint sentences)
};

std::string_view to_string(LPrimeMode m);
std::optional<LPrimeMode> parse_lprime_mode(std::string_view s);

struct WeightParams {
  double alpha = 0.1;  // per-ordinal scaling
  double beta = 0.1;   // bonus per sentence where the character is addressed
  std::optional<double> gamma;  // joint-presence bonus, 2 * beta when unset
  LPrimeMode lprime_mode = LPrimeMode::exactly_one;

  double joint_bonus() const noexcept { return gamma.value_or(2.0 * beta); }
  void validate() const;
};

/// omega_C = (1/L) * sum_i (1 + i*alpha) * (l_i + beta * l'_i), where l'_i is
/// the number of sentences in segment i that mention C. Segments must be in
/// ordinal order.
double node_weight(std::span<const Segment> segments, int chapter_length, const WeightParams& params);

/// omega_<C1,C2> = (1/L) * sum_i (1 + i*alpha) * (l_i + beta * l'_i + gamma * l''_i)
double edge_weight(std::span<const InteractionSegment> interactions, int chapter_length,
                   const WeightParams& params);

/// Phi = l / l_own + addressed / l.
double importance(int interaction_length, int own_length, int addressed);
std::pair<double, double> importance(const InteractionSegment& interaction);

struct SpanRef {
  int chapter = 0;
  int start = 0;
  int end = 0;
  bool operator==(const SpanRef&) const = default;
};

struct NodeAttrs {
  double omega = 0.0;
  int appearances = 0;  // sentences mentioning the character
  int segment_count = 0;
  int chapter_presence = 0;
  std::vector<SpanRef> sequence;
  double sentiment = 0.0;
  std::vector<double> topics;  // empty unless topics were attached
};

struct EdgeAttrs {
  double omega = 0.0;
  int appearances = 0;  // sentences mentioning both
  int segment_count = 0;
  int chapter_presence = 0;
  std::vector<SpanRef> sequence;
  double sentiment = 0.0;
  double phi_first = 0.0;
  double phi_second = 0.0;
};

struct EdgeKey {
  std::string first;
  std::string second;
  auto operator<=>(const EdgeKey&) const = default;
};

/// Orders the pair so that first < second.
EdgeKey make_edge_key(std::string a, std::string b);

/// Thresholds used for one chapter, kept for provenance.
struct ChapterParams {
  int chapter = 0;
  int length = 0;
  SegmentationParams params;
};

/// Shared shape of chapter and story graphs. `chapter` is the chapter index
/// for a chapter graph and 0 for a merged story graph.
struct CharacterGraph {
  std::string story_id;
  int chapter = 0;
  int sentences = 0;
  int chapter_count = 1;
  WeightParams weights;
  std::vector<ChapterParams> provenance;
  std::map<std::string, NodeAttrs> nodes;
  std::map<EdgeKey, EdgeAttrs> edges;

  bool is_story() const noexcept { return chapter == 0; }
};

using ChapterGraph = CharacterGraph;
using StoryGraph = CharacterGraph;

/// Nodes for characters with a kept segment, edges for pairs with an
/// interaction segment. Sentiment and topics are left at their defaults.
ChapterGraph build_chapter_graph(std::string story_id, int chapter_index,
                                 const OccurrenceMatrix& occurrences,
                                 const ChapterSegmentation& segmentation, const WeightParams& params);

/// Length-weighted merge. Weights average over every chapter (absence counts
/// as zero); sentiment, topics and importances average over the chapters
/// where the node or edge exists.
StoryGraph merge_story(std::span<const ChapterGraph> chapters);

}  // namespace chargraph
