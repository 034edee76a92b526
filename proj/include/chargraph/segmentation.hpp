// Character segments and pairwise interaction segments.
//
// A character's occurrence sentences are chained while consecutive gaps stay
// below delta_a; chains with at least delta_c occurrences become segments.
// Two characters interact when their segments, each padded by delta_b
// sentences on both sides, overlap. The interaction covers the union hull of
// the two segments; overlapping hulls of the same pair are merged.
#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chargraph/corpus.hpp"

namespace chargraph {

struct SegmentationParams {
  int delta_a = 3;  // intra-character gap threshold (sentences)
  int delta_b = 1;  // inter-character padding (sentences)
  int delta_c = 1;  // minimum appearances per segment
  /// Derive delta values per chapter from its length and cast size.
  bool automatic = true;
  /// Require more than delta_c appearances instead of at least delta_c.
  bool strict_min_appearance = false;

  /// Throws std::invalid_argument unless delta_a >= 1, delta_b >= 0, delta_c >= 1.
  void validate() const;
  bool operator==(const SegmentationParams&) const = default;
};

/// Pinned heuristic for automatic thresholds:
///   delta_a = clamp(ceil(L / 5K), 3, 15)
///   delta_b = max(1, ceil(delta_a / 2))
///   delta_c = max(1, floor(L / 200) + 1)
SegmentationParams auto_params(int chapter_length, int character_count);

struct Segment {
  std::string character;
  int start = 0;  // first occurrence (1-based sentence)
  int end = 0;    // last occurrence
  std::vector<int> occurrences;
  int ordinal = 0;  // 1-based among the character's kept segments

  int length() const noexcept { return end - start + 1; }
  bool operator==(const Segment&) const = default;
};

struct InteractionSegment {
  std::string first;  // first < second
  std::string second;
  int start = 0;
  int end = 0;
  int one_present = 0;   // sentences with exactly one member
  int both_present = 0;  // sentences with both members
  int addressed_first = 0;  // alias matches inside the hull
  int addressed_second = 0;
  int own_length_first = 0;  // summed length of own segments intersecting the hull
  int own_length_second = 0;
  int ordinal = 0;  // 1-based among the pair's interaction segments

  int length() const noexcept { return end - start + 1; }
  bool operator==(const InteractionSegment&) const = default;
};

std::vector<Segment> build_segments(std::string_view character, std::span<const int> occurrences,
                                    const SegmentationParams& params);

using SegmentsByCharacter = std::map<std::string, std::vector<Segment>>;

/// Interaction segments sorted by (first, second, start).
std::vector<InteractionSegment> detect_interactions(const SegmentsByCharacter& segments,
                                                    const OccurrenceMatrix& occurrences,
                                                    const SegmentationParams& params);

struct ChapterSegmentation {
  SegmentationParams params;  // resolved values actually used
  SegmentsByCharacter segments;  // characters with at least one kept segment
  std::vector<InteractionSegment> interactions;
};

/// Resolves automatic parameters (K = characters occurring in the chapter)
/// and runs both stages.
ChapterSegmentation segment_chapter(const OccurrenceMatrix& occurrences, const SegmentationParams& base);

}  // namespace chargraph
