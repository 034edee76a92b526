#include "chargraph/segmentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace chargraph {

void SegmentationParams::validate() const {
  if (delta_a < 1) throw std::invalid_argument("delta_a must be >= 1");
  if (delta_b < 0) throw std::invalid_argument("delta_b must be >= 0");
  if (delta_c < 1) throw std::invalid_argument("delta_c must be >= 1");
}

SegmentationParams auto_params(int chapter_length, int character_count) {
  const int length = std::max(chapter_length, 1);
  const int cast = std::max(character_count, 1);
  SegmentationParams p;
  const int denom = 5 * cast;
  p.delta_a = std::clamp((length + denom - 1) / denom, 3, 15);
  p.delta_b = std::max(1, (p.delta_a + 1) / 2);
  p.delta_c = std::max(1, length / 200 + 1);
  p.automatic = true;
  return p;
}

std::vector<Segment> build_segments(std::string_view character, std::span<const int> occurrences,
                                    const SegmentationParams& params) {
  std::vector<Segment> out;
  auto keep = [&](std::vector<int>&& chain) {
    const auto n = static_cast<int>(chain.size());
    const bool enough = params.strict_min_appearance ? n > params.delta_c : n >= params.delta_c;
    if (!enough) return;
    Segment s;
    s.character = std::string(character);
    s.start = chain.front();
    s.end = chain.back();
    s.occurrences = std::move(chain);
    s.ordinal = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(s));
  };
  std::vector<int> chain;
  for (int sentence : occurrences) {
    if (!chain.empty() && sentence - chain.back() >= params.delta_a) {
      keep(std::move(chain));
      chain.clear();
    }
    chain.push_back(sentence);
  }
  if (!chain.empty()) keep(std::move(chain));
  return out;
}

namespace {

struct Hull {
  int start;
  int end;
};

int own_length_in(const std::vector<Segment>& segments, int start, int end) {
  int total = 0;
  for (const auto& s : segments) {
    if (s.start <= end && start <= s.end) total += s.length();
  }
  return total;
}

}  // namespace

std::vector<InteractionSegment> detect_interactions(const SegmentsByCharacter& segments,
                                                    const OccurrenceMatrix& occurrences,
                                                    const SegmentationParams& params) {
  std::vector<InteractionSegment> out;
  const int pad = params.delta_b;
  const int length = occurrences.length;
  for (auto a = segments.begin(); a != segments.end(); ++a) {
    for (auto b = std::next(a); b != segments.end(); ++b) {
      std::vector<Hull> hulls;
      for (const auto& sa : a->second) {
        for (const auto& sb : b->second) {
          if (sa.start - pad <= sb.end + pad && sb.start - pad <= sa.end + pad) {
            hulls.push_back({std::max(1, std::min(sa.start, sb.start)),
                             length > 0 ? std::min(length, std::max(sa.end, sb.end))
                                        : std::max(sa.end, sb.end)});
          }
        }
      }
      if (hulls.empty()) continue;
      std::sort(hulls.begin(), hulls.end(),
                [](const Hull& x, const Hull& y) { return x.start != y.start ? x.start < y.start : x.end < y.end; });
      std::vector<Hull> merged{hulls.front()};
      for (std::size_t i = 1; i < hulls.size(); ++i) {
        if (hulls[i].start <= merged.back().end) {
          merged.back().end = std::max(merged.back().end, hulls[i].end);
        } else {
          merged.push_back(hulls[i]);
        }
      }

      const auto& occ_a = occurrences.of(a->first);
      const auto& occ_b = occurrences.of(b->first);
      int ordinal = 0;
      for (const auto& h : merged) {
        InteractionSegment seg;
        seg.first = a->first;
        seg.second = b->first;
        seg.start = h.start;
        seg.end = h.end;
        for (int s = h.start; s <= h.end; ++s) {
          const int ca = occ_a.count_at(s);
          const int cb = occ_b.count_at(s);
          if (ca > 0 && cb > 0) {
            ++seg.both_present;
          } else if (ca > 0 || cb > 0) {
            ++seg.one_present;
          }
          seg.addressed_first += ca;
          seg.addressed_second += cb;
        }
        seg.own_length_first = own_length_in(a->second, h.start, h.end);
        seg.own_length_second = own_length_in(b->second, h.start, h.end);
        seg.ordinal = ++ordinal;
        out.push_back(std::move(seg));
      }
    }
  }
  return out;
}

ChapterSegmentation segment_chapter(const OccurrenceMatrix& occurrences, const SegmentationParams& base) {
  ChapterSegmentation result;
  result.params = base;
  if (base.automatic) {
    const auto derived = auto_params(occurrences.length, occurrences.active_characters());
    result.params.delta_a = derived.delta_a;
    result.params.delta_b = derived.delta_b;
    result.params.delta_c = derived.delta_c;
  }
  result.params.validate();
  for (const auto& [id, occ] : occurrences.by_character) {
    auto segs = build_segments(id, occ.sentences, result.params);
    if (!segs.empty()) result.segments.emplace(id, std::move(segs));
  }
  result.interactions = detect_interactions(result.segments, occurrences, result.params);
  return result;
}

}  // namespace chargraph
