#include "chargraph/graph.hpp"

#include <stdexcept>

namespace chargraph {

std::string_view to_string(LPrimeMode m) {
  return m == LPrimeMode::exactly_one ? "exactly_one" : "either";
}

std::optional<LPrimeMode> parse_lprime_mode(std::string_view s) {
  if (s == "exactly_one") return LPrimeMode::exactly_one;
  if (s == "either") return LPrimeMode::either;
  return std::nullopt;
}

void WeightParams::validate() const {
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  if (beta < 0) throw std::invalid_argument("beta must be >= 0");
  if (gamma && *gamma < 0) throw std::invalid_argument("gamma must be >= 0");
}

double node_weight(std::span<const Segment> segments, int chapter_length, const WeightParams& params) {
  if (segments.empty()) return 0.0;
  if (chapter_length < 1) throw std::invalid_argument("chapter length must be >= 1");
  double sum = 0.0;
  int ordinal = 0;
  for (const auto& seg : segments) {
    ++ordinal;
    const double addressed = static_cast<double>(seg.occurrences.size());
    sum += (1.0 + ordinal * params.alpha) * (seg.length() + params.beta * addressed);
  }
  return sum / chapter_length;
}

double edge_weight(std::span<const InteractionSegment> interactions, int chapter_length,
                   const WeightParams& params) {
  if (interactions.empty()) return 0.0;
  if (chapter_length < 1) throw std::invalid_argument("chapter length must be >= 1");
  const double gamma = params.joint_bonus();
  double sum = 0.0;
  int ordinal = 0;
  for (const auto& seg : interactions) {
    ++ordinal;
    const int single = params.lprime_mode == LPrimeMode::exactly_one ? seg.one_present
                                                                      : seg.one_present + seg.both_present;
    sum += (1.0 + ordinal * params.alpha) *
           (seg.length() + params.beta * single + gamma * seg.both_present);
  }
  return sum / chapter_length;
}

double importance(int interaction_length, int own_length, int addressed) {
  if (interaction_length < 1 || own_length < 1) {
    throw std::invalid_argument("importance needs positive lengths");
  }
  return static_cast<double>(interaction_length) / own_length +
         static_cast<double>(addressed) / interaction_length;
}

std::pair<double, double> importance(const InteractionSegment& s) {
  return {importance(s.length(), s.own_length_first, s.addressed_first),
          importance(s.length(), s.own_length_second, s.addressed_second)};
}

EdgeKey make_edge_key(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return EdgeKey{std::move(a), std::move(b)};
}

ChapterGraph build_chapter_graph(std::string story_id, int chapter_index,
                                 const OccurrenceMatrix& occurrences,
                                 const ChapterSegmentation& segmentation, const WeightParams& params) {
  params.validate();
  ChapterGraph g;
  g.story_id = std::move(story_id);
  g.chapter = chapter_index;
  g.sentences = occurrences.length;
  g.chapter_count = 1;
  g.weights = params;
  g.provenance.push_back({chapter_index, occurrences.length, segmentation.params});

  for (const auto& [id, segs] : segmentation.segments) {
    if (segs.empty()) continue;
    NodeAttrs node;
    node.omega = node_weight(segs, occurrences.length, params);
    node.appearances = static_cast<int>(occurrences.of(id).sentences.size());
    node.segment_count = static_cast<int>(segs.size());
    node.chapter_presence = 1;
    for (const auto& s : segs) node.sequence.push_back({chapter_index, s.start, s.end});
    g.nodes.emplace(id, std::move(node));
  }

  // Interactions arrive grouped by pair in ordinal order.
  std::size_t i = 0;
  const auto& inter = segmentation.interactions;
  while (i < inter.size()) {
    std::size_t j = i;
    while (j < inter.size() && inter[j].first == inter[i].first && inter[j].second == inter[i].second) ++j;
    const std::span<const InteractionSegment> group(inter.data() + i, j - i);
    EdgeAttrs edge;
    edge.omega = edge_weight(group, occurrences.length, params);
    edge.segment_count = static_cast<int>(group.size());
    edge.chapter_presence = 1;
    double phi_a = 0.0;
    double phi_b = 0.0;
    for (const auto& s : group) {
      edge.appearances += s.both_present;
      edge.sequence.push_back({chapter_index, s.start, s.end});
      const auto [a, b] = importance(s);
      phi_a += a;
      phi_b += b;
    }
    edge.phi_first = phi_a / static_cast<double>(group.size());
    edge.phi_second = phi_b / static_cast<double>(group.size());
    g.edges.emplace(make_edge_key(inter[i].first, inter[i].second), std::move(edge));
    i = j;
  }
  return g;
}

namespace {

template <typename Attrs>
struct Accumulator {
  Attrs attrs;
  double present_length = 0.0;
  double sentiment_sum = 0.0;
  std::vector<double> topic_sum;
  double topic_length = 0.0;
  double phi_first_sum = 0.0;
  double phi_second_sum = 0.0;
};

}  // namespace

StoryGraph merge_story(std::span<const ChapterGraph> chapters) {
  if (chapters.empty()) throw std::invalid_argument("merge_story needs at least one chapter graph");
  StoryGraph story;
  story.story_id = chapters.front().story_id;
  story.chapter = 0;
  story.weights = chapters.front().weights;
  story.chapter_count = static_cast<int>(chapters.size());
  for (const auto& ch : chapters) {
    story.sentences += ch.sentences;
    story.provenance.insert(story.provenance.end(), ch.provenance.begin(), ch.provenance.end());
  }
  const double total = story.sentences;

  std::map<std::string, Accumulator<NodeAttrs>> nodes;
  std::map<EdgeKey, Accumulator<EdgeAttrs>> edges;
  for (const auto& ch : chapters) {
    const double share = ch.sentences / total;
    const double length = ch.sentences;
    for (const auto& [id, n] : ch.nodes) {
      auto& acc = nodes[id];
      acc.attrs.omega += share * n.omega;
      acc.attrs.appearances += n.appearances;
      acc.attrs.segment_count += n.segment_count;
      acc.attrs.chapter_presence += 1;
      acc.attrs.sequence.insert(acc.attrs.sequence.end(), n.sequence.begin(), n.sequence.end());
      acc.present_length += length;
      acc.sentiment_sum += length * n.sentiment;
      if (!n.topics.empty()) {
        if (acc.topic_sum.empty()) acc.topic_sum.assign(n.topics.size(), 0.0);
        if (acc.topic_sum.size() != n.topics.size()) {
          throw std::invalid_argument("inconsistent topic vector lengths across chapters");
        }
        for (std::size_t k = 0; k < n.topics.size(); ++k) acc.topic_sum[k] += length * n.topics[k];
        acc.topic_length += length;
      }
    }
    for (const auto& [key, e] : ch.edges) {
      auto& acc = edges[key];
      acc.attrs.omega += share * e.omega;
      acc.attrs.appearances += e.appearances;
      acc.attrs.segment_count += e.segment_count;
      acc.attrs.chapter_presence += 1;
      acc.attrs.sequence.insert(acc.attrs.sequence.end(), e.sequence.begin(), e.sequence.end());
      acc.present_length += length;
      acc.sentiment_sum += length * e.sentiment;
      acc.phi_first_sum += length * e.phi_first;
      acc.phi_second_sum += length * e.phi_second;
    }
  }

  for (auto& [id, acc] : nodes) {
    acc.attrs.sentiment = acc.sentiment_sum / acc.present_length;
    if (acc.topic_length > 0) {
      acc.attrs.topics.resize(acc.topic_sum.size());
      for (std::size_t k = 0; k < acc.topic_sum.size(); ++k) {
        acc.attrs.topics[k] = acc.topic_sum[k] / acc.topic_length;
      }
    }
    story.nodes.emplace(id, std::move(acc.attrs));
  }
  for (auto& [key, acc] : edges) {
    acc.attrs.sentiment = acc.sentiment_sum / acc.present_length;
    acc.attrs.phi_first = acc.phi_first_sum / acc.present_length;
    acc.attrs.phi_second = acc.phi_second_sum / acc.present_length;
    story.edges.emplace(key, std::move(acc.attrs));
  }
  return story;
}

}  // namespace chargraph
