#include "chargraph/analytics.hpp"

#include <algorithm>
#include <numeric>

namespace chargraph {

const NodeFeatures* GraphFeatures::node(std::string_view id) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                                   [](const NodeFeatures& n, std::string_view v) { return n.id < v; });
  return it != nodes.end() && it->id == id ? &*it : nullptr;
}

GraphFeatures graph_features(const CharacterGraph& graph) {
  GraphFeatures f;
  f.node_count = static_cast<int>(graph.nodes.size());
  f.edge_count = static_cast<int>(graph.edges.size());
  if (f.node_count >= 2) {
    f.density = 2.0 * f.edge_count / (static_cast<double>(f.node_count) * (f.node_count - 1));
  }
  std::map<std::string, NodeFeatures> by_id;
  for (const auto& [id, n] : graph.nodes) {
    auto& nf = by_id[id];
    nf.id = id;
    nf.weight = n.omega;
    nf.chapter_presence = n.chapter_presence;
    nf.sentiment = n.sentiment;
    f.total_node_weight += n.omega;
  }
  for (const auto& [key, e] : graph.edges) {
    for (const auto* end : {&key.first, &key.second}) {
      const auto it = by_id.find(*end);
      if (it == by_id.end()) throw AnalyticsError("edge endpoint '" + *end + "' is not a node");
      it->second.degree += 1;
      it->second.strength += e.omega;
    }
    f.total_edge_weight += e.omega;
  }
  for (auto& [id, nf] : by_id) {
    f.mean_degree += nf.degree;
    f.mean_strength += nf.strength;
    f.nodes.push_back(std::move(nf));
  }
  if (f.node_count > 0) {
    f.mean_degree /= f.node_count;
    f.mean_strength /= f.node_count;
  }
  return f;
}

std::string_view to_string(GroupKey k) {
  switch (k) {
    case GroupKey::gender: return "gender";
    case GroupKey::age: return "age";
    case GroupKey::age_gender: return "age_gender";
    case GroupKey::family: return "family";
    case GroupKey::role: return "role";
  }
  return "?";
}

std::optional<GroupKey> parse_group_key(std::string_view s) {
  for (auto k : {GroupKey::gender, GroupKey::age, GroupKey::age_gender, GroupKey::family, GroupKey::role}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<std::string> group_labels(GroupKey k) {
  switch (k) {
    case GroupKey::gender: return {"M", "F"};
    case GroupKey::age: return {"A1", "A2", "A3"};
    case GroupKey::age_gender: return {"M-A1", "F-A1", "M-A2", "F-A2", "M-A3", "F-A3"};
    case GroupKey::family: return {"father", "mother", "uncle", "aunt", "brother", "other", "none"};
    case GroupKey::role: return {"protagonist", "antagonist", "regular"};
  }
  return {};
}

std::string group_of(const CharacterRecord& c, GroupKey k) {
  switch (k) {
    case GroupKey::gender: return std::string(gender_code(c.gender));
    case GroupKey::age: return std::string(to_string(c.age_group));
    case GroupKey::age_gender:
      return std::string(gender_code(c.gender)) + "-" + std::string(to_string(c.age_group));
    case GroupKey::family: return std::string(to_string(c.family_status.value_or(FamilyStatus::none)));
    case GroupKey::role: return std::string(to_string(c.role));
  }
  return {};
}

namespace {

const CharacterRecord& record_for(const AnalyzedStory& story, const std::string& id) {
  const auto* rec = story.roster ? story.roster->find(id) : nullptr;
  if (!rec) {
    throw AnalyticsError("character '" + id + "' in story '" + story.story_id + "' has no roster record");
  }
  return *rec;
}

/// Writers in first-seen order followed by ALL.
std::vector<std::string> writer_order(std::span<const AnalyzedStory> stories) {
  std::vector<std::string> order;
  for (const auto& s : stories) {
    if (std::find(order.begin(), order.end(), s.writer_id) == order.end()) order.push_back(s.writer_id);
  }
  order.emplace_back(kAllWriters);
  return order;
}

bool in_scope(std::string_view writer_filter, const std::string& writer) {
  return writer_filter == kAllWriters || writer_filter == writer;
}

double mean(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

std::vector<double> GroupSummary::weight_shares(std::string_view writer_id, std::string_view group) const {
  std::vector<double> out;
  for (const auto& s : stories) {
    if (!in_scope(writer_id, s.writer_id)) continue;
    const auto it = s.cells.find(std::string(group));
    out.push_back(it == s.cells.end() ? 0.0 : it->second.weight_share);
  }
  return out;
}

std::vector<double> GroupSummary::mean_degrees(std::string_view writer_id, std::string_view group) const {
  std::vector<double> out;
  for (const auto& s : stories) {
    if (!in_scope(writer_id, s.writer_id)) continue;
    const auto it = s.cells.find(std::string(group));
    if (it != s.cells.end() && it->second.mean_degree) out.push_back(*it->second.mean_degree);
  }
  return out;
}

GroupSummary group_summary(std::span<const AnalyzedStory> stories, GroupKey key) {
  GroupSummary summary;
  summary.key = key;
  summary.groups = group_labels(key);

  for (const auto& story : stories) {
    if (!story.graph || story.graph->nodes.empty()) continue;
    const auto features = graph_features(*story.graph);
    StoryGroups sg;
    sg.story_id = story.story_id;
    sg.writer_id = story.writer_id;
    sg.year = story.year;
    for (const auto& g : summary.groups) sg.cells[g];

    std::map<std::string, std::vector<double>> degrees;
    std::map<std::string, std::vector<double>> sentiments;
    std::map<std::string, double> weights;
    for (const auto& nf : features.nodes) {
      const auto group = group_of(record_for(story, nf.id), key);
      auto& cell = sg.cells[group];
      cell.count += 1;
      weights[group] += nf.weight;
      degrees[group].push_back(nf.degree);
      sentiments[group].push_back(nf.sentiment);
    }
    for (auto& [group, cell] : sg.cells) {
      cell.proportion = static_cast<double>(cell.count) / features.node_count;
      cell.weight_share = features.total_node_weight > 0 ? weights[group] / features.total_node_weight : 0.0;
      if (cell.count > 0) {
        cell.mean_degree = mean(degrees[group]);
        cell.mean_sentiment = mean(sentiments[group]);
      }
    }
    summary.stories.push_back(std::move(sg));
  }

  for (const auto& writer : writer_order(stories)) {
    GroupRollup roll;
    roll.writer_id = writer;
    std::map<std::string, std::vector<double>> props, shares, degs, sents;
    for (const auto& sg : summary.stories) {
      if (!in_scope(writer, sg.writer_id)) continue;
      roll.stories += 1;
      for (const auto& [group, cell] : sg.cells) {
        roll.cells[group].count += cell.count;
        props[group].push_back(cell.proportion);
        shares[group].push_back(cell.weight_share);
        if (cell.mean_degree) degs[group].push_back(*cell.mean_degree);
        if (cell.mean_sentiment) sents[group].push_back(*cell.mean_sentiment);
      }
    }
    for (const auto& g : summary.groups) {
      auto& cell = roll.cells[g];
      cell.proportion = mean(props[g]);
      cell.weight_share = mean(shares[g]);
      if (!degs[g].empty()) cell.mean_degree = mean(degs[g]);
      if (!sents[g].empty()) cell.mean_sentiment = mean(sents[g]);
    }
    summary.writers.push_back(std::move(roll));
  }
  return summary;
}

std::vector<std::pair<std::string, std::map<std::string, double>>> combined_age_gender(
    std::span<const AnalyzedStory> stories) {
  std::vector<std::pair<std::string, std::map<std::string, double>>> out;
  for (const auto& writer : writer_order(stories)) {
    std::map<std::string, std::vector<double>> per_label;
    for (const auto& story : stories) {
      if (!in_scope(writer, story.writer_id) || !story.graph) continue;
      std::map<Gender, std::map<AgeGroup, int>> counts;
      std::map<Gender, int> totals;
      for (const auto& [id, node] : story.graph->nodes) {
        const auto& rec = record_for(story, id);
        counts[rec.gender][rec.age_group] += 1;
        totals[rec.gender] += 1;
      }
      for (const auto& [gender, total] : totals) {
        for (auto age : {AgeGroup::A1, AgeGroup::A2, AgeGroup::A3}) {
          const auto label = std::string(gender_code(gender)) + "-" + std::string(to_string(age));
          per_label[label].push_back(100.0 * counts[gender][age] / total);
        }
      }
    }
    std::map<std::string, double> row;
    for (const auto& label : group_labels(GroupKey::age_gender)) {
      if (!per_label[label].empty()) row[label] = mean(per_label[label]);
    }
    out.emplace_back(writer, std::move(row));
  }
  return out;
}

std::vector<std::string> gender_pair_labels() { return {"M-M", "M-F", "F-F"}; }
std::vector<std::string> age_pair_labels() { return {"A1-A1", "A1-A2", "A1-A3", "A2-A2", "A2-A3", "A3-A3"}; }

EdgeTypeDistribution edge_type_distribution(const CharacterGraph& graph, const Roster& roster, bool by_weight) {
  EdgeTypeDistribution dist;
  dist.edges = static_cast<int>(graph.edges.size());
  if (dist.edges == 0) return dist;
  for (const auto& l : gender_pair_labels()) dist.gender[l] = 0.0;
  for (const auto& l : age_pair_labels()) dist.age[l] = 0.0;
  double total = 0.0;
  for (const auto& [key, e] : graph.edges) {
    const auto* a = roster.find(key.first);
    const auto* b = roster.find(key.second);
    if (!a || !b) {
      throw AnalyticsError("edge endpoint '" + (a ? key.second : key.first) + "' has no roster record");
    }
    const double w = by_weight ? e.omega : 1.0;
    total += w;
    // Male sorts first, A1 before A3: labels are canonical.
    auto ga = a->gender;
    auto gb = b->gender;
    if (ga == Gender::female && gb == Gender::male) std::swap(ga, gb);
    dist.gender[std::string(gender_code(ga)) + "-" + std::string(gender_code(gb))] += w;
    auto aa = a->age_group;
    auto ab = b->age_group;
    if (ab < aa) std::swap(aa, ab);
    dist.age[std::string(to_string(aa)) + "-" + std::string(to_string(ab))] += w;
  }
  if (total > 0.0) {
    for (auto& [l, v] : dist.gender) v /= total;
    for (auto& [l, v] : dist.age) v /= total;
  }
  return dist;
}

std::vector<EdgeTypeRollup> edge_type_rollup(std::span<const AnalyzedStory> stories, bool by_weight) {
  std::vector<EdgeTypeRollup> out;
  for (const auto& writer : writer_order(stories)) {
    EdgeTypeRollup roll;
    roll.writer_id = writer;
    for (const auto& story : stories) {
      if (!in_scope(writer, story.writer_id) || !story.graph || !story.roster) continue;
      const auto d = edge_type_distribution(*story.graph, *story.roster, by_weight);
      if (d.empty()) continue;
      roll.stories += 1;
      roll.mean.edges += d.edges;
      for (const auto& [l, v] : d.gender) roll.mean.gender[l] += v;
      for (const auto& [l, v] : d.age) roll.mean.age[l] += v;
    }
    if (roll.stories > 0) {
      for (auto& [l, v] : roll.mean.gender) v /= roll.stories;
      for (auto& [l, v] : roll.mean.age) v /= roll.stories;
    }
    out.push_back(std::move(roll));
  }
  return out;
}

std::vector<ProtagonistProfile> protagonist_profile(std::span<const AnalyzedStory> stories) {
  std::vector<ProtagonistEntry> all;
  for (const auto& story : stories) {
    if (!story.graph || !story.roster) continue;
    const auto features = graph_features(*story.graph);
    for (const auto& c : story.roster->characters) {
      if (c.role != Role::protagonist) continue;
      const auto* nf = features.node(c.id);
      if (!nf) continue;
      all.push_back({story.story_id, story.writer_id, c.id, c.gender, c.age_group, nf->weight, nf->degree,
                     nf->sentiment});
    }
  }
  std::vector<ProtagonistProfile> out;
  for (const auto& writer : writer_order(stories)) {
    ProtagonistProfile prof;
    prof.writer_id = writer;
    for (const auto& e : all) {
      if (in_scope(writer, e.writer_id)) prof.entries.push_back(e);
    }
    for (auto gender : {Gender::male, Gender::female}) {
      ProtagonistGenderRow row;
      row.gender = gender;
      for (const auto& e : prof.entries) {
        if (e.gender != gender) continue;
        row.count += 1;
        row.mean_weight += e.weight;
        row.mean_degree += e.degree;
        row.mean_sentiment += e.sentiment;
      }
      if (row.count == 0) continue;
      row.share = static_cast<double>(row.count) / static_cast<double>(prof.entries.size());
      row.mean_weight /= row.count;
      row.mean_degree /= row.count;
      row.mean_sentiment /= row.count;
      prof.by_gender.push_back(row);
    }
    out.push_back(std::move(prof));
  }
  return out;
}

std::vector<TimeSeriesPoint> time_series(std::span<const AnalyzedStory> stories, SeriesMetric metric,
                                         std::vector<std::string>* warnings) {
  std::vector<TimeSeriesPoint> out;
  for (const auto& story : stories) {
    if (!story.graph || story.graph->nodes.empty()) continue;
    if (!story.year) {
      if (warnings) warnings->push_back("story '" + story.story_id + "' has no publication year; skipped");
      continue;
    }
    TimeSeriesPoint p;
    p.year = *story.year;
    p.story_id = story.story_id;
    p.writer_id = story.writer_id;
    if (metric == SeriesMetric::age_proportions) {
      for (const auto& l : group_labels(GroupKey::age)) p.values[l] = 0.0;
      for (const auto& [id, node] : story.graph->nodes) {
        p.values[std::string(to_string(record_for(story, id).age_group))] += 1.0;
      }
      for (auto& [l, v] : p.values) v /= static_cast<double>(story.graph->nodes.size());
    } else {
      double family = 0.0;
      double total = 0.0;
      for (const auto& [id, node] : story.graph->nodes) {
        total += node.omega;
        if (record_for(story, id).family_flagged()) family += node.omega;
      }
      p.values["family_weight"] = total > 0.0 ? family / total : 0.0;
    }
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.year != b.year ? a.year < b.year : a.story_id < b.story_id;
  });
  return out;
}

std::vector<GenreStructurePoint> genre_structure(std::span<const AnalyzedStory> stories) {
  std::vector<GenreStructurePoint> out;
  for (const auto& story : stories) {
    if (!story.graph) continue;
    const auto f = graph_features(*story.graph);
    for (auto genre : story.genres) {
      out.push_back({genre, story.story_id, story.writer_id, f.node_count, f.edge_count, f.density});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.genre < b.genre; });
  return out;
}

}  // namespace chargraph
