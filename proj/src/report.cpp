#include "chargraph/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "chargraph/serialize.hpp"

namespace chargraph {

std::vector<std::pair<std::string, std::string>> tested_pairs(GroupKey key) {
  switch (key) {
    case GroupKey::gender: return {{"M", "F"}};
    case GroupKey::age: return {{"A1", "A2"}, {"A1", "A3"}, {"A2", "A3"}};
    case GroupKey::age_gender: return {{"M-A1", "F-A1"}, {"M-A2", "F-A2"}, {"M-A3", "F-A3"}};
    case GroupKey::family: return {};
    case GroupKey::role: return {{"protagonist", "regular"}};
  }
  return {};
}

TestCell run_test(std::span<const double> a, std::span<const double> b, const stats::TTestOptions& options) {
  TestCell cell;
  try {
    cell.result = stats::t_test(a, b, options);
  } catch (const stats::StatsError& e) {
    cell.reason = e.kind() == stats::StatsErrorKind::sample_too_small ? "n<2" : "degenerate";
  }
  return cell;
}

namespace {

std::string num(double v) { return format_number(v); }
std::string opt_num(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

void append_test_columns(std::string& row, const TestCell& cell) {
  if (cell.result) {
    const auto& r = *cell.result;
    row += fmt::format(",{},{},{},{}", num(r.t), num(r.df), num(r.p), r.significant ? 1 : 0);
  } else {
    row += ",NA,NA,NA,NA";
  }
}

std::string underline_if(const std::string& text, bool significant) {
  return significant ? "<u>" + text + "</u>" : text;
}

std::string writer_label(const CorpusManifest& manifest, const std::string& id) {
  if (id == kAllWriters) return std::string(kAllWriters);
  const auto* w = manifest.writer(id);
  return w ? w->abbreviation : id;
}

struct MdTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::string out = "|";
    for (const auto& h : header) out += " " + h + " |";
    out += "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& r : rows) {
      out += "|";
      for (const auto& c : r) out += " " + c + " |";
      out += "\n";
    }
    return out;
  }
};

struct GroupTables {
  std::string csv;
  std::string markdown;
};

GroupTables group_tables(const CorpusManifest& manifest, const GroupSummary& summary,
                         const stats::TTestOptions& topts) {
  const auto pairs = tested_pairs(summary.key);
  GroupTables out;
  std::string& csv = out.csv;
  csv += "writer,stories";
  for (const auto& g : summary.groups) {
    csv += fmt::format(",prop_{0},weight_{0},degree_{0},sentiment_{0}", g);
  }
  for (const auto& [a, b] : pairs) {
    for (const char* metric : {"weight", "degree"}) {
      csv += fmt::format(",t_{0}_{1}_{2},df_{0}_{1}_{2},p_{0}_{1}_{2},sig_{0}_{1}_{2}", metric, a, b);
    }
  }
  csv += "\n";

  MdTable md;
  md.header = {"Writer"};
  for (const auto& g : summary.groups) md.header.push_back(g + " prop");
  for (const auto& g : summary.groups) md.header.push_back(g + " weight");
  for (const auto& g : summary.groups) md.header.push_back(g + " degree");

  for (const auto& rollup : summary.writers) {
    std::string row = fmt::format("{},{}", rollup.writer_id, rollup.stories);
    std::vector<std::string> md_row{writer_label(manifest, rollup.writer_id)};
    std::map<std::string, bool> weight_sig;
    std::map<std::string, bool> degree_sig;
    std::vector<TestCell> tests;
    for (const auto& [a, b] : pairs) {
      const auto wa = summary.weight_shares(rollup.writer_id, a);
      const auto wb = summary.weight_shares(rollup.writer_id, b);
      const auto da = summary.mean_degrees(rollup.writer_id, a);
      const auto db = summary.mean_degrees(rollup.writer_id, b);
      tests.push_back(run_test(wa, wb, topts));
      tests.push_back(run_test(da, db, topts));
      const bool ws = tests[tests.size() - 2].result && tests[tests.size() - 2].result->significant;
      const bool ds = tests.back().result && tests.back().result->significant;
      weight_sig[a] = weight_sig[a] || ws;
      weight_sig[b] = weight_sig[b] || ws;
      degree_sig[a] = degree_sig[a] || ds;
      degree_sig[b] = degree_sig[b] || ds;
    }
    std::vector<std::string> props;
    std::vector<std::string> weights;
    std::vector<std::string> degrees;
    for (const auto& g : summary.groups) {
      const auto& cell = rollup.cells.at(g);
      row += fmt::format(",{},{},{},{}", num(cell.proportion), num(cell.weight_share), opt_num(cell.mean_degree),
                         opt_num(cell.mean_sentiment));
      props.push_back(num(cell.proportion));
      weights.push_back(underline_if(num(cell.weight_share), weight_sig[g]));
      degrees.push_back(underline_if(opt_num(cell.mean_degree), degree_sig[g]));
    }
    for (const auto& t : tests) append_test_columns(row, t);
    csv += row + "\n";
    md_row.insert(md_row.end(), props.begin(), props.end());
    md_row.insert(md_row.end(), weights.begin(), weights.end());
    md_row.insert(md_row.end(), degrees.begin(), degrees.end());
    md.rows.push_back(std::move(md_row));
  }
  out.markdown = md.render();
  return out;
}

std::string story_groups_csv(const GroupSummary& summary) {
  std::string csv = "story,writer,year";
  for (const auto& g : summary.groups) csv += fmt::format(",count_{0},prop_{0},weight_{0},degree_{0}", g);
  csv += "\n";
  for (const auto& s : summary.stories) {
    csv += fmt::format("{},{},{}", s.story_id, s.writer_id, s.year ? std::to_string(*s.year) : "NA");
    for (const auto& g : summary.groups) {
      const auto& c = s.cells.at(g);
      csv += fmt::format(",{},{},{},{}", c.count, num(c.proportion), num(c.weight_share), opt_num(c.mean_degree));
    }
    csv += "\n";
  }
  return csv;
}

}  // namespace

std::map<std::string, std::string> build_report(const CorpusManifest& manifest,
                                                std::span<const AnalyzedStory> stories,
                                                const ReportOptions& options) {
  if (stories.empty()) throw AnalyticsError("report needs at least one story");
  std::map<std::string, std::string> files;
  std::string md = "# Character network report\n\n";
  md += fmt::format("Stories: {}. Test: {} t-test, {}, alpha {}. Underlined values differ significantly "
                    "from their paired group.\n\n",
                    stories.size(), stats::to_string(options.ttest.variant), stats::to_string(options.ttest.tail),
                    num(options.ttest.alpha));

  // Per-story structure and the genre scatter.
  std::string stories_csv =
      "story,writer,year,genres,chapters,sentences,nodes,edges,density,total_node_weight,total_edge_weight,"
      "mean_degree,mean_strength\n";
  struct Structure {
    int stories = 0;
    double nodes = 0, edges = 0, density = 0;
  };
  std::map<std::string, Structure> by_writer;
  std::vector<std::string> writer_ids;
  for (const auto& s : stories) {
    const auto f = graph_features(*s.graph);
    std::string genres;
    for (const auto g : s.genres) genres += (genres.empty() ? "" : ";") + std::string(to_string(g));
    stories_csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", s.story_id, s.writer_id,
                               s.year ? std::to_string(*s.year) : "NA", genres.empty() ? "-" : genres,
                               s.graph->chapter_count, s.graph->sentences, f.node_count, f.edge_count,
                               num(f.density), num(f.total_node_weight), num(f.total_edge_weight),
                               num(f.mean_degree), num(f.mean_strength));
    if (!by_writer.count(s.writer_id)) writer_ids.push_back(s.writer_id);
    for (const auto& key : {s.writer_id, std::string(kAllWriters)}) {
      auto& w = by_writer[key];
      w.stories += 1;
      w.nodes += f.node_count;
      w.edges += f.edge_count;
      w.density += f.density;
    }
  }
  writer_ids.emplace_back(kAllWriters);
  files["stories.csv"] = stories_csv;

  std::string structure = "writer,stories,nodes,edges,density\n";
  MdTable structure_md{{"Writer", "Stories", "Nodes", "Edges", "Density"}, {}};
  for (const auto& id : writer_ids) {
    const auto& w = by_writer.at(id);
    const double n = w.stories;
    structure += fmt::format("{},{},{},{},{}\n", id, w.stories, num(w.nodes / n), num(w.edges / n),
                             num(w.density / n));
    structure_md.rows.push_back({writer_label(manifest, id), std::to_string(w.stories), num(w.nodes / n),
                                 num(w.edges / n), num(w.density / n)});
  }
  files["structure.csv"] = structure;

  std::string scatter = "genre,story,writer,nodes,edges,density\n";
  for (const auto& p : genre_structure(stories)) {
    scatter += fmt::format("{},{},{},{},{},{}\n", to_string(p.genre), p.story_id, p.writer_id, p.nodes, p.edges,
                           num(p.density));
  }
  files["genre_scatter.csv"] = scatter;

  // Group summaries.
  for (const auto key : options.groups) {
    const auto summary = group_summary(stories, key);
    const auto tables = group_tables(manifest, summary, options.ttest);
    files[fmt::format("group_{}.csv", to_string(key))] = tables.csv;
    files[fmt::format("group_{}_stories.csv", to_string(key))] = story_groups_csv(summary);
    md += fmt::format("## Groups by {}\n\n{}\n", to_string(key), tables.markdown);
  }

  // Combined age and gender distribution.
  {
    std::string csv = "writer";
    const auto labels = group_labels(GroupKey::age_gender);
    for (const auto& l : labels) csv += "," + l;
    csv += "\n";
    MdTable t;
    t.header = {"Writer"};
    t.header.insert(t.header.end(), labels.begin(), labels.end());
    for (const auto& [writer, values] : combined_age_gender(stories)) {
      csv += writer;
      std::vector<std::string> row{writer_label(manifest, writer)};
      for (const auto& l : labels) {
        const auto it = values.find(l);
        const auto v = it == values.end() ? std::string("0") : num(it->second);
        csv += "," + v;
        row.push_back(v);
      }
      csv += "\n";
      t.rows.push_back(std::move(row));
    }
    files["age_gender_combined.csv"] = csv;
    md += "## Age within gender (percent)\n\n" + t.render() + "\n";
  }

  // Edge types.
  {
    const auto gender_labels = gender_pair_labels();
    const auto age_labels = age_pair_labels();
    std::string csv = "writer,stories";
    for (const auto& l : gender_labels) csv += "," + l;
    for (const auto& l : age_labels) csv += "," + l;
    csv += "\n";
    MdTable t;
    t.header = {"Writer", "Stories"};
    t.header.insert(t.header.end(), gender_labels.begin(), gender_labels.end());
    t.header.insert(t.header.end(), age_labels.begin(), age_labels.end());
    for (const auto& r : edge_type_rollup(stories, options.edge_types_by_weight)) {
      std::vector<std::string> row{writer_label(manifest, r.writer_id), std::to_string(r.stories)};
      csv += fmt::format("{},{}", r.writer_id, r.stories);
      auto emit = [&](const std::map<std::string, double>& m, const std::string& l) {
        const auto it = m.find(l);
        const auto v = r.mean.empty() || it == m.end() ? std::string("NA") : num(it->second);
        csv += "," + v;
        row.push_back(v);
      };
      for (const auto& l : gender_labels) emit(r.mean.gender, l);
      for (const auto& l : age_labels) emit(r.mean.age, l);
      csv += "\n";
      t.rows.push_back(std::move(row));
    }
    files["edge_types.csv"] = csv;
    md += fmt::format("## Edge types ({})\n\n{}\n", options.edge_types_by_weight ? "by weight" : "by count",
                      t.render());
  }

  // Protagonists.
  {
    std::string csv = "writer,gender,count,share,weight,degree,sentiment\n";
    std::string detail = "story,writer,character,gender,age_group,weight,degree,sentiment\n";
    std::string tests_csv = "writer,metric,t,df,p,significant\n";
    MdTable t{{"Writer", "Gender", "Count", "Share", "Weight", "Degree", "Sentiment"}, {}};
    for (const auto& profile : protagonist_profile(stories)) {
      std::map<std::string, std::array<std::vector<double>, 2>> samples;  // metric -> {M, F}
      for (const auto& e : profile.entries) {
        const auto slot = e.gender == Gender::male ? 0 : 1;
        samples["weight"][slot].push_back(e.weight);
        samples["degree"][slot].push_back(e.degree);
        samples["sentiment"][slot].push_back(e.sentiment);
        if (profile.writer_id == kAllWriters) {
          detail += fmt::format("{},{},{},{},{},{},{},{}\n", e.story_id, e.writer_id, e.character_id,
                                gender_code(e.gender), to_string(e.age_group), num(e.weight), e.degree,
                                num(e.sentiment));
        }
      }
      std::map<std::string, bool> sig;
      for (const char* metric : {"weight", "degree", "sentiment"}) {
        const auto& pair = samples[metric];
        const auto cell = run_test(pair[0], pair[1], options.ttest);
        std::string row = fmt::format("{},{}", profile.writer_id, metric);
        append_test_columns(row, cell);
        tests_csv += row + "\n";
        sig[metric] = cell.result && cell.result->significant;
      }
      for (const auto& g : profile.by_gender) {
        csv += fmt::format("{},{},{},{},{},{},{}\n", profile.writer_id, gender_code(g.gender), g.count,
                           num(g.share), num(g.mean_weight), num(g.mean_degree), num(g.mean_sentiment));
        t.rows.push_back({writer_label(manifest, profile.writer_id), std::string(gender_code(g.gender)),
                          std::to_string(g.count), num(g.share), underline_if(num(g.mean_weight), sig["weight"]),
                          underline_if(num(g.mean_degree), sig["degree"]),
                          underline_if(num(g.mean_sentiment), sig["sentiment"])});
      }
    }
    files["protagonists.csv"] = csv;
    files["protagonists_detail.csv"] = detail;
    files["protagonist_tests.csv"] = tests_csv;
    md += "## Protagonists\n\n" + t.render() + "\n";
  }

  md += "## Graph structure\n\n" + structure_md.render() + "\n";

  // Time series (age distribution and family weight over publication year).
  {
    std::vector<std::string> warnings;
    std::string age = "year,story,writer,A1,A2,A3\n";
    for (const auto& p : time_series(stories, SeriesMetric::age_proportions, &warnings)) {
      age += fmt::format("{},{},{},{},{},{}\n", p.year, p.story_id, p.writer_id, num(p.values.at("A1")),
                         num(p.values.at("A2")), num(p.values.at("A3")));
    }
    std::string family = "year,story,writer,family_weight\n";
    for (const auto& p : time_series(stories, SeriesMetric::family_weight)) {
      family += fmt::format("{},{},{},{}\n", p.year, p.story_id, p.writer_id, num(p.values.at("family_weight")));
    }
    files["series_age.csv"] = age;
    files["series_family.csv"] = family;
    if (!warnings.empty()) {
      md += "## Warnings\n\n";
      for (const auto& w : warnings) md += "- " + w + "\n";
      md += "\n";
    }
  }

  files["report.md"] = md;
  return files;
}

}  // namespace chargraph
