// chargraph command-line front end.
//
//   chargraph extract --manifest corpus.yaml --out out/ [--per-chapter]
//   chargraph report  --manifest corpus.yaml --out out/ [--group gender]
//   chargraph topics  --manifest corpus.yaml --out out/ --seed 7
//   chargraph ttest   --csv a.csv --a weight_M --b weight_F
//   chargraph export  --in story.graph.txt --to dot --out story.dot
//
// Exit codes: 0 success, 1 validation failure, 2 runtime failure.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chargraph/analytics.hpp"
#include "chargraph/corpus.hpp"
#include "chargraph/graph.hpp"
#include "chargraph/pipeline.hpp"
#include "chargraph/report.hpp"
#include "chargraph/segmentation.hpp"
#include "chargraph/sentiment.hpp"
#include "chargraph/serialize.hpp"
#include "chargraph/stats.hpp"
#include "chargraph/topics.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace chargraph;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { quiet, warn, info };
LogLevel g_log = LogLevel::warn;

template <typename... Args>
void log_info(fmt::format_string<Args...> f, Args&&... args) {
  if (g_log >= LogLevel::info) fmt::print(stderr, "{}\n", fmt::format(f, std::forward<Args>(args)...));
}

template <typename... Args>
void log_warn(fmt::format_string<Args...> f, Args&&... args) {
  if (g_log >= LogLevel::warn) fmt::print(stderr, "warning: {}\n", fmt::format(f, std::forward<Args>(args)...));
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunOptions {
  std::string manifest;
  std::string out;
  std::string log_level = "warn";

  std::optional<int> delta_a;
  std::optional<int> delta_b;
  std::optional<int> delta_c;
  bool strict_min = false;
  std::vector<std::string> story_deltas;  // story=A,B,C

  double alpha = 0.1;
  double beta = 0.1;
  std::optional<double> gamma;
  std::string lprime = "exactly_one";

  std::string lexicon;
  std::string negations;
  bool use_negation = false;
  std::string scores_dir;
  double neutral_band = 0.05;

  bool topics = false;
  int topic_count = 20;
  int iterations = 1000;
  int burn_in = 500;
  std::optional<double> doc_topic_prior;
  double topic_word_prior = 0.01;
  std::uint64_t seed = 20240;
  std::string stopwords;
  std::string common_verbs;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool with_topic_switch) {
  cmd->add_option("--manifest", o.manifest, "Corpus manifest (YAML)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--log-level", o.log_level, "quiet, warn or info")
      ->check(CLI::IsMember({"quiet", "warn", "info"}));

  cmd->add_option("--delta-a", o.delta_a, "Intra-character gap threshold (disables automatic thresholds)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--delta-b", o.delta_b, "Inter-character padding")->check(CLI::NonNegativeNumber);
  cmd->add_option("--delta-c", o.delta_c, "Minimum appearances per segment")->check(CLI::PositiveNumber);
  cmd->add_flag("--strict-min-appearance", o.strict_min, "Require more than delta-c appearances");
  cmd->add_option("--story-deltas", o.story_deltas, "Per-story thresholds, story=A,B,C (repeatable)");

  cmd->add_option("--alpha", o.alpha, "Segment ordinal scaling")->check(CLI::NonNegativeNumber);
  cmd->add_option("--beta", o.beta, "Addressed-sentence bonus")->check(CLI::NonNegativeNumber);
  cmd->add_option("--gamma", o.gamma, "Joint-presence bonus (default 2*beta)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--edge-lprime-mode", o.lprime, "exactly_one or either")
      ->check(CLI::IsMember({"exactly_one", "either"}));

  cmd->add_option("--lexicon", o.lexicon, "Sentiment lexicon, token<TAB>polarity")->check(CLI::ExistingFile);
  cmd->add_option("--negations", o.negations, "Negation tokens, one per line")->check(CLI::ExistingFile);
  cmd->add_flag("--use-negation", o.use_negation, "Flip polarity after a negation token");
  cmd->add_option("--scores-dir", o.scores_dir, "External sentence scores, <story>.tsv per story")
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--neutral-band", o.neutral_band, "Neutral sentiment half-width")->check(CLI::NonNegativeNumber);

  if (with_topic_switch) cmd->add_flag("--topics", o.topics, "Fit topic models and attach topic vectors");
  cmd->add_option("--topic-count", o.topic_count, "Topics per writer model")->check(CLI::PositiveNumber);
  cmd->add_option("--iterations", o.iterations, "Gibbs sweeps")->check(CLI::PositiveNumber);
  cmd->add_option("--burn-in", o.burn_in, "Sweeps discarded before averaging")->check(CLI::NonNegativeNumber);
  cmd->add_option("--doc-topic-prior", o.doc_topic_prior, "Document-topic prior (default 50/topics)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--topic-word-prior", o.topic_word_prior, "Topic-word prior")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Sampler seed");
  cmd->add_option("--stopwords", o.stopwords, "Stopword list")->check(CLI::ExistingFile);
  cmd->add_option("--common-verbs", o.common_verbs, "Common verb list")->check(CLI::ExistingFile);
}

SegmentationParams base_segmentation(const RunOptions& o) {
  SegmentationParams p;
  p.strict_min_appearance = o.strict_min;
  if (o.delta_a || o.delta_b || o.delta_c) {
    p.automatic = false;
    p.delta_a = o.delta_a.value_or(p.delta_a);
    p.delta_b = o.delta_b.value_or(p.delta_b);
    p.delta_c = o.delta_c.value_or(p.delta_c);
  }
  p.validate();
  return p;
}

std::map<std::string, SegmentationParams> story_overrides(const RunOptions& o) {
  std::map<std::string, SegmentationParams> out;
  for (const auto& spec : o.story_deltas) {
    const auto eq = spec.find('=');
    SegmentationParams p;
    p.automatic = false;
    p.strict_min_appearance = o.strict_min;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(eq == std::string::npos ? std::string() : spec.substr(eq + 1));
    if (eq == std::string::npos || !(in >> p.delta_a >> c1 >> p.delta_b >> c2 >> p.delta_c) || c1 != ',' ||
        c2 != ',' || !in.eof()) {
      throw ValidationError("--story-deltas expects story=A,B,C, got '" + spec + "'");
    }
    p.validate();
    out[spec.substr(0, eq)] = p;
  }
  return out;
}

WeightParams weight_params(const RunOptions& o) {
  WeightParams w;
  w.alpha = o.alpha;
  w.beta = o.beta;
  w.gamma = o.gamma;
  w.lprime_mode = *parse_lprime_mode(o.lprime);
  w.validate();
  return w;
}

TopicConfig topic_config(const RunOptions& o) {
  TopicConfig c;
  c.topics = o.topic_count;
  c.iterations = o.iterations;
  c.burn_in = o.burn_in;
  c.doc_topic_prior = o.doc_topic_prior;
  c.topic_word_prior = o.topic_word_prior;
  c.seed = o.seed;
  if (!o.stopwords.empty()) c.stopwords = load_word_list(o.stopwords, c.case_insensitive);
  if (!o.common_verbs.empty()) c.common_verbs = load_word_list(o.common_verbs, c.case_insensitive);
  c.validate();
  return c;
}

struct Extraction {
  Corpus corpus;
  std::vector<std::unique_ptr<SentenceScorer>> scorers;
  std::vector<WriterTopics> topic_models;
  std::vector<StoryResult> results;
};

Extraction run_extraction(const RunOptions& o, bool with_topics) {
  Extraction ex;
  log_info("loading {}", o.manifest);
  ex.corpus = load_corpus(o.manifest);

  const auto base = base_segmentation(o);
  const auto overrides = story_overrides(o);
  for (const auto& [id, p] : overrides) {
    const bool known = std::any_of(ex.corpus.stories.begin(), ex.corpus.stories.end(),
                                   [&](const Story& s) { return s.entry.id == id; });
    if (!known) throw ValidationError("--story-deltas names unknown story '" + id + "'");
  }
  const auto weights = weight_params(o);
  if (!o.lexicon.empty() && !o.scores_dir.empty()) {
    throw ValidationError("--lexicon and --scores-dir are mutually exclusive");
  }

  std::vector<ExtractionOptions> per_story;
  std::shared_ptr<LexiconScorer> lexicon;
  if (!o.lexicon.empty()) {
    auto lex = SentimentLexicon::load(o.lexicon);
    if (!o.negations.empty()) lex.load_negations(o.negations);
    lexicon = std::make_shared<LexiconScorer>(std::move(lex), o.use_negation);
  }
  for (const auto& story : ex.corpus.stories) {
    ExtractionOptions eo;
    const auto it = overrides.find(story.entry.id);
    eo.segmentation = it == overrides.end() ? base : it->second;
    eo.weights = weights;
    if (lexicon) {
      eo.scorer = lexicon.get();
    } else if (!o.scores_dir.empty()) {
      const auto path = fs::path(o.scores_dir) / (story.entry.id + ".tsv");
      if (!fs::exists(path)) throw ValidationError("missing score file '" + path.string() + "'");
      ex.scorers.push_back(std::make_unique<TableScorer>(TableScorer::load(path)));
      eo.scorer = ex.scorers.back().get();
    }
    per_story.push_back(eo);
  }
  if (lexicon) ex.scorers.push_back(std::make_unique<LexiconScorer>(*lexicon));
  if (!lexicon && o.scores_dir.empty()) log_warn("no sentiment scorer given; sentiment attributes are 0");

  std::vector<std::vector<ChapterTopics>> topics;
  if (with_topics) {
    log_info("fitting topic models");
    ex.topic_models = fit_writer_topics(ex.corpus, topic_config(o));
    topics = corpus_chapter_topics(ex.corpus, ex.topic_models);
  }
  log_info("extracting {} stories", ex.corpus.stories.size());
  ex.results = extract_corpus(ex.corpus, per_story, topics);
  return ex;
}

json run_config_json(const RunOptions& o) {
  json j;
  j["manifest"] = o.manifest;
  j["out"] = o.out;
  json seg;
  seg["automatic"] = !(o.delta_a || o.delta_b || o.delta_c);
  if (o.delta_a) seg["delta_a"] = *o.delta_a;
  if (o.delta_b) seg["delta_b"] = *o.delta_b;
  if (o.delta_c) seg["delta_c"] = *o.delta_c;
  seg["strict_min_appearance"] = o.strict_min;
  seg["story_deltas"] = o.story_deltas;
  j["segmentation"] = seg;
  j["weights"] = {{"alpha", o.alpha},
                  {"beta", o.beta},
                  {"gamma", o.gamma.value_or(2.0 * o.beta)},
                  {"edge_lprime_mode", o.lprime}};
  j["sentiment"] = {{"lexicon", o.lexicon},
                    {"negations", o.negations},
                    {"use_negation", o.use_negation},
                    {"scores_dir", o.scores_dir},
                    {"neutral_band", o.neutral_band}};
  j["topics"] = {{"enabled", o.topics},
                 {"topic_count", o.topic_count},
                 {"iterations", o.iterations},
                 {"burn_in", o.burn_in},
                 {"doc_topic_prior", o.doc_topic_prior.value_or(50.0 / o.topic_count)},
                 {"topic_word_prior", o.topic_word_prior},
                 {"seed", o.seed},
                 {"stopwords", o.stopwords},
                 {"common_verbs", o.common_verbs}};
  return j;
}

json overrides_json(const CLI::App* cmd) {
  json j = json::object();
  for (const auto* opt : cmd->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto& r = opt->results();
    j[opt->get_name()] = r.size() == 1 ? json(r.front()) : json(r);
  }
  return j;
}

json chapter_provenance(const Extraction& ex) {
  json stories = json::array();
  for (const auto& r : ex.results) {
    json chapters = json::array();
    for (const auto& p : r.graph.provenance) {
      chapters.push_back({{"chapter", p.chapter},
                          {"sentences", p.length},
                          {"delta_a", p.params.delta_a},
                          {"delta_b", p.params.delta_b},
                          {"delta_c", p.params.delta_c},
                          {"automatic", p.params.automatic},
                          {"strict_min_appearance", p.params.strict_min_appearance}});
    }
    stories.push_back({{"story", r.story_id}, {"chapters", chapters}});
  }
  return stories;
}

void write_provenance(const fs::path& dir, const std::string& command, const RunOptions& o, const CLI::App* cmd,
                      const Extraction& ex) {
  json j;
  j["tool"] = "chargraph";
  j["version"] = CHARGRAPH_VERSION;
  j["command"] = command;
  j["config"] = run_config_json(o);
  j["overrides"] = overrides_json(cmd);
  j["seed"] = o.seed;
  j["stories"] = chapter_provenance(ex);
  write_file(dir / "provenance.json", j.dump(2) + "\n");
}

std::vector<std::string> parse_formats(const std::vector<std::string>& formats) {
  std::vector<std::string> out;
  for (const auto& f : formats) {
    if (f == "all") return {"canonical", "graphml", "dot"};
    out.push_back(f);
  }
  return out;
}

void write_graph(const fs::path& stem, const GraphDocument& doc, const std::vector<std::string>& formats) {
  for (const auto& f : formats) {
    if (f == "canonical") write_file(stem.string() + ".graph.txt", to_canonical(doc));
    if (f == "graphml") write_file(stem.string() + ".graphml", to_graphml(doc));
    if (f == "dot") write_file(stem.string() + ".dot", to_dot(doc));
  }
}

const Roster* roster_of(const Corpus& corpus, const std::string& story_id) {
  for (const auto& s : corpus.stories) {
    if (s.entry.id == story_id) return &s.roster;
  }
  return nullptr;
}

int cmd_extract(const RunOptions& o, const CLI::App* cmd, bool per_chapter, const std::vector<std::string>& formats) {
  const auto ex = run_extraction(o, o.topics);
  const fs::path out = o.out;
  const auto fmts = parse_formats(formats);
  for (const auto& r : ex.results) {
    const auto* roster = roster_of(ex.corpus, r.story_id);
    write_graph(out / "graphs" / r.story_id, make_document(r.graph, roster, o.neutral_band), fmts);
    if (per_chapter) {
      for (const auto& ch : r.chapters) {
        write_graph(out / "graphs" / fmt::format("{}.ch{}", r.story_id, ch.graph.chapter),
                    make_document(ch.graph, roster, o.neutral_band), fmts);
      }
    }
    log_info("{}: {} nodes, {} edges", r.story_id, r.graph.nodes.size(), r.graph.edges.size());
  }
  write_provenance(out, "extract", o, cmd, ex);
  return 0;
}

std::vector<AnalyzedStory> analyzed(const Extraction& ex) {
  std::vector<AnalyzedStory> out;
  for (std::size_t i = 0; i < ex.results.size(); ++i) {
    const auto& s = ex.corpus.stories[i];
    out.push_back({s.entry.id, s.entry.writer_id, s.entry.year, s.entry.genres, &s.roster, &ex.results[i].graph});
  }
  return out;
}

struct ReportFlags {
  std::vector<std::string> groups;
  std::string variant = "pooled";
  std::string tail = "two-sided";
  double sig_alpha = 0.05;
  bool by_weight = false;
};

int cmd_report(const RunOptions& o, const CLI::App* cmd, const ReportFlags& f) {
  ReportOptions ro;
  ro.ttest.variant = *stats::parse_variant(f.variant);
  ro.ttest.tail = *stats::parse_tail(f.tail);
  ro.ttest.alpha = f.sig_alpha;
  ro.edge_types_by_weight = f.by_weight;
  if (!f.groups.empty()) {
    ro.groups.clear();
    for (const auto& g : f.groups) {
      const auto key = parse_group_key(g);
      if (!key) throw ValidationError("unknown group key '" + g + "'");
      ro.groups.push_back(*key);
    }
  }
  const auto ex = run_extraction(o, o.topics);
  if (ex.corpus.stories.empty()) throw ValidationError("corpus has no stories");
  const auto stories = analyzed(ex);
  const fs::path out = o.out;
  for (const auto& [name, content] : build_report(ex.corpus.manifest, stories, ro)) {
    write_file(out / "report" / name, content);
  }
  write_provenance(out, "report", o, cmd, ex);
  return 0;
}

std::string model_file(const WriterTopics& wt, const std::map<int, std::string>& labels) {
  const auto& m = wt.model;
  std::string s = fmt::format("chargraph-topics 1\nwriter {}\ntopics {}\nvocabulary {}\ndocuments {}\n",
                              wt.writer_id, m.topics, m.vocabulary.size(), m.doc_topic.size());
  for (int k = 0; k < m.topics; ++k) {
    const auto it = labels.find(k);
    s += fmt::format("topic {} label={}", k, it == labels.end() ? "-" : it->second);
    for (auto w : m.top_words(k, 10)) {
      s += fmt::format(" {}:{}", m.vocabulary[w], format_number(m.topic_word[static_cast<std::size_t>(k)][w]));
    }
    s += "\n";
  }
  for (std::size_t d = 0; d < m.doc_topic.size(); ++d) {
    s += fmt::format("doc {} {}", wt.documents[d].story_id, wt.documents[d].chapter);
    for (double p : m.doc_topic[d]) s += " " + format_number(p);
    s += "\n";
  }
  return s;
}

int cmd_topics(const RunOptions& o, const CLI::App* cmd, const std::string& labels_path) {
  const auto labels = labels_path.empty() ? std::map<int, std::string>{} : load_topic_labels(labels_path);
  const auto ex = run_extraction(o, true);
  const fs::path out = o.out;
  for (const auto& wt : ex.topic_models) write_file(out / "topics" / (wt.writer_id + ".model.txt"), model_file(wt, labels));
  std::string csv = "story,writer,character";
  for (int k = 0; k < o.topic_count; ++k) csv += fmt::format(",topic_{}", k);
  csv += "\n";
  for (std::size_t i = 0; i < ex.results.size(); ++i) {
    const auto& r = ex.results[i];
    for (const auto& [id, node] : r.graph.nodes) {
      csv += fmt::format("{},{},{}", r.story_id, ex.corpus.stories[i].entry.writer_id, id);
      for (double p : node.topics) csv += "," + format_number(p);
      csv += "\n";
    }
  }
  write_file(out / "topics" / "character_topics.csv", csv);
  write_provenance(out, "topics", o, cmd, ex);
  return 0;
}

std::vector<double> csv_column(const fs::path& path, const std::string& column) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("'" + path.string() + "' is empty");
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  const auto header = split(line);
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) throw ValidationError("column '" + column + "' not in '" + path.string() + "'");
  const auto idx = static_cast<std::size_t>(it - header.begin());
  std::vector<double> values;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (idx >= cells.size() || cells[idx].empty() || cells[idx] == "NA") continue;
    try {
      values.push_back(std::stod(cells[idx]));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("{}:{}: '{}' is not a number", path.string(), row, cells[idx]));
    }
  }
  return values;
}

int cmd_ttest(const std::string& csv_a, const std::string& csv_b, const std::string& col_a, const std::string& col_b,
              const stats::TTestOptions& opts) {
  const auto a = csv_column(csv_a, col_a);
  const auto b = csv_column(csv_b.empty() ? csv_a : csv_b, col_b);
  const auto r = stats::t_test(a, b, opts);
  fmt::print("variant {}\ntail {}\nn_a {}\nn_b {}\nmean_a {}\nmean_b {}\nt {}\ndf {}\np {}\nsignificant {}\n",
             stats::to_string(r.variant), stats::to_string(r.tail), r.n_a, r.n_b, format_number(r.mean_a),
             format_number(r.mean_b), format_number(r.t), format_number(r.df), format_number(r.p),
             r.significant ? "yes" : "no");
  return 0;
}

int cmd_export(const std::string& in, const std::string& to, const std::string& out, std::optional<double> band) {
  GraphDocument doc;
  try {
    doc = parse_canonical(read_file(in));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw ValidationError(in + ": " + e.what());
  }
  if (band) doc.neutral_band = *band;
  std::string content;
  if (to == "canonical") content = to_canonical(doc);
  if (to == "graphml") content = to_graphml(doc);
  if (to == "dot") content = to_dot(doc);
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_file(out, content);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character interaction graphs from chaptered fiction"};
  app.set_version_flag("--version", std::string(CHARGRAPH_VERSION));
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");

  RunOptions extract_opts;
  bool per_chapter = false;
  std::vector<std::string> formats{"all"};
  auto* extract = app.add_subcommand("extract", "Build chapter and story graphs");
  add_run_options(extract, extract_opts, true);
  extract->add_flag("--per-chapter", per_chapter, "Also write one graph per chapter");
  extract->add_option("--format", formats, "canonical, graphml, dot or all (repeatable)")
      ->check(CLI::IsMember({"canonical", "graphml", "dot", "all"}));

  RunOptions report_opts;
  ReportFlags report_flags;
  auto* report = app.add_subcommand("report", "Group tables, profiles and series with t-tests");
  add_run_options(report, report_opts, true);
  report->add_option("--group", report_flags.groups, "gender, age, age_gender, family or role (repeatable)");
  report->add_option("--variant", report_flags.variant, "pooled or welch")->check(CLI::IsMember({"pooled", "welch"}));
  report->add_option("--tail", report_flags.tail, "two-sided, less or greater")
      ->check(CLI::IsMember({"two-sided", "less", "greater"}));
  report->add_option("--sig-alpha", report_flags.sig_alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  report->add_flag("--by-weight", report_flags.by_weight, "Edge-type shares by weight instead of count");

  RunOptions topic_opts;
  std::string labels;
  auto* topics = app.add_subcommand("topics", "Fit per-writer topic models and character topic vectors");
  add_run_options(topics, topic_opts, false);
  topics->add_option("--labels", labels, "Topic labels, index<TAB>name")->check(CLI::ExistingFile);

  std::string csv_a;
  std::string csv_b;
  std::string col_a;
  std::string col_b;
  std::string t_variant = "pooled";
  std::string t_tail = "two-sided";
  double t_alpha = 0.05;
  auto* ttest = app.add_subcommand("ttest", "Two-sample t-test on CSV columns");
  ttest->add_option("--csv", csv_a, "CSV file")->required()->check(CLI::ExistingFile);
  ttest->add_option("--csv-b", csv_b, "Second CSV file for column b")->check(CLI::ExistingFile);
  ttest->add_option("--a", col_a, "Column of sample a")->required();
  ttest->add_option("--b", col_b, "Column of sample b")->required();
  ttest->add_option("--variant", t_variant, "pooled or welch")->check(CLI::IsMember({"pooled", "welch"}));
  ttest->add_option("--tail", t_tail, "two-sided, less or greater")
      ->check(CLI::IsMember({"two-sided", "less", "greater"}));
  ttest->add_option("--sig-alpha", t_alpha, "Significance level")->check(CLI::Range(0.0, 1.0));

  std::string export_in;
  std::string export_to;
  std::string export_out;
  std::optional<double> export_band;
  auto* exp = app.add_subcommand("export", "Convert a canonical graph file");
  exp->add_option("--in", export_in, "Canonical graph file")->required()->check(CLI::ExistingFile);
  exp->add_option("--to", export_to, "canonical, graphml or dot")
      ->required()
      ->check(CLI::IsMember({"canonical", "graphml", "dot"}));
  exp->add_option("--out", export_out, "Output file (stdout when omitted)");
  exp->add_option("--neutral-band", export_band, "Override the stored neutral band")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    auto set_log = [](const std::string& level) {
      g_log = level == "quiet" ? LogLevel::quiet : level == "info" ? LogLevel::info : LogLevel::warn;
    };
    if (*extract) {
      set_log(extract_opts.log_level);
      return cmd_extract(extract_opts, extract, per_chapter, formats);
    }
    if (*report) {
      set_log(report_opts.log_level);
      return cmd_report(report_opts, report, report_flags);
    }
    if (*topics) {
      set_log(topic_opts.log_level);
      topic_opts.topics = true;
      return cmd_topics(topic_opts, topics, labels);
    }
    if (*ttest) {
      stats::TTestOptions opts;
      opts.variant = *stats::parse_variant(t_variant);
      opts.tail = *stats::parse_tail(t_tail);
      opts.alpha = t_alpha;
      return cmd_ttest(csv_a, csv_b, col_a, col_b, opts);
    }
    if (*exp) return cmd_export(export_in, export_to, export_out, export_band);
  } catch (const CorpusError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const AnalyticsError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const TopicFitError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const stats::StatsError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitRuntime;
  }
  return kExitRuntime;
}
