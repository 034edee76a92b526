#include "chargraph/serialize.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chargraph/sentiment.hpp"
#include "chargraph/text.hpp"

namespace chargraph {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  auto s = fmt::format("{:.6g}", value);
  if (s == "-0") return "0";
  return s;
}

GraphDocument make_document(const CharacterGraph& graph, const Roster* roster, double neutral_band) {
  GraphDocument doc;
  doc.graph = graph;
  doc.neutral_band = neutral_band;
  for (const auto& [id, node] : graph.nodes) {
    NodeMeta m;
    m.name = id;
    if (const auto* rec = roster ? roster->find(id) : nullptr) {
      m.name = rec->canonical_name;
      m.gender = to_string(rec->gender);
      m.age_group = to_string(rec->age_group);
      m.role = to_string(rec->role);
      m.family = to_string(rec->family_status.value_or(FamilyStatus::none));
    }
    doc.meta.emplace(id, std::move(m));
  }
  return doc;
}

namespace {

std::string join_numbers(const std::vector<double>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_number(xs[i]);
  }
  return out;
}

std::string join_sequence(const std::vector<SpanRef>& seq) {
  if (seq.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("{}:{}-{}", seq[i].chapter, seq[i].start, seq[i].end);
  }
  return out;
}

std::string or_dash(const std::string& s) { return s.empty() ? "-" : s; }

}  // namespace

std::string to_canonical(const GraphDocument& doc) {
  const auto& g = doc.graph;
  std::string out;
  out += "chargraph-graph 1\n";
  out += fmt::format("story {}\n", g.story_id);
  out += fmt::format("chapter {}\n", g.chapter);
  out += fmt::format("sentences {}\n", g.sentences);
  out += fmt::format("chapters {}\n", g.chapter_count);
  out += fmt::format("weights alpha={} beta={} gamma={} lprime={}\n", format_number(g.weights.alpha),
                     format_number(g.weights.beta), format_number(g.weights.joint_bonus()),
                     to_string(g.weights.lprime_mode));
  out += fmt::format("sentiment_band {}\n", format_number(doc.neutral_band));
  for (const auto& p : g.provenance) {
    out += fmt::format("delta chapter={} L={} A={} B={} C={} auto={} strict={}\n", p.chapter, p.length,
                       p.params.delta_a, p.params.delta_b, p.params.delta_c, p.params.automatic ? 1 : 0,
                       p.params.strict_min_appearance ? 1 : 0);
  }
  for (const auto& [id, n] : g.nodes) {
    out += fmt::format("node {} omega={} appearances={} segments={} presence={} sentiment={} class={} topics={} sequence={}\n",
                       id, format_number(n.omega), n.appearances, n.segment_count, n.chapter_presence,
                       format_number(n.sentiment), to_string(classify(n.sentiment, doc.neutral_band)),
                       join_numbers(n.topics), join_sequence(n.sequence));
  }
  for (const auto& [key, e] : g.edges) {
    out += fmt::format("edge {} {} omega={} appearances={} segments={} presence={} sentiment={} class={} phi={},{} sequence={}\n",
                       key.first, key.second, format_number(e.omega), e.appearances, e.segment_count,
                       e.chapter_presence, format_number(e.sentiment),
                       to_string(classify(e.sentiment, doc.neutral_band)), format_number(e.phi_first),
                       format_number(e.phi_second), join_sequence(e.sequence));
  }
  for (const auto& [id, m] : doc.meta) {
    out += fmt::format("meta {} gender={} age={} role={} family={}\n", id, or_dash(m.gender),
                       or_dash(m.age_group), or_dash(m.role), or_dash(m.family));
  }
  for (const auto& [id, m] : doc.meta) out += fmt::format("label {} {}\n", id, m.name);
  return out;
}

namespace {

class LineError : public std::runtime_error {
 public:
  LineError(int line, const std::string& what)
      : std::runtime_error("canonical graph line " + std::to_string(line) + ": " + what) {}
};

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::map<std::string, std::string> key_values(const std::vector<std::string>& fields, std::size_t from,
                                              int line) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = from; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    if (eq == std::string::npos) throw LineError(line, "expected key=value, got '" + fields[i] + "'");
    kv[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
  }
  return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key, int line) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw LineError(line, "missing '" + key + "'");
  return it->second;
}

double to_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw LineError(line, "not a number: '" + s + "'");
  }
}

int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw LineError(line, "not an integer: '" + s + "'");
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  if (s == "-") return out;
  std::size_t pos = 0;
  while (true) {
    const auto c = s.find(',', pos);
    out.push_back(s.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

std::vector<SpanRef> parse_sequence(const std::string& s, int line) {
  std::vector<SpanRef> out;
  for (const auto& item : split_commas(s)) {
    SpanRef r;
    char colon = 0;
    char dash = 0;
    std::istringstream in(item);
    if (!(in >> r.chapter >> colon >> r.start >> dash >> r.end) || colon != ':' || dash != '-') {
      throw LineError(line, "bad sequence item '" + item + "'");
    }
    out.push_back(r);
  }
  return out;
}

std::string from_dash(const std::string& s) { return s == "-" ? std::string() : s; }

}  // namespace

GraphDocument parse_canonical(std::string_view source) {
  GraphDocument doc;
  auto& g = doc.graph;
  g.provenance.clear();
  bool header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < source.size()) {
    auto end = source.find('\n', pos);
    if (end == std::string_view::npos) end = source.size();
    const auto line = source.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (text::trim_ascii(line).empty()) continue;
    const auto f = split_ws(line);
    const auto& tag = f[0];
    if (!header) {
      if (tag != "chargraph-graph" || f.size() != 2 || f[1] != "1") {
        throw LineError(line_no, "missing 'chargraph-graph 1' header");
      }
      header = true;
      continue;
    }
    auto need_fields = [&](std::size_t n) {
      if (f.size() < n) throw LineError(line_no, "too few fields for '" + tag + "'");
    };
    if (tag == "story") {
      need_fields(2);
      g.story_id = f[1];
    } else if (tag == "chapter") {
      need_fields(2);
      g.chapter = to_int(f[1], line_no);
    } else if (tag == "sentences") {
      need_fields(2);
      g.sentences = to_int(f[1], line_no);
    } else if (tag == "chapters") {
      need_fields(2);
      g.chapter_count = to_int(f[1], line_no);
    } else if (tag == "weights") {
      const auto kv = key_values(f, 1, line_no);
      g.weights.alpha = to_double(need(kv, "alpha", line_no), line_no);
      g.weights.beta = to_double(need(kv, "beta", line_no), line_no);
      g.weights.gamma = to_double(need(kv, "gamma", line_no), line_no);
      const auto mode = parse_lprime_mode(need(kv, "lprime", line_no));
      if (!mode) throw LineError(line_no, "unknown lprime mode");
      g.weights.lprime_mode = *mode;
    } else if (tag == "sentiment_band") {
      need_fields(2);
      doc.neutral_band = to_double(f[1], line_no);
    } else if (tag == "delta") {
      const auto kv = key_values(f, 1, line_no);
      ChapterParams p;
      p.chapter = to_int(need(kv, "chapter", line_no), line_no);
      p.length = to_int(need(kv, "L", line_no), line_no);
      p.params.delta_a = to_int(need(kv, "A", line_no), line_no);
      p.params.delta_b = to_int(need(kv, "B", line_no), line_no);
      p.params.delta_c = to_int(need(kv, "C", line_no), line_no);
      p.params.automatic = need(kv, "auto", line_no) == "1";
      p.params.strict_min_appearance = need(kv, "strict", line_no) == "1";
      g.provenance.push_back(p);
    } else if (tag == "node") {
      need_fields(2);
      const auto kv = key_values(f, 2, line_no);
      NodeAttrs n;
      n.omega = to_double(need(kv, "omega", line_no), line_no);
      n.appearances = to_int(need(kv, "appearances", line_no), line_no);
      n.segment_count = to_int(need(kv, "segments", line_no), line_no);
      n.chapter_presence = to_int(need(kv, "presence", line_no), line_no);
      n.sentiment = to_double(need(kv, "sentiment", line_no), line_no);
      for (const auto& t : split_commas(need(kv, "topics", line_no))) n.topics.push_back(to_double(t, line_no));
      n.sequence = parse_sequence(need(kv, "sequence", line_no), line_no);
      if (!g.nodes.emplace(f[1], std::move(n)).second) throw LineError(line_no, "duplicate node " + f[1]);
    } else if (tag == "edge") {
      need_fields(3);
      const auto kv = key_values(f, 3, line_no);
      EdgeAttrs e;
      e.omega = to_double(need(kv, "omega", line_no), line_no);
      e.appearances = to_int(need(kv, "appearances", line_no), line_no);
      e.segment_count = to_int(need(kv, "segments", line_no), line_no);
      e.chapter_presence = to_int(need(kv, "presence", line_no), line_no);
      e.sentiment = to_double(need(kv, "sentiment", line_no), line_no);
      const auto phi = split_commas(need(kv, "phi", line_no));
      if (phi.size() != 2) throw LineError(line_no, "phi needs two values");
      e.phi_first = to_double(phi[0], line_no);
      e.phi_second = to_double(phi[1], line_no);
      e.sequence = parse_sequence(need(kv, "sequence", line_no), line_no);
      if (!g.nodes.count(f[1]) || !g.nodes.count(f[2])) throw LineError(line_no, "edge endpoint is not a node");
      if (!g.edges.emplace(make_edge_key(f[1], f[2]), std::move(e)).second) {
        throw LineError(line_no, "duplicate edge");
      }
    } else if (tag == "meta") {
      need_fields(2);
      const auto kv = key_values(f, 2, line_no);
      auto& m = doc.meta[f[1]];
      m.gender = from_dash(need(kv, "gender", line_no));
      m.age_group = from_dash(need(kv, "age", line_no));
      m.role = from_dash(need(kv, "role", line_no));
      m.family = from_dash(need(kv, "family", line_no));
    } else if (tag == "label") {
      need_fields(2);
      // Display name is everything after "label <id> ".
      const auto id_at = line.find(f[1], 5);
      const auto rest = line.substr(id_at + f[1].size());
      doc.meta[f[1]].name = std::string(text::trim_ascii(rest));
    } else {
      throw LineError(line_no, "unknown record '" + tag + "'");
    }
  }
  if (!header) throw LineError(line_no, "empty document");
  return doc;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

struct GraphmlKey {
  const char* id;
  const char* domain;
  const char* name;
  const char* type;
};

constexpr GraphmlKey kKeys[] = {
    {"n_label", "node", "label", "string"},
    {"n_omega", "node", "omega", "double"},
    {"n_appearances", "node", "appearances", "int"},
    {"n_segments", "node", "segment_count", "int"},
    {"n_presence", "node", "chapter_presence", "int"},
    {"n_sentiment", "node", "sentiment", "double"},
    {"n_class", "node", "sentiment_class", "string"},
    {"n_topics", "node", "topics", "string"},
    {"n_gender", "node", "gender", "string"},
    {"n_age", "node", "age_group", "string"},
    {"n_role", "node", "role", "string"},
    {"n_family", "node", "family_status", "string"},
    {"e_omega", "edge", "omega", "double"},
    {"e_appearances", "edge", "appearances", "int"},
    {"e_segments", "edge", "segment_count", "int"},
    {"e_presence", "edge", "chapter_presence", "int"},
    {"e_sentiment", "edge", "sentiment", "double"},
    {"e_class", "edge", "sentiment_class", "string"},
    {"e_phi_source", "edge", "phi_source", "double"},
    {"e_phi_target", "edge", "phi_target", "double"},
};

}  // namespace

std::string to_graphml(const GraphDocument& doc) {
  const auto& g = doc.graph;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  for (const auto& k : kKeys) {
    out += fmt::format("  <key id=\"{}\" for=\"{}\" attr.name=\"{}\" attr.type=\"{}\"/>\n", k.id, k.domain,
                       k.name, k.type);
  }
  const auto graph_id = g.is_story() ? g.story_id : fmt::format("{}.ch{}", g.story_id, g.chapter);
  out += fmt::format("  <graph id=\"{}\" edgedefault=\"undirected\">\n", xml_escape(graph_id));
  auto data = [&](const char* key, const std::string& value) {
    out += fmt::format("      <data key=\"{}\">{}</data>\n", key, xml_escape(value));
  };
  for (const auto& [id, n] : g.nodes) {
    out += fmt::format("    <node id=\"{}\">\n", xml_escape(id));
    const auto it = doc.meta.find(id);
    const NodeMeta meta = it == doc.meta.end() ? NodeMeta{id, "", "", "", ""} : it->second;
    data("n_label", meta.name.empty() ? id : meta.name);
    data("n_omega", format_number(n.omega));
    data("n_appearances", std::to_string(n.appearances));
    data("n_segments", std::to_string(n.segment_count));
    data("n_presence", std::to_string(n.chapter_presence));
    data("n_sentiment", format_number(n.sentiment));
    data("n_class", std::string(to_string(classify(n.sentiment, doc.neutral_band))));
    if (!n.topics.empty()) data("n_topics", join_numbers(n.topics));
    if (!meta.gender.empty()) data("n_gender", meta.gender);
    if (!meta.age_group.empty()) data("n_age", meta.age_group);
    if (!meta.role.empty()) data("n_role", meta.role);
    if (!meta.family.empty()) data("n_family", meta.family);
    out += "    </node>\n";
  }
  int edge_no = 0;
  for (const auto& [key, e] : g.edges) {
    out += fmt::format("    <edge id=\"e{}\" source=\"{}\" target=\"{}\">\n", edge_no++, xml_escape(key.first),
                       xml_escape(key.second));
    data("e_omega", format_number(e.omega));
    data("e_appearances", std::to_string(e.appearances));
    data("e_segments", std::to_string(e.segment_count));
    data("e_presence", std::to_string(e.chapter_presence));
    data("e_sentiment", format_number(e.sentiment));
    data("e_class", std::string(to_string(classify(e.sentiment, doc.neutral_band))));
    data("e_phi_source", format_number(e.phi_first));
    data("e_phi_target", format_number(e.phi_second));
    out += "    </edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

std::string_view sentiment_color(double sentiment, double neutral_band) {
  switch (classify(sentiment, neutral_band)) {
    case Polarity::positive: return "green";
    case Polarity::negative: return "red";
    case Polarity::neutral: return "blue";
  }
  return "blue";
}

std::string to_dot(const GraphDocument& doc) {
  const auto& g = doc.graph;
  double max_node = 0.0;
  double max_edge = 0.0;
  for (const auto& [id, n] : g.nodes) max_node = std::max(max_node, n.omega);
  for (const auto& [k, e] : g.edges) max_edge = std::max(max_edge, e.omega);

  const auto name = g.is_story() ? g.story_id : fmt::format("{}.ch{}", g.story_id, g.chapter);
  std::string out;
  out += fmt::format("graph \"{}\" {{\n", dot_escape(name));
  out += "  graph [overlap=false, splines=true];\n";
  out += "  node [shape=circle, style=filled, fillcolor=\"#f2e6c9\", fixedsize=true];\n";
  for (const auto& [id, n] : g.nodes) {
    const auto it = doc.meta.find(id);
    const auto label = it == doc.meta.end() || it->second.name.empty() ? id : it->second.name;
    const double scale = max_node > 0 ? n.omega / max_node : 0.0;
    out += fmt::format("  \"{}\" [label=\"{}\", width={}, omega={}];\n", dot_escape(id), dot_escape(label),
                       format_number(0.4 + 1.6 * scale), format_number(n.omega));
  }
  for (const auto& [key, e] : g.edges) {
    const double scale = max_edge > 0 ? e.omega / max_edge : 0.0;
    out += fmt::format("  \"{}\" -- \"{}\" [penwidth={}, color={}, omega={}];\n", dot_escape(key.first),
                       dot_escape(key.second), format_number(1.0 + 5.0 * scale),
                       sentiment_color(e.sentiment, doc.neutral_band), format_number(e.omega));
  }
  out += "}\n";
  return out;
}

}  // namespace chargraph
