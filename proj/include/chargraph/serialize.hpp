// Graph export formats: canonical line-oriented text (diff-able, parseable),
// GraphML and Graphviz DOT.
//
// Canonical text, one record per line, nodes sorted by id and edges by
// sorted id pair, every real printed with 6 significant digits:
//
//   chargraph-graph 1
//   story <id>
//   chapter <index, 0 for a merged story graph>
//   sentences <L>
//   chapters <count>
//   weights alpha=<a> beta=<b> gamma=<g> lprime=<exactly_one|either>
//   sentiment_band <band>
//   delta chapter=<i> L=<L> A=<a> B=<b> C=<c> auto=<0|1> strict=<0|1>
//   node <id> omega=.. appearances=.. segments=.. presence=.. sentiment=.. class=.. topics=<v,..|-> sequence=<ch:s-f,..|->
//   edge <a> <b> omega=.. appearances=.. segments=.. presence=.. sentiment=.. class=.. phi=<p1>,<p2> sequence=..
//   meta <id> gender=.. age=.. role=.. family=..
//   label <id> <display name up to end of line>
#pragma once

#include <map>
#include <string>
#include <string_view>

#include "chargraph/corpus.hpp"
#include "chargraph/graph.hpp"

namespace chargraph {

/// 6 significant digits, negative zero printed as 0.
std::string format_number(double value);

struct NodeMeta {
  std::string name;
  std::string gender;
  std::string age_group;
  std::string role;
  std::string family;
};

struct GraphDocument {
  CharacterGraph graph;
  std::map<std::string, NodeMeta> meta;
  double neutral_band = 0.05;
};

GraphDocument make_document(const CharacterGraph& graph, const Roster* roster, double neutral_band);

std::string to_canonical(const GraphDocument& doc);
/// Throws std::runtime_error naming the offending line.
GraphDocument parse_canonical(std::string_view source);

std::string to_graphml(const GraphDocument& doc);

/// Node size and edge thickness follow weight; edge color follows sentiment
/// class (blue neutral, green positive, red negative).
std::string to_dot(const GraphDocument& doc);
std::string_view sentiment_color(double sentiment, double neutral_band);

}  // namespace chargraph
