#include "chargraph/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "chargraph/text.hpp"

namespace chargraph {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = text::trim_ascii(s);
  if (s.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
  } else {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  }
}

template <typename Fn>
void for_each_line(std::string_view source, Fn&& fn) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= source.size()) {
    auto end = source.find('\n', pos);
    if (end == std::string_view::npos) end = source.size();
    auto line = source.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!text::trim_ascii(line).empty() && line.front() != '#') fn(line, line_no);
    pos = end + 1;
  }
}

}  // namespace

SentimentLexicon SentimentLexicon::parse(std::string_view source, bool case_insensitive) {
  SentimentLexicon lex;
  lex.case_insensitive = case_insensitive;
  for_each_line(source, [&](std::string_view line, int line_no) {
    const auto fields = split_tabs(line);
    double value = 0.0;
    const auto token = std::string(text::trim_ascii(fields[0]));
    if (fields.size() != 2 || token.empty() || !parse_number(fields[1], value)) {
      throw std::runtime_error("lexicon line " + std::to_string(line_no) + ": expected token<TAB>polarity");
    }
    if (value < -1.0 || value > 1.0) {
      throw std::runtime_error("lexicon line " + std::to_string(line_no) + ": polarity outside [-1, 1]");
    }
    lex.polarity[case_insensitive ? text::fold_case(token) : token] = value;
  });
  return lex;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path, bool case_insensitive) {
  return parse(slurp(path), case_insensitive);
}

void SentimentLexicon::load_negations(const std::filesystem::path& path) {
  const auto source = slurp(path);
  for_each_line(source, [&](std::string_view line, int) {
    const auto token = std::string(text::trim_ascii(line));
    negations.insert(case_insensitive ? text::fold_case(token) : token);
  });
}

double score_sentence(std::string_view sentence, const SentimentLexicon& lexicon, bool use_negation) {
  const auto tokens = text::word_tokens(sentence, lexicon.case_insensitive);
  double sum = 0.0;
  int matched = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto it = lexicon.polarity.find(tokens[i]);
    if (it == lexicon.polarity.end()) continue;
    double p = it->second;
    if (use_negation && i > 0 && lexicon.negations.count(tokens[i - 1]) > 0) p = -p;
    sum += p;
    ++matched;
  }
  return sum / std::max(1, matched);
}

double LexiconScorer::score(int, int, std::string_view text) const {
  return score_sentence(text, lexicon_, use_negation_);
}

TableScorer TableScorer::parse(std::string_view source) {
  TableScorer t;
  for_each_line(source, [&](std::string_view line, int line_no) {
    const auto fields = split_tabs(line);
    int chapter = 0;
    int sentence = 0;
    double value = 0.0;
    if (fields.size() != 3 || !parse_number(fields[0], chapter) || !parse_number(fields[1], sentence) ||
        !parse_number(fields[2], value)) {
      throw std::runtime_error("score file line " + std::to_string(line_no) +
                               ": expected chapter<TAB>sentence<TAB>score");
    }
    t.scores_[{chapter, sentence}] = value;
  });
  return t;
}

TableScorer TableScorer::load(const std::filesystem::path& path) { return parse(slurp(path)); }

double TableScorer::score(int chapter, int sentence, std::string_view) const {
  const auto it = scores_.find({chapter, sentence});
  return it == scores_.end() ? 0.0 : it->second;
}

std::vector<double> standardize(std::span<const double> scores) {
  std::vector<double> out(scores.size(), 0.0);
  if (scores.empty()) return out;
  const double n = static_cast<double>(scores.size());
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) return out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double z = (scores[i] - mean) / sd;
    out[i] = z / (1.0 + std::fabs(z));
  }
  return out;
}

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::negative: return "negative";
    case Polarity::neutral: return "neutral";
    case Polarity::positive: return "positive";
  }
  return "?";
}

Polarity classify(double score, double neutral_band) {
  if (score > neutral_band) return Polarity::positive;
  if (score < -neutral_band) return Polarity::negative;
  return Polarity::neutral;
}

double span_sentiment(std::span<const double> standardized, int start, int end) {
  if (start < 1 || end < start || static_cast<std::size_t>(end) > standardized.size()) {
    throw std::out_of_range("sentence span outside chapter");
  }
  double sum = 0.0;
  for (int s = start; s <= end; ++s) sum += standardized[static_cast<std::size_t>(s - 1)];
  return sum / (end - start + 1);
}

double entity_sentiment(std::span<const double> segment_scores) {
  if (segment_scores.empty()) throw NoSegmentsError("entity has no segments");
  return std::accumulate(segment_scores.begin(), segment_scores.end(), 0.0) /
         static_cast<double>(segment_scores.size());
}

}  // namespace chargraph
