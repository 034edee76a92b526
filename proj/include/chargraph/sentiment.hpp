// Sentence sentiment scoring and aggregation to segments, nodes and edges.
#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace chargraph {

struct SentimentLexicon {
  std::unordered_map<std::string, double> polarity;  // token -> [-1, 1]
  std::unordered_set<std::string> negations;
  bool case_insensitive = true;

  /// `token<TAB>polarity` per line; blank lines and lines starting with '#'
  /// are skipped. Throws std::runtime_error naming the line on bad input.
  static SentimentLexicon parse(std::string_view source, bool case_insensitive = true);
  static SentimentLexicon load(const std::filesystem::path& path, bool case_insensitive = true);
  /// One token per line.
  void load_negations(const std::filesystem::path& path);
};

/// Mean polarity of the matched tokens; with `use_negation`, a token directly
/// preceded by a negation token contributes its negated polarity.
double score_sentence(std::string_view sentence, const SentimentLexicon& lexicon, bool use_negation = false);

/// Any sentence -> finite real mapping can stand in for the lexicon.
class SentenceScorer {
 public:
  virtual ~SentenceScorer() = default;
  virtual double score(int chapter, int sentence, std::string_view text) const = 0;
};

class LexiconScorer final : public SentenceScorer {
 public:
  explicit LexiconScorer(SentimentLexicon lexicon, bool use_negation = false)
      : lexicon_(std::move(lexicon)), use_negation_(use_negation) {}
  double score(int chapter, int sentence, std::string_view text) const override;

 private:
  SentimentLexicon lexicon_;
  bool use_negation_;
};

/// Precomputed scores keyed by (chapter, sentence), e.g. from a neural model.
/// Sentences absent from the table score 0.
class TableScorer final : public SentenceScorer {
 public:
  /// `chapter<TAB>sentence<TAB>score` per line.
  static TableScorer parse(std::string_view source);
  static TableScorer load(const std::filesystem::path& path);
  double score(int chapter, int sentence, std::string_view text) const override;

 private:
  std::map<std::pair<int, int>, double> scores_;
};

/// Z-score within the chapter (population standard deviation), then squash
/// with s / (1 + |s|). Zero variance maps every sentence to 0.
std::vector<double> standardize(std::span<const double> scores);

enum class Polarity { negative, neutral, positive };
std::string_view to_string(Polarity p);

/// |score| <= band is neutral.
Polarity classify(double score, double neutral_band = 0.05);

/// Mean standardized score over sentences [start, end] (1-based, inclusive).
double span_sentiment(std::span<const double> standardized, int start, int end);

class NoSegmentsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unweighted mean of segment scores. Throws NoSegmentsError when empty.
double entity_sentiment(std::span<const double> segment_scores);

}  // namespace chargraph
