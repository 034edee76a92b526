// Per-writer LDA topic model (collapsed Gibbs sampling) and character topic
// vectors derived from segment token assignments.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chargraph/corpus.hpp"

namespace chargraph {

struct TopicConfig {
  int topics = 20;
  int iterations = 1000;
  int burn_in = 500;
  std::optional<double> doc_topic_prior;  // 50 / topics when unset
  double topic_word_prior = 0.01;
  std::uint64_t seed = 20240;
  std::set<std::string, std::less<>> stopwords;
  std::set<std::string, std::less<>> common_verbs;
  int min_token_length = 2;  // code points
  bool case_insensitive = true;

  double alpha() const noexcept { return doc_topic_prior.value_or(50.0 / topics); }
  void validate() const;
};

/// One token per line; '#' comments and blank lines skipped.
std::set<std::string, std::less<>> load_word_list(const std::filesystem::path& path, bool fold);

/// Index<TAB>name label file; display only.
std::map<int, std::string> load_topic_labels(const std::filesystem::path& path);

/// One document per chapter. `sentence[i]` is the 1-based sentence of token i.
struct TokenDocument {
  std::string story_id;
  int chapter = 0;
  std::vector<std::string> tokens;
  std::vector<int> sentence;
};

/// Drops stopwords, common verbs, character-name tokens and tokens shorter
/// than min_token_length. Empty chapters stay as empty documents.
TokenDocument preprocess_chapter(std::string_view story_id, const Chapter& chapter,
                                 const AliasMatcher& names, const TopicConfig& config);
std::vector<TokenDocument> preprocess(const Story& story, const AliasMatcher& names, const TopicConfig& config);

struct TopicModel {
  int topics = 0;
  std::vector<std::string> vocabulary;           // sorted
  std::vector<std::vector<double>> topic_word;   // topics x vocabulary
  std::vector<std::vector<double>> doc_topic;    // documents x topics
  std::vector<std::vector<int>> assignments;     // final topic per token

  /// Vocabulary indices of the n most probable words of topic k.
  std::vector<std::size_t> top_words(int k, std::size_t n) const;
};

class TopicFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Collapsed Gibbs sampling. Distributions come from the average of the
/// post-burn-in count states, smoothed by the priors.
TopicModel fit_lda(std::span<const TokenDocument> documents, const TopicConfig& config);

/// Token-level assignments of one chapter, as needed for segment scores.
struct ChapterTopics {
  int chapter = 0;
  std::vector<int> sentence_of_token;
  std::vector<int> topic_of_token;
  std::vector<double> theta;  // chapter distribution, used for token-free spans
};

/// Chapter topic data for one story, indexed by chapter index - 1.
std::vector<ChapterTopics> story_topics(const TopicModel& model, std::span<const TokenDocument> documents,
                                        std::string_view story_id, int chapter_count);

/// Normalized assignment counts over tokens in sentences [start, end].
std::vector<double> segment_topics(const ChapterTopics& chapter, int start, int end);

/// sum_i (l_i / sum_j l_j) * distribution_i. Throws NoSegmentsError when
/// there are no segments.
std::vector<double> character_topics(std::span<const std::vector<double>> segment_distributions,
                                     std::span<const int> segment_lengths);

}  // namespace chargraph
