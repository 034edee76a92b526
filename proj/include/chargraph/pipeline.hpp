// End-to-end extraction: occurrences, segmentation, chapter graphs with
// sentiment and topic attributes, and the merged story graph.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "chargraph/corpus.hpp"
#include "chargraph/graph.hpp"
#include "chargraph/segmentation.hpp"
#include "chargraph/sentiment.hpp"
#include "chargraph/topics.hpp"

namespace chargraph {

struct ExtractionOptions {
  SegmentationParams segmentation;
  WeightParams weights;
  const SentenceScorer* scorer = nullptr;  // sentiment stays 0 without one
};

struct ChapterResult {
  OccurrenceMatrix occurrences;
  ChapterSegmentation segmentation;
  std::vector<double> sentiment;  // standardized, one per sentence
  ChapterGraph graph;
};

struct StoryResult {
  std::string story_id;
  std::vector<ChapterResult> chapters;
  StoryGraph graph;
};

/// Sentiment and topic attributes for one chapter graph. `topics` may be null.
void attach_attributes(ChapterResult& chapter, const ChapterTopics* topics);

/// Chapters processed in parallel; the merge is a sequential fold.
/// `topics` is empty or holds one entry per chapter.
StoryResult extract_story(const Story& story, const TokenizerConfig& tokenizer, const ExtractionOptions& options,
                          std::span<const ChapterTopics> topics = {});

/// Single-threaded reference with identical output.
StoryResult extract_story_serial(const Story& story, const TokenizerConfig& tokenizer,
                                 const ExtractionOptions& options, std::span<const ChapterTopics> topics = {});

struct WriterTopics {
  std::string writer_id;
  std::vector<TokenDocument> documents;  // every chapter of the writer's stories
  TopicModel model;
};

/// One model per writer with at least one story, fitted in parallel.
/// Writers follow manifest order.
std::vector<WriterTopics> fit_writer_topics(const Corpus& corpus, const TopicConfig& config);

/// Chapter topic data per story (corpus order) from the writer models.
std::vector<std::vector<ChapterTopics>> corpus_chapter_topics(const Corpus& corpus,
                                                              std::span<const WriterTopics> models);

/// Stories processed in parallel. `topics[i]` belongs to corpus.stories[i]
/// when `topics` is not empty.
std::vector<StoryResult> extract_corpus(const Corpus& corpus, const ExtractionOptions& options,
                                        std::span<const std::vector<ChapterTopics>> topics = {});
/// As above with one option set per story.
std::vector<StoryResult> extract_corpus(const Corpus& corpus, std::span<const ExtractionOptions> per_story,
                                        std::span<const std::vector<ChapterTopics>> topics = {});

}  // namespace chargraph
