#include "chargraph/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <iterator>
#include <stdexcept>

namespace chargraph {

namespace {

ChapterResult process_chapter(const Story& story, const Chapter& chapter, const AliasMatcher& matcher,
                              const ExtractionOptions& options, const ChapterTopics* topics) {
  ChapterResult r;
  r.occurrences = find_occurrences(chapter, matcher);
  r.segmentation = segment_chapter(r.occurrences, options.segmentation);
  r.graph = build_chapter_graph(story.entry.id, chapter.index, r.occurrences, r.segmentation, options.weights);

  std::vector<double> raw(chapter.sentences.size(), 0.0);
  if (options.scorer) {
    for (std::size_t s = 0; s < raw.size(); ++s) {
      raw[s] = options.scorer->score(chapter.index, static_cast<int>(s + 1), chapter.sentences[s]);
    }
  }
  r.sentiment = standardize(raw);
  attach_attributes(r, topics);
  return r;
}

StoryGraph merge(const std::vector<ChapterResult>& chapters) {
  std::vector<ChapterGraph> graphs;
  graphs.reserve(chapters.size());
  for (const auto& c : chapters) graphs.push_back(c.graph);
  return merge_story(graphs);
}

void check_topics(const Story& story, std::span<const ChapterTopics> topics) {
  if (!topics.empty() && topics.size() != story.chapters.size()) {
    throw std::invalid_argument("topic data for story '" + story.entry.id + "' does not match its chapter count");
  }
}

}  // namespace

void attach_attributes(ChapterResult& chapter, const ChapterTopics* topics) {
  auto& g = chapter.graph;
  for (auto& [id, node] : g.nodes) {
    const auto& segs = chapter.segmentation.segments.at(id);
    std::vector<double> scores;
    std::vector<std::vector<double>> dists;
    std::vector<int> lengths;
    for (const auto& s : segs) {
      scores.push_back(span_sentiment(chapter.sentiment, s.start, s.end));
      if (topics) {
        dists.push_back(segment_topics(*topics, s.start, s.end));
        lengths.push_back(s.length());
      }
    }
    node.sentiment = entity_sentiment(scores);
    if (topics) node.topics = character_topics(dists, lengths);
  }
  std::map<EdgeKey, std::vector<double>> edge_scores;
  for (const auto& seg : chapter.segmentation.interactions) {
    edge_scores[make_edge_key(seg.first, seg.second)].push_back(
        span_sentiment(chapter.sentiment, seg.start, seg.end));
  }
  for (auto& [key, edge] : g.edges) edge.sentiment = entity_sentiment(edge_scores.at(key));
}

StoryResult extract_story(const Story& story, const TokenizerConfig& tokenizer, const ExtractionOptions& options,
                          std::span<const ChapterTopics> topics) {
  check_topics(story, topics);
  const AliasMatcher matcher(story.roster, tokenizer, story.entry.id);
  StoryResult result;
  result.story_id = story.entry.id;
  result.chapters.resize(story.chapters.size());
  const auto n = static_cast<long>(story.chapters.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      const auto idx = static_cast<std::size_t>(i);
      result.chapters[idx] = process_chapter(story, story.chapters[idx], matcher, options,
                                             topics.empty() ? nullptr : &topics[idx]);
    } catch (...) {
#pragma omp critical(chargraph_extract_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  result.graph = merge(result.chapters);
  return result;
}

StoryResult extract_story_serial(const Story& story, const TokenizerConfig& tokenizer,
                                 const ExtractionOptions& options, std::span<const ChapterTopics> topics) {
  check_topics(story, topics);
  const AliasMatcher matcher(story.roster, tokenizer, story.entry.id);
  StoryResult result;
  result.story_id = story.entry.id;
  for (std::size_t i = 0; i < story.chapters.size(); ++i) {
    result.chapters.push_back(
        process_chapter(story, story.chapters[i], matcher, options, topics.empty() ? nullptr : &topics[i]));
  }
  result.graph = merge(result.chapters);
  return result;
}

std::vector<StoryResult> extract_corpus(const Corpus& corpus, const ExtractionOptions& options,
                                        std::span<const std::vector<ChapterTopics>> topics) {
  const std::vector<ExtractionOptions> per_story(corpus.stories.size(), options);
  return extract_corpus(corpus, per_story, topics);
}

std::vector<StoryResult> extract_corpus(const Corpus& corpus, std::span<const ExtractionOptions> per_story,
                                        std::span<const std::vector<ChapterTopics>> topics) {
  if (per_story.size() != corpus.stories.size()) {
    throw std::invalid_argument("extraction options do not match the corpus story count");
  }
  if (!topics.empty() && topics.size() != corpus.stories.size()) {
    throw std::invalid_argument("topic data does not match the corpus story count");
  }
  std::vector<StoryResult> out(corpus.stories.size());
  const auto n = static_cast<long>(corpus.stories.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      const auto idx = static_cast<std::size_t>(i);
      out[idx] = extract_story_serial(corpus.stories[idx], corpus.manifest.tokenizer, per_story[idx],
                                      topics.empty() ? std::span<const ChapterTopics>{} : topics[idx]);
    } catch (...) {
#pragma omp critical(chargraph_extract_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<WriterTopics> fit_writer_topics(const Corpus& corpus, const TopicConfig& config) {
  config.validate();
  std::vector<WriterTopics> out;
  for (const auto& w : corpus.manifest.writers) {
    const bool has_story = std::any_of(corpus.stories.begin(), corpus.stories.end(),
                                       [&](const Story& s) { return s.entry.writer_id == w.id; });
    if (has_story) out.push_back({w.id, {}, {}});
  }
  for (auto& wt : out) {
    for (const auto& story : corpus.stories) {
      if (story.entry.writer_id != wt.writer_id) continue;
      const AliasMatcher matcher(story.roster, corpus.manifest.tokenizer, story.entry.id);
      auto docs = preprocess(story, matcher, config);
      wt.documents.insert(wt.documents.end(), std::make_move_iterator(docs.begin()),
                          std::make_move_iterator(docs.end()));
    }
  }
  const auto n = static_cast<long>(out.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    auto& wt = out[static_cast<std::size_t>(i)];
    try {
      wt.model = fit_lda(wt.documents, config);
    } catch (const TopicFitError& e) {
#pragma omp critical(chargraph_extract_failure)
      if (!failure) {
        failure = std::make_exception_ptr(TopicFitError("writer '" + wt.writer_id + "': " + e.what()));
      }
    } catch (...) {
#pragma omp critical(chargraph_extract_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::vector<ChapterTopics>> corpus_chapter_topics(const Corpus& corpus,
                                                              std::span<const WriterTopics> models) {
  std::vector<std::vector<ChapterTopics>> out;
  for (const auto& story : corpus.stories) {
    const auto it = std::find_if(models.begin(), models.end(),
                                 [&](const WriterTopics& w) { return w.writer_id == story.entry.writer_id; });
    if (it == models.end()) throw std::invalid_argument("no topic model for writer '" + story.entry.writer_id + "'");
    out.push_back(story_topics(it->model, it->documents, story.entry.id, static_cast<int>(story.chapters.size())));
  }
  return out;
}

}  // namespace chargraph
