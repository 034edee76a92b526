// Serial reference vs OpenMP extraction on the bundled corpus with every
// story's chapters repeated to make the work measurable.
#include <benchmark/benchmark.h>

#include <filesystem>

#include "chargraph/pipeline.hpp"

using namespace chargraph;

namespace {

const Corpus& scaled_corpus() {
  static const Corpus c = [] {
    auto corpus = load_corpus(std::filesystem::path(CHARGRAPH_DATA_DIR) / "minicorpus" / "manifest.yaml");
    for (auto& story : corpus.stories) {
      const auto base = story.chapters;
      for (int copy = 1; copy < 16; ++copy) {
        for (auto ch : base) {
          ch.index = static_cast<int>(story.chapters.size()) + 1;
          story.chapters.push_back(std::move(ch));
        }
      }
    }
    return corpus;
  }();
  return c;
}

const LexiconScorer& scorer() {
  static const LexiconScorer s(SentimentLexicon::load(scaled_corpus().manifest.base_dir / "lexicon.tsv"));
  return s;
}

ExtractionOptions options() {
  ExtractionOptions o;
  o.scorer = &scorer();
  return o;
}

void BM_StorySerial(benchmark::State& state) {
  const auto& c = scaled_corpus();
  const auto o = options();
  for (auto _ : state) {
    for (const auto& s : c.stories) benchmark::DoNotOptimize(extract_story_serial(s, c.manifest.tokenizer, o));
  }
}

void BM_StoryParallel(benchmark::State& state) {
  const auto& c = scaled_corpus();
  const auto o = options();
  for (auto _ : state) {
    for (const auto& s : c.stories) benchmark::DoNotOptimize(extract_story(s, c.manifest.tokenizer, o));
  }
}

void BM_CorpusParallel(benchmark::State& state) {
  const auto& c = scaled_corpus();
  const auto o = options();
  for (auto _ : state) benchmark::DoNotOptimize(extract_corpus(c, o));
}

void BM_TopicsPerWriter(benchmark::State& state) {
  const auto& c = scaled_corpus();
  TopicConfig cfg;
  cfg.topics = 10;
  cfg.iterations = 50;
  cfg.burn_in = 25;
  for (auto _ : state) benchmark::DoNotOptimize(fit_writer_topics(c, cfg));
}

}  // namespace

BENCHMARK(BM_StorySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_StoryParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CorpusParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TopicsPerWriter)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
