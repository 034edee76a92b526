#include "chargraph/topics.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "chargraph/sentiment.hpp"
#include "chargraph/text.hpp"

namespace chargraph {

void TopicConfig::validate() const {
  if (topics < 1) throw std::invalid_argument("topic count must be >= 1");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) throw std::invalid_argument("burn-in must be in [0, iterations)");
  if (!(alpha() > 0.0)) throw std::invalid_argument("doc-topic prior must be > 0");
  if (!(topic_word_prior > 0.0)) throw std::invalid_argument("topic-word prior must be > 0");
}

std::set<std::string, std::less<>> load_word_list(const std::filesystem::path& path, bool fold) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = std::string(text::trim_ascii(line));
    if (word.empty() || word.front() == '#') continue;
    words.insert(fold ? text::fold_case(word) : word);
  }
  return words;
}

std::map<int, std::string> load_topic_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<int, std::string> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim_ascii(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("topic label line " + std::to_string(line_no) + ": expected index<TAB>name");
    }
    labels[std::stoi(line.substr(0, tab))] = std::string(text::trim_ascii(line.substr(tab + 1)));
  }
  return labels;
}

TokenDocument preprocess_chapter(std::string_view story_id, const Chapter& chapter,
                                 const AliasMatcher& names, const TopicConfig& config) {
  TokenDocument doc;
  doc.story_id = std::string(story_id);
  doc.chapter = chapter.index;
  for (int s = 1; s <= chapter.length(); ++s) {
    for (auto& token : text::word_tokens(chapter.sentences[static_cast<std::size_t>(s - 1)],
                                         config.case_insensitive)) {
      if (static_cast<int>(text::codepoint_count(token)) < config.min_token_length) continue;
      if (config.stopwords.count(token) || config.common_verbs.count(token)) continue;
      // Name tokens are folded by the matcher's own case policy.
      const auto probe = names.case_insensitive() && !config.case_insensitive ? text::fold_case(token) : token;
      if (names.is_name_token(probe)) continue;
      doc.tokens.push_back(std::move(token));
      doc.sentence.push_back(s);
    }
  }
  return doc;
}

std::vector<TokenDocument> preprocess(const Story& story, const AliasMatcher& names, const TopicConfig& config) {
  std::vector<TokenDocument> docs;
  docs.reserve(story.chapters.size());
  for (const auto& ch : story.chapters) docs.push_back(preprocess_chapter(story.entry.id, ch, names, config));
  return docs;
}

std::vector<std::size_t> TopicModel::top_words(int k, std::size_t n) const {
  const auto& row = topic_word.at(static_cast<std::size_t>(k));
  std::vector<std::size_t> idx(row.size());
  std::iota(idx.begin(), idx.end(), 0);
  n = std::min(n, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end(),
                    [&](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] > row[b] : a < b; });
  idx.resize(n);
  return idx;
}

namespace {

/// Uniform [0, 1) from the top 53 bits; std distributions are
/// implementation-defined, this is not.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TopicModel fit_lda(std::span<const TokenDocument> documents, const TopicConfig& config) {
  config.validate();
  const bool any_tokens = std::any_of(documents.begin(), documents.end(),
                                      [](const auto& d) { return !d.tokens.empty(); });
  if (!any_tokens) throw TopicFitError("all documents are empty after preprocessing");

  TopicModel model;
  model.topics = config.topics;
  {
    std::set<std::string> vocab;
    for (const auto& d : documents) vocab.insert(d.tokens.begin(), d.tokens.end());
    model.vocabulary.assign(vocab.begin(), vocab.end());
  }
  const auto K = static_cast<std::size_t>(config.topics);
  const auto V = model.vocabulary.size();
  const auto D = documents.size();
  const double a = config.alpha();
  const double b = config.topic_word_prior;
  const double vb = static_cast<double>(V) * b;

  std::vector<std::vector<int>> words(D);
  for (std::size_t d = 0; d < D; ++d) {
    for (const auto& t : documents[d].tokens) {
      const auto it = std::lower_bound(model.vocabulary.begin(), model.vocabulary.end(), t);
      words[d].push_back(static_cast<int>(it - model.vocabulary.begin()));
    }
  }

  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<int>> n_dk(D, std::vector<int>(K, 0));
  std::vector<std::vector<int>> n_kw(K, std::vector<int>(V, 0));
  std::vector<int> n_k(K, 0);
  auto& z = model.assignments;
  z.resize(D);
  for (std::size_t d = 0; d < D; ++d) {
    z[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const auto k = std::min(K - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(K)));
      z[d][i] = static_cast<int>(k);
      ++n_dk[d][k];
      ++n_kw[k][static_cast<std::size_t>(words[d][i])];
      ++n_k[k];
    }
  }

  std::vector<std::vector<double>> sum_dk(D, std::vector<double>(K, 0.0));
  std::vector<std::vector<double>> sum_kw(K, std::vector<double>(V, 0.0));
  std::vector<double> sum_k(K, 0.0);
  int samples = 0;
  std::vector<double> cumulative(K);

  for (int it = 1; it <= config.iterations; ++it) {
    for (std::size_t d = 0; d < D; ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const auto w = static_cast<std::size_t>(words[d][i]);
        auto k = static_cast<std::size_t>(z[d][i]);
        --n_dk[d][k];
        --n_kw[k][w];
        --n_k[k];
        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (n_dk[d][t] + a) * (n_kw[t][w] + b) / (n_k[t] + vb);
          cumulative[t] = total;
        }
        const double u = uniform01(rng) * total;
        k = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        k = std::min(k, K - 1);
        z[d][i] = static_cast<int>(k);
        ++n_dk[d][k];
        ++n_kw[k][w];
        ++n_k[k];
      }
    }
    if (it > config.burn_in) {
      ++samples;
      for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t t = 0; t < K; ++t) sum_dk[d][t] += n_dk[d][t];
      }
      for (std::size_t t = 0; t < K; ++t) {
        for (std::size_t w = 0; w < V; ++w) sum_kw[t][w] += n_kw[t][w];
        sum_k[t] += n_k[t];
      }
    }
  }

  const double inv = 1.0 / samples;
  model.doc_topic.assign(D, std::vector<double>(K, 0.0));
  for (std::size_t d = 0; d < D; ++d) {
    const double denom = static_cast<double>(words[d].size()) + static_cast<double>(K) * a;
    double row = 0.0;
    for (std::size_t t = 0; t < K; ++t) {
      model.doc_topic[d][t] = (sum_dk[d][t] * inv + a) / denom;
      row += model.doc_topic[d][t];
    }
    for (auto& p : model.doc_topic[d]) p /= row;
  }
  model.topic_word.assign(K, std::vector<double>(V, 0.0));
  for (std::size_t t = 0; t < K; ++t) {
    const double denom = sum_k[t] * inv + vb;
    double row = 0.0;
    for (std::size_t w = 0; w < V; ++w) {
      model.topic_word[t][w] = (sum_kw[t][w] * inv + b) / denom;
      row += model.topic_word[t][w];
    }
    for (auto& p : model.topic_word[t]) p /= row;
  }
  return model;
}

std::vector<ChapterTopics> story_topics(const TopicModel& model, std::span<const TokenDocument> documents,
                                        std::string_view story_id, int chapter_count) {
  std::vector<ChapterTopics> out(static_cast<std::size_t>(chapter_count));
  for (int c = 0; c < chapter_count; ++c) {
    out[static_cast<std::size_t>(c)].chapter = c + 1;
    out[static_cast<std::size_t>(c)].theta.assign(static_cast<std::size_t>(model.topics),
                                                  1.0 / model.topics);
  }
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const auto& doc = documents[d];
    if (doc.story_id != story_id || doc.chapter < 1 || doc.chapter > chapter_count) continue;
    auto& ch = out[static_cast<std::size_t>(doc.chapter - 1)];
    ch.sentence_of_token = doc.sentence;
    ch.topic_of_token = model.assignments.at(d);
    ch.theta = model.doc_topic.at(d);
  }
  return out;
}

std::vector<double> segment_topics(const ChapterTopics& chapter, int start, int end) {
  std::vector<double> dist(chapter.theta.size(), 0.0);
  double n = 0.0;
  for (std::size_t i = 0; i < chapter.sentence_of_token.size(); ++i) {
    const int s = chapter.sentence_of_token[i];
    if (s < start || s > end) continue;
    dist.at(static_cast<std::size_t>(chapter.topic_of_token[i])) += 1.0;
    n += 1.0;
  }
  if (n == 0.0) return chapter.theta;
  for (auto& p : dist) p /= n;
  return dist;
}

std::vector<double> character_topics(std::span<const std::vector<double>> segment_distributions,
                                     std::span<const int> segment_lengths) {
  if (segment_distributions.empty()) throw NoSegmentsError("character has no segments");
  if (segment_distributions.size() != segment_lengths.size()) {
    throw std::invalid_argument("segment distributions and lengths differ in size");
  }
  const double total = std::accumulate(segment_lengths.begin(), segment_lengths.end(), 0.0);
  std::vector<double> out(segment_distributions.front().size(), 0.0);
  for (std::size_t i = 0; i < segment_distributions.size(); ++i) {
    const double w = segment_lengths[i] / total;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * segment_distributions[i].at(k);
  }
  return out;
}

}  // namespace chargraph
