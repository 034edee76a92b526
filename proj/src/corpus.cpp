#include "chargraph/corpus.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <initializer_list>
#include <numeric>
#include <regex>
#include <sstream>

#include "chargraph/text.hpp"

namespace chargraph {

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view s, const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

constexpr std::array kGenders{Gender::male, Gender::female};
constexpr std::array kAgeGroups{AgeGroup::A1, AgeGroup::A2, AgeGroup::A3};
constexpr std::array kRoles{Role::protagonist, Role::antagonist, Role::regular};
constexpr std::array kFamily{FamilyStatus::father, FamilyStatus::mother, FamilyStatus::uncle,
                             FamilyStatus::aunt,   FamilyStatus::brother, FamilyStatus::other,
                             FamilyStatus::none};
constexpr std::array kSocial{SocialStatus::poor, SocialStatus::wealthy, SocialStatus::landlord,
                             SocialStatus::other};
constexpr std::array kGenres{Genre::social, Genre::political, Genre::romantic, Genre::historical};

std::string read_file(const std::filesystem::path& path, std::string_view story, std::string_view field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CorpusError(CorpusErrorKind::missing_file, std::string(story), std::string(field),
                      "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Field/story context for YAML helpers.
struct Ctx {
  std::string story;
  std::string prefix;

  std::string field(std::string_view key) const {
    return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
  }
};

void reject_unknown_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                         const Ctx& ctx) {
  if (!node.IsMap()) {
    throw CorpusError(CorpusErrorKind::malformed, ctx.story, ctx.prefix, "expected a mapping");
  }
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw CorpusError(CorpusErrorKind::unknown_key, ctx.story, ctx.field(key), "unknown key");
    }
  }
}

std::string scalar(const YAML::Node& node, std::string_view key, const Ctx& ctx) {
  if (!node.IsScalar()) {
    throw CorpusError(CorpusErrorKind::malformed, ctx.story, ctx.field(key), "expected a scalar");
  }
  return node.as<std::string>();
}

std::string required_string(const YAML::Node& parent, std::string_view key, const Ctx& ctx) {
  const auto node = parent[std::string(key)];
  if (!node) {
    throw CorpusError(CorpusErrorKind::missing_field, ctx.story, ctx.field(key), "required field missing");
  }
  auto value = scalar(node, key, ctx);
  if (text::trim_ascii(value).empty()) {
    throw CorpusError(CorpusErrorKind::invalid_value, ctx.story, ctx.field(key), "must not be blank");
  }
  return value;
}

std::optional<std::string> optional_string(const YAML::Node& parent, std::string_view key,
                                           const Ctx& ctx) {
  const auto node = parent[std::string(key)];
  if (!node || node.IsNull()) return std::nullopt;
  return scalar(node, key, ctx);
}

int as_int(const YAML::Node& node, std::string_view key, const Ctx& ctx) {
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    throw CorpusError(CorpusErrorKind::invalid_value, ctx.story, ctx.field(key), "expected an integer");
  }
}

bool as_bool(const YAML::Node& node, std::string_view key, const Ctx& ctx) {
  try {
    return node.as<bool>();
  } catch (const YAML::Exception&) {
    throw CorpusError(CorpusErrorKind::invalid_value, ctx.story, ctx.field(key), "expected a boolean");
  }
}

std::vector<std::string> string_list(const YAML::Node& node, std::string_view key, const Ctx& ctx) {
  if (!node.IsSequence()) {
    throw CorpusError(CorpusErrorKind::malformed, ctx.story, ctx.field(key), "expected a list");
  }
  std::vector<std::string> out;
  for (const auto& item : node) out.push_back(scalar(item, key, ctx));
  return out;
}

template <typename Enum, std::size_t N>
Enum required_enum(const YAML::Node& parent, std::string_view key, const std::array<Enum, N>& values,
                   const Ctx& ctx) {
  const auto raw = required_string(parent, key, ctx);
  if (auto v = parse_enum(raw, values)) return *v;
  throw CorpusError(CorpusErrorKind::unknown_enum, ctx.story, ctx.field(key),
                    "unknown value '" + raw + "'");
}

template <typename Enum, std::size_t N>
std::optional<Enum> optional_enum(const YAML::Node& parent, std::string_view key,
                                  const std::array<Enum, N>& values, const Ctx& ctx) {
  const auto raw = optional_string(parent, key, ctx);
  if (!raw) return std::nullopt;
  if (auto v = parse_enum(*raw, values)) return v;
  throw CorpusError(CorpusErrorKind::unknown_enum, ctx.story, ctx.field(key),
                    "unknown value '" + *raw + "'");
}

bool valid_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-' || c == '.';
  });
}

void require_id(std::string_view id, std::string_view key, const Ctx& ctx) {
  if (!valid_id(id)) {
    throw CorpusError(CorpusErrorKind::invalid_value, ctx.story, ctx.field(key),
                      "id '" + std::string(id) + "' must match [A-Za-z0-9_.-]+");
  }
}

YAML::Node parse_yaml(std::string_view source, std::string_view story, std::string_view what) {
  try {
    return YAML::Load(std::string(source));
  } catch (const YAML::Exception& e) {
    throw CorpusError(CorpusErrorKind::malformed, std::string(story), std::string(what), e.what());
  }
}

CharacterRecord parse_character(const YAML::Node& node, const Ctx& ctx) {
  reject_unknown_keys(node, {"id", "name", "aliases", "gender", "age_group", "role", "family_status",
                             "religion", "social_status"},
                      ctx);
  CharacterRecord c;
  c.id = required_string(node, "id", ctx);
  require_id(c.id, "id", ctx);
  c.canonical_name = text::normalize_space(required_string(node, "name", ctx));
  if (const auto aliases = node["aliases"]) {
    for (auto& alias : string_list(aliases, "aliases", ctx)) {
      auto cleaned = text::normalize_space(alias);
      if (cleaned.empty()) {
        throw CorpusError(CorpusErrorKind::invalid_value, ctx.story, ctx.field("aliases"),
                          "alias must not be blank");
      }
      if (std::find(c.aliases.begin(), c.aliases.end(), cleaned) == c.aliases.end()) {
        c.aliases.push_back(std::move(cleaned));
      }
    }
  }
  if (std::find(c.aliases.begin(), c.aliases.end(), c.canonical_name) == c.aliases.end()) {
    c.aliases.insert(c.aliases.begin(), c.canonical_name);
  }
  c.gender = required_enum(node, "gender", kGenders, ctx);
  c.age_group = required_enum(node, "age_group", kAgeGroups, ctx);
  c.role = required_enum(node, "role", kRoles, ctx);
  c.family_status = optional_enum(node, "family_status", kFamily, ctx);
  c.religion = optional_string(node, "religion", ctx);
  c.social_status = optional_enum(node, "social_status", kSocial, ctx);
  return c;
}

TokenizerConfig parse_tokenizer(const YAML::Node& node, const Ctx& ctx) {
  reject_unknown_keys(node, {"terminators", "closers", "suffixes", "case_insensitive"}, ctx);
  TokenizerConfig cfg;
  if (const auto n = node["terminators"]) {
    cfg.terminators = string_list(n, "terminators", ctx);
    if (cfg.terminators.empty() ||
        std::any_of(cfg.terminators.begin(), cfg.terminators.end(), [](auto& t) { return t.empty(); })) {
      throw CorpusError(CorpusErrorKind::invalid_value, ctx.story, ctx.field("terminators"),
                        "terminators must be non-empty strings");
    }
  }
  if (const auto n = node["closers"]) cfg.closers = string_list(n, "closers", ctx);
  if (const auto n = node["suffixes"]) cfg.suffixes = string_list(n, "suffixes", ctx);
  if (const auto n = node["case_insensitive"]) cfg.case_insensitive = as_bool(n, "case_insensitive", ctx);
  return cfg;
}

}  // namespace

// --- enums -------------------------------------------------------------

std::string_view to_string(Gender g) { return g == Gender::male ? "male" : "female"; }
std::string_view gender_code(Gender g) { return g == Gender::male ? "M" : "F"; }

std::string_view to_string(AgeGroup a) {
  switch (a) {
    case AgeGroup::A1: return "A1";
    case AgeGroup::A2: return "A2";
    case AgeGroup::A3: return "A3";
  }
  return "?";
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::protagonist: return "protagonist";
    case Role::antagonist: return "antagonist";
    case Role::regular: return "regular";
  }
  return "?";
}

std::string_view to_string(FamilyStatus f) {
  switch (f) {
    case FamilyStatus::father: return "father";
    case FamilyStatus::mother: return "mother";
    case FamilyStatus::uncle: return "uncle";
    case FamilyStatus::aunt: return "aunt";
    case FamilyStatus::brother: return "brother";
    case FamilyStatus::other: return "other";
    case FamilyStatus::none: return "none";
  }
  return "?";
}

std::string_view to_string(SocialStatus s) {
  switch (s) {
    case SocialStatus::poor: return "poor";
    case SocialStatus::wealthy: return "wealthy";
    case SocialStatus::landlord: return "landlord";
    case SocialStatus::other: return "other";
  }
  return "?";
}

std::string_view to_string(Genre g) {
  switch (g) {
    case Genre::social: return "social";
    case Genre::political: return "political";
    case Genre::romantic: return "romantic";
    case Genre::historical: return "historical";
  }
  return "?";
}

std::optional<Gender> parse_gender(std::string_view s) { return parse_enum(s, kGenders); }
std::optional<AgeGroup> parse_age_group(std::string_view s) { return parse_enum(s, kAgeGroups); }
std::optional<Role> parse_role(std::string_view s) { return parse_enum(s, kRoles); }
std::optional<FamilyStatus> parse_family_status(std::string_view s) { return parse_enum(s, kFamily); }
std::optional<SocialStatus> parse_social_status(std::string_view s) { return parse_enum(s, kSocial); }
std::optional<Genre> parse_genre(std::string_view s) { return parse_enum(s, kGenres); }

std::string_view to_string(CorpusErrorKind k) {
  switch (k) {
    case CorpusErrorKind::missing_file: return "missing file";
    case CorpusErrorKind::malformed: return "malformed";
    case CorpusErrorKind::unknown_key: return "unknown key";
    case CorpusErrorKind::missing_field: return "missing field";
    case CorpusErrorKind::unknown_enum: return "unknown enum value";
    case CorpusErrorKind::duplicate_id: return "duplicate id";
    case CorpusErrorKind::alias_conflict: return "alias conflict";
    case CorpusErrorKind::invalid_value: return "invalid value";
  }
  return "?";
}

namespace {
std::string format_error(CorpusErrorKind kind, const std::string& story, const std::string& field,
                         const std::string& detail) {
  std::string msg(to_string(kind));
  if (!story.empty()) msg += " [story " + story + "]";
  if (!field.empty()) msg += " [field " + field + "]";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}
}  // namespace

CorpusError::CorpusError(CorpusErrorKind kind, std::string story, std::string field,
                         const std::string& detail)
    : std::runtime_error(format_error(kind, story, field, detail)),
      kind_(kind),
      story_(std::move(story)),
      field_(std::move(field)) {}

// --- model lookups -----------------------------------------------------

const CharacterRecord* Roster::find(std::string_view id) const {
  for (const auto& c : characters) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const WriterEntry* CorpusManifest::writer(std::string_view id) const {
  for (const auto& w : writers) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

int Story::total_sentences() const noexcept {
  int total = 0;
  for (const auto& ch : chapters) total += ch.length();
  return total;
}

// --- YAML ingestion ----------------------------------------------------

Roster parse_roster(std::string_view yaml, std::string_view story) {
  const Ctx root{std::string(story), "roster"};
  const auto doc = parse_yaml(yaml, story, "roster");
  reject_unknown_keys(doc, {"characters", "co_protagonists"}, root);

  Roster roster;
  if (const auto n = doc["co_protagonists"]) roster.co_protagonists = as_bool(n, "co_protagonists", root);
  const auto chars = doc["characters"];
  if (!chars || !chars.IsSequence() || chars.size() == 0) {
    throw CorpusError(CorpusErrorKind::missing_field, root.story, "roster.characters",
                      "a non-empty character list is required");
  }
  std::set<std::string> ids;
  std::size_t i = 0;
  for (const auto& node : chars) {
    const Ctx ctx{root.story, "roster.characters[" + std::to_string(i++) + "]"};
    auto record = parse_character(node, ctx);
    if (!ids.insert(record.id).second) {
      throw CorpusError(CorpusErrorKind::duplicate_id, ctx.story, ctx.field("id"),
                        "character id '" + record.id + "' repeated");
    }
    roster.characters.push_back(std::move(record));
  }
  const auto protagonists = std::count_if(roster.characters.begin(), roster.characters.end(),
                                          [](const auto& c) { return c.role == Role::protagonist; });
  if (protagonists > 1 && !roster.co_protagonists) {
    throw CorpusError(CorpusErrorKind::invalid_value, root.story, "roster.characters.role",
                      "more than one protagonist; set co_protagonists: true to allow");
  }
  return roster;
}

Roster load_roster(const std::filesystem::path& path, std::string_view story) {
  return parse_roster(read_file(path, story, "roster"), story);
}

CorpusManifest parse_manifest(std::string_view yaml, const std::filesystem::path& base_dir) {
  const Ctx root{"", ""};
  const auto doc = parse_yaml(yaml, "", "manifest");
  reject_unknown_keys(doc, {"chapter_delimiter", "tokenizer", "writers", "stories"}, root);

  CorpusManifest m;
  m.base_dir = base_dir;
  if (auto delim = optional_string(doc, "chapter_delimiter", root)) {
    try {
      std::regex probe(*delim, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw CorpusError(CorpusErrorKind::invalid_value, "", "chapter_delimiter", e.what());
    }
    m.chapter_delimiter = *delim;
  }
  if (const auto n = doc["tokenizer"]) m.tokenizer = parse_tokenizer(n, Ctx{"", "tokenizer"});

  const auto writers = doc["writers"];
  if (!writers || !writers.IsSequence()) {
    throw CorpusError(CorpusErrorKind::missing_field, "", "writers", "a writer list is required");
  }
  std::size_t i = 0;
  for (const auto& node : writers) {
    const Ctx ctx{"", "writers[" + std::to_string(i++) + "]"};
    reject_unknown_keys(node, {"id", "name", "abbreviation", "career"}, ctx);
    WriterEntry w;
    w.id = required_string(node, "id", ctx);
    require_id(w.id, "id", ctx);
    w.name = required_string(node, "name", ctx);
    w.abbreviation = optional_string(node, "abbreviation", ctx).value_or(w.id);
    if (const auto career = node["career"]) {
      if (!career.IsSequence() || career.size() != 2) {
        throw CorpusError(CorpusErrorKind::malformed, "", ctx.field("career"), "expected [start, end]");
      }
      w.career_start = as_int(career[0], "career", ctx);
      w.career_end = as_int(career[1], "career", ctx);
      if (*w.career_start > *w.career_end) {
        throw CorpusError(CorpusErrorKind::invalid_value, "", ctx.field("career"), "start after end");
      }
    }
    if (m.writer(w.id)) {
      throw CorpusError(CorpusErrorKind::duplicate_id, "", ctx.field("id"), "writer '" + w.id + "' repeated");
    }
    m.writers.push_back(std::move(w));
  }

  const auto stories = doc["stories"];
  if (!stories || !stories.IsSequence()) {
    throw CorpusError(CorpusErrorKind::missing_field, "", "stories", "a story list is required");
  }
  std::set<std::string> story_ids;
  i = 0;
  for (const auto& node : stories) {
    Ctx ctx{"", "stories[" + std::to_string(i++) + "]"};
    reject_unknown_keys(node, {"id", "title", "writer", "year", "genres", "text", "roster"}, ctx);
    StoryEntry s;
    s.id = required_string(node, "id", ctx);
    require_id(s.id, "id", ctx);
    ctx.story = s.id;
    if (!story_ids.insert(s.id).second) {
      throw CorpusError(CorpusErrorKind::duplicate_id, s.id, ctx.field("id"), "story id repeated");
    }
    s.title = optional_string(node, "title", ctx).value_or(s.id);
    s.writer_id = required_string(node, "writer", ctx);
    const auto* writer = m.writer(s.writer_id);
    if (!writer) {
      throw CorpusError(CorpusErrorKind::invalid_value, s.id, ctx.field("writer"),
                        "unknown writer '" + s.writer_id + "'");
    }
    if (const auto year = node["year"]; year && !year.IsNull()) {
      s.year = as_int(year, "year", ctx);
      if (writer->career_start && (*s.year < *writer->career_start || *s.year > *writer->career_end)) {
        throw CorpusError(CorpusErrorKind::invalid_value, s.id, ctx.field("year"),
                          "publication year outside the writer's career span");
      }
    }
    if (const auto genres = node["genres"]) {
      for (const auto& g : string_list(genres, "genres", ctx)) {
        const auto genre = parse_genre(g);
        if (!genre) {
          throw CorpusError(CorpusErrorKind::unknown_enum, s.id, ctx.field("genres"),
                            "unknown value '" + g + "'");
        }
        s.genres.insert(*genre);
      }
    }
    s.text_path = base_dir / required_string(node, "text", ctx);
    s.roster_path = base_dir / required_string(node, "roster", ctx);
    m.stories.push_back(std::move(s));
  }
  return m;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path, "", "manifest"), path.parent_path());
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
  Corpus corpus;
  corpus.manifest = load_manifest(manifest_path);
  for (const auto& entry : corpus.manifest.stories) {
    Story story;
    story.entry = entry;
    story.roster = load_roster(entry.roster_path, entry.id);
    AliasMatcher probe(story.roster, corpus.manifest.tokenizer, entry.id);
    const auto text = read_file(entry.text_path, entry.id, "text");
    story.chapters = split_chapters(text, corpus.manifest.chapter_delimiter, corpus.manifest.tokenizer);
    if (story.chapters.empty()) {
      throw CorpusError(CorpusErrorKind::invalid_value, entry.id, "text", "story contains no sentences");
    }
    corpus.stories.push_back(std::move(story));
  }
  return corpus;
}

// --- text splitting ----------------------------------------------------

namespace {
std::size_t match_any(std::string_view text, std::size_t pos, std::span<const std::string> needles) {
  std::size_t best = 0;
  for (const auto& n : needles) {
    if (!n.empty() && n.size() > best && text.compare(pos, n.size(), n) == 0) best = n.size();
  }
  return best;
}

std::size_t utf8_step(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}
}  // namespace

std::vector<std::string> split_sentences(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> sentences;
  std::string current;
  auto emit = [&] {
    auto cleaned = text::normalize_space(current);
    current.clear();
    if (!cleaned.empty()) sentences.push_back(std::move(cleaned));
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (const auto n = match_any(text, i, config.terminators)) {
      current.append(text.substr(i, n));
      i += n;
      while (i < text.size()) {
        auto m = match_any(text, i, config.terminators);
        if (!m) m = match_any(text, i, config.closers);
        if (!m) break;
        current.append(text.substr(i, m));
        i += m;
      }
      emit();
      continue;
    }
    const auto step = std::min(utf8_step(static_cast<unsigned char>(text[i])), text.size() - i);
    current.append(text.substr(i, step));
    i += step;
  }
  emit();
  return sentences;
}

std::vector<Chapter> split_chapters(std::string_view text, std::string_view delimiter_pattern,
                                    const TokenizerConfig& config) {
  const std::regex delimiter{std::string(delimiter_pattern), std::regex::ECMAScript};
  std::vector<Chapter> chapters;
  std::string buffer;
  auto close_chapter = [&] {
    auto sentences = split_sentences(buffer, config);
    buffer.clear();
    if (sentences.empty()) return;
    Chapter ch;
    ch.index = static_cast<int>(chapters.size()) + 1;
    ch.sentences = std::move(sentences);
    chapters.push_back(std::move(ch));
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::regex_match(line, delimiter)) {
      close_chapter();
    } else {
      buffer += line;
      buffer += '\n';
    }
    pos = end + 1;
  }
  close_chapter();
  return chapters;
}

// --- occurrences -------------------------------------------------------

bool CharacterOccurrences::contains(int sentence) const {
  return std::binary_search(sentences.begin(), sentences.end(), sentence);
}

int CharacterOccurrences::count_at(int sentence) const {
  const auto it = std::lower_bound(sentences.begin(), sentences.end(), sentence);
  if (it == sentences.end() || *it != sentence) return 0;
  return counts[static_cast<std::size_t>(it - sentences.begin())];
}

int CharacterOccurrences::total_count() const { return std::accumulate(counts.begin(), counts.end(), 0); }

const CharacterOccurrences& OccurrenceMatrix::of(const std::string& id) const {
  static const CharacterOccurrences kEmpty;
  const auto it = by_character.find(id);
  return it == by_character.end() ? kEmpty : it->second;
}

bool OccurrenceMatrix::present(const std::string& id, int sentence) const {
  return of(id).contains(sentence);
}

int OccurrenceMatrix::active_characters() const {
  return static_cast<int>(std::count_if(by_character.begin(), by_character.end(),
                                        [](const auto& kv) { return !kv.second.sentences.empty(); }));
}

AliasMatcher::AliasMatcher(const Roster& roster, const TokenizerConfig& config, std::string_view story)
    : roster_(&roster), fold_(config.case_insensitive) {
  for (const auto& s : config.suffixes) {
    auto folded = fold_ ? text::fold_case(s) : s;
    if (!folded.empty()) suffixes_.push_back(std::move(folded));
  }
  // Longest suffix first so stripping is unambiguous.
  std::sort(suffixes_.begin(), suffixes_.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });

  std::map<std::vector<std::string>, std::size_t> owner;
  for (std::size_t c = 0; c < roster.characters.size(); ++c) {
    for (const auto& alias : roster.characters[c].aliases) {
      auto tokens = text::word_tokens(alias, fold_);
      if (tokens.empty()) {
        throw CorpusError(CorpusErrorKind::invalid_value, std::string(story),
                          "roster." + roster.characters[c].id + ".aliases",
                          "alias '" + alias + "' contains no word characters");
      }
      const auto [it, inserted] = owner.emplace(tokens, c);
      if (!inserted) {
        if (it->second == c) continue;
        throw CorpusError(CorpusErrorKind::alias_conflict, std::string(story),
                          "roster." + roster.characters[c].id + ".aliases",
                          "alias '" + alias + "' also belongs to '" +
                              roster.characters[it->second].id + "'");
      }
      for (const auto& t : tokens) name_tokens_.insert(t);
      by_first_token_[tokens.front()].push_back(aliases_.size());
      aliases_.push_back(Alias{std::move(tokens), c});
    }
  }
}

bool AliasMatcher::alias_matches_at(const Alias& alias, std::span<const std::string> tokens,
                                    std::size_t pos, bool allow_suffix) const {
  const auto k = alias.tokens.size();
  if (pos + k > tokens.size()) return false;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (tokens[pos + j] != alias.tokens[j]) return false;
  }
  const auto& last = tokens[pos + k - 1];
  const auto& want = alias.tokens.back();
  if (last == want) return true;
  if (!allow_suffix || last.size() <= want.size() || last.compare(0, want.size(), want) != 0) return false;
  const std::string_view rest = std::string_view(last).substr(want.size());
  return std::find(suffixes_.begin(), suffixes_.end(), rest) != suffixes_.end();
}

std::vector<int> AliasMatcher::count_matches(std::span<const std::string> tokens) const {
  const auto n_chars = roster_->characters.size();
  std::vector<int> counts(n_chars, 0);
  std::vector<std::size_t> next_free(n_chars, 0);
  std::vector<std::size_t> best_len(n_chars);
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    std::fill(best_len.begin(), best_len.end(), 0);
    auto consider = [&](const std::string& key, bool allow_suffix) {
      const auto it = by_first_token_.find(key);
      if (it == by_first_token_.end()) return;
      for (auto a : it->second) {
        const auto& alias = aliases_[a];
        if (alias_matches_at(alias, tokens, pos, allow_suffix)) {
          best_len[alias.character] = std::max(best_len[alias.character], alias.tokens.size());
        }
      }
    };
    // Multi-token aliases start with an exact token; single-token aliases
    // may carry a suffix on that same token.
    consider(tokens[pos], true);
    bool exact_hit = std::any_of(best_len.begin(), best_len.end(), [](auto v) { return v > 0; });
    if (!exact_hit) {
      for (const auto& suffix : suffixes_) {
        const auto& tok = tokens[pos];
        if (tok.size() > suffix.size() && tok.compare(tok.size() - suffix.size(), suffix.size(), suffix) == 0) {
          consider(tok.substr(0, tok.size() - suffix.size()), true);
        }
      }
    }
    for (std::size_t c = 0; c < n_chars; ++c) {
      if (best_len[c] > 0 && pos >= next_free[c]) {
        ++counts[c];
        next_free[c] = pos + best_len[c];
      }
    }
  }
  return counts;
}

bool AliasMatcher::is_name_token(std::string_view token) const {
  if (name_tokens_.find(token) != name_tokens_.end()) return true;
  for (const auto& suffix : suffixes_) {
    if (token.size() > suffix.size() && token.substr(token.size() - suffix.size()) == suffix &&
        name_tokens_.find(token.substr(0, token.size() - suffix.size())) != name_tokens_.end()) {
      return true;
    }
  }
  return false;
}

OccurrenceMatrix find_occurrences(const Chapter& chapter, const AliasMatcher& matcher) {
  OccurrenceMatrix m;
  m.length = chapter.length();
  const auto& roster = matcher.roster();
  for (const auto& c : roster.characters) m.by_character[c.id];
  for (int s = 1; s <= chapter.length(); ++s) {
    const auto tokens = text::word_tokens(chapter.sentences[static_cast<std::size_t>(s - 1)],
                                          matcher.case_insensitive());
    const auto counts = matcher.count_matches(tokens);
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] == 0) continue;
      auto& occ = m.by_character[roster.characters[c].id];
      occ.sentences.push_back(s);
      occ.counts.push_back(counts[c]);
    }
  }
  return m;
}

OccurrenceMatrix find_occurrences(const Chapter& chapter, const Roster& roster,
                                  const TokenizerConfig& config) {
  AliasMatcher matcher(roster, config);
  return find_occurrences(chapter, matcher);
}

}  // namespace chargraph
