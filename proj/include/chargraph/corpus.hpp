// Corpus model: manifests, character rosters, chapters, sentence splitting
// and character occurrence matching.
#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chargraph {

enum class Gender { male, female };
enum class AgeGroup { A1, A2, A3 };  // <20, 20-40, >40
enum class Role { protagonist, antagonist, regular };
enum class FamilyStatus { father, mother, uncle, aunt, brother, other, none };
enum class SocialStatus { poor, wealthy, landlord, other };
enum class Genre { social, political, romantic, historical };

std::string_view to_string(Gender g);
std::string_view to_string(AgeGroup a);
std::string_view to_string(Role r);
std::string_view to_string(FamilyStatus f);
std::string_view to_string(SocialStatus s);
std::string_view to_string(Genre g);
/// "M" / "F".
std::string_view gender_code(Gender g);

std::optional<Gender> parse_gender(std::string_view s);
std::optional<AgeGroup> parse_age_group(std::string_view s);
std::optional<Role> parse_role(std::string_view s);
std::optional<FamilyStatus> parse_family_status(std::string_view s);
std::optional<SocialStatus> parse_social_status(std::string_view s);
std::optional<Genre> parse_genre(std::string_view s);

enum class CorpusErrorKind {
  missing_file,
  malformed,
  unknown_key,
  missing_field,
  unknown_enum,
  duplicate_id,
  alias_conflict,
  invalid_value,
};

std::string_view to_string(CorpusErrorKind k);

/// Validation failure while ingesting a manifest, roster or story text.
/// `story` is empty for manifest-level problems.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(CorpusErrorKind kind, std::string story, std::string field, const std::string& detail);

  CorpusErrorKind kind() const noexcept { return kind_; }
  const std::string& story() const noexcept { return story_; }
  const std::string& field() const noexcept { return field_; }

 private:
  CorpusErrorKind kind_;
  std::string story_;
  std::string field_;
};

struct CharacterRecord {
  std::string id;
  std::string canonical_name;
  std::vector<std::string> aliases;  // always contains canonical_name
  Gender gender = Gender::male;
  AgeGroup age_group = AgeGroup::A2;
  Role role = Role::regular;
  std::optional<FamilyStatus> family_status;
  std::optional<std::string> religion;
  std::optional<SocialStatus> social_status;

  /// Family-flagged means family_status present and not `none`.
  bool family_flagged() const noexcept {
    return family_status.has_value() && *family_status != FamilyStatus::none;
  }
};

struct Roster {
  std::vector<CharacterRecord> characters;
  bool co_protagonists = false;

  const CharacterRecord* find(std::string_view id) const;
};

struct TokenizerConfig {
  std::vector<std::string> terminators{"।", "?", "!", "."};
  std::vector<std::string> closers{"\"", "”", "’", ")"};
  std::vector<std::string> suffixes;
  bool case_insensitive = true;
};

struct WriterEntry {
  std::string id;
  std::string name;
  std::string abbreviation;
  std::optional<int> career_start;
  std::optional<int> career_end;
};

struct StoryEntry {
  std::string id;
  std::string title;
  std::string writer_id;
  std::optional<int> year;
  std::set<Genre> genres;
  std::filesystem::path text_path;
  std::filesystem::path roster_path;
};

inline constexpr std::string_view kDefaultChapterDelimiter = R"(^\s*###\s*$)";

struct CorpusManifest {
  std::vector<WriterEntry> writers;
  std::vector<StoryEntry> stories;
  std::string chapter_delimiter{kDefaultChapterDelimiter};
  TokenizerConfig tokenizer;
  std::filesystem::path base_dir;

  const WriterEntry* writer(std::string_view id) const;
};

struct Chapter {
  int index = 1;  // 1-based
  std::vector<std::string> sentences;

  int length() const noexcept { return static_cast<int>(sentences.size()); }
};

struct Story {
  StoryEntry entry;
  Roster roster;
  std::vector<Chapter> chapters;

  int total_sentences() const noexcept;
};

struct Corpus {
  CorpusManifest manifest;
  std::vector<Story> stories;
};

/// Parses a manifest (YAML) without touching story files. Relative paths are
/// resolved against the manifest's directory.
CorpusManifest parse_manifest(std::string_view yaml, const std::filesystem::path& base_dir);
CorpusManifest load_manifest(const std::filesystem::path& path);

/// Parses one roster (YAML). `story` is only used in diagnostics.
Roster parse_roster(std::string_view yaml, std::string_view story);
Roster load_roster(const std::filesystem::path& path, std::string_view story);

/// Loads the manifest, every roster and every story text. Alias conflicts
/// are detected here.
Corpus load_corpus(const std::filesystem::path& manifest_path);

/// Splits on the terminator set. Terminators (and any directly following
/// terminators or closers) stay with their sentence; empty sentences are
/// never emitted.
std::vector<std::string> split_sentences(std::string_view text, const TokenizerConfig& config);

/// Splits story text on lines matching `delimiter_pattern` (ECMAScript regex
/// applied per line) and sentence-splits each chapter. Chapters without any
/// sentence are dropped; the rest are numbered from 1.
std::vector<Chapter> split_chapters(std::string_view text, std::string_view delimiter_pattern,
                                    const TokenizerConfig& config);

/// Occurrences of one character in a chapter. `sentences` is sorted and
/// duplicate-free (1-based); `counts[k]` is the number of alias matches in
/// `sentences[k]`.
struct CharacterOccurrences {
  std::vector<int> sentences;
  std::vector<int> counts;

  bool contains(int sentence) const;
  int count_at(int sentence) const;
  int total_count() const;
};

struct OccurrenceMatrix {
  int length = 0;  // chapter length L
  std::map<std::string, CharacterOccurrences> by_character;

  const CharacterOccurrences& of(const std::string& id) const;
  bool present(const std::string& id, int sentence) const;
  /// Characters with at least one occurrence.
  int active_characters() const;
};

/// Token-anchored alias matcher: a token matches an alias when it equals the
/// alias or the alias followed by one configured suffix. Multi-word aliases
/// match a token sequence whose last token may carry the suffix.
class AliasMatcher {
 public:
  /// Throws CorpusError(alias_conflict) when two characters share an alias.
  AliasMatcher(const Roster& roster, const TokenizerConfig& config, std::string_view story = {});

  const Roster& roster() const noexcept { return *roster_; }
  bool case_insensitive() const noexcept { return fold_; }

  /// Per character index (roster order), number of matches in the tokens.
  std::vector<int> count_matches(std::span<const std::string> tokens) const;

  /// True when the (already folded) token is part of any alias, with or
  /// without a suffix.
  bool is_name_token(std::string_view token) const;

 private:
  struct Alias {
    std::vector<std::string> tokens;
    std::size_t character;
  };

  bool alias_matches_at(const Alias& alias, std::span<const std::string> tokens, std::size_t pos,
                        bool allow_suffix) const;

  const Roster* roster_;
  bool fold_;
  std::vector<std::string> suffixes_;
  std::vector<Alias> aliases_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_token_;
  std::set<std::string, std::less<>> name_tokens_;
};

OccurrenceMatrix find_occurrences(const Chapter& chapter, const AliasMatcher& matcher);
OccurrenceMatrix find_occurrences(const Chapter& chapter, const Roster& roster,
                                  const TokenizerConfig& config);

}  // namespace chargraph
