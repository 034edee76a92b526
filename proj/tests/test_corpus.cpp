#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "chargraph/corpus.hpp"

using namespace chargraph;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("chargraph_corpus_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& rel, const std::string& content) const {
    fs::create_directories((path / rel).parent_path());
    std::ofstream(path / rel) << content;
  }
};

const char* kRoster = R"(characters:
  - id: nagen
    name: "নগেন্দ্র"
    aliases: ["নগেন্দ্র", "নগেন"]
    gender: male
    age_group: A3
    role: protagonist
    family_status: father
  - id: kunda
    name: "কুন্দ"
    aliases: ["কুন্দ"]
    gender: female
    age_group: A1
    role: regular
)";

CorpusErrorKind roster_error(const std::string& yaml) {
  try {
    parse_roster(yaml, "s1");
  } catch (const CorpusError& e) {
    return e.kind();
  }
  FAIL("expected a CorpusError");
  return CorpusErrorKind::malformed;
}

}  // namespace

TEST_CASE("split_sentences keeps terminators") {
  TokenizerConfig cfg;
  const auto s = split_sentences("ক।খ?গ", cfg);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == "ক।");
  CHECK(s[1] == "খ?");
  CHECK(s[2] == "গ");
  CHECK(split_sentences("no terminator here", cfg).size() == 1);
  CHECK(split_sentences("", cfg).empty());
  CHECK(split_sentences(" . ! ", cfg) == std::vector<std::string>{".", "!"});
}

TEST_CASE("closing quotes stay with their sentence") {
  TokenizerConfig cfg;
  const auto s = split_sentences("He said, \"Go!\" She left.", cfg);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == "He said, \"Go!\"");
  CHECK(s[1] == "She left.");
}

TEST_CASE("split_chapters numbers non-empty chapters from 1") {
  TokenizerConfig cfg;
  const auto chapters = split_chapters("A one. A two.\n###\n\n###\nB one.\n", kDefaultChapterDelimiter, cfg);
  REQUIRE(chapters.size() == 2);
  CHECK(chapters[0].index == 1);
  CHECK(chapters[0].length() == 2);
  CHECK(chapters[1].index == 2);
  CHECK(chapters[1].sentences[0] == "B one.");
}

TEST_CASE("roster parsing and validation") {
  const auto r = parse_roster(kRoster, "s1");
  REQUIRE(r.characters.size() == 2);
  CHECK(r.find("nagen")->family_status == FamilyStatus::father);
  CHECK(r.find("kunda")->aliases.front() == "কুন্দ");
  CHECK(r.find("nobody") == nullptr);

  std::string bad_age = kRoster;
  bad_age.replace(bad_age.find("A1"), 2, "A4");
  CHECK(roster_error(bad_age) == CorpusErrorKind::unknown_enum);
  try {
    parse_roster(bad_age, "s1");
  } catch (const CorpusError& e) {
    CHECK(e.field().find("age_group") != std::string::npos);
    CHECK(e.story() == "s1");
  }

  std::string dup = kRoster;
  dup.replace(dup.find("id: kunda"), 9, "id: nagen");
  CHECK(roster_error(dup) == CorpusErrorKind::duplicate_id);

  std::string unknown = kRoster;
  unknown.replace(unknown.find("    role: regular"), 17, "    role: regular\n    mood: calm");
  CHECK(roster_error(unknown) == CorpusErrorKind::unknown_key);

  std::string two_protagonists = kRoster;
  two_protagonists.replace(two_protagonists.find("role: regular"), 13, "role: protagonist");
  CHECK(roster_error(two_protagonists) == CorpusErrorKind::invalid_value);
  CHECK_NOTHROW(parse_roster(two_protagonists + "co_protagonists: true\n", "s1"));

  CHECK(roster_error("characters: [") == CorpusErrorKind::malformed);
  CHECK(roster_error("characters:\n  - id: x\n    gender: male\n") == CorpusErrorKind::missing_field);
}

TEST_CASE("alias matching with suffixes is token anchored") {
  const auto roster = parse_roster(kRoster, "s1");
  TokenizerConfig cfg;
  cfg.suffixes = {"কে", "র"};
  Chapter ch;
  ch.sentences = {"নগেন্দ্রকে দেখে কুন্দ হাসল।", "অনগেন্দ্র এল।", "নগেনের কথা।", "নগেন এবং নগেন্দ্রর বই।"};
  const auto occ = find_occurrences(ch, roster, cfg);
  CHECK(occ.length == 4);
  CHECK(occ.of("nagen").sentences == std::vector<int>{1, 4});
  CHECK(occ.of("nagen").counts == std::vector<int>{1, 2});
  CHECK(occ.of("kunda").sentences == std::vector<int>{1});
  CHECK(occ.active_characters() == 2);
}

TEST_CASE("absent characters get an empty occurrence set") {
  const auto roster = parse_roster(kRoster, "s1");
  Chapter ch;
  ch.sentences = {"কেউ নেই।"};
  const auto occ = find_occurrences(ch, roster, TokenizerConfig{});
  CHECK(occ.of("kunda").sentences.empty());
  CHECK(occ.active_characters() == 0);
}

TEST_CASE("multi-word aliases and case folding") {
  const auto roster = parse_roster(R"(characters:
  - id: hari
    name: Hari
    aliases: [Hari, Uncle Hari]
    gender: male
    age_group: A3
    role: regular
)",
                                   "s");
  Chapter ch;
  ch.sentences = {"UNCLE HARI came.", "hari left.", "Uncle stayed."};
  const auto occ = find_occurrences(ch, roster, TokenizerConfig{});
  CHECK(occ.of("hari").sentences == std::vector<int>{1, 2});
  CHECK(occ.of("hari").counts == std::vector<int>{1, 1});
}

TEST_CASE("shared alias is a load error") {
  const auto roster = parse_roster(R"(characters:
  - id: ram1
    name: "রাম"
    aliases: ["রাম"]
    gender: male
    age_group: A2
    role: regular
  - id: ram2
    name: "রামচন্দ্র"
    aliases: ["রামচন্দ্র", "রাম"]
    gender: male
    age_group: A3
    role: regular
)",
                                   "s");
  try {
    AliasMatcher m(roster, TokenizerConfig{}, "s");
    FAIL("expected alias conflict");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusErrorKind::alias_conflict);
  }
}

TEST_CASE("load_corpus on a one-story manifest") {
  TempDir dir;
  dir.write("texts/s1.txt", "নগেন্দ্র এল। কুন্দ এল।\n###\nনগেন্দ্র গেল।\n");
  dir.write("rosters/s1.yaml", kRoster);
  dir.write("manifest.yaml", R"(writers:
  - id: bc
    name: Writer One
    abbreviation: BC
    career: [1865, 1885]
stories:
  - id: s1
    title: One
    writer: bc
    year: 1873
    genres: [social]
    text: texts/s1.txt
    roster: rosters/s1.yaml
)");
  const auto corpus = load_corpus(dir.path / "manifest.yaml");
  REQUIRE(corpus.stories.size() == 1);
  const auto& s = corpus.stories[0];
  REQUIRE(s.chapters.size() == 2);
  CHECK(s.chapters[0].index == 1);
  CHECK(s.chapters[1].index == 2);
  CHECK(s.total_sentences() == 3);
}

TEST_CASE("manifest validation names story and field") {
  TempDir dir;
  dir.write("texts/s1.txt", "x.");
  dir.write("rosters/s1.yaml", kRoster);
  const std::string head = R"(writers:
  - id: bc
    name: Writer One
    abbreviation: BC
    career: [1865, 1885]
stories:
  - id: s1
    title: One
    writer: bc
    genres: [social]
    roster: rosters/s1.yaml
)";
  dir.write("missing.yaml", head + "    text: texts/none.txt\n");
  try {
    load_corpus(dir.path / "missing.yaml");
    FAIL("expected missing file");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusErrorKind::missing_file);
    CHECK(e.story() == "s1");
  }
  dir.write("year.yaml", head + "    text: texts/s1.txt\n    year: 1900\n");
  try {
    load_corpus(dir.path / "year.yaml");
    FAIL("expected year outside career");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusErrorKind::invalid_value);
    CHECK(e.field() == "stories[0].year");
  }
  dir.write("genre.yaml", R"(stories:
  - id: s1
    title: One
    writer: bc
    genres: [comic]
    text: texts/s1.txt
    roster: rosters/s1.yaml
writers:
  - id: bc
    name: W
    abbreviation: BC
    career: [1865, 1885]
)");
  try {
    load_corpus(dir.path / "genre.yaml");
    FAIL("expected unknown genre");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusErrorKind::unknown_enum);
  }
}

TEST_CASE("dataset-shaped manifest loads with its per-writer story counts") {
  // Five writers with 12, 11, 16, 15 and 14 stories.
  struct W {
    const char* id;
    const char* abbr;
    int start;
    int end;
    int stories;
  };
  const W writers[] = {{"bc", "BC", 1865, 1885, 12},
                       {"rt", "RT", 1883, 1935, 11},
                       {"sc", "SC", 1907, 1940, 16},
                       {"hm", "HM", 1970, 2011, 15},
                       {"sg", "SG", 1965, 2012, 14}};
  TempDir dir;
  dir.write("roster.yaml", kRoster);
  dir.write("story.txt", "নগেন্দ্র এল।");
  std::string yaml = "writers:\n";
  for (const auto& w : writers) {
    yaml += std::string("  - id: ") + w.id + "\n    name: " + w.abbr + "\n    abbreviation: " + w.abbr +
            "\n    career: [" + std::to_string(w.start) + ", " + std::to_string(w.end) + "]\n";
  }
  yaml += "stories:\n";
  for (const auto& w : writers) {
    for (int i = 0; i < w.stories; ++i) {
      yaml += std::string("  - id: ") + w.id + std::to_string(i) + "\n    title: T\n    writer: " + w.id +
              "\n    year: " + std::to_string(w.start + i % (w.end - w.start + 1)) +
              "\n    genres: [social]\n    text: story.txt\n    roster: roster.yaml\n";
    }
  }
  dir.write("manifest.yaml", yaml);
  const auto corpus = load_corpus(dir.path / "manifest.yaml");
  CHECK(corpus.manifest.writers.size() == 5);
  std::map<std::string, int> counts;
  for (const auto& s : corpus.stories) ++counts[s.entry.writer_id];
  CHECK(counts["bc"] == 12);
  CHECK(counts["rt"] == 11);
  CHECK(counts["sc"] == 16);
  CHECK(counts["hm"] == 15);
  CHECK(counts["sg"] == 14);
}

TEST_CASE("occurrence matching ignores roster order") {
  auto roster = parse_roster(kRoster, "s1");
  Chapter ch;
  ch.sentences = {"কুন্দ এল।", "নগেন্দ্র এল।", "কুন্দ আর নগেন।"};
  const auto a = find_occurrences(ch, roster, TokenizerConfig{});
  std::reverse(roster.characters.begin(), roster.characters.end());
  const auto b = find_occurrences(ch, roster, TokenizerConfig{});
  CHECK(a.of("nagen").sentences == b.of("nagen").sentences);
  CHECK(a.of("kunda").sentences == b.of("kunda").sentences);
}
