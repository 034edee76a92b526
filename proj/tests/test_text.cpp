#include <doctest.h>

#include "chargraph/text.hpp"

using namespace chargraph::text;

TEST_CASE("decode and encode round trip mixed scripts") {
  const std::string s = "Maya মায়া ok";
  CHECK(encode(decode(s)) == s);
  CHECK(codepoint_count("মায়া") == 5);
  CHECK(codepoint_count("") == 0);
}

TEST_CASE("malformed bytes become replacement characters") {
  const std::string bad = "a\xff" "b";
  const auto cps = decode(bad);
  REQUIRE(cps.size() == 3);
  CHECK(cps[1] == U'�');
}

TEST_CASE("case folding leaves caseless scripts alone") {
  CHECK(fold_case("MAYA Devi") == "maya devi");
  CHECK(fold_case("নগেন্দ্র") == "নগেন্দ্র");
}

TEST_CASE("word tokens keep combining marks and drop punctuation") {
  const auto toks = word_tokens("নগেন্দ্রকে দেখে, Maya's boat!", true);
  REQUIRE(toks.size() == 5);
  CHECK(toks[0] == "নগেন্দ্রকে");
  CHECK(toks[1] == "দেখে");
  CHECK(toks[2] == "maya");
  CHECK(toks[3] == "s");
  CHECK(toks[4] == "boat");
  CHECK(word_tokens("  ,.;  ", true).empty());
}

TEST_CASE("whitespace normalization") {
  CHECK(normalize_space("  a \t b\n\nc  ") == "a b c");
  CHECK(normalize_space("") == "");
  CHECK(trim_ascii("  x y ") == "x y");
}
