#include <doctest.h>

#include <set>

#include "g2p/phoneme.hpp"
#include "support.hpp"

using namespace g2p;

TEST_CASE("inventory has 29 distinct symbols, 6 vowels") {
  const std::string_view inv = Phoneme::inventory();
  CHECK(inv.size() == 29);
  std::set<char> uniq(inv.begin(), inv.end());
  CHECK(uniq.size() == 29);
  std::size_t vowels = 0;
  for (char c : inv) {
    CHECK(Phoneme::is_valid(c));
    if (Phoneme(c).is_vowel()) ++vowels;
  }
  CHECK(vowels == 6);
  CHECK(Phoneme('A').is_vowel());
  CHECK_FALSE(Phoneme('S').is_vowel());
}

TEST_CASE("invalid symbols are rejected") {
  CHECK_FALSE(Phoneme::is_valid('w'));
  CHECK_FALSE(Phoneme::is_valid('y'));
  CHECK_FALSE(Phoneme::is_valid('c'));
  CHECK_FALSE(Phoneme::is_valid('E'));
  CHECK_FALSE(Phoneme::is_valid(' '));
  CHECK_THROWS_AS(Phoneme('w'), std::invalid_argument);
}

TEST_CASE("parse_canonical splits words and strips hyphens") {
  const PhonemeString ps = parse_canonical("in gol-e zibA  ast\n");
  REQUIRE(ps.word_count() == 4);
  CHECK(render_word(ps.word(1)) == "gole");
  CHECK(render(ps) == "in gole zibA ast");
  CHECK(ps.phoneme_count() == 2 + 4 + 4 + 3);
}

TEST_CASE("parse_canonical rejects out-of-inventory symbols with position") {
  try {
    parse_canonical("gol ʃab");
    FAIL("expected UnknownSymbol");
  } catch (const UnknownSymbol& e) {
    CHECK(e.position == 4);
    CHECK(e.symbol == "\xca\x83");  // the ʃ code point
  }
}

TEST_CASE("empty words are impossible") {
  CHECK(parse_canonical("").empty());
  CHECK(parse_canonical("  \t ").empty());
  CHECK_THROWS(PhonemeString({Word{}}));
  // A token of only hyphens produces no word at all.
  CHECK(parse_canonical("- gol").word_count() == 1);
}

TEST_CASE("render and parse are mutually inverse on random sentences") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const PhonemeString ps = testsupport::random_sentence(rng);
    CHECK(parse_canonical(render(ps)) == ps);
  }
}
