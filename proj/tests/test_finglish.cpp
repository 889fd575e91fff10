#include <doctest.h>

#include "g2p/finglish.hpp"
#include "g2p/normalize.hpp"
#include "support.hpp"

using namespace g2p;

static const FinglishTable& table() {
  static FinglishTable t = FinglishTable::load(testsupport::data_dir() + "/finglish_rules.tsv");
  return t;
}

TEST_CASE("digraphs parse with longest match") {
  CHECK(render(finglish_to_phonemes("shab", table())) == "Sab");
  CHECK(render(finglish_to_phonemes("chaay", table())) == "CAj");
  CHECK(render(finglish_to_phonemes("khaane", table())) == "xAne");
  CHECK(render(finglish_to_phonemes("zhaale", table())) == "ZAle");
  CHECK(render(finglish_to_phonemes("ghashang", table())) == "qaSang");
  CHECK(render(finglish_to_phonemes("jaan yaar wafaa", table())) == "JAn jAr vafA");
}

TEST_CASE("separators break clusters and disappear") {
  CHECK(render(finglish_to_phonemes("mas-hur", table())) == "mashur");
  CHECK(render(finglish_to_phonemes("mashur", table())) == "maSur");  // sh digraph wins
  CHECK(render(finglish_to_phonemes("mas'hur", table())) == "mashur");
  CHECK(render(finglish_to_phonemes("gol-e zibaa", table())) == "gole zibA");
}

TEST_CASE("unknown clusters raise with position") {
  try {
    finglish_to_phonemes("go& zibaa", table());
    FAIL("expected UnknownCluster");
  } catch (const UnknownCluster& e) {
    CHECK(e.position == 2);
    CHECK(e.cluster == "&");
  }
}

TEST_CASE("rendering picks file-order spellings") {
  CHECK(word_to_finglish(word_from_chars("SAx"), table()) == "shaax");
  CHECK(word_to_finglish(word_from_chars("Jej"), table()) == "jey");
  CHECK(word_to_finglish(word_from_chars("CAq"), table()) == "chaaq");
  CHECK(word_to_finglish(word_from_chars("?u"), table()) == "?u");
}

TEST_CASE("render inserts separators where naive re-parsing would merge") {
  CHECK(word_to_finglish(word_from_chars("mashur"), table()) == "mas-hur");
  CHECK(word_to_finglish(word_from_chars("ashAm"), table()) == "as-haam");
  // S+h needs no separator: "sh" is consumed as the digraph first
  CHECK(word_to_finglish(word_from_chars("maShur"), table()) == "mashhur");
  // adjacent a + A would read as aa + a otherwise
  CHECK(render(finglish_to_phonemes(word_to_finglish(word_from_chars("aA"), table()), table())) ==
        "aA");
}

TEST_CASE("round trip holds on random phoneme strings") {
  std::mt19937 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const PhonemeString ps = testsupport::random_sentence(rng, 4, 7);
    const std::string fin = phonemes_to_finglish(ps, table());
    CHECK(finglish_to_phonemes(fin, table()) == ps);
  }
}

TEST_CASE("rule table rejects duplicate patterns") {
  CHECK_THROWS_AS(FinglishTable::from_rules({{"sh", "S"}, {"sh", "Z"}}), TableError);
  CHECK_THROWS_AS(FinglishTable::from_rules({{"", "S"}}), TableError);
}

TEST_CASE("every bench replay spelling parses to the reference") {
  CHECK(render(finglish_to_phonemes("khaaneye maa bozorg ast", table())) == "xAneje mA bozorg ast");
  CHECK(render(finglish_to_phonemes("ketaab ruye miz ast", table())) == "ketAb ruje miz ast");
  CHECK(render(finglish_to_phonemes("mard sam raa bardaasht", table())) == "mard sam rA bardASt");
}
