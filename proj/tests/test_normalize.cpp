#include <doctest.h>

#include "g2p/normalize.hpp"
#include "support.hpp"

using namespace g2p;

static const NormalizationTable& table() {
  static NormalizationTable t = NormalizationTable::load(testsupport::data_dir() + "/normalization.tsv");
  return t;
}

TEST_CASE("IPA-flavoured text maps onto the canonical notation") {
  const NormalizedText n = normalize_raw("ʔin ɡole zibɑst", table());
  CHECK(render(n.phonemes) == "?in gole zibAst");
  CHECK(n.dropped == 0);
}

TEST_CASE("stress and length marks vanish, diacritics fold") {
  CHECK(render(normalize_raw("keˈtɑːb", table()).phonemes) == "ketAb");
  CHECK(render(normalize_raw("šab", table()).phonemes) == "Sab");
  CHECK(render(normalize_raw("xāne", table()).phonemes) == "xAne");
  CHECK(render(normalize_raw("t͡ʃeʃm", table()).phonemes) == "CeSm");
  CHECK(render(normalize_raw("dʒavɑn", table()).phonemes) == "JavAn");
}

TEST_CASE("stray uppercase folds but canonical capitals survive") {
  CHECK(render(normalize_raw("KetAb", table()).phonemes) == "ketAb");
  CHECK(render(normalize_raw("SAB", table()).phonemes) == "SAb");
  CHECK(render(normalize_raw("YAR", table()).phonemes) == "jAr");
}

TEST_CASE("canonical text is a fixed point") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const PhonemeString ps = testsupport::random_sentence(rng);
    const NormalizedText n = normalize_raw(render(ps), table());
    CHECK(n.phonemes == ps);
    CHECK(n.dropped == 0);
  }
}

TEST_CASE("unknown code points are dropped and counted, never fatal") {
  const NormalizedText n = normalize_raw("գgol β7", table());
  CHECK(render(n.phonemes) == "gol");
  CHECK(n.dropped == 3);
}

TEST_CASE("declared sources normalize without drops") {
  const NormalizationTable& t = table();
  for (const std::string& src : t.declared_sources()) {
    const NormalizedText n = normalize_raw(src, t);
    CHECK(n.dropped == 0);
  }
}

TEST_CASE("word boundary targets split words") {
  // U+00A0 no-break space maps to `_`.
  const NormalizedText n = normalize_raw("gol\xc2\xa0zibA", table());
  CHECK(n.phonemes.word_count() == 2);
}

TEST_CASE("table construction rejects duplicates and bad targets") {
  CHECK_THROWS_AS(NormalizationTable::from_entries({{"ʃ", "S"}, {"ʃ", "Z"}}), TableError);
  CHECK_THROWS_AS(NormalizationTable::from_entries({{"ʃ", "sh"}}), TableError);
  CHECK_THROWS_AS(NormalizationTable::from_entries({{"ʃ", "w"}}), TableError);
  CHECK_THROWS_AS(NormalizationTable::from_entries({{"", "S"}}), TableError);
}

TEST_CASE("longest source wins") {
  // "tʃ" must map to C as a unit, not t + ʃ->S.
  CHECK(render(normalize_raw("tʃe", table()).phonemes) == "Ce");
  // decomposed s+hacek beats the bare combining mark deletion
  CHECK(render(normalize_raw("s\xcc\x8c" "ab", table()).phonemes) == "Sab");
}
