#include <doctest.h>

#include <random>
#include <string>

#include "g2p/metrics.hpp"
#include "support.hpp"

using namespace g2p;

namespace {

DictEntry entry(const std::string& grapheme, const std::vector<std::string>& prons) {
  DictEntry e;
  e.grapheme = grapheme;
  for (const auto& p : prons) e.pronunciations.push_back(word_from_chars(p));
  return e;
}

// Small lexicon matching the worked example sentence and its neighbours.
const DictStore& dict() {
  static DictStore store = DictStore::merge({{
      entry("این", {"in"}),
      entry("گل", {"gel", "gol"}),
      entry("زیبا", {"zibA"}),
      entry("است", {"ast"}),
      entry("خانه", {"xAne"}),
      entry("مدرسه", {"madrese"}),
      entry("به", {"be"}),
      entry("دوست", {"dust"}),
  }});
  return store;
}

}  // namespace

TEST_CASE("levenshtein equals the full-matrix oracle") {
  CHECK(levenshtein("", "") == 0);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("kitten", "sitting") == 3);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<int> ch('a', 'd');  // small alphabet forces collisions
  for (int trial = 0; trial < 500; ++trial) {
    std::string a, b;
    for (int i = len(rng); i > 0; --i) a.push_back(static_cast<char>(ch(rng)));
    for (int i = len(rng); i > 0; --i) b.push_back(static_cast<char>(ch(rng)));
    CHECK(levenshtein(a, b) == testsupport::oracle_levenshtein(a, b));
  }
}

TEST_CASE("per counts the word boundary as one token") {
  const PhonemeString ref = parse_canonical("in gole zibA ast");
  CHECK(per_reference_length(ref) == 16);  // 13 phonemes + 3 boundaries
  const PhonemeString pred = parse_canonical("in gol zibA ast");
  CHECK(per_distance(pred, ref) == 1);
  CHECK(per(pred, ref) == doctest::Approx(1.0 / 16.0));
  CHECK(per(ref, ref) == 0.0);
  CHECK(per(PhonemeString{}, ref) == 1.0);  // empty prediction: all deletions
  CHECK_THROWS_AS(per(pred, PhonemeString{}), EmptyReference);
}

TEST_CASE("alignment cost matches the exhaustive oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const PhonemeString ref = testsupport::random_sentence(rng, 5, 4);
    const PhonemeString pred = testsupport::random_sentence(rng, 5, 4);
    const WordAlignment al = align_words(ref, pred);
    const double oracle = testsupport::oracle_alignment_cost(
        ref.word_count(), pred.word_count(),
        [&](std::size_t i, std::size_t j) { return word_distance(ref.word(i), pred.word(j)); });
    CHECK(al.cost == doctest::Approx(oracle));
    // Every index of both sides appears exactly once, in order.
    std::size_t next_ref = 0, next_pred = 0;
    for (const AlignedPair& p : al.pairs) {
      if (p.ref) CHECK(*p.ref == next_ref++);
      if (p.pred) CHECK(*p.pred == next_pred++);
    }
    CHECK(next_ref == ref.word_count());
    CHECK(next_pred == pred.word_count());
  }
}

TEST_CASE("ties place gaps leftmost") {
  // Two reference slots, one prediction, all pairings free: the unmatched
  // reference word must be the first one.
  const WordAlignment al = align_sequences(2, 1, [](std::size_t, std::size_t) { return 0.0; });
  REQUIRE(al.pairs.size() == 2);
  CHECK(al.pairs[0] == AlignedPair{0, std::nullopt});
  CHECK(al.pairs[1] == AlignedPair{1, 0});
  CHECK(al.cost == doctest::Approx(1.0));
}

TEST_CASE("ezafe_label distinguishes suffix, lexical /e/, and OOV") {
  auto label = [&](const std::string& w, const std::string& g) {
    return ezafe_label(word_from_chars(w), g, dict());
  };
  CHECK(label("gole", "گل"));          // stem gol is a listed pronunciation
  CHECK_FALSE(label("gol", "گل"));     // no Ezafe suffix at all
  CHECK_FALSE(label("xAne", "خانه"));  // the lexical form itself ends in /e/
  CHECK(label("xAneje", "خانه"));      // glide form after a vowel
  CHECK_FALSE(label("madrese", "مدرسه"));
  CHECK_FALSE(label("be", "به"));
  CHECK(label("duste", "دوست"));
  CHECK(label("tAze", "تازه"));        // OOV: trust the suffix
  CHECK_FALSE(label("tAb", "تاب"));    // OOV without the suffix
}

TEST_CASE("the worked sentence pair yields fn=1 tn=3") {
  const PhonemeString ref = parse_canonical("in gole zibA ast");
  const PhonemeString pred = parse_canonical("in gol zibA ast");
  const std::vector<std::string> graphemes = {"این", "گل", "زیبا", "است"};
  const EzafeStats s = ezafe_sentence_stats(ref, pred, graphemes, dict());
  CHECK(s.tp == 0);
  CHECK(s.fp == 0);
  CHECK(s.fn == 1);
  CHECK(s.tn == 3);
  REQUIRE(s.accuracy().has_value());
  CHECK(*s.accuracy() == doctest::Approx(0.75));
  REQUIRE(s.recall().has_value());
  CHECK(*s.recall() == doctest::Approx(0.0));
  CHECK_FALSE(s.precision().has_value());  // tp + fp == 0
  CHECK_FALSE(s.f1().has_value());
}

TEST_CASE("gaps count against the side that carries the label") {
  // Reference has an Ezafe word the prediction dropped entirely.
  EzafeStats s = ezafe_sentence_stats(parse_canonical("gole zibA"), parse_canonical("zibA"),
                                      {"گل", "زیبا"}, dict());
  CHECK(s.fn == 1);
  CHECK(s.tn == 1);
  // Prediction inserted an Ezafe-looking word with no reference slot.
  s = ezafe_sentence_stats(parse_canonical("zibA"), parse_canonical("gole zibA"), {"زیبا"}, dict());
  CHECK(s.fp == 1);
  CHECK(s.tn == 1);
  // Grapheme list that does not line up with the reference is ignored:
  // the suffix-only judgement calls "xAne" Ezafe.
  s = ezafe_sentence_stats(parse_canonical("xAne"), parse_canonical("xAne"), {"a", "b"}, dict());
  CHECK(s.tp == 1);
}

TEST_CASE("stats accumulate across sentences") {
  const std::vector<SentencePair> pairs = {
      {parse_canonical("in gole zibA ast"), parse_canonical("in gol zibA ast"),
       {"این", "گل", "زیبا", "است"}},
      {parse_canonical("gole zibA"), parse_canonical("gole zibA"), {"گل", "زیبا"}},
  };
  const EzafeStats s = ezafe_stats(pairs, dict());
  CHECK(s.tp == 1);
  CHECK(s.fn == 1);
  CHECK(s.tn == 4);
  CHECK(s.total() == 6);
}

TEST_CASE("polyphone scoring compares the aligned word exactly") {
  const PhonemeString ref = parse_canonical("in gole zibA ast");
  const std::vector<std::string> graphemes = {"این", "گل", "زیبا", "است"};
  const Word target = word_from_chars("gole");

  PolyphoneOutcome out = polyphone_outcome(ref, graphemes, "گل", target, ref);
  CHECK(out.correct);
  CHECK(out.word == "گل");
  CHECK(out.target == "gole");
  CHECK(out.predicted == "gole");

  out = polyphone_outcome(parse_canonical("in gel zibA ast"), graphemes, "گل", target, ref);
  CHECK_FALSE(out.correct);
  CHECK(out.predicted == "gel");

  // The target word slot gapped away entirely.
  out = polyphone_outcome(parse_canonical("in zibA ast"), graphemes, "گل", target, ref);
  CHECK_FALSE(out.correct);
  CHECK(out.predicted.empty());

  // Arabic-script spelling folds onto the same key.
  CHECK(polyphone_correct(ref, graphemes, "گل", target, ref));
  CHECK_THROWS_AS(polyphone_outcome(ref, graphemes, "سم", target, ref), TargetNotFound);
  CHECK_THROWS_AS(polyphone_outcome(ref, {"گل"}, "گل", target, ref), TargetNotFound);
}

TEST_CASE("aggregation excludes failed rows and micro-averages") {
  SentenceRecord ok1;
  ok1.row = 0;
  ok1.distance = 1;
  ok1.ref_len = 16;
  ok1.per = 1.0 / 16.0;
  ok1.ezafe = {0, 0, 1, 3};
  ok1.polyphone = PolyphoneOutcome{"گل", "gole", "gol", false};

  SentenceRecord ok2;
  ok2.row = 1;
  ok2.distance = 0;
  ok2.ref_len = 8;
  ok2.ezafe = {1, 0, 0, 1};
  ok2.polyphone = PolyphoneOutcome{"مهر", "mohr", "mohr", true};

  SentenceRecord bad;
  bad.row = 2;
  bad.failed = true;
  bad.error = "backend unavailable";
  bad.distance = 99;  // must not leak into the totals
  bad.ref_len = 99;

  const EvalReport r = aggregate_records({ok1, ok2, bad});
  CHECK(r.per_distance_total == 1);
  CHECK(r.per_reference_total == 24);
  CHECK(r.per == doctest::Approx(1.0 / 24.0));
  CHECK(r.ezafe == EzafeStats{1, 0, 1, 4});
  CHECK(r.polyphone_total == 2);
  CHECK(r.polyphone_correct == 1);
  REQUIRE(r.polyphone_accuracy.has_value());
  CHECK(*r.polyphone_accuracy == doctest::Approx(0.5));
  CHECK(r.failed_rows == 1);
  CHECK(r.per_sentence.size() == 3);

  const EvalReport empty = aggregate_records({});
  CHECK(empty.per == 0.0);
  CHECK_FALSE(empty.polyphone_accuracy.has_value());
}
