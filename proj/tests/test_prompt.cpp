#include <doctest.h>

#include <string>

#include "g2p/prompt.hpp"
#include "support.hpp"

using namespace g2p;

namespace {

DictEntry entry(const std::string& grapheme, const std::vector<std::string>& prons) {
  DictEntry e;
  e.grapheme = grapheme;
  for (const auto& p : prons) e.pronunciations.push_back(word_from_chars(p));
  return e;
}

const DictStore& dict() {
  static DictStore store = DictStore::merge({{
      entry("این", {"in"}),
      entry("گل", {"gel", "gol"}),
      entry("زیبا", {"zibA"}),
      entry("است", {"ast"}),
      entry("شب", {"Sab"}),
  }});
  return store;
}

const FinglishTable& finglish() {
  static FinglishTable t = FinglishTable::load(testsupport::data_dir() + "/finglish_rules.tsv");
  return t;
}

const PromptLibrary& library() {
  static PromptLibrary lib = PromptLibrary::load(testsupport::data_dir() + "/prompts");
  return lib;
}

}  // namespace

TEST_CASE("strategy names round-trip") {
  for (StrategyKind kind : all_strategies()) CHECK(parse_strategy(to_string(kind)) == kind);
  CHECK(parse_strategy("hints2") == kDefaultStrategy);
  CHECK_THROWS_AS(parse_strategy("hints4"), std::invalid_argument);
}

TEST_CASE("output mode and round-trip counts per strategy") {
  CHECK_FALSE(finglish_output(StrategyKind::kNaive));
  CHECK_FALSE(finglish_output(StrategyKind::kInContext));
  for (StrategyKind kind : {StrategyKind::kFinglish, StrategyKind::kRuleCorrected,
                            StrategyKind::kLlmCorrected, StrategyKind::kHints1,
                            StrategyKind::kHints2, StrategyKind::kHints3, StrategyKind::kCombined})
    CHECK(finglish_output(kind));

  for (StrategyKind kind : all_strategies()) {
    const std::size_t expected =
        (kind == StrategyKind::kLlmCorrected || kind == StrategyKind::kCombined) ? 2 : 1;
    CHECK(round_trips(kind) == expected);
  }
}

TEST_CASE("library templates load and validate") {
  for (StrategyKind kind : all_strategies()) {
    const PromptStrategy s = library().strategy(kind);
    CHECK(s.kind == kind);
    CHECK_FALSE(s.template_text.empty());
    if (kind == StrategyKind::kNaive)
      CHECK(s.shots.empty());
    else
      CHECK(s.shots.size() >= 1);
  }
  CHECK(library().shots().size() == 3);
  CHECK_FALSE(library().correction_template().empty());

  PromptStrategy bad;
  bad.kind = StrategyKind::kFinglish;
  bad.template_text = "x {sentence}";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // exemplars required
  bad.kind = StrategyKind::kNaive;
  bad.shots.push_back({"a", parse_canonical("a")});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // naive carries none
}

TEST_CASE("hint modes: every alternative vs unambiguous words only") {
  const std::vector<std::string> words = {"این", "گل", "زیبا", "است"};
  const std::vector<Hint> all = dictionary_hints(words, dict(), HintMode::kAllAlternatives);
  const std::vector<Hint> single = dictionary_hints(words, dict(), HintMode::kSingleOnly);

  REQUIRE(all.size() == 4);
  CHECK(all[1].grapheme == "گل");
  CHECK(all[1].pronunciations.size() == 2);

  REQUIRE(single.size() == 3);  // the polyphone is withheld
  for (const Hint& h : single) {
    CHECK(h.grapheme != "گل");
    CHECK(h.pronunciations.size() == 1);
  }

  // The unambiguous hints are a subset of the full hints.
  for (const Hint& h : single) {
    bool found = false;
    for (const Hint& a : all) found = found || a == h;
    CHECK(found);
  }
}

TEST_CASE("hints deduplicate by folded grapheme and skip OOV words") {
  const std::vector<Hint> hints =
      dictionary_hints({"گل", "ناشناخته", "گل", "كتاب"}, dict(), HintMode::kAllAlternatives);
  REQUIRE(hints.size() == 1);  // second گل deduped, OOV words skipped
  CHECK(hints[0].grapheme == "گل");
}

TEST_CASE("hints render one line per word in Finglish") {
  const std::vector<Hint> hints =
      dictionary_hints({"گل", "شب"}, dict(), HintMode::kAllAlternatives);
  CHECK(render_hints(hints, finglish()) == "- گل: gel / gol\n- شب: shab");
  CHECK(render_hints({}, finglish()) == "(none)");
}

TEST_CASE("substitution keeps ambiguous and unknown words as graphemes") {
  const std::string out =
      substitute_known_words({"این", "گل", "ناشناخته", "شب"}, dict(), finglish());
  CHECK(out == "in گل ناشناخته shab");
}

TEST_CASE("build_prompt fills every placeholder deterministically") {
  const std::string sentence = "این گل زیبا است";
  for (StrategyKind kind : all_strategies()) {
    const PromptStrategy s = library().strategy(kind);
    const std::string a = build_prompt(s, sentence, dict(), finglish());
    const std::string b = build_prompt(s, sentence, dict(), finglish());
    CHECK(a == b);
    CHECK(a.find(sentence) != std::string::npos);
    CHECK(a.find('{') == std::string::npos);  // nothing unfilled
  }

  const std::string naive =
      build_prompt(library().strategy(StrategyKind::kNaive), sentence, dict(), finglish());
  CHECK(naive.find("gol") == std::string::npos);  // no dictionary content

  const std::string h1 =
      build_prompt(library().strategy(StrategyKind::kHints1), sentence, dict(), finglish());
  CHECK(h1.find("gel / gol") != std::string::npos);

  const std::string h2 =
      build_prompt(library().strategy(StrategyKind::kHints2), sentence, dict(), finglish());
  CHECK(h2.find("gel") == std::string::npos);  // ambiguous word withheld
  CHECK(h2.find("zibaa") != std::string::npos);

  const std::string h3 =
      build_prompt(library().strategy(StrategyKind::kHints3), sentence, dict(), finglish());
  CHECK(h3.find("in گل zibaa ast") != std::string::npos);

  // Exemplars render as Finglish for Finglish-output strategies and as
  // canonical phonemes for the raw ones.
  const std::string fin =
      build_prompt(library().strategy(StrategyKind::kFinglish), sentence, dict(), finglish());
  CHECK(fin.find("Finglish: aab sard nist") != std::string::npos);
  const std::string ctx =
      build_prompt(library().strategy(StrategyKind::kInContext), sentence, dict(), finglish());
  CHECK(ctx.find("Phonemes: Ab sard nist") != std::string::npos);
}

TEST_CASE("correction prompt embeds the draft and all alternatives") {
  const std::string p = build_correction_prompt(library(), "این گل زیبا است",
                                                "in gol zibaa ast", dict(), finglish());
  CHECK(p.find("Draft: in gol zibaa ast") != std::string::npos);
  CHECK(p.find("gel / gol") != std::string::npos);
  CHECK(p.find("Sentence: این گل زیبا است") != std::string::npos);
  CHECK(p.find('{') == std::string::npos);
}
