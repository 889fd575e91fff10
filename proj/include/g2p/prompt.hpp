#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "g2p/dict.hpp"
#include "g2p/finglish.hpp"
#include "g2p/phoneme.hpp"

namespace g2p {

enum class StrategyKind {
  kNaive,
  kInContext,
  kFinglish,
  kRuleCorrected,
  kLlmCorrected,
  kHints1,
  kHints2,
  kHints3,
  kCombined,
};

inline constexpr StrategyKind kDefaultStrategy = StrategyKind::kHints2;

// Accepts the hyphenated names used on the CLI: naive, in-context,
// finglish, rule-corrected, llm-corrected, hints1, hints2, hints3, combined.
StrategyKind parse_strategy(std::string_view name);
std::string to_string(StrategyKind kind);
std::vector<StrategyKind> all_strategies();

// True when the strategy asks the model for Finglish output (everything
// except Naive and InContext, which are parsed by the raw normalizer).
bool finglish_output(StrategyKind kind);

// Number of backend round-trips the strategy performs.
std::size_t round_trips(StrategyKind kind);

struct Exemplar {
  std::string sentence;
  PhonemeString phonemes;
};

struct PromptStrategy {
  StrategyKind kind = kDefaultStrategy;
  std::string template_text;  // placeholders: {sentence} {hints} {shots}
  std::vector<Exemplar> shots;

  // Naive carries no exemplars; every other strategy carries at least one.
  void validate() const;
};

// Loads the versioned template files (naive.txt, in_context.txt,
// finglish.txt, hints1.txt, hints2.txt, hints3.txt, correction.txt) and the
// shared exemplars (shots.tsv: sentence<TAB>canonical phonemes).
class PromptLibrary {
 public:
  static PromptLibrary load(const std::string& dir);

  const std::string& template_for(StrategyKind kind) const;
  const std::string& correction_template() const { return correction_; }
  const std::vector<Exemplar>& shots() const { return shots_; }

  PromptStrategy strategy(StrategyKind kind) const;

 private:
  std::string naive_, in_context_, finglish_, hints1_, hints2_, hints3_, correction_;
  std::vector<Exemplar> shots_;
};

enum class HintMode {
  kAllAlternatives,  // every in-vocabulary word, every pronunciation
  kSingleOnly,       // only words with exactly one pronunciation
};

struct Hint {
  std::string grapheme;
  std::vector<Word> pronunciations;
  friend bool operator==(const Hint&, const Hint&) = default;
};

// Hints for the sentence's words, in first-occurrence order, deduplicated
// by folded grapheme. Out-of-vocabulary words yield no hint.
std::vector<Hint> dictionary_hints(const std::vector<std::string>& words, const DictStore& dict,
                                   HintMode mode);

// One "word: pron / pron" line per hint, Finglish-rendered.
std::string render_hints(const std::vector<Hint>& hints, const FinglishTable& finglish);

// The sentence with every single-pronunciation word replaced inline by the
// Finglish rendering of its pronunciation; ambiguous and unknown words stay
// as graphemes.
std::string substitute_known_words(const std::vector<std::string>& words, const DictStore& dict,
                                   const FinglishTable& finglish);

std::string build_prompt(const PromptStrategy& strategy, std::string_view sentence,
                         const DictStore& dict, const FinglishTable& finglish);

// Second-round prompt for the correction strategies: embeds the first
// round's draft plus dictionary alternatives for the sentence's words.
std::string build_correction_prompt(const PromptLibrary& library, std::string_view sentence,
                                    std::string_view draft, const DictStore& dict,
                                    const FinglishTable& finglish);

}  // namespace g2p
