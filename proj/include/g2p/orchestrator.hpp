#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "g2p/backend.hpp"
#include "g2p/dict.hpp"
#include "g2p/finglish.hpp"
#include "g2p/normalize.hpp"
#include "g2p/phoneme.hpp"
#include "g2p/prompt.hpp"

namespace g2p {

struct AlignmentMismatch : std::runtime_error {
  std::size_t expected;
  std::size_t actual;
  AlignmentMismatch(std::size_t expected_, std::size_t actual_);
};

struct ConversionResult {
  PhonemeString phonemes;
  std::vector<std::string> raw_responses;
  StrategyKind strategy = kDefaultStrategy;
  std::size_t corrections_applied = 0;
  std::size_t dropped_chars = 0;
};

// Keeps Finglish-looking characters (Latin letters, the canonical capitals
// A S Z C J, '?', separators, accented rule characters), lowercases stray
// capitals, folds whitespace runs to single spaces, and drops the rest.
std::string sanitize_finglish(std::string_view raw, const FinglishTable& table,
                              std::size_t* dropped);

// finglish_to_phonemes that never fails: unparseable clusters are removed
// and counted instead of raised.
PhonemeString parse_finglish_total(std::string text, const FinglishTable& table,
                                   std::size_t* dropped);

// Reshapes the prediction to one word per grapheme. Alignment is guided by
// dictionary pronunciations where available; surplus predicted words merge
// into their neighbour, missing ones are filled by splitting a neighbour.
// Best effort: a prediction with too few phonemes may stay shorter.
PhonemeString reconcile_to_words(const PhonemeString& pred,
                                 const std::vector<std::string>& graphemes,
                                 const DictStore& dict);

// Dictionary snapping: each word is replaced by its most similar candidate
// pronunciation when similarity = 1 - dist/max_len reaches theta. Ties take
// the first candidate in sorted order. `corrections` counts real changes.
PhonemeString rule_correct(const PhonemeString& predicted,
                           const std::vector<std::string>& graphemes, const DictStore& dict,
                           double theta = 0.5, std::size_t* corrections = nullptr);

class Orchestrator {
 public:
  struct Options {
    double theta = 0.5;  // rule_correct similarity threshold
    DecodeParams decode;
  };

  Orchestrator(const NormalizationTable& norm, const FinglishTable& finglish,
               const PromptLibrary& prompts, Options opts)
      : norm_(norm), finglish_(finglish), prompts_(prompts), opts_(opts) {}
  Orchestrator(const NormalizationTable& norm, const FinglishTable& finglish,
               const PromptLibrary& prompts)
      : Orchestrator(norm, finglish, prompts, Options{}) {}

  // Full strategy pipeline: prompt -> backend -> parse -> reconcile ->
  // correct. An empty sentence short-circuits with zero backend calls.
  ConversionResult convert(std::string_view sentence, StrategyKind kind, LlmBackend& backend,
                           const DictStore& dict) const;

 private:
  const NormalizationTable& norm_;
  const FinglishTable& finglish_;
  const PromptLibrary& prompts_;
  Options opts_;
};

}  // namespace g2p
