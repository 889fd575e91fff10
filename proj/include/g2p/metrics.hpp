#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "g2p/dict.hpp"
#include "g2p/phoneme.hpp"

namespace g2p {

struct EmptyReference : std::runtime_error {
  EmptyReference() : std::runtime_error("PER reference is empty") {}
};

struct TargetNotFound : std::runtime_error {
  explicit TargetNotFound(const std::string& word);
};

// Unit-cost edit distance over the bytes of two strings.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Phoneme error rate: edit distance over the flattened symbol sequence with
// the word boundary counted as one ordinary token, divided by the flattened
// reference length (boundaries included).
double per(const PhonemeString& pred, const PhonemeString& ref);
std::size_t per_distance(const PhonemeString& pred, const PhonemeString& ref);
std::size_t per_reference_length(const PhonemeString& ref);

// Monotone word-level alignment. Every index of both sides appears exactly
// once, in increasing order; GAP is an unmatched word.
struct AlignedPair {
  std::optional<std::size_t> ref;
  std::optional<std::size_t> pred;
  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

struct WordAlignment {
  std::vector<AlignedPair> pairs;
  double cost = 0.0;
};

// Generic minimal-cost monotone alignment: pairing costs come from
// `pair_cost`, gaps cost 1. Ties prefer pairing over gaps, then the
// leftmost gap placement.
template <typename CostFn>
WordAlignment align_sequences(std::size_t n_ref, std::size_t n_pred, CostFn&& pair_cost);

// Pairing cost = character edit distance between the words, normalized by
// the longer word.
WordAlignment align_words(const PhonemeString& ref, const PhonemeString& pred);
double word_distance(const Word& a, const Word& b);

// Ezafe detector: the word ends in the Ezafe /e/ (or the ye-glide "je"
// after a vowel) and the stripped stem is consistent with the dictionary.
// Out-of-vocabulary graphemes fall back to the suffix test alone.
bool ezafe_label(const Word& word, std::string_view grapheme, const DictStore& dict);

struct EzafeStats {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  // Undefined ratios (zero denominator) come back empty and print as "N/D".
  std::optional<double> precision() const;
  std::optional<double> recall() const;
  std::optional<double> f1() const;
  std::optional<double> accuracy() const;

  EzafeStats& operator+=(const EzafeStats& o);
  friend bool operator==(const EzafeStats&, const EzafeStats&) = default;
};

struct SentencePair {
  PhonemeString ref;
  PhonemeString pred;
  std::vector<std::string> graphemes;
};

// Per aligned word pair, compare the reference and predicted Ezafe labels.
// A gap with a positive label counts as fn (reference side) or fp
// (prediction side); negative-label gaps are tn.
EzafeStats ezafe_sentence_stats(const PhonemeString& ref, const PhonemeString& pred,
                                const std::vector<std::string>& graphemes, const DictStore& dict);
EzafeStats ezafe_stats(const std::vector<SentencePair>& pairs, const DictStore& dict);

struct PolyphoneOutcome {
  std::string word;
  std::string target;     // rendered target pronunciation
  std::string predicted;  // rendered aligned prediction, empty when gapped
  bool correct = false;
};

// Exact-match polyphone scoring: find the first occurrence of target_word
// among the graphemes and compare the predicted word aligned to that
// position against target_pron. A gap at the position is incorrect.
PolyphoneOutcome polyphone_outcome(const PhonemeString& pred,
                                   const std::vector<std::string>& graphemes,
                                   std::string_view target_word, const Word& target_pron,
                                   const PhonemeString& ref);
bool polyphone_correct(const PhonemeString& pred, const std::vector<std::string>& graphemes,
                       std::string_view target_word, const Word& target_pron,
                       const PhonemeString& ref);

struct SentenceRecord {
  std::size_t row = 0;  // dataset row index (0-based)
  std::string grapheme;
  std::string reference;   // rendered canonical
  std::string prediction;  // rendered canonical, empty on failure
  std::size_t distance = 0;
  std::size_t ref_len = 0;
  double per = 0.0;
  EzafeStats ezafe;
  std::optional<PolyphoneOutcome> polyphone;
  std::size_t round_trips = 0;
  std::size_t corrections = 0;
  std::size_t dropped_chars = 0;
  bool failed = false;
  std::string error;
};

struct EvalReport {
  double per = 0.0;  // micro-averaged: total distance / total reference length
  std::uint64_t per_distance_total = 0;
  std::uint64_t per_reference_total = 0;
  std::optional<double> polyphone_accuracy;  // over annotated rows; empty when none
  std::uint64_t polyphone_correct = 0;
  std::uint64_t polyphone_total = 0;
  EzafeStats ezafe;
  std::vector<SentenceRecord> per_sentence;
  std::size_t failed_rows = 0;
};

// Aggregate the successful per-sentence records into report-level metrics.
EvalReport aggregate_records(std::vector<SentenceRecord> records);

// ---------------------------------------------------------------------------

template <typename CostFn>
WordAlignment align_sequences(std::size_t n_ref, std::size_t n_pred, CostFn&& pair_cost) {
  constexpr double kEps = 1e-9;
  const std::size_t m = n_ref, n = n_pred;
  std::vector<std::vector<double>> dp(m + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 1; i <= m; ++i) dp[i][0] = static_cast<double>(i);
  for (std::size_t j = 1; j <= n; ++j) dp[0][j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      double best = dp[i - 1][j - 1] + pair_cost(i - 1, j - 1);
      best = std::min(best, dp[i - 1][j] + 1.0);
      best = std::min(best, dp[i][j - 1] + 1.0);
      dp[i][j] = best;
    }

  WordAlignment out;
  out.cost = dp[m][n];
  std::size_t i = m, j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && dp[i][j] >= dp[i - 1][j - 1] + pair_cost(i - 1, j - 1) - kEps &&
        dp[i][j] <= dp[i - 1][j - 1] + pair_cost(i - 1, j - 1) + kEps) {
      out.pairs.push_back({i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && dp[i][j] >= dp[i - 1][j] + 1.0 - kEps && dp[i][j] <= dp[i - 1][j] + 1.0 + kEps) {
      out.pairs.push_back({i - 1, std::nullopt});
      --i;
    } else {
      out.pairs.push_back({std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(out.pairs.begin(), out.pairs.end());
  return out;
}

}  // namespace g2p
