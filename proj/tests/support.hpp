#pragma once

// Shared test plumbing: independent metric oracles (full-matrix DP, written
// separately from the library's implementations) and seeded random input
// generators.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "g2p/phoneme.hpp"

namespace testsupport {

inline std::string source_dir() { return G2P_SOURCE_DIR; }
inline std::string data_dir() { return source_dir() + "/data"; }
inline std::string fixtures_dir() { return source_dir() + "/data/fixtures"; }

// Textbook full-matrix edit distance, kept deliberately naive.
inline std::size_t oracle_levenshtein(const std::string& a, const std::string& b) {
  const std::size_t m = a.size(), n = b.size();
  std::vector<std::vector<std::size_t>> d(m + 1, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t i = 0; i <= m; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= n; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
  return d[m][n];
}

// Minimal alignment cost by exhaustive recursion; usable up to ~6x6 words.
template <typename CostFn>
double oracle_alignment_cost(std::size_t i, std::size_t j, std::size_t m, std::size_t n,
                             CostFn&& cost) {
  if (i == m && j == n) return 0.0;
  double best = 1e18;
  if (i < m && j < n)
    best = std::min(best, cost(i, j) + oracle_alignment_cost(i + 1, j + 1, m, n, cost));
  if (i < m) best = std::min(best, 1.0 + oracle_alignment_cost(i + 1, j, m, n, cost));
  if (j < n) best = std::min(best, 1.0 + oracle_alignment_cost(i, j + 1, m, n, cost));
  return best;
}

template <typename CostFn>
double oracle_alignment_cost(std::size_t m, std::size_t n, CostFn&& cost) {
  return oracle_alignment_cost(0, 0, m, n, cost);
}

inline g2p::Word random_word(std::mt19937& rng, std::size_t max_len = 8) {
  const std::string_view inv = g2p::Phoneme::inventory();
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<std::size_t> sym_dist(0, inv.size() - 1);
  g2p::Word w;
  const std::size_t len = len_dist(rng);
  for (std::size_t i = 0; i < len; ++i) w.emplace_back(inv[sym_dist(rng)]);
  return w;
}

inline g2p::PhonemeString random_sentence(std::mt19937& rng, std::size_t max_words = 6,
                                          std::size_t max_len = 8) {
  std::uniform_int_distribution<std::size_t> words_dist(1, max_words);
  std::vector<g2p::Word> words;
  const std::size_t n = words_dist(rng);
  for (std::size_t i = 0; i < n; ++i) words.push_back(random_word(rng, max_len));
  return g2p::PhonemeString(std::move(words));
}

}  // namespace testsupport
