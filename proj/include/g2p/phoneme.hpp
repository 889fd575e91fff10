#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace g2p {

// Canonical inventory: 29 one-character symbols.
//   vowels:     a A e i o u
//   consonants: b p t d k g q ? f v s z S Z x h C J m n l r j
// S = "sh", Z = "zh", C = "ch", J = "j" (as in jam), x = "kh", q = "gh",
// ? = glottal stop, A = long a, a = short a.
class Phoneme {
 public:
  explicit Phoneme(char symbol);

  char symbol() const { return symbol_; }
  bool is_vowel() const;

  static bool is_valid(char c);
  static std::string_view inventory();

  friend bool operator==(Phoneme lhs, Phoneme rhs) { return lhs.symbol_ == rhs.symbol_; }
  friend auto operator<=>(Phoneme lhs, Phoneme rhs) { return lhs.symbol_ <=> rhs.symbol_; }

 private:
  char symbol_;
};

using Word = std::vector<Phoneme>;

Word word_from_chars(std::string_view chars);
std::string render_word(const Word& word);

struct UnknownSymbol : std::runtime_error {
  UnknownSymbol(std::size_t position, std::string symbol);
  std::size_t position;  // byte offset into the input text
  std::string symbol;    // offending code point (UTF-8)
};

// Word-segmented phoneme sequence. Words are never empty; an empty sentence
// has zero words. Immutable after construction.
class PhonemeString {
 public:
  PhonemeString() = default;
  explicit PhonemeString(std::vector<Word> words);

  const std::vector<Word>& words() const { return words_; }
  const Word& word(std::size_t i) const { return words_.at(i); }
  std::size_t word_count() const { return words_.size(); }
  std::size_t phoneme_count() const;
  bool empty() const { return words_.empty(); }

  friend bool operator==(const PhonemeString&, const PhonemeString&) = default;

 private:
  std::vector<Word> words_;
};

// Whitespace-separated canonical text -> PhonemeString. Hyphens inside a
// token (the Ezafe join of "gol-e") are stripped; any other character
// outside the inventory raises UnknownSymbol.
PhonemeString parse_canonical(std::string_view text);

// Inverse of parse_canonical: words joined by single spaces.
std::string render(const PhonemeString& ps);

}  // namespace g2p
