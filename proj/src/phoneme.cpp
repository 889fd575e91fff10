#include "g2p/phoneme.hpp"

#include <array>

#include "g2p/detail/text.hpp"

namespace g2p {

namespace {

constexpr std::string_view kVowels = "aAeiou";
constexpr std::string_view kInventory = "aAeioubptdkgq?fvszSZxhCJmnlrj";

constexpr std::array<bool, 256> make_member_table(std::string_view symbols) {
  std::array<bool, 256> t{};
  for (char c : symbols) t[static_cast<unsigned char>(c)] = true;
  return t;
}

constexpr auto kIsValid = make_member_table(kInventory);
constexpr auto kIsVowel = make_member_table(kVowels);

}  // namespace

Phoneme::Phoneme(char symbol) : symbol_(symbol) {
  if (!is_valid(symbol))
    throw std::invalid_argument("not a canonical phoneme symbol: '" + std::string(1, symbol) + "'");
}

bool Phoneme::is_vowel() const { return kIsVowel[static_cast<unsigned char>(symbol_)]; }

bool Phoneme::is_valid(char c) { return kIsValid[static_cast<unsigned char>(c)]; }

std::string_view Phoneme::inventory() { return kInventory; }

Word word_from_chars(std::string_view chars) {
  Word w;
  w.reserve(chars.size());
  for (char c : chars) w.emplace_back(c);
  return w;
}

std::string render_word(const Word& word) {
  std::string s;
  s.reserve(word.size());
  for (Phoneme p : word) s.push_back(p.symbol());
  return s;
}

UnknownSymbol::UnknownSymbol(std::size_t pos, std::string sym)
    : std::runtime_error("unknown symbol '" + sym + "' at byte " + std::to_string(pos)),
      position(pos),
      symbol(std::move(sym)) {}

PhonemeString::PhonemeString(std::vector<Word> words) : words_(std::move(words)) {
  for (const Word& w : words_)
    if (w.empty()) throw std::invalid_argument("PhonemeString: empty word token");
}

std::size_t PhonemeString::phoneme_count() const {
  std::size_t n = 0;
  for (const Word& w : words_) n += w.size();
  return n;
}

PhonemeString parse_canonical(std::string_view text) {
  std::vector<Word> words;
  Word current;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (detail::is_space(c)) {
      if (!current.empty()) words.push_back(std::move(current)), current.clear();
      ++i;
      continue;
    }
    if (c == '-') {  // Ezafe join notation; stored attached to its word
      ++i;
      continue;
    }
    if (!Phoneme::is_valid(c)) throw UnknownSymbol(i, std::string(detail::utf8_at(text, i)));
    current.emplace_back(c);
    ++i;
  }
  if (!current.empty()) words.push_back(std::move(current));
  return PhonemeString(std::move(words));
}

std::string render(const PhonemeString& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.word_count(); ++i) {
    if (i) out.push_back(' ');
    out += render_word(ps.word(i));
  }
  return out;
}

}  // namespace g2p
