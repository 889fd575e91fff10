#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g2p/phoneme.hpp"

namespace g2p {

struct UnknownCluster : std::runtime_error {
  UnknownCluster(std::size_t position, std::string cluster);
  std::size_t position;  // byte offset into the input text
  std::string cluster;
};

struct FinglishRule {
  std::string pattern;    // Latin cluster, e.g. "sh"
  Word target;            // canonical phoneme sequence
  std::size_t order = 0;  // position in the rule file
};

// Digraph rules for Latin-script Persian. Longest pattern wins; a hyphen or
// apostrophe between letters suppresses digraph formation and is removed.
class FinglishTable {
 public:
  // TSV rows `pattern<TAB>canonical_sequence`. `#` lines and blanks skipped.
  // Equal-length duplicate patterns are construction errors.
  static FinglishTable load(const std::string& path);
  static FinglishTable from_rules(const std::vector<std::pair<std::string, std::string>>& rows);

  const FinglishRule* match(std::string_view text, std::size_t pos, std::size_t* len) const;

  // Preferred Finglish spelling of one phoneme; parsing it back yields
  // exactly that phoneme.
  const std::string& render_form(Phoneme p) const;

  const std::vector<FinglishRule>& rules() const { return rules_; }

 private:
  std::vector<FinglishRule> rules_;  // sorted by pattern length, descending
  std::string render_forms_[256];
  void build_render_forms();
};

// Longest-match conversion of a Finglish sentence into canonical phonemes.
// Raises UnknownCluster for characters with no rule and no canonical meaning.
PhonemeString finglish_to_phonemes(std::string_view text, const FinglishTable& table);

// Inverse rendering; inserts "-" wherever naive re-parsing would mis-merge,
// so finglish_to_phonemes(phonemes_to_finglish(ps)) == ps.
std::string phonemes_to_finglish(const PhonemeString& ps, const FinglishTable& table);
std::string word_to_finglish(const Word& word, const FinglishTable& table);

}  // namespace g2p
