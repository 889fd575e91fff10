#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "g2p/phoneme.hpp"

namespace g2p {

struct TableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Many-to-one mapping from raw phonetic text (IPA variants, diacritics,
// stress marks) to the canonical notation. Each source cluster maps to a
// canonical phoneme, the word boundary, or deletion. Applied with
// longest-match-first semantics; canonical symbols and whitespace have
// built-in meaning and need no entry.
class NormalizationTable {
 public:
  enum class TargetKind { kPhoneme, kBoundary, kDelete };
  struct Target {
    TargetKind kind;
    char phoneme = 0;  // set when kind == kPhoneme
  };

  // TSV rows `source_cluster<TAB>target`; target is a canonical symbol,
  // `_` (word boundary) or `∅` (delete). `#` lines and blanks are skipped.
  static NormalizationTable load(const std::string& path);
  static NormalizationTable from_entries(const std::vector<std::pair<std::string, std::string>>& rows);

  const Target* match(std::string_view text, std::size_t pos, std::size_t* len) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> declared_sources() const;

 private:
  std::unordered_map<std::string, Target> entries_;
  std::size_t max_source_bytes_ = 0;
};

struct NormalizedText {
  PhonemeString phonemes;
  std::size_t dropped = 0;  // code points with no mapping and no canonical meaning
};

// Total: never fails. Unknown code points are dropped and counted.
NormalizedText normalize_raw(std::string_view raw, const NormalizationTable& table);

}  // namespace g2p
