#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "g2p/normalize.hpp"
#include "g2p/phoneme.hpp"

namespace g2p {

struct UnreadableFile : std::runtime_error {
  explicit UnreadableFile(const std::string& path);
};

struct FormatUnknown : std::runtime_error {
  explicit FormatUnknown(const std::string& format_id);
};

struct DictEntry {
  std::string grapheme;             // display form (lexicographically smallest seen)
  std::vector<Word> pronunciations; // sorted by rendered text, deduplicated, one word each
  std::set<std::string> sources;

  friend bool operator==(const DictEntry&, const DictEntry&) = default;
};

// Grapheme keys are folded before lookup: Arabic ي/ك become Persian ی/ک,
// tatweel and ZWNJ are stripped, and the common hamza/madda combining
// sequences are composed. Folding applies to keys only.
std::string fold_grapheme_key(std::string_view grapheme);

struct IngestStats {
  std::size_t rows = 0;
  std::size_t skipped = 0;  // malformed or unnormalizable rows
};

// Read one source dictionary and normalize every pronunciation to canonical
// form. Registered formats:
//   "tsv"       grapheme<TAB>raw_phonetic (extra columns ignored)
//   "tsv-multi" grapheme<TAB>raw1,raw2,...  (also splits on Persian comma)
// Rows whose pronunciation does not normalize to exactly one word are
// skipped and counted.
std::vector<DictEntry> ingest(const std::string& path, const std::string& format_id,
                              const NormalizationTable& table, const std::string& source_id = "",
                              IngestStats* stats = nullptr);

// Merged pronunciation lexicon. Immutable after merge; lookups never fail.
class DictStore {
 public:
  DictStore() = default;

  static DictStore merge(const std::vector<std::vector<DictEntry>>& ingested);

  const DictEntry* find(std::string_view grapheme) const;
  std::vector<Word> lookup(std::string_view grapheme) const;  // empty when absent
  bool is_polyphone(std::string_view grapheme) const { return lookup(grapheme).size() >= 2; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::map<std::string, DictEntry>& entries() const { return entries_; }

  // One `grapheme<TAB>pronunciation` row per pair, sorted by grapheme then
  // pronunciation.
  void save_tsv(const std::string& path) const;

  friend bool operator==(const DictStore&, const DictStore&) = default;

 private:
  std::map<std::string, DictEntry> entries_;  // keyed by folded grapheme
};

}  // namespace g2p
