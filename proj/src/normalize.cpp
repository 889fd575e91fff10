#include "g2p/normalize.hpp"

#include <algorithm>
#include <fstream>

#include "g2p/detail/text.hpp"

namespace g2p {

namespace {

NormalizationTable::Target parse_target(const std::string& source, const std::string& target) {
  if (target == "_") return {NormalizationTable::TargetKind::kBoundary};
  if (target == "∅") return {NormalizationTable::TargetKind::kDelete};
  if (target.size() == 1 && Phoneme::is_valid(target[0]))
    return {NormalizationTable::TargetKind::kPhoneme, target[0]};
  throw TableError("normalization table: bad target '" + target + "' for source '" + source + "'");
}

}  // namespace

NormalizationTable NormalizationTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open normalization table: " + path);
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = detail::split_on(line, '\t');
    if (cols.size() < 2) throw TableError("normalization table: malformed row '" + line + "'");
    rows.emplace_back(cols[0], cols[1]);
  }
  return from_entries(rows);
}

NormalizationTable NormalizationTable::from_entries(
    const std::vector<std::pair<std::string, std::string>>& rows) {
  NormalizationTable t;
  for (const auto& [source, target] : rows) {
    if (source.empty()) throw TableError("normalization table: empty source cluster");
    Target tgt = parse_target(source, target);
    auto [it, inserted] = t.entries_.emplace(source, tgt);
    if (!inserted) throw TableError("normalization table: duplicate source '" + source + "'");
    t.max_source_bytes_ = std::max(t.max_source_bytes_, source.size());
  }
  return t;
}

const NormalizationTable::Target* NormalizationTable::match(std::string_view text, std::size_t pos,
                                                            std::size_t* len) const {
  std::size_t limit = std::min(max_source_bytes_, text.size() - pos);
  for (std::size_t n = limit; n >= 1; --n) {
    auto it = entries_.find(std::string(text.substr(pos, n)));
    if (it != entries_.end()) {
      *len = n;
      return &it->second;
    }
  }
  return nullptr;
}

std::vector<std::string> NormalizationTable::declared_sources() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [src, tgt] : entries_) out.push_back(src);
  std::sort(out.begin(), out.end());
  return out;
}

NormalizedText normalize_raw(std::string_view raw, const NormalizationTable& table) {
  std::vector<Word> words;
  Word current;
  std::size_t dropped = 0;
  auto flush = [&] {
    if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  };
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t len = 0;
    if (const auto* t = table.match(raw, i, &len)) {
      switch (t->kind) {
        case NormalizationTable::TargetKind::kPhoneme:
          current.emplace_back(t->phoneme);
          break;
        case NormalizationTable::TargetKind::kBoundary:
          flush();
          break;
        case NormalizationTable::TargetKind::kDelete:
          break;
      }
      i += len;
      continue;
    }
    char c = raw[i];
    if (detail::is_space(c)) {
      flush();
      ++i;
      continue;
    }
    if (Phoneme::is_valid(c)) {
      current.emplace_back(c);
      ++i;
      continue;
    }
    ++dropped;
    i += detail::utf8_len(raw, i);
  }
  flush();
  return {PhonemeString(std::move(words)), dropped};
}

}  // namespace g2p
