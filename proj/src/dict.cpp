#include "g2p/dict.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "g2p/detail/text.hpp"

namespace g2p {

namespace {

// Compositions the source dictionaries write decomposed (alef+madda etc.).
const std::pair<std::string_view, std::string_view> kCompose[] = {
    {"آ", "آ"},  // alef + madda -> آ
    {"أ", "أ"},  // alef + hamza above -> أ
    {"إ", "إ"},  // alef + hamza below -> إ
    {"ؤ", "ؤ"},  // waw + hamza -> ؤ
    {"یٔ", "ئ"},  // yeh + hamza -> ئ
    {"ئ", "ئ"},
    {"ۀ", "ۀ"},  // ae + hamza -> ۀ
    {"هٔ", "ۀ"},
};

std::string source_id_or_basename(const std::string& source_id, const std::string& path) {
  if (!source_id.empty()) return source_id;
  return std::filesystem::path(path).filename().string();
}

std::vector<std::string> split_pronunciation_list(const std::string& raw) {
  std::string unified = raw;
  // Persian comma U+060C -> ASCII comma before splitting.
  std::size_t pos = 0;
  while ((pos = unified.find("،", pos)) != std::string::npos) {
    unified.replace(pos, 2, ",");
    ++pos;
  }
  std::vector<std::string> parts = detail::split_on(unified, ',');
  std::vector<std::string> out;
  for (auto& p : parts) {
    auto t = detail::trim(p);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace

UnreadableFile::UnreadableFile(const std::string& path)
    : std::runtime_error("cannot read file: " + path) {}

FormatUnknown::FormatUnknown(const std::string& format_id)
    : std::runtime_error("unknown dictionary format: " + format_id) {}

std::string fold_grapheme_key(std::string_view grapheme) {
  std::string s(detail::trim(grapheme));
  for (const auto& [from, to] : kCompose) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
      s.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    std::string_view cp = detail::utf8_at(s, i);
    i += cp.size();
    if (cp == "ـ" || cp == "‌") continue;  // tatweel, ZWNJ: keying only
    if (cp == "ي") cp = "ی";               // Arabic yeh -> Persian yeh
    if (cp == "ك") cp = "ک";               // Arabic kaf -> Persian kaf
    out += cp;
  }
  return out;
}

std::vector<DictEntry> ingest(const std::string& path, const std::string& format_id,
                              const NormalizationTable& table, const std::string& source_id,
                              IngestStats* stats) {
  bool multi = false;
  if (format_id == "tsv")
    multi = false;
  else if (format_id == "tsv-multi")
    multi = true;
  else
    throw FormatUnknown(format_id);

  std::ifstream in(path);
  if (!in) throw UnreadableFile(path);
  const std::string source = source_id_or_basename(source_id, path);

  std::vector<DictEntry> out;
  IngestStats local;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    ++local.rows;
    auto cols = detail::split_on(line, '\t');
    std::string grapheme(detail::trim(cols[0]));
    if (cols.size() < 2 || grapheme.empty()) {
      ++local.skipped;
      continue;
    }
    std::vector<std::string> raws =
        multi ? split_pronunciation_list(cols[1]) : std::vector<std::string>{cols[1]};
    bool any = false;
    for (const std::string& raw : raws) {
      NormalizedText norm = normalize_raw(raw, table);
      if (norm.phonemes.word_count() != 1) continue;  // must be exactly one word
      out.push_back({grapheme, {norm.phonemes.word(0)}, {source}});
      any = true;
    }
    if (!any) ++local.skipped;
  }
  if (stats) *stats = local;
  return out;
}

DictStore DictStore::merge(const std::vector<std::vector<DictEntry>>& ingested) {
  DictStore store;
  for (const auto& list : ingested) {
    for (const DictEntry& e : list) {
      std::string key = fold_grapheme_key(e.grapheme);
      if (key.empty()) continue;
      DictEntry& slot = store.entries_[key];
      if (slot.grapheme.empty() || e.grapheme < slot.grapheme) slot.grapheme = e.grapheme;
      for (const Word& w : e.pronunciations)
        if (std::find(slot.pronunciations.begin(), slot.pronunciations.end(), w) ==
            slot.pronunciations.end())
          slot.pronunciations.push_back(w);
      slot.sources.insert(e.sources.begin(), e.sources.end());
    }
  }
  for (auto& [key, entry] : store.entries_)
    std::sort(entry.pronunciations.begin(), entry.pronunciations.end(),
              [](const Word& a, const Word& b) { return render_word(a) < render_word(b); });
  return store;
}

const DictEntry* DictStore::find(std::string_view grapheme) const {
  auto it = entries_.find(fold_grapheme_key(grapheme));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Word> DictStore::lookup(std::string_view grapheme) const {
  const DictEntry* e = find(grapheme);
  return e ? e->pronunciations : std::vector<Word>{};
}

void DictStore::save_tsv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw UnreadableFile(path);
  for (const auto& [key, entry] : entries_)
    for (const Word& w : entry.pronunciations)
      out << entry.grapheme << '\t' << render_word(w) << '\n';
}

}  // namespace g2p
