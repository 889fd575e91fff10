#include "g2p/finglish.hpp"

#include <algorithm>
#include <fstream>

#include "g2p/detail/text.hpp"
#include "g2p/normalize.hpp"

namespace g2p {

namespace {

bool is_separator(char c) { return c == '-' || c == '\''; }

// Single-token parse driven by the rule table; positions reported relative
// to `base` in the enclosing sentence.
Word parse_token(std::string_view token, const FinglishTable& table, std::size_t base) {
  Word out;
  std::size_t i = 0;
  while (i < token.size()) {
    char c = token[i];
    if (is_separator(c)) {  // barrier between letters, then dropped
      ++i;
      continue;
    }
    std::size_t len = 0;
    if (const FinglishRule* rule = table.match(token, i, &len)) {
      out.insert(out.end(), rule->target.begin(), rule->target.end());
      i += len;
      continue;
    }
    if (Phoneme::is_valid(c)) {
      out.emplace_back(c);
      ++i;
      continue;
    }
    throw UnknownCluster(base + i, std::string(detail::utf8_at(token, i)));
  }
  return out;
}

}  // namespace

UnknownCluster::UnknownCluster(std::size_t pos, std::string clus)
    : std::runtime_error("no Finglish rule for '" + clus + "' at byte " + std::to_string(pos)),
      position(pos),
      cluster(std::move(clus)) {}

FinglishTable FinglishTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open Finglish rule table: " + path);
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = detail::split_on(line, '\t');
    if (cols.size() < 2) throw TableError("Finglish rule table: malformed row '" + line + "'");
    rows.emplace_back(cols[0], cols[1]);
  }
  return from_rules(rows);
}

FinglishTable FinglishTable::from_rules(const std::vector<std::pair<std::string, std::string>>& rows) {
  FinglishTable t;
  for (const auto& [pattern, target] : rows) {
    if (pattern.empty()) throw TableError("Finglish rule: empty pattern");
    for (const auto& r : t.rules_)
      if (r.pattern == pattern) throw TableError("Finglish rule: conflicting pattern '" + pattern + "'");
    t.rules_.push_back({pattern, word_from_chars(target), t.rules_.size()});
  }
  // Longest first; file order breaks length ties (stable sort).
  std::stable_sort(t.rules_.begin(), t.rules_.end(),
                   [](const FinglishRule& a, const FinglishRule& b) {
                     return a.pattern.size() > b.pattern.size();
                   });
  t.build_render_forms();
  return t;
}

const FinglishRule* FinglishTable::match(std::string_view text, std::size_t pos, std::size_t* len) const {
  for (const FinglishRule& r : rules_) {
    if (text.compare(pos, r.pattern.size(), r.pattern) == 0) {
      *len = r.pattern.size();
      return &r;
    }
  }
  return nullptr;
}

void FinglishTable::build_render_forms() {
  auto parses_to = [this](const std::string& text, Phoneme p) {
    try {
      return parse_token(text, *this, 0) == Word{p};
    } catch (const UnknownCluster&) {
      return false;
    }
  };
  for (char c : Phoneme::inventory()) {
    Phoneme p(c);
    std::string identity(1, c);
    std::string& slot = render_forms_[static_cast<unsigned char>(c)];
    // Plain lowercase symbols keep their own spelling unless a rule shadows
    // it (e.g. "j" parses as /J/, so /j/ renders as "y").
    if (c >= 'a' && c <= 'z' && parses_to(identity, p)) {
      slot = identity;
      continue;
    }
    // Otherwise the earliest rule in file order that targets exactly this
    // phoneme ("aa" before "á" gives A -> "aa").
    const FinglishRule* best = nullptr;
    for (const FinglishRule& r : rules_)
      if ((!best || r.order < best->order) && r.target == Word{p} && parses_to(r.pattern, p)) best = &r;
    slot = best ? best->pattern : identity;
  }
}

PhonemeString finglish_to_phonemes(std::string_view text, const FinglishTable& table) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && detail::is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !detail::is_space(text[i])) ++i;
    if (i == start) continue;
    Word w = parse_token(text.substr(start, i - start), table, start);
    if (!w.empty()) words.push_back(std::move(w));
  }
  return PhonemeString(std::move(words));
}

std::string word_to_finglish(const Word& word, const FinglishTable& table) {
  auto parse_ok = [&](const std::string& text, std::size_t n) {
    Word expect(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(n));
    try {
      return parse_token(text, table, 0) == expect;
    } catch (const UnknownCluster&) {
      return false;
    }
  };
  std::string text;
  std::size_t done = 0;
  for (Phoneme p : word) {
    const std::string& form = table.render_form(p);
    if (parse_ok(text + form, done + 1))
      text += form;
    else
      text += "-" + form;
    ++done;
  }
  if (!parse_ok(text, word.size())) {
    // Fully separated spelling always re-parses phoneme by phoneme.
    text.clear();
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (k) text.push_back('-');
      text += table.render_form(word[k]);
    }
  }
  return text;
}

std::string phonemes_to_finglish(const PhonemeString& ps, const FinglishTable& table) {
  std::string out;
  for (std::size_t i = 0; i < ps.word_count(); ++i) {
    if (i) out.push_back(' ');
    out += word_to_finglish(ps.word(i), table);
  }
  return out;
}

const std::string& FinglishTable::render_form(Phoneme p) const {
  return render_forms_[static_cast<unsigned char>(p.symbol())];
}

}  // namespace g2p
