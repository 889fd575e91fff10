#include "g2p/prompt.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "g2p/detail/text.hpp"

namespace g2p {

StrategyKind parse_strategy(std::string_view name) {
  if (name == "naive") return StrategyKind::kNaive;
  if (name == "in-context") return StrategyKind::kInContext;
  if (name == "finglish") return StrategyKind::kFinglish;
  if (name == "rule-corrected") return StrategyKind::kRuleCorrected;
  if (name == "llm-corrected") return StrategyKind::kLlmCorrected;
  if (name == "hints1") return StrategyKind::kHints1;
  if (name == "hints2") return StrategyKind::kHints2;
  if (name == "hints3") return StrategyKind::kHints3;
  if (name == "combined") return StrategyKind::kCombined;
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kNaive: return "naive";
    case StrategyKind::kInContext: return "in-context";
    case StrategyKind::kFinglish: return "finglish";
    case StrategyKind::kRuleCorrected: return "rule-corrected";
    case StrategyKind::kLlmCorrected: return "llm-corrected";
    case StrategyKind::kHints1: return "hints1";
    case StrategyKind::kHints2: return "hints2";
    case StrategyKind::kHints3: return "hints3";
    case StrategyKind::kCombined: return "combined";
  }
  throw std::invalid_argument("invalid strategy kind");
}

std::vector<StrategyKind> all_strategies() {
  return {StrategyKind::kNaive,        StrategyKind::kInContext, StrategyKind::kFinglish,
          StrategyKind::kRuleCorrected, StrategyKind::kLlmCorrected, StrategyKind::kHints1,
          StrategyKind::kHints2,       StrategyKind::kHints3,    StrategyKind::kCombined};
}

bool finglish_output(StrategyKind kind) {
  return kind != StrategyKind::kNaive && kind != StrategyKind::kInContext;
}

std::size_t round_trips(StrategyKind kind) {
  return kind == StrategyKind::kLlmCorrected || kind == StrategyKind::kCombined ? 2 : 1;
}

void PromptStrategy::validate() const {
  if (template_text.empty()) throw std::invalid_argument("strategy template is empty");
  if (kind == StrategyKind::kNaive) {
    if (!shots.empty()) throw std::invalid_argument("naive strategy must not carry exemplars");
  } else if (shots.empty()) {
    throw std::invalid_argument(to_string(kind) + " strategy requires at least one exemplar");
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open prompt template: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Exemplar> read_shots(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open exemplar file: " + path);
  std::vector<Exemplar> shots;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = detail::split_on(line, '\t');
    if (cols.size() != 2)
      throw std::runtime_error(path + " line " + std::to_string(lineno) +
                               ": expected sentence<TAB>phonemes");
    shots.push_back({cols[0], parse_canonical(cols[1])});
  }
  return shots;
}

// Replaces every occurrence of `key` in `text`.
std::string replace_all(std::string text, std::string_view key, std::string_view value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::string render_shots(const std::vector<Exemplar>& shots, StrategyKind kind,
                         const FinglishTable& finglish) {
  std::ostringstream out;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (i > 0) out << "\n\n";
    out << "Sentence: " << shots[i].sentence << '\n';
    if (finglish_output(kind))
      out << "Finglish: " << phonemes_to_finglish(shots[i].phonemes, finglish);
    else
      out << "Phonemes: " << render(shots[i].phonemes);
  }
  return out.str();
}

}  // namespace

PromptLibrary PromptLibrary::load(const std::string& dir) {
  PromptLibrary lib;
  lib.naive_ = read_file(dir + "/naive.txt");
  lib.in_context_ = read_file(dir + "/in_context.txt");
  lib.finglish_ = read_file(dir + "/finglish.txt");
  lib.hints1_ = read_file(dir + "/hints1.txt");
  lib.hints2_ = read_file(dir + "/hints2.txt");
  lib.hints3_ = read_file(dir + "/hints3.txt");
  lib.correction_ = read_file(dir + "/correction.txt");
  lib.shots_ = read_shots(dir + "/shots.tsv");
  return lib;
}

const std::string& PromptLibrary::template_for(StrategyKind kind) const {
  switch (kind) {
    case StrategyKind::kNaive: return naive_;
    case StrategyKind::kInContext: return in_context_;
    case StrategyKind::kFinglish:
    case StrategyKind::kRuleCorrected:
    case StrategyKind::kLlmCorrected: return finglish_;
    case StrategyKind::kHints1: return hints1_;
    case StrategyKind::kHints2: return hints2_;
    case StrategyKind::kHints3:
    case StrategyKind::kCombined: return hints3_;
  }
  throw std::invalid_argument("invalid strategy kind");
}

PromptStrategy PromptLibrary::strategy(StrategyKind kind) const {
  PromptStrategy s;
  s.kind = kind;
  s.template_text = template_for(kind);
  if (kind != StrategyKind::kNaive) s.shots = shots_;
  s.validate();
  return s;
}

std::vector<Hint> dictionary_hints(const std::vector<std::string>& words, const DictStore& dict,
                                   HintMode mode) {
  std::vector<Hint> hints;
  std::unordered_set<std::string> seen;
  for (const std::string& word : words) {
    if (!seen.insert(fold_grapheme_key(word)).second) continue;
    std::vector<Word> prons = dict.lookup(word);
    if (prons.empty()) continue;
    if (mode == HintMode::kSingleOnly && prons.size() != 1) continue;
    hints.push_back({word, std::move(prons)});
  }
  return hints;
}

std::string render_hints(const std::vector<Hint>& hints, const FinglishTable& finglish) {
  if (hints.empty()) return "(none)";
  std::ostringstream out;
  for (std::size_t i = 0; i < hints.size(); ++i) {
    if (i > 0) out << '\n';
    out << "- " << hints[i].grapheme << ": ";
    for (std::size_t j = 0; j < hints[i].pronunciations.size(); ++j) {
      if (j > 0) out << " / ";
      out << word_to_finglish(hints[i].pronunciations[j], finglish);
    }
  }
  return out.str();
}

std::string substitute_known_words(const std::vector<std::string>& words, const DictStore& dict,
                                   const FinglishTable& finglish) {
  std::ostringstream out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out << ' ';
    const std::vector<Word> prons = dict.lookup(words[i]);
    if (prons.size() == 1)
      out << word_to_finglish(prons[0], finglish);
    else
      out << words[i];
  }
  return out.str();
}

std::string build_prompt(const PromptStrategy& strategy, std::string_view sentence,
                         const DictStore& dict, const FinglishTable& finglish) {
  strategy.validate();
  const std::vector<std::string> words = detail::split_ws(sentence);

  std::string hints_text;
  switch (strategy.kind) {
    case StrategyKind::kHints1:
      hints_text = render_hints(dictionary_hints(words, dict, HintMode::kAllAlternatives), finglish);
      break;
    case StrategyKind::kHints2:
      hints_text = render_hints(dictionary_hints(words, dict, HintMode::kSingleOnly), finglish);
      break;
    case StrategyKind::kHints3:
    case StrategyKind::kCombined:
      hints_text = substitute_known_words(words, dict, finglish);
      break;
    default:
      break;  // no dictionary content in the prompt
  }

  std::string text = replace_all(strategy.template_text, "{shots}",
                                 render_shots(strategy.shots, strategy.kind, finglish));
  text = replace_all(std::move(text), "{hints}", hints_text);
  text = replace_all(std::move(text), "{sentence}", sentence);
  return text;
}

std::string build_correction_prompt(const PromptLibrary& library, std::string_view sentence,
                                    std::string_view draft, const DictStore& dict,
                                    const FinglishTable& finglish) {
  const std::vector<std::string> words = detail::split_ws(sentence);
  const std::string hints_text =
      render_hints(dictionary_hints(words, dict, HintMode::kAllAlternatives), finglish);
  std::string text = replace_all(library.correction_template(), "{shots}",
                                 render_shots(library.shots(), StrategyKind::kFinglish, finglish));
  text = replace_all(std::move(text), "{hints}", hints_text);
  text = replace_all(std::move(text), "{draft}", draft);
  text = replace_all(std::move(text), "{sentence}", sentence);
  return text;
}

}  // namespace g2p
