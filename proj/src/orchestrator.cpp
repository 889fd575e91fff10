#include "g2p/orchestrator.hpp"

#include <algorithm>

#include "g2p/detail/text.hpp"
#include "g2p/metrics.hpp"

namespace g2p {

AlignmentMismatch::AlignmentMismatch(std::size_t expected_, std::size_t actual_)
    : std::runtime_error("word count mismatch: expected " + std::to_string(expected_) +
                         ", got " + std::to_string(actual_)),
      expected(expected_),
      actual(actual_) {}

std::string sanitize_finglish(std::string_view raw, const FinglishTable& table,
                              std::size_t* dropped) {
  std::string out;
  out.reserve(raw.size());
  const auto put_space = [&out] {
    if (!out.empty() && out.back() != ' ') out.push_back(' ');
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (detail::is_space(c)) {
      put_space();
      ++i;
      continue;
    }
    const unsigned char uc = static_cast<unsigned char>(c);
    if (uc < 0x80) {
      if ((c >= 'a' && c <= 'z') || c == '-' || c == '\'' || c == '?' ||
          (c >= 'A' && c <= 'Z' && Phoneme::is_valid(c))) {
        out.push_back(c);
      } else if (c >= 'A' && c <= 'Z') {
        out.push_back(static_cast<char>(c - 'A' + 'a'));
      } else if (dropped) {
        ++*dropped;
      }
      ++i;
      continue;
    }
    // Non-ASCII survives only when it is itself a mapping-rule pattern.
    const std::string_view cp = detail::utf8_at(raw, i);
    std::size_t len = 0;
    const FinglishRule* rule = table.match(cp, 0, &len);
    if (rule != nullptr && len == cp.size()) {
      out.append(cp);
    } else if (dropped) {
      ++*dropped;
    }
    i += cp.size();
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

PhonemeString parse_finglish_total(std::string text, const FinglishTable& table,
                                   std::size_t* dropped) {
  for (;;) {
    try {
      return finglish_to_phonemes(text, table);
    } catch (const UnknownCluster& e) {
      text.erase(e.position, e.cluster.size());
      if (dropped) ++*dropped;
    }
  }
}

namespace {

// Halves of a word for gap filling; the first half gets the extra phoneme.
std::pair<Word, Word> split_word(const Word& w) {
  const std::size_t first = (w.size() + 1) / 2;
  return {Word(w.begin(), w.begin() + first), Word(w.begin() + first, w.end())};
}

double slot_cost(const std::vector<Word>& prons, const Word& pred) {
  if (prons.empty()) return 0.5;  // out of vocabulary: neutral
  double best = 1.0;
  for (const Word& p : prons) best = std::min(best, word_distance(p, pred));
  return best;
}

}  // namespace

PhonemeString reconcile_to_words(const PhonemeString& pred,
                                 const std::vector<std::string>& graphemes,
                                 const DictStore& dict) {
  const std::size_t m = graphemes.size();
  const std::size_t n = pred.word_count();
  if (n == m || n == 0 || m == 0) return pred;

  std::vector<std::vector<Word>> prons(m);
  for (std::size_t i = 0; i < m; ++i) prons[i] = dict.lookup(graphemes[i]);

  const WordAlignment al = align_sequences(
      m, n, [&](std::size_t i, std::size_t j) { return slot_cost(prons[i], pred.word(j)); });

  // Distribute predicted words into grapheme slots; surplus words glue onto
  // the previous filled slot (or wait for the next one at the front).
  std::vector<Word> slots(m);
  std::size_t last_filled = m;  // m = none yet
  Word pending;                 // surplus seen before any slot was filled
  for (const AlignedPair& p : al.pairs) {
    if (p.ref && p.pred) {
      Word& slot = slots[*p.ref];
      slot = pred.word(*p.pred);
      if (!pending.empty()) {
        slot.insert(slot.begin(), pending.begin(), pending.end());
        pending.clear();
      }
      last_filled = *p.ref;
    } else if (p.pred) {
      const Word& extra = pred.word(*p.pred);
      if (last_filled < m)
        slots[last_filled].insert(slots[last_filled].end(), extra.begin(), extra.end());
      else
        pending.insert(pending.end(), extra.begin(), extra.end());
    }
  }
  if (!pending.empty()) {  // no slot was ever filled: everything lands in slot 0
    slots[0].insert(slots[0].end(), pending.begin(), pending.end());
  }

  // Fill empty slots by splitting the nearest splittable neighbour (ties
  // prefer the left). Repeat until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (!slots[i].empty()) continue;
      std::size_t donor = m;
      for (std::size_t d = 1; d < m && donor == m; ++d) {
        if (i >= d && slots[i - d].size() >= 2)
          donor = i - d;
        else if (i + d < m && slots[i + d].size() >= 2)
          donor = i + d;
      }
      if (donor == m) continue;
      auto [first, second] = split_word(slots[donor]);
      if (donor < i) {
        slots[donor] = std::move(first);
        slots[i] = std::move(second);
      } else {
        slots[i] = std::move(first);
        slots[donor] = std::move(second);
      }
      changed = true;
    }
  }

  std::vector<Word> words;
  words.reserve(m);
  for (Word& w : slots)
    if (!w.empty()) words.push_back(std::move(w));
  return PhonemeString(std::move(words));
}

PhonemeString rule_correct(const PhonemeString& predicted,
                           const std::vector<std::string>& graphemes, const DictStore& dict,
                           double theta, std::size_t* corrections) {
  if (predicted.word_count() != graphemes.size())
    throw AlignmentMismatch(graphemes.size(), predicted.word_count());

  std::vector<Word> out;
  out.reserve(predicted.word_count());
  for (std::size_t i = 0; i < predicted.word_count(); ++i) {
    const Word& word = predicted.word(i);
    const std::vector<Word> candidates = dict.lookup(graphemes[i]);
    const Word* best = nullptr;
    double best_sim = -1.0;
    for (const Word& cand : candidates) {
      const double sim = 1.0 - word_distance(word, cand);
      if (sim > best_sim) {  // strict: ties keep the earlier (sorted) candidate
        best_sim = sim;
        best = &cand;
      }
    }
    if (best != nullptr && best_sim >= theta) {
      if (*best != word && corrections) ++*corrections;
      out.push_back(*best);
    } else {
      out.push_back(word);
    }
  }
  return PhonemeString(std::move(out));
}

ConversionResult Orchestrator::convert(std::string_view sentence, StrategyKind kind,
                                       LlmBackend& backend, const DictStore& dict) const {
  ConversionResult result;
  result.strategy = kind;

  const std::vector<std::string> graphemes = detail::split_ws(sentence);
  if (graphemes.empty()) return result;  // zero backend calls

  const PromptStrategy strategy = prompts_.strategy(kind);
  const std::string first_prompt = build_prompt(strategy, sentence, dict, finglish_);
  std::string response = backend.complete(first_prompt, opts_.decode);
  result.raw_responses.push_back(response);

  if (round_trips(kind) == 2) {
    const std::string draft = sanitize_finglish(response, finglish_, nullptr);
    const std::string second_prompt =
        build_correction_prompt(prompts_, sentence, draft, dict, finglish_);
    response = backend.complete(second_prompt, opts_.decode);
    result.raw_responses.push_back(response);
  }

  PhonemeString parsed;
  if (finglish_output(kind)) {
    const std::string cleaned = sanitize_finglish(response, finglish_, &result.dropped_chars);
    parsed = parse_finglish_total(cleaned, finglish_, &result.dropped_chars);
  } else {
    NormalizedText normalized = normalize_raw(response, norm_);
    parsed = std::move(normalized.phonemes);
    result.dropped_chars += normalized.dropped;
  }

  parsed = reconcile_to_words(parsed, graphemes, dict);
  if (kind == StrategyKind::kRuleCorrected && parsed.word_count() == graphemes.size())
    parsed = rule_correct(parsed, graphemes, dict, opts_.theta, &result.corrections_applied);

  result.phonemes = std::move(parsed);
  return result;
}

}  // namespace g2p
