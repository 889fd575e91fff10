#include "g2p/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace g2p {

TargetNotFound::TargetNotFound(const std::string& word)
    : std::runtime_error("polyphone target word not present in sentence: " + word) {}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);  // keep the rows short
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t per_reference_length(const PhonemeString& ref) { return render(ref).size(); }

std::size_t per_distance(const PhonemeString& pred, const PhonemeString& ref) {
  return levenshtein(render(pred), render(ref));
}

double per(const PhonemeString& pred, const PhonemeString& ref) {
  const std::size_t len = per_reference_length(ref);
  if (len == 0) throw EmptyReference();
  return static_cast<double>(per_distance(pred, ref)) / static_cast<double>(len);
}

double word_distance(const Word& a, const Word& b) {
  const std::string ra = render_word(a), rb = render_word(b);
  const std::size_t longer = std::max(ra.size(), rb.size());
  if (longer == 0) return 0.0;
  return static_cast<double>(levenshtein(ra, rb)) / static_cast<double>(longer);
}

WordAlignment align_words(const PhonemeString& ref, const PhonemeString& pred) {
  return align_sequences(ref.word_count(), pred.word_count(), [&](std::size_t i, std::size_t j) {
    return word_distance(ref.word(i), pred.word(j));
  });
}

namespace {

bool ends_with_ezafe_e(const Word& w) { return !w.empty() && w.back().symbol() == 'e'; }

// Stems obtained by stripping the Ezafe: "...Xje" -> "...X" when X is a
// vowel (the glide form), "...Xe" -> "...X" otherwise. Longest strip first.
std::vector<Word> ezafe_stems(const Word& w) {
  std::vector<Word> stems;
  if (!ends_with_ezafe_e(w)) return stems;
  const std::size_t n = w.size();
  if (n >= 3 && w[n - 2].symbol() == 'j' && w[n - 3].is_vowel())
    stems.emplace_back(w.begin(), w.end() - 2);
  if (n >= 2) stems.emplace_back(w.begin(), w.end() - 1);
  return stems;
}

}  // namespace

bool ezafe_label(const Word& word, std::string_view grapheme, const DictStore& dict) {
  const std::vector<Word> stems = ezafe_stems(word);
  if (stems.empty()) return false;
  const std::vector<Word>& prons = dict.lookup(grapheme);
  if (prons.empty()) return true;  // OOV: trust the suffix
  for (const Word& stem : stems)
    if (std::find(prons.begin(), prons.end(), stem) != prons.end()) return true;
  // The suffix matches no listed stem; it is Ezafe unless the lexical form
  // itself ends in /e/.
  return std::none_of(prons.begin(), prons.end(), ends_with_ezafe_e);
}

std::optional<double> EzafeStats::precision() const {
  const std::uint64_t d = tp + fp;
  if (d == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(d);
}

std::optional<double> EzafeStats::recall() const {
  const std::uint64_t d = tp + fn;
  if (d == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(d);
}

std::optional<double> EzafeStats::f1() const {
  const auto p = precision(), r = recall();
  if (!p || !r || *p + *r == 0.0) return std::nullopt;
  return 2.0 * *p * *r / (*p + *r);
}

std::optional<double> EzafeStats::accuracy() const {
  const std::uint64_t d = total();
  if (d == 0) return std::nullopt;
  return static_cast<double>(tp + tn) / static_cast<double>(d);
}

EzafeStats& EzafeStats::operator+=(const EzafeStats& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  return *this;
}

EzafeStats ezafe_sentence_stats(const PhonemeString& ref, const PhonemeString& pred,
                                const std::vector<std::string>& graphemes, const DictStore& dict) {
  // Graphemes inform the label only when they line up with the reference
  // one-to-one; otherwise fall back to the suffix-only judgement.
  const bool have_graphemes = graphemes.size() == ref.word_count();
  const auto grapheme_of = [&](std::optional<std::size_t> ref_idx) -> std::string_view {
    if (have_graphemes && ref_idx) return graphemes[*ref_idx];
    return {};
  };

  EzafeStats s;
  const WordAlignment al = align_words(ref, pred);
  for (const AlignedPair& p : al.pairs) {
    const bool ref_label = p.ref && ezafe_label(ref.word(*p.ref), grapheme_of(p.ref), dict);
    const bool pred_label = p.pred && ezafe_label(pred.word(*p.pred), grapheme_of(p.ref), dict);
    if (ref_label && pred_label)
      ++s.tp;
    else if (!ref_label && pred_label)
      ++s.fp;
    else if (ref_label && !pred_label)
      ++s.fn;
    else
      ++s.tn;
  }
  return s;
}

EzafeStats ezafe_stats(const std::vector<SentencePair>& pairs, const DictStore& dict) {
  EzafeStats s;
  for (const SentencePair& p : pairs) s += ezafe_sentence_stats(p.ref, p.pred, p.graphemes, dict);
  return s;
}

PolyphoneOutcome polyphone_outcome(const PhonemeString& pred,
                                   const std::vector<std::string>& graphemes,
                                   std::string_view target_word, const Word& target_pron,
                                   const PhonemeString& ref) {
  const std::string folded = fold_grapheme_key(target_word);
  std::size_t pos = graphemes.size();
  for (std::size_t i = 0; i < graphemes.size(); ++i)
    if (fold_grapheme_key(graphemes[i]) == folded) {
      pos = i;
      break;
    }
  if (pos == graphemes.size() || graphemes.size() != ref.word_count())
    throw TargetNotFound(std::string(target_word));

  PolyphoneOutcome out;
  out.word = std::string(target_word);
  out.target = render_word(target_pron);
  const WordAlignment al = align_words(ref, pred);
  for (const AlignedPair& p : al.pairs) {
    if (!p.ref || *p.ref != pos) continue;
    if (p.pred) {
      out.predicted = render_word(pred.word(*p.pred));
      out.correct = pred.word(*p.pred) == target_pron;
    }
    break;
  }
  return out;
}

bool polyphone_correct(const PhonemeString& pred, const std::vector<std::string>& graphemes,
                       std::string_view target_word, const Word& target_pron,
                       const PhonemeString& ref) {
  return polyphone_outcome(pred, graphemes, target_word, target_pron, ref).correct;
}

EvalReport aggregate_records(std::vector<SentenceRecord> records) {
  EvalReport r;
  for (const SentenceRecord& rec : records) {
    if (rec.failed) {
      ++r.failed_rows;
      continue;
    }
    r.per_distance_total += rec.distance;
    r.per_reference_total += rec.ref_len;
    r.ezafe += rec.ezafe;
    if (rec.polyphone) {
      ++r.polyphone_total;
      if (rec.polyphone->correct) ++r.polyphone_correct;
    }
  }
  r.per = r.per_reference_total == 0
              ? 0.0
              : static_cast<double>(r.per_distance_total) / static_cast<double>(r.per_reference_total);
  if (r.polyphone_total > 0)
    r.polyphone_accuracy =
        static_cast<double>(r.polyphone_correct) / static_cast<double>(r.polyphone_total);
  r.per_sentence = std::move(records);
  return r;
}

}  // namespace g2p
