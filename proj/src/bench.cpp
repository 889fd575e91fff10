#include "g2p/bench.hpp"

#include <atomic>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "g2p/detail/text.hpp"
#include "g2p/orchestrator.hpp"

namespace g2p {

using nlohmann::json;

ParseError::ParseError(std::size_t line_, std::string reason_)
    : std::runtime_error("line " + std::to_string(line_) + ": " + reason_),
      line(line_),
      reason(std::move(reason_)) {}

InvariantViolation::InvariantViolation(std::size_t line_, std::string field_)
    : std::runtime_error("line " + std::to_string(line_) + ": invalid field " + field_),
      line(line_),
      field(std::move(field_)) {}

MissingPrediction::MissingPrediction(std::size_t row_)
    : std::runtime_error("no prediction for dataset row " + std::to_string(row_)), row(row_) {}

namespace {

constexpr std::string_view kDatasetHeader = "grapheme\tphonemes\tpolyphone_word\tpronunciation\tsource";

bool word_in_sentence(std::string_view word, const std::vector<std::string>& sentence_words) {
  const std::string folded = fold_grapheme_key(word);
  for (const std::string& w : sentence_words)
    if (fold_grapheme_key(w) == folded) return true;
  return false;
}

}  // namespace

std::vector<BenchRow> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open dataset: " + path);

  std::vector<BenchRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kDatasetHeader)
        throw ParseError(lineno, "expected header '" + std::string(kDatasetHeader) + "'");
      saw_header = true;
      continue;
    }

    const std::vector<std::string> cols = detail::split_on(line, '\t');
    if (cols.size() != 5) throw ParseError(lineno, "expected 5 tab-separated columns, got " +
                                                       std::to_string(cols.size()));
    BenchRow row;
    row.row = rows.size();
    row.line = lineno;
    row.grapheme = std::string(detail::trim(cols[0]));
    row.source = std::string(detail::trim(cols[4]));
    if (row.grapheme.empty()) throw InvariantViolation(lineno, "grapheme");

    try {
      row.phonemes = parse_canonical(cols[1]);
    } catch (const UnknownSymbol& e) {
      throw ParseError(lineno, "phonemes not canonical: unknown symbol '" + e.symbol + "'");
    }
    if (row.phonemes.empty()) throw InvariantViolation(lineno, "phonemes");

    const std::string poly = std::string(detail::trim(cols[2]));
    const std::string pron = std::string(detail::trim(cols[3]));
    if (poly.empty() != pron.empty())
      throw InvariantViolation(lineno, poly.empty() ? "polyphone_word" : "pronunciation");
    if (!poly.empty()) {
      if (!word_in_sentence(poly, detail::split_ws(row.grapheme)))
        throw InvariantViolation(lineno, "polyphone_word");
      PhonemeString parsed;
      try {
        parsed = parse_canonical(pron);
      } catch (const UnknownSymbol&) {
        throw InvariantViolation(lineno, "pronunciation");
      }
      if (parsed.word_count() != 1) throw InvariantViolation(lineno, "pronunciation");
      row.polyphone_word = poly;
      row.pronunciation = parsed.word(0);
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw ParseError(lineno, "empty file: missing header");
  return rows;
}

void RunConfig::validate() const {
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("theta must be within [0, 1]");
}

namespace {

// Metrics shared by the conversion and external-scoring paths.
void fill_scores(SentenceRecord& rec, const BenchRow& row, const PhonemeString& pred,
                 const DictStore& dict) {
  rec.prediction = render(pred);
  rec.distance = per_distance(pred, row.phonemes);
  rec.per = rec.ref_len == 0 ? 0.0
                             : static_cast<double>(rec.distance) / static_cast<double>(rec.ref_len);
  const std::vector<std::string> graphemes = detail::split_ws(row.grapheme);
  rec.ezafe = ezafe_sentence_stats(row.phonemes, pred, graphemes, dict);
  if (row.polyphone_word) {
    try {
      rec.polyphone =
          polyphone_outcome(pred, graphemes, *row.polyphone_word, *row.pronunciation, row.phonemes);
    } catch (const TargetNotFound&) {
      PolyphoneOutcome missed;
      missed.word = *row.polyphone_word;
      missed.target = render_word(*row.pronunciation);
      rec.polyphone = std::move(missed);
    }
  }
}

SentenceRecord base_record(const BenchRow& row) {
  SentenceRecord rec;
  rec.row = row.row;
  rec.grapheme = row.grapheme;
  rec.reference = render(row.phonemes);
  rec.ref_len = per_reference_length(row.phonemes);
  return rec;
}

std::string rfc3339_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string percent(std::optional<double> value) {
  if (!value) return "N/D";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *value * 100.0);
  return buf;
}

json ezafe_counts_json(const EzafeStats& s) {
  return {{"tp", s.tp}, {"fp", s.fp}, {"fn", s.fn}, {"tn", s.tn}};
}

json optional_number(std::optional<double> v) {
  if (!v) return nullptr;
  return *v;
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << content;
}

}  // namespace

std::string report_to_json(const EvalReport& report, const RunConfig& config,
                           const LlmBackend* backend) {
  json j;
  j["backend"] =
      backend == nullptr ? json(nullptr) : json{{"name", backend->name()}, {"model", backend->model()}};
  j["config"] = {
      {"dataset", config.dataset},   {"dict", config.dict_paths},
      {"parallelism", config.parallelism}, {"strategy", to_string(config.strategy)},
      {"theta", config.theta},
  };
  // Only live runs get a wall-clock stamp; replay reports stay reproducible.
  j["generated_at"] = backend != nullptr && backend->name() == "http" ? json(rfc3339_now()) : json(nullptr);

  json ez = ezafe_counts_json(report.ezafe);
  ez["accuracy"] = optional_number(report.ezafe.accuracy());
  ez["precision"] = optional_number(report.ezafe.precision());
  ez["recall"] = optional_number(report.ezafe.recall());
  ez["f1"] = optional_number(report.ezafe.f1());
  j["metrics"] = {
      {"per", report.per},
      {"per_distance", report.per_distance_total},
      {"per_reference_length", report.per_reference_total},
      {"polyphone",
       {{"accuracy", optional_number(report.polyphone_accuracy)},
        {"correct", report.polyphone_correct},
        {"total", report.polyphone_total}}},
      {"ezafe", ez},
      {"failed_rows", report.failed_rows},
      {"rows_scored", report.per_sentence.size() - report.failed_rows},
  };

  json rows = json::array();
  for (const SentenceRecord& rec : report.per_sentence) {
    json r = {
        {"row", rec.row},
        {"grapheme", rec.grapheme},
        {"reference", rec.reference},
        {"prediction", rec.prediction},
        {"distance", rec.distance},
        {"ref_len", rec.ref_len},
        {"per", rec.per},
        {"ezafe", ezafe_counts_json(rec.ezafe)},
        {"round_trips", rec.round_trips},
        {"corrections", rec.corrections},
        {"dropped_chars", rec.dropped_chars},
        {"failed", rec.failed},
        {"error", rec.failed ? json(rec.error) : json(nullptr)},
    };
    if (rec.polyphone) {
      r["polyphone"] = {{"word", rec.polyphone->word},
                        {"target", rec.polyphone->target},
                        {"predicted", rec.polyphone->predicted},
                        {"correct", rec.polyphone->correct}};
    } else {
      r["polyphone"] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string report_to_markdown(const EvalReport& report, const RunConfig& config,
                               const LlmBackend* backend) {
  std::string out;
  out += "# G2P Evaluation Report\n\n";
  out += "- Dataset: " + config.dataset + " (" + std::to_string(report.per_sentence.size()) +
         " rows";
  if (report.failed_rows > 0) out += ", " + std::to_string(report.failed_rows) + " failed";
  out += ")\n";
  if (backend != nullptr) {
    out += "- Strategy: " + to_string(config.strategy) + "\n";
    out += "- Backend: " + backend->name() + " (" + backend->model() + ")\n";
  } else {
    out += "- Mode: external predictions\n";
  }
  out += "\n";
  out += "| PER (%) | Polyphone Acc. (%) | Ezafe Accuracy (%) | Ezafe Precision (%) | "
         "Ezafe Recall (%) | Ezafe F1 (%) |\n";
  out += "| --- | --- | --- | --- | --- | --- |\n";
  out += "| " + percent(report.per) + " | " + percent(report.polyphone_accuracy) + " | " +
         percent(report.ezafe.accuracy()) + " | " + percent(report.ezafe.precision()) + " | " +
         percent(report.ezafe.recall()) + " | " + percent(report.ezafe.f1()) + " |\n";
  return out;
}

namespace {

void write_reports(const EvalReport& report, const RunConfig& config, const LlmBackend* backend) {
  if (!config.out_json.empty()) write_text_file(config.out_json, report_to_json(report, config, backend));
  if (!config.out_md.empty())
    write_text_file(config.out_md, report_to_markdown(report, config, backend));
}

}  // namespace

EvalReport run_eval(const RunConfig& config, const Resources& res, const DictStore& dict,
                    LlmBackend& backend) {
  config.validate();
  const std::vector<BenchRow> rows = load_dataset(config.dataset);

  Orchestrator::Options opts;
  opts.theta = config.theta;
  const Orchestrator orch(res.normalization, res.finglish, res.prompts, opts);

  std::vector<SentenceRecord> records(rows.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      SentenceRecord rec = base_record(rows[i]);
      try {
        const ConversionResult conv = orch.convert(rows[i].grapheme, config.strategy, backend, dict);
        fill_scores(rec, rows[i], conv.phonemes, dict);
        rec.round_trips = conv.raw_responses.size();
        rec.corrections = conv.corrections_applied;
        rec.dropped_chars = conv.dropped_chars;
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
      }
      records[i] = std::move(rec);
    }
  };

  const std::size_t n_threads = std::min<std::size_t>(config.parallelism, std::max<std::size_t>(rows.size(), 1));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  EvalReport report = aggregate_records(std::move(records));
  write_reports(report, config, &backend);
  return report;
}

EvalReport score_external(const std::string& predictions_path, const std::string& dataset_path,
                          const DictStore& dict, const RunConfig& config) {
  const std::vector<BenchRow> rows = load_dataset(dataset_path);

  std::ifstream in(predictions_path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open predictions: " + predictions_path);
  std::vector<std::pair<std::string, PhonemeString>> preds;  // (grapheme, phonemes) in file order
  std::unordered_map<std::string, std::size_t> by_grapheme;  // folded grapheme -> preds index
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (preds.empty() && line == "grapheme\tphonemes") continue;  // optional header
    const std::vector<std::string> cols = detail::split_on(line, '\t');
    if (cols.size() != 2)
      throw ParseError(lineno, "expected grapheme<TAB>phonemes, got " +
                                   std::to_string(cols.size()) + " columns");
    PhonemeString parsed;
    try {
      parsed = parse_canonical(cols[1]);
    } catch (const UnknownSymbol& e) {
      throw ParseError(lineno, "prediction not canonical: unknown symbol '" + e.symbol + "'");
    }
    by_grapheme.emplace(fold_grapheme_key(detail::trim(cols[0])), preds.size());
    preds.emplace_back(std::string(detail::trim(cols[0])), std::move(parsed));
  }

  // Key by grapheme when every dataset sentence is covered; otherwise fall
  // back to row order when the counts line up.
  bool all_found = true;
  for (const BenchRow& row : rows)
    if (by_grapheme.find(fold_grapheme_key(row.grapheme)) == by_grapheme.end()) {
      all_found = false;
      break;
    }
  const bool by_order = !all_found && preds.size() == rows.size();

  std::vector<SentenceRecord> records;
  records.reserve(rows.size());
  for (const BenchRow& row : rows) {
    const PhonemeString* pred = nullptr;
    if (by_order) {
      pred = &preds[row.row].second;
    } else {
      const auto it = by_grapheme.find(fold_grapheme_key(row.grapheme));
      if (it == by_grapheme.end()) throw MissingPrediction(row.row);
      pred = &preds[it->second].second;
    }
    SentenceRecord rec = base_record(row);
    fill_scores(rec, row, *pred, dict);
    records.push_back(std::move(rec));
  }

  EvalReport report = aggregate_records(std::move(records));
  RunConfig echo = config;
  echo.dataset = dataset_path;
  write_reports(report, echo, nullptr);
  return report;
}

}  // namespace g2p
