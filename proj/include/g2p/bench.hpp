#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "g2p/backend.hpp"
#include "g2p/dict.hpp"
#include "g2p/metrics.hpp"
#include "g2p/phoneme.hpp"
#include "g2p/prompt.hpp"
#include "g2p/resources.hpp"

namespace g2p {

struct ParseError : std::runtime_error {
  std::size_t line;
  std::string reason;
  ParseError(std::size_t line_, std::string reason_);
};

struct InvariantViolation : std::runtime_error {
  std::size_t line;
  std::string field;
  InvariantViolation(std::size_t line_, std::string field_);
};

struct MissingPrediction : std::runtime_error {
  std::size_t row;
  explicit MissingPrediction(std::size_t row_);
};

struct BenchRow {
  std::size_t row = 0;   // 0-based data row index
  std::size_t line = 0;  // 1-based file line, for error reporting
  std::string grapheme;
  PhonemeString phonemes;
  std::optional<std::string> polyphone_word;
  std::optional<Word> pronunciation;
  std::string source;
};

// TSV with header grapheme/phonemes/polyphone_word/pronunciation/source.
// polyphone_word and pronunciation are both present or both absent; when
// present the word occurs in the sentence and the pronunciation is one word.
std::vector<BenchRow> load_dataset(const std::string& path);

struct RunConfig {
  StrategyKind strategy = kDefaultStrategy;
  std::string dataset;
  std::vector<std::string> dict_paths;
  std::string dict_format = "tsv";
  std::size_t parallelism = 4;
  double theta = 0.5;

  std::string backend_kind = "replay";  // "replay" or "http"
  std::string replay_path;
  HttpBackend::Options http;
  std::string transcript_out;  // record exchanges for later replay

  std::string out_json;
  std::string out_md;

  void validate() const;  // parallelism >= 1, theta in [0, 1]
};

// Converts every dataset row through the orchestrator under bounded
// parallelism and aggregates the metrics. Per-row backend failures become
// failed rows; only dataset problems abort. Writes the JSON/markdown
// reports when the config names them.
EvalReport run_eval(const RunConfig& config, const Resources& res, const DictStore& dict,
                    LlmBackend& backend);

// Scores an existing predictions file (grapheme<TAB>phonemes, keyed by
// grapheme or by dataset row order) with no backend involved.
EvalReport score_external(const std::string& predictions_path, const std::string& dataset_path,
                          const DictStore& dict, const RunConfig& config = {});

// Deterministic report serializations. `backend` may be null (external
// scoring). generated_at is a timestamp only for live backends, so replay
// reports are byte-identical across runs.
std::string report_to_json(const EvalReport& report, const RunConfig& config,
                           const LlmBackend* backend);
std::string report_to_markdown(const EvalReport& report, const RunConfig& config,
                               const LlmBackend* backend);

}  // namespace g2p
