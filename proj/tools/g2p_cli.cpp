#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>

#include "g2p/backend.hpp"
#include "g2p/bench.hpp"
#include "g2p/orchestrator.hpp"
#include "g2p/resources.hpp"

namespace {

struct BackendArgs {
  std::string kind = "replay";
  std::string replay_path;
  std::string transcript_out;
  g2p::HttpBackend::Options http;
};

void add_backend_flags(CLI::App* cmd, BackendArgs& args) {
  cmd->add_option("--backend", args.kind, "replay or http")->check(CLI::IsMember({"replay", "http"}));
  cmd->add_option("--replay", args.replay_path, "JSONL transcript answering the prompts");
  cmd->add_option("--transcript", args.transcript_out, "record exchanges to this JSONL");
  cmd->add_option("--base-url", args.http.base_url, "chat-completions endpoint base URL");
  cmd->add_option("--model", args.http.model, "model name");
  cmd->add_option("--api-key-env", args.http.api_key_env,
                  "environment variable holding the API key (never a flag)");
  cmd->add_option("--timeout", args.http.timeout_seconds, "request timeout in seconds");
}

std::shared_ptr<g2p::LlmBackend> make_backend(const BackendArgs& args) {
  std::shared_ptr<g2p::LlmBackend> backend;
  if (args.kind == "replay") {
    if (args.replay_path.empty())
      throw std::invalid_argument("--backend replay requires --replay <transcript.jsonl>");
    backend = std::make_shared<g2p::ReplayBackend>(g2p::ReplayBackend::load(args.replay_path));
  } else {
    backend = std::make_shared<g2p::HttpBackend>(args.http);
  }
  if (!args.transcript_out.empty()) {
    auto writer = std::make_shared<g2p::TranscriptWriter>(args.transcript_out);
    backend = std::make_shared<g2p::RecordingBackend>(backend, writer);
  }
  return backend;
}

g2p::DictStore load_dicts(const std::vector<std::string>& paths, const std::string& format,
                          const g2p::NormalizationTable& table) {
  std::vector<std::vector<g2p::DictEntry>> ingested;
  for (const std::string& p : paths) ingested.push_back(g2p::ingest(p, format, table));
  return g2p::DictStore::merge(ingested);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persian grapheme-to-phoneme toolkit"};
  app.require_subcommand(1);

  std::string data_dir = g2p::default_data_dir();
  app.add_option("--data-dir", data_dir, "normalization/finglish/prompts directory")
      ->envname("G2P_DATA_DIR");

  // ---- convert ----
  auto* convert = app.add_subcommand("convert", "Convert sentences to canonical phonemes");
  std::vector<std::string> sentences;
  std::string conv_strategy = "hints2";
  std::vector<std::string> conv_dicts;
  std::string conv_dict_format = "tsv-multi";
  double conv_theta = 0.5;
  BackendArgs conv_backend;
  convert->add_option("sentence", sentences, "Persian sentences (reads stdin when omitted)");
  convert->add_option("--strategy", conv_strategy, "prompting strategy");
  convert->add_option("--dict", conv_dicts, "pronunciation dictionary TSV (repeatable)");
  convert->add_option("--dict-format", conv_dict_format, "tsv or tsv-multi");
  convert->add_option("--theta", conv_theta, "rule-correction similarity threshold");
  add_backend_flags(convert, conv_backend);

  // ---- evaluate ----
  auto* evaluate = app.add_subcommand("evaluate", "Run a strategy over a dataset and score it");
  g2p::RunConfig run;
  std::string eval_strategy = "hints2";
  BackendArgs eval_backend;
  evaluate->add_option("--dataset", run.dataset, "sentence-bench TSV")->required();
  evaluate->add_option("--strategy", eval_strategy, "prompting strategy");
  evaluate->add_option("--dict", run.dict_paths, "pronunciation dictionary TSV (repeatable)");
  evaluate->add_option("--dict-format", run.dict_format, "tsv or tsv-multi");
  evaluate->add_option("--parallelism", run.parallelism, "concurrent conversions");
  evaluate->add_option("--theta", run.theta, "rule-correction similarity threshold");
  evaluate->add_option("--out-json", run.out_json, "write the JSON report here");
  evaluate->add_option("--out-md", run.out_md, "write the markdown report here");
  add_backend_flags(evaluate, eval_backend);

  // ---- score ----
  auto* score = app.add_subcommand("score", "Score an external predictions file");
  std::string score_predictions, score_dataset;
  g2p::RunConfig score_cfg;
  score->add_option("--predictions", score_predictions, "TSV grapheme<TAB>phonemes")->required();
  score->add_option("--dataset", score_dataset, "sentence-bench TSV")->required();
  score->add_option("--dict", score_cfg.dict_paths, "pronunciation dictionary TSV (repeatable)");
  score->add_option("--dict-format", score_cfg.dict_format, "tsv or tsv-multi");
  score->add_option("--out-json", score_cfg.out_json, "write the JSON report here");
  score->add_option("--out-md", score_cfg.out_md, "write the markdown report here");

  // ---- dict merge ----
  auto* dict_cmd = app.add_subcommand("dict", "Dictionary operations");
  dict_cmd->require_subcommand(1);
  auto* merge = dict_cmd->add_subcommand("merge", "Merge dictionaries into one canonical TSV");
  std::vector<std::string> merge_inputs;
  std::string merge_out, merge_format = "tsv";
  merge->add_option("inputs", merge_inputs, "input dictionary TSVs")->required();
  merge->add_option("--format", merge_format, "tsv or tsv-multi");
  merge->add_option("--out", merge_out, "output TSV (stdout when omitted)");

  // ---- normalize ----
  auto* normalize = app.add_subcommand("normalize", "Normalize raw phonetic text to canonical");
  std::vector<std::string> norm_texts;
  bool norm_finglish = false;
  normalize->add_option("text", norm_texts, "raw text (reads stdin when omitted)");
  normalize->add_flag("--finglish", norm_finglish, "treat the input as Finglish");

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) {
      const g2p::Resources res = g2p::Resources::load(data_dir);
      const g2p::DictStore dict = load_dicts(conv_dicts, conv_dict_format, res.normalization);
      auto backend = make_backend(conv_backend);
      g2p::Orchestrator::Options opts;
      opts.theta = conv_theta;
      const g2p::Orchestrator orch(res.normalization, res.finglish, res.prompts, opts);
      const g2p::StrategyKind strategy = g2p::parse_strategy(conv_strategy);
      if (sentences.empty())
        for (std::string line; std::getline(std::cin, line);) sentences.push_back(line);
      for (const std::string& sentence : sentences) {
        const g2p::ConversionResult r = orch.convert(sentence, strategy, *backend, dict);
        std::cout << g2p::render(r.phonemes) << "\n";
      }
      return 0;
    }

    if (evaluate->parsed()) {
      run.strategy = g2p::parse_strategy(eval_strategy);
      run.backend_kind = eval_backend.kind;
      run.replay_path = eval_backend.replay_path;
      run.http = eval_backend.http;
      run.transcript_out = eval_backend.transcript_out;
      run.validate();
      const g2p::Resources res = g2p::Resources::load(data_dir);
      const g2p::DictStore dict = load_dicts(run.dict_paths, run.dict_format, res.normalization);
      auto backend = make_backend(eval_backend);
      const g2p::EvalReport report = g2p::run_eval(run, res, dict, *backend);
      std::cout << g2p::report_to_markdown(report, run, backend.get());
      if (!report.per_sentence.empty() && report.failed_rows == report.per_sentence.size()) {
        std::cerr << "error: every row failed (backend unavailable?)\n";
        return 2;
      }
      return 0;
    }

    if (score->parsed()) {
      const g2p::Resources res = g2p::Resources::load(data_dir);
      const g2p::DictStore dict =
          load_dicts(score_cfg.dict_paths, score_cfg.dict_format, res.normalization);
      const g2p::EvalReport report =
          g2p::score_external(score_predictions, score_dataset, dict, score_cfg);
      g2p::RunConfig echo = score_cfg;
      echo.dataset = score_dataset;
      std::cout << g2p::report_to_markdown(report, echo, nullptr);
      return 0;
    }

    if (merge->parsed()) {
      const g2p::Resources res = g2p::Resources::load(data_dir);
      const g2p::DictStore store = load_dicts(merge_inputs, merge_format, res.normalization);
      if (merge_out.empty()) {
        for (const auto& [key, entry] : store.entries())
          for (const auto& w : entry.pronunciations)
            std::cout << entry.grapheme << "\t" << g2p::render_word(w) << "\n";
      } else {
        store.save_tsv(merge_out);
        std::cout << "wrote " << merge_out << " (" << store.size() << " entries)\n";
      }
      return 0;
    }

    if (normalize->parsed()) {
      const g2p::Resources res = g2p::Resources::load(data_dir);
      if (norm_texts.empty())
        for (std::string line; std::getline(std::cin, line);) norm_texts.push_back(line);
      for (const std::string& text : norm_texts) {
        if (norm_finglish) {
          std::size_t dropped = 0;
          const std::string clean = g2p::sanitize_finglish(text, res.finglish, &dropped);
          std::cout << g2p::render(g2p::parse_finglish_total(clean, res.finglish, &dropped)) << "\n";
        } else {
          std::cout << g2p::render(g2p::normalize_raw(text, res.normalization).phonemes) << "\n";
        }
      }
      return 0;
    }
  } catch (const g2p::BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
