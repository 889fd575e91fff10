// Builds a replay transcript for a dataset: runs every row through the real
// prompt pipeline against scripted responses and records the exchanges, so
// the recorded prompt hashes always match what the orchestrator will ask.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "g2p/backend.hpp"
#include "g2p/bench.hpp"
#include "g2p/detail/text.hpp"
#include "g2p/orchestrator.hpp"
#include "g2p/resources.hpp"

namespace {

// Answers call k for the active row with responses[row][k].
class ScriptedBackend : public g2p::LlmBackend {
 public:
  void set_row(std::vector<std::string> responses) {
    responses_ = std::move(responses);
    next_ = 0;
  }
  std::string complete(const std::string&, const g2p::DecodeParams&) override {
    if (next_ >= responses_.size())
      throw std::runtime_error("scripted backend: no response left for this row");
    return responses_[next_++];
  }
  std::string name() const override { return "scripted"; }
  std::string model() const override { return "replay"; }

 private:
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record a replay transcript from scripted responses"};
  std::string dataset, responses_path, out_path, strategy_name = "hints2";
  std::string data_dir = g2p::default_data_dir();
  std::vector<std::string> dict_paths;
  std::string dict_format = "tsv-multi";
  app.add_option("--dataset", dataset, "sentence-bench TSV")->required();
  app.add_option("--responses", responses_path,
                 "TSV: sentence<TAB>response[<TAB>second-round response]")
      ->required();
  app.add_option("--out", out_path, "output JSONL transcript")->required();
  app.add_option("--strategy", strategy_name, "prompt strategy");
  app.add_option("--data-dir", data_dir, "normalization/finglish/prompts directory");
  app.add_option("--dict", dict_paths, "pronunciation dictionary TSV (repeatable)");
  app.add_option("--dict-format", dict_format, "tsv or tsv-multi");
  CLI11_PARSE(app, argc, argv);

  try {
    const g2p::StrategyKind strategy = g2p::parse_strategy(strategy_name);
    const g2p::Resources res = g2p::Resources::load(data_dir);

    std::vector<std::vector<g2p::DictEntry>> ingested;
    for (const std::string& path : dict_paths)
      ingested.push_back(g2p::ingest(path, dict_format, res.normalization));
    const g2p::DictStore dict = g2p::DictStore::merge(ingested);

    // sentence -> scripted responses (one or two rounds)
    std::map<std::string, std::vector<std::string>> script;
    {
      std::ifstream in(responses_path);
      if (!in) throw std::runtime_error("cannot open responses: " + responses_path);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = g2p::detail::split_on(line, '\t');
        if (cols.size() < 2) throw std::runtime_error("responses: malformed row: " + line);
        script[cols[0]] = std::vector<std::string>(cols.begin() + 1, cols.end());
      }
    }

    const std::vector<g2p::BenchRow> rows = g2p::load_dataset(dataset);
    auto scripted = std::make_shared<ScriptedBackend>();
    auto writer = std::make_shared<g2p::TranscriptWriter>(out_path);
    g2p::RecordingBackend recording(scripted, writer);
    const g2p::Orchestrator orch(res.normalization, res.finglish, res.prompts);

    for (const g2p::BenchRow& row : rows) {
      auto it = script.find(row.grapheme);
      if (it == script.end())
        throw std::runtime_error("no scripted response for: " + row.grapheme);
      std::vector<std::string> responses = it->second;
      const std::size_t needed = g2p::round_trips(strategy);
      // A one-column script for a two-round strategy echoes the draft back.
      while (responses.size() < needed) responses.push_back(responses.back());
      scripted->set_row(std::move(responses));
      orch.convert(row.grapheme, strategy, recording, dict);
    }
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
