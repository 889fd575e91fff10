#pragma once

#include <string>

#include "g2p/finglish.hpp"
#include "g2p/normalize.hpp"
#include "g2p/prompt.hpp"

namespace g2p {

// The three data-directory assets everything downstream needs:
// normalization.tsv, finglish_rules.tsv, and prompts/.
struct Resources {
  NormalizationTable normalization;
  FinglishTable finglish;
  PromptLibrary prompts;

  static Resources load(const std::string& data_dir);
};

// $G2P_DATA_DIR when set, otherwise the compiled-in source-tree default.
std::string default_data_dir();

}  // namespace g2p
