#include "g2p/resources.hpp"

#include <cstdlib>

#ifndef G2P_DATA_DIR
#define G2P_DATA_DIR "data"
#endif

namespace g2p {

Resources Resources::load(const std::string& data_dir) {
  Resources r;
  r.normalization = NormalizationTable::load(data_dir + "/normalization.tsv");
  r.finglish = FinglishTable::load(data_dir + "/finglish_rules.tsv");
  r.prompts = PromptLibrary::load(data_dir + "/prompts");
  return r;
}

std::string default_data_dir() {
  const char* env = std::getenv("G2P_DATA_DIR");
  if (env != nullptr && *env != '\0') return env;
  return G2P_DATA_DIR;
}

}  // namespace g2p
