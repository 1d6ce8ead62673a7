// Command-line driver: `causenet <stage> [--config run.toml] [overrides]`.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "causenet/pipeline.h"

namespace {

std::string StageList() {
  std::string out;
  for (const auto& s : causenet::StageNames()) out += s + " | ";
  return out + "all";
}

}  // namespace

int main(int argc, char** argv) {
  causenet::RunConfig config;
  CLI::App app{"Builds a causal Bayesian network over the concepts of a text corpus."};
  app.set_version_flag("--version", CAUSENET_VERSION);
  app.set_config("--config", "", "TOML config file; command-line flags override it");
  app.get_config_formatter_base()->arrayDelimiter(',');
  app.option_defaults()->always_capture_default();

  std::string command;
  app.add_option("command", command, StageList())->required();

  app.add_option("--config_version", config.config_version, "Config format version");
  app.add_option("--corpus", config.corpus, "Corpus files (.txt, or .jsonl with {id, text})")
      ->delimiter(',');
  app.add_option("--embeddings", config.embeddings, "Embedding text file");
  app.add_option("--lexicon", config.lexicon, "Causal marker lexicon TSV");
  app.add_option("--patterns", config.patterns, "IsA pattern file");
  app.add_option("--stopwords", config.stopwords, "Stopword list, one per line");
  app.add_option("--annotations", config.annotations,
                 "Gold TSV (conceptA, conceptB, label) for evaluate and sweep");
  app.add_option("--mu", config.mu, "Decision threshold on the causal score");
  app.add_option("--weight_mode", config.weight_mode, "cosine | one-minus-cosine");
  app.add_option("--bidirectional_tau", config.bidirectional_tau,
                 "Both directed terms at or above this flag a bidirectional pair");
  app.add_option("--min_count", config.min_count, "Minimum IsA count for a value");
  app.add_option("--min_plausibility", config.min_plausibility,
                 "Minimum IsA plausibility for a value");
  app.add_option("--unit", config.unit, "Co-occurrence unit: sentence | document");
  app.add_option("--inherit", config.inherit, "Add edges inherited through the lattice");
  app.add_option("--propagate_effect_side", config.propagate_effect_side,
                 "Also inherit down from the effect concept");
  app.add_option("--mu_grid", config.mu_grid, "Sweep grid (default 0, 0.05, ..., 0.95)")
      ->delimiter(',');
  app.add_option("--max_cpd_cells", config.max_cpd_cells,
                 "Largest conditional table allowed, in cells");
  app.add_option("--output_dir", config.output_dir, "Artifact directory");
  app.add_option("--workers", config.workers, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? 0 : (code == 0 ? 0 : causenet::kExitConfig);
  }
  return causenet::RunStage(command, config, std::cerr);
}
