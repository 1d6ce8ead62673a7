#ifndef CAUSENET_PIPELINE_H_
#define CAUSENET_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace causenet {

inline constexpr int kConfigVersion = 1;

// Every knob of a run. Paths are used as given (relative to the working
// directory).
struct RunConfig {
  int config_version = kConfigVersion;
  std::vector<std::string> corpus;
  std::string embeddings;
  std::string lexicon;
  std::string patterns;
  std::string stopwords;
  std::string annotations;  // optional unless evaluate or sweep runs

  double mu = 0.05;
  std::string weight_mode = "cosine";
  double bidirectional_tau = 0.75;
  std::size_t min_count = 2;
  double min_plausibility = 0.01;
  std::string unit = "sentence";
  bool inherit = true;
  bool propagate_effect_side = false;
  std::vector<double> mu_grid;  // empty means 0, 0.05, ..., 0.95
  std::size_t max_cpd_cells = 2'000'000;

  std::string output_dir = "causenet_out";
  int workers = 1;

  // One "field: problem" line per violation. Paths must exist.
  std::vector<std::string> Validate() const;

  // Everything that can change an artifact. Worker count and output
  // directory are left out.
  nlohmann::json Snapshot() const;
};

// Stage names in pipeline order.
const std::vector<std::string>& StageNames();

// Main artifact file of a stage.
std::string StageArtifact(std::string_view stage);

// Exit statuses of RunStage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitMissingUpstream = 2;
inline constexpr int kExitFailure = 3;

// Runs one stage, or every stage for "all", reading upstream artifacts from
// and writing to config.output_dir, then updates manifest.json there.
// Progress and errors go to `log`. With "all", evaluate and sweep are skipped
// when no annotations are configured.
int RunStage(std::string_view command, const RunConfig& config, std::ostream& log);

}  // namespace causenet

#endif  // CAUSENET_PIPELINE_H_
