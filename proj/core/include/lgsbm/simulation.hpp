#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lgsbm/estimate.hpp"
#include "lgsbm/lg_classify.hpp"
#include "lgsbm/metrics.hpp"
#include "lgsbm/model.hpp"
#include "lgsbm/rng.hpp"

namespace lgsbm {

/// Three classes with alpha = (0.3, 0.6, 0.1); mean degrees 0.565, 0.615, 0.635.
ModelParams reference_design();

struct RunConfig {
  ModelParams params = reference_design();
  std::vector<std::size_t> n_grid{1000, 5000, 15000, 30000, 45000};
  std::size_t replicates = 20;
  Seed seed = 1;
  double beta = 0.5;
  std::size_t q_max = 10;
  bool estimate = true;  // plug-in estimates on the predicted partition
  bool select = false;   // run select_q on every replicate
  std::size_t threads = 0;  // 0: available parallelism
  std::filesystem::path outputs = ".";
};

/// Reads a JSON run configuration. Parameters come either inline under
/// "params" or from a file under "params_file" (relative to `base_dir`).
/// Throws InvalidConfig.
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir = ".");
RunConfig load_run_config(const std::filesystem::path& path);
/// Throws InvalidConfig unless replicates >= 1, the grid is non-empty with
/// entries >= 2, 0 < beta < 1 and (when selecting) q_max >= 2.
void validate_run_config(const RunConfig& cfg);
/// Everything except the thread count, which never affects results.
std::string run_config_to_json(const RunConfig& cfg);

/// Labels and degrees of one replicate. The graph itself is never stored;
/// it can be streamed again from (params, z, graph_seed).
struct ReplicateSample {
  std::size_t n = 0;
  std::size_t replicate = 0;
  Seed label_seed = 0;
  Seed graph_seed = 0;
  LabelVector z;
  DegreeProfile profile;
};

/// Substreams derived from (seed, n, replicate), so a replicate does not
/// depend on which others ran or in what order.
ReplicateSample sample_replicate(const ModelParams& p, std::size_t n, Seed seed, std::size_t replicate);

/// Plug-in estimates for `labels` on the replicate's graph, regenerated by
/// streaming rather than stored.
EstimateResult estimate_on_replicate(const ModelParams& p, const ReplicateSample& s, const LabelVector& labels,
                                     std::size_t q);

struct ReplicateRow {
  std::size_t n = 0;
  std::size_t replicate = 0;
  Seed seed = 0;  // graph seed of the replicate
  std::string error;  // non-empty when the replicate failed
  MetricReport metrics;
  std::optional<EstimateResult> estimate;
  std::optional<std::size_t> q_hat;
};

struct SimulationResult {
  std::size_t classes = 0;
  std::vector<ReplicateRow> rows;  // sorted by (n, replicate)
};

/// Classes of the truth are renumbered by increasing mean degree, the
/// convention Largest Gaps output follows, and no further alignment is done.
ReplicateRow run_replicate(const RunConfig& cfg, std::size_t n, std::size_t replicate);

/// Runs every (n, replicate) on a pool of cfg.threads workers.
SimulationResult run_simulation(const RunConfig& cfg);

void write_replicate_csv(std::ostream& out, const SimulationResult& r);
void write_aggregate_csv(std::ostream& out, const SimulationResult& r);

}  // namespace lgsbm
