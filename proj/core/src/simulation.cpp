#include "lgsbm/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "lgsbm/error.hpp"
#include "lgsbm/io.hpp"
#include "lgsbm/model_select.hpp"
#include "lgsbm/sampler.hpp"

namespace lgsbm {

using json = nlohmann::ordered_json;

namespace {

enum Purpose : std::uint64_t { kLabels = 0, kGraph = 1 };

constexpr const char* kReplicateSchema = "# lgsbm replicates v1: classes numbered by increasing mean degree";
constexpr const char* kAggregateSchema = "# lgsbm aggregate v1: sd is the sample standard deviation";

std::string field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

/// Mean and sample standard deviation over the rows that have a value.
struct Moments {
  std::size_t count = 0;
  double sum = 0.0;
  std::vector<double> xs;
  void add(std::optional<double> x) {
    if (!x) return;
    ++count;
    sum += *x;
    xs.push_back(*x);
  }
  std::optional<double> mean() const {
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  }
  std::optional<double> sd() const {
    if (count < 2) return std::nullopt;
    const double m = *mean();
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(count - 1));
  }
};

}  // namespace

ModelParams reference_design() {
  return validate_params(3, std::vector<double>{0.3, 0.6, 0.1},
                         {{0.95, 0.4, 0.4}, {0.4, 0.7, 0.75}, {0.4, 0.75, 0.65}});
}

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (doc.contains("params") && doc.contains("params_file")) {
      throw Error(ErrorCode::InvalidConfig, "give either params or params_file, not both");
    }
    if (doc.contains("params")) cfg.params = parse_params(doc["params"].dump());
    if (doc.contains("params_file")) {
      std::filesystem::path pf = doc["params_file"].get<std::string>();
      cfg.params = load_params(pf.is_absolute() ? pf : base_dir / pf);
    }
    if (doc.contains("n_grid")) cfg.n_grid = doc["n_grid"].get<std::vector<std::size_t>>();
    if (doc.contains("replicates")) cfg.replicates = doc["replicates"].get<std::size_t>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<Seed>();
    if (doc.contains("beta")) cfg.beta = doc["beta"].get<double>();
    if (doc.contains("q_max")) cfg.q_max = doc["q_max"].get<std::size_t>();
    if (doc.contains("estimate")) cfg.estimate = doc["estimate"].get<bool>();
    if (doc.contains("select")) cfg.select = doc["select"].get<bool>();
    if (doc.contains("threads")) cfg.threads = doc["threads"].get<std::size_t>();
    if (doc.contains("outputs")) cfg.outputs = doc["outputs"].get<std::string>();
    for (const auto& [key, value] : doc.items()) {
      static const std::vector<std::string> known{"params", "params_file", "n_grid", "replicates", "seed", "beta",
                                                  "q_max", "estimate", "select", "threads", "outputs"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("run configuration: ") + e.what());
  }
  validate_run_config(cfg);
  return cfg;
}

void validate_run_config(const RunConfig& cfg) {
  if (cfg.replicates == 0) throw Error(ErrorCode::InvalidConfig, "replicates must be >= 1");
  if (cfg.n_grid.empty()) throw Error(ErrorCode::InvalidConfig, "n_grid is empty");
  for (std::size_t n : cfg.n_grid) {
    if (n < 2) throw Error(ErrorCode::InvalidConfig, "n_grid entries must be >= 2");
  }
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) throw Error(ErrorCode::InvalidConfig, "beta must lie in (0,1)");
  if (cfg.select && cfg.q_max < 2) throw Error(ErrorCode::InvalidConfig, "q_max must be >= 2");
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

std::string run_config_to_json(const RunConfig& cfg) {
  json doc;
  doc["params"] = json::parse(params_to_json(cfg.params));
  doc["n_grid"] = cfg.n_grid;
  doc["replicates"] = cfg.replicates;
  doc["seed"] = cfg.seed;
  doc["beta"] = cfg.beta;
  doc["q_max"] = cfg.q_max;
  doc["estimate"] = cfg.estimate;
  doc["select"] = cfg.select;
  doc["outputs"] = cfg.outputs.string();
  return doc.dump(2) + "\n";
}

ReplicateSample sample_replicate(const ModelParams& p, std::size_t n, Seed seed, std::size_t replicate) {
  ReplicateSample s;
  s.n = n;
  s.replicate = replicate;
  s.label_seed = derive_seed(seed, {n, replicate, kLabels});
  s.graph_seed = derive_seed(seed, {n, replicate, kGraph});
  s.z = sample_labels(p, n, s.label_seed);
  s.profile = degree_profile_from_degrees(n, sample_degrees(p, s.z, s.graph_seed));
  return s;
}

EstimateResult estimate_on_replicate(const ModelParams& p, const ReplicateSample& s, const LabelVector& labels,
                                     std::size_t q) {
  if (labels.size() != s.n) {
    throw Error(ErrorCode::LengthMismatch, "labels do not match the replicate's node count");
  }
  BlockEdgeCounter counter(labels.labels(), q);
  stream_graph(p, s.z, s.graph_seed, counter);
  return estimate_from_counts(q, counter.class_sizes(), counter.counts());
}

ReplicateRow run_replicate(const RunConfig& cfg, std::size_t n, std::size_t replicate) {
  ReplicateRow row;
  row.n = n;
  row.replicate = replicate;
  row.seed = derive_seed(cfg.seed, {n, replicate, kGraph});
  const std::size_t q = cfg.params.blocks();
  try {
    const ReplicateSample s = sample_replicate(cfg.params, n, cfg.seed, replicate);
    const auto pibar = mean_degrees(cfg.params).pibar;
    std::vector<double> sorted_pibar = pibar;
    std::stable_sort(sorted_pibar.begin(), sorted_pibar.end());
    const LabelVector truth = order_by_mean_degree(s.z, pibar);
    const LgResult lg = lg_partition(s.profile, q);
    row.metrics = evaluate(truth, lg.labels, q, &s.profile, sorted_pibar);
    if (cfg.estimate) row.estimate = estimate_on_replicate(cfg.params, s, lg.labels, q);
    if (cfg.select) row.q_hat = select_q(s.profile, std::min(cfg.q_max, n), cfg.beta).q_hat;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

SimulationResult run_simulation(const RunConfig& cfg) {
  struct Task {
    std::size_t n, replicate;
  };
  std::vector<std::size_t> grid = cfg.n_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Task> tasks;
  for (std::size_t n : grid) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) tasks.push_back({n, r});
  }

  SimulationResult out;
  out.classes = cfg.params.blocks();
  out.rows.resize(tasks.size());
  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) out.rows[k] = run_replicate(cfg, tasks[k].n, tasks[k].replicate);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return out;
}

void write_replicate_csv(std::ostream& out, const SimulationResult& r) {
  const std::size_t q = r.classes;
  std::string buf = std::string(kReplicateSchema) + "\nseed,n,replicate,g,exact";
  for (std::size_t c = 1; c <= q; ++c) buf += ",I_" + std::to_string(c);
  for (std::size_t c = 1; c <= q; ++c) buf += ",M_" + std::to_string(c);
  buf += ",d_n,empty_class";
  for (std::size_t c = 1; c <= q; ++c) buf += ",alpha_hat_" + std::to_string(c);
  for (std::size_t a = 1; a <= q; ++a) {
    for (std::size_t b = a; b <= q; ++b) buf += ",pi_hat_" + std::to_string(a) + "_" + std::to_string(b);
  }
  buf += ",q_hat,error\n";

  for (const ReplicateRow& row : r.rows) {
    buf += std::to_string(row.seed) + ',' + std::to_string(row.n) + ',' + std::to_string(row.replicate);
    const bool ok = row.error.empty();
    const MetricReport& m = row.metrics;
    buf += ',' + (ok ? format_double(m.g) : std::string());
    buf += ',' + (ok ? std::string(m.exact ? "1" : "0") : std::string());
    for (std::size_t c = 0; c < q; ++c) buf += ',' + (ok ? field(m.rates.intruders[c]) : std::string());
    for (std::size_t c = 0; c < q; ++c) buf += ',' + (ok ? field(m.rates.missing[c]) : std::string());
    buf += ',' + (ok ? field(m.spreading) : std::string());
    buf += ',' + (ok ? std::string(m.empty_true_class ? "1" : "0") : std::string());
    for (std::size_t c = 0; c < q; ++c) buf += ',' + (row.estimate ? format_double(row.estimate->alpha_hat[c]) : "");
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = a; b < q; ++b) buf += ',' + (row.estimate ? field(row.estimate->pi(a, b)) : "");
    }
    buf += ',' + (row.q_hat ? std::to_string(*row.q_hat) : std::string());
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    buf += ',' + err + '\n';
  }
  out << buf;
}

void write_aggregate_csv(std::ostream& out, const SimulationResult& r) {
  const std::size_t q = r.classes;
  std::vector<std::string> names{"g", "exact"};
  for (std::size_t c = 1; c <= q; ++c) names.push_back("I_" + std::to_string(c));
  for (std::size_t c = 1; c <= q; ++c) names.push_back("M_" + std::to_string(c));
  names.push_back("d_n");
  for (std::size_t c = 1; c <= q; ++c) names.push_back("alpha_hat_" + std::to_string(c));
  for (std::size_t a = 1; a <= q; ++a) {
    for (std::size_t b = a; b <= q; ++b) names.push_back("pi_hat_" + std::to_string(a) + "_" + std::to_string(b));
  }
  names.push_back("q_hat");

  std::string buf = std::string(kAggregateSchema) + "\nn,replicates,failed";
  for (const auto& name : names) buf += ",mean_" + name + ",sd_" + name;
  buf += '\n';

  std::size_t k = 0;
  while (k < r.rows.size()) {
    const std::size_t n = r.rows[k].n;
    std::vector<Moments> mom(names.size());
    std::size_t total = 0, failed = 0;
    for (; k < r.rows.size() && r.rows[k].n == n; ++k) {
      const ReplicateRow& row = r.rows[k];
      ++total;
      if (!row.error.empty()) {
        ++failed;
        continue;
      }
      std::size_t j = 0;
      const MetricReport& m = row.metrics;
      mom[j++].add(m.g);
      mom[j++].add(m.exact ? 1.0 : 0.0);
      for (std::size_t c = 0; c < q; ++c) mom[j++].add(m.rates.intruders[c]);
      for (std::size_t c = 0; c < q; ++c) mom[j++].add(m.rates.missing[c]);
      mom[j++].add(m.spreading);
      for (std::size_t c = 0; c < q; ++c) {
        mom[j++].add(row.estimate ? std::optional<double>(row.estimate->alpha_hat[c]) : std::nullopt);
      }
      for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a; b < q; ++b) mom[j++].add(row.estimate ? row.estimate->pi(a, b) : std::nullopt);
      }
      mom[j++].add(row.q_hat ? std::optional<double>(static_cast<double>(*row.q_hat)) : std::nullopt);
    }
    buf += std::to_string(n) + ',' + std::to_string(total) + ',' + std::to_string(failed);
    for (const Moments& mm : mom) buf += ',' + field(mm.mean()) + ',' + field(mm.sd());
    buf += '\n';
  }
  out << buf;
}

}  // namespace lgsbm
