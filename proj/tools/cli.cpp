#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "lgsbm/bounds.hpp"
#include "lgsbm/error.hpp"
#include "lgsbm/estimate.hpp"
#include "lgsbm/io.hpp"
#include "lgsbm/lg_classify.hpp"
#include "lgsbm/mixed_separation.hpp"
#include "lgsbm/model_select.hpp"
#include "lgsbm/sampler.hpp"
#include "lgsbm/simulation.hpp"

namespace lgsbm::cli {

namespace {

namespace fs = std::filesystem;

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
  } else {
    write_file(path, text);
  }
}

template <class F>
std::string capture(F&& f) {
  std::ostringstream ss;
  f(ss);
  return ss.str();
}

DegreeProfile load_profile(const std::string& edges, const std::string& degrees) {
  if (!edges.empty()) return degree_profile(load_edge_list(edges));
  const DegreeFile f = load_degree_file(degrees);
  return degree_profile_from_degrees(f.n, f.degrees);
}

std::vector<NodeId> load_members(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<NodeId> members;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(line, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != line.size() || v > std::numeric_limits<NodeId>::max()) {
      throw ParseError(line_no, "expected a node id, got '" + line + "'");
    }
    members.push_back(static_cast<NodeId>(v));
  }
  return members;
}

struct Generate {
  std::string params, edges, degrees, labels;
  std::size_t n = 0;
  Seed seed = 1;
};

void run_generate(const Generate& o, std::ostream& out) {
  const ModelParams p = load_params(o.params);
  const Seed label_seed = derive_seed(o.seed, {o.n, 0, 0});
  const Seed graph_seed = derive_seed(o.seed, {o.n, 0, 1});
  const LabelVector z = sample_labels(p, o.n, label_seed);
  if (!o.labels.empty()) emit(o.labels, capture([&](std::ostream& s) { write_labels_csv(s, z); }), out);

  // Pass 1 fixes the edge count for the header; pass 2 replays the same
  // stream into the file, so the graph is never held in memory.
  const auto d = sample_degrees(p, z, graph_seed);
  if (!o.degrees.empty()) emit(o.degrees, capture([&](std::ostream& s) { write_degree_file(s, d); }), out);
  const bool want_edges = !o.edges.empty() || o.degrees.empty();
  if (!want_edges) return;
  std::uint64_t sum = 0;
  for (std::uint32_t x : d) sum += x;
  const std::string path = o.edges.empty() ? "-" : o.edges;
  std::ofstream file;
  if (path != "-") {
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::Io, "cannot write " + path);
  }
  std::ostream& sink_stream = path == "-" ? out : file;
  EdgeListWriter writer(sink_stream, o.n, sum / 2);
  stream_graph(p, z, graph_seed, writer);
  writer.flush();
  if (!sink_stream) throw Error(ErrorCode::Io, "write failed for " + path);
}

struct Classify {
  std::string edges, degrees, labels_out = "-", json_out;
  std::size_t q = 0;
};

void run_classify(const Classify& o, std::ostream& out) {
  const LgResult lg = lg_partition(load_profile(o.edges, o.degrees), o.q);
  emit(o.labels_out, capture([&](std::ostream& s) { write_labels_csv(s, lg.labels); }), out);
  if (!o.json_out.empty()) emit(o.json_out, lg_result_to_json(lg), out);
}

struct Estimate {
  std::string edges, labels, json_out = "-";
  std::size_t q = 0;
};

void run_estimate(const Estimate& o, std::ostream& out) {
  const Graph g = load_edge_list(o.edges);
  EstimateResult e;
  if (o.labels.empty()) {
    e = estimate_via_lg(g, o.q).estimate;
  } else {
    std::ifstream in(o.labels);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + o.labels);
    e = estimate(g, read_labels_csv(in, o.q), o.q);
  }
  emit(o.json_out, estimate_to_json(e), out);
}

struct Select {
  std::string edges, degrees, json_out = "-", csv_out;
  std::optional<std::size_t> q_max;
  double beta = kDefaultBeta;
};

void run_select(const Select& o, std::ostream& out) {
  const SelectionReport r = select_q(load_profile(o.edges, o.degrees), o.q_max, o.beta);
  emit(o.json_out, selection_to_json(r), out);
  if (!o.csv_out.empty()) emit(o.csv_out, capture([&](std::ostream& s) { write_selection_csv(s, r); }), out);
}

struct Split {
  std::string edges, members, json_out = "-", labels_out;
  SplitOptions opts;
};

void run_split(const Split& o, std::ostream& out) {
  const Graph g = load_edge_list(o.edges);
  std::vector<NodeId> members;
  if (o.members.empty()) {
    members.resize(g.nodes());
    for (std::size_t i = 0; i < g.nodes(); ++i) members[i] = static_cast<NodeId>(i);
  } else {
    members = load_members(o.members);
  }
  const SplitResult r = split_mixed_group(g, members, o.opts);
  emit(o.json_out, split_to_json(r), out);
  if (!o.labels_out.empty()) {
    std::string csv = "node,label\n";
    if (r.verdict != Verdict::Ambiguous) {
      std::vector<std::pair<NodeId, int>> rows;
      for (int s = 0; s < 2; ++s) {
        for (NodeId v : r.subgroups[s]) rows.emplace_back(v, s + 1);
      }
      std::sort(rows.begin(), rows.end());
      for (const auto& [v, s] : rows) csv += std::to_string(v) + ',' + std::to_string(s) + '\n';
    }
    emit(o.labels_out, csv, out);
  }
}

struct Bounds {
  std::string params, out = "-", form = "expanded";
  std::optional<double> delta, alpha0, t, first_below;
  std::optional<std::size_t> classes;
  std::vector<std::uint64_t> n_grid;
  std::optional<std::uint64_t> n_from, n_to;
  std::uint64_t n_step = 1;
};

void run_bounds(Bounds o, std::ostream& out) {
  if (!o.params.empty()) {
    const ModelParams p = load_params(o.params);
    const MeanDegrees m = mean_degrees(p);
    if (!o.delta) {
      if (!m.delta) throw Error(ErrorCode::ParamOutOfRange, "a single-class model has no separability");
      o.delta = *m.delta;
    }
    if (!o.alpha0) o.alpha0 = m.alpha0;
    if (!o.classes) o.classes = p.blocks();
  }
  if (!o.delta || !o.alpha0 || !o.classes) {
    throw Error(ErrorCode::ParamOutOfRange, "need --params or all of --delta, --alpha0, --Q");
  }
  const EstimationForm form = o.form == "factored" ? EstimationForm::Factored : EstimationForm::Expanded;
  const double delta = *o.delta, alpha0 = *o.alpha0;
  const std::size_t q = *o.classes;

  std::string csv;
  if (o.first_below) {
    if (!o.n_from || !o.n_to) throw Error(ErrorCode::ParamOutOfRange, "--first-below needs --n-from and --n-to");
    const double level = *o.first_below;
    auto row = [&](const char* name, const std::function<double(double)>& f) {
      const auto hit = lgsbm::first_below(f, *o.n_from, *o.n_to, level);
      csv += std::string(name) + ',' + (hit ? std::to_string(*hit) : std::string()) + '\n';
    };
    csv = "bound,first_n\n";
    row("error", [&](double n) { return error_bound(n, delta, alpha0, q).value; });
    if (o.t) {
      const double t = *o.t;
      row("spreading", [&](double n) { return spreading_bound(n, t).value; });
      row("estimation", [&](double n) { return estimation_bound(n, t, delta, alpha0, q, form).value; });
    }
    emit(o.out, csv, out);
    return;
  }

  std::vector<std::uint64_t> grid = o.n_grid;
  if (grid.empty()) {
    if (!o.n_from || !o.n_to || o.n_step == 0) throw Error(ErrorCode::ParamOutOfRange, "need --n-grid or --n-from/--n-to");
    for (std::uint64_t n = *o.n_from; n <= *o.n_to; n += o.n_step) grid.push_back(n);
  }
  csv = "n,error,error_clamped";
  if (o.t) csv += ",spreading,spreading_clamped,estimation,estimation_clamped";
  csv += '\n';
  for (std::uint64_t nn : grid) {
    const auto n = static_cast<double>(nn);
    const BoundReport e = error_bound(n, delta, alpha0, q);
    csv += std::to_string(nn) + ',' + format_double(e.value) + ',' + format_double(e.clamped());
    if (o.t) {
      const BoundReport s = spreading_bound(n, *o.t);
      const BoundReport est = estimation_bound(n, *o.t, delta, alpha0, q, form);
      csv += ',' + format_double(s.value) + ',' + format_double(s.clamped()) + ',' + format_double(est.value) + ',' +
             format_double(est.clamped());
    }
    csv += '\n';
  }
  emit(o.out, csv, out);
}

struct Simulate {
  std::string config, out_dir;
  std::vector<std::size_t> n_grid;
  std::optional<std::size_t> replicates, threads, q_max;
  std::optional<Seed> seed;
  std::optional<double> beta;
  bool select = false, no_estimate = false;
};

void run_simulate(const Simulate& o, std::ostream& out) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (!o.n_grid.empty()) cfg.n_grid = o.n_grid;
  if (o.replicates) cfg.replicates = *o.replicates;
  if (o.threads) cfg.threads = *o.threads;
  if (o.q_max) cfg.q_max = *o.q_max;
  if (o.seed) cfg.seed = *o.seed;
  if (o.beta) cfg.beta = *o.beta;
  if (o.select) cfg.select = true;
  if (o.no_estimate) cfg.estimate = false;
  if (!o.out_dir.empty()) cfg.outputs = o.out_dir;
  validate_run_config(cfg);

  std::error_code ec;
  fs::create_directories(cfg.outputs, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + cfg.outputs.string() + ": " + ec.message());
  const SimulationResult r = run_simulation(cfg);
  write_file(cfg.outputs / "replicates.csv", capture([&](std::ostream& s) { write_replicate_csv(s, r); }));
  write_file(cfg.outputs / "aggregate.csv", capture([&](std::ostream& s) { write_aggregate_csv(s, r); }));
  write_file(cfg.outputs / "config.json", run_config_to_json(cfg));
  std::size_t failed = 0;
  for (const auto& row : r.rows) failed += row.error.empty() ? 0 : 1;
  out << "wrote " << r.rows.size() << " replicates (" << failed << " failed) to " << cfg.outputs.string() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree-based inference for stochastic block models"};
  app.require_subcommand(1);

  Generate gen;
  auto* g = app.add_subcommand("generate", "Sample a graph (and its labels) from a parameter file");
  g->add_option("--params", gen.params, "Parameter JSON {\"Q\",\"alpha\",\"pi\"}")->required();
  g->add_option("-n,--nodes", gen.n, "Node count")->required()->check(CLI::Range(std::size_t{1}, std::size_t{4294967295}));
  g->add_option("--seed", gen.seed, "64-bit seed");
  g->add_option("--edges", gen.edges, "Edge-list output ('-' for stdout)");
  g->add_option("--degrees", gen.degrees, "Degree-file output");
  g->add_option("--labels", gen.labels, "True labels CSV output");

  Classify cls;
  auto* c = app.add_subcommand("classify", "Largest Gaps classification");
  auto* c_edges = c->add_option("--edges", cls.edges, "Edge-list input");
  auto* c_deg = c->add_option("--degrees", cls.degrees, "Degree-file input");
  c_edges->excludes(c_deg);
  c->add_option("-q,--classes", cls.q, "Class count")->required();
  c->add_option("--labels-out", cls.labels_out, "Labels CSV output");
  c->add_option("--json-out", cls.json_out, "Partition summary JSON output");

  Estimate est;
  auto* e = app.add_subcommand("estimate", "Plug-in estimates of alpha and pi");
  e->add_option("--edges", est.edges, "Edge-list input")->required();
  e->add_option("-q,--classes", est.q, "Class count")->required();
  e->add_option("--labels", est.labels, "Labels CSV; Largest Gaps labels when omitted");
  e->add_option("--json-out", est.json_out, "JSON output");

  Select sel;
  auto* s = app.add_subcommand("select-q", "Choose the class count by the penalized gap criterion");
  auto* s_edges = s->add_option("--edges", sel.edges, "Edge-list input");
  auto* s_deg = s->add_option("--degrees", sel.degrees, "Degree-file input");
  s_edges->excludes(s_deg);
  s->add_option("--q-max", sel.q_max, "Largest candidate (default min(n, 30))");
  s->add_option("--beta", sel.beta, "Penalty exponent in (0,1)");
  s->add_option("--json-out", sel.json_out, "JSON report output");
  s->add_option("--csv-out", sel.csv_out, "CSV table output");

  Split spl;
  auto* sp = app.add_subcommand("split-mixed", "Separate two classes with equal mean degree");
  sp->add_option("--edges", spl.edges, "Edge-list input")->required();
  sp->add_option("--members", spl.members, "Node ids of the merged group, one per line (default: all nodes)");
  sp->add_option("--density", spl.opts.density_threshold, "Clique density threshold");
  sp->add_option("--pair-budget", spl.opts.pair_budget, "Pair count above which a warning is reported");
  sp->add_option("--json-out", spl.json_out, "JSON output");
  sp->add_option("--labels-out", spl.labels_out, "Subgroup labels CSV output");

  Bounds bnd;
  auto* b = app.add_subcommand("bounds", "Evaluate finite-sample bounds over an n-grid");
  b->add_option("--params", bnd.params, "Take delta, alpha0 and Q from a parameter file");
  b->add_option("--delta", bnd.delta, "Separability");
  b->add_option("--alpha0", bnd.alpha0, "Smallest class proportion");
  b->add_option("--Q", bnd.classes, "Class count");
  b->add_option("--t", bnd.t, "Deviation for the spreading and estimation bounds");
  b->add_option("--form", bnd.form, "Estimation exponent form")->check(CLI::IsMember({"expanded", "factored"}));
  b->add_option("--n-grid", bnd.n_grid, "Node counts")->delimiter(',');
  b->add_option("--n-from", bnd.n_from, "First n of a regular grid");
  b->add_option("--n-to", bnd.n_to, "Last n of a regular grid");
  b->add_option("--n-step", bnd.n_step, "Grid step");
  b->add_option("--first-below", bnd.first_below, "Report the first n in [n-from, n-to] with value below this level");
  b->add_option("-o,--out", bnd.out, "CSV output");

  Simulate sim;
  auto* m = app.add_subcommand("simulate", "Seeded Monte-Carlo study");
  m->add_option("--config", sim.config, "Run configuration JSON");
  m->add_option("--n-grid", sim.n_grid, "Node counts")->delimiter(',');
  m->add_option("--replicates", sim.replicates, "Replicates per n");
  m->add_option("--seed", sim.seed, "64-bit seed");
  m->add_option("--threads", sim.threads, "Worker threads (default: available parallelism)");
  m->add_option("--beta", sim.beta, "Penalty exponent for --select");
  m->add_option("--q-max", sim.q_max, "Largest candidate for --select");
  m->add_flag("--select", sim.select, "Run class-count selection on every replicate");
  m->add_flag("--no-estimate", sim.no_estimate, "Skip plug-in estimates");
  m->add_option("--out", sim.out_dir, "Output directory");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*g) {
      run_generate(gen, out);
    } else if (*c) {
      if (cls.edges.empty() == cls.degrees.empty()) {
        err << "classify: give exactly one of --edges, --degrees\n";
        return kUsage;
      }
      run_classify(cls, out);
    } else if (*e) {
      run_estimate(est, out);
    } else if (*s) {
      if (sel.edges.empty() == sel.degrees.empty()) {
        err << "select-q: give exactly one of --edges, --degrees\n";
        return kUsage;
      }
      run_select(sel, out);
    } else if (*sp) {
      run_split(spl, out);
    } else if (*b) {
      run_bounds(bnd, out);
    } else if (*m) {
      run_simulate(sim, out);
    }
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kDataError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kDataError;
  }
  return kOk;
}

}  // namespace lgsbm::cli
