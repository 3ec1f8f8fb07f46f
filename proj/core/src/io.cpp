#include "lgsbm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "lgsbm/error.hpp"

namespace lgsbm {

using json = nlohmann::ordered_json;

namespace {

/// Splits on runs of spaces/tabs; trailing CR is ignored.
std::vector<std::string_view> tokens(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_uint(std::string_view tok, std::size_t line_no, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json number_or_string(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ModelParams parse_params(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto q = doc.at("Q").get<std::size_t>();
    const auto alpha = doc.at("alpha").get<std::vector<double>>();
    const auto pi = doc.at("pi").get<std::vector<std::vector<double>>>();
    return validate_params(q, alpha, pi);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("parameter document: ") + e.what());
  }
}

ModelParams load_params(const std::filesystem::path& path) { return parse_params(read_file(path)); }

std::string params_to_json(const ModelParams& p) {
  json doc;
  doc["Q"] = p.blocks();
  doc["alpha"] = std::vector<double>(p.alpha().begin(), p.alpha().end());
  json pi = json::array();
  for (std::size_t q = 0; q < p.blocks(); ++q) pi.push_back(std::vector<double>(p.pi_row(q).begin(), p.pi_row(q).end()));
  doc["pi"] = std::move(pi);
  return doc.dump(2) + "\n";
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing header 'n m'");
  auto head = tokens(line);
  if (head.size() != 2) throw ParseError(1, "header must be 'n m'");
  const auto n = parse_uint<std::uint64_t>(head[0], 1, "node count");
  const auto m = parse_uint<std::uint64_t>(head[1], 1, "edge count");
  if (n > std::numeric_limits<NodeId>::max()) throw ParseError(1, "node count exceeds 32-bit ids");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1u << 26)));
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokens(line);
    if (tok.size() != 2) throw ParseError(line_no, "expected 'i j', got '" + line + "'");
    const auto u = parse_uint<std::uint64_t>(tok[0], line_no, "node id");
    const auto v = parse_uint<std::uint64_t>(tok[1], line_no, "node id");
    if (u >= n || v >= n) throw ParseError(line_no, "node id >= n=" + std::to_string(n));
    if (u == v) throw ParseError(line_no, "self-loop on node " + std::to_string(u));
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  if (edges.size() != m) {
    throw ParseError(line_no, "header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_edge_list(in);
}

EdgeListWriter::EdgeListWriter(std::ostream& out, std::size_t n, std::uint64_t m) : out_(out) {
  out_ << n << ' ' << m << '\n';
}

void EdgeListWriter::edge(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  char buf[48];
  char* p = std::to_chars(buf, buf + 20, u).ptr;
  *p = ' ';
  p = std::to_chars(p + 1, buf + 44, v).ptr;
  *p = '\n';
  buf_.append(buf, p + 1);
  if (buf_.size() >= (1u << 16)) {
    out_ << buf_;
    buf_.clear();
  }
  ++written_;
}

void EdgeListWriter::flush() {
  out_ << buf_;
  buf_.clear();
  out_.flush();
}

void write_edge_list(std::ostream& out, const Graph& g) {
  EdgeListWriter w(out, g.nodes(), g.edge_count());
  g.for_each_edge([&](NodeId u, NodeId v) { w.edge(u, v); });
  w.flush();
}

DegreeFile read_degree_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header 'n'");
  const auto head = tokens(line);
  if (head.size() != 1) throw ParseError(1, "header must be 'n'");
  DegreeFile f;
  f.n = parse_uint<std::size_t>(head[0], 1, "node count");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokens(line);
    if (tok.size() != 1) throw ParseError(line_no, "expected one degree, got '" + line + "'");
    const auto d = parse_uint<std::uint64_t>(tok[0], line_no, "degree");
    if (f.n > 0 && d > f.n - 1) {
      throw Error(ErrorCode::DegreeOutOfRange,
                  "line " + std::to_string(line_no) + ": degree " + std::to_string(d) + " > n-1");
    }
    f.degrees.push_back(static_cast<std::uint32_t>(d));
  }
  if (f.degrees.size() != f.n) {
    throw ParseError(line_no, "header announces " + std::to_string(f.n) + " nodes, found " +
                                  std::to_string(f.degrees.size()));
  }
  return f;
}

DegreeFile load_degree_file(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_degree_file(in);
}

void write_degree_file(std::ostream& out, std::span<const std::uint32_t> degrees) {
  std::string buf = std::to_string(degrees.size()) + "\n";
  for (std::uint32_t d : degrees) {
    buf += std::to_string(d);
    buf += '\n';
  }
  out << buf;
}

void write_labels_csv(std::ostream& out, const LabelVector& z) {
  std::string buf = "node,label\n";
  for (std::size_t i = 0; i < z.size(); ++i) {
    buf += std::to_string(i);
    buf += ',';
    buf += std::to_string(z[i] + 1);
    buf += '\n';
  }
  out << buf;
}

LabelVector read_labels_csv(std::istream& in, std::size_t classes) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header 'node,label'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "node,label") throw ParseError(1, "header must be 'node,label'");
  std::vector<ClassId> labels;
  std::size_t line_no = 1;
  std::size_t max_label = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "expected 'node,label'");
    const std::string_view sv(line);
    const auto node = parse_uint<std::size_t>(sv.substr(0, comma), line_no, "node id");
    const auto label = parse_uint<std::size_t>(sv.substr(comma + 1), line_no, "label");
    if (node != labels.size()) throw ParseError(line_no, "nodes must be listed in order 0, 1, ...");
    if (label == 0) throw ParseError(line_no, "labels are 1-based");
    max_label = std::max(max_label, label);
    labels.push_back(static_cast<ClassId>(label - 1));
  }
  return LabelVector(std::move(labels), std::max({classes, max_label, std::size_t{1}}));
}

std::string lg_result_to_json(const LgResult& r, std::size_t top_gaps) {
  json doc;
  doc["classes"] = r.classes;
  doc["nodes"] = r.labels.size();
  doc["boundaries"] = r.boundaries;
  doc["class_sizes"] = r.labels.class_sizes();
  doc["class_means"] = r.class_means;
  doc["mean_gaps_desc"] = r.mean_gaps_desc;
  doc["boundary_gaps"] = r.boundary_gaps;
  const auto k = std::min(top_gaps, r.gaps_desc.size());
  doc["top_gaps"] = std::vector<double>(r.gaps_desc.begin(), r.gaps_desc.begin() + static_cast<std::ptrdiff_t>(k));
  doc["degenerate_separation"] = r.degenerate_separation;
  return doc.dump(2) + "\n";
}

std::string estimate_to_json(const EstimateResult& e) {
  const std::size_t q = e.classes;
  json pi = json::array(), pairs = json::array(), edges = json::array();
  for (std::size_t a = 0; a < q; ++a) {
    json pr = json::array(), cr = json::array(), er = json::array();
    for (std::size_t b = 0; b < q; ++b) {
      pr.push_back(optional_number(e.pi(a, b)));
      cr.push_back(e.pairs(a, b));
      er.push_back(e.edges(a, b));
    }
    pi.push_back(std::move(pr));
    pairs.push_back(std::move(cr));
    edges.push_back(std::move(er));
  }
  json doc;
  doc["alpha"] = e.alpha_hat;
  doc["pi"] = std::move(pi);
  doc["pair_counts"] = std::move(pairs);
  doc["edge_counts"] = std::move(edges);
  doc["class_sizes"] = e.class_sizes;
  return doc.dump(2) + "\n";
}

std::string selection_to_json(const SelectionReport& s) {
  json cands = json::array();
  for (const Criterion& c : s.candidates) {
    cands.push_back({{"Q", c.classes},
                     {"sum_HG", number_or_string(c.sum_hg)},
                     {"penalty", number_or_string(c.penalty)},
                     {"f", number_or_string(c.f)}});
  }
  json doc;
  doc["beta"] = s.beta;
  doc["nodes"] = s.nodes;
  doc["q_hat"] = s.q_hat;
  doc["weak_structure"] = s.weak_structure;
  doc["candidates"] = std::move(cands);
  return doc.dump(2) + "\n";
}

void write_selection_csv(std::ostream& out, const SelectionReport& s) {
  std::string buf = "Q,sum_HG,penalty,f\n";
  for (const Criterion& c : s.candidates) {
    buf += std::to_string(c.classes) + ',' + format_double(c.sum_hg) + ',' + format_double(c.penalty) + ',' +
           format_double(c.f) + '\n';
  }
  out << buf;
}

std::string split_to_json(const SplitResult& s) {
  json pairs = json::array();
  for (const auto& [u, v] : s.selected_pairs) pairs.push_back({u, v});
  json doc;
  doc["verdict"] = std::string(to_string(s.verdict));
  doc["components"] = s.components;
  doc["component_density"] = s.component_density;
  doc["subgroups"] = {s.subgroups[0], s.subgroups[1]};
  doc["involved_nodes"] = s.involved_nodes.size();
  doc["selected_pairs"] = s.selected_pairs.size();
  doc["pair_budget_exceeded"] = s.pair_budget_exceeded;
  if (!s.diagnostic.empty()) doc["diagnostic"] = s.diagnostic;
  return doc.dump(2) + "\n";
}

}  // namespace lgsbm
