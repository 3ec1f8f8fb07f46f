#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lgsbm/estimate.hpp"
#include "lgsbm/graph.hpp"
#include "lgsbm/lg_classify.hpp"
#include "lgsbm/mixed_separation.hpp"
#include "lgsbm/model.hpp"
#include "lgsbm/model_select.hpp"

namespace lgsbm {

// Parameters: {"Q": int, "alpha": [...], "pi": [[...], ...]}.
ModelParams parse_params(const std::string& json_text);
ModelParams load_params(const std::filesystem::path& path);
std::string params_to_json(const ModelParams& p);

// Edge list: header "n m", then m lines "i j" (0-based). Blank lines are
// not allowed. Malformed input raises ParseError with the offending line.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);

/// Writes the edge-list body one edge at a time; the edge count must be
/// known before the first edge. Output is buffered until flush() or
/// destruction.
class EdgeListWriter {
 public:
  EdgeListWriter(std::ostream& out, std::size_t n, std::uint64_t m);
  ~EdgeListWriter() { out_ << buf_; }
  EdgeListWriter(const EdgeListWriter&) = delete;
  EdgeListWriter& operator=(const EdgeListWriter&) = delete;

  void edge(NodeId u, NodeId v);
  void flush();
  std::uint64_t written() const noexcept { return written_; }

 private:
  std::ostream& out_;
  std::uint64_t written_ = 0;
  std::string buf_;
};

// Degree file: header line "n", then n lines holding d_i.
struct DegreeFile {
  std::size_t n = 0;
  std::vector<std::uint32_t> degrees;
};
DegreeFile read_degree_file(std::istream& in);
DegreeFile load_degree_file(const std::filesystem::path& path);
void write_degree_file(std::ostream& out, std::span<const std::uint32_t> degrees);

// Labels: CSV "node,label" with 1-based labels.
void write_labels_csv(std::ostream& out, const LabelVector& z);
/// The class count is the largest label seen unless `classes` is larger.
LabelVector read_labels_csv(std::istream& in, std::size_t classes = 0);

/// Summary of an LgResult: boundaries, class means, mean gaps and the
/// `top_gaps` largest gaps.
std::string lg_result_to_json(const LgResult& r, std::size_t top_gaps = 10);
std::string estimate_to_json(const EstimateResult& e);
std::string selection_to_json(const SelectionReport& s);
void write_selection_csv(std::ostream& out, const SelectionReport& s);
std::string split_to_json(const SplitResult& s);

/// Shortest decimal that reads back to the same double; "inf"/"-inf"/"nan"
/// for non-finite values.
std::string format_double(double x);

/// Whole file as a string. Throws Io.
std::string read_file(const std::filesystem::path& path);
/// Truncates and writes. Throws Io.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace lgsbm
