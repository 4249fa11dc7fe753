#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "soccover/rational.hpp"
#include "soccover/slack.hpp"

namespace soccover {

struct Cell {
  int row = 0;  // pair-row index
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Boolean nonzero pattern over the (2-subsets of [n]) x [n] index scheme.
// Cells (e, j) with j in e are structurally false.
class SupportPattern {
 public:
  SupportPattern() = default;
  explicit SupportPattern(int n);

  // Pattern that is true exactly off the structural zeros, i.e. at every
  // (e, j) with j not in e.
  static SupportPattern full(int n);

  int n() const { return n_; }
  int row_count() const { return rows_; }

  bool test(int row, int col) const;
  void set(int row, int col, bool value);

  int count() const;
  int row_popcount(int row) const;
  int col_popcount(int col) const;
  bool empty() const { return count() == 0; }

  bool subset_of(const SupportPattern& other) const;
  SupportPattern union_with(const SupportPattern& other) const;

  // Submatrix on the given sorted 0-based columns, rows relabeled to the
  // 2-subsets of the restricted set.
  SupportPattern restrict_to(const std::vector<int>& cols) const;

  std::vector<Cell> cells() const;  // row-major order
  static SupportPattern from_cells(int n, const std::vector<Cell>& cells);

  // Canonical text form "n=..;cells=i,j:c|..." with 1-based labels; basis of
  // the serialized digest.
  std::string canonical_string() const;

  friend bool operator==(const SupportPattern&, const SupportPattern&) = default;
  friend auto operator<=>(const SupportPattern&, const SupportPattern&) = default;

  const std::vector<std::uint64_t>& words() const { return bits_; }

 private:
  int n_ = 0;
  int rows_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Nonzero pattern of a matrix. Exact zero test for rational entries; a
// strict entry > eps test for floating entries. Throws on negative entries.
SupportPattern extract_support(const LabeledMatrix<Rat>& m);
SupportPattern extract_support(const LabeledMatrix<double>& m, double eps = kDefaultEps);

// Zero structure of a candidate rank-one factor: which column vectors and
// which row vectors vanish, plus the components of the graph on the live
// columns whose edges are the live rows with both endpoints live.
struct ColumnGraph {
  int n = 0;
  std::vector<char> zero_col;               // size n
  std::vector<char> zero_row;               // size pair_count(n)
  std::vector<int> component_of;            // per column; -1 for zero columns
  std::vector<std::vector<int>> components; // sorted members, ordered by min element

  std::vector<int> zero_cols() const;
  std::vector<std::pair<int, int>> zero_rows() const;
};

ColumnGraph build_column_graph(int n, const std::vector<int>& zero_cols,
                               const std::vector<std::pair<int, int>>& zero_rows);
ColumnGraph build_column_graph(int n, std::vector<char> zero_col, std::vector<char> zero_row);

// The components of (live columns, live rows within them); same contents as
// graph.components.
std::vector<std::vector<int>> connected_components(const ColumnGraph& g);

struct ClosureViolation {
  Cell cell;
  std::string rule;  // "required-zero", "zero-row", "zero-column", "component-block", "column-proportionality"
};

struct ClosureResult {
  SupportPattern pattern;
  std::optional<ClosureViolation> violation;

  bool ok() const { return !violation.has_value(); }
};

// Checks a candidate support against everything the factor's zero structure
// forces: structural zeros, zero rows/columns, zero blocks on component
// columns, and equal column patterns inside a component. A true cell at a
// forced-zero position is reported as the (row-major) first violation; a
// consistent pattern is returned unchanged, so the operation is idempotent
// and never turns a false cell true.
ClosureResult forced_zero_closure(const SupportPattern& pattern, const ColumnGraph& g);

// Weakest zero structure compatible with a pattern: all-false columns and
// all-false rows declared zero. A pattern is consistent for some structure
// iff it is consistent for this one.
ColumnGraph canonical_graph(const SupportPattern& pattern);

enum class ZeroBlockReason { Component, ZeroColumns, CliqueInZeroRows };

const char* to_string(ZeroBlockReason r);

struct ZeroBlockWitness {
  std::vector<int> cols;  // sorted, 0-based
  ZeroBlockReason reason;
};

// Column set C, |C| >= n0, whose induced block is zero for every factor with
// the given zero structure. Requires n >= 3*n0^2 and n0 >= 2; under that
// precondition one of the three cases always fires: a large component, a
// large zero-column set, or an n0-clique among the zero rows (whose existence
// follows from the edge count).
ZeroBlockWitness find_zero_block(const ColumnGraph& g, int n0);

// Lexicographically least k-clique via deterministic backtracking, or
// nullopt. Vertices are 0..n-1.
std::optional<std::vector<int>> find_clique(int n, const std::vector<std::pair<int, int>>& edges,
                                            int k);

// (1 - 1/k) * n^2 / 2; any graph on n vertices with strictly more edges
// contains a (k+1)-clique.
Rat turan_threshold(long long n, long long k);

}  // namespace soccover
