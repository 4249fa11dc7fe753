#include "soccover/support.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace soccover {

SupportPattern::SupportPattern(int n)
    : n_(n), rows_(pair_count(n)), words_per_row_((n + 63) / 64),
      bits_(static_cast<size_t>(rows_) * words_per_row_, 0) {
  if (n < 2) throw std::invalid_argument("support pattern needs n >= 2");
}

SupportPattern SupportPattern::full(int n) {
  SupportPattern p(n);
  for (int r = 0; r < p.rows_; ++r) {
    const auto [i, j] = pair_at(n, r);
    for (int c = 0; c < n; ++c)
      if (c != i && c != j) p.set(r, c, true);
  }
  return p;
}

bool SupportPattern::test(int row, int col) const {
  const size_t w = static_cast<size_t>(row) * words_per_row_ + col / 64;
  return (bits_[w] >> (col % 64)) & 1u;
}

void SupportPattern::set(int row, int col, bool value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= n_)
    throw std::out_of_range("support cell out of range");
  const auto [i, j] = pair_at(n_, row);
  if (value && (col == i || col == j))
    throw std::invalid_argument("cannot set a structural zero cell");
  const size_t w = static_cast<size_t>(row) * words_per_row_ + col / 64;
  const std::uint64_t mask = std::uint64_t(1) << (col % 64);
  if (value)
    bits_[w] |= mask;
  else
    bits_[w] &= ~mask;
}

int SupportPattern::count() const {
  int c = 0;
  for (std::uint64_t w : bits_) c += std::popcount(w);
  return c;
}

int SupportPattern::row_popcount(int row) const {
  int c = 0;
  for (int w = 0; w < words_per_row_; ++w)
    c += std::popcount(bits_[static_cast<size_t>(row) * words_per_row_ + w]);
  return c;
}

int SupportPattern::col_popcount(int col) const {
  int c = 0;
  for (int r = 0; r < rows_; ++r) c += test(r, col) ? 1 : 0;
  return c;
}

bool SupportPattern::subset_of(const SupportPattern& other) const {
  if (n_ != other.n_) return false;
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

SupportPattern SupportPattern::union_with(const SupportPattern& other) const {
  if (n_ != other.n_) throw std::invalid_argument("union of mismatched patterns");
  SupportPattern out = *this;
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= other.bits_[i];
  return out;
}

SupportPattern SupportPattern::restrict_to(const std::vector<int>& cols) const {
  if (cols.size() < 2) throw std::invalid_argument("restriction needs at least 2 columns");
  for (size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] < 0 || cols[i] >= n_) throw std::out_of_range("restriction column out of range");
    if (i > 0 && cols[i] <= cols[i - 1])
      throw std::invalid_argument("restriction columns must be sorted and distinct");
  }
  const int m = static_cast<int>(cols.size());
  SupportPattern out(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const int row = pair_index(n_, cols[a], cols[b]);
      const int new_row = pair_index(m, a, b);
      for (int c = 0; c < m; ++c)
        if (c != a && c != b && test(row, cols[c])) out.set(new_row, c, true);
    }
  return out;
}

std::vector<Cell> SupportPattern::cells() const {
  std::vector<Cell> out;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < n_; ++c)
      if (test(r, c)) out.push_back(Cell{r, c});
  return out;
}

SupportPattern SupportPattern::from_cells(int n, const std::vector<Cell>& cells) {
  SupportPattern p(n);
  for (const Cell& c : cells) p.set(c.row, c.col, true);
  return p;
}

std::string SupportPattern::canonical_string() const {
  std::ostringstream os;
  os << "n=" << n_ << ";cells=";
  bool first = true;
  for (int r = 0; r < rows_; ++r) {
    const auto [i, j] = pair_at(n_, r);
    for (int c = 0; c < n_; ++c) {
      if (!test(r, c)) continue;
      if (!first) os << '|';
      first = false;
      os << (i + 1) << ',' << (j + 1) << ':' << (c + 1);
    }
  }
  return os.str();
}

SupportPattern extract_support(const LabeledMatrix<Rat>& m) {
  SupportPattern p(m.n);
  for (int r = 0; r < m.row_count(); ++r)
    for (int c = 0; c < m.n; ++c) {
      const Rat& e = m.at(r, c);
      if (e < 0) throw std::invalid_argument("extract_support: negative entry");
      if (e != 0) p.set(r, c, true);
    }
  return p;
}

SupportPattern extract_support(const LabeledMatrix<double>& m, double eps) {
  SupportPattern p(m.n);
  for (int r = 0; r < m.row_count(); ++r)
    for (int c = 0; c < m.n; ++c) {
      const double e = m.at(r, c);
      if (e < 0) throw std::invalid_argument("extract_support: negative entry");
      if (e > eps) p.set(r, c, true);
    }
  return p;
}

std::vector<int> ColumnGraph::zero_cols() const {
  std::vector<int> out;
  for (int c = 0; c < n; ++c)
    if (zero_col[c]) out.push_back(c);
  return out;
}

std::vector<std::pair<int, int>> ColumnGraph::zero_rows() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < pair_count(n); ++r)
    if (zero_row[r]) out.push_back(pair_at(n, r));
  return out;
}

ColumnGraph build_column_graph(int n, std::vector<char> zero_col, std::vector<char> zero_row) {
  if (n < 2) throw std::invalid_argument("column graph needs n >= 2");
  if (static_cast<int>(zero_col.size()) != n ||
      static_cast<int>(zero_row.size()) != pair_count(n))
    throw std::invalid_argument("column graph indicator sizes do not match n");
  ColumnGraph g;
  g.n = n;
  g.zero_col = std::move(zero_col);
  g.zero_row = std::move(zero_row);
  g.component_of.assign(n, -1);

  // BFS over live columns through live rows with both endpoints live.
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    if (g.zero_col[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (g.zero_col[j]) continue;
      if (!g.zero_row[pair_index(n, i, j)]) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  for (int start = 0; start < n; ++start) {
    if (g.zero_col[start] || g.component_of[start] != -1) continue;
    const int id = static_cast<int>(g.components.size());
    std::vector<int> members;
    std::queue<int> q;
    q.push(start);
    g.component_of[start] = id;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      members.push_back(v);
      for (int w : adj[v])
        if (g.component_of[w] == -1) {
          g.component_of[w] = id;
          q.push(w);
        }
    }
    std::sort(members.begin(), members.end());
    g.components.push_back(std::move(members));
  }
  return g;
}

ColumnGraph build_column_graph(int n, const std::vector<int>& zero_cols,
                               const std::vector<std::pair<int, int>>& zero_rows) {
  std::vector<char> zc(n, 0), zr(pair_count(n), 0);
  for (int c : zero_cols) {
    if (c < 0 || c >= n) throw std::out_of_range("zero column out of range");
    zc[c] = 1;
  }
  for (auto [i, j] : zero_rows) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j) throw std::out_of_range("zero row pair out of range");
    zr[pair_index(n, i, j)] = 1;
  }
  return build_column_graph(n, std::move(zc), std::move(zr));
}

std::vector<std::vector<int>> connected_components(const ColumnGraph& g) {
  return g.components;
}

ClosureResult forced_zero_closure(const SupportPattern& pattern, const ColumnGraph& g) {
  if (pattern.n() != g.n)
    throw std::invalid_argument("pattern and column graph sizes do not match");
  const int n = g.n;
  for (int r = 0; r < pattern.row_count(); ++r) {
    const auto [i, j] = pair_at(n, r);
    for (int c = 0; c < n; ++c) {
      if (!pattern.test(r, c)) continue;
      if (c == i || c == j)
        return {pattern, ClosureViolation{{r, c}, "required-zero"}};
      if (g.zero_row[r])
        return {pattern, ClosureViolation{{r, c}, "zero-row"}};
      if (g.zero_col[c])
        return {pattern, ClosureViolation{{r, c}, "zero-column"}};
      const int comp = g.component_of[c];
      if (comp == g.component_of[i] && !g.zero_col[i])
        return {pattern, ClosureViolation{{r, c}, "component-block"}};
      if (comp == g.component_of[j] && !g.zero_col[j])
        return {pattern, ClosureViolation{{r, c}, "component-block"}};
      // Columns of one component are proportional, so their row patterns
      // must agree cell by cell.
      for (int sib : g.components[comp])
        if (!pattern.test(r, sib))
          return {pattern, ClosureViolation{{r, c}, "column-proportionality"}};
    }
  }
  return {pattern, std::nullopt};
}

ColumnGraph canonical_graph(const SupportPattern& pattern) {
  const int n = pattern.n();
  std::vector<char> zc(n, 1), zr(pair_count(n), 1);
  for (int r = 0; r < pattern.row_count(); ++r)
    for (int c = 0; c < n; ++c)
      if (pattern.test(r, c)) {
        zr[r] = 0;
        zc[c] = 0;
      }
  return build_column_graph(n, std::move(zc), std::move(zr));
}

const char* to_string(ZeroBlockReason r) {
  switch (r) {
    case ZeroBlockReason::Component: return "component";
    case ZeroBlockReason::ZeroColumns: return "zero-columns";
    case ZeroBlockReason::CliqueInZeroRows: return "clique-in-zero-rows";
  }
  return "?";
}

ZeroBlockWitness find_zero_block(const ColumnGraph& g, int n0) {
  const int n = g.n;
  if (n0 < 2) throw std::invalid_argument("find_zero_block needs n0 >= 2");
  if (n < 3 * n0 * n0)
    throw std::invalid_argument("find_zero_block needs n >= 3*n0^2");

  for (const auto& comp : g.components)
    if (static_cast<int>(comp.size()) >= n0)
      return ZeroBlockWitness{comp, ZeroBlockReason::Component};

  const std::vector<int> s0 = g.zero_cols();
  if (static_cast<int>(s0.size()) >= n0)
    return ZeroBlockWitness{s0, ZeroBlockReason::ZeroColumns};

  // Neither case fired, so the zero rows are edge-dense enough to force an
  // n0-clique; extract it explicitly.
  std::vector<std::pair<int, int>> zero_edges;
  for (int r = 0; r < pair_count(n); ++r)
    if (g.zero_row[r]) zero_edges.push_back(pair_at(n, r));
  auto clique = find_clique(n, zero_edges, n0);
  if (!clique)
    throw std::logic_error("zero-row clique missing despite the edge-count guarantee");
  return ZeroBlockWitness{*clique, ZeroBlockReason::CliqueInZeroRows};
}

namespace {

struct CliqueSearcher {
  int n;
  int k;
  int words;
  std::vector<std::uint64_t> adj;  // n rows of `words` words
  std::vector<int> current;

  bool adjacent(int u, int v) const {
    return (adj[static_cast<size_t>(u) * words + v / 64] >> (v % 64)) & 1u;
  }

  bool extend(std::vector<std::uint64_t>& cand, int popcnt) {
    if (static_cast<int>(current.size()) == k) return true;
    if (static_cast<int>(current.size()) + popcnt < k) return false;
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const int v = w * 64 + b;
        // Candidates after v, restricted to neighbors of v.
        std::vector<std::uint64_t> next(words, 0);
        int next_cnt = 0;
        for (int w2 = 0; w2 < words; ++w2) {
          std::uint64_t m = cand[w2] & adj[static_cast<size_t>(v) * words + w2];
          if (w2 < w) m = 0;
          if (w2 == w) m &= ~((std::uint64_t(2) << b) - 1);
          next[w2] = m;
          next_cnt += std::popcount(m);
        }
        current.push_back(v);
        if (extend(next, next_cnt)) return true;
        current.pop_back();
        --popcnt;
        if (static_cast<int>(current.size()) + popcnt < k) return false;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> find_clique(int n, const std::vector<std::pair<int, int>>& edges,
                                            int k) {
  if (k < 1) throw std::invalid_argument("find_clique needs k >= 1");
  if (k > n) return std::nullopt;
  CliqueSearcher s;
  s.n = n;
  s.k = k;
  s.words = (n + 63) / 64;
  s.adj.assign(static_cast<size_t>(n) * s.words, 0);
  for (auto [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || u == v) throw std::out_of_range("edge endpoint out of range");
    s.adj[static_cast<size_t>(u) * s.words + v / 64] |= std::uint64_t(1) << (v % 64);
    s.adj[static_cast<size_t>(v) * s.words + u / 64] |= std::uint64_t(1) << (u % 64);
  }
  std::vector<std::uint64_t> cand(s.words, 0);
  for (int v = 0; v < n; ++v) cand[v / 64] |= std::uint64_t(1) << (v % 64);
  if (s.extend(cand, n)) return s.current;
  return std::nullopt;
}

Rat turan_threshold(long long n, long long k) {
  if (k < 1) throw std::invalid_argument("turan_threshold needs k >= 1");
  const Rat nn(n);
  return (Rat(1) - Rat(1, k)) * nn * nn / 2;
}

}  // namespace soccover
