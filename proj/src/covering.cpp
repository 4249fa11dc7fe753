#include "soccover/covering.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "soccover/io.hpp"

namespace soccover {

SupportPattern Rank1Factor::induced_support() const {
  SupportPattern p(n);
  for (int r = 0; r < pair_count(n); ++r) {
    const auto [i, j] = pair_at(n, r);
    for (int c = 0; c < n; ++c) {
      if (inner(a[r], b[c]) > 0) {
        if (c == i || c == j)
          throw std::logic_error("factor has a nonzero entry at a structural zero");
        p.set(r, c, true);
      }
    }
  }
  return p;
}

std::optional<std::string> Rank1Factor::validate() const {
  if (static_cast<int>(a.size()) != pair_count(n) || static_cast<int>(b.size()) != n)
    return "factor vector counts do not match n";
  for (int r = 0; r < pair_count(n); ++r)
    if (classify(a[r]) == Membership::Outside) {
      const auto [i, j] = pair_at(n, r);
      std::ostringstream os;
      os << "row vector {" << i + 1 << "," << j + 1 << "} outside the cone";
      return os.str();
    }
  for (int c = 0; c < n; ++c)
    if (classify(b[c]) == Membership::Outside) {
      std::ostringstream os;
      os << "column vector " << c + 1 << " outside the cone";
      return os.str();
    }
  for (int r = 0; r < pair_count(n); ++r) {
    const auto [i, j] = pair_at(n, r);
    if (inner(a[r], b[i]) != 0 || inner(a[r], b[j]) != 0) {
      std::ostringstream os;
      os << "nonzero entry at structural zero in row {" << i + 1 << "," << j + 1 << "}";
      return os.str();
    }
  }
  return std::nullopt;
}

const char* to_string(CertKind k) {
  switch (k) {
    case CertKind::Exact: return "exact";
    case CertKind::Upper: return "upper";
    case CertKind::LowerRecursion: return "lower-recursion";
  }
  return "?";
}

TargetRef TargetRef::materialized(SupportPattern p) {
  TargetRef t;
  t.pattern = std::move(p);
  return t;
}

TargetRef TargetRef::family(BigInt n) {
  TargetRef t;
  t.family_n = std::move(n);
  return t;
}

bool verify_factorization(const std::vector<std::vector<Rat>>& S,
                          const std::vector<ConeTuple>& row_tuples,
                          const std::vector<ConeTuple>& col_tuples, std::string* why) {
  if (row_tuples.size() != S.size())
    throw std::invalid_argument("verify_factorization: dimension mismatch");
  for (const auto& row : S)
    if (row.size() != col_tuples.size())
      throw std::invalid_argument("verify_factorization: dimension mismatch");
  int k = -1;
  for (const auto* side : {&row_tuples, &col_tuples})
    for (const ConeTuple& t : *side) {
      if (k == -1) k = t.k();
      if (t.k() != k) throw std::invalid_argument("verify_factorization: ragged tuple sizes");
    }
  const auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (size_t i = 0; i < row_tuples.size(); ++i)
    for (int c = 0; c < row_tuples[i].k(); ++c)
      if (classify(row_tuples[i].parts[c]) == Membership::Outside)
        return fail("row tuple " + std::to_string(i + 1) + " leaves the cone");
  for (size_t j = 0; j < col_tuples.size(); ++j)
    for (int c = 0; c < col_tuples[j].k(); ++c)
      if (classify(col_tuples[j].parts[c]) == Membership::Outside)
        return fail("column tuple " + std::to_string(j + 1) + " leaves the cone");
  for (size_t r = 0; r < S.size(); ++r)
    for (size_t c = 0; c < S[r].size(); ++c) {
      Rat sum = 0;
      for (int comp = 0; comp < k; ++comp)
        sum += inner(row_tuples[r].parts[comp], col_tuples[c].parts[comp]);
      if (sum != S[r][c]) {
        std::ostringstream os;
        os << "entry (" << r + 1 << "," << c + 1 << ") is " << rat_to_string(S[r][c])
           << " but the pairing gives " << rat_to_string(sum);
        return fail(os.str());
      }
    }
  return true;
}

bool verify_factorization(const LabeledMatrix<Rat>& S, const std::vector<ConeTuple>& row_tuples,
                          const std::vector<ConeTuple>& col_tuples, std::string* why) {
  std::vector<std::vector<Rat>> rows(S.row_count(), std::vector<Rat>(S.n));
  for (int r = 0; r < S.row_count(); ++r)
    for (int c = 0; c < S.n; ++c) rows[r][c] = S.at(r, c);
  return verify_factorization(rows, row_tuples, col_tuples, why);
}

namespace {

// Reflection through the axis: the generator of the ray orthogonal to a
// boundary point.
ConePoint<Rat> reflect(const ConePoint<Rat>& u) { return ConePoint<Rat>{-u.x1, -u.x2, u.t}; }

struct OriginLayout {
  int n = 0;
  std::vector<int> class_of;  // per column, -1 for zero columns
  int classes = 0;
};

OriginLayout layout_of(int n, const PartOrigin& origin) {
  OriginLayout l;
  l.n = n;
  l.class_of.assign(n, -1);
  l.classes = static_cast<int>(origin.partition.size());
  for (int cl = 0; cl < l.classes; ++cl)
    for (int col : origin.partition[cl]) l.class_of[col] = cl;
  return l;
}

}  // namespace

std::optional<Rank1Factor> realize_part(const SupportPattern& part_supp,
                                        const PartOrigin& origin) {
  const int n = part_supp.n();
  const OriginLayout l = layout_of(n, origin);
  const auto rays = boundary_ray_basis(l.classes);

  Rank1Factor f;
  f.n = n;
  f.b.assign(n, ConePoint<Rat>{});
  for (int c = 0; c < n; ++c)
    if (l.class_of[c] >= 0) f.b[c] = rays[l.class_of[c]];
  f.a.assign(pair_count(n), ConePoint<Rat>{});
  for (int r = 0; r < pair_count(n); ++r) {
    if (part_supp.row_popcount(r) == 0) continue;  // dropped row
    const auto [i, j] = pair_at(n, r);
    const int ci = l.class_of[i];
    const int cj = l.class_of[j];
    if (ci >= 0 && cj >= 0 && ci != cj) return std::nullopt;  // cross row cannot be live
    if (ci >= 0)
      f.a[r] = reflect(rays[ci]);
    else if (cj >= 0)
      f.a[r] = reflect(rays[cj]);
    else
      f.a[r] = ConePoint<Rat>{0, 0, 1};
  }
  if (f.induced_support() == part_supp) return f;
  return std::nullopt;
}

namespace {

// Candidate part support for one zero/grouping structure inside a target:
// rows crossing two classes stay empty; any other row takes, class by class,
// the full class block whenever the target allows all of it.
SupportPattern candidate_support(const SupportPattern& target, const OriginLayout& l,
                                 const std::vector<std::vector<int>>& partition,
                                 bool constructive) {
  const int n = target.n();
  SupportPattern supp(n);
  for (int r = 0; r < pair_count(n); ++r) {
    const auto [i, j] = pair_at(n, r);
    const int ci = l.class_of[i];
    const int cj = l.class_of[j];
    if (ci >= 0 && cj >= 0 && ci != cj) continue;
    bool full_row = true;
    bool any = false;
    for (int cl = 0; cl < l.classes; ++cl) {
      if (cl == ci || cl == cj) continue;
      bool all_ok = true;
      for (int col : partition[cl])
        if (!target.test(r, col)) {
          all_ok = false;
          break;
        }
      if (all_ok) {
        for (int col : partition[cl]) supp.set(r, col, true);
        any = true;
      } else {
        full_row = false;
      }
    }
    // A canonical factor makes every class block off the row positive, so a
    // partially blocked row is only realizable with a zero row vector.
    if (constructive && any && !full_row)
      for (int cl = 0; cl < l.classes; ++cl)
        if (cl != ci && cl != cj)
          for (int col : partition[cl]) supp.set(r, col, false);
  }
  return supp;
}

void enumerate_partitions(const std::vector<int>& items,
                          const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  const int m = static_cast<int>(items.size());
  if (m == 0) return;
  std::vector<int> rgs(m, 0);
  while (true) {
    int classes = 0;
    for (int i = 0; i < m; ++i) classes = std::max(classes, rgs[i] + 1);
    std::vector<std::vector<int>> parts(classes);
    for (int i = 0; i < m; ++i) parts[rgs[i]].push_back(items[i]);
    fn(parts);
    // Next restricted-growth string.
    int i = m - 1;
    while (i > 0) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
      if (rgs[i] <= prefix_max) break;
      --i;
    }
    if (i == 0) break;
    ++rgs[i];
    for (int j = i + 1; j < m; ++j) rgs[j] = 0;
  }
}

}  // namespace

std::vector<CandidatePart> enumerate_candidate_parts(const SupportPattern& target,
                                                     Realizability mode) {
  const int n = target.n();
  if (n > 24) throw std::invalid_argument("candidate enumeration limited to n <= 24");
  std::vector<CandidatePart> out;
  std::map<std::vector<std::uint64_t>, bool> seen;

  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> live;
    for (int c = 0; c < n; ++c)
      if (mask & (1u << c)) live.push_back(c);
    std::vector<int> zero_cols;
    for (int c = 0; c < n; ++c)
      if (!(mask & (1u << c))) zero_cols.push_back(c);

    enumerate_partitions(live, [&](const std::vector<std::vector<int>>& parts) {
      PartOrigin origin{zero_cols, parts};
      const OriginLayout l = layout_of(n, origin);
      SupportPattern supp =
          candidate_support(target, l, parts, mode == Realizability::Constructive);
      if (supp.count() == 0) return;
      auto [it, inserted] = seen.try_emplace(supp.words(), true);
      if (!inserted) return;
      out.push_back(CandidatePart{std::move(supp), std::move(origin), std::nullopt});
    });
  }

  // Keep inclusion-maximal supports only; a cover never needs a dominated part.
  std::vector<char> dominated(out.size(), 0);
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < out.size() && !dominated[i]; ++j)
      if (i != j && out[i].supp != out[j].supp && out[i].supp.subset_of(out[j].supp))
        dominated[i] = 1;
  std::vector<CandidatePart> maximal;
  for (size_t i = 0; i < out.size(); ++i)
    if (!dominated[i]) maximal.push_back(std::move(out[i]));

  std::sort(maximal.begin(), maximal.end(), [](const CandidatePart& a, const CandidatePart& b) {
    const int ca = a.supp.count(), cb = b.supp.count();
    if (ca != cb) return ca > cb;
    return a.supp.words() < b.supp.words();
  });

  if (mode == Realizability::Constructive) {
    std::vector<CandidatePart> realized;
    for (auto& cand : maximal) {
      auto f = realize_part(cand.supp, cand.origin);
      if (!f) continue;
      cand.factor = std::move(f);
      realized.push_back(std::move(cand));
    }
    return realized;
  }
  return maximal;
}

namespace {

struct CoverSearch {
  int universe = 0;
  int words = 0;
  std::vector<std::vector<std::uint64_t>> masks;
  std::vector<int> coverer_of_first;  // scratch
  std::vector<std::vector<int>> coverers;
  int max_part_size = 1;
  int best = 0;
  std::vector<int> best_choice;
  std::vector<int> choice;

  void dfs(std::vector<std::uint64_t>& covered, int covered_cnt, int depth) {
    if (covered_cnt == universe) {
      if (depth < best) {
        best = depth;
        best_choice = choice;
      }
      return;
    }
    const int uncovered = universe - covered_cnt;
    if (depth + (uncovered + max_part_size - 1) / max_part_size >= best) return;
    int cell = -1;
    for (int w = 0; w < words && cell < 0; ++w) {
      std::uint64_t free_bits = ~covered[w];
      if (w == words - 1 && universe % 64 != 0)
        free_bits &= (std::uint64_t(1) << (universe % 64)) - 1;
      if (free_bits) cell = w * 64 + std::countr_zero(free_bits);
    }
    for (int cand : coverers[cell]) {
      std::vector<std::uint64_t> next = covered;
      int next_cnt = 0;
      for (int w = 0; w < words; ++w) {
        next[w] |= masks[cand][w];
        next_cnt += std::popcount(next[w]);
      }
      choice.push_back(cand);
      dfs(next, next_cnt, depth + 1);
      choice.pop_back();
    }
  }
};

std::string family_note(Realizability mode) {
  return mode == Realizability::NecessaryOnly
             ? "candidate family: all inclusion-maximal supports consistent with a "
               "rank-one zero structure; the optimum over this family is a lower "
               "bound for the cover number"
             : "candidate family: supports realized by verified rank-one factors; "
               "the optimum over this family is an upper bound for the cover number";
}

}  // namespace

CoverSearchResult cover_number_exact(const SupportPattern& target, Realizability mode,
                                     int size_limit) {
  if (target.n() > size_limit) {
    std::ostringstream os;
    os << "cover_number_exact: n = " << target.n() << " exceeds the size limit " << size_limit;
    throw std::invalid_argument(os.str());
  }

  CoverCertificate cert;
  cert.kind = mode == Realizability::NecessaryOnly ? CertKind::Exact : CertKind::Upper;
  cert.target = TargetRef::materialized(target);
  cert.note = family_note(mode) + "; branch and bound on the first uncovered cell";

  const auto cells = target.cells();
  if (cells.empty()) {
    cert.value = 0;
    return CoverSearchResult{0, std::move(cert)};
  }

  auto candidates = enumerate_candidate_parts(target, mode);

  CoverSearch search;
  search.universe = static_cast<int>(cells.size());
  search.words = (search.universe + 63) / 64;
  std::map<std::pair<int, int>, int> cell_index;
  for (size_t i = 0; i < cells.size(); ++i)
    cell_index[{cells[i].row, cells[i].col}] = static_cast<int>(i);
  search.masks.resize(candidates.size());
  search.coverers.assign(search.universe, {});
  for (size_t k = 0; k < candidates.size(); ++k) {
    search.masks[k].assign(search.words, 0);
    for (const Cell& c : candidates[k].supp.cells()) {
      const int idx = cell_index.at({c.row, c.col});
      search.masks[k][idx / 64] |= std::uint64_t(1) << (idx % 64);
      search.coverers[idx].push_back(static_cast<int>(k));
    }
    search.max_part_size = std::max(search.max_part_size, candidates[k].supp.count());
  }
  for (int c = 0; c < search.universe; ++c)
    if (search.coverers[c].empty())
      throw std::logic_error("target cell not covered by any candidate part");

  search.best = search.universe + 1;
  std::vector<std::uint64_t> covered(search.words, 0);
  search.dfs(covered, 0, 0);

  cert.value = search.best;
  for (int k : search.best_choice) {
    CoverPart part;
    part.supp = candidates[k].supp;
    part.origin = candidates[k].origin;
    part.factor = candidates[k].factor;
    cert.parts.push_back(std::move(part));
  }
  return CoverSearchResult{search.best, std::move(cert)};
}

CoverSearchResult cover_number_upper(const SupportPattern& target) {
  const int n = target.n();
  std::vector<CoverPart> parts;
  for (int col = 0; col < n; ++col) {
    if (target.col_popcount(col) == 0) continue;
    SupportPattern supp(n);
    for (int r = 0; r < target.row_count(); ++r)
      if (target.test(r, col)) supp.set(r, col, true);
    std::vector<int> zero_cols;
    for (int c = 0; c < n; ++c)
      if (c != col) zero_cols.push_back(c);
    PartOrigin origin{std::move(zero_cols), {{col}}};
    auto factor = realize_part(supp, origin);
    if (!factor) throw std::logic_error("single-column part failed to realize");
    parts.push_back(CoverPart{std::move(supp), std::move(origin), std::move(factor)});
  }

  // Greedy pairwise merging; a merge is accepted when the union is again the
  // exact support of a canonical factor for its own zero structure.
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < parts.size() && !merged; ++i)
      for (size_t j = i + 1; j < parts.size() && !merged; ++j) {
        SupportPattern u = parts[i].supp.union_with(parts[j].supp);
        const ColumnGraph g = canonical_graph(u);
        if (!forced_zero_closure(u, g).ok()) continue;
        PartOrigin origin{g.zero_cols(), g.components};
        auto factor = realize_part(u, origin);
        if (!factor) continue;
        parts[i] = CoverPart{std::move(u), std::move(origin), std::move(factor)};
        parts.erase(parts.begin() + j);
        merged = true;
      }
  }

  CoverCertificate cert;
  cert.kind = CertKind::Upper;
  cert.target = TargetRef::materialized(target);
  cert.value = static_cast<int>(parts.size());
  cert.parts = std::move(parts);
  cert.note =
      "greedy cover: one factor per nonzero column, then merges while the union "
      "stays exactly realizable";
  return CoverSearchResult{cert.value, std::move(cert)};
}

CoverCertificate lower_bound_chain(int base_n0, int steps, int size_limit) {
  if (base_n0 < 2) throw std::invalid_argument("lower_bound_chain needs base_n0 >= 2");
  if (steps < 1) throw std::invalid_argument("lower_bound_chain needs steps >= 1");
  const auto base = cover_number_exact(SupportPattern::full(base_n0),
                                       Realizability::NecessaryOnly, size_limit);

  CoverCertificate cert;
  cert.kind = CertKind::LowerRecursion;
  cert.base_n0 = base_n0;
  cert.base_value = base.value;
  cert.base_method = "exhaustive cover search over all maximal consistent supports";
  BigInt n0 = base_n0;
  int bound = base.value;
  for (int s = 0; s < steps; ++s) {
    BigInt n = 3 * n0 * n0;
    ++bound;
    cert.chain.push_back(RecursionStep{n0, n, bound});
    n0 = n;
  }
  cert.value = bound;
  cert.target = TargetRef::family(n0);
  cert.note =
      "replay certificate: every rank-one part over order n >= 3*n0^2 leaves a zero "
      "block on some n0 columns, so each chain step raises the cover number by one; "
      "the zero-block step is property-checked rather than enumerated, and the base "
      "value is recomputed exhaustively on verification";
  return cert;
}

namespace {

std::string cell_label(int n, const Cell& c) {
  const auto [i, j] = pair_at(n, c.row);
  std::ostringstream os;
  os << "({" << i + 1 << "," << j + 1 << "}," << c.col + 1 << ")";
  return os.str();
}

}  // namespace

VerifyReport verify_cover(const CoverCertificate& cert, int size_limit) {
  const auto fail = [](std::string msg) { return VerifyReport{false, std::move(msg)}; };

  if (cert.kind == CertKind::LowerRecursion) {
    if (cert.base_n0 < 2) return fail("recursion base order below 2");
    if (cert.base_n0 > size_limit)
      return fail("recursion base exceeds the re-verification size limit");
    const auto base = cover_number_exact(SupportPattern::full(cert.base_n0),
                                         Realizability::NecessaryOnly, size_limit);
    if (base.value != cert.base_value) {
      std::ostringstream os;
      os << "base value mismatch: certificate says " << cert.base_value
         << ", exhaustive search gives " << base.value;
      return fail(os.str());
    }
    if (cert.chain.empty()) return fail("empty recursion chain");
    BigInt prev_n = cert.base_n0;
    int bound = cert.base_value;
    for (size_t i = 0; i < cert.chain.size(); ++i) {
      const RecursionStep& st = cert.chain[i];
      if (st.n0 != prev_n) {
        std::ostringstream os;
        os << "chain step " << i + 1 << " starts at order " << st.n0 << ", expected " << prev_n;
        return fail(os.str());
      }
      if (st.n != 3 * st.n0 * st.n0) {
        std::ostringstream os;
        os << "chain step " << i + 1 << " order is not 3*n0^2";
        return fail(os.str());
      }
      ++bound;
      if (st.bound != bound) {
        std::ostringstream os;
        os << "chain step " << i + 1 << " bound is " << st.bound << ", expected " << bound;
        return fail(os.str());
      }
      prev_n = st.n;
    }
    if (cert.value != bound) return fail("certificate value differs from the chain bound");
    if (!cert.target.symbolic() || cert.target.family_n != prev_n)
      return fail("recursion target does not match the final chain order");
    return VerifyReport{};
  }

  if (!cert.target.pattern) return fail("cover certificate without a materialized target");
  const SupportPattern& target = *cert.target.pattern;
  if (!cert.target.digest.empty() && cert.target.digest != pattern_digest(target))
    return fail("target digest mismatch");

  SupportPattern covered(target.n());
  for (size_t p = 0; p < cert.parts.size(); ++p) {
    const CoverPart& part = cert.parts[p];
    if (part.supp.n() != target.n())
      return fail("part " + std::to_string(p + 1) + " has mismatched order");
    if (!part.supp.subset_of(target)) {
      for (const Cell& c : part.supp.cells())
        if (!target.test(c.row, c.col))
          return fail("part " + std::to_string(p + 1) + " is nonzero at target zero " +
                      cell_label(target.n(), c));
    }
    const auto closure = forced_zero_closure(part.supp, canonical_graph(part.supp));
    if (!closure.ok()) {
      return fail("part " + std::to_string(p + 1) + " inconsistent: cell " +
                  cell_label(target.n(), closure.violation->cell) + " violates " +
                  closure.violation->rule);
    }
    if (part.factor) {
      if (auto msg = part.factor->validate())
        return fail("part " + std::to_string(p + 1) + " factor invalid: " + *msg);
      if (part.factor->induced_support() != part.supp)
        return fail("part " + std::to_string(p + 1) +
                    " factor support differs from the stated part support");
    }
    covered = covered.union_with(part.supp);
  }
  if (covered != target) {
    for (const Cell& c : target.cells())
      if (!covered.test(c.row, c.col))
        return fail("union of parts misses target cell " + cell_label(target.n(), c));
    return fail("union of parts exceeds the target");
  }
  if (static_cast<int>(cert.parts.size()) != cert.value)
    return fail("certificate value differs from the number of parts");

  if (cert.kind == CertKind::Exact) {
    if (target.n() > size_limit)
      return fail("exact certificate beyond the re-verification size limit");
    const auto recomputed =
        cover_number_exact(target, Realizability::NecessaryOnly, size_limit);
    if (recomputed.value != cert.value) {
      std::ostringstream os;
      os << "exact value mismatch: certificate says " << cert.value
         << ", exhaustive search gives " << recomputed.value;
      return fail(os.str());
    }
  }
  return VerifyReport{};
}

}  // namespace soccover
