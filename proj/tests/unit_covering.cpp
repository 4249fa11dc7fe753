#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "soccover/covering.hpp"
#include "soccover/io.hpp"
#include "soccover/rng.hpp"
#include "soccover/slack.hpp"

using namespace soccover;

namespace {

ConePoint<Rat> cp(long long x1, long long x2, long long t) {
  return ConePoint<Rat>{Rat(x1), Rat(x2), Rat(t)};
}

// Column-wise product-cone factorization of a pairing matrix: component j of
// the row tuple carries the entry on the axis, component j of column tuple j
// is the axis point.
std::pair<std::vector<ConeTuple>, std::vector<ConeTuple>> per_column_factorization(
    const LabeledMatrix<Rat>& m) {
  std::vector<ConeTuple> rows(m.row_count()), cols(m.n);
  for (int r = 0; r < m.row_count(); ++r) {
    rows[r].parts.assign(m.n, ConePoint<Rat>{});
    for (int c = 0; c < m.n; ++c) rows[r].parts[c] = ConePoint<Rat>{Rat(0), Rat(0), m.at(r, c)};
  }
  for (int c = 0; c < m.n; ++c) {
    cols[c].parts.assign(m.n, ConePoint<Rat>{});
    cols[c].parts[c] = cp(0, 0, 1);
  }
  return {rows, cols};
}

// The explicitly realizable two-cell part on three columns.
Rank1Factor explicit_two_cell_factor() {
  Rank1Factor f;
  f.n = 3;
  f.a.assign(3, ConePoint<Rat>{});
  f.b.assign(3, ConePoint<Rat>{});
  f.a[pair_index(3, 0, 1)] = cp(-1, 0, 1);
  f.a[pair_index(3, 0, 2)] = cp(0, -1, 1);
  f.b[1] = cp(1, 0, 1);
  f.b[2] = cp(0, 1, 1);
  return f;
}

// Independent exhaustive oracle for the three-column target: enumerate every
// zero/grouping structure directly, collect the distinct part supports, and
// try all covers of size one and two.
int brute_force_cover_number_a3() {
  const SupportPattern target = SupportPattern::full(3);
  std::set<std::vector<std::tuple<int, int, int>>> parts;
  for (int mask = 0; mask < 8; ++mask) {  // live columns
    std::vector<int> live;
    for (int c = 0; c < 3; ++c)
      if (mask & (1 << c)) live.push_back(c);
    // All partitions of up to three elements, spelled out.
    std::vector<std::vector<std::vector<int>>> partitions;
    if (live.size() == 1) partitions = {{{live[0]}}};
    if (live.size() == 2) partitions = {{{live[0]}, {live[1]}}, {{live[0], live[1]}}};
    if (live.size() == 3) {
      const int a = live[0], b = live[1], c = live[2];
      partitions = {{{a}, {b}, {c}}, {{a, b}, {c}}, {{a, c}, {b}}, {{a}, {b, c}}, {{a, b, c}}};
    }
    for (const auto& classes : partitions) {
      std::vector<int> class_of(3, -1);
      for (size_t k = 0; k < classes.size(); ++k)
        for (int col : classes[k]) class_of[col] = static_cast<int>(k);
      std::vector<std::tuple<int, int, int>> cells;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const int ci = class_of[i], cj = class_of[j];
          if (ci >= 0 && cj >= 0 && ci != cj) continue;  // dead row
          for (int col = 0; col < 3; ++col) {
            if (col == i || col == j) continue;
            const int cc = class_of[col];
            if (cc < 0 || cc == ci || cc == cj) continue;
            cells.emplace_back(i, j, col);
          }
        }
      if (!cells.empty()) parts.insert(cells);
    }
  }
  std::vector<std::set<std::tuple<int, int, int>>> universe;
  for (const auto& p : parts) universe.emplace_back(p.begin(), p.end());
  std::set<std::tuple<int, int, int>> want;
  for (const Cell& c : target.cells()) {
    const auto [i, j] = pair_at(3, c.row);
    want.emplace(i, j, c.col);
  }
  const auto covers = [&](const std::vector<size_t>& pick) {
    std::set<std::tuple<int, int, int>> got;
    for (size_t k : pick) got.insert(universe[k].begin(), universe[k].end());
    return std::includes(got.begin(), got.end(), want.begin(), want.end());
  };
  for (size_t i = 0; i < universe.size(); ++i)
    if (covers({i})) return 1;
  for (size_t i = 0; i < universe.size(); ++i)
    for (size_t j = i + 1; j < universe.size(); ++j)
      if (covers({i, j})) return 2;
  return 3;  // the family support always has a three-part cover at order 3
}

SupportPattern random_subtarget(Rng& rng, int n, double keep) {
  const SupportPattern full = SupportPattern::full(n);
  SupportPattern out(n);
  for (const Cell& c : full.cells())
    if (rng.bernoulli(keep)) out.set(c.row, c.col, true);
  return out;
}

}  // namespace

TEST_CASE("factorization verification") {
  // 1x1 pairing with the axis point.
  CHECK(verify_factorization({{Rat(1)}}, {ConeTuple{{cp(0, 0, 1)}}},
                             {ConeTuple{{cp(0, 0, 1)}}}));

  // Orthogonal boundary pair gives 0, not 1.
  std::string why;
  CHECK_FALSE(verify_factorization({{Rat(1)}}, {ConeTuple{{cp(1, 0, 1)}}},
                                   {ConeTuple{{cp(-1, 0, 1)}}}, &why));
  CHECK(why.find("pairing gives 0") != std::string::npos);

  // Points outside the product cone are rejected.
  CHECK_FALSE(verify_factorization({{Rat(1)}}, {ConeTuple{{cp(2, 0, 1)}}},
                                   {ConeTuple{{cp(0, 0, 1)}}}, &why));

  CHECK_THROWS_AS(verify_factorization({{Rat(1)}}, {}, {ConeTuple{{cp(0, 0, 1)}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      verify_factorization({{Rat(1)}}, {ConeTuple{{cp(0, 0, 1), cp(0, 0, 1)}}},
                           {ConeTuple{{cp(0, 0, 1)}}}),
      std::invalid_argument);
}

TEST_CASE("per-column factorization certifies rank at most n") {
  for (int n : {3, 4, 5}) {
    const LabeledMatrix<Rat> m = build_an(MomentCurve::basic(n));
    const auto [rows, cols] = per_column_factorization(m);
    CHECK(verify_factorization(m, rows, cols));
  }
}

TEST_CASE("cover verification") {
  const SupportPattern target = SupportPattern::full(3);

  SUBCASE("two realizable parts cover the three-column family") {
    CoverCertificate cert;
    cert.kind = CertKind::Upper;
    cert.target = TargetRef::materialized(target);
    cert.value = 2;

    CoverPart p1;
    p1.factor = explicit_two_cell_factor();
    p1.supp = p1.factor->induced_support();
    REQUIRE(p1.supp.count() == 2);

    CoverPart p2;
    Rank1Factor f2;
    f2.n = 3;
    f2.a.assign(3, ConePoint<Rat>{});
    f2.b.assign(3, ConePoint<Rat>{});
    f2.a[pair_index(3, 1, 2)] = cp(0, 0, 1);
    f2.b[0] = cp(0, 0, 1);
    p2.factor = f2;
    p2.supp = f2.induced_support();
    REQUIRE(p2.supp.count() == 1);

    cert.parts = {p1, p2};
    CHECK(verify_cover(cert).ok);
  }

  SUBCASE("a single full-support part is refuted by the closure") {
    CoverCertificate cert;
    cert.kind = CertKind::Upper;
    cert.target = TargetRef::materialized(target);
    cert.value = 1;
    CoverPart part;
    part.supp = target;
    cert.parts = {part};
    const VerifyReport rep = verify_cover(cert);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_violation.find("inconsistent") != std::string::npos);
  }

  SUBCASE("empty target with zero parts verifies") {
    CoverCertificate cert;
    cert.kind = CertKind::Upper;
    cert.target = TargetRef::materialized(SupportPattern(2));
    cert.value = 0;
    CHECK(verify_cover(cert).ok);
  }

  SUBCASE("missing cells are reported") {
    CoverCertificate cert;
    cert.kind = CertKind::Upper;
    cert.target = TargetRef::materialized(target);
    cert.value = 1;
    CoverPart part;
    part.supp = SupportPattern(3);
    part.supp.set(pair_index(3, 0, 1), 2, true);
    cert.parts = {part};
    const VerifyReport rep = verify_cover(cert);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_violation.find("misses target cell") != std::string::npos);
  }

  SUBCASE("factor support mismatch is reported") {
    CoverCertificate cert;
    cert.kind = CertKind::Upper;
    cert.target = TargetRef::materialized(target);
    cert.value = 1;
    CoverPart part;
    part.supp = target;  // claims more cells than the factor produces
    part.factor = explicit_two_cell_factor();
    cert.parts = {part};
    const VerifyReport rep = verify_cover(cert);
    CHECK_FALSE(rep.ok);
  }
}

TEST_CASE("exact cover numbers at small orders") {
  CHECK(cover_number_exact(SupportPattern::full(2), Realizability::NecessaryOnly).value == 0);

  const int oracle = brute_force_cover_number_a3();
  CHECK(oracle == 2);
  CHECK(cover_number_exact(SupportPattern::full(3), Realizability::NecessaryOnly).value == oracle);
  CHECK(cover_number_exact(SupportPattern::full(3), Realizability::Constructive).value == oracle);

  SupportPattern single(4);
  single.set(pair_index(4, 0, 1), 2, true);
  CHECK(cover_number_exact(single, Realizability::NecessaryOnly).value == 1);
  CHECK(cover_number_exact(single, Realizability::Constructive).value == 1);

  CHECK_THROWS_AS(cover_number_exact(SupportPattern::full(7), Realizability::NecessaryOnly),
                  std::invalid_argument);
}

TEST_CASE("bracket relations on the pairing family") {
  for (int n = 2; n <= 6; ++n) {
    const SupportPattern target = SupportPattern::full(n);
    const auto lower = cover_number_exact(target, Realizability::NecessaryOnly);
    const auto constructive = cover_number_exact(target, Realizability::Constructive);
    const auto greedy = cover_number_upper(target);
    CHECK(lower.value <= constructive.value);
    CHECK(constructive.value <= greedy.value);
    CHECK(greedy.value <= n);
    // Both families coincide here: every maximal consistent support is
    // realized by boundary rays.
    CHECK(lower.value == constructive.value);
    CHECK(verify_cover(constructive.cert).ok);
    CHECK(verify_cover(greedy.cert).ok);
    for (const CoverPart& part : constructive.cert.parts) REQUIRE(part.factor.has_value());
  }
}

TEST_CASE("exact certificates re-verify and tampered values fail") {
  auto res = cover_number_exact(SupportPattern::full(4), Realizability::Constructive);
  res.cert.kind = CertKind::Exact;
  CHECK(verify_cover(res.cert).ok);
  res.cert.value -= 1;
  res.cert.parts.pop_back();
  CHECK_FALSE(verify_cover(res.cert).ok);
}

TEST_CASE("sandwich holds on random subtargets") {
  Rng rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const SupportPattern target = random_subtarget(rng, 5, rng.uniform(0.2, 0.9));
    const auto lower = cover_number_exact(target, Realizability::NecessaryOnly);
    const auto constructive = cover_number_exact(target, Realizability::Constructive);
    const auto greedy = cover_number_upper(target);
    CHECK(lower.value <= constructive.value);
    CHECK(constructive.value <= greedy.value);
    CHECK(verify_cover(greedy.cert).ok);
    for (const CoverPart& part : greedy.cert.parts) REQUIRE(part.factor.has_value());
  }
}

TEST_CASE("restriction can only shrink the cover number") {
  const SupportPattern a5 = SupportPattern::full(5);
  const int full_value = cover_number_exact(a5, Realizability::NecessaryOnly).value;
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    std::set<int> pick;
    while (pick.size() < 4) pick.insert(static_cast<int>(rng.uniform_int(0, 4)));
    const std::vector<int> cols(pick.begin(), pick.end());
    const int sub_value =
        cover_number_exact(a5.restrict_to(cols), Realizability::NecessaryOnly).value;
    CHECK(sub_value <= full_value);
  }
}

TEST_CASE("splitting a product factorization yields a verified cover") {
  // Splitting the per-column product factorization gives a verified cover
  // with one part per column.
  const LabeledMatrix<Rat> m = build_an(MomentCurve::basic(4));
  const SupportPattern target = extract_support(m);
  CoverCertificate cert;
  cert.kind = CertKind::Upper;
  cert.target = TargetRef::materialized(target);
  std::vector<CoverPart> parts;
  for (int col = 0; col < 4; ++col) {
    Rank1Factor f;
    f.n = 4;
    f.a.assign(pair_count(4), ConePoint<Rat>{});
    f.b.assign(4, ConePoint<Rat>{});
    f.b[col] = cp(0, 0, 1);
    for (int r = 0; r < pair_count(4); ++r)
      f.a[r] = ConePoint<Rat>{Rat(0), Rat(0), m.at(r, col)};
    CoverPart part;
    part.supp = f.induced_support();
    part.factor = std::move(f);
    parts.push_back(std::move(part));
  }
  cert.value = static_cast<int>(parts.size());
  cert.parts = std::move(parts);
  CHECK(verify_cover(cert).ok);

  const auto greedy = cover_number_upper(target);
  CHECK(greedy.value <= 4);
  CHECK(greedy.value == 2);  // pairs of columns merge at order 4
}

TEST_CASE("greedy examples") {
  CHECK(cover_number_upper(SupportPattern::full(3)).value == 2);
  CHECK(cover_number_upper(SupportPattern(4)).value == 0);
  for (int n = 3; n <= 10; ++n) {
    const auto res = cover_number_upper(SupportPattern::full(n));
    CHECK(res.value <= n);
    CHECK(verify_cover(res.cert).ok);
  }
}

TEST_CASE("lower bound chains") {
  const CoverCertificate c1 = lower_bound_chain(3, 1);
  CHECK(c1.value == 3);
  CHECK(c1.target.family_n == 27);
  CHECK(verify_cover(c1).ok);

  const CoverCertificate c2 = lower_bound_chain(2, 1);
  CHECK(c2.value == 1);
  CHECK(c2.target.family_n == 12);
  CHECK(verify_cover(c2).ok);

  const CoverCertificate c3 = lower_bound_chain(3, 2);
  CHECK(c3.value == 4);
  CHECK(c3.target.family_n == 2187);
  CHECK(verify_cover(c3).ok);

  CHECK_THROWS_AS(lower_bound_chain(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound_chain(3, 0), std::invalid_argument);

  CoverCertificate broken = c3;
  broken.chain[1].n = 100;
  CHECK_FALSE(verify_cover(broken).ok);
  broken = c3;
  broken.base_value = 1;
  CHECK_FALSE(verify_cover(broken).ok);
}

TEST_CASE("search is deterministic") {
  const auto a = cover_number_exact(SupportPattern::full(5), Realizability::Constructive);
  const auto b = cover_number_exact(SupportPattern::full(5), Realizability::Constructive);
  CHECK(dump_document(certificate_to_json(a.cert)) == dump_document(certificate_to_json(b.cert)));

  const auto g1 = cover_number_upper(SupportPattern::full(6));
  const auto g2 = cover_number_upper(SupportPattern::full(6));
  CHECK(dump_document(certificate_to_json(g1.cert)) == dump_document(certificate_to_json(g2.cert)));
}

TEST_CASE("candidate parts are consistent, maximal and inside the target") {
  const SupportPattern target = SupportPattern::full(4);
  const auto parts = enumerate_candidate_parts(target, Realizability::NecessaryOnly);
  CHECK(!parts.empty());
  for (size_t i = 0; i < parts.size(); ++i) {
    CHECK(parts[i].supp.subset_of(target));
    CHECK(forced_zero_closure(parts[i].supp, canonical_graph(parts[i].supp)).ok());
    for (size_t j = 0; j < parts.size(); ++j)
      if (i != j) CHECK_FALSE(parts[i].supp.subset_of(parts[j].supp));
  }
  // Constructive candidates carry factors that reproduce their supports.
  for (const auto& cand : enumerate_candidate_parts(target, Realizability::Constructive)) {
    REQUIRE(cand.factor.has_value());
    CHECK_FALSE(cand.factor->validate().has_value());
    CHECK(cand.factor->induced_support() == cand.supp);
  }
}
