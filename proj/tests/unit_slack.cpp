#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "soccover/rng.hpp"
#include "soccover/slack.hpp"
#include "soccover/support.hpp"

using namespace soccover;

namespace {

Vec3<Rat> rv(long long x, long long y, long long z) { return Vec3<Rat>{Rat(x), Rat(y), Rat(z)}; }

// Angles with circular pairwise gaps of at least min_gap, sorted.
std::vector<double> spread_angles(Rng& rng, int n, double min_gap = 0.05) {
  const double two_pi = 2 * std::numbers::pi;
  while (true) {
    std::vector<double> th(n);
    for (double& t : th) t = rng.uniform(0.0, two_pi - 1e-9);
    std::sort(th.begin(), th.end());
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i) ok = th[i + 1] - th[i] >= min_gap;
    if (ok) ok = two_pi - (th.back() - th.front()) >= min_gap;
    if (ok) return th;
  }
}

}  // namespace

TEST_CASE("curve points") {
  CHECK(moment_vector(0) == rv(1, 0, 0));
  CHECK(moment_vector(2) == rv(1, 2, 4));
  CHECK(moment_vector(-1) == rv(1, -1, 1));

  const Vec3<double> v0 = trig_vector(0.0);
  CHECK(v0.x == 1.0);
  CHECK(v0.y == 1.0);
  CHECK(v0.z == 0.0);
  const Vec3<double> v1 = trig_vector(std::numbers::pi / 2);
  CHECK(v1.y == doctest::Approx(0.0));
  CHECK(v1.z == doctest::Approx(1.0));
  const Vec3<double> v2 = trig_vector(std::numbers::pi);
  CHECK(v2.y == doctest::Approx(-1.0));
  CHECK(v2.z == doctest::Approx(0.0));

  CHECK_THROWS_AS(trig_vector(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(trig_vector(2 * std::numbers::pi), std::invalid_argument);
}

TEST_CASE("cross and determinant") {
  CHECK(cross(rv(1, 0, 0), rv(0, 1, 0)) == rv(0, 0, 1));
  CHECK(cross(rv(1, 1, 1), rv(1, 1, 1)) == rv(0, 0, 0));
  CHECK(cross(rv(1, 1, 1), rv(1, 2, 4)) == rv(2, -3, 1));

  CHECK(det3(rv(1, 0, 0), rv(0, 1, 0), rv(0, 0, 1)) == 1);
  CHECK(det3(moment_vector(1), moment_vector(2), moment_vector(3)) == 2);
  CHECK(det3(moment_vector(1), moment_vector(2), moment_vector(2)) == 0);

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Vec3<Rat> u = rv(rng.uniform_int(-5, 5), rng.uniform_int(-5, 5), rng.uniform_int(-5, 5));
    const Vec3<Rat> v = rv(rng.uniform_int(-5, 5), rng.uniform_int(-5, 5), rng.uniform_int(-5, 5));
    const Vec3<Rat> c = cross(u, v);
    CHECK(dot(c, u) == 0);
    CHECK(dot(c, v) == 0);
  }
}

TEST_CASE("vandermonde product formula") {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    long long a = rng.uniform_int(-20, 20), b = rng.uniform_int(-20, 20),
              c = rng.uniform_int(-20, 20);
    if (a == b || a == c || b == c) continue;
    const Rat expected = Rat(b - a) * Rat(c - a) * Rat(c - b);
    CHECK(det3(moment_vector(a), moment_vector(b), moment_vector(c)) == expected);
  }
}

TEST_CASE("slack entries") {
  CHECK(slack_entry(rv(1, 0, 0), rv(0, 1, 0)) == 0);
  CHECK(slack_entry(rv(1, 1, 1), rv(1, 1, 1)) == 9);
  CHECK(slack_entry(rv(1, 2, 4), rv(1, 0, 0)) == 1);
}

TEST_CASE("general position") {
  const auto vs = curve_vectors(MomentCurve::basic(5));
  CHECK(check_general_position(std::span<const Vec3<Rat>>(vs)));

  const std::vector<Vec3<Rat>> coplanar = {rv(1, 0, 0), rv(0, 1, 0), rv(1, 1, 0), rv(0, 0, 1)};
  CHECK_FALSE(check_general_position(std::span<const Vec3<Rat>>(coplanar)));

  const std::vector<Vec3<Rat>> two = {rv(1, 0, 0), rv(0, 1, 0)};
  CHECK(check_general_position(std::span<const Vec3<Rat>>(two)));
}

TEST_CASE("pairing matrix construction") {
  const LabeledMatrix<Rat> a3 = build_an(MomentCurve::basic(3));
  REQUIRE(a3.row_count() == 3);
  CHECK(a3.rows[0] == std::pair<int, int>{0, 1});
  CHECK(a3.at(0, 0) == 0);
  CHECK(a3.at(0, 1) == 0);
  CHECK(a3.at(0, 2) == 4);
  CHECK(a3.at(1, 1) == 4);
  CHECK(a3.at(2, 0) == 4);

  const LabeledMatrix<Rat> a2 = build_an(MomentCurve::basic(2));
  REQUIRE(a2.row_count() == 1);
  CHECK(a2.at(0, 0) == 0);
  CHECK(a2.at(0, 1) == 0);

  const LabeledMatrix<double> t3 =
      build_an(TrigCurve{{0.0, std::numbers::pi / 2, std::numbers::pi}});
  CHECK(t3.at(0, 2) == doctest::Approx(4.0));
  CHECK(std::sqrt(t3.at(0, 2)) == doctest::Approx(2.0));
  CHECK(t3.at(0, 0) == 0.0);

  CHECK_THROWS_AS(build_an(MomentCurve{{1, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(build_an(MomentCurve{{4}}), std::invalid_argument);
  CHECK_THROWS_AS(build_an(TrigCurve{{0.0, 1e-9, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(build_an(TrigCurve{{0.5, 0.4, 1.0}}), std::invalid_argument);
}

TEST_CASE("sparsity matches the structural zeros exactly") {
  for (int n = 2; n <= 8; ++n) {
    const LabeledMatrix<Rat> a = build_an(MomentCurve::basic(n));
    for (int r = 0; r < a.row_count(); ++r) {
      const auto [i, j] = a.rows[r];
      for (int c = 0; c < n; ++c) CHECK((a.at(r, c) == 0) == (c == i || c == j));
    }
  }
}

TEST_CASE("moment entries are perfect squares") {
  const LabeledMatrix<Rat> a = build_an(MomentCurve::basic(6));
  for (int r = 0; r < a.row_count(); ++r)
    for (int c = 0; c < a.n; ++c) {
      REQUIRE(is_integer(a.at(r, c)));
      CHECK(perfect_square(numerator(a.at(r, c))));
    }
}

TEST_CASE("restriction to a column subset keeps the family shape") {
  const SupportPattern a6 = extract_support(build_an(MomentCurve::basic(6)));
  CHECK(a6.restrict_to({0, 2, 3, 5}) == SupportPattern::full(4));
  CHECK(a6.restrict_to({1, 2, 4}) == SupportPattern::full(3));

  // Custom distinct indices give the same support as 1..n.
  const LabeledMatrix<Rat> shifted = build_an(MomentCurve{{-7, -2, 0, 3, 11}});
  CHECK(extract_support(shifted) == SupportPattern::full(5));
}

TEST_CASE("moment and trig curves share a support") {
  Rng rng(99);
  for (int n : {3, 5, 8}) {
    const auto th = spread_angles(rng, n);
    const LabeledMatrix<double> t = build_an(TrigCurve{th});
    CHECK(extract_support(t, 1e-12) == SupportPattern::full(n));
  }
}

TEST_CASE("generalized slack entries") {
  const TrigCurve trig{{0.0, std::numbers::pi / 2, std::numbers::pi}};
  CHECK(generalized_slack_entry(0, 1, 2, trig) == doctest::Approx(4.0));
  CHECK(generalized_slack_entry(0, 1, 1, trig) == doctest::Approx(0.0));

  const MomentCurve mom = MomentCurve::basic(3);
  CHECK(generalized_slack_entry(0, 1, 2, mom) == 4);
  CHECK(generalized_slack_entry(0, 1, 0, mom) == 0);
}

TEST_CASE("slice membership") {
  // Rank-one trig direction lands in the slice.
  const double th = 0.7;
  const Vec3<double> v = trig_vector(th);
  Sym3<double> X;
  X.x11 = v.x * v.x;
  X.x12 = v.x * v.y;
  X.x13 = v.x * v.z;
  X.x22 = v.y * v.y;
  X.x23 = v.y * v.z;
  X.x33 = v.z * v.z;
  CHECK(slice_c_membership(X));

  Sym3<Rat> id;
  id.x11 = id.x22 = id.x33 = 1;
  CHECK_FALSE(slice_c_membership(id));

  Sym3<Rat> diag;
  diag.x11 = diag.x22 = 1;
  diag.x33 = 0;
  CHECK(slice_c_membership(diag));
}
