#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "soccover/rng.hpp"
#include "soccover/soc_core.hpp"

using namespace soccover;

namespace {

ConePoint<Rat> cp(long long x1, long long x2, long long t) {
  return ConePoint<Rat>{Rat(x1), Rat(x2), Rat(t)};
}

// Random primitive boundary point times a positive rational scale.
ConePoint<Rat> random_boundary(Rng& rng) {
  long long m, k;
  do {
    m = rng.uniform_int(2, 60);
    k = rng.uniform_int(1, m - 1);
  } while (std::gcd(m, k) != 1);
  ConePoint<Rat> p = pythagorean_boundary_point(m, k);
  if (rng.bernoulli(0.5)) p.x2 = -p.x2;
  const Rat scale(rng.uniform_int(1, 20), rng.uniform_int(1, 20));
  return ConePoint<Rat>{p.x1 * scale, p.x2 * scale, p.t * scale};
}

}  // namespace

TEST_CASE("membership classification") {
  CHECK(classify(cp(0, 0, 1)) == Membership::Interior);
  CHECK(classify(cp(3, 4, 5)) == Membership::Boundary);
  CHECK(classify(cp(2, 0, 1)) == Membership::Outside);
  CHECK(classify(cp(0, 0, 0)) == Membership::Boundary);
  CHECK(classify(cp(0, 0, -1)) == Membership::Outside);
  CHECK(classify(ConePoint<Rat>{Rat(3, 5), Rat(4, 5), Rat(1)}) == Membership::Boundary);

  CHECK(classify(ConePoint<double>{0, 0, 1}) == Membership::Interior);
  CHECK(classify(ConePoint<double>{3, 4, 5}) == Membership::Boundary);
  CHECK(classify(ConePoint<double>{2, 0, 1}) == Membership::Outside);
}

TEST_CASE("inner product") {
  CHECK(inner(cp(1, 0, 1), cp(-1, 0, 1)) == 0);
  CHECK(inner(cp(0, 0, 1), cp(0, 0, 1)) == 1);
  CHECK(inner(cp(3, 4, 5), cp(0, 0, 1)) == 5);
}

TEST_CASE("2x2 psd isomorphism") {
  const Sym2<Rat> id = to_psd2(cp(0, 0, 1));
  CHECK(id == Sym2<Rat>{Rat(1), Rat(0), Rat(1)});
  CHECK(is_psd(id));

  const Sym2<Rat> rank1 = to_psd2(cp(1, 0, 1));
  CHECK(rank1 == Sym2<Rat>{Rat(0), Rat(0), Rat(2)});
  CHECK(is_psd(rank1));
  CHECK(rank1.m11 * rank1.m22 - rank1.m12 * rank1.m12 == 0);

  const Sym2<Rat> bad = to_psd2(cp(2, 0, 1));
  CHECK(bad == Sym2<Rat>{Rat(-1), Rat(0), Rat(3)});
  CHECK_FALSE(is_psd(bad));

  CHECK(from_psd2(to_psd2(cp(7, -3, 11))) == cp(7, -3, 11));
}

TEST_CASE("isomorphism agrees with classification on random rationals") {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    const ConePoint<Rat> p{Rat(rng.uniform_int(-9, 9), rng.uniform_int(1, 9)),
                           Rat(rng.uniform_int(-9, 9), rng.uniform_int(1, 9)),
                           Rat(rng.uniform_int(-9, 9), rng.uniform_int(1, 9))};
    const bool in_cone = classify(p) != Membership::Outside;
    CHECK(in_cone == is_psd(to_psd2(p)));
    CHECK(from_psd2(to_psd2(p)) == p);
  }
}

TEST_CASE("trace pairing doubles the vector pairing") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const ConePoint<Rat> p = random_boundary(rng);
    const ConePoint<Rat> q = random_boundary(rng);
    const Sym2<Rat> P = to_psd2(p), Q = to_psd2(q);
    const Rat trace = P.m11 * Q.m11 + 2 * P.m12 * Q.m12 + P.m22 * Q.m22;
    CHECK(trace == 2 * inner(p, q));
  }
}

TEST_CASE("orthogonal ray") {
  CHECK(orthogonal_ray(cp(1, 0, 1)) == cp(-1, 0, 1));
  CHECK(orthogonal_ray(cp(3, 4, 5)) == cp(-3, -4, 5));
  // Scale invariance up to the primitive normalization.
  CHECK(orthogonal_ray(cp(6, 8, 10)) == cp(-3, -4, 5));
  CHECK(orthogonal_ray(ConePoint<Rat>{Rat(3, 7), Rat(4, 7), Rat(5, 7)}) == cp(-3, -4, 5));

  CHECK_THROWS_AS(orthogonal_ray(cp(0, 0, 1)), std::domain_error);
  CHECK_THROWS_AS(orthogonal_ray(cp(0, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(orthogonal_ray(cp(2, 0, 1)), std::domain_error);

  const ConePoint<double> ray = orthogonal_ray(ConePoint<double>{3, 4, 5});
  CHECK(ray.t == doctest::Approx(1.0));
  CHECK(inner(ray, ConePoint<double>{3, 4, 5}) == doctest::Approx(0.0));
}

TEST_CASE("orthogonal ray output invariants") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const ConePoint<Rat> a = random_boundary(rng);
    const ConePoint<Rat> o = orthogonal_ray(a);
    CHECK(inner(a, o) == 0);
    CHECK(classify(o) == Membership::Boundary);
  }
}

TEST_CASE("collinearity") {
  CHECK(collinear(cp(-1, 0, 1), cp(-2, 0, 2)));
  CHECK_FALSE(collinear(cp(1, 0, 1), cp(0, 1, 1)));
  CHECK(collinear(cp(0, 0, 0), cp(3, 4, 5)));
  // Proportional with a negative factor is not a ray match.
  CHECK_FALSE(collinear(cp(1, 0, 1), cp(-1, 0, -1)));
}

TEST_CASE("orthogonal points to a common boundary point are collinear") {
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const ConePoint<Rat> a = random_boundary(rng);
    const ConePoint<Rat> b1 = orthogonal_ray(a);
    // Second construction: adjugate of the psd image, pulled back and scaled.
    ConePoint<Rat> b2 = from_psd2(adjugate(to_psd2(a)));
    const Rat scale(rng.uniform_int(1, 9), rng.uniform_int(1, 9));
    b2.x1 *= scale;
    b2.x2 *= scale;
    b2.t *= scale;
    REQUIRE(inner(a, b1) == 0);
    REQUIRE(inner(a, b2) == 0);
    CHECK(classify(b2) == Membership::Boundary);
    CHECK(collinear(b1, b2));
  }
}

TEST_CASE("boundary ray basis is pairwise non-collinear") {
  const auto rays = boundary_ray_basis(12);
  REQUIRE(rays.size() == 12);
  for (size_t i = 0; i < rays.size(); ++i) {
    CHECK(classify(rays[i]) == Membership::Boundary);
    for (size_t j = i + 1; j < rays.size(); ++j) CHECK_FALSE(collinear(rays[i], rays[j]));
  }
  // Reflected rays pair strictly positively with every other basis ray.
  for (size_t i = 0; i < rays.size(); ++i)
    for (size_t j = 0; j < rays.size(); ++j) {
      const Rat pairing = inner(ConePoint<Rat>{-rays[i].x1, -rays[i].x2, rays[i].t}, rays[j]);
      if (i == j)
        CHECK(pairing == 0);
      else
        CHECK(pairing > 0);
    }
}
