#pragma once

#include <vector>

#include "soccover/rational.hpp"

namespace soccover {

// Membership in the three-dimensional cone {(x1,x2,t) : x1^2 + x2^2 <= t^2, t >= 0}.
enum class Membership { Interior, Boundary, Outside };

const char* to_string(Membership m);

template <class S>
struct ConePoint {
  S x1{}, x2{}, t{};

  bool is_zero() const { return x1 == 0 && x2 == 0 && t == 0; }
  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

// 2x2 symmetric matrix [[m11, m12], [m12, m22]].
template <class S>
struct Sym2 {
  S m11{}, m12{}, m22{};

  friend bool operator==(const Sym2&, const Sym2&) = default;
};

// Exact classification: squares are compared directly, no roots taken.
Membership classify(const ConePoint<Rat>& p);
// Tolerant classification; eps applies to the squared defect, scaled.
Membership classify(const ConePoint<double>& p, double eps = kDefaultEps);

Rat inner(const ConePoint<Rat>& p, const ConePoint<Rat>& q);
double inner(const ConePoint<double>& p, const ConePoint<double>& q);

// (x1,x2,t) -> [[t-x1, x2], [x2, t+x1]]. Membership in the cone corresponds
// exactly to positive semidefiniteness of the image.
template <class S>
Sym2<S> to_psd2(const ConePoint<S>& p) {
  return Sym2<S>{p.t - p.x1, p.x2, p.t + p.x1};
}

template <class S>
ConePoint<S> from_psd2(const Sym2<S>& m) {
  ConePoint<S> p;
  p.x1 = (m.m22 - m.m11) / 2;
  p.x2 = m.m12;
  p.t = (m.m11 + m.m22) / 2;
  return p;
}

template <class S>
Sym2<S> adjugate(const Sym2<S>& m) {
  return Sym2<S>{m.m22, -m.m12, m.m11};
}

bool is_psd(const Sym2<Rat>& m);
bool is_psd(const Sym2<double>& m, double eps = kDefaultEps);

// Generator of the unique ray of the cone orthogonal to a boundary point a:
// (-x1, -x2, t), normalized to a primitive integer vector (exact) or unit t
// (floating). Throws std::invalid_argument on a = 0 and std::domain_error
// when a is interior or outside.
ConePoint<Rat> orthogonal_ray(const ConePoint<Rat>& a);
ConePoint<double> orthogonal_ray(const ConePoint<double>& a, double eps = kDefaultEps);

// True iff one point is a nonnegative multiple of the other; the zero point
// is collinear with everything.
bool collinear(const ConePoint<Rat>& p, const ConePoint<Rat>& q);
bool collinear(const ConePoint<double>& p, const ConePoint<double>& q,
               double eps = kDefaultEps);

// Rescales a rational point to coprime integer coordinates, preserving the ray.
ConePoint<Rat> normalize_primitive(const ConePoint<Rat>& p);

// Exact boundary point (m^2-k^2, 2mk, m^2+k^2); requires m > k >= 1.
ConePoint<Rat> pythagorean_boundary_point(long long m, long long k);

// The first `count` pairwise non-collinear primitive boundary points, in a
// fixed enumeration order of coprime (m, k) with m > k >= 1.
std::vector<ConePoint<Rat>> boundary_ray_basis(int count);

}  // namespace soccover
