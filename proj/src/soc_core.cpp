#include "soccover/soc_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace soccover {

namespace {

Rat sq(const Rat& v) { return v * v; }

double norm_scale(const ConePoint<double>& p) {
  return std::max({1.0, p.x1 * p.x1, p.x2 * p.x2, p.t * p.t});
}

}  // namespace

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "?";
}

Membership classify(const ConePoint<Rat>& p) {
  const Rat lhs = sq(p.x1) + sq(p.x2);
  const Rat rhs = sq(p.t);
  if (p.t < 0) return Membership::Outside;
  if (lhs == rhs) return Membership::Boundary;
  return lhs < rhs ? Membership::Interior : Membership::Outside;
}

Membership classify(const ConePoint<double>& p, double eps) {
  const double s = norm_scale(p);
  const double d = p.x1 * p.x1 + p.x2 * p.x2 - p.t * p.t;
  if (p.t < -eps * std::sqrt(s)) return Membership::Outside;
  if (std::abs(d) <= eps * s) return Membership::Boundary;
  return d < 0 ? Membership::Interior : Membership::Outside;
}

Rat inner(const ConePoint<Rat>& p, const ConePoint<Rat>& q) {
  return p.x1 * q.x1 + p.x2 * q.x2 + p.t * q.t;
}

double inner(const ConePoint<double>& p, const ConePoint<double>& q) {
  return p.x1 * q.x1 + p.x2 * q.x2 + p.t * q.t;
}

bool is_psd(const Sym2<Rat>& m) {
  return m.m11 >= 0 && m.m22 >= 0 && m.m11 * m.m22 - m.m12 * m.m12 >= 0;
}

bool is_psd(const Sym2<double>& m, double eps) {
  const double s = std::max({1.0, std::abs(m.m11), std::abs(m.m12), std::abs(m.m22)});
  return m.m11 >= -eps * s && m.m22 >= -eps * s &&
         m.m11 * m.m22 - m.m12 * m.m12 >= -eps * s * s;
}

ConePoint<Rat> normalize_primitive(const ConePoint<Rat>& p) {
  if (p.is_zero()) return p;
  BigInt l = 1;
  for (const Rat* c : {&p.x1, &p.x2, &p.t}) l = boost::multiprecision::lcm(l, denominator(*c));
  const Rat s1 = p.x1 * Rat(l), s2 = p.x2 * Rat(l), s3 = p.t * Rat(l);
  BigInt n1 = numerator(s1);
  BigInt n2 = numerator(s2);
  BigInt n3 = numerator(s3);
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(n1), abs(n2)), abs(n3));
  if (g == 0) g = 1;
  return ConePoint<Rat>{Rat(n1 / g), Rat(n2 / g), Rat(n3 / g)};
}

ConePoint<Rat> orthogonal_ray(const ConePoint<Rat>& a) {
  if (a.is_zero()) throw std::invalid_argument("orthogonal_ray: zero input");
  switch (classify(a)) {
    case Membership::Outside:
      throw std::domain_error("orthogonal_ray: point outside the cone");
    case Membership::Interior:
      throw std::domain_error(
          "orthogonal_ray: interior point, only the zero vector is orthogonal");
    case Membership::Boundary: break;
  }
  // On the boundary |a'| = t exactly, so the ray generator is rational.
  return normalize_primitive(ConePoint<Rat>{-a.x1, -a.x2, a.t});
}

ConePoint<double> orthogonal_ray(const ConePoint<double>& a, double eps) {
  if (a.x1 == 0 && a.x2 == 0 && a.t == 0)
    throw std::invalid_argument("orthogonal_ray: zero input");
  switch (classify(a, eps)) {
    case Membership::Outside:
      throw std::domain_error("orthogonal_ray: point outside the cone");
    case Membership::Interior:
      throw std::domain_error(
          "orthogonal_ray: interior point, only the zero vector is orthogonal");
    case Membership::Boundary: break;
  }
  const double norm = std::hypot(a.x1, a.x2);
  if (norm == 0) throw std::invalid_argument("orthogonal_ray: degenerate boundary point");
  return ConePoint<double>{-a.x1 / norm, -a.x2 / norm, 1.0};
}

bool collinear(const ConePoint<Rat>& p, const ConePoint<Rat>& q) {
  if (p.is_zero() || q.is_zero()) return true;
  const bool proportional = p.x1 * q.x2 == p.x2 * q.x1 && p.x1 * q.t == p.t * q.x1 &&
                            p.x2 * q.t == p.t * q.x2;
  return proportional && inner(p, q) > 0;
}

bool collinear(const ConePoint<double>& p, const ConePoint<double>& q, double eps) {
  const double sp = std::max({std::abs(p.x1), std::abs(p.x2), std::abs(p.t)});
  const double sq_ = std::max({std::abs(q.x1), std::abs(q.x2), std::abs(q.t)});
  if (sp <= eps || sq_ <= eps) return true;
  const double s = std::max(1.0, sp * sq_);
  return std::abs(p.x1 * q.x2 - p.x2 * q.x1) <= eps * s &&
         std::abs(p.x1 * q.t - p.t * q.x1) <= eps * s &&
         std::abs(p.x2 * q.t - p.t * q.x2) <= eps * s && inner(p, q) >= -eps * s;
}

ConePoint<Rat> pythagorean_boundary_point(long long m, long long k) {
  if (!(m > k && k >= 1)) throw std::invalid_argument("pythagorean point needs m > k >= 1");
  const Rat mm(m), kk(k);
  return ConePoint<Rat>{mm * mm - kk * kk, 2 * mm * kk, mm * mm + kk * kk};
}

std::vector<ConePoint<Rat>> boundary_ray_basis(int count) {
  std::vector<ConePoint<Rat>> out;
  out.reserve(std::max(count, 0));
  for (long long m = 2; static_cast<int>(out.size()) < count; ++m) {
    for (long long k = 1; k < m && static_cast<int>(out.size()) < count; ++k) {
      if (std::gcd(m, k) != 1) continue;
      out.push_back(normalize_primitive(pythagorean_boundary_point(m, k)));
    }
  }
  return out;
}

}  // namespace soccover
