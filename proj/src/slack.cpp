#include "soccover/slack.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace soccover {

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_index(int n, int i, int j) {
  return i * (n - 1) - i * (i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_at(int n, int idx) {
  int i = 0;
  int block = n - 1;
  while (idx >= block) {
    idx -= block;
    ++i;
    --block;
  }
  return {i, i + 1 + idx};
}

Vec3<Rat> moment_vector(long long i) {
  const Rat r(i);
  return Vec3<Rat>{Rat(1), r, r * r};
}

Vec3<double> trig_vector(double theta) {
  if (!(theta >= 0.0 && theta < 2 * std::numbers::pi))
    throw std::invalid_argument("trig_vector: angle outside [0, 2*pi)");
  return Vec3<double>{1.0, std::cos(theta), std::sin(theta)};
}

MomentCurve MomentCurve::basic(int n) {
  MomentCurve c;
  c.indices.resize(n);
  for (int i = 0; i < n; ++i) c.indices[i] = i + 1;
  return c;
}

std::vector<Vec3<Rat>> curve_vectors(const MomentCurve& c) {
  std::vector<Vec3<Rat>> vs;
  vs.reserve(c.indices.size());
  for (long long i : c.indices) vs.push_back(moment_vector(i));
  return vs;
}

std::vector<Vec3<double>> curve_vectors(const TrigCurve& c) {
  std::vector<Vec3<double>> vs;
  vs.reserve(c.thetas.size());
  for (double th : c.thetas) vs.push_back(trig_vector(th));
  return vs;
}

bool check_general_position(std::span<const Vec3<Rat>> vs) {
  const int m = static_cast<int>(vs.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        if (det3(vs[i], vs[j], vs[k]) == 0) return false;
  return true;
}

bool check_general_position(std::span<const Vec3<double>> vs, double margin) {
  const int m = static_cast<int>(vs.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        if (std::abs(det3(vs[i], vs[j], vs[k])) <= margin) return false;
  return true;
}

namespace {

void validate_moment(const MomentCurve& curve) {
  if (curve.size() < 2) throw std::invalid_argument("curve needs at least 2 points");
  std::set<long long> seen(curve.indices.begin(), curve.indices.end());
  if (static_cast<int>(seen.size()) != curve.size())
    throw std::invalid_argument("moment curve indices must be distinct");
}

void validate_trig(const TrigCurve& curve) {
  if (curve.size() < 2) throw std::invalid_argument("curve needs at least 2 points");
  for (int i = 0; i < curve.size(); ++i) {
    if (!(curve.thetas[i] >= 0.0 && curve.thetas[i] < 2 * std::numbers::pi))
      throw std::invalid_argument("trig curve angle outside [0, 2*pi)");
    if (i > 0 && !(curve.thetas[i] > curve.thetas[i - 1]))
      throw std::invalid_argument("trig curve angles must be strictly increasing");
  }
}

template <class S>
LabeledMatrix<S> build_from_vectors(const std::vector<Vec3<S>>& vs) {
  const int n = static_cast<int>(vs.size());
  LabeledMatrix<S> m;
  m.n = n;
  m.rows.reserve(pair_count(n));
  m.entries.assign(static_cast<size_t>(pair_count(n)) * n, S{});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.rows.emplace_back(i, j);
  for (int r = 0; r < m.row_count(); ++r) {
    const auto [i, j] = m.rows[r];
    const Vec3<S> c = cross(vs[i], vs[j]);
    for (int col = 0; col < n; ++col) {
      if (col == i || col == j) continue;  // structural zero
      const S d = dot(c, vs[col]);
      m.at(r, col) = d * d;
    }
  }
  return m;
}

}  // namespace

LabeledMatrix<Rat> build_an(const MomentCurve& curve) {
  validate_moment(curve);
  const auto vs = curve_vectors(curve);
  if (!check_general_position(std::span<const Vec3<Rat>>(vs)))
    throw std::domain_error("curve points are not in general position");
  auto m = build_from_vectors(vs);
  for (int r = 0; r < m.row_count(); ++r) {
    const auto [i, j] = m.rows[r];
    for (int col = 0; col < m.n; ++col)
      if (col != i && col != j && m.at(r, col) == 0)
        throw std::logic_error("unexpected zero entry off the structural zeros");
  }
  return m;
}

LabeledMatrix<double> build_an(const TrigCurve& curve, double margin) {
  validate_trig(curve);
  const auto vs = curve_vectors(curve);
  if (!check_general_position(std::span<const Vec3<double>>(vs), margin)) {
    std::ostringstream os;
    os << "curve points fail the general-position margin " << margin;
    throw std::domain_error(os.str());
  }
  return build_from_vectors(vs);
}

Rat generalized_slack_entry(int i1, int i2, int j, const MomentCurve& curve) {
  const auto vs = curve_vectors(curve);
  return slack_entry(cross(vs.at(i1), vs.at(i2)), vs.at(j));
}

double generalized_slack_entry(int i1, int i2, int j, const TrigCurve& curve) {
  const auto vs = curve_vectors(curve);
  return slack_entry(cross(vs.at(i1), vs.at(i2)), vs.at(j));
}

bool slice_c_membership(const Sym3<Rat>& X) {
  return X.x11 == X.x22 + X.x33 && is_psd(X);
}

bool slice_c_membership(const Sym3<double>& X, double eps) {
  const double s = std::max({1.0, std::abs(X.x11), std::abs(X.x22), std::abs(X.x33)});
  return std::abs(X.x11 - X.x22 - X.x33) <= eps * s && is_psd(X, eps);
}

}  // namespace soccover
