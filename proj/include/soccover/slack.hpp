#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "soccover/rational.hpp"
#include "soccover/sym3.hpp"

namespace soccover {

template <class S>
struct Vec3 {
  S x{}, y{}, z{};

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

template <class S>
Vec3<S> cross(const Vec3<S>& u, const Vec3<S>& v) {
  return Vec3<S>{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

template <class S>
S dot(const Vec3<S>& u, const Vec3<S>& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}

// Determinant of the matrix with rows u, v, w; equals <cross(u,v), w>.
template <class S>
S det3(const Vec3<S>& u, const Vec3<S>& v, const Vec3<S>& w) {
  return dot(cross(u, v), w);
}

// Squared inner product (x^T y)^2; an entry of the pairing matrix between
// rank-one directions x x^T and y y^T.
template <class S>
S slack_entry(const Vec3<S>& x, const Vec3<S>& y) {
  S d = dot(x, y);
  return d * d;
}

Vec3<Rat> moment_vector(long long i);  // (1, i, i^2)

// (1, cos th, sin th); throws std::invalid_argument outside [0, 2*pi).
Vec3<double> trig_vector(double theta);

struct MomentCurve {
  std::vector<long long> indices;  // distinct integers, one per column

  static MomentCurve basic(int n);  // indices 1..n
  int size() const { return static_cast<int>(indices.size()); }
};

struct TrigCurve {
  std::vector<double> thetas;  // strictly increasing in [0, 2*pi)

  int size() const { return static_cast<int>(thetas.size()); }
};

using GeneratorCurve = std::variant<MomentCurve, TrigCurve>;

std::vector<Vec3<Rat>> curve_vectors(const MomentCurve& c);
std::vector<Vec3<double>> curve_vectors(const TrigCurve& c);

// True iff every triple of distinct listed vectors has nonzero determinant
// (exact), resp. determinant magnitude above `margin` (floating).
bool check_general_position(std::span<const Vec3<Rat>> vs);
bool check_general_position(std::span<const Vec3<double>> vs, double margin = kDefaultMargin);

// Nonnegative matrix with rows indexed by 2-subsets of the column set in
// lexicographic order. Entries at (e, j) with j in e are structural zeros.
template <class S>
struct LabeledMatrix {
  int n = 0;
  std::vector<std::pair<int, int>> rows;  // 0-based column position pairs, i < j
  std::vector<S> entries;                 // row-major, rows.size() * n

  const S& at(int row, int col) const { return entries[static_cast<size_t>(row) * n + col]; }
  S& at(int row, int col) { return entries[static_cast<size_t>(row) * n + col]; }
  int row_count() const { return static_cast<int>(rows.size()); }
};

// Pair-row indexing helpers shared by matrices and support patterns.
int pair_count(int n);
int pair_index(int n, int i, int j);           // 0-based i < j
std::pair<int, int> pair_at(int n, int idx);   // inverse of pair_index

// ((v_{i1} x v_{i2})^T v_j)^2 over all row pairs and columns. Validates
// general position first. Structural zeros are written exactly.
LabeledMatrix<Rat> build_an(const MomentCurve& curve);
LabeledMatrix<double> build_an(const TrigCurve& curve, double margin = kDefaultMargin);

// Single pairing entry between the row generator of {i1,i2} and column j.
// Positions are 0-based here; equals slack_entry(cross(v_i1, v_i2), v_j).
Rat generalized_slack_entry(int i1, int i2, int j, const MomentCurve& curve);
double generalized_slack_entry(int i1, int i2, int j, const TrigCurve& curve);

// Membership in {X psd, X11 = X22 + X33}.
bool slice_c_membership(const Sym3<Rat>& X);
bool slice_c_membership(const Sym3<double>& X, double eps = kDefaultEps);

}  // namespace soccover
