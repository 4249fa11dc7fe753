#include "soccover/lifts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace soccover {

bool is_psd(const Sym3<Rat>& m) {
  if (m.x11 < 0 || m.x22 < 0 || m.x33 < 0) return false;
  if (m.x11 * m.x22 - m.x12 * m.x12 < 0) return false;
  if (m.x11 * m.x33 - m.x13 * m.x13 < 0) return false;
  if (m.x22 * m.x33 - m.x23 * m.x23 < 0) return false;
  return m.det() >= 0;
}

bool is_psd(const Sym3<double>& m, double eps) {
  const double s = std::max({1.0, std::abs(m.x11), std::abs(m.x12), std::abs(m.x13),
                             std::abs(m.x22), std::abs(m.x23), std::abs(m.x33)});
  const double e1 = m.x11 + m.x22 + m.x33;
  const double e2 = (m.x11 * m.x22 - m.x12 * m.x12) + (m.x11 * m.x33 - m.x13 * m.x13) +
                    (m.x22 * m.x33 - m.x23 * m.x23);
  const double e3 = m.det();
  return e1 >= -eps * s && e2 >= -eps * s * s && e3 >= -eps * s * s * s;
}

Sym3<Rat> congruence_to_arrow(const Sym3<Rat>& X) {
  if (X.x11 != X.x22)
    throw std::invalid_argument("congruence_to_arrow: X11 != X22");
  const Rat t = X.x11, a = X.x12, b = X.x13, c = X.x23, s = X.x33;
  return Sym3<Rat>{t + a, Rat(0), b + c, t - a, b - c, 2 * s};
}

Sym3<double> congruence_to_arrow(const Sym3<double>& X, double eps) {
  const double scale = std::max({1.0, std::abs(X.x11), std::abs(X.x22)});
  if (std::abs(X.x11 - X.x22) > eps * scale)
    throw std::invalid_argument("congruence_to_arrow: X11 != X22");
  const double t = X.x11, a = X.x12, b = X.x13, c = X.x23, s = X.x33;
  return Sym3<double>{t + a, 0.0, b + c, t - a, b - c, 2 * s};
}

std::optional<SliceWitness<Rat>> arrow_decompose(const Rat& p, const Rat& q, const Rat& x,
                                                 const Rat& y, const Rat& r) {
  if (!is_psd(Sym3<Rat>{p, Rat(0), x, q, y, r})) return std::nullopt;
  // p = 0 forces x = 0 on a psd arrow, so the pivot is safe.
  const Rat u = p > 0 ? Rat(x * x / p) : Rat(0);
  return SliceWitness<Rat>{u, r - u};
}

std::optional<SliceWitness<double>> arrow_decompose(double p, double q, double x, double y,
                                                    double r, double eps) {
  if (!is_psd(Sym3<double>{p, 0.0, x, q, y, r}, eps)) return std::nullopt;
  const double s = std::max({1.0, std::abs(p), std::abs(q), std::abs(x), std::abs(y),
                             std::abs(r)});
  const double u = p > eps * s ? x * x / p : 0.0;
  return SliceWitness<double>{u, r - u};
}

std::optional<SliceWitness<Rat>> slice_decompose(const Rat& t, const Rat& a, const Rat& b,
                                                 const Rat& c, const Rat& s) {
  const Sym3<Rat> arrow = congruence_to_arrow(Sym3<Rat>::slice(t, a, b, c, s));
  return arrow_decompose(arrow.x11, arrow.x22, arrow.x13, arrow.x23, arrow.x33);
}

std::optional<SliceWitness<double>> slice_decompose(double t, double a, double b, double c,
                                                    double s, double eps) {
  const Sym3<double> arrow = congruence_to_arrow(Sym3<double>::slice(t, a, b, c, s), eps);
  return arrow_decompose(arrow.x11, arrow.x22, arrow.x13, arrow.x23, arrow.x33, eps);
}

SocLiftDescription build_slice_lift() {
  SocLiftDescription lift;
  lift.k = 2;
  lift.lifted_names = {"x1_1", "x2_1", "t_1", "x1_2", "x2_2", "t_2"};
  lift.ambient_names = {"t", "a", "b", "c", "s"};
  const auto R = [](long long v) { return Rat(v); };
  // Block one encodes [[t+a, b+c],[b+c, u]], block two [[t-a, b-c],[b-c, v]],
  // coupled by u + v = 2s; u and v live implicitly as t_i + x1_i.
  lift.constraints = {
      {{R(-1), R(0), R(1), R(0), R(0), R(0)}, {R(-1), R(-1), R(0), R(0), R(0)}},
      {{R(0), R(1), R(0), R(0), R(0), R(0)}, {R(0), R(0), R(-1), R(-1), R(0)}},
      {{R(0), R(0), R(0), R(-1), R(0), R(1)}, {R(-1), R(1), R(0), R(0), R(0)}},
      {{R(0), R(0), R(0), R(0), R(1), R(0)}, {R(0), R(0), R(-1), R(1), R(0)}},
      {{R(1), R(0), R(1), R(1), R(0), R(1)}, {R(0), R(0), R(0), R(0), R(-2)}},
  };
  const Rat h(1, 2);
  lift.projection = {
      {-h, R(0), h, -h, R(0), h},   // t
      {-h, R(0), h, h, R(0), -h},   // a
      {R(0), h, R(0), R(0), h, R(0)},  // b
      {R(0), h, R(0), R(0), -h, R(0)}, // c
      {h, R(0), h, h, R(0), h},     // s
  };
  return lift;
}

int lift_ambient_dim(const SocLiftDescription& lift) {
  return static_cast<int>(lift.ambient_names.size());
}

std::vector<Rat> lift_point_from_witness(const Rat& t, const Rat& a, const Rat& b, const Rat& c,
                                         const Rat& s, const SliceWitness<Rat>& w) {
  (void)s;
  return {(w.u - (t + a)) / 2, b + c, (w.u + (t + a)) / 2,
          (w.v - (t - a)) / 2, b - c, (w.v + (t - a)) / 2};
}

std::vector<double> lift_point_from_witness(double t, double a, double b, double c, double s,
                                            const SliceWitness<double>& w) {
  (void)s;
  return {(w.u - (t + a)) / 2, b + c, (w.u + (t + a)) / 2,
          (w.v - (t - a)) / 2, b - c, (w.v + (t - a)) / 2};
}

namespace {

template <class S>
std::vector<S> project_impl(const SocLiftDescription& lift, const std::vector<S>& z) {
  std::vector<S> w(lift.projection.size(), S{});
  for (size_t r = 0; r < lift.projection.size(); ++r)
    for (size_t c = 0; c < z.size(); ++c)
      w[r] += static_cast<S>(lift.projection[r][c]) * z[c];
  return w;
}

}  // namespace

std::vector<Rat> lift_project(const SocLiftDescription& lift, const std::vector<Rat>& z) {
  if (static_cast<int>(z.size()) != 3 * lift.k)
    throw std::invalid_argument("lifted point has wrong dimension");
  return project_impl(lift, z);
}

std::vector<double> lift_project(const SocLiftDescription& lift, const std::vector<double>& z) {
  if (static_cast<int>(z.size()) != 3 * lift.k)
    throw std::invalid_argument("lifted point has wrong dimension");
  return project_impl(lift, z);
}

bool lift_accepts(const SocLiftDescription& lift, const std::vector<Rat>& z,
                  const std::vector<Rat>& w) {
  if (static_cast<int>(z.size()) != 3 * lift.k ||
      w.size() != lift.ambient_names.size())
    throw std::invalid_argument("lift_accepts: dimension mismatch");
  for (const LinearConstraint& con : lift.constraints) {
    Rat sum = 0;
    for (size_t i = 0; i < z.size(); ++i) sum += con.lifted[i] * z[i];
    for (size_t i = 0; i < w.size(); ++i) sum += con.ambient[i] * w[i];
    if (sum != 0) return false;
  }
  for (int copy = 0; copy < lift.k; ++copy) {
    const ConePoint<Rat> p{z[3 * copy], z[3 * copy + 1], z[3 * copy + 2]};
    if (classify(p) == Membership::Outside) return false;
  }
  return true;
}

bool lift_accepts(const SocLiftDescription& lift, const std::vector<double>& z,
                  const std::vector<double>& w, double eps) {
  if (static_cast<int>(z.size()) != 3 * lift.k ||
      w.size() != lift.ambient_names.size())
    throw std::invalid_argument("lift_accepts: dimension mismatch");
  double scale = 1.0;
  for (double v : z) scale = std::max(scale, std::abs(v));
  for (double v : w) scale = std::max(scale, std::abs(v));
  for (const LinearConstraint& con : lift.constraints) {
    double sum = 0;
    for (size_t i = 0; i < z.size(); ++i) sum += static_cast<double>(con.lifted[i]) * z[i];
    for (size_t i = 0; i < w.size(); ++i) sum += static_cast<double>(con.ambient[i]) * w[i];
    if (std::abs(sum) > eps * scale) return false;
  }
  for (int copy = 0; copy < lift.k; ++copy) {
    const ConePoint<double> p{z[3 * copy], z[3 * copy + 1], z[3 * copy + 2]};
    if (classify(p, eps) == Membership::Outside) return false;
  }
  return true;
}

namespace {

// Affine solution set of the coupling constraints at a fixed ambient point:
// z = base + span * lambda, at most one free parameter supported.
struct ConstraintSolution {
  std::vector<Rat> base;
  std::vector<Rat> dir;  // empty when the solution is unique
};

ConstraintSolution solve_constraints(const SocLiftDescription& lift,
                                     const std::vector<Rat>& ambient) {
  const int vars = 3 * lift.k;
  const int eqs = static_cast<int>(lift.constraints.size());
  // Rows: [coeffs | rhs], rhs = -sum ambient coefficients * ambient values.
  std::vector<std::vector<Rat>> m(eqs, std::vector<Rat>(vars + 1, Rat(0)));
  for (int r = 0; r < eqs; ++r) {
    for (int c = 0; c < vars; ++c) m[r][c] = lift.constraints[r].lifted[c];
    Rat rhs = 0;
    for (size_t i = 0; i < ambient.size(); ++i)
      rhs -= lift.constraints[r].ambient[i] * ambient[i];
    m[r][vars] = rhs;
  }
  std::vector<int> pivot_col(eqs, -1);
  int rank = 0;
  for (int col = 0; col < vars && rank < eqs; ++col) {
    int pr = -1;
    for (int r = rank; r < eqs; ++r)
      if (m[r][col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[rank], m[pr]);
    const Rat inv = m[rank][col];
    for (int c = col; c <= vars; ++c) m[rank][c] /= inv;
    for (int r = 0; r < eqs; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rat f = m[r][col];
      for (int c = col; c <= vars; ++c) m[r][c] -= f * m[rank][c];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (int r = rank; r < eqs; ++r)
    if (m[r][vars] != 0)
      throw std::domain_error("lift constraints are infeasible at this ambient point");

  std::vector<char> is_pivot(vars, 0);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < vars; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  if (free_cols.size() > 1)
    throw std::invalid_argument("lift description has more than one degree of freedom");

  ConstraintSolution sol;
  sol.base.assign(vars, Rat(0));
  for (int r = 0; r < rank; ++r) sol.base[pivot_col[r]] = m[r][vars];
  if (!free_cols.empty()) {
    const int f = free_cols[0];
    sol.dir.assign(vars, Rat(0));
    sol.dir[f] = 1;
    for (int r = 0; r < rank; ++r) sol.dir[pivot_col[r]] = -m[r][f];
  }
  return sol;
}

struct RatInterval {
  bool empty = false;
  bool has_lo = false, has_hi = false;
  Rat lo, hi;

  void clamp_lo(const Rat& v) {
    if (!has_lo || v > lo) {
      lo = v;
      has_lo = true;
    }
    check();
  }
  void clamp_hi(const Rat& v) {
    if (!has_hi || v < hi) {
      hi = v;
      has_hi = true;
    }
    check();
  }
  void check() {
    if (has_lo && has_hi && lo > hi) empty = true;
  }
};

// Adds the constraint c0 + c1 * lambda >= 0.
void add_linear(RatInterval& iv, const Rat& c0, const Rat& c1) {
  if (c1 == 0) {
    if (c0 < 0) iv.empty = true;
    return;
  }
  const Rat bound = -c0 / c1;
  if (c1 > 0)
    iv.clamp_lo(bound);
  else
    iv.clamp_hi(bound);
}

}  // namespace

std::optional<std::vector<Rat>> lift_feasible_point(const SocLiftDescription& lift,
                                                    const std::vector<Rat>& ambient) {
  if (ambient.size() != lift.ambient_names.size())
    throw std::invalid_argument("ambient point has wrong dimension");
  ConstraintSolution sol = solve_constraints(lift, ambient);

  if (sol.dir.empty()) {
    for (int copy = 0; copy < lift.k; ++copy) {
      const ConePoint<Rat> p{sol.base[3 * copy], sol.base[3 * copy + 1], sol.base[3 * copy + 2]};
      if (classify(p) == Membership::Outside) return std::nullopt;
    }
    return sol.base;
  }

  // Each cone condition, phrased on the 2x2 psd image, must be linear in the
  // free parameter for exact interval intersection.
  RatInterval iv;
  for (int copy = 0; copy < lift.k && !iv.empty; ++copy) {
    const auto coord = [&](int off, bool dir) {
      return dir ? sol.dir[3 * copy + off] : sol.base[3 * copy + off];
    };
    // m11 = t - x1, m22 = t + x1, m12 = x2, each affine in lambda.
    const Rat m11_0 = coord(2, false) - coord(0, false), m11_1 = coord(2, true) - coord(0, true);
    const Rat m22_0 = coord(2, false) + coord(0, false), m22_1 = coord(2, true) + coord(0, true);
    const Rat m12_0 = coord(1, false), m12_1 = coord(1, true);
    add_linear(iv, m11_0, m11_1);
    add_linear(iv, m22_0, m22_1);
    const Rat det_quad = m11_1 * m22_1 - m12_1 * m12_1;
    if (det_quad != 0)
      throw std::invalid_argument(
          "lift description has a quadratic cone condition in its free parameter");
    const Rat det_lin = m11_0 * m22_1 + m11_1 * m22_0 - 2 * m12_0 * m12_1;
    const Rat det_const = m11_0 * m22_0 - m12_0 * m12_0;
    add_linear(iv, det_const, det_lin);
  }
  if (iv.empty) return std::nullopt;
  Rat lambda;
  if (iv.has_lo)
    lambda = iv.lo;
  else if (iv.has_hi)
    lambda = iv.hi;
  else
    lambda = 0;
  std::vector<Rat> z = sol.base;
  for (size_t i = 0; i < z.size(); ++i) z[i] += lambda * sol.dir[i];
  for (int copy = 0; copy < lift.k; ++copy) {
    const ConePoint<Rat> p{z[3 * copy], z[3 * copy + 1], z[3 * copy + 2]};
    if (classify(p) == Membership::Outside)
      throw std::logic_error("interval endpoint fails cone membership");
  }
  return z;
}

namespace {

struct SliceSampler {
  Rng rng;

  explicit SliceSampler(std::uint64_t seed) : rng(seed) {}

  // Gram matrix G * G^T with the first two row norms equalized, which pins
  // X11 = X22 while staying psd; rank comes from the number of columns.
  Sym3<double> psd_sample() {
    const int rank = 1 + static_cast<int>(rng.uniform_int(0, 2));
    while (true) {
      double g[3][3] = {};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < rank; ++j) g[i][j] = rng.uniform(-1.0, 1.0);
      const double n1 = std::hypot(g[0][0], g[0][1], g[0][2]);
      const double n2 = std::hypot(g[1][0], g[1][1], g[1][2]);
      if (n1 < 1e-3 || n2 < 1e-3) continue;
      for (int j = 0; j < 3; ++j) g[1][j] *= n1 / n2;
      Sym3<double> X;
      X.x11 = g[0][0] * g[0][0] + g[0][1] * g[0][1] + g[0][2] * g[0][2];
      X.x12 = g[0][0] * g[1][0] + g[0][1] * g[1][1] + g[0][2] * g[1][2];
      X.x13 = g[0][0] * g[2][0] + g[0][1] * g[2][1] + g[0][2] * g[2][2];
      X.x22 = g[1][0] * g[1][0] + g[1][1] * g[1][1] + g[1][2] * g[1][2];
      X.x23 = g[1][0] * g[2][0] + g[1][1] * g[2][1] + g[1][2] * g[2][2];
      X.x33 = g[2][0] * g[2][0] + g[2][1] * g[2][1] + g[2][2] * g[2][2];
      X.x22 = X.x11;  // equal up to rounding; make the slice membership exact
      return X;
    }
  }

  // Shifting the spectrum below the mean eigenvalue leaves the slice
  // invariant and guarantees a negative eigenvalue.
  Sym3<double> non_psd_sample() {
    Sym3<double> X = psd_sample();
    const double mean = (X.x11 + X.x22 + X.x33) / 3.0;
    const double mu = mean * (1.0 + rng.uniform(0.05, 1.0)) + 1e-6;
    X.x11 -= mu;
    X.x22 -= mu;
    X.x33 -= mu;
    return X;
  }
};

}  // namespace

LiftSampleReport sample_verify_lift(const SocLiftDescription& lift, long long trials,
                                    std::uint64_t seed, double eps) {
  if (trials < 1) throw std::invalid_argument("sample_verify_lift needs trials >= 1");
  SliceSampler sampler(seed);
  LiftSampleReport report;
  report.trials = trials;
  for (long long i = 0; i < trials; ++i) {
    const bool want_psd = i % 2 == 0;
    const Sym3<double> X = want_psd ? sampler.psd_sample() : sampler.non_psd_sample();
    const double t = X.x11, a = X.x12, b = X.x13, c = X.x23, s = X.x33;
    const bool direct = is_psd(X, eps);

    bool via_lift = false;
    const auto witness = slice_decompose(t, a, b, c, s, eps);
    if (witness) {
      const std::vector<double> z = lift_point_from_witness(t, a, b, c, s, *witness);
      via_lift = lift_accepts(lift, z, {t, a, b, c, s}, eps);
    }

    if (direct) ++report.psd_accepted;
    if (!direct && !via_lift) ++report.both_rejected;
    if (direct != via_lift) {
      ++report.disagreements;
      if (report.first_disagreement.empty()) {
        std::ostringstream os;
        os << "trial " << i << ": psd test says " << (direct ? "accept" : "reject")
           << ", lift route says " << (via_lift ? "accept" : "reject") << " at (t,a,b,c,s)=("
           << t << "," << a << "," << b << "," << c << "," << s << ")";
        report.first_disagreement = os.str();
      }
    }
  }
  return report;
}

}  // namespace soccover
