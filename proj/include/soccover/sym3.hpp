#pragma once

#include <algorithm>
#include <cmath>

#include "soccover/rational.hpp"

namespace soccover {

// 3x3 symmetric matrix. The slice constructor maps (t,a,b,c,s) onto
// [[t,a,b],[a,t,c],[b,c,s]], the form with equal first two diagonal entries.
template <class S>
struct Sym3 {
  S x11{}, x12{}, x13{}, x22{}, x23{}, x33{};

  static Sym3 slice(const S& t, const S& a, const S& b, const S& c, const S& s) {
    return Sym3{t, a, b, t, c, s};
  }

  S det() const {
    return x11 * (x22 * x33 - x23 * x23) - x12 * (x12 * x33 - x23 * x13) +
           x13 * (x12 * x23 - x22 * x13);
  }

  friend bool operator==(const Sym3&, const Sym3&) = default;
};

// Exact decision via nonnegativity of all seven principal minors. Leading
// minors alone are not sound for singular matrices.
bool is_psd(const Sym3<Rat>& m);

// Tolerant decision via the characteristic-polynomial coefficient signs
// (trace, sum of 2x2 principal minors, determinant), scaled thresholds.
bool is_psd(const Sym3<double>& m, double eps = kDefaultEps);

}  // namespace soccover
