#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soccover/rng.hpp"
#include "soccover/soc_core.hpp"
#include "soccover/sym3.hpp"

namespace soccover {

template <class S>
struct SliceWitness {
  S u{}, v{};
};

// For X with equal first two diagonal entries, the congruence image
// [[t+a, 0, b+c], [0, t-a, b-c], [b+c, b-c, 2s]]; positive semidefinite iff
// X is. Throws std::invalid_argument when X11 != X22 (beyond eps in the
// floating overload).
Sym3<Rat> congruence_to_arrow(const Sym3<Rat>& X);
Sym3<double> congruence_to_arrow(const Sym3<double>& X, double eps = kDefaultEps);

// For the arrow matrix [[p,0,x],[0,q,y],[x,y,r]]: if psd, the split
// u = x^2/p (0 when p = 0), v = r - u, which makes [[p,x],[x,u]] and
// [[q,y],[y,v]] both psd. Returns nullopt when the arrow matrix is not psd.
std::optional<SliceWitness<Rat>> arrow_decompose(const Rat& p, const Rat& q, const Rat& x,
                                                 const Rat& y, const Rat& r);
std::optional<SliceWitness<double>> arrow_decompose(double p, double q, double x, double y,
                                                    double r, double eps = kDefaultEps);

// Witness (u, v) with u + v = 2s and [[t+a, b+c],[b+c, u]],
// [[t-a, b-c],[b-c, v]] psd; exists iff [[t,a,b],[a,t,c],[b,c,s]] is psd.
std::optional<SliceWitness<Rat>> slice_decompose(const Rat& t, const Rat& a, const Rat& b,
                                                 const Rat& c, const Rat& s);
std::optional<SliceWitness<double>> slice_decompose(double t, double a, double b, double c,
                                                    double s, double eps = kDefaultEps);

// Homogeneous linear constraint over (lifted, ambient) coordinates:
// sum lifted[i]*z[i] + sum ambient[j]*w[j] = 0.
struct LinearConstraint {
  std::vector<Rat> lifted;
  std::vector<Rat> ambient;
};

// Explicit conic lift: k product-cone copies over 3k lifted coordinates,
// linear coupling constraints, and a linear projection onto the ambient
// coordinates.
struct SocLiftDescription {
  int k = 0;
  std::vector<std::string> lifted_names;
  std::vector<std::string> ambient_names;
  std::vector<LinearConstraint> constraints;
  std::vector<std::vector<Rat>> projection;  // ambient_dim x 3k
};

// The k = 2 description of the equal-diagonal slice: each 2x2 block of the
// witness pair becomes one cone copy, coupled by u + v = 2s.
SocLiftDescription build_slice_lift();

int lift_ambient_dim(const SocLiftDescription& lift);

// Lifted coordinates realizing the witness (u, v) of an ambient point.
std::vector<Rat> lift_point_from_witness(const Rat& t, const Rat& a, const Rat& b, const Rat& c,
                                         const Rat& s, const SliceWitness<Rat>& w);
std::vector<double> lift_point_from_witness(double t, double a, double b, double c, double s,
                                            const SliceWitness<double>& w);

std::vector<Rat> lift_project(const SocLiftDescription& lift, const std::vector<Rat>& z);
std::vector<double> lift_project(const SocLiftDescription& lift, const std::vector<double>& z);

// Checks cone membership of every lifted triple and all coupling constraints
// at (z, w).
bool lift_accepts(const SocLiftDescription& lift, const std::vector<Rat>& z,
                  const std::vector<Rat>& w);
bool lift_accepts(const SocLiftDescription& lift, const std::vector<double>& z,
                  const std::vector<double>& w, double eps = kDefaultEps);

// Exact feasibility of an ambient point, decided from the description alone:
// the coupling constraints are solved by elimination and the remaining
// degrees of freedom (at most one, with cone conditions linear in it) are
// intersected exactly. Returns a feasible lifted point or nullopt.
std::optional<std::vector<Rat>> lift_feasible_point(const SocLiftDescription& lift,
                                                    const std::vector<Rat>& ambient);

struct LiftSampleReport {
  long long trials = 0;
  long long psd_accepted = 0;
  long long both_rejected = 0;
  long long disagreements = 0;
  std::string first_disagreement;
};

// Seeded sampling over the slice: psd points from Gram constructions of
// mixed ranks, non-psd points from spectral shifts of those. For every
// sample the lift route (decompose, build the lifted point, evaluate the
// description) must agree with the direct psd test.
LiftSampleReport sample_verify_lift(const SocLiftDescription& lift, long long trials,
                                    std::uint64_t seed, double eps = kDefaultEps);

}  // namespace soccover
