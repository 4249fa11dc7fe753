#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soccover/soc_core.hpp"
#include "soccover/support.hpp"

namespace soccover {

// Element of the k-fold product cone: one point per copy.
struct ConeTuple {
  std::vector<ConePoint<Rat>> parts;

  int k() const { return static_cast<int>(parts.size()); }
};

// Rank-one factor over the pair-row/column index scheme: row vectors a_e and
// column vectors b_j in the cone; the induced matrix is <a_e, b_j>.
struct Rank1Factor {
  int n = 0;
  std::vector<ConePoint<Rat>> a;  // size pair_count(n)
  std::vector<ConePoint<Rat>> b;  // size n

  SupportPattern induced_support() const;

  // Returns a description of the first broken invariant (a point outside the
  // cone or a nonzero entry at a structural zero), or nullopt.
  std::optional<std::string> validate() const;
};

// Columns declared zero plus the grouping of live columns into collinearity
// classes; determines a candidate part support and its canonical factor.
struct PartOrigin {
  std::vector<int> zero_cols;               // sorted, 0-based
  std::vector<std::vector<int>> partition;  // of the live columns, each sorted
};

enum class CertKind { Exact, Upper, LowerRecursion };

const char* to_string(CertKind k);

struct CoverPart {
  SupportPattern supp;
  std::optional<PartOrigin> origin;
  std::optional<Rank1Factor> factor;
};

// Either a materialized pattern or a symbolic reference to the standard
// pairing-family support of order n (true iff j not in e), which recursion
// certificates use for orders too large to materialize.
struct TargetRef {
  std::optional<SupportPattern> pattern;
  BigInt family_n = 0;   // meaningful when !pattern
  std::string digest;    // recorded digest of a materialized target, if any

  bool symbolic() const { return !pattern.has_value(); }
  static TargetRef materialized(SupportPattern p);
  static TargetRef family(BigInt n);
};

struct RecursionStep {
  BigInt n0;
  BigInt n;  // = 3 * n0^2
  int bound; // certified lower bound for cover number at order n
};

struct CoverCertificate {
  CertKind kind = CertKind::Upper;
  TargetRef target;
  int value = 0;
  std::vector<CoverPart> parts;  // empty for recursion certificates

  // Recursion-chain fields.
  int base_n0 = 0;
  int base_value = 0;
  std::string base_method;
  std::vector<RecursionStep> chain;

  std::string note;
};

enum class Realizability { NecessaryOnly, Constructive };

struct CandidatePart {
  SupportPattern supp;
  PartOrigin origin;
  std::optional<Rank1Factor> factor;
};

struct CoverSearchResult {
  int value = 0;
  CoverCertificate cert;
};

inline constexpr int kDefaultCoverLimit = 6;

// True iff S[i,j] equals the summed componentwise inner products of the row
// and column tuples, exactly, and every tuple component lies in the cone.
// Throws std::invalid_argument on mismatched dimensions or ragged k.
bool verify_factorization(const std::vector<std::vector<Rat>>& S,
                          const std::vector<ConeTuple>& row_tuples,
                          const std::vector<ConeTuple>& col_tuples,
                          std::string* why = nullptr);
bool verify_factorization(const LabeledMatrix<Rat>& S, const std::vector<ConeTuple>& row_tuples,
                          const std::vector<ConeTuple>& col_tuples,
                          std::string* why = nullptr);

struct VerifyReport {
  bool ok = true;
  std::string first_violation;
};

// Re-checks every certificate invariant: parts inside the target, union
// equal to the target, consistency of each part, factors reproducing their
// part supports exactly, exhaustive re-search for exact kinds, and chain
// arithmetic plus base re-computation for recursion kinds.
VerifyReport verify_cover(const CoverCertificate& cert, int size_limit = kDefaultCoverLimit);

// All inclusion-maximal consistent part supports inside the target (the
// candidate universe of the exact search), in the canonical deterministic
// order. Constructive mode drops rows a canonical factor cannot reproduce
// and attaches verified factors.
std::vector<CandidatePart> enumerate_candidate_parts(const SupportPattern& target,
                                                     Realizability mode);

// Minimum cover size by branch-and-bound over the candidate universe.
// NecessaryOnly gives a lower bound on the cover number; Constructive gives
// an upper bound; when they agree the value is exact. Throws
// std::invalid_argument when target.n() exceeds size_limit.
CoverSearchResult cover_number_exact(const SupportPattern& target, Realizability mode,
                                     int size_limit = kDefaultCoverLimit);

// One factor per nonzero column, then greedy merging of parts whose union
// stays consistent and exactly realizable; every part carries a verified
// factor. Works at any order.
CoverSearchResult cover_number_upper(const SupportPattern& target);

// Chain certificate: starting from the exhaustively computed base value at
// order base_n0, each step records that the cover number at order 3*n0^2
// exceeds the one at order n0. Throws on base_n0 < 2, steps < 1, or a base
// beyond size_limit.
CoverCertificate lower_bound_chain(int base_n0, int steps, int size_limit = kDefaultCoverLimit);

// Canonical factor for a part origin inside a full-family target; used by
// the constructive search and the greedy cover. Returns nullopt when the
// support is not exactly realizable row by row.
std::optional<Rank1Factor> realize_part(const SupportPattern& part_supp, const PartOrigin& origin);

}  // namespace soccover
