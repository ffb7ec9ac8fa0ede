#pragma once

#include <optional>

#include "semicross/algebra.hpp"

namespace semicross {

struct NoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotCompactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HorizonTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { Compact, NotCompact, Member, NotMember };

// The three pairwise conditions: (a) products vanish on accumulation points,
// (b) products tend to zero at isolated points, (c) pointwise equicontinuity
// of the product family.
enum class Cond { A, B, C };

enum class ChainWhere { None, MinusTail, PlusTail, Exception };

struct FailureLocus {
  Cond cond = Cond::A;
  int limit = -1;   // located limit for (a) and (c)
  int cycle = -1;   // located cycle for (b)
  std::int64_t cycle_index = 0;
  int chain = -1;   // located chain for (b)/(c)
  ChainWhere where = ChainWhere::None;
  std::int64_t index = 0;  // exception index when where == Exception, else 0
  std::int64_t l0 = 0;     // minimal iterate; see the conventions in check_pair
  bool operator==(const FailureLocus&) const = default;
};

struct PairReport {
  int m = 0, n = 0;
  bool a_pass = true, b_pass = true, c_pass = true;
  std::vector<FailureLocus> failures;  // first locus per failing condition, a/b/c order
  bool all_pass() const { return a_pass && b_pass && c_pass; }
  bool operator==(const PairReport&) const = default;
};

// Exact per-chain decision of the three conditions for the monomial pair
// (U^m f, U^n g). Loci are canonical: first failing site in declaration
// order; tail-kind chain loci carry no representative index.
PairReport check_pair(const ModelFunction& f, int m, const ModelFunction& g, int n);

struct OracleResult {
  PairReport report;
  std::int64_t stabilization_bound = 0;
};

// Independent brute-force scan of the same conditions over a finite window
// of chain indices and iterates. Requires window and horizon at or above the
// returned stabilization bound; must agree with check_pair exactly.
OracleResult oracle_check_pair(const ModelFunction& f, int m, const ModelFunction& g, int n,
                               std::int64_t window, std::int64_t horizon);
std::int64_t oracle_stabilization_bound(const ModelFunction& f, int m, const ModelFunction& g,
                                        int n);

struct VanishFailure {
  enum class Why { RecurrentPoint, NonWanderingPoint, AccumulationE0 };
  int degree = 0;
  Why why = Why::RecurrentPoint;
  Point at;
  bool operator==(const VanishFailure&) const = default;
};

struct Certificate {
  Verdict verdict = Verdict::Compact;
  std::vector<PairReport> pairs;          // ordered by (m, n)
  std::vector<VanishFailure> vanishing;   // element/ideal coefficient checks
  bool positive() const { return verdict == Verdict::Compact || verdict == Verdict::Member; }
  bool operator==(const Certificate&) const = default;
};

// M_{A,B} compact iff every coefficient pair passes all three conditions.
// Systems without accumulation points and without isolated points take
// dedicated fast paths; their verdicts match the general certifier.
Certificate certify_mult_compact(const AlgebraElement& a, const AlgebraElement& b);

// A compact as an element iff pair conditions (a), (c) hold for all pairs of
// its own coefficients and every coefficient vanishes on the recurrent set.
Certificate certify_element_compact(const AlgebraElement& a);

// Membership in the ideal generated by the compact elements: every
// coefficient vanishes off the wandering set; E_0 additionally vanishes on
// the accumulation points (subsumed here, reported separately).
Certificate ideal_membership(const AlgebraElement& a);

// Unit-ball monomials U^{l_i} chi_{p_i} realizing the non-compactness proofs
// for the minimal failing indices, pairwise separated by at least delta.
struct WitnessFamily {
  Cond generated_by = Cond::A;
  int m0 = 0, n0 = 0;
  std::int64_t l0 = 0;
  std::vector<std::int64_t> shifts;  // l_i; strictly increasing with gaps
                                     // > m0+n0+1 when the construction needs it
  std::vector<Point> points;         // indicator points
  std::vector<AlgebraElement> elements;
  NormValue delta;                   // exact separation bound, > 0
};

WitnessFamily witness_family(const AlgebraElement& a, const AlgebraElement& b,
                             const Certificate& cert, int count);

// Minimum over witness pairs of max_k ||E_k(M(T_u) - M(T_v))||, a valid
// lower bound for the operator-norm separation since the Fourier maps are
// contractive. Must come out >= the family's delta.
NormValue verify_separation(const AlgebraElement& a, const AlgebraElement& b,
                            const WitnessFamily& w);

struct Approximant {
  long k = 0;
  AlgebraElement a_k;          // U^m f_k
  AlgebraElement b_k;          // U^n (g_k restricted to the finite support)
  std::vector<Point> support;  // I_k
  std::int64_t l0 = 0;         // M_{A_k,B_k}(U^l h) = 0 for every l >= l0
  std::int64_t rank_bound = 0; // |I_k| * l0
};

// Finite-rank approximant of a certified-compact monomial pair, with
// ||A - A_k||_1 <= 2/k and sup_{||T|| <= 1} ||M_{A,B}(T) - M_{A_k,B_k}(T)||
// < 4/k for unit-ball A, B.
Approximant finite_rank_approximant(const AlgebraElement& a, const AlgebraElement& b, long k);

std::string verdict_to_string(Verdict v);
std::string cond_to_string(Cond c);

}  // namespace semicross
