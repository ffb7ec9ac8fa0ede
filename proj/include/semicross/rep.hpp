#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "semicross/algebra.hpp"

namespace semicross {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationSpec {
  std::int64_t window = 8;  // chain indices -window..window
  int depth = 8;            // Fourier modes 0..depth
};

// pi(U^n f)(delta_x (x) e_k) = f(phi^k(x)) delta_x (x) e_{k+n}: block diagonal
// over the truncated point set, one (depth+1)^2 block per point.
struct RepMatrix {
  TruncationSpec spec;
  std::vector<Point> points;                              // canonical order
  std::vector<std::vector<std::complex<double>>> blocks;  // row-major (r,c) -> r*dim+c
  int dim() const { return spec.depth + 1; }
};

RepMatrix build_truncated_rep(const DynamicalSystem& sys, const AlgebraElement& a,
                              const TruncationSpec& spec);

// Largest singular value by power iteration on M*M per block (all-ones start,
// cap 1e5 iterations), floored by the largest entry magnitude which is an
// exact lower bound for sigma_max.
double op_norm_estimate(const RepMatrix& m, double tol);

struct NormSandwich {
  double lower;     // max_n ||E_n(A)||, valid since the Fourier maps contract
  double estimate;  // truncated operator norm
  double upper;     // ||A||_1
};

NormSandwich norm_sandwich(const DynamicalSystem& sys, const AlgebraElement& a,
                           const TruncationSpec& spec, double tol);

// Coordinate-list text dump: "row col re im" per line.
void dump_coo(const RepMatrix& m, std::ostream& os);

}  // namespace semicross
