#include "semicross/rep.hpp"

#include <cmath>
#include <ostream>

namespace semicross {

namespace {

std::complex<double> to_complex(const Scalar& z) {
  return {rational_to_double(z.re), rational_to_double(z.im)};
}

std::vector<Point> truncated_points(const DynamicalSystem& sys, const TruncationSpec& spec) {
  std::vector<Point> pts;
  for (std::size_t c = 0; c < sys.cycles().size(); ++c)
    for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i)
      pts.push_back(Point::cycle((int)c, i));
  for (std::size_t c = 0; c < sys.chains().size(); ++c)
    for (std::int64_t j = -spec.window; j <= spec.window; ++j)
      pts.push_back(Point::chain((int)c, j));
  for (std::size_t i = 0; i < sys.limits().size(); ++i) pts.push_back(Point::limit((int)i));
  return pts;
}

}  // namespace

RepMatrix build_truncated_rep(const DynamicalSystem& sys, const AlgebraElement& a,
                              const TruncationSpec& spec) {
  if (spec.window < 0 || spec.depth < 0) throw FuncError("truncation needs window, depth >= 0");
  RepMatrix m;
  m.spec = spec;
  m.points = truncated_points(sys, spec);
  const int dim = m.dim();
  m.blocks.assign(m.points.size(), std::vector<std::complex<double>>(dim * dim, 0.0));
  for (std::size_t b = 0; b < m.points.size(); ++b) {
    const Point& x = m.points[b];
    for (const auto& [n, f] : a.coefficients()) {
      if (n > spec.depth) continue;
      for (int k = 0; k + n <= spec.depth; ++k) {
        // Exact scalars leave the exact layer here and only here.
        Scalar v = f.eval(apply_power(sys, x, k));
        if (v.is_zero()) continue;
        m.blocks[b][(std::size_t)(k + n) * dim + k] = to_complex(v);
      }
    }
  }
  return m;
}

namespace {

// sigma_max of one block via power iteration on M*M. Blocks are thin bands
// (one diagonal per stored degree), so the iteration walks an explicit
// nonzero list in a fixed order.
double block_sigma_max(const std::vector<std::complex<double>>& block, int dim, double tol,
                       long max_iter, bool& converged) {
  struct Entry {
    int row, col;
    std::complex<double> value;
  };
  std::vector<Entry> entries;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const std::complex<double>& e = block[(std::size_t)r * dim + c];
      if (e != std::complex<double>(0.0, 0.0)) entries.push_back({r, c, e});
    }
  converged = true;
  if (entries.empty()) return 0.0;

  std::vector<std::complex<double>> v(dim, std::complex<double>(1.0, 0.0));
  std::vector<std::complex<double>> mv(dim), mtmv(dim);
  auto norm2 = [&](const std::vector<std::complex<double>>& x) {
    double s = 0;
    for (const auto& c : x) s += std::norm(c);
    return std::sqrt(s);
  };
  double nv = norm2(v);
  for (auto& c : v) c /= nv;
  double sigma = 0.0;
  converged = false;
  for (long it = 0; it < max_iter; ++it) {
    std::fill(mv.begin(), mv.end(), std::complex<double>(0.0, 0.0));
    for (const Entry& e : entries) mv[e.row] += e.value * v[e.col];
    double next = norm2(mv);  // ||Mv|| with ||v|| = 1 is the Rayleigh estimate
    if (next == 0.0) {
      converged = true;
      return 0.0;
    }
    std::fill(mtmv.begin(), mtmv.end(), std::complex<double>(0.0, 0.0));
    for (const Entry& e : entries) mtmv[e.col] += std::conj(e.value) * mv[e.row];
    double nn = norm2(mtmv);
    if (nn == 0.0) {
      converged = true;
      return next;
    }
    for (int c = 0; c < dim; ++c) v[c] = mtmv[c] / nn;
    if (it > 0 && std::abs(next - sigma) <= tol * std::max(next, 1e-300)) {
      converged = true;
      return next;
    }
    sigma = next;
  }
  return sigma;
}

}  // namespace

double op_norm_estimate(const RepMatrix& m, double tol) {
  if (tol <= 0) throw FuncError("tolerance must be positive");
  const int dim = m.dim();
  double best = 0.0;
  double entry_floor = 0.0;
  for (const auto& block : m.blocks)
    for (const auto& e : block) entry_floor = std::max(entry_floor, std::abs(e));
  for (const auto& block : m.blocks) {
    bool converged = false;
    double sigma = block_sigma_max(block, dim, tol, 100000, converged);
    if (!converged) throw NoConvergence("power iteration hit the iteration cap");
    best = std::max(best, sigma);
  }
  return std::max(best, entry_floor);
}

NormSandwich norm_sandwich(const DynamicalSystem& sys, const AlgebraElement& a,
                           const TruncationSpec& spec, double tol) {
  NormSandwich out{0.0, 0.0, 0.0};
  NormValue lower = NormValue::zero();
  for (const auto& [n, f] : a.coefficients()) lower = norm_max(lower, f.sup_norm());
  out.lower = lower.to_double();
  out.upper = a.l1_norm().to_double();
  // The lower bound max_n ||E_n(A)|| is attained by a matrix entry only when
  // the truncation reaches every stored degree and every exceptional index;
  // widen it as needed so the sandwich holds for any requested spec.
  TruncationSpec used = spec;
  used.depth = std::max(used.depth, a.degree());
  for (const auto& [n, f] : a.coefficients())
    for (std::size_t c = 0; c < sys.chains().size(); ++c)
      for (const auto& [j, v] : f.chain_values()[c].exceptions)
        used.window = std::max(used.window, (j < 0 ? -j : j) + 1);
  out.estimate = op_norm_estimate(build_truncated_rep(sys, a, used), tol);
  return out;
}

void dump_coo(const RepMatrix& m, std::ostream& os) {
  const int dim = m.dim();
  for (std::size_t b = 0; b < m.blocks.size(); ++b) {
    const auto& block = m.blocks[b];
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const auto& e = block[(std::size_t)r * dim + c];
        if (e == std::complex<double>(0.0, 0.0)) continue;
        os << b * dim + r << " " << b * dim + c << " " << e.real() << " " << e.imag() << "\n";
      }
  }
}

}  // namespace semicross
