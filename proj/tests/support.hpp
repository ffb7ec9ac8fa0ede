#pragma once

// Shared fixtures, random generators, and brute-force reference checks for
// the test suites. Generators draw scalars whose moduli are rational, so
// every norm in these tests stays exact.

#include <random>

#include "semicross/compactness.hpp"
#include "semicross/workspace.hpp"

namespace semicross::testing {

struct PairFixture {
  SystemPtr sys;
  ModelFunction f, g;
  AlgebraElement a, b;
};

// One chain with both ends converging to fixed points; f the indicator of
// index 0, g the step function that is 1 past it.
inline PairFixture make_paper_example() {
  auto sys = DynamicalSystem::create({}, {{"c", ChainEnd::to_limit(0), ChainEnd::to_limit(1)}},
                                     {{"p0"}, {"p2"}});
  ModelFunction f(sys);
  f.set_chain_exception(0, 0, Scalar(1));
  ModelFunction g(sys);
  g.set_limit_value(1, Scalar(1));
  g.set_chain_tails(0, Scalar(0), Scalar(1));
  g.set_chain_exception(0, 0, Scalar(0));
  return {sys, f, g, AlgebraElement::monomial(1, f), AlgebraElement::monomial(1, g)};
}

// One chain converging to p0 on the left and escaping on the right; f = g
// carry value 1 at p0 and along the minus tail.
inline PairFixture make_wa() {
  auto sys = DynamicalSystem::create({}, {{"c", ChainEnd::to_limit(0), ChainEnd::make_infinite()}},
                                     {{"p0"}});
  ModelFunction f(sys);
  f.set_limit_value(0, Scalar(1));
  f.set_chain_tails(0, Scalar(1), Scalar(0));
  return {sys, f, f, AlgebraElement::monomial(0, f), AlgebraElement::monomial(0, f)};
}

// Same system; f is 1 on the minus tail and at p0, g the indicator of index 0.
inline PairFixture make_wb() {
  auto sys = DynamicalSystem::create({}, {{"c", ChainEnd::to_limit(0), ChainEnd::make_infinite()}},
                                     {{"p0"}});
  ModelFunction f(sys);
  f.set_limit_value(0, Scalar(1));
  f.set_chain_tails(0, Scalar(1), Scalar(0));
  ModelFunction g(sys);
  g.set_chain_exception(0, 0, Scalar(1));
  return {sys, f, g, AlgebraElement::monomial(1, f), AlgebraElement::monomial(1, g)};
}

// Paper-example system with the compact indicator pair.
inline PairFixture make_cp() {
  auto sys = DynamicalSystem::create({}, {{"c", ChainEnd::to_limit(0), ChainEnd::to_limit(1)}},
                                     {{"p0"}, {"p2"}});
  ModelFunction f = ModelFunction::indicator(sys, {Point::chain(0, 0)});
  ModelFunction g = ModelFunction::indicator(sys, {Point::chain(0, 1)});
  return {sys, f, g, AlgebraElement::monomial(1, f), AlgebraElement::monomial(1, g)};
}

// Discrete system: a 2-cycle and one doubly infinite chain.
inline SystemPtr make_cyc() {
  return DynamicalSystem::create({{"cyc", 2}},
                                 {{"d", ChainEnd::make_infinite(), ChainEnd::make_infinite()}},
                                 {});
}

using Rng = std::mt19937;

inline std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Rational-modulus complex scalars: a rational magnitude times a direction
// from the unit circle with rational coordinates.
inline Scalar random_scalar(Rng& rng, bool allow_zero = true) {
  std::int64_t num = pick(rng, allow_zero ? -4 : 1, 4);
  if (allow_zero && num == 0) return Scalar();
  std::int64_t den = pick(rng, 1, 3);
  Rational mag = make_ratio(num, den);
  switch (pick(rng, 0, 3)) {
    case 0:
      return Scalar(mag);
    case 1:
      return Scalar(Rational(0), mag);
    case 2:
      return Scalar(mag * Rational(3, 5), mag * Rational(4, 5));
    default:
      return Scalar(mag * Rational(-4, 5), mag * Rational(3, 5));
  }
}

inline SystemPtr random_system(Rng& rng, int max_chains = 5, int max_cycles = 3,
                               int max_limits = 4) {
  std::vector<CycleDesc> cycles;
  int n_cycles = (int)pick(rng, 0, max_cycles);
  for (int i = 0; i < n_cycles; ++i)
    cycles.push_back({"y" + std::to_string(i), pick(rng, 1, 4)});
  int n_limits = (int)pick(rng, 0, max_limits);
  int n_chains = std::max((int)pick(rng, 1, max_chains), (n_limits + 1) / 2);
  std::vector<LimitDesc> limits;
  for (int i = 0; i < n_limits; ++i) limits.push_back({"p" + std::to_string(i)});
  std::vector<ChainDesc> chains;
  for (int i = 0; i < n_chains; ++i) {
    auto end = [&] {
      if (n_limits == 0 || pick(rng, 0, 2) == 0) return ChainEnd::make_infinite();
      return ChainEnd::to_limit((int)pick(rng, 0, n_limits - 1));
    };
    chains.push_back({"c" + std::to_string(i), end(), end()});
  }
  // Every limit must be reachable as a chain end: claim infinite ends for
  // the stragglers, appending a chain only when none is left.
  std::vector<char> used(n_limits, 0);
  for (const auto& c : chains) {
    if (!c.minus_end.infinite) used[c.minus_end.limit] = 1;
    if (!c.plus_end.infinite) used[c.plus_end.limit] = 1;
  }
  for (int l = 0; l < n_limits; ++l) {
    if (used[l]) continue;
    bool rewired = false;
    for (auto& c : chains) {
      if (c.minus_end.infinite) {
        c.minus_end = ChainEnd::to_limit(l);
        rewired = true;
        break;
      }
      if (c.plus_end.infinite) {
        c.plus_end = ChainEnd::to_limit(l);
        rewired = true;
        break;
      }
    }
    if (!rewired)
      chains.push_back(
          {"cx" + std::to_string(l), ChainEnd::to_limit(l), ChainEnd::make_infinite()});
  }
  return DynamicalSystem::create(std::move(cycles), std::move(chains), std::move(limits));
}

// A valid function: limit values drawn first, tails forced by the ends,
// a handful of exceptions and cycle values.
inline ModelFunction random_function(Rng& rng, const SystemPtr& sys, int max_exceptions = 6) {
  ModelFunction f(sys);
  for (std::size_t l = 0; l < sys->limits().size(); ++l)
    f.set_limit_value((int)l, random_scalar(rng));
  for (std::size_t c = 0; c < sys->chains().size(); ++c) {
    const ChainDesc& desc = sys->chains()[c];
    Scalar minus = desc.minus_end.infinite ? Scalar() : f.limit_values()[desc.minus_end.limit];
    Scalar plus = desc.plus_end.infinite ? Scalar() : f.limit_values()[desc.plus_end.limit];
    f.set_chain_tails((int)c, minus, plus);
  }
  int n_exc = (int)pick(rng, 0, max_exceptions);
  for (int i = 0; i < n_exc && !sys->chains().empty(); ++i) {
    int c = (int)pick(rng, 0, (int)sys->chains().size() - 1);
    // Occasionally mirror the opposite tail value, which survives
    // normalization whenever the two tails differ and stresses the
    // stabilization bookkeeping.
    Scalar v;
    switch (pick(rng, 0, 5)) {
      case 0:
        v = f.chain_values()[c].minus_tail;
        break;
      case 1:
        v = f.chain_values()[c].plus_tail;
        break;
      default:
        v = random_scalar(rng);
    }
    f.set_chain_exception(c, pick(rng, -6, 6), v);
  }
  for (std::size_t c = 0; c < sys->cycles().size(); ++c)
    for (std::int64_t i = 0; i < sys->cycle_length((int)c); ++i)
      if (pick(rng, 0, 2) == 0) f.set_cycle_value((int)c, i, random_scalar(rng));
  return f;
}

inline AlgebraElement random_element(Rng& rng, const SystemPtr& sys, int max_degree = 4) {
  AlgebraElement a(sys);
  int terms = (int)pick(rng, 1, 3);
  for (int i = 0; i < terms; ++i)
    a.set_coefficient((int)pick(rng, 0, max_degree), random_function(rng, sys));
  return a;
}

// Scale into the closed unit ball with exact norm 1 (or zero).
inline AlgebraElement unit_ball_element(Rng& rng, const SystemPtr& sys, int max_degree = 5) {
  AlgebraElement a = random_element(rng, sys, max_degree);
  NormValue n = a.l1_norm();
  if (n.is_zero()) return a;
  if (!n.value) throw std::logic_error("generator produced an inexact norm");
  return a.scaled(Scalar(Rational(1) / *n.value));
}

inline Point random_point(Rng& rng, const DynamicalSystem& sys, std::int64_t window) {
  std::vector<Point> pool;
  for (std::size_t c = 0; c < sys.cycles().size(); ++c)
    for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i)
      pool.push_back(Point::cycle((int)c, i));
  for (std::size_t c = 0; c < sys.chains().size(); ++c)
    pool.push_back(Point::chain((int)c, pick(rng, -window, window)));
  for (std::size_t l = 0; l < sys.limits().size(); ++l) pool.push_back(Point::limit((int)l));
  return pool[pick(rng, 0, (std::int64_t)pool.size() - 1)];
}

// phi^k(p) = p for some 1 <= k <= window: the brute-force recurrence test,
// exact for this class because a chain orbit can only converge to a limit,
// never back to a chain point.
inline bool brute_orbit_returns(const DynamicalSystem& sys, const Point& p, std::int64_t window) {
  for (std::int64_t k = 1; k <= window; ++k)
    if (apply_power(sys, p, k) == p) return true;
  return false;
}

// Brute wandering check. Isolated points use their singleton neighborhood;
// a limit's basic neighborhoods U_N = {a} + converging tails past N always
// meet their own iterates through the tails.
inline bool brute_wandering(const DynamicalSystem& sys, const Point& p, std::int64_t window) {
  if (p.kind != PointKind::Limit) return !brute_orbit_returns(sys, p, window);
  for (std::int64_t n_thresh = 1; n_thresh <= window; ++n_thresh) {
    auto in_U = [&](const Point& q) {
      if (q == p) return true;
      if (q.kind != PointKind::Chain) return false;
      const ChainDesc& c = sys.chains()[q.owner];
      bool minus_in = !c.minus_end.infinite && c.minus_end.limit == p.owner &&
                      q.index <= -n_thresh;
      bool plus_in = !c.plus_end.infinite && c.plus_end.limit == p.owner &&
                     q.index >= n_thresh;
      return minus_in || plus_in;
    };
    bool meets_iterate = false;
    for (std::int64_t m = 1; m <= window && !meets_iterate; ++m) {
      // Scan a window of candidate points q with q and phi^{-m}(q)... the
      // iterate of U meets U iff some q in U has phi^m(q') = q, q' in U.
      for (std::size_t c = 0; c < sys.chains().size() && !meets_iterate; ++c)
        for (std::int64_t j = -3 * window; j <= 3 * window && !meets_iterate; ++j) {
          Point q = Point::chain((int)c, j);
          if (in_U(q) && in_U(apply_power(sys, q, -m))) meets_iterate = true;
        }
      if (in_U(p) && in_U(apply_power(sys, p, -m))) meets_iterate = true;
    }
    if (!meets_iterate) return true;  // found a wandering neighborhood
  }
  return false;
}

}  // namespace semicross::testing
