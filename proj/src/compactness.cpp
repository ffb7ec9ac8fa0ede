#include "semicross/compactness.hpp"

#include <algorithm>

namespace semicross {

namespace {

const DynamicalSystem& same_system(const ModelFunction& f, const ModelFunction& g) {
  if (!f.system() || f.system() != g.system())
    throw SystemMismatch("pair over different systems");
  return *f.system();
}

// Smallest j >= 0 that carries no stored exception.
std::int64_t min_unstored_geq0(const std::map<std::int64_t, Scalar>& exc) {
  std::int64_t j = 0;
  while (exc.count(j)) ++j;
  return j;
}

// Largest stored exception magnitude of f on chain c (0 when none).
std::int64_t exception_span(const ModelFunction& f, int c) {
  std::int64_t s = 0;
  for (const auto& [j, v] : f.chain_values()[c].exceptions)
    s = std::max<std::int64_t>(s, j < 0 ? -j : j);
  return s;
}

// f restricted to chain c is identically zero (tails and every stored value).
bool vanishes_on_chain(const ModelFunction& f, int c) {
  const ChainValues& cv = f.chain_values()[c];
  if (!cv.minus_tail.is_zero() || !cv.plus_tail.is_zero()) return false;
  for (const auto& [j, v] : cv.exceptions)
    if (!v.is_zero()) return false;
  return true;
}

// Minimal l from which f(phi^{n+l}(x_j)) stays at the minus-tail value:
// 1 + max{l >= 0 : f(x_{j-n-l}) != minus tail}, which is governed by the
// smallest index <= j-n whose value differs from the tail.
std::int64_t chain_stabilization_l0(const ModelFunction& f, int c, std::int64_t j, int n) {
  const ChainValues& cv = f.chain_values()[c];
  std::optional<std::int64_t> i_min;
  auto consider = [&](std::int64_t i) {
    if (!i_min || i < *i_min) i_min = i;
  };
  for (const auto& [i, v] : cv.exceptions)
    if (i <= j - n && !(v == cv.minus_tail)) consider(i);
  if (!(cv.plus_tail == cv.minus_tail)) {
    std::int64_t u = min_unstored_geq0(cv.exceptions);
    if (u <= j - n) consider(u);
  }
  if (!i_min) return 0;
  return j - n - *i_min + 1;
}

// Minimal l >= 0 with f(phi^{n+l}(y)) nonzero on the orbit of a cycle point.
std::int64_t cycle_first_nonzero_l(const DynamicalSystem& sys, const ModelFunction& f,
                                   const Point& y, int n) {
  std::int64_t len = sys.cycle_length(y.owner);
  for (std::int64_t l = 0; l < len; ++l)
    if (!f.eval(apply_power(sys, y, n + l)).is_zero()) return l;
  return -1;  // f vanishes on the orbit
}

}  // namespace

std::string verdict_to_string(Verdict v) {
  switch (v) {
    case Verdict::Compact:
      return "COMPACT";
    case Verdict::NotCompact:
      return "NOT_COMPACT";
    case Verdict::Member:
      return "MEMBER";
    case Verdict::NotMember:
      return "NOT_MEMBER";
  }
  return "?";
}

std::string cond_to_string(Cond c) {
  switch (c) {
    case Cond::A:
      return "a";
    case Cond::B:
      return "b";
    case Cond::C:
      return "c";
  }
  return "?";
}

// Condition (a): limits are fixed by phi, so (f o phi^{n+l} g)(a) = f(a)g(a)
// for every l; the condition is l-independent and l0 = 0.
//
// Condition (b) at an isolated point x: the product limit along l exists and
// vanishes iff either g(x) = 0, or the f-values pulled along the backward
// orbit die out. Cycle orbits are periodic, so the limit exists only when
// f vanishes on the whole orbit; chain orbits drift into the minus end, so
// the limit is (minus tail of f) * g(x), i.e. f(a^-) g(x) for a converging
// end and 0 for an infinite one.
//
// Condition (c) at a limit a reached by a plus end of chain c: points x_j
// near a have g(x_j) = g(a) exactly, while phi^{n+l}(x_j) sweeps every chain
// index, so the family is equicontinuous at a iff g(a) = 0 or f carries no
// mass anywhere on c (tails and exceptions; the minus-end limit value is the
// minus tail by continuity). Minus ends converging to a move points deeper
// into the stabilized minus tail, so they impose nothing here; their
// constraint is exactly condition (a) at a.
PairReport check_pair(const ModelFunction& f, int m, const ModelFunction& g, int n) {
  const DynamicalSystem& sys = same_system(f, g);
  if (m < 0 || n < 0) throw FuncError("degrees live in Z_+");
  PairReport r;
  r.m = m;
  r.n = n;

  for (std::size_t a = 0; a < sys.limits().size(); ++a) {
    Point p = Point::limit((int)a);
    if (!(f.eval(p) * g.eval(p)).is_zero()) {
      r.a_pass = false;
      FailureLocus loc;
      loc.cond = Cond::A;
      loc.limit = (int)a;
      loc.l0 = 0;
      r.failures.push_back(loc);
      break;
    }
  }

  [&] {
    for (std::size_t c = 0; c < sys.cycles().size(); ++c) {
      if (f.cycle_values()[c].empty()) continue;  // f vanishes on the orbit
      for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i) {
        Point y = Point::cycle((int)c, i);
        if (g.eval(y).is_zero()) continue;
        FailureLocus loc;
        loc.cond = Cond::B;
        loc.cycle = (int)c;
        loc.cycle_index = i;
        loc.l0 = cycle_first_nonzero_l(sys, f, y, n);
        r.b_pass = false;
        r.failures.push_back(loc);
        return;
      }
    }
    for (std::size_t c = 0; c < sys.chains().size(); ++c) {
      const ChainEnd& minus = sys.chains()[c].minus_end;
      if (minus.infinite) continue;
      if (f.eval(Point::limit(minus.limit)).is_zero()) continue;
      const ChainValues& gv = g.chain_values()[c];
      FailureLocus loc;
      loc.cond = Cond::B;
      loc.chain = (int)c;
      if (!gv.minus_tail.is_zero()) {
        loc.where = ChainWhere::MinusTail;
        loc.l0 = 0;
      } else {
        std::optional<std::int64_t> first_exc;
        for (const auto& [j, v] : gv.exceptions)
          if (!v.is_zero()) {
            first_exc = j;
            break;
          }
        std::optional<std::int64_t> first_plus;
        if (!gv.plus_tail.is_zero()) first_plus = min_unstored_geq0(gv.exceptions);
        if (!first_exc && !first_plus) continue;  // g carries no mass on this chain
        if (first_exc && (!first_plus || *first_exc < *first_plus)) {
          loc.where = ChainWhere::Exception;
          loc.index = *first_exc;
          loc.l0 = chain_stabilization_l0(f, (int)c, *first_exc, n);
        } else {
          loc.where = ChainWhere::PlusTail;
          loc.l0 = 0;
        }
      }
      r.b_pass = false;
      r.failures.push_back(loc);
      return;
    }
  }();

  [&] {
    for (std::size_t a = 0; a < sys.limits().size(); ++a) {
      if (g.eval(Point::limit((int)a)).is_zero()) continue;
      for (std::size_t c = 0; c < sys.chains().size(); ++c) {
        const ChainEnd& plus = sys.chains()[c].plus_end;
        if (plus.infinite || plus.limit != (int)a) continue;
        if (vanishes_on_chain(f, (int)c)) continue;
        FailureLocus loc;
        loc.cond = Cond::C;
        loc.limit = (int)a;
        loc.chain = (int)c;
        loc.l0 = 0;
        r.c_pass = false;
        r.failures.push_back(loc);
        return;
      }
    }
  }();

  return r;
}

std::int64_t oracle_stabilization_bound(const ModelFunction& f, int m, const ModelFunction& g,
                                        int n) {
  const DynamicalSystem& sys = same_system(f, g);
  (void)m;
  std::int64_t span = 0;
  for (std::size_t c = 0; c < sys.chains().size(); ++c)
    span = std::max({span, exception_span(f, (int)c), exception_span(g, (int)c)});
  std::int64_t cyc = 0;
  for (std::size_t c = 0; c < sys.cycles().size(); ++c)
    cyc = std::max<std::int64_t>(cyc, sys.cycle_length((int)c));
  return span + n + cyc + 1;
}

// Pointwise scanning oracle: evaluates h_l = (f o phi^{n+l}) g on every cycle
// point, the chain window, and the limits. Decisions use only eval and
// apply_power. Per-point iterate scans extend far enough that f sits below
// its stored exceptions, making the reported limits exact.
OracleResult oracle_check_pair(const ModelFunction& f, int m, const ModelFunction& g, int n,
                               std::int64_t window, std::int64_t horizon) {
  const DynamicalSystem& sys = same_system(f, g);
  OracleResult out;
  out.stabilization_bound = oracle_stabilization_bound(f, m, g, n);
  if (window < out.stabilization_bound || horizon < out.stabilization_bound)
    throw HorizonTooSmall("window/horizon below the stabilization bound " +
                          std::to_string(out.stabilization_bound));
  PairReport& r = out.report;
  r.m = m;
  r.n = n;

  auto h = [&](const Point& x, std::int64_t l) {
    return f.eval(apply_power(sys, x, n + l)) * g.eval(x);
  };

  for (std::size_t a = 0; a < sys.limits().size() && r.a_pass; ++a) {
    Point p = Point::limit((int)a);
    for (std::int64_t l = 0; l <= horizon; ++l)
      if (!h(p, l).is_zero()) {
        r.a_pass = false;
        FailureLocus loc;
        loc.cond = Cond::A;
        loc.limit = (int)a;
        loc.l0 = l;
        r.failures.push_back(loc);
        break;
      }
  }

  [&] {
    for (std::size_t c = 0; c < sys.cycles().size(); ++c)
      for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i) {
        Point y = Point::cycle((int)c, i);
        for (std::int64_t l = 0; l <= horizon; ++l)
          if (!h(y, l).is_zero()) {
            r.b_pass = false;
            FailureLocus loc;
            loc.cond = Cond::B;
            loc.cycle = (int)c;
            loc.cycle_index = i;
            loc.l0 = l;
            r.failures.push_back(loc);
            return;
          }
      }
    std::int64_t span = 0;
    for (std::size_t c = 0; c < sys.chains().size(); ++c)
      span = std::max({span, exception_span(f, (int)c), exception_span(g, (int)c)});
    for (std::size_t c = 0; c < sys.chains().size(); ++c) {
      for (std::int64_t j = -window; j <= window; ++j) {
        Point x = Point::chain((int)c, j);
        // Deep enough that f reads its minus tail: the exact limit of h_l(x).
        std::int64_t l_deep = std::max<std::int64_t>(0, j - n + span + 1);
        Scalar limitval = h(x, l_deep);
        if (limitval.is_zero()) continue;
        r.b_pass = false;
        FailureLocus loc;
        loc.cond = Cond::B;
        loc.chain = (int)c;
        const auto& exc = g.chain_values()[c].exceptions;
        if (exc.count(j)) {
          loc.where = ChainWhere::Exception;
          loc.index = j;
          std::int64_t last_violation = -1;
          for (std::int64_t l = 0; l <= l_deep; ++l)
            if (!(h(x, l) == limitval)) last_violation = l;
          loc.l0 = last_violation + 1;
        } else {
          loc.where = j < 0 ? ChainWhere::MinusTail : ChainWhere::PlusTail;
          loc.l0 = 0;
        }
        r.failures.push_back(loc);
        return;
      }
    }
  }();

  [&] {
    for (std::size_t a = 0; a < sys.limits().size(); ++a) {
      if (g.eval(Point::limit((int)a)).is_zero()) continue;
      for (std::size_t c = 0; c < sys.chains().size(); ++c) {
        const ChainEnd& plus = sys.chains()[c].plus_end;
        if (plus.infinite || plus.limit != (int)a) continue;
        bool mass = false;
        for (std::int64_t j = -window; j <= window && !mass; ++j)
          if (!f.eval(Point::chain((int)c, j)).is_zero()) mass = true;
        if (!mass) continue;
        r.c_pass = false;
        FailureLocus loc;
        loc.cond = Cond::C;
        loc.limit = (int)a;
        loc.chain = (int)c;
        loc.l0 = 0;
        r.failures.push_back(loc);
        return;
      }
    }
  }();

  return out;
}

namespace {

Certificate certify_pairs(const AlgebraElement& a, const AlgebraElement& b) {
  Certificate cert;
  bool ok = true;
  for (const auto& [m, f] : a.coefficients())
    for (const auto& [n, g] : b.coefficients()) {
      PairReport r = check_pair(f, m, g, n);
      ok = ok && r.all_pass();
      cert.pairs.push_back(std::move(r));
    }
  std::sort(cert.pairs.begin(), cert.pairs.end(), [](const PairReport& x, const PairReport& y) {
    return std::pair(x.m, x.n) < std::pair(y.m, y.n);
  });
  cert.verdict = ok ? Verdict::Compact : Verdict::NotCompact;
  return cert;
}

// Discrete fast path: no accumulation points means (a) and (c) hold
// vacuously and every chain runs off to infinity, so only the cycle half of
// (b) -- the recurrent points -- can obstruct compactness.
Certificate certify_discrete(const AlgebraElement& a, const AlgebraElement& b) {
  const DynamicalSystem& sys = *a.system();
  Certificate cert;
  bool ok = true;
  for (const auto& [m, f] : a.coefficients())
    for (const auto& [n, g] : b.coefficients()) {
      PairReport r;
      r.m = m;
      r.n = n;
      for (std::size_t c = 0; c < sys.cycles().size() && r.b_pass; ++c) {
        if (f.cycle_values()[c].empty()) continue;
        for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i) {
          Point y = Point::cycle((int)c, i);
          if (g.eval(y).is_zero()) continue;
          FailureLocus loc;
          loc.cond = Cond::B;
          loc.cycle = (int)c;
          loc.cycle_index = i;
          loc.l0 = cycle_first_nonzero_l(sys, f, y, n);
          r.b_pass = false;
          r.failures.push_back(loc);
          break;
        }
      }
      ok = ok && r.all_pass();
      cert.pairs.push_back(std::move(r));
    }
  cert.verdict = ok ? Verdict::Compact : Verdict::NotCompact;
  return cert;
}

// Perfect-space fast path: without isolated points the model invariants force
// X to be empty, every function is zero, and M_{A,B} is compact iff it is the
// zero operator. Nonzero coefficients cannot exist over the empty system, so
// the pair list is empty and the verdict is COMPACT, matching the general
// certifier.
Certificate certify_perfect(const AlgebraElement& a, const AlgebraElement& b) {
  Certificate cert;
  bool all_products_vanish = true;
  for (const auto& [m, f] : a.coefficients())
    for (const auto& [n, g] : b.coefficients()) {
      PairReport r;
      r.m = m;
      r.n = n;
      all_products_vanish = all_products_vanish && (f.is_zero() || g.is_zero());
      cert.pairs.push_back(std::move(r));
    }
  cert.verdict = all_products_vanish ? Verdict::Compact : Verdict::NotCompact;
  return cert;
}

}  // namespace

Certificate certify_mult_compact(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.system() || a.system() != b.system())
    throw SystemMismatch("elements over different systems");
  const DynamicalSystem& sys = *a.system();
  bool has_isolated = !sys.cycles().empty() || !sys.chains().empty();
  if (!has_isolated) return certify_perfect(a, b);
  if (sys.limits().empty()) return certify_discrete(a, b);
  return certify_pairs(a, b);
}

Certificate certify_element_compact(const AlgebraElement& a) {
  if (!a.system()) throw SystemMismatch("element without a system");
  const DynamicalSystem& sys = *a.system();
  Certificate cert;
  bool ok = true;
  for (const auto& [m, f] : a.coefficients())
    for (const auto& [n, g] : a.coefficients()) {
      PairReport r = check_pair(f, m, g, n);
      // Condition (b) is implied by the recurrent-set vanishing below:
      // f(a) = 0 at every limit controls converging minus ends, and cycle
      // points carry no g-mass. It is replaced, not decided, here.
      if (!r.b_pass) {
        r.b_pass = true;
        std::erase_if(r.failures, [](const FailureLocus& l) { return l.cond == Cond::B; });
      }
      ok = ok && r.all_pass();
      cert.pairs.push_back(std::move(r));
    }
  for (const auto& [m, f] : a.coefficients()) {
    std::optional<Point> bad;
    for (std::size_t c = 0; c < sys.cycles().size() && !bad; ++c)
      for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i)
        if (!f.eval(Point::cycle((int)c, i)).is_zero()) {
          bad = Point::cycle((int)c, i);
          break;
        }
    for (std::size_t l = 0; l < sys.limits().size() && !bad; ++l)
      if (!f.eval(Point::limit((int)l)).is_zero()) bad = Point::limit((int)l);
    if (bad) {
      ok = false;
      cert.vanishing.push_back({m, VanishFailure::Why::RecurrentPoint, *bad});
    }
  }
  cert.verdict = ok ? Verdict::Compact : Verdict::NotCompact;
  return cert;
}

Certificate ideal_membership(const AlgebraElement& a) {
  if (!a.system()) throw SystemMismatch("element without a system");
  const DynamicalSystem& sys = *a.system();
  Certificate cert;
  bool ok = true;
  for (const auto& [m, f] : a.coefficients()) {
    std::optional<Point> bad;
    for (std::size_t c = 0; c < sys.cycles().size() && !bad; ++c)
      for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i)
        if (!f.eval(Point::cycle((int)c, i)).is_zero()) {
          bad = Point::cycle((int)c, i);
          break;
        }
    for (std::size_t l = 0; l < sys.limits().size() && !bad; ++l)
      if (!f.eval(Point::limit((int)l)).is_zero()) bad = Point::limit((int)l);
    if (bad) {
      ok = false;
      cert.vanishing.push_back({m, VanishFailure::Why::NonWanderingPoint, *bad});
    }
  }
  // The zeroth coefficient must also vanish on the accumulation points; in
  // this class they are non-wandering, so this is subsumed but still checked.
  {
    const ModelFunction e0 = a.fourier_coefficient(0);
    for (std::size_t l = 0; l < sys.limits().size(); ++l)
      if (!e0.eval(Point::limit((int)l)).is_zero()) {
        ok = false;
        cert.vanishing.push_back({0, VanishFailure::Why::AccumulationE0, Point::limit((int)l)});
        break;
      }
  }
  cert.verdict = ok ? Verdict::Member : Verdict::NotMember;
  return cert;
}

namespace {

struct MinimalFailure {
  Cond cond;
  int m0, n0;
  FailureLocus locus;
};

std::optional<MinimalFailure> minimal_failure(const Certificate& cert, Cond cond) {
  std::optional<MinimalFailure> best;
  // n0 = min n among failures of this condition, then m0 = min m with n = n0;
  // the pair list is (m, n)-sorted, so scan for the lexicographic (n, m) min.
  for (const auto& pr : cert.pairs)
    for (const auto& loc : pr.failures) {
      if (loc.cond != cond) continue;
      if (!best || std::pair(pr.n, pr.m) < std::pair(best->n0, best->m0))
        best = MinimalFailure{cond, pr.m, pr.n, loc};
    }
  return best;
}

// Largest stored exception magnitude across every coefficient of a and b on
// chain c; witness anchor indices start beyond it so that all evaluations in
// the separation estimate read exact tail values.
std::int64_t coefficient_span(const AlgebraElement& a, const AlgebraElement& b, int c) {
  std::int64_t s = 0;
  for (const auto& [m, f] : a.coefficients()) s = std::max(s, exception_span(f, c));
  for (const auto& [n, g] : b.coefficients()) s = std::max(s, exception_span(g, c));
  return s;
}

}  // namespace

WitnessFamily witness_family(const AlgebraElement& a, const AlgebraElement& b,
                             const Certificate& cert, int count) {
  if (count < 2) throw std::invalid_argument("a witness family needs at least two elements");
  if (!a.system() || a.system() != b.system())
    throw SystemMismatch("elements over different systems");
  const DynamicalSystem& sys = *a.system();
  auto failure = minimal_failure(cert, Cond::A);
  if (!failure) failure = minimal_failure(cert, Cond::B);
  if (!failure) failure = minimal_failure(cert, Cond::C);
  if (!failure) throw NoFailure("certificate reports no failing condition");

  const int m0 = failure->m0, n0 = failure->n0;
  const ModelFunction fm = a.fourier_coefficient(m0);
  const ModelFunction gn = b.fourier_coefficient(n0);
  WitnessFamily w;
  w.generated_by = failure->cond;
  w.m0 = m0;
  w.n0 = n0;
  const std::int64_t gap = m0 + n0 + 2;

  switch (failure->cond) {
    case Cond::A: {
      // Bumps at isolated points marching into the located limit, all at the
      // same degree l0 = 0; the indicator keeps every cross term out of the
      // estimating coefficient.
      const int limit = failure->locus.limit;
      w.l0 = 0;
      int chain = -1;
      bool plus_side = false;
      for (std::size_t c = 0; c < sys.chains().size() && chain < 0; ++c) {
        if (!sys.chains()[c].minus_end.infinite && sys.chains()[c].minus_end.limit == limit)
          chain = (int)c;
        else if (!sys.chains()[c].plus_end.infinite && sys.chains()[c].plus_end.limit == limit) {
          chain = (int)c;
          plus_side = true;
        }
      }
      if (chain < 0) throw NoFailure("limit without a converging chain end");  // unreachable
      std::int64_t start = coefficient_span(a, b, chain) + n0 + m0 + 2;
      for (int i = 0; i < count; ++i) {
        std::int64_t j = plus_side ? start + i * gap : -(start + i * gap);
        w.points.push_back(Point::chain(chain, j - n0));
        w.shifts.push_back(w.l0);
      }
      Scalar dominant = fm.eval(Point::limit(limit)) * gn.eval(Point::limit(limit));
      w.delta = NormValue::from_square(dominant.abs_sq());
      break;
    }
    case Cond::B: {
      if (failure->locus.cycle >= 0) {
        // Repeated bump at one periodic point with degrees stepping by a
        // multiple of the period, aligned on the orbit position where the
        // pulled-back coefficient is largest.
        const int c = failure->locus.cycle;
        const Point y = Point::cycle(c, failure->locus.cycle_index);
        const std::int64_t len = sys.cycle_length(c);
        std::int64_t l_star = 0;
        Rational best(-1);
        for (std::int64_t l = 0; l < len; ++l) {
          Rational sq = fm.eval(apply_power(sys, y, n0 + l)).abs_sq();
          if (sq > best) {
            best = sq;
            l_star = l;
          }
        }
        w.l0 = l_star;
        std::int64_t step = len * ((gap + len - 1) / len);
        for (int i = 0; i < count; ++i) {
          w.shifts.push_back(l_star + i * step);
          w.points.push_back(apply_power(sys, y, n0));
        }
        Scalar dominant = fm.eval(apply_power(sys, y, n0 + l_star)) * gn.eval(y);
        w.delta = NormValue::from_square(dominant.abs_sq());
      } else {
        // Repeated bump at one chain point with degrees past stabilization;
        // the dominant value is the minus-end limit of f times g there.
        const int c = failure->locus.chain;
        std::int64_t j0;
        const ChainValues& gv = gn.chain_values()[c];
        switch (failure->locus.where) {
          case ChainWhere::Exception:
            j0 = failure->locus.index;
            break;
          case ChainWhere::MinusTail:
            j0 = (gv.exceptions.empty() ? 0 : gv.exceptions.begin()->first) - 1;
            if (j0 >= 0) j0 = -1;
            break;
          default:
            j0 = min_unstored_geq0(gv.exceptions);
            break;
        }
        std::int64_t l_base = chain_stabilization_l0(fm, c, j0, n0);
        w.l0 = l_base;
        for (int i = 0; i < count; ++i) {
          w.shifts.push_back(l_base + i * gap);
          w.points.push_back(Point::chain(c, j0 - n0));
        }
        Scalar dominant = fm.chain_values()[c].minus_tail * gn.eval(Point::chain(c, j0));
        w.delta = NormValue::from_square(dominant.abs_sq());
      }
      break;
    }
    case Cond::C: {
      // Bumps at points running up the chain into the limit, each paired
      // with the degree that drags phi^{n0+l_i} back onto the heaviest spot
      // of f on the chain.
      const int limit = failure->locus.limit;
      const int c = failure->locus.chain;
      const ChainValues& fv = fm.chain_values()[c];
      std::optional<std::int64_t> jstar;
      Rational best(-1);
      for (const auto& [j, v] : fv.exceptions) {
        Rational sq = v.abs_sq();
        if (sq > best) {
          best = sq;
          jstar = j;
        }
      }
      if (!fv.minus_tail.is_zero()) {
        Rational sq = fv.minus_tail.abs_sq();
        if (sq > best) {
          best = sq;
          jstar = (fv.exceptions.empty() ? 0 : fv.exceptions.begin()->first) - 1;
          if (*jstar >= 0) jstar = -1;
        }
      }
      if (!fv.plus_tail.is_zero()) {
        Rational sq = fv.plus_tail.abs_sq();
        if (sq > best) {
          best = sq;
          jstar = min_unstored_geq0(fv.exceptions);
        }
      }
      if (!jstar) throw NoFailure("equicontinuity locus without f-mass");  // unreachable
      std::int64_t span = coefficient_span(a, b, c);
      std::int64_t jabs = *jstar < 0 ? -*jstar : *jstar;
      std::int64_t start = std::max(span, jabs) + n0 + m0 + 2;
      for (int i = 0; i < count; ++i) {
        std::int64_t j = start + i * gap;
        w.shifts.push_back(j - n0 - *jstar);
        w.points.push_back(Point::chain(c, j - n0));
      }
      w.l0 = w.shifts.front();
      Scalar dominant = fm.eval(Point::chain(c, *jstar)) * gn.eval(Point::limit(limit));
      w.delta = NormValue::from_square(dominant.abs_sq());
      break;
    }
  }

  for (int i = 0; i < count; ++i)
    w.elements.push_back(AlgebraElement::monomial(
        (int)w.shifts[i], ModelFunction::indicator(a.system(), {w.points[i]})));
  return w;
}

NormValue verify_separation(const AlgebraElement& a, const AlgebraElement& b,
                            const WitnessFamily& w) {
  if (w.elements.size() < 2)
    throw std::invalid_argument("separation needs at least two witnesses");
  std::optional<NormValue> best;
  std::vector<AlgebraElement> images;
  images.reserve(w.elements.size());
  for (const auto& t : w.elements) images.push_back(sandwich(a, t, b));
  for (std::size_t u = 0; u < images.size(); ++u)
    for (std::size_t v = u + 1; v < images.size(); ++v) {
      AlgebraElement diff = images[u] - images[v];
      NormValue bound = NormValue::zero();
      for (const auto& [k, h] : diff.coefficients()) bound = norm_max(bound, h.sup_norm());
      best = best ? norm_min(*best, bound) : bound;
    }
  return *best;
}

namespace {

// Smallest index of chain c carrying a nonzero value of f, given that the
// minus tail vanishes; nullopt when f has no mass on the chain.
std::optional<std::int64_t> min_nonzero_index(const ModelFunction& f, int c) {
  const ChainValues& cv = f.chain_values()[c];
  std::optional<std::int64_t> best;
  for (const auto& [j, v] : cv.exceptions)
    if (!v.is_zero()) {
      best = j;
      break;
    }
  if (!cv.plus_tail.is_zero()) {
    std::int64_t u = min_unstored_geq0(cv.exceptions);
    if (!best || u < *best) best = u;
  }
  return best;
}

}  // namespace

Approximant finite_rank_approximant(const AlgebraElement& a, const AlgebraElement& b, long k) {
  if (!a.system() || a.system() != b.system())
    throw SystemMismatch("elements over different systems");
  if (a.coefficients().size() > 1 || b.coefficients().size() > 1)
    throw std::invalid_argument("finite-rank approximants are built for monomial pairs");
  if (k < 1) throw std::invalid_argument("approximant order k must be >= 1");
  const DynamicalSystem& sys = *a.system();
  const int m = a.is_zero() ? 0 : a.coefficients().begin()->first;
  const int n = b.is_zero() ? 0 : b.coefficients().begin()->first;
  const ModelFunction f =
      a.is_zero() ? ModelFunction::zero(a.system()) : a.coefficients().begin()->second;
  const ModelFunction g =
      b.is_zero() ? ModelFunction::zero(b.system()) : b.coefficients().begin()->second;

  if (!check_pair(f, m, g, n).all_pass())
    throw NotCompactError("the pair fails a compactness condition");

  Approximant out;
  out.k = k;
  if (f.is_zero() || g.is_zero()) {
    out.a_k = AlgebraElement::zero(a.system());
    out.b_k = AlgebraElement::zero(a.system());
    return out;
  }

  const ModelFunction fk = f.urysohn_cutoff(k).second;
  const ModelFunction gk = g.urysohn_cutoff(k).second;

  // I_k: the isolated points still carrying g_k-mass whose forward f_k-orbit
  // is not yet dead. Everything else that g_k touches -- converging tails and
  // limits -- is annihilated by the certified conditions.
  std::vector<Point> support;
  for (std::size_t c = 0; c < sys.cycles().size(); ++c)
    for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i) {
      Point y = Point::cycle((int)c, i);
      if (gk.eval(y).is_zero()) continue;
      if (cycle_first_nonzero_l(sys, fk, y, n) >= 0)
        throw std::logic_error("certified pair left f_k-mass on a g_k-carrying orbit");
    }
  std::int64_t max_l = -1;
  for (std::size_t c = 0; c < sys.chains().size(); ++c) {
    auto fmin = min_nonzero_index(fk, (int)c);
    if (!fmin) continue;  // f_k dead on this chain: nothing survives here
    const ChainValues& gv = gk.chain_values()[c];
    bool g_exception_mass = false;
    for (const auto& [j, v] : gv.exceptions)
      if (!v.is_zero()) g_exception_mass = true;
    bool g_mass = g_exception_mass || !gv.minus_tail.is_zero() || !gv.plus_tail.is_zero();
    if (g_mass && !fk.chain_values()[c].minus_tail.is_zero())
      throw std::logic_error("certified pair left f_k minus-tail mass under g_k");
    if (g_mass && !gv.plus_tail.is_zero())
      throw std::logic_error("certified pair left f_k-mass against a g_k plus tail");
    std::vector<std::int64_t> candidates;
    for (const auto& [j, v] : gv.exceptions)
      if (!v.is_zero()) candidates.push_back(j);
    if (!gv.minus_tail.is_zero()) {
      // Unstored negative indices still carry the tail value; only those at
      // or above n + fmin can meet f_k-mass going backward.
      for (std::int64_t j = n + *fmin; j <= -1; ++j)
        if (!gv.exceptions.count(j)) candidates.push_back(j);
    }
    std::sort(candidates.begin(), candidates.end());
    for (std::int64_t j : candidates) {
      if (*fmin > j - n) continue;  // the backward orbit never meets f_k-mass
      support.push_back(Point::chain((int)c, j));
      max_l = std::max(max_l, j - n - *fmin);
    }
  }
  out.support = std::move(support);
  out.l0 = max_l + 1;
  out.rank_bound = (std::int64_t)out.support.size() * out.l0;

  ModelFunction g_restricted(a.system());
  for (const Point& p : out.support) {
    if (p.kind == PointKind::Chain)
      g_restricted.set_chain_exception(p.owner, p.index, gk.eval(p));
    else
      g_restricted.set_cycle_value(p.owner, p.index, gk.eval(p));
  }
  out.a_k = AlgebraElement::monomial(m, fk);
  out.b_k = AlgebraElement::monomial(n, g_restricted);
  return out;
}

}  // namespace semicross
