// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Usage:
//   acceptance <path-to-cli> <fixtures-dir>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace semicross;
using namespace semicross::testing;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_started;

void begin_criterion() { g_started = std::chrono::steady_clock::now(); }

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - g_started)
                     .count();
  std::cout << (pass ? "PASS" : "FAIL") << " criterion-" << criterion << ": " << name << " ("
            << elapsed << " ms)";
  if (!pass && !detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& command) {
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

// 1. The bundled paper example: certify exits 1 with (c) failing at p2 and
// (a), (b) passing.
void criterion_1(const std::string& cli, const std::string& fixtures) {
  CliResult res = run_cli(cli + " certify " + fixtures + "/paper-example A B");
  bool pass = res.exit_code == 1;
  std::string detail = "exit=" + std::to_string(res.exit_code);
  try {
    Workspace ws = load_workspace(fixtures + "/paper-example");
    ReportDocument doc = parse_report(*ws.system, res.output);
    pass = pass && doc.certificate && doc.certificate->verdict == Verdict::NotCompact;
    pass = pass && doc.certificate->pairs.size() == 1;
    if (pass) {
      const PairReport& pr = doc.certificate->pairs[0];
      pass = pr.a_pass && pr.b_pass && !pr.c_pass && pr.failures.size() == 1 &&
             pr.failures[0].cond == Cond::C &&
             pr.failures[0].limit == ws.system->limit_index("p2");
    }
  } catch (const std::exception& e) {
    pass = false;
    detail += std::string("; ") + e.what();
  }
  report(1, "paper-example reproduction", pass, detail);
}

// 2. Witness separation at delta = 1 on paper-example, wa, wb; exact, no
// tolerance.
void criterion_2(const std::string& cli, const std::string& fixtures) {
  bool pass = true;
  std::string detail;
  CliResult res = run_cli(cli + " certify " + fixtures + "/paper-example A B --witness 20");
  try {
    Workspace ws = load_workspace(fixtures + "/paper-example");
    ReportDocument doc = parse_report(*ws.system, res.output);
    pass = res.exit_code == 1 && doc.witnesses && doc.witnesses->entries.size() == 20 &&
           doc.witnesses->delta == "1" && doc.witnesses->separation == "1";
  } catch (const std::exception& e) {
    pass = false;
    detail = e.what();
  }
  auto exact_family = [&](const PairFixture& fx, Cond expected) {
    Certificate cert = certify_mult_compact(fx.a, fx.b);
    WitnessFamily fam = witness_family(fx.a, fx.b, cert, 20);
    bool ok = fam.elements.size() == 20 && fam.generated_by == expected;
    for (const auto& t : fam.elements) ok = ok && t.l1_norm().value && *t.l1_norm().value == 1;
    ok = ok && fam.delta.value && *fam.delta.value == 1;
    NormValue sep = verify_separation(fx.a, fx.b, fam);
    return ok && norm_geq(sep, fam.delta);
  };
  pass = pass && exact_family(make_paper_example(), Cond::C) &&
         exact_family(make_wa(), Cond::A) && exact_family(make_wb(), Cond::B);
  report(2, "witness separation delta = 1 on paper-example, wa, wb", pass, detail);
}

// 3. The approximation theorem on the compact pair.
void criterion_3(const std::string&, const std::string&) {
  auto cp = make_cp();
  Rng rng(1234);
  bool pass = true;
  std::string detail;
  for (long k : {2L, 5L, 10L, 50L}) {
    Approximant ap = finite_rank_approximant(cp.a, cp.b, k);
    // ||A - A_k||_1 <= 2/k, exact.
    NormValue diff = (cp.a - ap.a_k).l1_norm();
    if (!(diff.value && *diff.value <= make_ratio(2, k))) {
      pass = false;
      detail = "l1 error bound failed at k=" + std::to_string(k);
    }
    // M_{A_k,B_k}(U^l h) = 0 for l >= L0 over a basis of indicator monomials.
    for (std::int64_t l = ap.l0; l <= ap.l0 + 4 && pass; ++l)
      for (std::int64_t j = -10; j <= 10 && pass; ++j) {
        ModelFunction h = ModelFunction::indicator(cp.sys, {Point::chain(0, j)});
        if (!sandwich(ap.a_k, AlgebraElement::monomial((int)l, h), ap.b_k).is_zero()) {
          pass = false;
          detail = "nonzero sandwich beyond L0 at k=" + std::to_string(k);
        }
      }
    // sup over 100 random unit-ball polynomials of the operator difference.
    for (int probe = 0; probe < 100 && pass; ++probe) {
      AlgebraElement t = unit_ball_element(rng, cp.sys, 5);
      NormValue err = (sandwich(cp.a, t, cp.b) - sandwich(ap.a_k, t, ap.b_k)).l1_norm();
      bool ok = err.value ? (*err.value < make_ratio(4, k))
                          : (err.to_double() < 4.0 / (double)k);
      if (!ok) {
        pass = false;
        detail = "4/k bound failed at k=" + std::to_string(k);
      }
    }
  }
  report(3, "finite-rank approximation bounds on fixture cp", pass, detail);
}

// 4. Oracle equivalence on 200+ randomized instances.
void criterion_4(const std::string&, const std::string&) {
  Rng rng(4242);
  int disagreements = 0, runs = 0;
  for (int trial = 0; trial < 240; ++trial) {
    auto sys = random_system(rng);
    ModelFunction f = random_function(rng, sys);
    ModelFunction g = random_function(rng, sys);
    int m = (int)pick(rng, 0, 3), n = (int)pick(rng, 0, 3);
    std::int64_t bound = oracle_stabilization_bound(f, m, g, n);
    OracleResult res = oracle_check_pair(f, m, g, n, bound + 10, bound + 10);
    ++runs;
    if (!(res.report == check_pair(f, m, g, n))) ++disagreements;
  }
  report(4, "oracle equivalence on " + std::to_string(runs) + " random pairs",
         disagreements == 0, std::to_string(disagreements) + " disagreements");
}

// 5. Norm sandwich with monotone truncation depth.
void criterion_5(const std::string&, const std::string&) {
  Rng rng(5555);
  bool pass = true;
  std::string detail;
  for (int trial = 0; trial < 50 && pass; ++trial) {
    auto sys = random_system(rng);
    AlgebraElement a = random_element(rng, sys, 3);
    double prev = -1.0;
    for (int depth : {4, 8, 16}) {
      NormSandwich ns = norm_sandwich(*sys, a, {12, depth}, 1e-10);
      if (!(ns.lower - 1e-8 <= ns.estimate && ns.estimate <= ns.upper + 1e-8)) {
        pass = false;
        detail = "sandwich violated";
      }
      if (ns.estimate + 1e-8 < prev) {
        pass = false;
        detail = "depth monotonicity violated";
      }
      prev = ns.estimate;
    }
  }
  report(5, "operator-norm sandwich on 50 random polynomials", pass, detail);
}

// 6. The Cesaro closed form, exactly.
void criterion_6(const std::string&, const std::string&) {
  Rng rng(6666);
  bool pass = true;
  std::string detail;
  for (int trial = 0; trial < 50 && pass; ++trial) {
    auto sys = random_system(rng);
    AlgebraElement a = random_element(rng, sys, 4);
    int deg = std::max(a.degree(), 0);
    for (long k = 0; k <= 2L * deg && pass; ++k) {
      NormValue lhs = (a - a.cesaro_mean(k)).l1_norm();
      if (!lhs.value) {
        pass = false;
        detail = "inexact norm from the generator";
        break;
      }
      Rational rhs(0);
      for (const auto& [n, f] : a.coefficients())
        rhs += make_ratio(std::min<long>(n, k + 1), k + 1) * (*f.sup_norm().value);
      if (*lhs.value != rhs) {
        pass = false;
        detail = "closed form mismatch at k=" + std::to_string(k);
      }
    }
  }
  report(6, "cesaro mean closed form on 50 random polynomials", pass, detail);
}

// 7. Cross-theorem consistency.
void criterion_7(const std::string&, const std::string&) {
  Rng rng(7777);
  bool pass = true;
  std::string detail;

  //

  // Element-compact implies ideal membership, fixtures first.
  {
    auto pe = make_paper_example();
    ModelFunction chi0 = ModelFunction::indicator(pe.sys, {Point::chain(0, 0)});
    AlgebraElement a = AlgebraElement::monomial(1, chi0);
    if (certify_element_compact(a).verdict != Verdict::Compact ||
        ideal_membership(a).verdict != Verdict::Member) {
      pass = false;
      detail = "fixture element consistency";
    }
  }
  for (int trial = 0; trial < 100 && pass; ++trial) {
    auto sys = random_system(rng);
    AlgebraElement a = random_element(rng, sys, 3);
    if (certify_element_compact(a).verdict == Verdict::Compact &&
        ideal_membership(a).verdict != Verdict::Member) {
      pass = false;
      detail = "compact element escaped the ideal";
    }
  }

  // Fast paths versus the general pair logic.
  for (int trial = 0; trial < 40 && pass; ++trial) {
    auto sys = random_system(rng, 4, 3, 0);  // X_a empty
    AlgebraElement a = random_element(rng, sys, 3);
    AlgebraElement b = random_element(rng, sys, 3);
    Certificate fast = certify_mult_compact(a, b);
    Certificate general;
    bool ok = true;
    for (const auto& [m, f] : a.coefficients())
      for (const auto& [n, g] : b.coefficients()) {
        PairReport r = check_pair(f, m, g, n);
        ok = ok && r.all_pass();
        general.pairs.push_back(r);
      }
    general.verdict = ok ? Verdict::Compact : Verdict::NotCompact;
    if (!(fast == general)) {
      pass = false;
      detail = "discrete fast path diverged";
    }
  }
  {
    auto empty = DynamicalSystem::create({}, {}, {});  // X_i empty forces X empty
    AlgebraElement z = AlgebraElement::zero(empty);
    Certificate fast = certify_mult_compact(z, z);
    if (fast.verdict != Verdict::Compact || !fast.pairs.empty()) {
      pass = false;
      detail = "perfect-space fast path diverged";
    }
  }

  // Compact verdicts force exact vanishing of all pair products on the
  // recurrent set.
  for (int trial = 0; trial < 60 && pass; ++trial) {
    auto sys = random_system(rng);
    AlgebraElement a = random_element(rng, sys, 3);
    AlgebraElement b = random_element(rng, sys, 3);
    if (certify_mult_compact(a, b).verdict != Verdict::Compact) continue;
    std::vector<Point> rec_points;
    for (std::size_t c = 0; c < sys->cycles().size(); ++c)
      for (std::int64_t i = 0; i < sys->cycle_length((int)c); ++i)
        rec_points.push_back(Point::cycle((int)c, i));
    for (std::size_t l = 0; l < sys->limits().size(); ++l)
      rec_points.push_back(Point::limit((int)l));
    for (const auto& [m, f] : a.coefficients())
      for (const auto& [n, g] : b.coefficients())
        for (const Point& p : rec_points)
          for (std::int64_t l = 0; l <= 20; ++l)
            if (!(f.eval(apply_power(*sys, p, n + l)) * g.eval(p)).is_zero()) {
              pass = false;
              detail = "recurrent-set product survived a compact verdict";
            }
  }
  report(7, "theorem consistency suite", pass, detail);
}

// 8. Taxonomy identities against brute-force orbit checks at window 50.
void criterion_8(const std::string&, const std::string&) {
  Rng rng(8888);
  bool pass = true;
  std::string detail;
  const std::int64_t window = 50;
  for (int trial = 0; trial < 200 && pass; ++trial) {
    auto sys = random_system(rng);
    Taxonomy tax = taxonomy(*sys);
    PointSet rec = recurrent_set(*sys);
    PointSet wan = wandering_set(*sys);

    std::vector<Point> samples;
    for (std::size_t c = 0; c < sys->cycles().size(); ++c)
      for (std::int64_t i = 0; i < sys->cycle_length((int)c); ++i)
        samples.push_back(Point::cycle((int)c, i));
    for (std::size_t c = 0; c < sys->chains().size(); ++c) {
      samples.push_back(Point::chain((int)c, -window));
      samples.push_back(Point::chain((int)c, window));
      for (std::int64_t j = -window + 3; j < window; j += 17)
        samples.push_back(Point::chain((int)c, j));
    }
    for (std::size_t l = 0; l < sys->limits().size(); ++l) samples.push_back(Point::limit((int)l));

    for (const Point& p : samples) {
      bool isolated = p.kind != PointKind::Limit;
      if (tax.isolated.contains(p) != isolated || tax.accumulation.contains(p) == isolated) {
        pass = false;
        detail = "X_i / X_a partition";
      }
      bool returns = brute_orbit_returns(*sys, p, window);
      if (rec.contains(p) != returns) {
        pass = false;
        detail = "recurrent set vs orbit return";
      }
      bool wanders = brute_wandering(*sys, p, window);
      if (wan.contains(p) != wanders) {
        pass = false;
        detail = "wandering set vs orbit disjointness";
      }
      if (isolated && !wanders && !returns) {
        pass = false;
        detail = "isolated non-wandering point is not periodic";
      }
      bool expected_rec = p.kind != PointKind::Chain;
      bool expected_wan = p.kind == PointKind::Chain;
      if (rec.contains(p) != expected_rec || wan.contains(p) != expected_wan) {
        pass = false;
        detail = "closed-form taxonomy identity";
      }
    }
  }
  report(8, "taxonomy identities on 200 random systems", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-path> <fixtures-dir>\n";
    return 2;
  }
  std::string cli = argv[1], fixtures = argv[2];
  using CriterionFn = void (*)(const std::string&, const std::string&);
  for (CriterionFn fn : {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                         criterion_6, criterion_7, criterion_8}) {
    begin_criterion();
    fn(cli, fixtures);
  }
  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criterion(s) failed\n";
  return 1;
}
