#include "doctest.h"
#include "support.hpp"

using namespace semicross;
using namespace semicross::testing;

TEST_CASE("system construction enforces the model invariants") {
  CHECK_NOTHROW(DynamicalSystem::create({}, {}, {}));  // empty system is fine
  CHECK_THROWS_AS(DynamicalSystem::create({}, {{"c", ChainEnd::to_limit(0), ChainEnd::make_infinite()}},
                                          {}),
                  DanglingLimitRef);
  CHECK_THROWS_AS(DynamicalSystem::create({}, {}, {{"q"}}), OrphanLimit);
  CHECK_THROWS_AS(DynamicalSystem::create({{"c", 2}},
                                          {{"c", ChainEnd::make_infinite(), ChainEnd::make_infinite()}},
                                          {}),
                  DuplicatePoint);
}

TEST_CASE("apply_power shifts chains, rotates cycles, fixes limits") {
  auto pe = make_paper_example();
  CHECK(apply_power(*pe.sys, Point::chain(0, 3), 2) == Point::chain(0, 1));
  CHECK(apply_power(*pe.sys, Point::limit(0), -7) == Point::limit(0));
  auto cyc = make_cyc();
  CHECK(apply_power(*cyc, Point::cycle(0, 0), 3) == Point::cycle(0, 1));
  CHECK_THROWS_AS(apply_power(*pe.sys, Point::cycle(0, 0), 1), ForeignPoint);
}

TEST_CASE("apply_power is additive in the exponent") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto sys = random_system(rng);
    Point p = random_point(rng, *sys, 20);
    std::int64_t a = pick(rng, -30, 30), b = pick(rng, -30, 30);
    CHECK(apply_power(*sys, apply_power(*sys, p, a), b) == apply_power(*sys, p, a + b));
  }
}

TEST_CASE("taxonomy of the paper example") {
  auto pe = make_paper_example();
  Taxonomy tax = taxonomy(*pe.sys);
  CHECK(tax.isolated.contains(Point::chain(0, 17)));
  CHECK(!tax.isolated.contains(Point::limit(0)));
  CHECK(tax.accumulation.contains(Point::limit(0)));
  CHECK(tax.accumulation.contains(Point::limit(1)));
  CHECK(tax.accumulation == tax.accumulation_of_isolated);

  PointSet rec = recurrent_set(*pe.sys);
  CHECK(rec.contains(Point::limit(0)));
  CHECK(rec.contains(Point::limit(1)));
  CHECK(!rec.contains(Point::chain(0, 0)));

  PointSet wan = wandering_set(*pe.sys);
  CHECK(wan.contains(Point::chain(0, -40)));
  CHECK(!wan.contains(Point::limit(1)));
  PointSet nonwan = wan.complement(*pe.sys);
  CHECK(nonwan.contains(Point::limit(0)));
  CHECK(nonwan.contains(Point::limit(1)));
  CHECK(!nonwan.contains(Point::chain(0, 3)));
}

TEST_CASE("taxonomy of the discrete fixture") {
  auto cyc = make_cyc();
  Taxonomy tax = taxonomy(*cyc);
  CHECK(tax.accumulation.empty());
  PointSet rec = recurrent_set(*cyc);
  CHECK(rec.contains(Point::cycle(0, 0)));
  CHECK(rec.contains(Point::cycle(0, 1)));
  CHECK(!rec.contains(Point::chain(0, 0)));
  PointSet wan = wandering_set(*cyc);
  CHECK(wan.contains(Point::chain(0, 5)));
  CHECK(!wan.contains(Point::cycle(0, 0)));
}

TEST_CASE("empty system has empty taxonomy") {
  auto sys = DynamicalSystem::create({}, {}, {});
  CHECK(taxonomy(*sys).isolated.empty());
  CHECK(taxonomy(*sys).accumulation.empty());
  CHECK(recurrent_set(*sys).empty());
  CHECK(wandering_set(*sys).empty());
}

TEST_CASE("chain with two infinite ends has no recurrent points") {
  auto sys = DynamicalSystem::create(
      {}, {{"c", ChainEnd::make_infinite(), ChainEnd::make_infinite()}}, {});
  CHECK(recurrent_set(*sys).empty());
}

TEST_CASE("point set algebra: union, intersection, complement, subsets") {
  auto pe = make_paper_example();
  PointSet rec = recurrent_set(*pe.sys);
  PointSet wan = wandering_set(*pe.sys);
  CHECK(rec.set_intersection(wan).empty());
  CHECK(rec.subset_of(wan.complement(*pe.sys)));
  PointSet all = rec.set_union(wan);
  CHECK(all.contains(Point::chain(0, 2)));
  CHECK(all.contains(Point::limit(0)));
  CHECK(all == taxonomy(*pe.sys).isolated.set_union(taxonomy(*pe.sys).accumulation));
}

TEST_CASE("taxonomy identities against brute-force orbit checks") {
  Rng rng(23);
  const std::int64_t window = 50;
  for (int trial = 0; trial < 60; ++trial) {
    auto sys = random_system(rng);
    Taxonomy tax = taxonomy(*sys);
    PointSet rec = recurrent_set(*sys);
    PointSet wan = wandering_set(*sys);

    // Partition: X_i and X_a split X.
    CHECK(tax.isolated.set_intersection(tax.accumulation).empty());

    std::vector<Point> samples;
    for (std::size_t c = 0; c < sys->cycles().size(); ++c)
      for (std::int64_t i = 0; i < sys->cycle_length((int)c); ++i)
        samples.push_back(Point::cycle((int)c, i));
    for (std::size_t c = 0; c < sys->chains().size(); ++c)
      for (std::int64_t j = -window; j <= window; j += 7)
        samples.push_back(Point::chain((int)c, j));
    for (std::size_t l = 0; l < sys->limits().size(); ++l) samples.push_back(Point::limit((int)l));

    for (const Point& p : samples) {
      CHECK(tax.isolated.contains(p) != tax.accumulation.contains(p));
      CHECK(rec.contains(p) == brute_orbit_returns(*sys, p, window));
      CHECK(wan.contains(p) == brute_wandering(*sys, p, window));
      if (tax.isolated.contains(p) && !wan.contains(p))
        CHECK(brute_orbit_returns(*sys, p, window));  // isolated non-wandering => periodic
    }
    CHECK(rec.subset_of(wan.complement(*sys)));
  }
}

TEST_CASE("inserting tails keeps existing members") {
  auto pe = make_paper_example();
  PointSet s(*pe.sys);
  s.insert(Point::chain(0, -3));
  s.insert(Point::chain(0, 5));
  s.insert_chain_tail(0, true);
  CHECK(s.contains(Point::chain(0, -3)));
  CHECK(s.contains(Point::chain(0, 5)));
  CHECK(s.contains(Point::chain(0, 1000)));
  CHECK(!s.contains(Point::chain(0, -4)));
  s.insert_chain_tail(0, false);
  CHECK(s.contains(Point::chain(0, -4)));
}

TEST_CASE("point printing and parsing") {
  auto pe = make_paper_example();
  CHECK(point_to_string(*pe.sys, Point::chain(0, -3)) == "c[-3]");
  CHECK(point_to_string(*pe.sys, Point::limit(1)) == "p2");
}
