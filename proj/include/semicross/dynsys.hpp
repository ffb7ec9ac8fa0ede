#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semicross {

struct DynSysError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DanglingLimitRef : DynSysError {
  using DynSysError::DynSysError;
};
struct OrphanLimit : DynSysError {
  using DynSysError::DynSysError;
};
struct DuplicatePoint : DynSysError {
  using DynSysError::DynSysError;
};
struct ForeignPoint : DynSysError {
  using DynSysError::DynSysError;
};

// One end of a chain: either escapes every compact set or converges to a
// fixed accumulation point of the system.
struct ChainEnd {
  bool infinite = true;
  int limit = -1;  // index into limits() when !infinite

  static ChainEnd make_infinite() { return {}; }
  static ChainEnd to_limit(int idx) { return {false, idx}; }
  bool operator==(const ChainEnd&) const = default;
};

struct CycleDesc {
  std::string name;
  std::int64_t length = 1;  // points y_0..y_{L-1}, phi(y_i) = y_{(i-1) mod L}
  bool operator==(const CycleDesc&) const = default;
};

struct ChainDesc {
  std::string name;
  ChainEnd minus_end;  // behavior of x_j as j -> -infinity
  ChainEnd plus_end;   // behavior as j -> +infinity
  bool operator==(const ChainDesc&) const = default;
};

struct LimitDesc {
  std::string name;  // a fixed point of phi by continuity along its chains
  bool operator==(const LimitDesc&) const = default;
};

enum class PointKind { Cycle, Chain, Limit };

struct Point {
  PointKind kind = PointKind::Limit;
  int owner = -1;            // index of the owning cycle/chain/limit
  std::int64_t index = 0;    // cycle position in [0,L), or chain index in Z

  static Point cycle(int c, std::int64_t i) { return {PointKind::Cycle, c, i}; }
  static Point chain(int c, std::int64_t j) { return {PointKind::Chain, c, j}; }
  static Point limit(int a) { return {PointKind::Limit, a, 0}; }
  auto operator<=>(const Point&) const = default;
};

// A finitely presented system (X, phi): cycles and bi-infinite chains of
// isolated points plus the fixed accumulation points the chain ends reach.
class DynamicalSystem {
 public:
  // Validates all invariants; chain ends reference limits by position in
  // `limits`. Throws DanglingLimitRef / OrphanLimit / DuplicatePoint.
  static std::shared_ptr<const DynamicalSystem> create(std::vector<CycleDesc> cycles,
                                                       std::vector<ChainDesc> chains,
                                                       std::vector<LimitDesc> limits);

  const std::vector<CycleDesc>& cycles() const { return cycles_; }
  const std::vector<ChainDesc>& chains() const { return chains_; }
  const std::vector<LimitDesc>& limits() const { return limits_; }

  bool contains(const Point& p) const;
  void require(const Point& p) const;  // throws ForeignPoint

  std::int64_t cycle_length(int c) const { return cycles_[c].length; }
  bool empty() const { return cycles_.empty() && chains_.empty() && limits_.empty(); }

  int cycle_index(const std::string& name) const;  // -1 when absent
  int chain_index(const std::string& name) const;
  int limit_index(const std::string& name) const;

  // Structural equality (used by round-trip tests); identity is the pointer.
  bool operator==(const DynamicalSystem& o) const {
    return cycles_ == o.cycles_ && chains_ == o.chains_ && limits_ == o.limits_;
  }

 private:
  DynamicalSystem() = default;
  std::vector<CycleDesc> cycles_;
  std::vector<ChainDesc> chains_;
  std::vector<LimitDesc> limits_;
  std::map<std::string, std::pair<PointKind, int>> names_;
};

using SystemPtr = std::shared_ptr<const DynamicalSystem>;

// phi^k; k may be negative (phi is a homeomorphism).
Point apply_power(const DynamicalSystem& sys, const Point& p, std::int64_t k);

std::string point_to_string(const DynamicalSystem& sys, const Point& p);

// A finitely described subset of X: full/partial tails per chain plus an
// explicit finite exceptional part. `toggles` flips membership relative to
// the ambient tail flag (minus flag covers j < 0, plus flag covers j >= 0).
struct ChainSlice {
  bool minus_tail = false;
  bool plus_tail = false;
  std::set<std::int64_t> toggles;
  bool operator==(const ChainSlice&) const = default;
};

class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(const DynamicalSystem& sys);

  bool contains(const Point& p) const;
  void insert(const Point& p);
  void insert_chain_tail(int chain, bool plus);
  void insert_whole_chain(int chain);
  void insert_whole_cycle(const DynamicalSystem& sys, int cycle);

  bool empty() const;
  PointSet complement(const DynamicalSystem& sys) const;
  PointSet set_union(const PointSet& o) const;
  PointSet set_intersection(const PointSet& o) const;
  bool subset_of(const PointSet& o) const;

  const std::vector<std::set<std::int64_t>>& cycle_points() const { return cycle_points_; }
  const std::vector<ChainSlice>& chain_slices() const { return chain_slices_; }
  const std::vector<char>& limit_flags() const { return limit_flags_; }

  std::vector<std::set<std::int64_t>>& cycle_points() { return cycle_points_; }
  std::vector<ChainSlice>& chain_slices() { return chain_slices_; }
  std::vector<char>& limit_flags() { return limit_flags_; }

  bool operator==(const PointSet&) const = default;

 private:
  std::vector<std::set<std::int64_t>> cycle_points_;
  std::vector<ChainSlice> chain_slices_;
  std::vector<char> limit_flags_;
};

std::string pointset_to_string(const DynamicalSystem& sys, const PointSet& s);

struct Taxonomy {
  PointSet isolated;                  // X_i: every cycle and chain point
  PointSet accumulation;              // X_a: the limits
  PointSet accumulation_of_isolated;  // X_{a,i}: equal to X_a in this class
};

Taxonomy taxonomy(const DynamicalSystem& sys);

// X_r: cycle points are periodic, limits are fixed; chain points drift
// monotonically and never return.
PointSet recurrent_set(const DynamicalSystem& sys);

// X_w: chain singletons are open with pairwise disjoint iterates; cycle
// points are periodic and every neighborhood of a limit meets its own image
// through the converging tail.
PointSet wandering_set(const DynamicalSystem& sys);

}  // namespace semicross
