#pragma once

#include <map>
#include <utility>
#include <vector>

#include "semicross/dynsys.hpp"
#include "semicross/scalar.hpp"

namespace semicross {

struct FuncError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SystemMismatch : FuncError {
  using FuncError::FuncError;
};
struct NotIsolated : FuncError {
  using FuncError::FuncError;
};

// Values of one function along one chain: eventually constant in both
// directions. Unstored j < 0 takes the minus tail, unstored j >= 0 the plus
// tail; stored exceptions always differ from that ambient value.
struct ChainValues {
  Scalar minus_tail;
  Scalar plus_tail;
  std::map<std::int64_t, Scalar> exceptions;

  Scalar at(std::int64_t j) const {
    auto it = exceptions.find(j);
    if (it != exceptions.end()) return it->second;
    return j < 0 ? minus_tail : plus_tail;
  }
  bool operator==(const ChainValues&) const = default;
};

struct C0Issue {
  enum class Kind { Discontinuous, VanishingViolation };
  Kind kind;
  int chain;
  bool plus_end;
  Scalar expected;
  Scalar found;
};

struct C0Report {
  std::vector<C0Issue> issues;
  bool ok() const { return issues.empty(); }
};

// A member of the dense subclass of C_0(X): finitely many exceptional values
// plus constant chain tails. Exact arithmetic throughout.
class ModelFunction {
 public:
  ModelFunction() = default;
  explicit ModelFunction(SystemPtr sys);

  static ModelFunction zero(SystemPtr sys) { return ModelFunction(std::move(sys)); }
  // Indicator of a finite set of isolated points; throws NotIsolated if a
  // limit point is passed (its indicator is discontinuous).
  static ModelFunction indicator(SystemPtr sys, const std::vector<Point>& points);

  const SystemPtr& system() const { return sys_; }

  Scalar eval(const Point& p) const;

  void set_cycle_value(int cycle, std::int64_t index, const Scalar& v);
  void set_chain_exception(int chain, std::int64_t index, const Scalar& v);
  void set_chain_tails(int chain, const Scalar& minus, const Scalar& plus);
  void set_limit_value(int limit, const Scalar& v);

  const std::vector<std::map<std::int64_t, Scalar>>& cycle_values() const { return cycle_values_; }
  const std::vector<ChainValues>& chain_values() const { return chain_values_; }
  const std::vector<Scalar>& limit_values() const { return limit_values_; }

  bool is_zero() const;

  // Continuity at converging ends (tail value = limit value) and vanishing at
  // infinite ends.
  C0Report validate() const;

  ModelFunction operator+(const ModelFunction& o) const;
  ModelFunction operator-(const ModelFunction& o) const;
  ModelFunction operator*(const ModelFunction& o) const;
  ModelFunction scaled(const Scalar& factor) const;
  ModelFunction abs_sq() const;  // pointwise |f|^2, real-valued

  // f o phi^k; exceptions shift index by +k since (f o phi^k)(x_j) = f(x_{j-k}).
  ModelFunction compose_power(std::int64_t k) const;

  NormValue sup_norm() const;
  Rational sup_norm_sq() const;

  // D_k = {|f| >= 1/k}, U_k = {|f| > 2/(3k)}.
  std::pair<PointSet, PointSet> level_sets(long k) const;

  // Returns (v, f_k = v*f) with v = 1 on D_k, v = 0 off U_k, 0 <= v <= 1,
  // and v affine in |f| inside the transition band.
  std::pair<ModelFunction, ModelFunction> urysohn_cutoff(long k) const;

  // Structural equality of values; the owning system is compared by shape.
  bool operator==(const ModelFunction& o) const;

  // Normalized form invariant: stored values always differ from the ambient
  // default (tails on chains, zero on cycles).
  void normalize();

 private:
  void require_same(const ModelFunction& o) const;
  SystemPtr sys_;
  std::vector<std::map<std::int64_t, Scalar>> cycle_values_;  // nonzero only
  std::vector<ChainValues> chain_values_;
  std::vector<Scalar> limit_values_;  // dense, default 0
};

// Pointwise combination driver shared by the operators above.
enum class PointwiseMode { Add, Sub, Mul };
ModelFunction pointwise(PointwiseMode mode, const ModelFunction& f, const ModelFunction& g);

}  // namespace semicross
