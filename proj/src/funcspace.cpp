#include "semicross/funcspace.hpp"

#include <algorithm>

namespace semicross {

ModelFunction::ModelFunction(SystemPtr sys)
    : sys_(std::move(sys)),
      cycle_values_(sys_->cycles().size()),
      chain_values_(sys_->chains().size()),
      limit_values_(sys_->limits().size()) {}

ModelFunction ModelFunction::indicator(SystemPtr sys, const std::vector<Point>& points) {
  ModelFunction f(std::move(sys));
  for (const Point& p : points) {
    f.sys_->require(p);
    switch (p.kind) {
      case PointKind::Cycle:
        f.set_cycle_value(p.owner, p.index, Scalar(1));
        break;
      case PointKind::Chain:
        f.set_chain_exception(p.owner, p.index, Scalar(1));
        break;
      case PointKind::Limit:
        throw NotIsolated("indicator of an accumulation point is discontinuous");
    }
  }
  return f;
}

Scalar ModelFunction::eval(const Point& p) const {
  sys_->require(p);
  switch (p.kind) {
    case PointKind::Cycle: {
      const auto& m = cycle_values_[p.owner];
      auto it = m.find(p.index);
      return it != m.end() ? it->second : Scalar();
    }
    case PointKind::Chain:
      return chain_values_[p.owner].at(p.index);
    case PointKind::Limit:
      return limit_values_[p.owner];
  }
  return Scalar();
}

void ModelFunction::set_cycle_value(int cycle, std::int64_t index, const Scalar& v) {
  sys_->require(Point::cycle(cycle, index));
  if (v.is_zero())
    cycle_values_[cycle].erase(index);
  else
    cycle_values_[cycle][index] = v;
}

void ModelFunction::set_chain_exception(int chain, std::int64_t index, const Scalar& v) {
  sys_->require(Point::chain(chain, index));
  ChainValues& cv = chain_values_[chain];
  const Scalar& ambient = index < 0 ? cv.minus_tail : cv.plus_tail;
  if (v == ambient)
    cv.exceptions.erase(index);
  else
    cv.exceptions[index] = v;
}

void ModelFunction::set_chain_tails(int chain, const Scalar& minus, const Scalar& plus) {
  ChainValues& cv = chain_values_[chain];
  cv.minus_tail = minus;
  cv.plus_tail = plus;
  // Re-normalize stored exceptions against the new ambient values.
  std::map<std::int64_t, Scalar> keep;
  for (auto& [j, v] : cv.exceptions) {
    const Scalar& ambient = j < 0 ? cv.minus_tail : cv.plus_tail;
    if (!(v == ambient)) keep[j] = v;
  }
  cv.exceptions = std::move(keep);
}

void ModelFunction::set_limit_value(int limit, const Scalar& v) {
  sys_->require(Point::limit(limit));
  limit_values_[limit] = v;
}

bool ModelFunction::is_zero() const {
  for (const auto& m : cycle_values_)
    if (!m.empty()) return false;
  for (const auto& cv : chain_values_)
    if (!cv.minus_tail.is_zero() || !cv.plus_tail.is_zero() || !cv.exceptions.empty()) return false;
  for (const auto& v : limit_values_)
    if (!v.is_zero()) return false;
  return true;
}

C0Report ModelFunction::validate() const {
  C0Report r;
  for (std::size_t c = 0; c < chain_values_.size(); ++c) {
    const ChainDesc& desc = sys_->chains()[c];
    const ChainValues& cv = chain_values_[c];
    auto check = [&](const ChainEnd& end, const Scalar& tail, bool plus) {
      if (end.infinite) {
        if (!tail.is_zero())
          r.issues.push_back({C0Issue::Kind::VanishingViolation, (int)c, plus, Scalar(), tail});
      } else {
        const Scalar& lv = limit_values_[end.limit];
        if (!(tail == lv))
          r.issues.push_back({C0Issue::Kind::Discontinuous, (int)c, plus, lv, tail});
      }
    };
    check(desc.minus_end, cv.minus_tail, false);
    check(desc.plus_end, cv.plus_tail, true);
  }
  return r;
}

void ModelFunction::normalize() {
  for (std::size_t c = 0; c < cycle_values_.size(); ++c) {
    std::map<std::int64_t, Scalar> keep;
    for (auto& [i, v] : cycle_values_[c])
      if (!v.is_zero()) keep[i] = v;
    cycle_values_[c] = std::move(keep);
  }
  for (auto& cv : chain_values_) {
    std::map<std::int64_t, Scalar> keep;
    for (auto& [j, v] : cv.exceptions) {
      const Scalar& ambient = j < 0 ? cv.minus_tail : cv.plus_tail;
      if (!(v == ambient)) keep[j] = v;
    }
    cv.exceptions = std::move(keep);
  }
}

void ModelFunction::require_same(const ModelFunction& o) const {
  if (sys_ != o.sys_) throw SystemMismatch("functions live over different systems");
}

namespace {
Scalar apply_mode(PointwiseMode mode, const Scalar& a, const Scalar& b) {
  switch (mode) {
    case PointwiseMode::Add:
      return a + b;
    case PointwiseMode::Sub:
      return a - b;
    case PointwiseMode::Mul:
      return a * b;
  }
  return Scalar();
}
}  // namespace

ModelFunction pointwise(PointwiseMode mode, const ModelFunction& f, const ModelFunction& g) {
  if (f.system() != g.system()) throw SystemMismatch("functions live over different systems");
  ModelFunction out(f.system());
  const auto& sys = *f.system();
  for (std::size_t c = 0; c < sys.cycles().size(); ++c) {
    std::set<std::int64_t> idx;
    for (const auto& [i, v] : f.cycle_values()[c]) idx.insert(i);
    for (const auto& [i, v] : g.cycle_values()[c]) idx.insert(i);
    for (std::int64_t i : idx)
      out.set_cycle_value((int)c, i,
                          apply_mode(mode, f.eval(Point::cycle((int)c, i)),
                                     g.eval(Point::cycle((int)c, i))));
  }
  for (std::size_t c = 0; c < sys.chains().size(); ++c) {
    const ChainValues& fa = f.chain_values()[c];
    const ChainValues& ga = g.chain_values()[c];
    out.set_chain_tails((int)c, apply_mode(mode, fa.minus_tail, ga.minus_tail),
                        apply_mode(mode, fa.plus_tail, ga.plus_tail));
    std::set<std::int64_t> idx;
    for (const auto& [j, v] : fa.exceptions) idx.insert(j);
    for (const auto& [j, v] : ga.exceptions) idx.insert(j);
    for (std::int64_t j : idx)
      out.set_chain_exception((int)c, j, apply_mode(mode, fa.at(j), ga.at(j)));
  }
  for (std::size_t i = 0; i < sys.limits().size(); ++i)
    out.set_limit_value((int)i,
                        apply_mode(mode, f.limit_values()[i], g.limit_values()[i]));
  return out;
}

ModelFunction ModelFunction::operator+(const ModelFunction& o) const {
  return pointwise(PointwiseMode::Add, *this, o);
}
ModelFunction ModelFunction::operator-(const ModelFunction& o) const {
  return pointwise(PointwiseMode::Sub, *this, o);
}
ModelFunction ModelFunction::operator*(const ModelFunction& o) const {
  return pointwise(PointwiseMode::Mul, *this, o);
}

ModelFunction ModelFunction::scaled(const Scalar& factor) const {
  ModelFunction out(sys_);
  for (std::size_t c = 0; c < cycle_values_.size(); ++c)
    for (const auto& [i, v] : cycle_values_[c]) out.set_cycle_value((int)c, i, v * factor);
  for (std::size_t c = 0; c < chain_values_.size(); ++c) {
    const ChainValues& cv = chain_values_[c];
    out.set_chain_tails((int)c, cv.minus_tail * factor, cv.plus_tail * factor);
    for (const auto& [j, v] : cv.exceptions) out.set_chain_exception((int)c, j, v * factor);
  }
  for (std::size_t i = 0; i < limit_values_.size(); ++i)
    out.set_limit_value((int)i, limit_values_[i] * factor);
  return out;
}

ModelFunction ModelFunction::abs_sq() const {
  ModelFunction out(sys_);
  for (std::size_t c = 0; c < cycle_values_.size(); ++c)
    for (const auto& [i, v] : cycle_values_[c])
      out.set_cycle_value((int)c, i, Scalar(v.abs_sq()));
  for (std::size_t c = 0; c < chain_values_.size(); ++c) {
    const ChainValues& cv = chain_values_[c];
    out.set_chain_tails((int)c, Scalar(cv.minus_tail.abs_sq()), Scalar(cv.plus_tail.abs_sq()));
    for (const auto& [j, v] : cv.exceptions)
      out.set_chain_exception((int)c, j, Scalar(v.abs_sq()));
  }
  for (std::size_t i = 0; i < limit_values_.size(); ++i)
    out.set_limit_value((int)i, Scalar(limit_values_[i].abs_sq()));
  return out;
}

ModelFunction ModelFunction::compose_power(std::int64_t k) const {
  ModelFunction out(sys_);
  for (std::size_t c = 0; c < cycle_values_.size(); ++c) {
    std::int64_t len = sys_->cycle_length((int)c);
    for (const auto& [i, v] : cycle_values_[c]) {
      std::int64_t shifted = (i + k) % len;
      if (shifted < 0) shifted += len;
      out.set_cycle_value((int)c, shifted, v);
    }
  }
  for (std::size_t c = 0; c < chain_values_.size(); ++c) {
    const ChainValues& cv = chain_values_[c];
    out.set_chain_tails((int)c, cv.minus_tail, cv.plus_tail);
    for (const auto& [j, v] : cv.exceptions) out.set_chain_exception((int)c, j + k, v);
    // The ambient split sits at 0 in both encodings, so indices crossing it
    // pick the wrong tail unless materialized explicitly.
    std::int64_t lo = std::min<std::int64_t>(0, k), hi = std::max<std::int64_t>(0, k);
    for (std::int64_t j = lo; j < hi; ++j)
      if (cv.exceptions.find(j - k) == cv.exceptions.end())
        out.set_chain_exception((int)c, j, cv.at(j - k));
  }
  for (std::size_t i = 0; i < limit_values_.size(); ++i)
    out.set_limit_value((int)i, limit_values_[i]);
  return out;
}

Rational ModelFunction::sup_norm_sq() const {
  Rational best(0);
  auto consider = [&](const Scalar& v) {
    Rational sq = v.abs_sq();
    if (sq > best) best = sq;
  };
  for (const auto& m : cycle_values_)
    for (const auto& [i, v] : m) consider(v);
  for (const auto& cv : chain_values_) {
    consider(cv.minus_tail);
    consider(cv.plus_tail);
    for (const auto& [j, v] : cv.exceptions) consider(v);
  }
  for (const auto& v : limit_values_) consider(v);
  return best;
}

NormValue ModelFunction::sup_norm() const { return NormValue::from_square(sup_norm_sq()); }

std::pair<PointSet, PointSet> ModelFunction::level_sets(long k) const {
  if (k < 1) throw FuncError("level sets need k >= 1");
  Rational dk_thr = make_ratio(1, k) * make_ratio(1, k);       // (1/k)^2, inclusive
  Rational uk_thr = make_ratio(2, 3 * k) * make_ratio(2, 3 * k);  // (2/3k)^2, strict
  PointSet dk(*sys_), uk(*sys_);
  auto in_dk = [&](const Scalar& v) { return v.abs_sq() >= dk_thr; };
  auto in_uk = [&](const Scalar& v) { return v.abs_sq() > uk_thr; };
  for (std::size_t c = 0; c < cycle_values_.size(); ++c)
    for (const auto& [i, v] : cycle_values_[c]) {
      if (in_dk(v)) dk.insert(Point::cycle((int)c, i));
      if (in_uk(v)) uk.insert(Point::cycle((int)c, i));
    }
  for (std::size_t c = 0; c < chain_values_.size(); ++c) {
    const ChainValues& cv = chain_values_[c];
    auto fill = [&](PointSet& s, auto pred) {
      ChainSlice slice;
      slice.minus_tail = pred(cv.minus_tail);
      slice.plus_tail = pred(cv.plus_tail);
      for (const auto& [j, v] : cv.exceptions) {
        bool base = j < 0 ? slice.minus_tail : slice.plus_tail;
        if (pred(v) != base) slice.toggles.insert(j);
      }
      s.chain_slices()[c] = slice;
    };
    fill(dk, in_dk);
    fill(uk, in_uk);
  }
  for (std::size_t i = 0; i < limit_values_.size(); ++i) {
    if (in_dk(limit_values_[i])) dk.insert(Point::limit((int)i));
    if (in_uk(limit_values_[i])) uk.insert(Point::limit((int)i));
  }
  return {dk, uk};
}

namespace {

// Clamped affine Urysohn weight: 1 on |z| >= 1/k, 0 on |z| <= 2/(3k), and
// 3k|z| - 2 in between. Band values with irrational modulus take a
// deterministic rational lower approximation of the root; every clamp-side
// guarantee is decided on exact squares first.
Rational urysohn_weight(const Scalar& z, long k) {
  Rational sq = z.abs_sq();
  Rational dk_thr = make_ratio(1, k) * make_ratio(1, k);
  Rational uk_thr = make_ratio(2, 3 * k) * make_ratio(2, 3 * k);
  if (sq >= dk_thr) return Rational(1);
  if (sq <= uk_thr) return Rational(0);
  Rational r;
  if (auto root = exact_sqrt(sq))
    r = *root;
  else
    r = approx_sqrt_lower(sq);
  Rational v = Rational(3 * k) * r - 2;
  if (v < 0) return Rational(0);
  if (v > 1) return Rational(1);
  return v;
}

}  // namespace

std::pair<ModelFunction, ModelFunction> ModelFunction::urysohn_cutoff(long k) const {
  if (k < 1) throw FuncError("urysohn cutoff needs k >= 1");
  ModelFunction v(sys_);
  auto w = [&](const Scalar& z) { return Scalar(urysohn_weight(z, k)); };
  for (std::size_t c = 0; c < cycle_values_.size(); ++c)
    for (const auto& [i, val] : cycle_values_[c]) v.set_cycle_value((int)c, i, w(val));
  for (std::size_t c = 0; c < chain_values_.size(); ++c) {
    const ChainValues& cv = chain_values_[c];
    v.set_chain_tails((int)c, w(cv.minus_tail), w(cv.plus_tail));
    for (const auto& [j, val] : cv.exceptions) v.set_chain_exception((int)c, j, w(val));
  }
  for (std::size_t i = 0; i < limit_values_.size(); ++i)
    v.set_limit_value((int)i, w(limit_values_[i]));
  ModelFunction fk = v * (*this);
  return {v, fk};
}

bool ModelFunction::operator==(const ModelFunction& o) const {
  if (sys_ != o.sys_ && !(sys_ && o.sys_ && *sys_ == *o.sys_)) return false;
  return cycle_values_ == o.cycle_values_ && chain_values_ == o.chain_values_ &&
         limit_values_ == o.limit_values_;
}

}  // namespace semicross
