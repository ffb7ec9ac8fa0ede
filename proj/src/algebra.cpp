#include "semicross/algebra.hpp"

#include <set>

namespace semicross {

AlgebraElement AlgebraElement::monomial(int degree, ModelFunction f) {
  if (degree < 0) throw FuncError("degrees live in Z_+");
  AlgebraElement a(f.system());
  a.set_coefficient(degree, std::move(f));
  return a;
}

void AlgebraElement::set_coefficient(int degree, ModelFunction f) {
  if (degree < 0) throw FuncError("degrees live in Z_+");
  if (!sys_) sys_ = f.system();
  if (f.system() != sys_) throw SystemMismatch("coefficient over a different system");
  if (f.is_zero())
    coeffs_.erase(degree);
  else
    coeffs_[degree] = std::move(f);
}

ModelFunction AlgebraElement::fourier_coefficient(int n) const {
  auto it = coeffs_.find(n);
  if (it != coeffs_.end()) return it->second;
  return ModelFunction::zero(sys_);
}

void AlgebraElement::require_same(const AlgebraElement& o) const {
  if (sys_ != o.sys_) throw SystemMismatch("elements live over different systems");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same(o);
  AlgebraElement out(sys_);
  std::set<int> degrees;
  for (const auto& [n, f] : coeffs_) degrees.insert(n);
  for (const auto& [n, f] : o.coeffs_) degrees.insert(n);
  for (int n : degrees) out.set_coefficient(n, fourier_coefficient(n) + o.fourier_coefficient(n));
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  return *this + o.scaled(Scalar(-1));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  require_same(o);
  AlgebraElement out(sys_);
  std::map<int, ModelFunction> acc;
  for (const auto& [n, f] : coeffs_)
    for (const auto& [m, g] : o.coeffs_) {
      ModelFunction term = f.compose_power(m) * g;
      auto it = acc.find(n + m);
      if (it == acc.end())
        acc.emplace(n + m, std::move(term));
      else
        it->second = it->second + term;
    }
  for (auto& [p, f] : acc) out.set_coefficient(p, std::move(f));
  return out;
}

AlgebraElement AlgebraElement::scaled(const Scalar& factor) const {
  AlgebraElement out(sys_);
  for (const auto& [n, f] : coeffs_) out.set_coefficient(n, f.scaled(factor));
  return out;
}

NormValue AlgebraElement::l1_norm() const {
  NormValue total = NormValue::zero();
  for (const auto& [n, f] : coeffs_) total = norm_add(total, f.sup_norm());
  return total;
}

AlgebraElement AlgebraElement::cesaro_mean(long k) const {
  if (k < 0) throw FuncError("cesaro mean needs k >= 0");
  AlgebraElement out(sys_);
  for (const auto& [n, f] : coeffs_) {
    if (n > k) continue;
    Rational weight = make_ratio(k + 1 - n, k + 1);
    out.set_coefficient(n, f.scaled(Scalar(weight)));
  }
  return out;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const { return coeffs_ == o.coeffs_; }

AlgebraElement sandwich(const AlgebraElement& a, const AlgebraElement& t,
                        const AlgebraElement& b) {
  return a * t * b;
}

}  // namespace semicross
