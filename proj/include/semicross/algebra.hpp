#pragma once

#include <map>

#include "semicross/funcspace.hpp"

namespace semicross {

// A polynomial sum_n U^n f_n with finitely many nonzero Fourier coefficients.
// The product follows U^n f U^m g = U^{n+m} ((f o phi^m) g).
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(SystemPtr sys) : sys_(std::move(sys)) {}

  static AlgebraElement zero(SystemPtr sys) { return AlgebraElement(std::move(sys)); }
  static AlgebraElement monomial(int degree, ModelFunction f);

  const SystemPtr& system() const { return sys_; }
  const std::map<int, ModelFunction>& coefficients() const { return coeffs_; }

  void set_coefficient(int degree, ModelFunction f);
  ModelFunction fourier_coefficient(int n) const;  // E_n, zero when absent

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement scaled(const Scalar& factor) const;

  // ||A||_1 = sum of coefficient sup norms.
  NormValue l1_norm() const;

  // k-th arithmetic mean of the Fourier series:
  // E_n(A_k) = ((k+1-n)/(k+1)) E_n(A) for n <= k, zero above.
  AlgebraElement cesaro_mean(long k) const;

  bool operator==(const AlgebraElement& o) const;

 private:
  void require_same(const AlgebraElement& o) const;
  SystemPtr sys_;
  std::map<int, ModelFunction> coeffs_;  // nonzero coefficients only
};

// M_{A,B}(T) = A * T * B.
AlgebraElement sandwich(const AlgebraElement& a, const AlgebraElement& t,
                        const AlgebraElement& b);

}  // namespace semicross
