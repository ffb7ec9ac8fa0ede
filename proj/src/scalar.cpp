#include "semicross/scalar.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace semicross {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// digits[.digits][/digits] without sign
Rational parse_unsigned_number(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  std::string intpart;
  while (pos < s.size() && is_digit(s[pos])) intpart += s[pos++];
  if (intpart.empty()) throw std::invalid_argument("expected digits in scalar: " + s);
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::string frac;
    while (pos < s.size() && is_digit(s[pos])) frac += s[pos++];
    if (frac.empty()) throw std::invalid_argument("trailing decimal point in scalar: " + s);
    mpz_class num(intpart + frac, 10);  // explicit base; leading zeros are not octal
    mpz_class den(1);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    std::string den;
    while (pos < s.size() && is_digit(s[pos])) den += s[pos++];
    if (den.empty()) throw std::invalid_argument("missing denominator in scalar: " + s);
    mpz_class num_z(intpart, 10), den_z(den, 10);
    if (den_z == 0) throw std::invalid_argument("zero denominator in scalar: " + s);
    Rational q(num_z, den_z);
    q.canonicalize();
    return q;
  }
  (void)start;
  mpz_class num_z(intpart, 10);
  return Rational(num_z);
}

}  // namespace

Rational make_ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_string(const std::string& text) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    neg = text[pos] == '-';
    ++pos;
  }
  Rational q = parse_unsigned_number(text, pos);
  if (pos != text.size()) throw std::invalid_argument("trailing input in rational: " + text);
  return neg ? Rational(-q) : q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

double rational_to_double(const Rational& q) { return q.get_d(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

Rational approx_sqrt_lower(const Rational& q) {
  if (q <= 0) return Rational(0);
  // sqrt(n/d) = sqrt(n*d)/d; scale by 10^18 before the integer root.
  static const mpz_class scale = [] {
    mpz_class s;
    mpz_ui_pow_ui(s.get_mpz_t(), 10, 18);
    return s;
  }();
  mpz_class prod = q.get_num() * q.get_den() * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
  Rational r(root, q.get_den() * scale);
  r.canonicalize();
  return r;
}

namespace {

// term := 'i' | number ['i']   (sign handled by caller)
Scalar parse_term(const std::string& s, std::size_t& pos) {
  if (pos < s.size() && s[pos] == 'i') {
    ++pos;
    return Scalar(Rational(0), Rational(1));
  }
  Rational q = parse_unsigned_number(s, pos);
  if (pos < s.size() && s[pos] == 'i') {
    ++pos;
    return Scalar(Rational(0), q);
  }
  return Scalar(q);
}

}  // namespace

Scalar scalar_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (s.empty()) throw std::invalid_argument("empty scalar");
  std::size_t pos = 0;
  Scalar out;
  bool first = true;
  while (pos < s.size()) {
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
      neg = s[pos] == '-';
      ++pos;
    } else if (!first) {
      throw std::invalid_argument("expected sign between scalar terms: " + text);
    }
    Scalar term = parse_term(s, pos);
    if (neg) term = -term;
    out += term;
    first = false;
  }
  return out;
}

std::string scalar_to_string(const Scalar& z) {
  if (z.im == 0) return rational_to_string(z.re);
  std::string imag = rational_to_string(z.im) + "i";
  if (z.re == 0) return imag;
  if (z.im > 0) return rational_to_string(z.re) + "+" + imag;
  return rational_to_string(z.re) + imag;  // im < 0 carries its own sign
}

NormValue NormValue::zero() { return from_value(Rational(0)); }

NormValue NormValue::from_square(const Rational& sq) {
  NormValue n;
  n.square = sq;
  n.value = exact_sqrt(sq);
  n.approx = std::sqrt(rational_to_double(sq));
  return n;
}

NormValue NormValue::from_value(const Rational& v) {
  NormValue n;
  n.value = v;
  n.square = v * v;
  n.approx = rational_to_double(v);
  return n;
}

bool NormValue::is_zero() const {
  if (square) return *square == 0;
  return approx == 0.0;
}

NormValue norm_add(const NormValue& a, const NormValue& b) {
  if (a.value && b.value) return NormValue::from_value(*a.value + *b.value);
  NormValue n;
  n.approx = a.approx + b.approx;
  return n;
}

NormValue norm_scale(const NormValue& a, const Rational& factor) {
  if (a.value) return NormValue::from_value(*a.value * factor);
  if (a.square) return NormValue::from_square(*a.square * factor * factor);
  NormValue n;
  n.approx = a.approx * rational_to_double(factor);
  return n;
}

bool norm_less(const NormValue& a, const NormValue& b) {
  if (a.square && b.square) return *a.square < *b.square;
  return a.approx < b.approx;
}

NormValue norm_max(const NormValue& a, const NormValue& b) { return norm_less(a, b) ? b : a; }

NormValue norm_min(const NormValue& a, const NormValue& b) { return norm_less(b, a) ? b : a; }

bool norm_geq(const NormValue& a, const NormValue& b) { return !norm_less(a, b); }

}  // namespace semicross
