#include "rcrt/arith.hpp"

namespace rcrt {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  q_.get_num() = num;
  q_.get_den() = den;
  q_.canonicalize();
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)),
                  parse_integer(text.substr(slash + 1)));
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  if (a == 0 && b == 0) throw std::invalid_argument("ext_gcd(0, 0)");
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(),
             a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("lcm of nonpositive value");
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer lcm_all(std::span<const Integer> values) {
  if (values.empty()) throw std::invalid_argument("lcm of empty list");
  Integer acc = 1;
  for (const auto& v : values) acc = lcm(acc, v);
  return acc;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  if (m < 1) throw std::invalid_argument("mod_inverse modulus must be >= 1");
  if (m == 1) return 0;
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NotInvertible(a.get_str() + " is not invertible modulo " +
                        m.get_str());
  }
  return inv;
}

Integer round_half_up_div(const Integer& num, const Integer& den) {
  if (den <= 0) throw std::invalid_argument("rounding with nonpositive denominator");
  // floor(num/den + 1/2) = floor((2 num + den) / (2 den))
  Integer twice_num = num * 2 + den;
  Integer twice_den = den * 2;
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
  return z;
}

Integer round_half_up(const Rational& x) {
  return round_half_up_div(x.num(), x.den());
}

Integer floor_div(const Integer& a, const Integer& m) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return q;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string Rational::to_decimal(int digits) const {
  if (digits < 0) throw std::invalid_argument("negative digit count");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Integer scaled = round_half_up_div(num() * scale, den());
  const Integer mag = abs(scaled);
  std::string body = mag.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (scaled < 0 ? "-" : "") + body;
}

bool fits_int64(const Integer& value) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return mpz_fits_slong_p(value.get_mpz_t()) != 0;
}

std::int64_t to_int64(const Integer& value) {
  if (!fits_int64(value)) throw std::out_of_range("integer exceeds int64");
  return value.get_si();
}

}  // namespace rcrt
