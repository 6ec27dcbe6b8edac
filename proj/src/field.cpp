#include "ppa/field.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace ppa {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime(p) || p <= 2) throw std::invalid_argument("FieldSpec: p must be an odd prime, got " + std::to_string(p));
  if (p >= (1ull << 31)) throw std::invalid_argument("FieldSpec: p too large");
  return FieldSpec{Kind::Prime, p};
}

FieldSpec FieldSpec::parse(const std::string& s) {
  if (s == "Q" || s == "q") return rationals();
  if (s == "Fp") return prime(10007);  // default working prime
  if (s.rfind("Fp:", 0) == 0) return prime(std::stoull(s.substr(3)));
  throw std::invalid_argument("FieldSpec: expected 'Q' or 'Fp:<p>', got '" + s + "'");
}

std::string FieldSpec::to_string() const {
  return is_rational() ? "Q" : "Fp:" + std::to_string(p);
}

Scalar Scalar::from_int(long long v, const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  if (f.is_rational()) {
    s.rat_ = Rational(v);
  } else {
    long long m = v % static_cast<long long>(f.p);
    if (m < 0) m += static_cast<long long>(f.p);
    s.val_ = static_cast<std::uint64_t>(m);
  }
  return s;
}

Scalar Scalar::from_rational(const Rational& r, const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  if (f.is_rational()) {
    s.rat_ = r;
    return s;
  }
  BigInt p(static_cast<long long>(f.p));
  BigInt nm = r.num() % p;
  if (nm.is_negative()) nm = nm + p;
  BigInt dm = r.den() % p;
  std::uint64_t den = static_cast<std::uint64_t>(dm.to_int64());
  if (den == 0) throw std::domain_error("Scalar: denominator divisible by p");
  s.val_ = static_cast<std::uint64_t>(nm.to_int64()) % f.p * mod_inverse(den, f.p) % f.p;
  return s;
}

Scalar Scalar::from_string(const std::string& str, const FieldSpec& f) {
  return from_rational(Rational::from_string(str), f);
}

bool Scalar::is_zero() const { return field_.is_rational() ? rat_.is_zero() : val_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? rat_ == Rational(1) : val_ == 1; }

std::string Scalar::to_string() const {
  return field_.is_rational() ? rat_.to_string() : std::to_string(val_);
}

const Rational& Scalar::rat() const {
  if (!field_.is_rational()) throw std::logic_error("Scalar: rat() on prime-field element");
  return rat_;
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rational()) throw std::logic_error("Scalar: residue() on rational element");
  return val_;
}

void Scalar::check_same(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_)
    throw std::invalid_argument("Scalar: mixed fields " + a.field_.to_string() + " and " + b.field_.to_string());
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational())
    r.rat_ = -r.rat_;
  else
    r.val_ = val_ == 0 ? 0 : field_.p - val_;
  return r;
}

Scalar Scalar::inverse() const {
  Scalar r = *this;
  if (field_.is_rational()) {
    r.rat_ = rat_.inverse();
  } else {
    if (val_ == 0) throw std::domain_error("Scalar: inverse of zero");
    r.val_ = mod_inverse(val_, field_.p);
  }
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar r = Scalar::one(field_), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar::check_same(a, b);
  Scalar r = a;
  if (a.field_.is_rational())
    r.rat_ = a.rat_ + b.rat_;
  else
    r.val_ = (a.val_ + b.val_) % a.field_.p;
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar::check_same(a, b);
  Scalar r = a;
  if (a.field_.is_rational())
    r.rat_ = a.rat_ * b.rat_;
  else
    r.val_ = a.val_ * b.val_ % a.field_.p;
  return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rational() ? a.rat_ == b.rat_ : a.val_ == b.val_;
}

std::size_t Scalar::hash() const {
  return field_.is_rational() ? rat_.hash() : static_cast<std::size_t>(val_ * 0x9e3779b97f4a7c15ull);
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("mod_inverse: zero");
  return mod_pow(a % p, p - 2, p);
}

std::uint64_t primitive_root(std::uint64_t p) {
  // factor p-1 by trial division
  std::uint64_t n = p - 1;
  std::vector<std::uint64_t> fac;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fac.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fac.push_back(n);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::uint64_t q : fac)
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

std::optional<Scalar> root_of_unity(const FieldSpec& f, std::uint64_t m) {
  if (m == 0) return std::nullopt;
  if (f.is_rational()) {
    if (m == 1) return Scalar::one(f);
    if (m == 2) return -Scalar::one(f);
    return std::nullopt;
  }
  if ((f.p - 1) % m != 0) return std::nullopt;
  std::uint64_t g = primitive_root(f.p);
  return Scalar::from_int(static_cast<long long>(mod_pow(g, (f.p - 1) / m, f.p)), f);
}

std::optional<Scalar> nth_root(const Scalar& c, std::uint64_t n) {
  const FieldSpec& f = c.field();
  if (n == 0) return std::nullopt;
  if (c.is_zero()) return Scalar::zero(f);
  if (f.is_rational()) {
    const Rational& r = c.rat();
    bool neg = r.sign() < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    BigInt an = r.num().abs(), ad = r.den();
    BigInt rn = BigInt::iroot(an, n), rd = BigInt::iroot(ad, n);
    if (BigInt::pow(rn, n) != an || BigInt::pow(rd, n) != ad) return std::nullopt;
    return Scalar::from_rational(Rational(neg ? -rn : rn, rd), f);
  }
  // discrete log against a primitive root
  std::uint64_t p = f.p, g = primitive_root(p);
  std::uint64_t target = c.residue();
  std::uint64_t log = 0, cur = 1;
  bool found = false;
  for (std::uint64_t k = 0; k < p - 1; ++k) {
    if (cur == target) {
      log = k;
      found = true;
      break;
    }
    cur = cur * g % p;
  }
  if (!found) return std::nullopt;
  // solve n*x = log  (mod p-1) via extended Euclid
  std::uint64_t m = p - 1;
  std::uint64_t nr = n % m;
  std::uint64_t d = std::gcd(nr == 0 ? m : nr, m);
  if (log % d != 0) return std::nullopt;
  std::uint64_t n2 = nr / d, m2 = m / d, l2 = log / d;
  std::uint64_t x = 0;
  if (m2 > 1) {
    std::int64_t t = 0, newt = 1, r = static_cast<std::int64_t>(m2), newr = static_cast<std::int64_t>(n2 % m2);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += static_cast<std::int64_t>(m2);
    x = static_cast<std::uint64_t>(t) * (l2 % m2) % m2;
  }
  return Scalar::from_int(static_cast<long long>(mod_pow(g, x, p)), f);
}

}  // namespace ppa
