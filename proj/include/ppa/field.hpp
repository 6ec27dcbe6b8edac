#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ppa/rational.hpp"

namespace ppa {

struct FieldSpec {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Rational;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return FieldSpec{Kind::Rational, 0}; }
  static FieldSpec prime(std::uint64_t p);
  /// "Q" or "Fp:<p>".
  static FieldSpec parse(const std::string& s);
  std::string to_string() const;

  bool is_rational() const { return kind == Kind::Rational; }
  std::uint64_t characteristic() const { return is_rational() ? 0 : p; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.kind == b.kind && a.p == b.p; }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }
};

bool is_prime(std::uint64_t n);

/// Element of Q or of F_p, tagged with its field. Mixed-field arithmetic throws.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(const FieldSpec& f) { return from_int(0, f); }
  static Scalar one(const FieldSpec& f) { return from_int(1, f); }
  static Scalar from_int(long long v, const FieldSpec& f);
  static Scalar from_rational(const Rational& r, const FieldSpec& f);
  static Scalar from_string(const std::string& s, const FieldSpec& f);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::string to_string() const;

  /// Rational value; only valid over Q.
  const Rational& rat() const;
  /// Residue in [0, p); only valid over F_p.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  FieldSpec field_ = FieldSpec::rationals();
  Rational rat_;            // used over Q
  std::uint64_t val_ = 0;   // used over F_p

  static void check_same(const Scalar& a, const Scalar& b);
};

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

/// Smallest primitive root of F_p.
std::uint64_t primitive_root(std::uint64_t p);

/// Primitive m-th root of unity, if the field has one (over Q only m <= 2).
std::optional<Scalar> root_of_unity(const FieldSpec& f, std::uint64_t m);

/// Solves x^n = c, if solvable in the field.
std::optional<Scalar> nth_root(const Scalar& c, std::uint64_t n);

}  // namespace ppa
