#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ppa {

/// Arbitrary-precision signed integer, sign-magnitude with base-10^9 limbs.
/// Sized for desk-scale exact linear algebra; no attempt at asymptotic speed.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);
  explicit BigInt(const std::string& decimal);

  static BigInt from_string(const std::string& decimal);
  std::string to_string() const;

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return neg_; }
  int sign() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  /// Truncated quotient (rounds toward zero), matching C semantics.
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
  BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
  BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  static BigInt gcd(BigInt a, BigInt b);
  static BigInt pow(const BigInt& base, std::uint64_t exp);

  /// Largest n with n^k <= a (a >= 0). Used for exact k-th roots.
  static BigInt iroot(const BigInt& a, std::uint64_t k);

  bool fits_int64() const;
  std::int64_t to_int64() const;

  std::size_t hash() const;

 private:
  static constexpr std::uint32_t kBase = 1000000000u;
  bool neg_ = false;
  std::vector<std::uint32_t> limbs_;  // little-endian, no leading zeros

  void trim();
  static int cmp_mag(const BigInt& a, const BigInt& b);
  static BigInt add_mag(const BigInt& a, const BigInt& b);
  static BigInt sub_mag(const BigInt& a, const BigInt& b);  // |a| >= |b|
};

}  // namespace ppa
