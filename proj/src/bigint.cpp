#include "ppa/bigint.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ppa {

BigInt::BigInt(long long v) {
  neg_ = v < 0;
  unsigned long long m = neg_ ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
  while (m > 0) {
    limbs_.push_back(static_cast<std::uint32_t>(m % kBase));
    m /= kBase;
  }
}

BigInt::BigInt(const std::string& s) { *this = from_string(s); }

BigInt BigInt::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("BigInt: empty string");
  std::size_t pos = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw std::invalid_argument("BigInt: no digits in '" + s + "'");
  for (std::size_t i = pos; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
  BigInt r;
  r.neg_ = neg;
  std::size_t n = s.size();
  for (std::size_t end = n; end > pos;) {
    std::size_t begin = end >= pos + 9 ? end - 9 : pos;
    r.limbs_.push_back(static_cast<std::uint32_t>(std::stoul(s.substr(begin, end - begin))));
    end = begin;
  }
  r.trim();
  return r;
}

std::string BigInt::to_string() const {
  if (limbs_.empty()) return "0";
  std::string out = neg_ ? "-" : "";
  out += std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs_[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (std::size_t i = a.limbs_.size(); i-- > 0;)
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.limbs_.resize(std::max(a.limbs_.size(), b.limbs_.size()) + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
    std::uint64_t s = carry;
    if (i < a.limbs_.size()) s += a.limbs_[i];
    if (i < b.limbs_.size()) s += b.limbs_[i];
    r.limbs_[i] = static_cast<std::uint32_t>(s % kBase);
    carry = s / kBase;
  }
  r.trim();
  return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.limbs_.resize(a.limbs_.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::int64_t s = static_cast<std::int64_t>(a.limbs_[i]) - borrow - (i < b.limbs_.size() ? b.limbs_[i] : 0);
    if (s < 0) {
      s += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.limbs_[i] = static_cast<std::uint32_t>(s);
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.limbs_.empty()) r.neg_ = !r.neg_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.neg_ = false;
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.neg_ == b.neg_) {
    BigInt r = BigInt::add_mag(a, b);
    r.neg_ = a.neg_ && !r.limbs_.empty();
    return r;
  }
  int c = BigInt::cmp_mag(a, b);
  if (c == 0) return BigInt();
  BigInt r = c > 0 ? BigInt::sub_mag(a, b) : BigInt::sub_mag(b, a);
  r.neg_ = (c > 0 ? a.neg_ : b.neg_) && !r.limbs_.empty();
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.is_zero() || b.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur % BigInt::kBase);
      carry = cur / BigInt::kBase;
    }
    std::size_t k = i + b.limbs_.size();
    while (carry > 0) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur % BigInt::kBase);
      carry = cur / BigInt::kBase;
      ++k;
    }
  }
  r.neg_ = a.neg_ != b.neg_;
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
  if (cmp_mag(a, b) < 0) {
    q = BigInt();
    r = a;
    return;
  }
  BigInt bm = b.abs();
  BigInt rem;                  // running remainder, nonnegative
  std::vector<std::uint32_t> qd(a.limbs_.size(), 0);
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    // rem = rem * base + next limb
    rem.limbs_.insert(rem.limbs_.begin(), a.limbs_[i]);
    rem.trim();
    // binary search the quotient limb
    std::uint32_t lo = 0, hi = kBase - 1, best = 0;
    while (lo <= hi) {
      std::uint32_t mid = lo + (hi - lo) / 2;
      if (cmp_mag(bm * BigInt(static_cast<long long>(mid)), rem) <= 0) {
        best = mid;
        if (mid == kBase - 1) break;
        lo = mid + 1;
      } else {
        if (mid == 0) break;
        hi = mid - 1;
      }
    }
    qd[i] = best;
    rem = sub_mag(rem, bm * BigInt(static_cast<long long>(best)));
  }
  q.limbs_ = std::move(qd);
  q.neg_ = a.neg_ != b.neg_;
  q.trim();
  r = rem;
  r.neg_ = a.neg_ && !r.limbs_.empty();
  r.trim();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return r;
}

bool operator==(const BigInt& a, const BigInt& b) { return a.neg_ == b.neg_ && a.limbs_ == b.limbs_; }

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.neg_ != b.neg_) return a.neg_;
  int c = BigInt::cmp_mag(a, b);
  return a.neg_ ? c > 0 : c < 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.neg_ = false;
  b.neg_ = false;
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt BigInt::pow(const BigInt& base, std::uint64_t exp) {
  BigInt r(1), b = base;
  while (exp > 0) {
    if (exp & 1) r = r * b;
    b = b * b;
    exp >>= 1;
  }
  return r;
}

BigInt BigInt::iroot(const BigInt& a, std::uint64_t k) {
  if (a.is_negative()) throw std::domain_error("BigInt: iroot of negative");
  if (k == 0) throw std::domain_error("BigInt: zeroth root");
  if (a.is_zero() || k == 1) return a;
  BigInt lo(0), hi = a + BigInt(1);
  while (lo + BigInt(1) < hi) {
    BigInt mid = (lo + hi) / BigInt(2);
    if (pow(mid, k) <= a)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

bool BigInt::fits_int64() const {
  static const BigInt kMax(std::numeric_limits<std::int64_t>::max());
  static const BigInt kMin(std::numeric_limits<std::int64_t>::min());
  return *this <= kMax && kMin <= *this;
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
  std::int64_t v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = v * static_cast<std::int64_t>(kBase) + limbs_[i];
  return neg_ ? -v : v;
}

std::size_t BigInt::hash() const {
  std::size_t h = neg_ ? 0x9e3779b97f4a7c15ull : 0x2545f4914f6cdd1dull;
  for (std::uint32_t l : limbs_) h = h * 1099511628211ull ^ l;
  return h;
}

}  // namespace ppa
