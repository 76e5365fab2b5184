#include "pqnb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pqnb {

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  unsigned long long m = v < 0 ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
  while (m) {
    mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
    m >>= 32;
  }
}

BigInt BigInt::from_string(const std::string& s) {
  BigInt r;
  size_t i = 0;
  int sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  if (r.sign_ != 0) r.sign_ = sign;
  return r;
}

bool BigInt::is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r.push_back(static_cast<uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) r.push_back(static_cast<uint32_t>(carry));
  return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  // requires a >= b
  std::vector<uint32_t> r;
  r.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (s < 0) {
      s += (int64_t(1) << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<uint32_t>(s));
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = r[i + j] + static_cast<uint64_t>(a[i]) * b[j] + carry;
      r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = r[k] + carry;
      r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Shift-subtract long division. Operand sizes in this library stay small,
// so the bit loop is not a bottleneck.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  if (b.empty()) throw std::domain_error("BigInt: division by zero");
  q.assign(a.size(), 0);
  r.clear();
  for (size_t limb = a.size(); limb-- > 0;) {
    for (int bit = 31; bit >= 0; --bit) {
      // r = (r << 1) | a.bit(limb,bit)
      uint32_t carry = (a[limb] >> bit) & 1u;
      for (size_t i = 0; i < r.size(); ++i) {
        uint32_t nc = r[i] >> 31;
        r[i] = (r[i] << 1) | carry;
        carry = nc;
      }
      if (carry) r.push_back(carry);
      if (cmp_mag(r, b) >= 0) {
        r = sub_mag(r, b);
        q[limb] |= (1u << bit);
      }
    }
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  BigInt r;
  if (sign_ == o.sign_) {
    r.mag_ = add_mag(mag_, o.mag_);
    r.sign_ = sign_;
  } else {
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.mag_ = sub_mag(mag_, o.mag_);
      r.sign_ = sign_;
    } else {
      r.mag_ = sub_mag(o.mag_, mag_);
      r.sign_ = o.sign_;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  if (sign_ == 0 || o.sign_ == 0) return r;
  r.mag_ = mul_mag(mag_, o.mag_);
  r.sign_ = sign_ * o.sign_;
  r.trim();
  return r;
}

BigInt BigInt::operator/(const BigInt& o) const {
  std::vector<uint32_t> q, r;
  divmod_mag(mag_, o.mag_, q, r);
  BigInt out;
  out.mag_ = std::move(q);
  out.sign_ = out.mag_.empty() ? 0 : sign_ * o.sign_;
  return out;
}

BigInt BigInt::operator%(const BigInt& o) const {
  std::vector<uint32_t> q, r;
  divmod_mag(mag_, o.mag_, q, r);
  BigInt out;
  out.mag_ = std::move(r);
  out.sign_ = out.mag_.empty() ? 0 : sign_;
  return out;
}

bool BigInt::operator==(const BigInt& o) const { return sign_ == o.sign_ && mag_ == o.mag_; }

bool BigInt::operator<(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_;
  int c = cmp_mag(mag_, o.mag_);
  return sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

double BigInt::to_double() const {
  double v = 0;
  for (size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0 + mag_[i];
  return sign_ < 0 ? -v : v;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::vector<uint32_t> m = mag_;
  std::string digits;
  while (!m.empty()) {
    // divide by 1e9, collecting remainder
    uint64_t rem = 0;
    for (size_t i = m.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | m[i];
      m[i] = static_cast<uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    for (int k = 0; k < 9; ++k) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out;
  if (sign_ < 0) out.push_back('-');
  out.append(digits.rbegin(), digits.rend());
  return out;
}

Rational::Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

bool Rational::is_one() const { return num_.is_one() && den_.is_one(); }

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

Rational Rational::abs() const {
  Rational r = *this;
  if (r.num_.sign() < 0) r.num_ = -r.num_;
  return r;
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

std::string Rational::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace pqnb
