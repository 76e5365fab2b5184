#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pqnb {

// Sign-magnitude arbitrary-precision integer, base 2^32 limbs.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);

  static BigInt from_string(const std::string& s);

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  bool is_one() const;

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator/(const BigInt& o) const;  // truncated quotient
  BigInt operator%(const BigInt& o) const;

  bool operator==(const BigInt& o) const;
  bool operator<(const BigInt& o) const;

  BigInt abs() const;
  static BigInt gcd(BigInt a, BigInt b);

  double to_double() const;
  std::string to_string() const;

 private:
  int sign_ = 0;                // -1, 0, +1
  std::vector<uint32_t> mag_;   // little-endian limbs, no trailing zeros

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
  void trim();
};

// Exact rational with normalized representation (den > 0, gcd(num, den) = 1).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);
  Rational(BigInt n, BigInt d);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_integer() const { return den_.is_one(); }
  int sign() const { return num_.sign(); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const;
  bool operator!=(const Rational& o) const { return !(*this == o); }

  Rational abs() const;
  double to_double() const;
  std::string to_string() const;  // "n" or "n/d"

 private:
  BigInt num_, den_;
  void normalize();
};

}  // namespace pqnb
