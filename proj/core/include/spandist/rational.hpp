#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace spandist {

using BigRational = boost::multiprecision::cpp_rational;

// Exact non-huge rational; comparisons cross-multiply in 128 bits.
class Ratio {
 public:
  Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den = 1);  // NOLINT: implicit from integers is intended

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }

  BigRational big() const { return BigRational(num_, den_); }
  // "num/den", always with a slash.
  std::string str() const;
  // Accepts "p/q", integers, and finite decimals like "0.5".
  static Ratio parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Power of two 2^exponent, or zero. Encodes the rounded density.
class Rounded {
 public:
  Rounded() = default;
  static Rounded zero() { return Rounded(); }
  static Rounded power(int exponent) {
    Rounded r;
    r.zero_ = false;
    r.exp_ = exponent;
    return r;
  }
  // Smallest power of two strictly greater than rho; zero when rho == 0.
  static Rounded of(const Ratio& rho);

  bool is_zero() const { return zero_; }
  int exponent() const { return exp_; }
  Ratio value() const;
  // value / 2^shift, e.g. shift 2 gives the quarter threshold.
  Ratio fraction(int shift) const;

  friend std::strong_ordering operator<=>(const Rounded& a, const Rounded& b) {
    if (a.zero_ || b.zero_) return (a.zero_ ? 0 : 1) <=> (b.zero_ ? 0 : 1);
    return a.exp_ <=> b.exp_;
  }
  friend bool operator==(const Rounded& a, const Rounded& b) { return (a <=> b) == 0; }

  // Compact integer code for messages: 0 for zero, else zigzag(exp)+1.
  std::uint64_t code() const;
  static Rounded from_code(std::uint64_t c);
  std::string str() const;

 private:
  bool zero_ = true;
  int exp_ = 0;
};

}  // namespace spandist
