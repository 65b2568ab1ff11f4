#include "spandist/rational.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace spandist {

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

std::string Ratio::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Ratio Ratio::parse(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      std::int64_t n = std::stoll(a, &p1), d = std::stoll(b, &p2);
      if (p1 != a.size() || p2 != b.size() || d == 0) throw bad();
      return Ratio(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      std::size_t p = 0;
      std::int64_t n = std::stoll(text, &p);
      if (p != text.size()) throw bad();
      return Ratio(n);
    }
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos)
      throw bad();
    bool neg = !whole.empty() && whole[0] == '-';
    std::int64_t w = 0;
    if (!whole.empty() && whole != "-" && whole != "+") {
      std::size_t p = 0;
      w = std::stoll(whole, &p);
      if (p != whole.size()) throw bad();
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t f = std::stoll(frac);
    std::int64_t mag = (w < 0 ? -w : w) * scale + f;
    return Ratio(neg ? -mag : mag, scale);
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

Rounded Rounded::of(const Ratio& rho) {
  if (rho.num() < 0) throw std::domain_error("negative density");
  if (rho.num() == 0) return zero();
  // Start near log2(num/den) and settle on the smallest 2^e > rho.
  int e = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(rho.num()))) -
          static_cast<int>(std::bit_width(static_cast<std::uint64_t>(rho.den()))) - 1;
  auto greater = [&](int x) { return power(x).value() > rho; };
  while (!greater(e)) ++e;
  while (greater(e - 1)) --e;
  return power(e);
}

Ratio Rounded::value() const {
  if (zero_) return Ratio(0);
  if (exp_ > 62 || exp_ < -62) throw std::overflow_error("rounded density out of range");
  return exp_ >= 0 ? Ratio(std::int64_t{1} << exp_) : Ratio(1, std::int64_t{1} << (-exp_));
}

Ratio Rounded::fraction(int shift) const {
  if (zero_) return Ratio(0);
  return power(exp_ - shift).value();
}

std::uint64_t Rounded::code() const {
  if (zero_) return 0;
  auto z = static_cast<std::uint64_t>(exp_ >= 0 ? 2 * exp_ : -2 * exp_ - 1);
  return z + 1;
}

Rounded Rounded::from_code(std::uint64_t c) {
  if (c == 0) return zero();
  std::uint64_t z = c - 1;
  int e = (z % 2 == 0) ? static_cast<int>(z / 2) : -static_cast<int>((z + 1) / 2);
  return power(e);
}

std::string Rounded::str() const { return zero_ ? "0" : value().str(); }

}  // namespace spandist
