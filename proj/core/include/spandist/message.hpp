#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace spandist {

using Bytes = std::vector<std::uint8_t>;

// LEB128 varints; lists of ascending ids are delta coded.
class MessageWriter {
 public:
  MessageWriter& put(std::uint64_t x) {
    do {
      std::uint8_t b = x & 0x7f;
      x >>= 7;
      if (x) b |= 0x80;
      buf_.push_back(b);
    } while (x);
    return *this;
  }
  MessageWriter& put_signed(std::int64_t x) {
    return put(x >= 0 ? static_cast<std::uint64_t>(x) << 1 : (static_cast<std::uint64_t>(-(x + 1)) << 1) | 1);
  }
  template <typename T>
  MessageWriter& put_ascending(std::span<const T> xs) {
    put(xs.size());
    std::uint64_t prev = 0;
    for (T x : xs) {
      auto u = static_cast<std::uint64_t>(x);
      if (u < prev) throw std::invalid_argument("list is not ascending");
      put(u - prev);
      prev = u;
    }
    return *this;
  }
  template <typename T>
  MessageWriter& put_ascending(const std::vector<T>& xs) {
    return put_ascending(std::span<const T>(xs));
  }
  Bytes take() { return std::move(buf_); }
  std::size_t size() const { return buf_.size(); }

 private:
  Bytes buf_;
};

class MessageReader {
 public:
  explicit MessageReader(const Bytes& b) : b_(b) {}
  std::uint64_t get() {
    std::uint64_t x = 0;
    int shift = 0;
    for (;;) {
      if (pos_ >= b_.size()) throw std::out_of_range("truncated message");
      std::uint8_t c = b_[pos_++];
      x |= static_cast<std::uint64_t>(c & 0x7f) << shift;
      if (!(c & 0x80)) return x;
      shift += 7;
      if (shift > 63) throw std::out_of_range("varint too long");
    }
  }
  std::int64_t get_signed() {
    std::uint64_t z = get();
    return (z & 1) ? -static_cast<std::int64_t>(z >> 1) - 1 : static_cast<std::int64_t>(z >> 1);
  }
  template <typename T>
  std::vector<T> get_ascending() {
    std::uint64_t n = get();
    std::vector<T> out;
    out.reserve(n);
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      prev += get();
      out.push_back(static_cast<T>(prev));
    }
    return out;
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  const Bytes& b_;
  std::size_t pos_ = 0;
};

}  // namespace spandist
