#include "graphnet/group.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace graphnet {

namespace {

void require_modulus(int d) {
  if (d < 2) {
    throw std::invalid_argument("modulus must be at least 2, got " + std::to_string(d));
  }
}

}  // namespace

Digit::Digit(int value, int modulus) : value_(value), modulus_(modulus) {
  require_modulus(modulus);
  if (value < 0 || value >= modulus) {
    throw std::invalid_argument("digit " + std::to_string(value) + " outside [0, " +
                                std::to_string(modulus) + ")");
  }
}

int mod_d(std::int64_t value, int d) {
  require_modulus(d);
  auto r = value % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

Digit add_mod(Digit a, Digit b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("modulus mismatch in add_mod");
  }
  return Digit(mod_d(std::int64_t{a.value()} + b.value(), a.modulus()), a.modulus());
}

Complex chi(std::int64_t g, std::int64_t h, int d) {
  // Reduce first so the angle stays in [0, 2 pi).
  const int k = mod_d(mod_d(g, d) * static_cast<std::int64_t>(mod_d(h, d)), d);
  if (k == 0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * k / d;
  return std::polar(1.0, angle);
}

Complex chi(Digit g, Digit h) {
  if (g.modulus() != h.modulus()) {
    throw std::invalid_argument("modulus mismatch in chi");
  }
  return chi(g.value(), h.value(), g.modulus());
}

MultiIndex::MultiIndex(int d_, std::vector<int> vertices_, std::vector<int> digits_)
    : d(d_), vertices(std::move(vertices_)), digits(std::move(digits_)) {
  require_modulus(d);
  if (vertices.size() != digits.size()) {
    throw std::invalid_argument("multi-index length does not match its vertex list");
  }
  for (int g : digits) {
    if (g < 0 || g >= d) throw std::invalid_argument("multi-index digit out of range");
  }
}

MultiIndex MultiIndex::zero(int d, std::vector<int> vertices) {
  std::vector<int> digits(vertices.size(), 0);
  return MultiIndex(d, std::move(vertices), std::move(digits));
}

Complex chi_tuple(const MultiIndex& h, const MultiIndex& h2) {
  if (h.d != h2.d || h.vertices != h2.vertices) {
    throw std::invalid_argument("chi_tuple: multi-indices keyed by different vertices");
  }
  std::int64_t exponent = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    exponent += static_cast<std::int64_t>(h.digits[k]) * h2.digits[k];
  }
  return chi(exponent, 1, h.d);
}

std::size_t checked_pow(int d, std::size_t n, std::size_t limit) {
  require_modulus(d);
  std::size_t result = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (result > limit / static_cast<std::size_t>(d)) {
      throw std::overflow_error("register of " + std::to_string(n) + " digits at d=" +
                                std::to_string(d) + " is too large");
    }
    result *= static_cast<std::size_t>(d);
  }
  return result;
}

std::size_t encode_digits(std::span<const int> digits, int d) {
  std::size_t index = 0;
  for (int g : digits) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(g);
  return index;
}

std::vector<int> decode_index(std::size_t index, std::size_t length, int d) {
  std::vector<int> digits(length, 0);
  for (std::size_t k = length; k-- > 0;) {
    digits[k] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return digits;
}

std::vector<MultiIndex> enumerate_group(std::span<const int> vertices, int d) {
  require_modulus(d);
  const std::size_t count = checked_pow(d, vertices.size());
  std::vector<int> labels(vertices.begin(), vertices.end());
  std::vector<MultiIndex> result;
  result.reserve(count);
  for (std::size_t index = 0; index < count; ++index) {
    result.emplace_back(d, labels, decode_index(index, labels.size(), d));
  }
  return result;
}

}  // namespace graphnet
