#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace graphnet {

using Complex = std::complex<double>;

/// An element of the cyclic group Z_d.
class Digit {
 public:
  Digit(int value, int modulus);

  int value() const { return value_; }
  int modulus() const { return modulus_; }

  friend bool operator==(const Digit&, const Digit&) = default;

 private:
  int value_;
  int modulus_;
};

Digit add_mod(Digit a, Digit b);

/// Bicharacter exp(2 pi i g h / d).
Complex chi(Digit g, Digit h);

/// Same as chi(Digit, Digit) on raw integers; arguments may be any integers,
/// the product is reduced mod d before exponentiation.
Complex chi(std::int64_t g, std::int64_t h, int d);

/// Representative of `value` in [0, d).
int mod_d(std::int64_t value, int d);

/// A configuration g in Z_d^V, digits keyed by an ordered vertex list.
struct MultiIndex {
  int d = 2;
  std::vector<int> vertices;
  std::vector<int> digits;

  MultiIndex() = default;
  MultiIndex(int d, std::vector<int> vertices, std::vector<int> digits);

  /// All-zero tuple over `vertices`.
  static MultiIndex zero(int d, std::vector<int> vertices);

  std::size_t size() const { return digits.size(); }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Product of per-digit chi values.
Complex chi_tuple(const MultiIndex& h, const MultiIndex& h2);

/// Every element of Z_d^V in mixed-radix order, first vertex most significant.
std::vector<MultiIndex> enumerate_group(std::span<const int> vertices, int d);

/// d^n, throwing std::overflow_error if it exceeds `limit`.
std::size_t checked_pow(int d, std::size_t n, std::size_t limit = std::size_t{1} << 40);

/// Basis-state index of `digits` (first digit most significant).
std::size_t encode_digits(std::span<const int> digits, int d);

/// Inverse of encode_digits for a register of `length` digits.
std::vector<int> decode_index(std::size_t index, std::size_t length, int d);

}  // namespace graphnet
