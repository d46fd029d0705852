#pragma once

// Arithmetic in the binary field F_{2^n}, 2 <= n <= 32, in the polynomial
// basis 1, x, ..., x^{n-1}. Elements are plain machine words.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kloos {

using Elem = std::uint32_t;

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 32;
// Above this degree multiplication falls back from log tables to carry-less
// shift-and-reduce.
inline constexpr int kLogTableMaxDegree = 16;

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReducibleError : public std::invalid_argument {
 public:
  ReducibleError(std::uint64_t poly, std::uint64_t factor);
  std::uint64_t poly() const { return poly_; }
  std::uint64_t factor() const { return factor_; }

 private:
  std::uint64_t poly_;
  std::uint64_t factor_;
};

std::string to_hex(std::uint64_t v);
// Accepts an optional 0x prefix. Throws std::invalid_argument on junk.
std::uint64_t parse_hex(const std::string& s);

inline int parity(std::uint64_t v) { return __builtin_parityll(v); }

// Polynomials over F_2 as bitmasks (bit i = coefficient of x^i).
namespace poly2 {

int degree(std::uint64_t p);
std::uint64_t mod(std::uint64_t a, std::uint64_t m);
// Smallest-degree nontrivial factor (lexicographically least among those),
// or p itself when p is irreducible.
std::uint64_t smallest_factor(std::uint64_t p);
bool is_irreducible(std::uint64_t p);
// Lexicographically smallest irreducible polynomial of degree n.
std::uint64_t default_poly(int n);

}  // namespace poly2

// A linear map F_2^32 -> F_2^32 evaluated through four 256-entry lookups.
class ByteSlicedMap {
 public:
  ByteSlicedMap() = default;
  // columns[j] is the image of bit j.
  explicit ByteSlicedMap(std::span<const Elem> columns);

  Elem operator()(Elem x) const {
    return tables_[0][x & 0xff] ^ tables_[1][(x >> 8) & 0xff] ^
           tables_[2][(x >> 16) & 0xff] ^ tables_[3][x >> 24];
  }

 private:
  std::array<std::array<Elem, 256>, 4> tables_{};
};

class Field {
 public:
  // Uses the default polynomial for n when poly is empty.
  explicit Field(int n, std::optional<std::uint64_t> poly = std::nullopt);

  int degree() const { return n_; }
  std::uint64_t poly() const { return poly_; }
  Elem mask() const { return mask_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  Elem add(Elem a, Elem b) const { return a ^ b; }
  Elem mul(Elem a, Elem b) const;
  Elem sqr(Elem a) const { return mul(a, a); }
  Elem pow(Elem a, std::uint64_t e) const;
  // a^{2^k}
  Elem frobenius(Elem a, int k) const;
  // a^{2^n - 2}; maps 0 to 0.
  Elem inv0(Elem a) const;

  int trace(Elem a) const { return parity(a & trace_mask_); }
  Elem trace_mask() const { return trace_mask_; }

  // gram()[i] has bit j = Tr(x^i * x^j).
  const std::vector<Elem>& gram() const { return gram_; }
  const std::vector<Elem>& dual_basis() const { return dual_; }
  // Bit i of the result is Tr(a * x^i), i.e. the coordinates of a in the
  // dual basis. Tr(a*b) = parity(dual_coords(a) & b).
  Elem dual_coords(Elem a) const { return to_dual_(a); }
  Elem from_dual_coords(Elem c) const { return from_dual_(c); }

  // Coefficients of prod_{i<n} (X + a^{2^i}) as a bitmask of degree n.
  std::uint64_t char_poly(Elem a) const;

  // The 2^d fixed points of a -> a^{2^d}; d must divide n.
  std::vector<Elem> subfield_elements(int d) const;

  // A generator of the multiplicative group.
  Elem generator() const { return generator_; }

  // Multiplication by a fixed constant as a table-driven linear map.
  ByteSlicedMap multiplier(Elem c) const;

  // Calls fn(x, x^{-1}) for x = g^i, i in [begin, end), g = generator().
  template <class Fn>
  void for_each_power(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (begin >= end) return;
    const ByteSlicedMap up = multiplier(generator_);
    const ByteSlicedMap down = multiplier(inv0(generator_));
    Elem x = pow(generator_, begin);
    Elem xi = inv0(x);
    for (std::uint64_t i = begin; i < end; ++i) {
      fn(x, xi);
      x = up(x);
      xi = down(xi);
    }
  }

  // Table of x^{-1} for every x (0 -> 0). Memory 4 * 2^n bytes.
  std::vector<Elem> inverse_table() const;

 private:
  Elem mul_slow(Elem a, Elem b) const;

  int n_ = 0;
  std::uint64_t poly_ = 0;
  Elem mask_ = 0;
  Elem trace_mask_ = 0;
  Elem generator_ = 0;
  std::vector<Elem> gram_;
  std::vector<Elem> dual_;
  ByteSlicedMap to_dual_;
  ByteSlicedMap from_dual_;
  // x^n * h mod poly for the high half of a carry-less product.
  ByteSlicedMap reduce_high_;
  // Log/antilog tables, shared between copies; empty above kLogTableMaxDegree.
  std::shared_ptr<const std::vector<std::uint32_t>> log_;
  std::shared_ptr<const std::vector<Elem>> exp_;
};

// Inverse of a square bit matrix given by rows (bit j of rows[i] = M[i][j]).
std::optional<std::vector<Elem>> invert_bit_matrix(std::vector<Elem> rows);

// Carry-less 32x32 -> 64 bit product.
std::uint64_t clmul32(std::uint32_t a, std::uint32_t b);

}  // namespace kloos
