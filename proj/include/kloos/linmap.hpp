#pragma once

// F_2-linear self-maps of F_{2^n}, adjoints with respect to Tr(xy), and
// subspaces in canonical reduced echelon form.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "kloos/gf2n.hpp"

namespace kloos {

// A subspace of F_2^n held as its reduced echelon basis: vectors sorted by
// leading (highest) bit, each leading bit cleared in every other vector.
// Two subspaces are equal iff their bases are equal.
class Subspace {
 public:
  Subspace() = default;  // {0}

  static Subspace span(std::span<const Elem> vectors);
  static Subspace whole(int n);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Elem>& basis() const { return basis_; }
  std::uint64_t size() const { return std::uint64_t{1} << dim(); }

  // x reduced against the basis; zero iff x lies in the subspace.
  Elem reduce(Elem x) const;
  bool contains(Elem x) const { return reduce(x) == 0; }
  // Bit mask of leading positions.
  Elem pivots() const;

  // The element with coordinates c; increasing in c.
  Elem element(std::uint64_t c) const;
  std::vector<Elem> elements() const;

  bool operator==(const Subspace&) const = default;

 private:
  std::vector<Elem> basis_;
};

class LinMap {
 public:
  LinMap() = default;
  // columns[j] is the image of the basis element x^j.
  LinMap(int n, std::vector<Elem> columns);

  static LinMap zero(int n);
  static LinMap identity(int n);
  // Rows of the matrix; bit j of rows[i] is the (i, j) entry.
  static LinMap from_rows(int n, std::span<const Elem> rows);
  // L(x) = sum_i coeffs[i] x^{2^i}, at most n coefficients.
  static LinMap from_linearized(const Field& f, std::span<const Elem> coeffs);
  // x -> c x
  static LinMap multiplication(const Field& f, Elem c);
  // Uniform over all n x n bit matrices.
  static LinMap random(int n, std::mt19937_64& rng);
  // Uniform over invertible n x n bit matrices.
  static LinMap random_invertible(int n, std::mt19937_64& rng);

  int degree() const { return n_; }
  const std::vector<Elem>& columns() const { return cols_; }
  std::vector<Elem> rows() const;
  // Coefficients c_i with L(x) = sum_i c_i x^{2^i}.
  std::vector<Elem> linearized(const Field& f) const;

  Elem apply(Elem x) const {
    Elem r = 0;
    for (int j = 0; x; ++j, x >>= 1) r ^= cols_[j] & (Elem{0} - (x & 1));
    return r;
  }
  Elem operator()(Elem x) const { return apply(x); }

  bool is_zero() const;
  int rank() const;
  bool is_bijective() const { return rank() == n_; }

  bool operator==(const LinMap&) const = default;

 private:
  int n_ = 0;
  std::vector<Elem> cols_;
};

// a o b
LinMap compose(const LinMap& a, const LinMap& b);
LinMap operator+(const LinMap& a, const LinMap& b);
std::optional<LinMap> inverse(const LinMap& l);
LinMap transpose(const LinMap& l);

// The unique L* with Tr(L(x) y) = Tr(x L*(y)): G^{-1} M^T G.
LinMap adjoint(const Field& f, const LinMap& l);

Subspace kernel(const LinMap& l);
Subspace image(const LinMap& l);
// {x : Tr(x v) = 0 for all v in V}
Subspace orthogonal_complement(const Field& f, const Subspace& v);

// Solutions x in F_2^n of parity(rows[i] & x) = 0 for every i.
Subspace solve_homogeneous(int n, std::span<const Elem> rows);

}  // namespace kloos
