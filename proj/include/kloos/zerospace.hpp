#pragma once

// Subspaces made of Kloosterman zeros (or of elements whose Kloosterman sum is
// divisible by 16): dimension bounds, exhaustive search, and the identity for
// sums of K_n^2 - K_n over a subspace.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kloos/gf2n.hpp"
#include "kloos/linmap.hpp"
#include "kloos/spectra.hpp"

namespace kloos {

using Int128 = __int128;

std::string to_string(Int128 v);

// Largest dimension of a subspace of Kloosterman zeros, n >= 5.
int theorem_bound_d(int n);
// Largest dimension of a subspace whose Kloosterman sums are all divisible
// by 16, n >= 5.
int mod16_bound(int n);
// floor(n/2) + 1, the bound obtained from the Weil estimate, n >= 3.
int weil_dimension_bound(int n);

// {a : Tr(a) = 0 and Q(a) = 0}, increasing, computed from Q alone. n >= 4.
std::vector<Elem> mod16_set(const Field& f);

enum class TargetSet { zeros, mod16, custom };

std::string_view to_string(TargetSet t);

struct ZeroSpaceReport {
  int n = 0;
  TargetSet target = TargetSet::custom;
  Subspace best_basis;
  int best_dim = 0;
  int bound = 0;
  std::uint64_t nodes_visited = 0;
  // True unless the node budget cut the search short; the reported
  // dimension is then maximal.
  bool exhaustive = true;
};

struct SearchOptions {
  // Require Tr(v w) = 0 between basis vectors; applied only when the whole
  // set lies in the mod-16 set, where it cannot change the result.
  bool prune_isotropic = true;
  // Node budget, 0 = unlimited.
  std::uint64_t budget = 0;
  // Stop as soon as a subspace of dimension `bound` is found.
  bool stop_at_bound = true;
  // Overrides the default bound for the target set.
  std::optional<int> bound;
  unsigned jobs = 1;
};

// A maximum-dimension subspace all of whose nonzero elements lie in `set`
// (0 in `set` is ignored). Depth-first over reduced echelon bases, so every
// subspace is visited at most once.
ZeroSpaceReport max_subspace_in_set(const Field& f, std::span<const Elem> set,
                                    TargetSet target = TargetSet::custom,
                                    const SearchOptions& opts = {});

struct CharpinSides {
  Int128 lhs = 0;
  Int128 rhs = 0;
  Int128 sum_k = 0;  // sum_{a in V} K(a)
};

// lhs = sum_{a in V} (K(a)^2 - K(a)),
// rhs = 2^{n+k} - 2^{n+1} + 2^k sum_{u in V^perp} K(u^{-1}),  k = dim V.
// In general rhs = lhs - sum_k; the two agree iff sum_k = 0.
// Uses `spectrum` when given, else computes one.
CharpinSides charpin_check(const Field& f, const Subspace& v,
                           const Spectrum* spectrum = nullptr);

}  // namespace kloos
