#pragma once

// Walsh transforms, Kloosterman sums and spectra, nonlinearity and
// differential uniformity of functions F_{2^n} -> F_{2^n}.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kloos/gf2n.hpp"

namespace kloos {

// Full spectra hold 2^n 64-bit entries; above this degree only pointwise
// evaluation is offered.
inline constexpr int kDefaultSpectrumCap = 28;

struct TruthTable {
  int n = 0;
  std::vector<Elem> values;  // values[x] = F(x)

  static TruthTable from_function(const Field& f, const std::function<Elem(Elem)>& fn);
  static TruthTable inverse(const Field& f);
  static TruthTable identity(const Field& f);

  Elem operator()(Elem x) const { return values[x]; }
};

enum class SpectrumKind { walsh_row, kloosterman };

struct Spectrum {
  int n = 0;
  SpectrumKind kind = SpectrumKind::walsh_row;
  std::vector<std::int64_t> data;  // indexed by the element

  std::int64_t operator[](Elem a) const { return data[a]; }
};

// In-place unnormalized Walsh-Hadamard transform; size must be a power of 2.
void fwht(std::span<std::int64_t> v);

// W_F(a, b) by direct summation.
std::int64_t walsh(const Field& f, const TruthTable& F, Elem a, Elem b);
// W_F(a, .) for all b via the fast transform.
Spectrum walsh_row(const Field& f, const TruthTable& F, Elem a);

// K_n(a) = sum_x (-1)^{Tr(x^{-1} + a x)}, 0^{-1} = 0.
std::int64_t kloosterman(const Field& f, Elem a);
// K_n(a) for every a. Throws ResourceError above max_n.
Spectrum kloosterman_spectrum(const Field& f, int max_n = kDefaultSpectrumCap);

// Nonzero a with K_n(a) = 0, increasing; a = 0 added when include_zero is set.
std::vector<Elem> kloosterman_zeros(const Field& f, bool include_zero = false);
std::vector<Elem> kloosterman_zeros(const Spectrum& s, bool include_zero = false);

int diff_uniformity(const Field& f, const TruthTable& F);
std::int64_t nonlinearity(const Field& f, const TruthTable& F);

// 2^{n/2+1} rounded down, the largest |K_n(a)| allowed by the Weil bound.
std::int64_t weil_bound(int n);

}  // namespace kloos
