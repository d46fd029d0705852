#include "kloos/spectra.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace kloos {

TruthTable TruthTable::from_function(const Field& f, const std::function<Elem(Elem)>& fn) {
  TruthTable t{f.degree(), std::vector<Elem>(f.size())};
  for (std::uint64_t x = 0; x < f.size(); ++x) t.values[x] = fn(static_cast<Elem>(x));
  return t;
}

TruthTable TruthTable::inverse(const Field& f) {
  return TruthTable{f.degree(), f.inverse_table()};
}

TruthTable TruthTable::identity(const Field& f) {
  return from_function(f, [](Elem x) { return x; });
}

void fwht(std::span<std::int64_t> v) {
  const std::size_t len = v.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t a = v[j];
        const std::int64_t b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

std::int64_t walsh(const Field& f, const TruthTable& F, Elem a, Elem b) {
  std::int64_t sum = 0;
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    const Elem x = static_cast<Elem>(i);
    sum += f.trace(f.mul(a, F(x)) ^ f.mul(b, x)) ? -1 : 1;
  }
  return sum;
}

Spectrum walsh_row(const Field& f, const TruthTable& F, Elem a) {
  // With s indexed by the dual coordinates of x, the transform pairs them
  // with the plain coordinates of b, since Tr(bx) = <dual(x), b>.
  Spectrum s{f.degree(), SpectrumKind::walsh_row, std::vector<std::int64_t>(f.size())};
  const Elem da = f.dual_coords(a);
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    const Elem x = static_cast<Elem>(i);
    s.data[f.dual_coords(x)] = parity(da & F(x)) ? -1 : 1;
  }
  fwht(s.data);
  return s;
}

std::int64_t kloosterman(const Field& f, Elem a) {
  const Elem da = f.dual_coords(a);
  const Elem tm = f.trace_mask();
  std::int64_t sum = 1;  // x = 0
  f.for_each_power(0, f.size() - 1, [&](Elem x, Elem xi) {
    sum += parity((xi & tm) ^ (x & da)) ? -1 : 1;
  });
  return sum;
}

Spectrum kloosterman_spectrum(const Field& f, int max_n) {
  if (f.degree() > max_n)
    throw ResourceError("full Kloosterman spectrum for n = " + std::to_string(f.degree()) +
                        " exceeds the memory cap n <= " + std::to_string(max_n) +
                        "; evaluate kloosterman() pointwise instead");
  Spectrum s{f.degree(), SpectrumKind::kloosterman, std::vector<std::int64_t>(f.size())};
  const Elem tm = f.trace_mask();
  s.data[0] = 1;
  f.for_each_power(0, f.size() - 1, [&](Elem x, Elem xi) {
    s.data[f.dual_coords(x)] = parity(xi & tm) ? -1 : 1;
  });
  fwht(s.data);
  return s;
}

std::vector<Elem> kloosterman_zeros(const Spectrum& s, bool include_zero) {
  std::vector<Elem> out;
  if (include_zero && s.data[0] == 0) out.push_back(0);
  for (std::size_t a = 1; a < s.data.size(); ++a) {
    if (s.data[a] == 0) out.push_back(static_cast<Elem>(a));
  }
  return out;
}

std::vector<Elem> kloosterman_zeros(const Field& f, bool include_zero) {
  return kloosterman_zeros(kloosterman_spectrum(f), include_zero);
}

int diff_uniformity(const Field& f, const TruthTable& F) {
  std::vector<int> count(f.size());
  int best = 0;
  for (std::uint64_t a = 1; a < f.size(); ++a) {
    std::fill(count.begin(), count.end(), 0);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      const int c = ++count[F.values[x] ^ F.values[x ^ a]];
      best = std::max(best, c);
    }
  }
  return best;
}

std::int64_t nonlinearity(const Field& f, const TruthTable& F) {
  std::int64_t max_abs = 0;
  for (std::uint64_t a = 1; a < f.size(); ++a) {
    const Spectrum row = walsh_row(f, F, static_cast<Elem>(a));
    for (auto w : row.data) max_abs = std::max(max_abs, std::abs(w));
  }
  return static_cast<std::int64_t>(f.size() / 2) - max_abs / 2;
}

std::int64_t weil_bound(int n) {
  // floor(sqrt(2^{n+2}))
  const std::uint64_t target = std::uint64_t{1} << (n + 2);
  std::uint64_t r = std::uint64_t{1} << ((n + 2) / 2);
  while ((r + 1) * (r + 1) <= target) ++r;
  return static_cast<std::int64_t>(r);
}

}  // namespace kloos
