#include "kloos/permcheck.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "kloos/zerospace.hpp"

namespace kloos {

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::none: return "none";
    case WitnessKind::collision: return "collision";
    case WitnessKind::spectral_b: return "spectral_b";
    case WitnessKind::kernel_overlap: return "kernel_overlap";
  }
  return "?";
}

std::string_view to_string(PermMethod m) {
  return m == PermMethod::direct ? "direct" : "spectral";
}

std::string_view to_string(SearchMode m) {
  return m == SearchMode::random ? "random" : "structured";
}

PermReport is_permutation(const TruthTable& F) {
  PermReport r;
  r.method = PermMethod::direct;
  // first[y] = 1 + the first x with F(x) = y
  std::vector<std::uint32_t> first(F.values.size(), 0);
  for (std::size_t x = 0; x < F.values.size(); ++x) {
    const Elem y = F.values[x];
    if (first[y]) {
      r.witness = WitnessKind::collision;
      r.x1 = first[y] - 1;
      r.x2 = static_cast<Elem>(x);
      return r;
    }
    first[y] = static_cast<std::uint32_t>(x + 1);
  }
  r.is_perm = true;
  return r;
}

namespace {

void check_degrees(const Field& f, const LinMap& l1, const LinMap& l2) {
  if (l1.degree() != f.degree() || l2.degree() != f.degree())
    throw std::invalid_argument("map and field degrees differ");
}

PermReport direct_with_inverses(const std::vector<Elem>& inv, const LinMap& l1,
                                const LinMap& l2) {
  TruthTable t{l1.degree(), std::vector<Elem>(inv.size())};
  for (std::size_t x = 0; x < inv.size(); ++x)
    t.values[x] = l1(inv[x]) ^ l2(static_cast<Elem>(x));
  return is_permutation(t);
}

// zero[a] = 1 iff K_n(a) = 0, a = 0 included.
std::vector<std::uint8_t> zero_table(const Spectrum& s) {
  std::vector<std::uint8_t> z(s.data.size());
  for (std::size_t a = 0; a < z.size(); ++a) z[a] = s.data[a] == 0;
  return z;
}

bool kernels_meet(const LinMap& a, const LinMap& b, Elem* witness) {
  auto rows = a.rows();
  const auto rb = b.rows();
  rows.insert(rows.end(), rb.begin(), rb.end());
  const Subspace s = solve_homogeneous(a.degree(), rows);
  if (s.dim() == 0) return false;
  if (witness) *witness = s.basis().front();
  return true;
}

// Spectral test on adjoints a = L1*, b = L2*: no common kernel and the
// product a(y) b(y) a Kloosterman zero for every y. Returns the first
// failing y, 0 when none.
Elem first_spectral_failure(const Field& f, const std::vector<std::uint8_t>& zero,
                            const LinMap& a, const LinMap& b) {
  for (std::uint64_t y = 1; y < f.size(); ++y) {
    const Elem e = static_cast<Elem>(y);
    if (!zero[f.mul(a(e), b(e))]) return e;
  }
  return 0;
}

}  // namespace

PermReport perm_direct(const Field& f, const LinMap& l1, const LinMap& l2) {
  check_degrees(f, l1, l2);
  return direct_with_inverses(f.inverse_table(), l1, l2);
}

PermReport perm_spectral(const Field& f, const LinMap& l1, const LinMap& l2,
                         const Spectrum* spectrum) {
  check_degrees(f, l1, l2);
  PermReport r;
  r.method = PermMethod::spectral;
  const LinMap a = adjoint(f, l1);
  const LinMap b = adjoint(f, l2);
  Elem v = 0;
  if (kernels_meet(a, b, &v)) {
    r.witness = WitnessKind::kernel_overlap;
    r.x1 = v;
    return r;
  }
  if (!spectrum && f.degree() > kDefaultSpectrumCap) {
    for (std::uint64_t y = 1; y < f.size(); ++y) {
      const Elem e = static_cast<Elem>(y);
      if (kloosterman(f, f.mul(a(e), b(e))) != 0) {
        r.witness = WitnessKind::spectral_b;
        r.b = e;
        return r;
      }
    }
    r.is_perm = true;
    return r;
  }
  Spectrum local;
  if (!spectrum) {
    local = kloosterman_spectrum(f);
    spectrum = &local;
  }
  const Elem bad = first_spectral_failure(f, zero_table(*spectrum), a, b);
  if (bad) {
    r.witness = WitnessKind::spectral_b;
    r.b = bad;
    return r;
  }
  r.is_perm = true;
  return r;
}

bool perm_general_spectral(const Field& f, const TruthTable& G, const LinMap& l1,
                           const LinMap& l2) {
  check_degrees(f, l1, l2);
  const LinMap a = adjoint(f, l1);
  const LinMap c = adjoint(f, l2);
  // One Walsh row per distinct first argument.
  std::vector<std::vector<std::int64_t>> rows(f.size());
  for (std::uint64_t y = 1; y < f.size(); ++y) {
    const Elem e = static_cast<Elem>(y);
    const Elem u = a(e);
    if (rows[u].empty()) rows[u] = walsh_row(f, G, u).data;
    if (rows[u][c(e)] != 0) return false;
  }
  return true;
}

bool kernel_bound_applies(const Field& f, const LinMap& l1, const LinMap& l2) {
  check_degrees(f, l1, l2);
  if (l1.is_zero() || l2.is_zero())
    throw std::invalid_argument("the kernel bound needs nonzero linear maps");
  const int n = f.degree();
  const int d = theorem_bound_d(n);
  return std::max(n - l1.rank(), n - l2.rank()) > d;
}

ChinReport verify_chin(const Field& f, ChinScope scope, unsigned jobs, bool allow_out_of_range) {
  const int n = f.degree();
  if (n != 5 && !(allow_out_of_range && n >= 2 && n <= 5))
    throw RangeError("exhaustive check runs at n = 5 only (n = " + std::to_string(n) +
                     "); use the randomized search for larger n");
  const auto t0 = std::chrono::steady_clock::now();
  ChinReport rep;
  rep.n = n;
  rep.scope = scope;
  const std::vector<Elem> inv = f.inverse_table();
  const LinMap id = LinMap::identity(n);

  if (scope == ChinScope::scalar_maps) {
    for (std::uint64_t c = 1; c < f.size(); ++c) {
      const LinMap l = LinMap::multiplication(f, static_cast<Elem>(c));
      ++rep.candidates_checked;
      if (direct_with_inverses(inv, id, l).is_perm) rep.permutations.push_back(l);
    }
    rep.probe_survivors = rep.candidates_checked;
  } else {
    // x^{-1} + L(x) permutes iff K(y L*(y)) = 0 for all y. L -> L* is a
    // bijection on matrices, so the sweep runs over A = L* directly and
    // probes y = 1..8 before a direct confirmation of L = A*.
    const auto zero = zero_table(kloosterman_spectrum(f));
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    const Elem colmask = f.mask();
    const int probes = static_cast<int>(std::min<std::uint64_t>(8, f.size() - 1));
    std::vector<Elem> probe_elems(probes);
    for (int i = 0; i < probes; ++i) probe_elems[i] = static_cast<Elem>(i + 1);

    std::atomic<std::uint64_t> next{1};
    std::atomic<std::uint64_t> survivors{0};
    std::mutex mu;
    constexpr std::uint64_t kChunk = 1 << 16;
    auto worker = [&] {
      std::vector<Elem> cols(n);
      std::uint64_t local_surv = 0;
      for (;;) {
        const std::uint64_t lo = next.fetch_add(kChunk);
        if (lo >= total) break;
        const std::uint64_t hi = std::min(total, lo + kChunk);
        for (std::uint64_t m = lo; m < hi; ++m) {
          for (int j = 0; j < n; ++j) cols[j] = static_cast<Elem>(m >> (n * j)) & colmask;
          bool pass = true;
          for (Elem y : probe_elems) {
            Elem ay = 0;
            for (int j = 0; j < n; ++j) {
              if ((y >> j) & 1) ay ^= cols[j];
            }
            if (!zero[f.mul(y, ay)]) {
              pass = false;
              break;
            }
          }
          if (!pass) continue;
          ++local_surv;
          const LinMap l = adjoint(f, LinMap(n, cols));
          if (direct_with_inverses(inv, id, l).is_perm) {
            std::lock_guard lock(mu);
            rep.permutations.push_back(l);
          }
        }
      }
      survivors += local_surv;
    };
    const unsigned workers = std::max(1u, jobs);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    rep.candidates_checked = total - 1;
    rep.probe_survivors = survivors;
    std::sort(rep.permutations.begin(), rep.permutations.end(),
              [](const LinMap& x, const LinMap& y) { return x.columns() < y.columns(); });
  }
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

// Nonzero uniform n x n matrix as columns.
std::vector<Elem> random_nonzero_columns(int n, Elem mask, std::mt19937_64& rng) {
  std::vector<Elem> cols(n);
  for (;;) {
    Elem any = 0;
    for (auto& c : cols) {
      c = static_cast<Elem>(rng()) & mask;
      any |= c;
    }
    if (any) return cols;
  }
}

}  // namespace

SearchResult search_counterexample(const Field& f, SearchMode mode, std::uint64_t budget,
                                   std::uint64_t seed, unsigned jobs) {
  const int n = f.degree();
  if (n < 5) throw RangeError("counterexample search requires n >= 5");
  SearchResult res;
  res.mode = mode;
  res.seed = seed;
  if (budget == 0) return res;

  const Spectrum ks = kloosterman_spectrum(f);
  const auto zero = zero_table(ks);
  std::vector<Elem> zeros_and_0 = kloosterman_zeros(ks, true);
  const std::vector<Elem> inv = f.inverse_table();
  const Elem mask = f.mask();

  // Pairs are drawn in fixed chunks, each from its own seeded stream, so the
  // sampled sequence does not depend on the number of workers.
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (budget + kChunk - 1) / kChunk;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_hit{UINT64_MAX};
  std::mutex mu;
  std::optional<std::pair<LinMap, LinMap>> hit;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks || c * kChunk > first_hit.load()) break;
      std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                       static_cast<std::uint32_t>(mode)};
      std::mt19937_64 rng(sq);
      const std::uint64_t lo = c * kChunk;
      const std::uint64_t hi = std::min(budget, lo + kChunk);
      for (std::uint64_t i = lo; i < hi; ++i) {
        // a = L1*, b = L2*; the adjoint is a bijection, so sampling adjoints
        // uniformly samples the maps uniformly.
        std::vector<Elem> a = random_nonzero_columns(n, mask, rng);
        std::vector<Elem> b;
        if (mode == SearchMode::random) {
          b = random_nonzero_columns(n, mask, rng);
        } else {
          // Make a(x^j) b(x^j) a Kloosterman zero on the basis.
          b.resize(n);
          for (;;) {
            Elem any = 0;
            for (int j = 0; j < n; ++j) {
              if (a[j]) {
                const Elem z = zeros_and_0[rng() % zeros_and_0.size()];
                b[j] = f.mul(z, f.inv0(a[j]));
              } else {
                b[j] = static_cast<Elem>(rng()) & mask;
              }
              any |= b[j];
            }
            if (any) break;
          }
        }
        const LinMap la(n, a);
        const LinMap lb(n, b);
        if (first_spectral_failure(f, zero, la, lb) != 0) continue;
        if (kernels_meet(la, lb, nullptr)) continue;
        const LinMap l1 = adjoint(f, la);
        const LinMap l2 = adjoint(f, lb);
        if (!direct_with_inverses(inv, l1, l2).is_perm) continue;
        std::lock_guard lock(mu);
        if (i < first_hit.load()) {
          first_hit = i;
          hit.emplace(l1, l2);
        }
        break;
      }
    }
  };
  const unsigned workers = std::max(1u, jobs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  res.found = hit;
  res.pairs_checked = hit ? first_hit.load() + 1 : budget;
  return res;
}

}  // namespace kloos
