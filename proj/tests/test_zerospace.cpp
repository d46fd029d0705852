#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "kloos/spectra.hpp"
#include "kloos/zerospace.hpp"

using namespace kloos;

namespace {

// Largest subspace inside `set` by growing every subspace one vector at a
// time, subspaces held as sorted element lists.
int brute_max_dim(const std::vector<Elem>& set) {
  const std::set<Elem> in(set.begin(), set.end());
  std::set<std::vector<Elem>> layer{{0}};
  int dim = 0;
  while (true) {
    std::set<std::vector<Elem>> next;
    for (const auto& s : layer) {
      for (Elem v : set) {
        if (v == 0 || std::binary_search(s.begin(), s.end(), v)) continue;
        std::vector<Elem> t = s;
        bool ok = true;
        for (Elem e : s) {
          if (!in.count(e ^ v)) {
            ok = false;
            break;
          }
          t.push_back(e ^ v);
        }
        if (!ok) continue;
        std::sort(t.begin(), t.end());
        next.insert(std::move(t));
      }
    }
    if (next.empty()) return dim;
    layer = std::move(next);
    ++dim;
  }
}

}  // namespace

TEST_CASE("dimension bounds") {
  const int d[] = {1, 2, 3, 3, 4, 4, 4, 5, 5, 6, 7, 7};  // n = 5..16
  for (int n = 5; n <= 16; ++n) CHECK(theorem_bound_d(n) == d[n - 5]);
  CHECK(mod16_bound(12) == 6);
  CHECK(mod16_bound(11) == 4);
  CHECK(weil_dimension_bound(10) == 6);
  CHECK(weil_dimension_bound(3) == 2);
  for (int n = 5; n <= 24; ++n) {
    CHECK(theorem_bound_d(n) <= weil_dimension_bound(n));
    CHECK(theorem_bound_d(n) <= mod16_bound(n));
  }
  CHECK_THROWS_AS(theorem_bound_d(4), RangeError);
  CHECK_THROWS_AS(weil_dimension_bound(2), RangeError);
}

TEST_CASE("mod-16 set from Q agrees with the spectrum") {
  for (int n = 4; n <= 12; ++n) {
    const Field f(n);
    const Spectrum s = kloosterman_spectrum(f);
    std::vector<Elem> want;
    for (std::uint64_t a = 0; a < f.size(); ++a)
      if (s[static_cast<Elem>(a)] % 16 == 0) want.push_back(static_cast<Elem>(a));
    CHECK(mod16_set(f) == want);
  }
}

TEST_CASE("subspace search matches brute force") {
  for (int n = 5; n <= 8; ++n) {
    const Field f(n);
    const auto zeros = kloosterman_zeros(f);
    SearchOptions so;
    so.stop_at_bound = false;
    const ZeroSpaceReport r = max_subspace_in_set(f, zeros, TargetSet::zeros, so);
    CHECK(r.best_dim == brute_max_dim(zeros));
    CHECK(r.exhaustive);
    const auto m16 = mod16_set(f);
    SearchOptions on;
    on.stop_at_bound = false;
    SearchOptions off = on;
    off.prune_isotropic = false;
    const int b = brute_max_dim(m16);
    CHECK(max_subspace_in_set(f, m16, TargetSet::mod16, on).best_dim == b);
    CHECK(max_subspace_in_set(f, m16, TargetSet::mod16, off).best_dim == b);
  }
}

TEST_CASE("reported bases replay") {
  for (int n = 5; n <= 14; ++n) {
    const Field f(n);
    const Spectrum s = kloosterman_spectrum(f);
    SearchOptions so;
    so.bound = theorem_bound_d(n) + 1;
    const ZeroSpaceReport r = max_subspace_in_set(f, kloosterman_zeros(s), TargetSet::zeros, so);
    CHECK(r.best_dim == r.best_basis.dim());
    CHECK(r.best_dim <= theorem_bound_d(n));
    for (Elem e : r.best_basis.elements()) {
      if (e) REQUIRE(s[e] == 0);
    }
    if (n % 2 == 0) {
      for (Elem e : f.subfield_elements(n / 2)) {
        if (e) CHECK_FALSE(r.best_basis.contains(e));
      }
    }
  }
}

TEST_CASE("search options") {
  const Field f(10);
  const auto m16 = mod16_set(f);
  SearchOptions tiny;
  tiny.budget = 3;
  const ZeroSpaceReport r = max_subspace_in_set(f, m16, TargetSet::mod16, tiny);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.nodes_visited <= 3);

  SearchOptions one;
  one.bound = mod16_bound(10) + 1;
  SearchOptions two = one;
  two.jobs = 2;
  const auto a = max_subspace_in_set(f, m16, TargetSet::mod16, one);
  const auto b = max_subspace_in_set(f, m16, TargetSet::mod16, two);
  CHECK(a.best_dim == b.best_dim);
  CHECK(a.best_dim == mod16_bound(10));
  // Deterministic with one worker.
  const auto c = max_subspace_in_set(f, m16, TargetSet::mod16, one);
  CHECK(a.best_basis == c.best_basis);
  CHECK(a.nodes_visited == c.nodes_visited);

  const std::vector<Elem> empty;
  CHECK(max_subspace_in_set(f, empty).best_dim == 0);
}

TEST_CASE("subspace sums of K^2") {
  std::mt19937_64 rng(12);
  for (int n = 5; n <= 10; ++n) {
    const Field f(n);
    const Spectrum s = kloosterman_spectrum(f);
    const CharpinSides triv = charpin_check(f, Subspace(), &s);
    CHECK(triv.lhs == 0);
    CHECK(triv.rhs == 0);
    for (int t = 0; t < 50; ++t) {
      std::vector<Elem> vs;
      Subspace v;
      const int k = t % n;
      while (v.dim() < k) {
        vs.push_back(static_cast<Elem>(rng()) & f.mask());
        v = Subspace::span(vs);
      }
      const CharpinSides c = charpin_check(f, v, &s);
      Int128 direct = 0;
      for (Elem a : v.elements()) direct += s[a];
      CHECK(c.sum_k == direct);
      // Both sides by direct summation: the right side equals sum (K^2 - 2K).
      CHECK(c.lhs - c.sum_k == c.rhs);
    }
  }
  // A line through one Kloosterman zero.
  const Field f8(8);
  const auto z = kloosterman_zeros(f8);
  REQUIRE_FALSE(z.empty());
  const CharpinSides one = charpin_check(f8, Subspace::span(std::vector<Elem>{z.front()}));
  CHECK(one.lhs == 0);
  CHECK(one.rhs == 0);
  CHECK(to_string(Int128{-1234}) == "-1234");
  CHECK(to_string(Int128{0}) == "0");
}
