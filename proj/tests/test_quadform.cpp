#include <random>

#include "doctest.h"
#include "kloos/quadform.hpp"
#include "kloos/zerospace.hpp"
#include "oracle.hpp"

using namespace kloos;

TEST_CASE("polarization identity") {
  for (int n = 3; n <= 10; ++n) {
    const Field f(n);
    std::vector<int> q(f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) q[x] = q_eval(f, static_cast<Elem>(x));
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      for (std::uint64_t y = 0; y < f.size(); ++y) {
        const Elem ex = static_cast<Elem>(x);
        const Elem ey = static_cast<Elem>(y);
        const Elem shifted = ey ^ static_cast<Elem>(f.trace(ey));
        REQUIRE((q[x] ^ q[y] ^ q[x ^ y]) == f.trace(f.mul(shifted, ex)));
        if (n <= 6) REQUIRE(bq_eval(f, ex, ey) == (q[x] ^ q[y] ^ q[x ^ y]));
      }
    }
  }
}

TEST_CASE("forms on small spaces") {
  // x0 x1: hyperbolic plane
  const QuadForm h({0x1, 0x2}, [](std::uint64_t c) { return static_cast<int>(c == 3); });
  CHECK(h.type() == FormType::hyperbolic);
  CHECK(h.witt_index() == 1);
  CHECK(h.zero_count() == 3);
  // x0 x1 + x0 + x1: anisotropic plane
  const QuadForm e({0x1, 0x2}, [](std::uint64_t c) { return static_cast<int>(c != 0); });
  CHECK(e.type() == FormType::elliptic);
  CHECK(e.witt_index() == 0);
  CHECK(e.zero_count() == 1);
  // x0 x1 + x2
  const QuadForm p({0x1, 0x2, 0x4},
                   [](std::uint64_t c) { return static_cast<int>((c & 3) == 3) ^ ((c >> 2) & 1); });
  CHECK(p.type() == FormType::parabolic);
  CHECK(p.witt_index() == 1);
  CHECK(p.radical().dim() == 0);
  // x0 x1 on a 3-space: the third direction is radical
  const QuadForm r({0x1, 0x2, 0x4}, [](std::uint64_t c) { return static_cast<int>((c & 3) == 3); });
  CHECK(r.radical() == Subspace::span(std::vector<Elem>{0x4}));
  CHECK(max_isotropic_dim(r) == 2);
  CHECK_THROWS_AS(QuadForm({0x1, 0x2, 0x4}, [](std::uint64_t c) { return static_cast<int>(c == 7); }),
                  NotQuadraticError);
  CHECK_THROWS_AS(QuadForm({0x1}, [](std::uint64_t) { return 1; }), NotQuadraticError);
}

TEST_CASE("Q on the trace-zero hyperplane") {
  for (int n = 4; n <= 20; ++n) {
    const Field f(n);
    const oracle::Field o{n, f.poly()};
    const Subspace h = hyperplane_h(f);
    CHECK(h.dim() == n - 1);
    const QuadForm q = restrict_q(f, h);
    CHECK(static_cast<std::int64_t>(q.zero_count()) == expected_h_zeros(n));
    if (n <= 10) {
      std::int64_t brute = 0;
      for (std::uint64_t x = 0; x < f.size(); ++x)
        brute += o.trace(static_cast<Elem>(x)) == 0 && o.q(static_cast<Elem>(x)) == 0;
      CHECK(brute == expected_h_zeros(n));
    }
    const Subspace expected_rad =
        n % 4 == 0 ? Subspace::span(std::vector<Elem>{1}) : Subspace();
    CHECK(q.radical() == expected_rad);
    if (n >= 5) {
      const FormType want = (n % 8 == 0 || n % 8 == 3 || n % 8 == 5) ? FormType::elliptic
                            : (n % 8 == 2 || n % 8 == 6)           ? FormType::parabolic
                                                                   : FormType::hyperbolic;
      CHECK(q.type() == want);
      CHECK(max_isotropic_dim(q) == mod16_bound(n));
    }
    const Classification c = classify(q);
    CHECK(c.type == q.type());
    CHECK(count_zeros(q) == q.zero_count());
  }
  CHECK_THROWS_AS(expected_h_zeros(2), RangeError);
}

TEST_CASE("totally isotropic subspaces") {
  for (int n = 5; n <= 10; ++n) {
    const Field f(n);
    const QuadForm q = restrict_q(f, hyperplane_h(f));
    const int top = max_isotropic_dim(q);
    for (int k = 0; k <= top; ++k) {
      const Subspace w = find_isotropic_subspace(q, k);
      CHECK(w.dim() == k);
      for (Elem e : w.elements()) {
        REQUIRE(q_eval(f, e) == 0);
        REQUIRE(f.trace(e) == 0);
      }
    }
    CHECK_THROWS_AS(find_isotropic_subspace(q, top + 1), std::invalid_argument);

    // Full enumeration: nothing larger than the Witt bound inside the zero set.
    std::vector<Elem> set;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << q.ambient_dim()); ++c)
      if (q(c) == 0) set.push_back(q.point(c));
    SearchOptions so;
    so.bound = top + 1;
    const ZeroSpaceReport r = max_subspace_in_set(f, set, TargetSet::custom, so);
    CHECK(r.exhaustive);
    CHECK(r.best_dim == top);
  }
}
