// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "kloos/linmap.hpp"
#include "kloos/quadform.hpp"
#include "kloos/spectra.hpp"
#include "kloos/verify.hpp"
#include "kloos/zerospace.hpp"

using namespace kloos;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome suite(const std::string& name, int from, int to, std::optional<std::uint64_t> budget = {}) {
  VerifyOptions o;
  o.from = from;
  o.to = to;
  o.jobs = workers();
  o.budget = budget;
  const Json j = run_verify(name, o);
  std::ostringstream bad;
  for (const auto& r : j["results"]) {
    if (!r["pass"].get<bool>()) bad << " n=" << r["n"].get<int>();
  }
  const bool pass = j["pass"].get<bool>();
  return {pass, pass ? "n=" + std::to_string(from) + ".." + std::to_string(to)
                     : "failing at" + bad.str()};
}

Outcome table1_right() {
  const int want[] = {1, 2, 3, 1, 1, 2, 2, 2, 1, 3, 4, 2};  // n = 5..16
  std::ostringstream bad;
  for (int n = 5; n <= 16; ++n) {
    const ZeroSpaceReport r = max_zero_subspace(Field(n), workers());
    if (!r.exhaustive || r.best_dim != want[n - 5])
      bad << " n=" << n << " got " << r.best_dim;
  }
  const std::string b = bad.str();
  return {b.empty(), b.empty() ? "n=5..16 exact" : "mismatch:" + b};
}

Outcome table1_left() {
  const std::pair<int, double> rows[] = {{5, 0.88}, {10, 1.87}, {15, 1.57}, {20, 0.86}};
  std::ostringstream detail;
  bool pass = true;
  for (auto [n, want] : rows) {
    const double r = static_cast<double>(count_kloosterman_zeros(Field(n))) / std::pow(2.0, n / 2.0);
    pass = pass && std::fabs(r - want) <= 0.011;
    char buf[64];
    std::snprintf(buf, sizeof buf, " n=%d %.4f", n, r);
    detail << buf;
  }
  return {pass, detail.str().substr(1)};
}

Outcome properties() {
  std::ostringstream bad;
  std::mt19937_64 rng(2024);

  // Adjoint identities.
  for (int n = 2; n <= 12; ++n) {
    const Field f(n);
    const LinMap l = LinMap::random(n, rng);
    const LinMap a = adjoint(f, l);
    bool ok = true;
    if (n <= 6) {
      for (std::uint64_t x = 0; x < f.size(); ++x)
        for (std::uint64_t y = 0; y < f.size(); ++y)
          ok = ok && f.trace(f.mul(l(x), y)) == f.trace(f.mul(x, a(y)));
    } else {
      for (int k = 0; k < 10000; ++k) {
        const Elem x = static_cast<Elem>(rng()) & f.mask();
        const Elem y = static_cast<Elem>(rng()) & f.mask();
        ok = ok && f.trace(f.mul(l(x), y)) == f.trace(f.mul(x, a(y)));
      }
    }
    if (!ok) bad << " trace-pairing n=" << n;
  }
  for (int n = 5; n <= 10; ++n) {
    const Field f(n);
    bool ok = true;
    for (int t = 0; t < 1000; ++t) {
      std::vector<Elem> cols(n, 0);
      const int r = static_cast<int>(rng() % (n + 1));
      for (int j = 0; j < r; ++j) cols[j] = Elem{1} << j;
      const LinMap l = compose(LinMap::random_invertible(n, rng),
                               compose(LinMap(n, cols), LinMap::random_invertible(n, rng)));
      const LinMap a = adjoint(f, l);
      ok = ok && kernel(a).dim() == kernel(l).dim() && image(a).dim() == image(l).dim() &&
           image(a) == orthogonal_complement(f, kernel(l));
    }
    if (!ok) bad << " adjoint-dimension n=" << n;
  }

  // Polarization of Q.
  for (int n = 3; n <= 10; ++n) {
    const Field f(n);
    std::vector<int> q(f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) q[x] = q_eval(f, static_cast<Elem>(x));
    bool ok = true;
    for (std::uint64_t x = 0; x < f.size() && ok; ++x)
      for (std::uint64_t y = 0; y < f.size(); ++y) {
        const Elem ey = static_cast<Elem>(y);
        ok = ok && (q[x] ^ q[y] ^ q[x ^ y]) ==
                       f.trace(f.mul(ey ^ static_cast<Elem>(f.trace(ey)), static_cast<Elem>(x)));
      }
    if (!ok) bad << " polarization n=" << n;
  }

  // Trace and characteristic polynomial.
  for (int n = 2; n <= 12; ++n) {
    const Field f(n);
    bool ok = true;
    std::uint64_t zero_trace = 0;
    for (std::uint64_t i = 0; i < f.size(); ++i) {
      const Elem e = static_cast<Elem>(i);
      const std::uint64_t cp = f.char_poly(e);
      zero_trace += f.trace(e) == 0;
      ok = ok && ((cp >> (n - 1)) & 1) == static_cast<std::uint64_t>(f.trace(e)) &&
           ((cp >> (n - 2)) & 1) == static_cast<std::uint64_t>(q_eval(f, e));
    }
    if (!ok || zero_trace != f.size() / 2) bad << " char-poly n=" << n;
  }

  // Parseval on Walsh rows of the inverse.
  for (int n = 5; n <= 10; ++n) {
    const Field f(n);
    const TruthTable inv = TruthTable::inverse(f);
    for (Elem a : {Elem{1}, f.generator(), f.mask()}) {
      std::int64_t e = 0;
      for (auto w : walsh_row(f, inv, a).data) e += w * w;
      if (e != static_cast<std::int64_t>(f.size() * f.size())) bad << " parseval n=" << n;
    }
  }

  // Frobenius invariance and divisibility by 4.
  for (int n = 3; n <= 16; ++n) {
    const Field f(n);
    const Spectrum s = kloosterman_spectrum(f);
    bool ok = true;
    for (std::uint64_t a = 0; a < f.size(); ++a) {
      const Elem e = static_cast<Elem>(a);
      ok = ok && s[f.sqr(e)] == s[e] && s[e] % 4 == 0;
    }
    if (!ok) bad << " frobenius n=" << n;
  }

  // Subfield-zero exclusion and classification congruences.
  if (!suite("subfield-zeros", 5, 20).pass) bad << " subfield-zeros";
  if (!suite("solutions", 5, 24).pass) bad << " classification";

  const std::string b = bad.str();
  return {b.empty(), b.empty() ? "adjoint, polarization, char-poly, Parseval, Frobenius, "
                                 "subfield zeros, form types"
                               : "failing:" + b};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"maximal zero-subspace dimension, n=5..16", table1_right},
      {"zero count ratio Z(n)/2^(n/2) within 0.011", table1_left},
      {"mod-16 characterization via Tr and Q, n=4..16", [] { return suite("faruk", 4, 16); }},
      {"zero count of Q on H, n=4..24", [] { return suite("solutions", 4, 24); }},
      {"radical of Q on H, n=4..24", [] { return suite("radical", 4, 24); }},
      {"mod-16 subspace bound attained, n=5..12", [] { return suite("mod16-sharpness", 5, 12); }},
      {"zero-subspace bound and half-subfield, n=5..16",
       [] { return suite("kloozeros-bound", 5, 16); }},
      {"no permutation x^-1 + L(x) at n=5, all 2^25-1 maps", [] { return suite("chin", 5, 5); }},
      {"spectral and direct bijectivity agree, 10^4 pairs, n=5..10",
       [] { return suite("spectral-vs-direct", 5, 10, 10000); }},
      {"subspace sum of K^2 - K on 100 random subspaces, n=5..12",
       [] { return suite("charpin", 5, 12); }},
      {"Weil bound and sum of K_n, n=4..20", [] { return suite("weil", 4, 20); }},
      {"no permutation L1(x^-1) + L2(x), 10^6 pairs per mode, n=5..10",
       [] { return suite("conjecture", 5, 10, 1000000); }},
      {"module property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %s: %s [%s] (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
