#include "kloos/gf2n.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace kloos {

namespace {

// Lexicographically smallest irreducible polynomial for each degree 2..32.
constexpr std::array<std::uint64_t, 33> kDefaultPolys = {
    0,           0,           0x7,         0xb,         0x13,
    0x25,        0x43,        0x83,        0x11b,       0x203,
    0x409,       0x805,       0x1009,      0x201b,      0x4021,
    0x8003,      0x1002b,     0x20009,     0x40009,     0x80027,
    0x100009,    0x200005,    0x400003,    0x800021,    0x100001b,
    0x2000009,   0x400001b,   0x8000027,   0x10000003,  0x20000005,
    0x40000003,  0x80000009,  0x10000008dULL,
};

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

std::optional<std::vector<Elem>> invert_bit_matrix(std::vector<Elem> rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Elem> inv(n);
  for (int i = 0; i < n; ++i) inv[i] = Elem{1} << i;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if ((rows[r] >> col) & 1) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(rows[col], rows[piv]);
    std::swap(inv[col], inv[piv]);
    for (int r = 0; r < n; ++r) {
      if (r != col && ((rows[r] >> col) & 1)) {
        rows[r] ^= rows[col];
        inv[r] ^= inv[col];
      }
    }
  }
  return inv;
}

ReducibleError::ReducibleError(std::uint64_t poly, std::uint64_t factor)
    : std::invalid_argument("polynomial " + to_hex(poly) +
                            " is reducible over F_2: divisible by " +
                            to_hex(factor)),
      poly_(poly),
      factor_(factor) {}

std::string to_hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex(const std::string& s) {
  std::size_t start = 0;
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) start = 2;
  if (start == s.size() || s.size() - start > 16)
    throw std::invalid_argument("bad hex value '" + s + "'");
  std::uint64_t v = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    const char c = s[i];
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad hex value '" + s + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

namespace poly2 {

int degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

std::uint64_t smallest_factor(std::uint64_t p) {
  const int d = degree(p);
  for (std::uint64_t q = 2; 2 * degree(q) <= d; ++q) {
    if (mod(p, q) == 0) return q;
  }
  return p;
}

bool is_irreducible(std::uint64_t p) {
  return degree(p) >= 1 && smallest_factor(p) == p;
}

std::uint64_t default_poly(int n) {
  if (n < kMinDegree || n > kMaxDegree)
    throw RangeError("field degree " + std::to_string(n) + " outside [" +
                     std::to_string(kMinDegree) + ", " +
                     std::to_string(kMaxDegree) + "]");
  return kDefaultPolys[n];
}

}  // namespace poly2

ByteSlicedMap::ByteSlicedMap(std::span<const Elem> columns) {
  for (int t = 0; t < 4; ++t) {
    for (int v = 0; v < 256; ++v) {
      Elem acc = 0;
      for (int b = 0; b < 8; ++b) {
        const std::size_t j = static_cast<std::size_t>(8 * t + b);
        if (((v >> b) & 1) && j < columns.size()) acc ^= columns[j];
      }
      tables_[t][v] = acc;
    }
  }
}

std::uint64_t clmul32(std::uint32_t a, std::uint32_t b) {
  std::array<std::uint64_t, 16> win;
  win[0] = 0;
  win[1] = a;
  for (int i = 2; i < 16; i += 2) {
    win[i] = win[i / 2] << 1;
    win[i + 1] = win[i] ^ a;
  }
  std::uint64_t r = 0;
  for (int shift = 28; shift >= 0; shift -= 4) {
    r = (r << 4) ^ win[(b >> shift) & 0xf];
  }
  return r;
}

Field::Field(int n, std::optional<std::uint64_t> poly) : n_(n) {
  const std::uint64_t fallback = poly2::default_poly(n);  // range check
  poly_ = poly ? *poly : fallback;
  if (poly2::degree(poly_) != n)
    throw std::invalid_argument("polynomial " + to_hex(poly_) +
                                " does not have degree " + std::to_string(n));
  if (poly) {
    const std::uint64_t f = poly2::smallest_factor(poly_);
    if (f != poly_) throw ReducibleError(poly_, f);
  }
  mask_ = static_cast<Elem>((std::uint64_t{1} << n) - 1);

  std::vector<Elem> high(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    high[j] = static_cast<Elem>(poly2::mod(std::uint64_t{1} << (n + j), poly_));
  reduce_high_ = ByteSlicedMap(high);

  // Traces of basis elements from the conjugate sum.
  for (int i = 0; i < n; ++i) {
    Elem c = Elem{1} << i;
    Elem sum = 0;
    for (int k = 0; k < n; ++k) {
      sum ^= c;
      c = mul_slow(c, c);
    }
    if (sum & ~Elem{1}) throw std::logic_error("trace left the prime field");
    trace_mask_ |= sum << i;
  }

  gram_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Elem prod = mul_slow(Elem{1} << i, Elem{1} << j);
      gram_[i] |= static_cast<Elem>(trace(prod)) << j;
    }
  }
  auto inv = invert_bit_matrix(gram_);
  if (!inv) throw std::logic_error("degenerate trace form");
  dual_ = *inv;
  to_dual_ = ByteSlicedMap(gram_);
  from_dual_ = ByteSlicedMap(dual_);

  const std::uint64_t order = size() - 1;
  const auto factors = prime_factors(order);
  for (Elem g = 2;; ++g) {
    bool ok = true;
    for (auto p : factors) {
      if (pow(g, order / p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      generator_ = g;
      break;
    }
  }

  if (n <= kLogTableMaxDegree) {
    auto lg = std::make_shared<std::vector<std::uint32_t>>(size(), 0);
    auto ex = std::make_shared<std::vector<Elem>>(2 * order);
    Elem x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      (*ex)[i] = x;
      (*ex)[i + order] = x;
      (*lg)[x] = static_cast<std::uint32_t>(i);
      x = mul_slow(x, generator_);
    }
    log_ = std::move(lg);
    exp_ = std::move(ex);
  }
}

Elem Field::mul_slow(Elem a, Elem b) const {
  const std::uint64_t r = clmul32(a, b);
  return (static_cast<Elem>(r) & mask_) ^ reduce_high_(static_cast<Elem>(r >> n_));
}

Elem Field::mul(Elem a, Elem b) const {
  if (log_) {
    if (a == 0 || b == 0) return 0;
    return (*exp_)[(*log_)[a] + (*log_)[b]];
  }
  return mul_slow(a, b);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul_slow(r, a);
    a = mul_slow(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, int k) const {
  k %= n_;
  if (k < 0) k += n_;
  for (int i = 0; i < k; ++i) a = mul(a, a);
  return a;
}

Elem Field::inv0(Elem a) const {
  if (a == 0) return 0;
  if (log_) {
    const std::uint64_t order = size() - 1;
    return (*exp_)[order - (*log_)[a]];
  }
  return pow(a, size() - 2);
}

std::uint64_t Field::char_poly(Elem a) const {
  // coeff[k] is the coefficient of X^k.
  std::vector<Elem> coeff(static_cast<std::size_t>(n_) + 1, 0);
  coeff[0] = 1;
  Elem r = a;
  for (int i = 0; i < n_; ++i) {
    for (int k = i + 1; k >= 1; --k) coeff[k] = coeff[k - 1] ^ mul(r, coeff[k]);
    coeff[0] = mul(r, coeff[0]);
    r = mul(r, r);
  }
  std::uint64_t out = 0;
  for (int k = 0; k <= n_; ++k) {
    if (coeff[k] > 1) throw std::logic_error("characteristic polynomial not over F_2");
    out |= static_cast<std::uint64_t>(coeff[k]) << k;
  }
  return out;
}

std::vector<Elem> Field::subfield_elements(int d) const {
  if (d < 1 || n_ % d != 0)
    throw std::invalid_argument("subfield degree " + std::to_string(d) +
                                " does not divide " + std::to_string(n_));
  const std::uint64_t order = size() - 1;
  const std::uint64_t sub_order = (std::uint64_t{1} << d) - 1;
  const Elem h = pow(generator_, order / sub_order);
  std::vector<Elem> out{0};
  out.reserve(sub_order + 1);
  Elem x = 1;
  for (std::uint64_t i = 0; i < sub_order; ++i) {
    out.push_back(x);
    x = mul(x, h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ByteSlicedMap Field::multiplier(Elem c) const {
  std::vector<Elem> cols(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) cols[j] = mul(c, Elem{1} << j);
  return ByteSlicedMap(cols);
}

std::vector<Elem> Field::inverse_table() const {
  std::vector<Elem> t(size(), 0);
  for_each_power(0, size() - 1, [&](Elem x, Elem xi) { t[x] = xi; });
  return t;
}

}  // namespace kloos
