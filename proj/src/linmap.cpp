#include "kloos/linmap.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace kloos {

namespace {

int top_bit(Elem v) { return 31 - std::countl_zero(v); }

void check_same_degree(const LinMap& a, const LinMap& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("linear maps over different field degrees");
}

}  // namespace

Subspace Subspace::span(std::span<const Elem> vectors) {
  Subspace s;
  for (Elem v : vectors) {
    v = s.reduce(v);
    if (v == 0) continue;
    const Elem p = Elem{1} << top_bit(v);
    for (Elem& b : s.basis_) {
      if (b & p) b ^= v;
    }
    s.basis_.push_back(v);
  }
  std::sort(s.basis_.begin(), s.basis_.end());
  return s;
}

Subspace Subspace::whole(int n) {
  Subspace s;
  for (int i = 0; i < n; ++i) s.basis_.push_back(Elem{1} << i);
  return s;
}

Elem Subspace::reduce(Elem x) const {
  for (Elem b : basis_) {
    if ((x >> top_bit(b)) & 1) x ^= b;
  }
  return x;
}

Elem Subspace::pivots() const {
  Elem m = 0;
  for (Elem b : basis_) m |= Elem{1} << top_bit(b);
  return m;
}

Elem Subspace::element(std::uint64_t c) const {
  Elem x = 0;
  for (std::size_t i = 0; c; ++i, c >>= 1) {
    if (c & 1) x ^= basis_[i];
  }
  return x;
}

std::vector<Elem> Subspace::elements() const {
  std::vector<Elem> out(size());
  // Gray-code walk, then sort back into coordinate order.
  Elem x = 0;
  out[0] = 0;
  for (std::uint64_t k = 1; k < size(); ++k) {
    x ^= basis_[std::countr_zero(k)];
    out[k] = x;
  }
  std::sort(out.begin(), out.end());
  return out;
}

LinMap::LinMap(int n, std::vector<Elem> columns) : n_(n), cols_(std::move(columns)) {
  if (n < 1 || n > kMaxDegree || cols_.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("linear map needs exactly n columns");
  const Elem mask = static_cast<Elem>((std::uint64_t{1} << n) - 1);
  for (Elem c : cols_) {
    if (c & ~mask) throw std::invalid_argument("column exceeds field degree");
  }
}

LinMap LinMap::zero(int n) { return LinMap(n, std::vector<Elem>(n, 0)); }

LinMap LinMap::identity(int n) {
  std::vector<Elem> cols(n);
  for (int j = 0; j < n; ++j) cols[j] = Elem{1} << j;
  return LinMap(n, std::move(cols));
}

LinMap LinMap::from_rows(int n, std::span<const Elem> rows) {
  if (rows.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("linear map needs exactly n rows");
  std::vector<Elem> cols(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) cols[j] |= ((rows[i] >> j) & 1) << i;
    if (n < 32 && (rows[i] >> n)) throw std::invalid_argument("row exceeds field degree");
  }
  return LinMap(n, std::move(cols));
}

LinMap LinMap::from_linearized(const Field& f, std::span<const Elem> coeffs) {
  const int n = f.degree();
  if (coeffs.size() > static_cast<std::size_t>(n))
    throw std::invalid_argument("more linearized coefficients than the field degree");
  std::vector<Elem> cols(n, 0);
  for (int j = 0; j < n; ++j) {
    Elem conj = Elem{1} << j;  // (x^j)^{2^i}
    for (Elem c : coeffs) {
      cols[j] ^= f.mul(c, conj);
      conj = f.sqr(conj);
    }
  }
  return LinMap(n, std::move(cols));
}

LinMap LinMap::multiplication(const Field& f, Elem c) {
  std::vector<Elem> cols(f.degree());
  for (int j = 0; j < f.degree(); ++j) cols[j] = f.mul(c, Elem{1} << j);
  return LinMap(f.degree(), std::move(cols));
}

LinMap LinMap::random(int n, std::mt19937_64& rng) {
  const Elem mask = static_cast<Elem>((std::uint64_t{1} << n) - 1);
  std::vector<Elem> cols(n);
  for (auto& c : cols) c = static_cast<Elem>(rng()) & mask;
  return LinMap(n, std::move(cols));
}

LinMap LinMap::random_invertible(int n, std::mt19937_64& rng) {
  for (;;) {
    LinMap l = random(n, rng);
    if (l.is_bijective()) return l;
  }
}

std::vector<Elem> LinMap::rows() const {
  std::vector<Elem> r(n_, 0);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) r[i] |= ((cols_[j] >> i) & 1) << j;
  }
  return r;
}

std::vector<Elem> LinMap::linearized(const Field& f) const {
  // L(x) = sum_j Tr(x d_j) L(x^j) = sum_i x^{2^i} sum_j d_j^{2^i} L(x^j)
  const auto& dual = f.dual_basis();
  std::vector<Elem> coeffs(n_, 0);
  for (int j = 0; j < n_; ++j) {
    Elem d = dual[j];
    for (int i = 0; i < n_; ++i) {
      coeffs[i] ^= f.mul(d, cols_[j]);
      d = f.sqr(d);
    }
  }
  return coeffs;
}

bool LinMap::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](Elem c) { return c == 0; });
}

int LinMap::rank() const { return Subspace::span(cols_).dim(); }

LinMap compose(const LinMap& a, const LinMap& b) {
  check_same_degree(a, b);
  std::vector<Elem> cols(b.degree());
  for (int j = 0; j < b.degree(); ++j) cols[j] = a(b.columns()[j]);
  return LinMap(b.degree(), std::move(cols));
}

LinMap operator+(const LinMap& a, const LinMap& b) {
  check_same_degree(a, b);
  std::vector<Elem> cols(a.columns());
  for (int j = 0; j < a.degree(); ++j) cols[j] ^= b.columns()[j];
  return LinMap(a.degree(), std::move(cols));
}

std::optional<LinMap> inverse(const LinMap& l) {
  auto inv_rows = invert_bit_matrix(l.rows());
  if (!inv_rows) return std::nullopt;
  return LinMap::from_rows(l.degree(), *inv_rows);
}

LinMap transpose(const LinMap& l) { return LinMap(l.degree(), l.rows()); }

LinMap adjoint(const Field& f, const LinMap& l) {
  const int n = l.degree();
  if (n != f.degree()) throw std::invalid_argument("map and field degrees differ");
  // L*(y) = G^{-1} M^T G y; G y is the dual-coordinate vector of y.
  std::vector<Elem> cols(n);
  for (int k = 0; k < n; ++k) {
    const Elem gy = f.dual_coords(Elem{1} << k);
    Elem mt = 0;
    for (int j = 0; j < n; ++j) mt |= static_cast<Elem>(parity(l.columns()[j] & gy)) << j;
    cols[k] = f.from_dual_coords(mt);
  }
  return LinMap(n, std::move(cols));
}

Subspace solve_homogeneous(int n, std::span<const Elem> rows) {
  std::vector<Elem> eq(rows.begin(), rows.end());
  std::vector<int> pivot_of_row;
  Elem pivot_cols = 0;
  std::size_t r = 0;
  for (int col = 0; col < n && r < eq.size(); ++col) {
    std::size_t piv = r;
    while (piv < eq.size() && !((eq[piv] >> col) & 1)) ++piv;
    if (piv == eq.size()) continue;
    std::swap(eq[r], eq[piv]);
    for (std::size_t k = 0; k < eq.size(); ++k) {
      if (k != r && ((eq[k] >> col) & 1)) eq[k] ^= eq[r];
    }
    pivot_of_row.push_back(col);
    pivot_cols |= Elem{1} << col;
    ++r;
  }
  std::vector<Elem> sols;
  for (int free = 0; free < n; ++free) {
    if ((pivot_cols >> free) & 1) continue;
    Elem v = Elem{1} << free;
    for (std::size_t k = 0; k < pivot_of_row.size(); ++k) {
      if ((eq[k] >> free) & 1) v |= Elem{1} << pivot_of_row[k];
    }
    sols.push_back(v);
  }
  return Subspace::span(sols);
}

Subspace kernel(const LinMap& l) {
  const auto r = l.rows();
  return solve_homogeneous(l.degree(), r);
}

Subspace image(const LinMap& l) { return Subspace::span(l.columns()); }

Subspace orthogonal_complement(const Field& f, const Subspace& v) {
  std::vector<Elem> rows;
  rows.reserve(v.basis().size());
  for (Elem b : v.basis()) rows.push_back(f.dual_coords(b));
  return solve_homogeneous(f.degree(), rows);
}

}  // namespace kloos
