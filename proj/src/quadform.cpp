#include "kloos/quadform.hpp"

#include <bit>
#include <random>
#include <string>

namespace kloos {

std::string_view to_string(FormType t) {
  switch (t) {
    case FormType::hyperbolic: return "hyperbolic";
    case FormType::parabolic: return "parabolic";
    case FormType::elliptic: return "elliptic";
  }
  return "?";
}

int q_eval(const Field& f, Elem a) {
  // Second elementary symmetric function of the conjugates of a.
  Elem e1 = 0;
  Elem e2 = 0;
  Elem c = a;
  for (int i = 0; i < f.degree(); ++i) {
    e2 ^= f.mul(e1, c);
    e1 ^= c;
    c = f.sqr(c);
  }
  if (e2 > 1) throw std::logic_error("Q left the prime field");
  return static_cast<int>(e2);
}

int bq_eval(const Field& f, Elem x, Elem y) {
  return f.trace(f.mul(x, y)) ^ (f.trace(x) & f.trace(y));
}

Subspace hyperplane_h(const Field& f) {
  const Elem row = f.trace_mask();
  return solve_homogeneous(f.degree(), std::span<const Elem>(&row, 1));
}

std::int64_t expected_h_zeros(int n) {
  if (n < 3) throw RangeError("zero-count closed form needs n >= 3");
  const std::int64_t base = std::int64_t{1} << (n - 2);
  switch (n % 8) {
    case 0: return base - (std::int64_t{1} << ((n - 2) / 2));
    case 1:
    case 7: return base + (std::int64_t{1} << ((n - 3) / 2));
    case 2:
    case 6: return base;
    case 3:
    case 5: return base - (std::int64_t{1} << ((n - 3) / 2));
    default: return base + (std::int64_t{1} << ((n - 2) / 2));  // n = 4 mod 8
  }
}

QuadForm::QuadForm(std::vector<Elem> basis, const std::function<int(std::uint64_t)>& f)
    : basis_(std::move(basis)) {
  const int m = ambient_dim();
  if (m > 31) throw ResourceError("quadratic form tables limited to dimension 31");
  if (f(0) != 0) throw NotQuadraticError("f(0) != 0: not a quadratic form");
  values_on_basis_.resize(m);
  brows_.assign(m, 0);
  for (int i = 0; i < m; ++i) values_on_basis_[i] = f(std::uint64_t{1} << i) & 1;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      const std::uint64_t b = (f((std::uint64_t{1} << i) | (std::uint64_t{1} << j)) ^
                               values_on_basis_[i] ^ values_on_basis_[j]) & 1;
      brows_[i] |= b << j;
      brows_[j] |= b << i;
    }
  }
  fill_table();

  // Spot-check the table against f: every point for small m, a fixed
  // pseudo-random sample otherwise.
  const std::uint64_t points = std::uint64_t{1} << m;
  auto check = [&](std::uint64_t c) {
    if ((f(c) & 1) != (*this)(c))
      throw NotQuadraticError("polarization of f is not bilinear at coordinates " +
                              to_hex(c));
  };
  if (m <= 8) {
    for (std::uint64_t c = 0; c < points; ++c) check(c);
  } else {
    std::mt19937_64 rng(0x5eed);
    for (int k = 0; k < 256; ++k) check(rng() & (points - 1));
  }

  compute_radical();
  classify();
}

void QuadForm::fill_table() {
  const int m = ambient_dim();
  const std::uint64_t points = std::uint64_t{1} << m;
  eval_.assign((points + 63) / 64, 0);
  int val = 0;
  std::uint64_t g = 0;
  std::uint64_t ones = 0;
  for (std::uint64_t k = 1; k < points; ++k) {
    const int t = std::countr_zero(k);
    val ^= values_on_basis_[t] ^ parity(brows_[t] & g);
    g ^= std::uint64_t{1} << t;
    if (val) {
      eval_[g >> 6] |= std::uint64_t{1} << (g & 63);
      ++ones;
    }
  }
  zeros_ = points - ones;
}

Elem QuadForm::point(std::uint64_t c) const {
  Elem x = 0;
  for (std::size_t i = 0; c; ++i, c >>= 1) {
    if (c & 1) x ^= basis_[i];
  }
  return x;
}

int QuadForm::bilinear(std::uint64_t u, std::uint64_t v) const {
  int acc = 0;
  for (std::size_t i = 0; u; ++i, u >>= 1) {
    if (u & 1) acc ^= parity(brows_[i] & v);
  }
  return acc;
}

void QuadForm::compute_radical() {
  std::vector<Elem> rows(brows_.begin(), brows_.end());
  const Subspace rad_b = solve_homogeneous(ambient_dim(), rows);
  // f is additive on rad(B_f); keep its kernel there.
  std::vector<Elem> kept;
  Elem odd = 0;
  for (Elem r : rad_b.basis()) {
    if ((*this)(r) == 0) {
      kept.push_back(r);
    } else if (odd == 0) {
      odd = r;
    } else {
      kept.push_back(r ^ odd);
    }
  }
  radical_coords_ = Subspace::span(kept);
  std::vector<Elem> pts;
  for (Elem c : radical_coords_.basis()) pts.push_back(point(c));
  radical_ = Subspace::span(pts);
}

void QuadForm::classify() {
  const int m = ambient_dim();
  const int w = radical_coords_.dim();
  // 2N - 2^m = lambda * 2^{(m+w)/2}
  const std::int64_t diff =
      2 * static_cast<std::int64_t>(zeros_) - (std::int64_t{1} << m);
  if (diff == 0) {
    lambda_ = 0;
  } else if ((m + w) % 2 == 0 && (diff == (std::int64_t{1} << ((m + w) / 2)))) {
    lambda_ = 1;
  } else if ((m + w) % 2 == 0 && (diff == -(std::int64_t{1} << ((m + w) / 2)))) {
    lambda_ = -1;
  } else {
    throw InconsistentFormError("zero count " + std::to_string(zeros_) +
                                " fits no quadratic form type for m = " + std::to_string(m) +
                                ", w = " + std::to_string(w));
  }
  type_ = lambda_ == 1 ? FormType::hyperbolic
          : lambda_ == 0 ? FormType::parabolic
                         : FormType::elliptic;
  if (((m - w) % 2 == 1) != (type_ == FormType::parabolic))
    throw InconsistentFormError("form type does not match the nondegenerate dimension");
  const int v = (m - w) / 2;
  witt_ = type_ == FormType::elliptic ? v - 1 : v;
}

QuadForm restrict_form(const std::function<int(Elem)>& f, const Subspace& s) {
  return QuadForm(s.basis(), [&](std::uint64_t c) { return f(s.element(c)); });
}

QuadForm restrict_q(const Field& f, const Subspace& s) {
  return restrict_form([&f](Elem x) { return q_eval(f, x); }, s);
}

Subspace radical(const QuadForm& q) { return q.radical(); }

Classification classify(const QuadForm& q) {
  return Classification{q.type(), q.witt_index(), q.lambda()};
}

std::uint64_t count_zeros(const QuadForm& q) { return q.zero_count(); }

int max_isotropic_dim(const QuadForm& q) { return q.witt_index() + q.radical().dim(); }

namespace {

struct IsotropicSearch {
  const QuadForm& q;
  int target;
  std::uint64_t points;
  std::vector<Elem> chosen;          // coordinates
  std::vector<std::uint64_t> polar;  // B(chosen[k], .) as a mask

  bool extend() {
    if (static_cast<int>(chosen.size()) == target) return true;
    const Subspace span = Subspace::span(chosen);
    for (std::uint64_t c = 1; c < points; ++c) {
      if (q(c) != 0) continue;
      bool orth = true;
      for (auto p : polar) {
        if (parity(p & c)) {
          orth = false;
          break;
        }
      }
      if (!orth || span.contains(static_cast<Elem>(c))) continue;
      std::uint64_t row = 0;
      for (int i = 0; i < q.ambient_dim(); ++i) {
        row |= static_cast<std::uint64_t>(q.bilinear(c, std::uint64_t{1} << i)) << i;
      }
      chosen.push_back(static_cast<Elem>(c));
      polar.push_back(row);
      if (extend()) return true;
      chosen.pop_back();
      polar.pop_back();
    }
    return false;
  }
};

}  // namespace

Subspace find_isotropic_subspace(const QuadForm& q, int target_dim) {
  const int bound = max_isotropic_dim(q);
  if (target_dim < 0 || target_dim > bound)
    throw std::invalid_argument("isotropic target dimension " + std::to_string(target_dim) +
                                " outside [0, " + std::to_string(bound) + "]");
  IsotropicSearch s{q, target_dim, std::uint64_t{1} << q.ambient_dim(), {}, {}};
  if (!s.extend()) throw std::logic_error("isotropic search exhausted below the bound");
  std::vector<Elem> pts;
  for (Elem c : s.chosen) pts.push_back(q.point(c));
  return Subspace::span(pts);
}

}  // namespace kloos
