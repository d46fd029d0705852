#pragma once

// The quadratic form Q(x) = sum_{i<j} x^{2^i + 2^j} on F_{2^n}, its
// restriction to subspaces (notably the trace-zero hyperplane H), and the
// radical / type / Witt index of quadratic forms over F_2.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "kloos/gf2n.hpp"
#include "kloos/linmap.hpp"

namespace kloos {

class NotQuadraticError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InconsistentFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FormType { hyperbolic, parabolic, elliptic };

std::string_view to_string(FormType t);

// Q(a), the X^{n-2} coefficient of the characteristic polynomial of a.
int q_eval(const Field& f, Elem a);
// B_Q(x, y) = Q(x) + Q(y) + Q(x + y) = Tr(xy) + Tr(x) Tr(y).
int bq_eval(const Field& f, Elem x, Elem y);

// {x : Tr(x) = 0}
Subspace hyperplane_h(const Field& f);

// Closed-form zero count of Q on H, 2^{n-2} + e.
std::int64_t expected_h_zeros(int n);

// A quadratic form on an m-dimensional F_2-space, given by its values at the
// points sum_i c_i basis[i] (one bit per coordinate vector c).
class QuadForm {
 public:
  // f evaluated on coordinate vectors; f(0) = 0 and polarization are checked
  // on a deterministic sample.
  QuadForm(std::vector<Elem> basis, const std::function<int(std::uint64_t)>& f);

  int ambient_dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Elem>& basis() const { return basis_; }
  // The embedded point with coordinates c.
  Elem point(std::uint64_t c) const;

  int operator()(std::uint64_t c) const {
    return static_cast<int>((eval_[c >> 6] >> (c & 63)) & 1);
  }
  // B_f in coordinates.
  int bilinear(std::uint64_t u, std::uint64_t v) const;

  // Radical as a subspace of the embedding space, and in coordinates.
  const Subspace& radical() const { return radical_; }
  const Subspace& radical_coords() const { return radical_coords_; }
  FormType type() const { return type_; }
  int witt_index() const { return witt_; }
  int lambda() const { return lambda_; }
  std::uint64_t zero_count() const { return zeros_; }

 private:
  void fill_table();
  void compute_radical();
  void classify();

  std::vector<Elem> basis_;
  std::vector<int> values_on_basis_;
  std::vector<std::uint64_t> brows_;  // bit j of brows_[i] = B(e_i, e_j)
  std::vector<std::uint64_t> eval_;
  Subspace radical_;
  Subspace radical_coords_;
  FormType type_ = FormType::hyperbolic;
  int witt_ = 0;
  int lambda_ = 1;
  std::uint64_t zeros_ = 0;
};

// The form f restricted to the subspace s, coordinates taken in s's
// canonical basis (so coordinate order is increasing element order).
QuadForm restrict_form(const std::function<int(Elem)>& f, const Subspace& s);
// Q restricted to s.
QuadForm restrict_q(const Field& f, const Subspace& s);

Subspace radical(const QuadForm& q);

struct Classification {
  FormType type;
  int witt_index;
  int lambda;
};
Classification classify(const QuadForm& q);

std::uint64_t count_zeros(const QuadForm& q);
// Witt index plus radical dimension.
int max_isotropic_dim(const QuadForm& q);

// A totally isotropic subspace (of the embedding space) of the requested
// dimension. Throws std::invalid_argument above max_isotropic_dim.
Subspace find_isotropic_subspace(const QuadForm& q, int target_dim);

}  // namespace kloos
