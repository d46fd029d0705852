#pragma once

// Bijectivity of F(x) = L1(x^{-1}) + L2(x) (and of L1(G(x)) + L2(x) for a
// general G) by direct evaluation and by the spectral criterion
//   ker(L1*) ∩ ker(L2*) = {0}  and  K_n(L1*(b) L2*(b)) = 0 for all b,
// plus the exhaustive and randomized searches built on them.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "kloos/gf2n.hpp"
#include "kloos/linmap.hpp"
#include "kloos/spectra.hpp"

namespace kloos {

enum class WitnessKind { none, collision, spectral_b, kernel_overlap };
enum class PermMethod { direct, spectral };

std::string_view to_string(WitnessKind k);
std::string_view to_string(PermMethod m);

struct PermReport {
  bool is_perm = false;
  WitnessKind witness = WitnessKind::none;
  // collision: F(x1) = F(x2), x1 < x2. spectral_b: b. kernel_overlap: v in x1.
  Elem x1 = 0;
  Elem x2 = 0;
  Elem b = 0;
  PermMethod method = PermMethod::direct;
};

// Surjectivity scan; the witness is the first repeated value in x order.
PermReport is_permutation(const TruthTable& F);

PermReport perm_direct(const Field& f, const LinMap& l1, const LinMap& l2);

// `spectrum` is computed when not supplied.
PermReport perm_spectral(const Field& f, const LinMap& l1, const LinMap& l2,
                         const Spectrum* spectrum = nullptr);

// W_G(L1*(b), L2*(b)) = 0 for all b != 0.
bool perm_general_spectral(const Field& f, const TruthTable& G, const LinMap& l1,
                           const LinMap& l2);

// Hypothesis max(dim ker L1, dim ker L2) > theorem_bound_d(n). Both maps
// must be nonzero and n >= 5.
bool kernel_bound_applies(const Field& f, const LinMap& l1, const LinMap& l2);

enum class ChinScope { all_maps, scalar_maps };

struct ChinReport {
  int n = 0;
  ChinScope scope = ChinScope::all_maps;
  std::uint64_t candidates_checked = 0;
  std::uint64_t probe_survivors = 0;
  std::vector<LinMap> permutations;  // nonzero L with x^{-1} + L(x) bijective
  double wall_time = 0;
};

// Every nonzero linear L (all n x n matrices, or x -> c x) for which
// x^{-1} + L(x) is tested. n must be 5 unless allow_out_of_range is set, in
// which case 2 <= n <= 5.
ChinReport verify_chin(const Field& f, ChinScope scope = ChinScope::all_maps, unsigned jobs = 1,
                       bool allow_out_of_range = false);

enum class SearchMode { random, structured };

std::string_view to_string(SearchMode m);

struct SearchResult {
  SearchMode mode = SearchMode::random;
  std::uint64_t seed = 0;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<LinMap, LinMap>> found;
};

// Samples nonzero pairs (L1, L2) and returns the first one for which
// L1(x^{-1}) + L2(x) is bijective. n >= 5.
SearchResult search_counterexample(const Field& f, SearchMode mode, std::uint64_t budget,
                                   std::uint64_t seed, unsigned jobs = 1);

}  // namespace kloos
