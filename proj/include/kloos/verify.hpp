#pragma once

// Named verification suites. Each returns a self-describing JSON report with
// a "paper_anchor" naming the result checked and a boolean "pass".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kloos/gf2n.hpp"
#include "kloos/json_io.hpp"

namespace kloos {

// Environment variable naming a file of "n hex" lines that override the
// default reduction polynomials.
inline constexpr const char* kPolyTableEnv = "KLOOS_POLY_TABLE";

// The polynomial for degree n: `override` if set, else the table named by
// kPolyTableEnv, else the built-in default.
std::uint64_t resolve_poly(int n, std::optional<std::uint64_t> override = std::nullopt);
Field make_field(int n, std::optional<std::uint64_t> poly = std::nullopt);

struct VerifyOptions {
  std::optional<int> from;
  std::optional<int> to;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  // Pairs per n and mode for the conjecture suite; random pairs per n for
  // spectral-vs-direct.
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> poly;  // only honoured for single-n runs
};

struct SuiteInfo {
  std::string name;
  std::string anchor;
  int from;
  int to;
};

const std::vector<SuiteInfo>& verify_suites();

// Throws std::invalid_argument for an unknown name or a range outside the
// suite's hypotheses. "all" runs every suite at its default range.
Json run_verify(const std::string& name, const VerifyOptions& opts);

// Exhaustive maximum zero-subspace dimension, certified up to
// theorem_bound_d(n) + 1.
ZeroSpaceReport max_zero_subspace(const Field& f, unsigned jobs = 1, std::uint64_t budget = 0);

// Number of nonzero Kloosterman zeros.
std::uint64_t count_kloosterman_zeros(const Field& f);

}  // namespace kloos
