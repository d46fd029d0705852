#include "kloos/zerospace.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <string>
#include <thread>

#include "kloos/quadform.hpp"

namespace kloos {

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

void require_at_least(int n, int lo, const char* what) {
  if (n < lo)
    throw RangeError(std::string(what) + " requires n >= " + std::to_string(lo) +
                     ", got " + std::to_string(n));
}

int top_bit(Elem v) { return 31 - std::countl_zero(v); }

}  // namespace

int theorem_bound_d(int n) {
  require_at_least(n, 5, "the zero-subspace bound");
  switch (n % 8) {
    case 1:
    case 7: return (n - 1) / 2;
    case 3:
    case 5: return (n - 3) / 2;
    default: return (n - 2) / 2;
  }
}

int mod16_bound(int n) {
  require_at_least(n, 5, "the mod-16 subspace bound");
  switch (n % 8) {
    case 1:
    case 7: return (n - 1) / 2;
    case 3:
    case 5: return (n - 3) / 2;
    case 4: return n / 2;
    default: return (n - 2) / 2;
  }
}

int weil_dimension_bound(int n) {
  require_at_least(n, 3, "the Weil dimension bound");
  return n / 2 + 1;
}

std::vector<Elem> mod16_set(const Field& f) {
  require_at_least(f.degree(), 4, "the mod-16 characterization");
  const QuadForm q = restrict_q(f, hyperplane_h(f));
  std::vector<Elem> out;
  out.reserve(q.zero_count());
  const std::uint64_t points = std::uint64_t{1} << q.ambient_dim();
  for (std::uint64_t c = 0; c < points; ++c) {
    if (q(c) == 0) out.push_back(q.point(c));
  }
  return out;  // coordinate order is increasing element order
}

std::string_view to_string(TargetSet t) {
  switch (t) {
    case TargetSet::zeros: return "zeros";
    case TargetSet::mod16: return "mod16";
    case TargetSet::custom: return "custom";
  }
  return "?";
}

namespace {

struct SharedState {
  std::atomic<int> best_dim{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::atomic<bool> done{false};
  std::mutex mu;
  // Best basis with the index of the top-level branch that produced it, so
  // ties resolve the same way whatever the thread schedule.
  std::vector<Elem> best_basis;
  std::size_t best_branch = SIZE_MAX;
};

class Searcher {
 public:
  Searcher(const Field& f, const SearchOptions& opts, int bound, bool isotropic,
           SharedState& st)
      : f_(f), opts_(opts), bound_(bound), isotropic_(isotropic), st_(st) {}

  void run_branch(const std::vector<Elem>& top, std::size_t index) {
    branch_ = index;
    basis_.clear();
    duals_.clear();
    visit(top, index);
  }

 private:
  // Adds cand[i] to the basis and explores the child.
  void visit(const std::vector<Elem>& cand, std::size_t i) {
    const Elem v = cand[i];
    std::vector<Elem> child;
    child.reserve(cand.size());
    for (Elem u : cand) {
      if (std::binary_search(cand.begin(), cand.end(), u ^ v)) child.push_back(u);
    }
    basis_.push_back(v);
    duals_.push_back(f_.dual_coords(v));
    dfs(child);
    basis_.pop_back();
    duals_.pop_back();
  }

  void dfs(const std::vector<Elem>& cand) {
    if (st_.done.load(std::memory_order_relaxed) || st_.aborted.load(std::memory_order_relaxed))
      return;
    const std::uint64_t visited = st_.nodes.fetch_add(1) + 1;
    if (opts_.budget && visited > opts_.budget) {
      st_.aborted = true;
      return;
    }
    const int k = static_cast<int>(basis_.size());
    record(k);
    if (opts_.stop_at_bound && k >= bound_) {
      st_.done = true;
      return;
    }

    // Extending to dimension k + j needs 2^k (2^j - 1) elements in cand.
    const std::uint64_t per = std::uint64_t{1} << k;
    int reach = 0;
    while (per * ((std::uint64_t{2} << reach) - 1) <= cand.size()) ++reach;
    if (k + reach <= st_.best_dim.load()) return;

    const Elem last = basis_.back();
    const Elem pivots = [&] {
      Elem m = 0;
      for (Elem b : basis_) m |= Elem{1} << top_bit(b);
      return m;
    }();
    const Elem start = top_bit(last) >= 31 ? 0 : (Elem{1} << (top_bit(last) + 1));
    if (start == 0) return;
    for (auto it = std::lower_bound(cand.begin(), cand.end(), start); it != cand.end(); ++it) {
      const Elem v = *it;
      if (v & pivots) continue;
      if (isotropic_ && opts_.prune_isotropic) {
        bool orth = true;
        for (Elem d : duals_) {
          if (parity(d & v)) {
            orth = false;
            break;
          }
        }
        if (!orth) continue;
      }
      visit(cand, static_cast<std::size_t>(it - cand.begin()));
      if (st_.done.load(std::memory_order_relaxed) ||
          st_.aborted.load(std::memory_order_relaxed))
        return;
    }
  }

  void record(int k) {
    std::lock_guard lock(st_.mu);
    const int cur = st_.best_dim.load();
    if (k > cur || (k == cur && k > 0 && branch_ < st_.best_branch)) {
      st_.best_dim = k;
      st_.best_basis = basis_;
      st_.best_branch = branch_;
    }
  }

  const Field& f_;
  const SearchOptions& opts_;
  int bound_;
  bool isotropic_;
  SharedState& st_;
  std::size_t branch_ = 0;
  std::vector<Elem> basis_;
  std::vector<Elem> duals_;
};

}  // namespace

ZeroSpaceReport max_subspace_in_set(const Field& f, std::span<const Elem> set,
                                    TargetSet target, const SearchOptions& opts) {
  const int n = f.degree();
  std::vector<Elem> cand;
  cand.reserve(set.size());
  for (Elem e : set) {
    if (e != 0) cand.push_back(e & f.mask());
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  int bound = n;
  if (opts.bound) {
    bound = *opts.bound;
  } else if (n >= 5 && target == TargetSet::zeros) {
    bound = theorem_bound_d(n);
  } else if (n >= 5 && target == TargetSet::mod16) {
    bound = mod16_bound(n);
  }

  const bool isotropic = std::all_of(cand.begin(), cand.end(), [&](Elem e) {
    return f.trace(e) == 0 && q_eval(f, e) == 0;
  });

  SharedState st;
  st.nodes = 1;  // root
  if (!(opts.stop_at_bound && bound <= 0) && !(opts.budget && opts.budget < 1)) {
    const unsigned jobs = std::max(1u, opts.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      Searcher s(f, opts, bound, isotropic, st);
      for (std::size_t i = next++; i < cand.size(); i = next++) {
        if (st.done || st.aborted) break;
        s.run_branch(cand, i);
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
  }

  ZeroSpaceReport r;
  r.n = n;
  r.target = target;
  r.best_basis = Subspace::span(st.best_basis);
  r.best_dim = r.best_basis.dim();
  r.bound = bound;
  r.nodes_visited = std::min<std::uint64_t>(st.nodes.load(), opts.budget ? opts.budget : UINT64_MAX);
  r.exhaustive = !st.aborted;
  return r;
}

CharpinSides charpin_check(const Field& f, const Subspace& v, const Spectrum* spectrum) {
  Spectrum local;
  if (!spectrum) {
    local = kloosterman_spectrum(f);
    spectrum = &local;
  }
  const int n = f.degree();
  const int k = v.dim();
  CharpinSides s;
  for (Elem a : v.elements()) {
    const Int128 kv = (*spectrum)[a];
    s.lhs += kv * kv - kv;
    s.sum_k += kv;
  }
  Int128 inner = 0;
  for (Elem u : orthogonal_complement(f, v).elements()) inner += (*spectrum)[f.inv0(u)];
  s.rhs = (Int128{1} << (n + k)) - (Int128{1} << (n + 1)) + (Int128{1} << k) * inner;
  return s;
}

}  // namespace kloos
