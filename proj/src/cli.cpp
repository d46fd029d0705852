#include "kloos/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kloos/json_io.hpp"
#include "kloos/permcheck.hpp"
#include "kloos/quadform.hpp"
#include "kloos/spectra.hpp"
#include "kloos/verify.hpp"
#include "kloos/zerospace.hpp"

namespace kloos {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Reads a map argument: inline JSON, or a path to a JSON file.
Json read_map_arg(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos || arg[first] != '{') {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read map file '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed map JSON: ") + e.what());
  }
}

TruthTable named_function(const Field& f, const std::string& name) {
  if (name == "inverse") return TruthTable::inverse(f);
  if (name == "identity") return TruthTable::identity(f);
  if (name.rfind("power:", 0) == 0) {
    const std::uint64_t e = std::stoull(name.substr(6));
    return TruthTable::from_function(f, [&](Elem x) { return f.pow(x, e); });
  }
  throw UsageError("unknown function '" + name + "' (inverse, identity, power:E)");
}

struct Output {
  std::ostream& out;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
  }
  void write(const Json& j) const { write(j.dump(2) + "\n"); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kloosterman sums, quadratic forms and permutation checks over F_{2^n}"};
  app.require_subcommand(1);
  std::string poly_hex;
  app.add_option("--poly", poly_hex, "reduction polynomial as hex (default: smallest irreducible)");
  std::string out_path;
  app.add_option("--out", out_path, "write the report to this file");

  int n = 0;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  int from = 0;
  int to = 0;

  auto* spectrum = app.add_subcommand("spectrum", "Kloosterman spectrum or one Walsh row");
  std::string what = "kloosterman";
  std::string a_hex = "1";
  std::string fn_name = "inverse";
  std::string format = "csv";
  spectrum->add_option("--n", n, "field degree")->required();
  spectrum->add_option("--what", what, "kloosterman | walsh")
      ->check(CLI::IsMember({"kloosterman", "walsh"}));
  spectrum->add_option("--a", a_hex, "Walsh row index (hex)");
  spectrum->add_option("--f", fn_name, "function for walsh: inverse | identity | power:E");
  spectrum->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* zeros = app.add_subcommand("zeros", "Kloosterman zeros");
  bool include_zero = false;
  zeros->add_option("--n", n, "field degree")->required();
  zeros->add_flag("--include-zero", include_zero, "count a = 0 as a zero");

  auto* zerospace = app.add_subcommand("zerospace", "largest subspace inside a target set");
  std::string set_name = "zeros";
  bool no_prune = false;
  zerospace->add_option("--n", n, "field degree")->required();
  zerospace->add_option("--set", set_name, "zeros | mod16")
      ->check(CLI::IsMember({"zeros", "mod16"}));
  zerospace->add_flag("--no-prune", no_prune, "disable the isotropy pruning");
  zerospace->add_option("--budget", budget, "node budget (0 = unlimited)");
  zerospace->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* qform = app.add_subcommand("qform", "Q on the trace-zero hyperplane");
  qform->add_option("--n", n, "field degree")->required();

  auto* permcheck = app.add_subcommand("permcheck", "is L1(x^{-1}) + L2(x) a permutation");
  std::string l1_arg;
  std::string l2_arg;
  std::string method = "both";
  permcheck->add_option("--n", n, "field degree")->required();
  permcheck->add_option("--l1", l1_arg, "map JSON or file")->required();
  permcheck->add_option("--l2", l2_arg, "map JSON or file")->required();
  permcheck->add_option("--method", method, "direct | spectral | both")
      ->check(CLI::IsMember({"direct", "spectral", "both"}));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string theorem;
  verify->add_option("--theorem", theorem, "suite name, or all")->required();
  auto* vn = verify->add_option("--n", n, "single field degree");
  auto* vfrom = verify->add_option("--from", from, "first degree");
  auto* vto = verify->add_option("--to", to, "last degree");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "random seed");
  auto* vbudget = verify->add_option("--budget", budget, "pairs per degree for sampled suites");
  vn->excludes(vfrom)->excludes(vto);

  auto* table1 = app.add_subcommand("table1", "reproduce the zero-count and dimension tables");
  std::string side;
  table1->add_option("--side", side, "left | right")
      ->required()
      ->check(CLI::IsMember({"left", "right"}));
  table1->add_option("--from", from, "first degree")->required();
  table1->add_option("--to", to, "last degree")->required();
  table1->add_option("--budget", budget, "node budget per degree (right side)");
  table1->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::optional<std::uint64_t> poly;
    if (!poly_hex.empty()) poly = parse_hex(poly_hex);
    const Output sink{out, out_path};

    if (spectrum->parsed()) {
      const Field f = make_field(n, poly);
      Spectrum s;
      Json j;
      if (what == "kloosterman") {
        s = kloosterman_spectrum(f);
        j["paper_anchor"] = "Kloosterman sums K_n(a)";
      } else {
        const Elem a = static_cast<Elem>(parse_hex(a_hex));
        if (a & ~f.mask()) throw UsageError("--a has more than n bits");
        s = walsh_row(f, named_function(f, fn_name), a);
        j["paper_anchor"] = "Walsh transform W_F(a, b)";
        j["a"] = to_hex(a);
        j["f"] = fn_name;
      }
      if (format == "csv") {
        std::ostringstream ss;
        write_csv(ss, s);
        sink.write(ss.str());
      } else {
        j["n"] = n;
        j["poly"] = to_hex(f.poly());
        j["kind"] = what;
        j["values"] = s.data;
        sink.write(j);
      }
      return kExitOk;
    }

    if (zeros->parsed()) {
      const Field f = make_field(n, poly);
      const auto z = kloosterman_zeros(f, include_zero);
      Json j;
      j["paper_anchor"] = "Kloosterman zeros";
      j["n"] = n;
      j["poly"] = to_hex(f.poly());
      j["include_zero"] = include_zero;
      Json list = Json::array();
      for (Elem e : z) list.push_back(to_hex(e));
      j["zeros"] = list;
      j["count"] = z.size();
      j["ratio_to_2^{n/2}"] = static_cast<double>(z.size()) / std::pow(2.0, n / 2.0);
      sink.write(j);
      return kExitOk;
    }

    if (zerospace->parsed()) {
      const Field f = make_field(n, poly);
      ZeroSpaceReport r;
      SearchOptions so;
      so.prune_isotropic = !no_prune;
      so.budget = budget;
      so.jobs = jobs;
      Json j;
      if (set_name == "zeros") {
        so.bound = theorem_bound_d(n) + 1;
        r = max_subspace_in_set(f, kloosterman_zeros(f), TargetSet::zeros, so);
        j["paper_anchor"] = "dimension bound for subspaces of Kloosterman zeros";
      } else {
        if (n < 5) throw RangeError("mod16 bound needs n >= 5");
        r = max_subspace_in_set(f, mod16_set(f), TargetSet::mod16, so);
        j["paper_anchor"] = "maximal subspaces of the mod-16 set attain the bound";
      }
      for (auto& [k, v] : to_json(r).items()) j[k] = v;
      sink.write(j);
      const int limit = set_name == "zeros" ? theorem_bound_d(n) : mod16_bound(n);
      return r.best_dim > limit ? kExitViolation : kExitOk;
    }

    if (qform->parsed()) {
      if (n < 3) throw RangeError("qform needs n >= 3");
      const Field f = make_field(n, poly);
      const Subspace h = hyperplane_h(f);
      const QuadForm q = restrict_q(f, h);
      Json j;
      j["paper_anchor"] = "Q on the trace-zero hyperplane";
      j["n"] = n;
      j["dim_H"] = h.dim();
      j["radical_dim"] = q.radical().dim();
      j["type"] = to_string(q.type());
      j["witt_index"] = q.witt_index();
      j["zeros"] = q.zero_count();
      j["expected_zeros"] = expected_h_zeros(n);
      j["max_isotropic_dim"] = max_isotropic_dim(q);
      sink.write(j);
      return static_cast<std::int64_t>(q.zero_count()) == expected_h_zeros(n) ? kExitOk
                                                                              : kExitViolation;
    }

    if (permcheck->parsed()) {
      const Field f = make_field(n, poly);
      LinMap l1;
      LinMap l2;
      try {
        l1 = linmap_from_json(f, read_map_arg(l1_arg));
        l2 = linmap_from_json(f, read_map_arg(l2_arg));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      Json j;
      j["paper_anchor"] = "bijectivity of L1(x^{-1}) + L2(x) via Kloosterman zeros";
      j["n"] = n;
      std::optional<bool> verdict;
      bool violation = false;
      if (method != "spectral") {
        const PermReport d = perm_direct(f, l1, l2);
        j["direct"] = to_json(d);
        verdict = d.is_perm;
      }
      if (method != "direct") {
        const PermReport s = perm_spectral(f, l1, l2);
        j["spectral"] = to_json(s);
        if (verdict && *verdict != s.is_perm) violation = true;
        verdict = verdict.value_or(s.is_perm);
      }
      if (method == "both") j["agree"] = !violation;
      j["is_perm"] = *verdict;
      // Nonzero L1, L2 never give a permutation once n >= 5.
      if (n >= 5 && *verdict && !l1.is_zero() && !l2.is_zero()) violation = true;
      j["theorem_violation"] = violation;
      sink.write(j);
      return violation ? kExitViolation : kExitOk;
    }

    if (verify->parsed()) {
      VerifyOptions vo;
      vo.jobs = jobs;
      vo.seed = seed;
      vo.poly = poly;
      if (vn->count()) {
        vo.from = n;
        vo.to = n;
      }
      if (vfrom->count()) vo.from = from;
      if (vto->count()) vo.to = to;
      if (vbudget->count()) vo.budget = budget;
      const Json j = run_verify(theorem, vo);
      sink.write(j);
      return j["pass"].get<bool>() ? kExitOk : kExitViolation;
    }

    if (table1->parsed()) {
      if (from > to) throw UsageError("--from must not exceed --to");
      std::ostringstream ss;
      bool violation = false;
      if (side == "left") {
        ss << "n,zeros,ratio,ratio_truncated,ratio_rounded\n";
        for (int k = from; k <= to; ++k) {
          const Field f = make_field(k, from == to ? poly : std::nullopt);
          const std::uint64_t z = count_kloosterman_zeros(f);
          const double r = static_cast<double>(z) / std::pow(2.0, k / 2.0);
          ss << k << ',' << z << ',' << fixed4(r) << ',' << fixed2(std::floor(r * 100) / 100)
             << ',' << fixed2(std::round(r * 100) / 100) << '\n';
        }
      } else {
        if (from < 5) throw RangeError("table1 right covers n >= 5");
        ss << "n,max_dim,bound_d,nodes_visited,exhaustive\n";
        for (int k = from; k <= to; ++k) {
          const Field f = make_field(k, from == to ? poly : std::nullopt);
          const ZeroSpaceReport r = max_zero_subspace(f, jobs, budget);
          ss << k << ',' << r.best_dim << ',' << r.bound - 1 << ',' << r.nodes_visited << ','
             << (r.exhaustive ? "true" : "false") << '\n';
          violation = violation || r.best_dim > r.bound - 1;
        }
      }
      sink.write(ss.str());
      return violation ? kExitViolation : kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace kloos
