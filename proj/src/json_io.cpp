#include "kloos/json_io.hpp"

#include <ostream>
#include <stdexcept>

namespace kloos {

namespace {

Json hex_array(const std::vector<Elem>& v) {
  Json a = Json::array();
  for (Elem e : v) a.push_back(to_hex(e));
  return a;
}

std::vector<Elem> read_hex_array(const Json& j, int n, const char* key) {
  if (!j.is_array()) throw std::invalid_argument(std::string(key) + " must be an array");
  std::vector<Elem> out;
  for (const auto& e : j) {
    std::uint64_t v = 0;
    if (e.is_string()) {
      v = parse_hex(e.get<std::string>());
    } else if (e.is_number_unsigned()) {
      v = e.get<std::uint64_t>();
    } else {
      throw std::invalid_argument(std::string(key) + " entries must be hex strings");
    }
    if (n < 32 && (v >> n))
      throw std::invalid_argument(std::string(key) + " entry " + to_hex(v) +
                                  " has more than n bits");
    out.push_back(static_cast<Elem>(v));
  }
  if (static_cast<int>(out.size()) != n)
    throw std::invalid_argument(std::string(key) + " must have exactly n entries");
  return out;
}

}  // namespace

Json to_json(const LinMap& l) {
  Json j;
  j["n"] = l.degree();
  j["matrix_rows"] = hex_array(l.rows());
  j["linearized"] = nullptr;
  return j;
}

Json to_json(const Field& f, const LinMap& l) {
  Json j = to_json(l);
  j["linearized"] = hex_array(l.linearized(f));
  return j;
}

LinMap linmap_from_json(const Field& f, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("map JSON must be an object");
  const int n = f.degree();
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<int>() != n)
      throw std::invalid_argument("map JSON n does not match the field degree");
  }
  const bool has_rows = j.contains("matrix_rows") && !j["matrix_rows"].is_null();
  const bool has_lin = j.contains("linearized") && !j["linearized"].is_null();
  if (!has_rows && !has_lin)
    throw std::invalid_argument("map JSON needs matrix_rows or linearized");
  std::optional<LinMap> from_rows;
  if (has_rows) {
    const auto rows = read_hex_array(j["matrix_rows"], n, "matrix_rows");
    from_rows = LinMap::from_rows(n, rows);
  }
  if (has_lin) {
    const auto coeffs = read_hex_array(j["linearized"], n, "linearized");
    LinMap l = LinMap::from_linearized(f, coeffs);
    if (from_rows && !(*from_rows == l))
      throw std::invalid_argument("matrix_rows and linearized describe different maps");
    return l;
  }
  return *from_rows;
}

Json to_json(const PermReport& r) {
  Json j;
  j["is_perm"] = r.is_perm;
  j["method"] = std::string(to_string(r.method));
  Json w;
  w["kind"] = std::string(to_string(r.witness));
  switch (r.witness) {
    case WitnessKind::collision:
      w["x1"] = to_hex(r.x1);
      w["x2"] = to_hex(r.x2);
      break;
    case WitnessKind::spectral_b: w["b"] = to_hex(r.b); break;
    case WitnessKind::kernel_overlap: w["v"] = to_hex(r.x1); break;
    case WitnessKind::none: break;
  }
  j["witness"] = w;
  return j;
}

Json to_json(const ZeroSpaceReport& r) {
  Json j;
  j["n"] = r.n;
  j["target"] = std::string(to_string(r.target));
  j["best_dim"] = r.best_dim;
  j["best_basis"] = hex_array(r.best_basis.basis());
  j["bound"] = r.bound;
  j["nodes_visited"] = r.nodes_visited;
  j["exhaustive"] = r.exhaustive;
  return j;
}

Json to_json(const ChinReport& r) {
  Json j;
  j["n"] = r.n;
  j["scope"] = r.scope == ChinScope::all_maps ? "all_maps" : "scalar_maps";
  j["candidates_checked"] = r.candidates_checked;
  j["probe_survivors"] = r.probe_survivors;
  j["permutations_found"] = r.permutations.size();
  Json list = Json::array();
  for (const auto& l : r.permutations) list.push_back(to_json(l));
  j["permutations"] = list;
  j["wall_time"] = r.wall_time;
  return j;
}

void write_csv(std::ostream& out, const Spectrum& s) {
  out << "elem_hex,value\n";
  for (std::size_t a = 0; a < s.data.size(); ++a) out << to_hex(a) << ',' << s.data[a] << '\n';
}

}  // namespace kloos
