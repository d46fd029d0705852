#pragma once

// JSON and CSV forms of maps, spectra and reports.

#include <iosfwd>
#include <string>

#include "kloos/gf2n.hpp"
#include "kloos/linmap.hpp"
#include "kloos/permcheck.hpp"
#include "kloos/spectra.hpp"
#include "kloos/zerospace.hpp"
#include "json.hpp"

namespace kloos {

using Json = nlohmann::ordered_json;

// {"n": int, "matrix_rows": [hex, ...], "linearized": [hex, ...] | null}
Json to_json(const Field& f, const LinMap& l);
Json to_json(const LinMap& l);
// Reads matrix_rows, else linearized; when both are present they must agree.
// Throws std::invalid_argument on malformed input.
LinMap linmap_from_json(const Field& f, const Json& j);

Json to_json(const PermReport& r);
Json to_json(const ZeroSpaceReport& r);
Json to_json(const ChinReport& r);

// One row per element: elem_hex,value
void write_csv(std::ostream& out, const Spectrum& s);

}  // namespace kloos
