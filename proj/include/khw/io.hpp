#pragma once
// JSON input/output: diagram files, complex export/import, deterministic
// serialization helpers.

#include <string>

#include "json.hpp"
#include "khw/complex.hpp"
#include "khw/diagram.hpp"

namespace khw {

using json = nlohmann::ordered_json;

LinkDiagram diagram_from_json(const json &j);
LinkDiagram load_diagram(const std::string &path_or_text);  // file path or PD text
json diagram_to_json(const LinkDiagram &d);

json complex_to_json(const Complex &c);
Complex complex_from_json(const json &j);

// FNV-1a of the canonical serialization; used as the input digest in reports.
std::string fnv1a_hex(const std::string &data);

}  // namespace khw
