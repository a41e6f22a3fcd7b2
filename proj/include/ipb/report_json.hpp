#ifndef IPB_REPORT_JSON_HPP
#define IPB_REPORT_JSON_HPP

#include <ostream>
#include <string>

#include <json.hpp>

namespace ipb {

using Json = nlohmann::ordered_json;

/// Render with every finite double at 17 significant digits so a reparse
/// reproduces the exact bit pattern.
void write_json(std::ostream& out, const Json& value);
std::string json_to_string(const Json& value);

} // namespace ipb

#endif
