#pragma once

#include <json.hpp>

#include <string>

namespace prp {

using Json = nlohmann::ordered_json;

/// Indented JSON with arrays of scalars kept on one line; ends with a newline.
std::string format_json(const Json& value);

}  // namespace prp
