#include "prp/json_text.hpp"

#include <algorithm>

namespace prp {

namespace {

bool is_flat(const Json& array) {
    return std::none_of(array.begin(), array.end(), [](const Json& v) { return v.is_structured(); });
}

void write(const Json& value, std::size_t depth, std::string& out) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    if (value.is_object()) {
        if (value.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [key, item] : value.items()) {
            out += pad + Json(key).dump() + ": ";
            write(item, depth + 1, out);
            out += ++i < value.size() ? ",\n" : "\n";
        }
        out += close + "}";
    } else if (value.is_array()) {
        if (is_flat(value)) {
            out += "[";
            for (std::size_t i = 0; i < value.size(); ++i) out += (i ? ", " : "") + value[i].dump();
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < value.size(); ++i) {
            out += pad;
            write(value[i], depth + 1, out);
            out += i + 1 < value.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else {
        out += value.dump();
    }
}

}  // namespace

std::string format_json(const Json& value) {
    std::string out;
    write(value, 0, out);
    out += "\n";
    return out;
}

}  // namespace prp
