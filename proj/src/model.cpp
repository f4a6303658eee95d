#include "prp/model.hpp"

#include "prp/error.hpp"
#include "prp/json_text.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace prp {

namespace {

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ParseError, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

[[noreturn]] void invalid(const std::string& invariant, const std::string& detail) {
    throw Error(ErrorCode::ValidationError, invariant + " (" + detail + ")");
}

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) parse_error(path, "expected an object");
    return j;
}

const Json& expect_array(const Json& j, const std::string& path) {
    if (!j.is_array()) parse_error(path, "expected an array");
    return j;
}

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) parse_error(child(path, key), "unknown field");
    }
}

const Json& required(const Json& obj, std::string_view key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) parse_error(child(path, key), "missing field");
    return *it;
}

std::string text_at(const Json& j, const std::string& path) {
    if (!j.is_string()) parse_error(path, "expected a string");
    return j.get<std::string>();
}

std::size_t count_at(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned()) parse_error(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

// Digits with an optional sign and a nonzero denominator: well formed but
// possibly not in lowest terms.
bool plain_fraction(const std::string& s) {
    const std::size_t start = !s.empty() && s.front() == '-' ? 1 : 0;
    const auto slash = s.find('/');
    const std::string num = s.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    const auto digits = [](const std::string& d) {
        return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    return digits(num) && digits(den) && den.find_first_not_of('0') != std::string::npos;
}

Rational rational_at(const Json& j, const std::string& path) {
    const std::string s = text_at(j, path);
    if (auto r = parse_rational(s)) return *r;
    if (plain_fraction(s)) invalid("rational strings are reduced fractions or integers", path + " is \"" + s + "\"");
    parse_error(path, "malformed rational \"" + s + "\"");
}

Vector vector_at(const Json& j, const std::string& path) {
    Vector out;
    for (std::size_t i = 0; i < expect_array(j, path).size(); ++i) out.push_back(rational_at(j[i], child(path, i)));
    return out;
}

void check_name(const std::string& name, const std::string& path) {
    const bool ok = !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
    if (!ok) invalid("entity names use letters, digits, '_', '-' and '.'", path);
}

template <class T, class Fn>
Named<T> named_at(const Json& obj, const std::string& path, Fn read) {
    Named<T> out;
    for (const auto& [key, value] : expect_object(obj, path).items()) {
        check_name(key, child(path, key));
        out.emplace_back(key, read(value, child(path, key)));
    }
    return out;
}

template <class T>
const T* lookup(const Named<T>& items, std::string_view name) {
    for (const auto& [n, v] : items)
        if (n == name) return &v;
    return nullptr;
}

FiltrationSpec filtration_at(const Json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, {"natural", "explicit"}, path);
    if (j.size() != 1) parse_error(path, "expected exactly one of \"natural\" or \"explicit\"");
    FiltrationSpec spec;
    if (j.contains("natural")) {
        const std::string p = child(path, "natural");
        for (std::size_t i = 0; i < expect_array(j["natural"], p).size(); ++i)
            spec.natural.push_back(text_at(j["natural"][i], child(p, i)));
        if (spec.natural.empty()) invalid("natural filtration names at least one process", p);
        return spec;
    }
    const std::string p = child(path, "explicit");
    const Json& times = expect_array(j["explicit"], p);
    for (std::size_t t = 0; t < times.size(); ++t) {
        const std::string pt = child(p, t);
        std::vector<std::vector<std::string>> partition;
        for (std::size_t b = 0; b < expect_array(times[t], pt).size(); ++b) {
            const std::string pb = child(pt, b);
            std::vector<std::string> block;
            for (std::size_t k = 0; k < expect_array(times[t][b], pb).size(); ++k)
                block.push_back(text_at(times[t][b][k], child(pb, k)));
            partition.push_back(std::move(block));
        }
        spec.explicit_blocks.push_back(std::move(partition));
    }
    return spec;
}

Json vector_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

template <class Fn>
void rethrow_as_validation(const std::string& invariant, Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError) throw;
        invalid(invariant, e.what());
    }
}

void build(ModelDocument& m) {
    const std::size_t n = m.outcomes.size();
    if (n == 0) invalid("the space has at least one outcome", "/space/outcomes");
    if (std::set<std::string>(m.outcomes.begin(), m.outcomes.end()).size() != n)
        invalid("outcome names are distinct", "/space/outcomes");
    if (m.probabilities.size() != n)
        invalid("one probability per outcome", std::to_string(m.probabilities.size()) + " for " + std::to_string(n));
    if (m.processes.empty()) invalid("the model defines at least one process", "/processes");

    Filtration f;
    if (!m.filtration) {
        std::vector<Process> all;
        for (const auto& [name, p] : m.processes) all.push_back(p);
        f = natural_filtration(all);
    } else if (!m.filtration->is_explicit()) {
        std::vector<Process> chosen;
        for (const auto& name : m.filtration->natural) {
            const Process* p = m.process(name);
            if (!p) invalid("the natural filtration names defined processes", "\"" + name + "\"");
            chosen.push_back(*p);
        }
        f = natural_filtration(chosen);
    } else {
        rethrow_as_validation("explicit partitions cover the outcomes", [&] { f = m.explicit_filtration(); });
    }
    rethrow_as_validation("the space is valid", [&] { m.space = build_space(m.outcomes, m.probabilities, f, m.horizon); });
    if (!m.space.measure().has_full_support()) invalid("every outcome has positive probability", "/space/probabilities");

    for (const auto& [name, p] : m.processes) {
        if (!is_adapted(p, f)) invalid("processes are adapted to the filtration", "\"" + name + "\"");
    }
    for (const auto& [name, tau] : m.random_times) {
        const std::string where = "/random_times/" + name;
        if (tau.size() != n) invalid("random times have one value per outcome", where);
        if (std::any_of(tau.begin(), tau.end(), [&](std::size_t t) { return t > m.horizon; }))
            invalid("random times lie in 0..horizon", where);
    }
    for (const auto& [name, q] : m.measures) {
        const std::string where = "/measures/" + name;
        if (name == "P") invalid("\"P\" names the base measure", where);
        if (q.size() != n) invalid("measures have one weight per outcome", where);
        rethrow_as_validation("measures are probabilities", [&] { Measure check(q); });
    }
    for (const auto& [name, v] : m.variables) {
        if (v.size() != n) invalid("variables have one value per outcome", "/variables/" + name);
    }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

bool ModelDocument::operator==(const ModelDocument& o) const {
    return name == o.name && outcomes == o.outcomes && probabilities == o.probabilities && horizon == o.horizon &&
           processes == o.processes && filtration == o.filtration && random_times == o.random_times &&
           measures == o.measures && variables == o.variables;
}

const Process* ModelDocument::process(std::string_view n) const { return lookup(processes, n); }
const std::vector<std::size_t>* ModelDocument::random_time(std::string_view n) const { return lookup(random_times, n); }
const Vector* ModelDocument::measure(std::string_view n) const { return lookup(measures, n); }
const Vector* ModelDocument::variable(std::string_view n) const { return lookup(variables, n); }

std::optional<std::size_t> ModelDocument::outcome_index(std::string_view n) const {
    const auto it = std::find(outcomes.begin(), outcomes.end(), n);
    if (it == outcomes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - outcomes.begin());
}

Filtration ModelDocument::explicit_filtration() const {
    if (!filtration || !filtration->is_explicit())
        throw Error(ErrorCode::UnknownEntity, "the model has no explicit filtration");
    if (filtration->explicit_blocks.size() != horizon + 1)
        invalid("one partition per time 0..horizon", std::to_string(filtration->explicit_blocks.size()) + " given");
    Filtration f;
    for (std::size_t t = 0; t < filtration->explicit_blocks.size(); ++t) {
        std::vector<Block> blocks;
        for (const auto& names : filtration->explicit_blocks[t]) {
            Block b;
            for (const auto& name : names) {
                const auto w = outcome_index(name);
                if (!w) invalid("partition blocks name outcomes", "\"" + name + "\" at time " + std::to_string(t));
                b.push_back(*w);
            }
            blocks.push_back(std::move(b));
        }
        f.emplace_back(std::move(blocks), outcomes.size());
    }
    return f;
}

ModelDocument parse_model(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(column) + ": malformed document");
    }
    expect_object(root, "");
    check_keys(root, {"name", "space", "processes", "filtration", "random_times", "measures", "variables"}, "");

    ModelDocument m;
    m.name = text_at(required(root, "name", ""), "/name");
    const Json& space = expect_object(required(root, "space", ""), "/space");
    check_keys(space, {"outcomes", "probabilities", "horizon"}, "/space");
    const Json& outcomes = expect_array(required(space, "outcomes", "/space"), "/space/outcomes");
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        m.outcomes.push_back(text_at(outcomes[i], child("/space/outcomes", i)));
    m.probabilities = vector_at(required(space, "probabilities", "/space"), "/space/probabilities");
    m.horizon = count_at(required(space, "horizon", "/space"), "/space/horizon");

    m.processes = named_at<Process>(required(root, "processes", ""), "/processes", [&](const Json& j, const std::string& p) {
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < expect_array(j, p).size(); ++i) rows.push_back(vector_at(j[i], child(p, i)));
        if (rows.size() != m.outcomes.size())
            invalid("process rows match outcomes", p + " has " + std::to_string(rows.size()) + " rows for " +
                                                       std::to_string(m.outcomes.size()) + " outcomes");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.horizon + 1) invalid("process rows span times 0..horizon", child(p, i));
        }
        return Process::from_rows(rows);
    });
    if (root.contains("filtration")) m.filtration = filtration_at(root["filtration"], "/filtration");
    if (root.contains("random_times")) {
        m.random_times = named_at<std::vector<std::size_t>>(root["random_times"], "/random_times",
                                                             [](const Json& j, const std::string& p) {
                                                                 std::vector<std::size_t> out;
                                                                 for (std::size_t i = 0; i < expect_array(j, p).size(); ++i)
                                                                     out.push_back(count_at(j[i], child(p, i)));
                                                                 return out;
                                                             });
    }
    if (root.contains("measures")) m.measures = named_at<Vector>(root["measures"], "/measures", vector_at);
    if (root.contains("variables")) m.variables = named_at<Vector>(root["variables"], "/variables", vector_at);
    build(m);
    return m;
}

std::string emit_model(const ModelDocument& m) {
    Json root;
    root["name"] = m.name;
    Json space;
    space["outcomes"] = m.outcomes;
    space["probabilities"] = vector_json(m.probabilities);
    space["horizon"] = m.horizon;
    root["space"] = space;
    Json processes = Json::object();
    for (const auto& [name, p] : m.processes) {
        Json rows = Json::array();
        for (const auto& row : p.rows()) rows.push_back(vector_json(row));
        processes[name] = rows;
    }
    root["processes"] = processes;
    if (m.filtration) {
        Json f;
        if (m.filtration->is_explicit()) {
            f["explicit"] = m.filtration->explicit_blocks;
        } else {
            f["natural"] = m.filtration->natural;
        }
        root["filtration"] = f;
    }
    if (!m.random_times.empty()) {
        Json times = Json::object();
        for (const auto& [name, tau] : m.random_times) times[name] = tau;
        root["random_times"] = times;
    }
    if (!m.measures.empty()) {
        Json measures = Json::object();
        for (const auto& [name, q] : m.measures) measures[name] = vector_json(q);
        root["measures"] = measures;
    }
    if (!m.variables.empty()) {
        Json variables = Json::object();
        for (const auto& [name, v] : m.variables) variables[name] = vector_json(v);
        root["variables"] = variables;
    }
    return format_json(root);
}

ModelDocument load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read model file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

}  // namespace prp
