#include "ipb/document.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ipb/report_json.hpp"

namespace ipb {

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

double number_field(const Json& v, const std::string& where) {
    if (!v.is_number()) {
        raise(Errc::schema_error, where + " must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        raise(Errc::schema_error, where + " must be finite");
    }
    return d;
}

} // namespace

const std::vector<double>* AssessmentDocument::find_gamble(const std::string& name) const {
    for (const auto& [n, values] : gambles) {
        if (n == name) return &values;
    }
    return nullptr;
}

PartitionPtr AssessmentDocument::partition() const {
    return make_partition(atoms);
}

Assessment AssessmentDocument::to_assessment() const {
    const PartitionPtr part = partition();
    Assessment a(part);
    for (const auto& [name, value] : lower) {
        a.add_lower(name, Gamble(part, *find_gamble(name)), value);
    }
    for (const auto& [name, value] : upper) {
        a.add_upper(name, Gamble(part, *find_gamble(name)), value);
    }
    return a;
}

AssessmentDocument parse_document(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(Errc::parse_error, std::string("invalid JSON at byte ") + std::to_string(e.byte) +
                                     ": " + e.what());
    }
    if (!doc.is_object()) {
        raise(Errc::schema_error, "top level must be an object");
    }
    for (const auto& [key, _] : doc.items()) {
        if (key != "atoms" && key != "gambles" && key != "lower" && key != "upper") {
            raise(Errc::schema_error, "unknown field '" + key + "'");
        }
    }
    if (!doc.contains("atoms") || !doc.contains("gambles") || !doc.contains("lower")) {
        raise(Errc::schema_error, "required fields: atoms, gambles, lower");
    }

    AssessmentDocument out;
    if (!doc["atoms"].is_array() || doc["atoms"].empty()) {
        raise(Errc::schema_error, "atoms must be a non-empty array of strings");
    }
    for (const auto& a : doc["atoms"]) {
        if (!a.is_string()) raise(Errc::schema_error, "atoms must be strings");
        out.atoms.push_back(a.get<std::string>());
    }
    const std::size_t n = out.atoms.size();

    if (!doc["gambles"].is_object()) {
        raise(Errc::schema_error, "gambles must be an object");
    }
    for (const auto& [name, values] : doc["gambles"].items()) {
        if (!is_identifier(name)) {
            raise(Errc::schema_error, "gamble name '" + name + "' is not an identifier");
        }
        if (!values.is_array()) {
            raise(Errc::schema_error, "gamble '" + name + "' must be an array");
        }
        if (values.size() != n) {
            raise(Errc::dimension_error, "gamble '" + name + "' has " +
                                             std::to_string(values.size()) + " values, expected " +
                                             std::to_string(n));
        }
        std::vector<double> v;
        for (const auto& x : values) v.push_back(number_field(x, "gamble '" + name + "'"));
        out.gambles.emplace_back(name, std::move(v));
    }

    auto read_map = [&](const char* field, std::vector<std::pair<std::string, double>>& into) {
        if (!doc.contains(field)) return;
        if (!doc[field].is_object()) {
            raise(Errc::schema_error, std::string(field) + " must be an object");
        }
        for (const auto& [name, value] : doc[field].items()) {
            if (out.find_gamble(name) == nullptr) {
                raise(Errc::schema_error,
                      std::string(field) + " names undeclared gamble '" + name + "'");
            }
            into.emplace_back(name, number_field(value, std::string(field) + " of '" + name + "'"));
        }
    };
    read_map("lower", out.lower);
    read_map("upper", out.upper);

    // Constructor checks: distinct non-empty atoms.
    (void)out.partition();
    return out;
}

AssessmentDocument load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(Errc::parse_error, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
}

std::string serialize_document(const AssessmentDocument& doc) {
    Json j;
    j["atoms"] = doc.atoms;
    Json gambles = Json::object();
    for (const auto& [name, values] : doc.gambles) gambles[name] = values;
    j["gambles"] = std::move(gambles);
    Json lower = Json::object();
    for (const auto& [name, value] : doc.lower) lower[name] = value;
    j["lower"] = std::move(lower);
    Json upper = Json::object();
    for (const auto& [name, value] : doc.upper) upper[name] = value;
    j["upper"] = std::move(upper);
    return json_to_string(j);
}

} // namespace ipb
