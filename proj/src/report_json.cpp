#include "ipb/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ipb/errors.hpp"

namespace ipb {

namespace {

void write_value(std::ostream& out, const Json& v) {
    switch (v.type()) {
        case Json::value_t::object: {
            out << '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out << ',';
                first = false;
                out << Json(it.key()).dump() << ':';
                write_value(out, it.value());
            }
            out << '}';
            break;
        }
        case Json::value_t::array: {
            out << '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out << ',';
                first = false;
                write_value(out, item);
            }
            out << ']';
            break;
        }
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            if (!std::isfinite(d)) {
                raise(Errc::evaluation_error, "reports may not contain non-finite numbers");
            }
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", d);
            out << buf;
            break;
        }
        default:
            out << v.dump();
            break;
    }
}

} // namespace

void write_json(std::ostream& out, const Json& value) {
    write_value(out, value);
    out << '\n';
}

std::string json_to_string(const Json& value) {
    std::ostringstream out;
    write_json(out, value);
    return out.str();
}

} // namespace ipb
