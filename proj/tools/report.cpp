#include <cmath>
#include <cstdio>

#include "cli.hpp"

namespace chroma::cli {

namespace {

void dump_rec(const nlohmann::json& j, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (j.type()) {
        case value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += nlohmann::json(it.key()).dump();
                out += ':';
                dump_rec(it.value(), out);
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ',';
                first = false;
                dump_rec(item, out);
            }
            out += ']';
            break;
        }
        case value_t::number_float: {
            double x = j.get<double>();
            if (std::isnan(x)) {
                out += "\"nan\"";
            } else if (std::isinf(x)) {
                out += x > 0 ? "\"inf\"" : "\"-inf\"";
            } else {
                if (x == 0.0) x = 0.0;  // normalise -0
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", x);
                out += buf;
            }
            break;
        }
        default:
            out += j.dump();
            break;
    }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
    std::string out;
    dump_rec(j, out);
    return out;
}

}  // namespace chroma::cli
