#include "gsf/table_io.hpp"

#include <cmath>
#include <cstdio>

namespace gsf::io {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

// JSON string escaping for the hand-rolled emitter. Output stays byte
// stable because no locale or stream state is involved.
std::string jesc(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if ((unsigned char)c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// JSON has no literal for NaN or infinity; emit null instead.
std::string jnum(double x) { return std::isfinite(x) ? fmt17(x) : "null"; }

}  // namespace

std::string emit_csv(const std::vector<TableRow>& rows, const ConfigEcho& config) {
    std::string out;
    for (const auto& [k, v] : config) out += "# " + k + " = " + v + "\n";
    out += "m,n,nu,omega_mn,re,im,verdict,err,route\n";
    for (const auto& r : rows) {
        out += std::to_string(r.m) + "," + std::to_string(r.n) + "," + fmt17(r.nu) + "," +
               fmt17(r.omega_mn) + "," + fmt17(r.re) + ",";
        if (r.im) out += fmt17(*r.im);
        out += "," + r.verdict + "," + fmt17(r.err) + "," + r.route + "\n";
    }
    return out;
}

std::string emit_json(const std::vector<TableRow>& rows, const ConfigEcho& config) {
    std::string out = "{\n  \"config\": {";
    bool first = true;
    for (const auto& [k, v] : config) {
        out += first ? "\n" : ",\n";
        out += "    \"" + jesc(k) + "\": \"" + jesc(v) + "\"";
        first = false;
    }
    out += first ? "},\n" : "\n  },\n";
    out += "  \"rows\": [";
    first = true;
    for (const auto& r : rows) {
        out += first ? "\n" : ",\n";
        out += "    {\"m\": " + std::to_string(r.m) + ", \"n\": " + std::to_string(r.n) +
               ", \"nu\": " + jnum(r.nu) + ", \"omega_mn\": " + jnum(r.omega_mn) +
               ", \"re\": " + jnum(r.re) + ", \"im\": " + (r.im ? jnum(*r.im) : "null") +
               ", \"verdict\": \"" + jesc(r.verdict) + "\", \"err\": " + jnum(r.err) +
               ", \"route\": \"" + jesc(r.route) + "\"}";
        first = false;
    }
    out += first ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace gsf::io
