#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gsf::io {

/// One table row: a (transition, nu) cell of the susceptivity sweep.
struct TableRow {
    int m = 0;
    int n = 0;
    double nu = 0.0;
    double omega_mn = 0.0;
    double re = 0.0;
    std::optional<double> im;  // absent when the principal value diverges
    std::string verdict;       // lowercase-hyphenated token
    double err = 0.0;
    std::string route;
};

/// Resolved key=value pairs echoed into every output's header.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Shortest exact decimal form of x at 17 significant digits.
std::string fmt17(double x);

/// CSV: '#'-prefixed config echo, then the fixed header
/// m,n,nu,omega_mn,re,im,verdict,err,route and one line per row.
/// A divergent im is an empty field.
std::string emit_csv(const std::vector<TableRow>& rows, const ConfigEcho& config);

/// JSON object {"config": {...}, "rows": [...]} with the same row keys.
/// A divergent im is null. Byte-stable: identical inputs give identical text.
std::string emit_json(const std::vector<TableRow>& rows, const ConfigEcho& config);

}  // namespace gsf::io
