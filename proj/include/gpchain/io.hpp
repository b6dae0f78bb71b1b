// io.hpp — File formats: sweep CSV (bit-exact, re-parseable), SVG curve
// plots, key=value config files, and pi-rational numeric expressions.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gpchain/sweep.hpp"

namespace gpchain {

// Writes `# key=value` comment lines, the column header
// `axis,overlay,phi,phi_err`, then one row per table entry with 17
// significant digits; line feeds only. The output feeds parse_csv
// unchanged: emit(parse(emit(x))) is byte-identical to emit(x).
void emit_csv(const SweepTable& table, std::ostream& out);
void write_csv(const SweepTable& table, const std::string& path);

// Inverse of emit_csv. Throws std::invalid_argument on malformed input,
// with a line number in the message.
SweepTable parse_csv(std::istream& in);
SweepTable read_csv(const std::string& path);

// Two-column variant used for time series: same comment header, columns
// named by the caller (e.g. "t,f").
void emit_series_csv(
    const std::vector<std::pair<std::string, std::string>>& header,
    const std::string& columns, const std::vector<double>& x,
    const std::vector<double>& y, std::ostream& out);

// Self-contained SVG: one polyline per overlay value in first-appearance
// order, linear axes with tick labels, the sweep axis name on the abscissa
// and "GP" on the ordinate, and a legend when overlays are present.
// Presentational only; nothing parses it back.
void emit_plot(const SweepTable& table, std::ostream& out);
void write_plot(const SweepTable& table, const std::string& path);

// Reads `key = value` lines; `#` starts a comment, blank lines are
// skipped. Pairs are returned in file order (later duplicates are the
// caller's business). Throws std::invalid_argument with a line number on
// lines without `=` or with an empty key.
std::vector<std::pair<std::string, std::string>> parse_config(
    std::istream& in);
std::vector<std::pair<std::string, std::string>> read_config(
    const std::string& path);

// Parses a plain decimal number or a pi-rational expression: an optional
// sign, an optional decimal factor, an optional `*`, the word `pi`, and an
// optional `/ divisor` — e.g. "0.03", "pi", "-pi/2", "2pi/3", "3*pi/10".
// Whitespace is ignored. Throws std::invalid_argument on anything else.
double parse_pi_expression(const std::string& text);

}  // namespace gpchain
