// io.cpp — CSV, SVG, config, and numeric-expression readers/writers.
#include "gpchain/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gpchain {

namespace {

constexpr const char* kColumns = "axis,overlay,phi,phi_err";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad_line(const char* what, int line) {
  std::ostringstream os;
  os << what << " at line " << line;
  throw std::invalid_argument(os.str());
}

double parse_field(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') bad_line("malformed number", line);
  return v;
}

void check_stream(const std::ostream& out, const std::string& path) {
  if (!out)
    throw std::runtime_error("write failed: " + path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  return file;
}

}  // namespace

void emit_csv(const SweepTable& table, std::ostream& out) {
  if (table.rows.empty())
    throw std::invalid_argument("refusing to emit an empty table");
  for (const auto& [key, value] : table.header)
    out << "# " << key << '=' << value << '\n';
  out << kColumns << '\n';
  for (const SweepRow& r : table.rows)
    out << fmt(r.axis) << ',' << fmt(r.overlay) << ',' << fmt(r.phi) << ','
        << fmt(r.phi_err) << '\n';
}

void write_csv(const SweepTable& table, const std::string& path) {
  std::ofstream file = open_out(path);
  emit_csv(table, file);
  file.flush();
  check_stream(file, path);
}

SweepTable parse_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  int lineno = 0;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (saw_columns) bad_line("comment after data began", lineno);
      std::string body = trim(line.substr(1));
      const std::size_t eq = body.find('=');
      if (eq == std::string::npos || eq == 0)
        bad_line("malformed header comment", lineno);
      table.header.emplace_back(trim(body.substr(0, eq)),
                                trim(body.substr(eq + 1)));
      continue;
    }
    if (!saw_columns) {
      if (line != kColumns) bad_line("missing column header", lineno);
      saw_columns = true;
      continue;
    }
    SweepRow row;
    double* fields[4] = {&row.axis, &row.overlay, &row.phi, &row.phi_err};
    std::size_t pos = 0;
    for (int f = 0; f < 4; ++f) {
      const std::size_t comma = line.find(',', pos);
      const bool last = f == 3;
      if (last != (comma == std::string::npos))
        bad_line("expected 4 comma-separated fields", lineno);
      const std::string cell =
          line.substr(pos, last ? std::string::npos : comma - pos);
      *fields[f] = parse_field(cell, lineno);
      pos = comma + 1;
    }
    table.rows.push_back(row);
  }
  if (!saw_columns) bad_line("no column header found", lineno);
  if (table.rows.empty()) bad_line("no data rows found", lineno);
  return table;
}

SweepTable read_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for reading: " + path);
  return parse_csv(file);
}

void emit_series_csv(
    const std::vector<std::pair<std::string, std::string>>& header,
    const std::string& columns, const std::vector<double>& x,
    const std::vector<double>& y, std::ostream& out) {
  if (x.size() != y.size())
    throw std::invalid_argument("series columns differ in length");
  if (x.empty()) throw std::invalid_argument("refusing to emit empty series");
  for (const auto& [key, value] : header)
    out << "# " << key << '=' << value << '\n';
  out << columns << '\n';
  for (std::size_t i = 0; i < x.size(); ++i)
    out << fmt(x[i]) << ',' << fmt(y[i]) << '\n';
}

namespace {

constexpr int kWidth = 960;
constexpr int kHeight = 600;
constexpr double kLeft = 72.0, kRight = 800.0;  // plot box x range
constexpr double kTop = 40.0, kBottom = 540.0;  // plot box y range

constexpr const char* kPalette[] = {"#1b6ca8", "#c0392b", "#27ae60",
                                    "#8e44ad", "#e67e22", "#16a085",
                                    "#7f8c8d", "#2c3e50"};

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string header_value(const SweepTable& table, const char* key,
                         const char* fallback) {
  for (const auto& [k, v] : table.header)
    if (k == key) return v;
  return fallback;
}

}  // namespace

void emit_plot(const SweepTable& table, std::ostream& out) {
  if (table.rows.empty())
    throw std::invalid_argument("refusing to plot an empty table");

  std::vector<double> overlays;
  for (const SweepRow& r : table.rows) {
    bool seen = false;
    for (double v : overlays)
      if (v == r.overlay) { seen = true; break; }
    if (!seen) overlays.push_back(r.overlay);
  }

  double xmin = table.rows.front().axis, xmax = xmin;
  double ymin = 0.0, ymax = 0.0;
  bool have_y = false;
  for (const SweepRow& r : table.rows) {
    xmin = std::min(xmin, r.axis);
    xmax = std::max(xmax, r.axis);
    if (!std::isfinite(r.phi)) continue;
    if (!have_y) { ymin = ymax = r.phi; have_y = true; }
    ymin = std::min(ymin, r.phi);
    ymax = std::max(ymax, r.phi);
  }
  if (!have_y) { ymin = 0.0; ymax = 1.0; }
  if (xmax == xmin) { xmin -= 1.0; xmax += 1.0; }
  if (ymax == ymin) { ymin -= 0.5; ymax += 0.5; }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const auto sx = [&](double x) {
    return kLeft + (kRight - kLeft) * (x - xmin) / (xmax - xmin);
  };
  const auto sy = [&](double y) {
    return kBottom - (kBottom - kTop) * (y - ymin) / (ymax - ymin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#333333\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double px = sx(fx);
    out << "<line x1=\"" << svg_num(px) << "\" y1=\"" << svg_num(kTop)
        << "\" x2=\"" << svg_num(px) << "\" y2=\"" << svg_num(kBottom)
        << "\" stroke=\"#e3e3e3\"/>\n";
    out << "<text x=\"" << svg_num(px) << "\" y=\"" << svg_num(kBottom + 20)
        << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    const double py = sy(fy);
    out << "<line x1=\"" << svg_num(kLeft) << "\" y1=\"" << svg_num(py)
        << "\" x2=\"" << svg_num(kRight) << "\" y2=\"" << svg_num(py)
        << "\" stroke=\"#e3e3e3\"/>\n";
    out << "<text x=\"" << svg_num(kLeft - 8) << "\" y=\"" << svg_num(py + 4)
        << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
  }
  out << "<line x1=\"" << svg_num(kLeft) << "\" y1=\"" << svg_num(kBottom)
      << "\" x2=\"" << svg_num(kRight) << "\" y2=\"" << svg_num(kBottom)
      << "\" stroke=\"#333333\"/>\n";
  out << "<line x1=\"" << svg_num(kLeft) << "\" y1=\"" << svg_num(kTop)
      << "\" x2=\"" << svg_num(kLeft) << "\" y2=\"" << svg_num(kBottom)
      << "\" stroke=\"#333333\"/>\n";

  const std::string xlabel = header_value(table, "axis", "axis");
  out << "<text x=\"" << svg_num((kLeft + kRight) / 2) << "\" y=\""
      << svg_num(kBottom + 45) << "\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
  out << "<text x=\"20\" y=\"" << svg_num((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << svg_num((kTop + kBottom) / 2) << ")\">GP</text>\n";
  out << "</g>\n";

  for (std::size_t c = 0; c < overlays.size(); ++c) {
    const char* color = kPalette[c % (sizeof kPalette / sizeof *kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const SweepRow& r : table.rows) {
      if (r.overlay != overlays[c] || !std::isfinite(r.phi)) continue;
      if (!first) out << ' ';
      out << svg_num(sx(r.axis)) << ',' << svg_num(sy(r.phi));
      first = false;
    }
    out << "\"/>\n";
  }

  const std::string overlay_name = header_value(table, "overlay", "none");
  if (overlay_name != "none") {
    out << "<g font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#333333\">\n";
    for (std::size_t c = 0; c < overlays.size(); ++c) {
      const char* color = kPalette[c % (sizeof kPalette / sizeof *kPalette)];
      const double ly = kTop + 10.0 + 22.0 * double(c);
      out << "<line x1=\"" << svg_num(kRight + 16) << "\" y1=\""
          << svg_num(ly) << "\" x2=\"" << svg_num(kRight + 44) << "\" y2=\""
          << svg_num(ly) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << svg_num(kRight + 50) << "\" y=\""
          << svg_num(ly + 4) << "\">" << overlay_name << '='
          << tick_label(overlays[c]) << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

void write_plot(const SweepTable& table, const std::string& path) {
  std::ofstream file = open_out(path);
  emit_plot(table, file);
  file.flush();
  check_stream(file, path);
}

std::vector<std::pair<std::string, std::string>> parse_config(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) bad_line("config line lacks '='", lineno);
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) bad_line("config line lacks a key", lineno);
    out.emplace_back(key, trim(body.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config(
    const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open for reading: " + path);
  return parse_config(file);
}

double parse_pi_expression(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  const auto fail = [&]() -> void {
    throw std::invalid_argument("malformed numeric expression: " + text);
  };
  if (s.empty()) fail();

  std::size_t pos = 0;
  double sign = 1.0;
  if (s[pos] == '+' || s[pos] == '-') {
    if (s[pos] == '-') sign = -1.0;
    ++pos;
  }

  double factor = 1.0;
  bool have_factor = false;
  {
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin) {
      factor = v;
      have_factor = true;
      pos += std::size_t(end - begin);
    }
  }

  bool have_pi = false;
  if (pos < s.size() && s[pos] == '*') {
    if (!have_factor || s.compare(pos + 1, 2, "pi") != 0) fail();
    have_pi = true;
    pos += 3;
  } else if (s.compare(pos, 2, "pi") == 0) {
    have_pi = true;
    pos += 2;
  }
  if (!have_factor && !have_pi) fail();

  double divisor = 1.0;
  if (pos < s.size() && s[pos] == '/') {
    const char* begin = s.c_str() + pos + 1;
    char* end = nullptr;
    divisor = std::strtod(begin, &end);
    if (end == begin || divisor == 0.0) fail();
    pos += 1 + std::size_t(end - begin);
  }
  if (pos != s.size()) fail();

  const double value =
      sign * factor * (have_pi ? std::numbers::pi : 1.0) / divisor;
  if (!std::isfinite(value)) fail();
  return value;
}

}  // namespace gpchain
