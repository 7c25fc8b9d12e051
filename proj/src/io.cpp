#include "hadstar/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hadstar/errors.hpp"

namespace hadstar {

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw internal_error("fmt_double: conversion failed");
  return std::string(buf, p);
}

namespace {

// number ending at `pos`, or empty meaning +/-1 before an 'i'
struct NumParse {
  double value;
  size_t end;
  bool ok;
};

NumParse parse_number(const std::string& s, size_t pos) {
  if (pos >= s.size()) return {0.0, pos, false};
  const char* first = s.data() + pos;
  const char* last = s.data() + s.size();
  double v = 0.0;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{}) return {0.0, pos, false};
  return {v, size_t(p - s.data()), true};
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw invalid_parameter("parse_complex: empty input");

  double re = 0.0, im = 0.0;
  size_t pos = 0;

  auto term = [&](size_t at, double& sign_out, double& val_out, bool& is_imag) -> size_t {
    sign_out = 1.0;
    if (at < s.size() && (s[at] == '+' || s[at] == '-')) {
      sign_out = s[at] == '-' ? -1.0 : 1.0;
      ++at;
    }
    if (at < s.size() && (s[at] == 'i' || s[at] == 'I')) {  // bare "i"
      val_out = 1.0;
      is_imag = true;
      return at + 1;
    }
    NumParse n = parse_number(s, at);
    if (!n.ok) throw invalid_parameter("parse_complex: bad number in '" + text + "'");
    val_out = n.value;
    if (n.end < s.size() && (s[n.end] == 'i' || s[n.end] == 'I')) {
      is_imag = true;
      return n.end + 1;
    }
    is_imag = false;
    return n.end;
  };

  double sign, val;
  bool is_imag;
  pos = term(pos, sign, val, is_imag);
  (is_imag ? im : re) = sign * val;
  if (pos < s.size()) {
    bool had_imag = is_imag;
    pos = term(pos, sign, val, is_imag);
    if (!is_imag || had_imag) {
      throw invalid_parameter("parse_complex: expected imaginary part in '" + text + "'");
    }
    im = sign * val;
  }
  if (pos != s.size()) throw invalid_parameter("parse_complex: trailing input in '" + text + "'");
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw invalid_parameter("parse_complex: non-finite value in '" + text + "'");
  }
  return {re, im};
}

C2 parse_c2(const std::string& text) {
  size_t comma = text.find(',');
  if (comma == std::string::npos) throw invalid_parameter("parse_c2: expected 'a+bi,c+di'");
  return {parse_complex(text.substr(0, comma)), parse_complex(text.substr(comma + 1))};
}

namespace {

double json_extent(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw invalid_parameter(std::string("domain json: missing ") + key);
  const auto& v = j.at(key);
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw invalid_parameter("domain json: extent string must be \"inf\"");
  }
  return v.get<double>();
}

}  // namespace

Domain2 parse_domain_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_parameter(std::string("domain json: ") + e.what());
  }
  try {
    std::string type = j.at("type").get<std::string>();
    if (type == "polydisc") {
      auto r = j.at("r");
      return make_polydisc(r.at(0).get<double>(), r.at(1).get<double>());
    }
    if (type == "ball") return make_ball(j.at("r").get<double>());
    if (type == "ellipsoid") {
      auto p = j.at("p");
      return make_ellipsoid(p.at(0).get<double>(), p.at(1).get<double>());
    }
    if (type == "profile") {
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : j.at("points")) {
        pts.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
      }
      return Domain2::reinhardt(
          Shadow::from_points(std::move(pts), json_extent(j, "xmax"), json_extent(j, "ymax")));
    }
    throw invalid_parameter("domain json: unknown type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw invalid_parameter(std::string("domain json: ") + e.what());
  }
}

Domain2 load_domain_json(const std::string& path) { return parse_domain_json(read_file(path)); }

std::string dual_csv(const std::vector<std::pair<double, double>>& pts) {
  std::string out = "a,b\n";
  for (const auto& [a, b] : pts) out += fmt_double(a) + "," + fmt_double(b) + "\n";
  return out;
}

std::string certificate_csv(const std::vector<Complex>& pts) {
  std::string out = "re,im\n";
  for (Complex p : pts) out += fmt_double(p.real()) + "," + fmt_double(p.imag()) + "\n";
  return out;
}

std::string mask_csv(const GridMask& mask) {
  std::string out = "x,y,state\n";
  for (int j = 0; j < mask.ny; ++j) {
    for (int i = 0; i < mask.nx; ++i) {
      auto [x, y] = mask.cell_center(i, j);
      const char* state = mask.at(i, j) == CellState::In
                              ? "IN"
                              : (mask.at(i, j) == CellState::Out ? "OUT" : "MIXED");
      out += fmt_double(x) + "," + fmt_double(y) + "," + state + "\n";
    }
  }
  return out;
}

std::string series_csv(const TruncatedSeries2& f) {
  std::string out = "a1,a2,re,im\n";
  f.for_each([&](int a1, int a2, const Complex& c) {
    out += std::to_string(a1) + "," + std::to_string(a2) + "," + fmt_double(c.real()) + "," +
           fmt_double(c.imag()) + "\n";
  });
  return out;
}

TruncatedSeries2 parse_series_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw invalid_parameter("series csv: empty file");
  struct Row {
    int a1, a2;
    double re, im;
  };
  std::vector<Row> rows;
  int cap = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r;
    std::istringstream ls(line);
    char c1, c2, c3;
    if (!(ls >> r.a1 >> c1 >> r.a2 >> c2 >> r.re >> c3 >> r.im) || c1 != ',' || c2 != ',' ||
        c3 != ',') {
      throw invalid_parameter("series csv: bad row '" + line + "'");
    }
    if (r.a1 < 0 || r.a2 < 0) throw invalid_parameter("series csv: negative index");
    cap = std::max(cap, r.a1 + r.a2);
    rows.push_back(r);
  }
  TruncatedSeries2 f(cap);
  for (const Row& r : rows) f.at(r.a1, r.a2) = Complex(r.re, r.im);
  return f;
}

std::string report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) {
    nlohmann::ordered_json cj;
    cj["inputs"] = c.inputs;
    cj["predicted"] = c.predicted;
    cj["observed"] = c.observed;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    if (c.negative_control) cj["negative_control"] = true;
    cases.push_back(cj);
  }
  j["cases"] = cases;
  j["summary"] = {{"total", r.cases.size()},
                  {"passed", r.passed()},
                  {"failed", r.failed()},
                  {"ok", r.ok()}};
  return j.dump(2) + "\n";
}

std::string mask_svg(const GridMask& mask) {
  const int w = 640;
  const double sx = double(w) / mask.nx;
  const double sy = double(w) / mask.ny;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << w
      << "\" viewBox=\"0 0 " << w << " " << w << "\">\n";
  out << "  <defs>\n"
         "    <pattern id=\"hatch\" width=\"6\" height=\"6\" "
         "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">\n"
         "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#888888\" "
         "stroke-width=\"2\"/>\n"
         "    </pattern>\n"
         "  </defs>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << w
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (int pass = 0; pass < 2; ++pass) {
    CellState want = pass == 0 ? CellState::In : CellState::Mixed;
    const char* fill = pass == 0 ? "#4b7bb8" : "url(#hatch)";
    for (int j = 0; j < mask.ny; ++j) {
      int i = 0;
      while (i < mask.nx) {
        if (mask.at(i, j) != want) {
          ++i;
          continue;
        }
        int start = i;
        while (i < mask.nx && mask.at(i, j) == want) ++i;
        double x0 = start * sx;
        double y0 = double(w) - double(j + 1) * sy;  // origin at lower left
        out << "  <rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << (i - start) * sx
            << "\" height=\"" << sy << "\" fill=\"" << fill << "\"/>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_parameter("cannot open for writing: " + path);
  out << content;
  if (!out) throw invalid_parameter("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_parameter("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hadstar
