#pragma once

#include <string>
#include <vector>

#include "hadstar/domain.hpp"
#include "hadstar/point2.hpp"
#include "hadstar/separation.hpp"
#include "hadstar/series.hpp"
#include "hadstar/star.hpp"
#include "hadstar/verify.hpp"

namespace hadstar {

/// Shortest round-trip decimal form, locale independent ('.' decimal point).
std::string fmt_double(double v);

/// "a+bi" with optional parts, whitespace-insensitive ("0.6", "2i", "1-0.5i").
Complex parse_complex(const std::string& text);
/// "a+bi,c+di".
C2 parse_c2(const std::string& text);

/// Domain description files:
///   {"type":"polydisc","r":[1.0,1.0]}
///   {"type":"ball","r":1.0}
///   {"type":"ellipsoid","p":[0.5,0.5]}
///   {"type":"profile","points":[[x,y],...],"xmax":...,"ymax":...}
/// xmax/ymax accept the string "inf".
Domain2 load_domain_json(const std::string& path);
Domain2 parse_domain_json(const std::string& text);

std::string dual_csv(const std::vector<std::pair<double, double>>& pts);
std::string certificate_csv(const std::vector<Complex>& pts);
std::string mask_csv(const GridMask& mask);
std::string series_csv(const TruncatedSeries2& f);
TruncatedSeries2 parse_series_csv(const std::string& text);

std::string report_json(const Report& r);

/// Filled In region, hatched Mixed cells; row runs merged into single rects.
std::string mask_svg(const GridMask& mask);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace hadstar
