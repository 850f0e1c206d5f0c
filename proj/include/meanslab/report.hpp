#pragma once

#include <iosfwd>
#include <string>

#include "meanslab/explorer.hpp"

namespace meanslab {

inline constexpr std::string_view kCsvVersionLine = "# means-lab csv v1";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// 17 significant digits, locale-independent; round-trips binary64 exactly.
std::string format_double(double v);

/// Report-row serialization: one MarginRecord plus presentation fields.
/// Header: id,x,y,t,n,margin,rel_margin,sign,digits,certified
struct ReportRow {
  MarginRecord record;
  double rel_margin;
  SignLabel sign;
  bool certified;
};

void write_reportrow_header(std::ostream& out);
void write_reportrow(std::ostream& out, const ReportRow& row);

/// Sign-map serialization.
/// CSV columns: id,t,n,margin,rel_margin,sign,digits,certified
void emit_signmap_csv(std::ostream& out, const SignMap& map);
void emit_signmap_json(std::ostream& out, const SignMap& map, std::string_view command);

}  // namespace meanslab
