#include "meanslab/report.hpp"

#include <charconv>
#include <ostream>

#include <json.hpp>

namespace meanslab {

std::string format_double(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_reportrow_header(std::ostream& out) {
  out << kCsvVersionLine << "\n"
      << "id,x,y,t,n,margin,rel_margin,sign,digits,certified\n";
}

void write_reportrow(std::ostream& out, const ReportRow& row) {
  const MarginRecord& r = row.record;
  out << to_string(r.id) << ',' << format_double(r.x) << ',' << format_double(r.y)
      << ',' << format_double(r.x / r.y) << ',';
  if (r.exponent) out << format_double(*r.exponent);
  out << ',' << format_double(r.margin) << ',' << format_double(row.rel_margin) << ','
      << to_string(row.sign) << ',' << r.digits << ',' << (row.certified ? 1 : 0)
      << '\n';
}

void emit_signmap_csv(std::ostream& out, const SignMap& map) {
  out << kCsvVersionLine << "\n";
  if (!map.complete) out << "# incomplete: evaluation budget exhausted\n";
  out << "id,t,n,margin,rel_margin,sign,digits,certified\n";
  for (const SignCell& c : map.cells) {
    out << to_string(map.config.id) << ',' << format_double(c.t) << ',';
    if (c.n) out << format_double(*c.n);
    out << ',' << format_double(c.margin) << ',' << format_double(c.rel_margin) << ','
        << to_string(c.sign) << ',' << c.digits << ',' << (c.certified ? 1 : 0) << '\n';
  }
}

namespace {

nlohmann::ordered_json config_json(const ScanConfig& cfg) {
  nlohmann::ordered_json j;
  j["id"] = std::string(to_string(cfg.id));
  j["t_lo"] = cfg.t_lo;
  j["t_hi"] = cfg.t_hi;
  j["t_steps"] = cfg.t_steps;
  j["log_t"] = cfg.log_t;
  if (cfg.n_range) {
    j["n_lo"] = cfg.n_range->first;
    j["n_hi"] = cfg.n_range->second;
    j["n_steps"] = cfg.n_steps;
  }
  j["seed"] = cfg.seed;
  j["budget"] = cfg.budget;
  j["digits"] = cfg.oracle_digits;
  return j;
}

}  // namespace

void emit_signmap_json(std::ostream& out, const SignMap& map, std::string_view command) {
  nlohmann::ordered_json j;
  j["meta"] = {{"tool", "means-lab"},
               {"version", std::string(kToolVersion)},
               {"command", std::string(command)},
               {"seed", map.config.seed},
               {"complete", map.complete},
               {"config", config_json(map.config)}};
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const SignCell& c : map.cells) {
    nlohmann::ordered_json r;
    r["id"] = std::string(to_string(map.config.id));
    r["t"] = c.t;
    if (c.n) r["n"] = *c.n;
    r["margin"] = c.margin;
    r["rel_margin"] = c.rel_margin;
    r["sign"] = std::string(to_string(c.sign));
    r["digits"] = c.digits;
    r["certified"] = c.certified;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  out << j.dump(2) << "\n";
}

}  // namespace meanslab
