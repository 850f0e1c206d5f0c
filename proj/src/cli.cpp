#include "meanslab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "meanslab/report.hpp"

namespace meanslab {

namespace {

using nlohmann::ordered_json;

int default_digits() {
  if (const char* env = std::getenv("MEANS_LAB_DIGITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < kMinOracleDigits || v > kOracleDigitCap) {
      throw std::invalid_argument("MEANS_LAB_DIGITS must be an integer in [30, 480]");
    }
    return static_cast<int>(v);
  }
  return kDefaultOracleDigits;
}

struct PairFlags {
  double x = 0.0, y = 0.0, t = 0.0;
  CLI::Option* ox = nullptr;
  CLI::Option* oy = nullptr;
  CLI::Option* ot = nullptr;

  void add_to(CLI::App* cmd) {
    ox = cmd->add_option("--x", x, "first argument (> 0)");
    oy = cmd->add_option("--y", y, "second argument (> 0)");
    ot = cmd->add_option("--t", t, "canonical ratio; evaluates the pair (t, 1)");
  }

  PositivePair resolve() const {
    const bool has_x = ox->count() > 0;
    const bool has_y = oy->count() > 0;
    const bool has_t = ot->count() > 0;
    if (has_t) {
      if (has_x || has_y) {
        throw std::invalid_argument("give either --t or --x/--y, not both");
      }
      return PositivePair::from_ratio(t);
    }
    if (!has_x || !has_y) {
      throw std::invalid_argument("a pair is required: --x and --y, or --t");
    }
    return PositivePair(x, y);
  }
};

SignLabel label_of(double value) {
  if (value > 0.0) return SignLabel::positive;
  if (value < 0.0) return SignLabel::negative;
  return SignLabel::zero;
}

SignLabel label_of(SignOutcome outcome) {
  switch (outcome) {
    case SignOutcome::positive: return SignLabel::positive;
    case SignOutcome::negative: return SignLabel::negative;
    case SignOutcome::zero_within_bound: return SignLabel::zero;
  }
  return SignLabel::zero;
}

ordered_json meta_json(std::string_view command) {
  ordered_json meta;
  meta["tool"] = "means-lab";
  meta["version"] = std::string(kToolVersion);
  meta["command"] = std::string(command);
  return meta;
}

ordered_json row_json(const ReportRow& row) {
  const MarginRecord& rec = row.record;
  ordered_json r;
  r["id"] = std::string(to_string(rec.id));
  r["x"] = rec.x;
  r["y"] = rec.y;
  r["t"] = rec.x / rec.y;
  if (rec.exponent) r["n"] = *rec.exponent;
  r["margin"] = rec.margin;
  r["rel_margin"] = row.rel_margin;
  r["sign"] = std::string(to_string(row.sign));
  r["digits"] = rec.digits;
  r["certified"] = row.certified;
  return r;
}

InequalityId parse_ineq_or_throw(const std::string& text) {
  const auto id = parse_inequality_id(text);
  if (!id) throw std::invalid_argument("unknown inequality id '" + text + "'");
  return *id;
}

int do_eval(const std::string& kind_text, const PairFlags& pf, std::optional<int> digits,
            const std::string& out_fmt, std::ostream& out) {
  const auto kind = parse_mean_kind(kind_text);
  if (!kind) throw std::invalid_argument("unknown mean kind '" + kind_text + "'");
  const PositivePair pair = pf.resolve();
  if (digits) {
    const HPValue hv = eval_mean_hp(*kind, pair, *digits);
    if (out_fmt == "json") {
      ordered_json j;
      j["meta"] = meta_json("eval");
      j["kind"] = std::string(to_string(*kind));
      j["x"] = pair.x();
      j["y"] = pair.y();
      j["digits"] = *digits;
      j["value"] = hv.value.str(*digits);
      out << j.dump(2) << "\n";
    } else {
      out << hv.value.str(*digits) << "\n";
    }
    return 0;
  }
  const double v = eval_mean(*kind, pair);
  if (out_fmt == "json") {
    ordered_json j;
    j["meta"] = meta_json("eval");
    j["kind"] = std::string(to_string(*kind));
    j["x"] = pair.x();
    j["y"] = pair.y();
    j["value"] = v;
    out << j.dump(2) << "\n";
  } else if (out_fmt == "csv") {
    out << kCsvVersionLine << "\nkind,x,y,t,value\n"
        << to_string(*kind) << ',' << format_double(pair.x()) << ','
        << format_double(pair.y()) << ',' << format_double(pair.x() / pair.y()) << ','
        << format_double(v) << "\n";
  } else {
    out << format_double(v) << "\n";
  }
  return 0;
}

int do_margin(const std::string& ineq_text, const PairFlags& pf,
              std::optional<double> exponent, std::optional<int> digits,
              const std::string& out_fmt, std::ostream& out) {
  const InequalityId id = parse_ineq_or_throw(ineq_text);
  const PositivePair pair = pf.resolve();
  ReportRow row;
  row.record.id = id;
  row.record.x = pair.x();
  row.record.y = pair.y();
  row.record.exponent = exponent;
  if (digits) {
    const HPMargin hm = margin_hp(id, pair, exponent, *digits);
    row.record.margin = hm.value.to_double();
    row.rel_margin = (hm.value / hm.scale).to_double();
    row.record.digits = *digits;
  } else {
    const Margin m = margin_of(id, pair, exponent);
    row.record.margin = m.value;
    row.rel_margin = m.rel();
    row.record.digits = kBinary64Digits;
  }
  row.sign = label_of(row.record.margin);
  row.certified = false;
  if (out_fmt == "json") {
    ordered_json j;
    j["meta"] = meta_json("margin");
    j["record"] = row_json(row);
    out << j.dump(2) << "\n";
  } else {
    write_reportrow_header(out);
    write_reportrow(out, row);
  }
  return 0;
}

int do_chain(const PairFlags& pf, const std::string& out_fmt, std::ostream& out) {
  const PositivePair pair = pf.resolve();
  const ChainMargins c = chain_margins(pair);
  if (out_fmt == "json") {
    ordered_json j;
    j["meta"] = meta_json("chain");
    j["x"] = pair.x();
    j["y"] = pair.y();
    j["quantities"] = c.quantity;
    j["margins"] = c.margin;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << kCsvVersionLine << "\n"
      << "x,y,t,sqrt_qh,sqrt_ag,sqrt_li,mean_li,mean_ga,mean_qh,"
         "margin1,margin2,margin3,margin4,margin5\n";
  out << format_double(pair.x()) << ',' << format_double(pair.y()) << ','
      << format_double(pair.x() / pair.y());
  for (double q : c.quantity) out << ',' << format_double(q);
  for (double m : c.margin) out << ',' << format_double(m);
  out << "\n";
  return 0;
}

int do_identities(const PairFlags& pf, const std::string& out_fmt, std::ostream& out) {
  const PositivePair pair = pf.resolve();
  const IdentityResiduals r = proof_identity_residuals(pair);
  if (out_fmt == "json") {
    ordered_json j;
    j["meta"] = meta_json("identities");
    j["x"] = pair.x();
    j["y"] = pair.y();
    j["am_gm_margin"] = r.am_gm_margin;
    j["a_minus_h_residual"] = r.a_minus_h_residual;
    j["am_qm_margin"] = r.am_qm_margin;
    j["q_minus_g_residual"] = r.q_minus_g_residual;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << kCsvVersionLine << "\n"
      << "x,y,t,am_gm_margin,a_minus_h_residual,am_qm_margin,q_minus_g_residual\n"
      << format_double(pair.x()) << ',' << format_double(pair.y()) << ','
      << format_double(pair.x() / pair.y()) << ',' << format_double(r.am_gm_margin)
      << ',' << format_double(r.a_minus_h_residual) << ','
      << format_double(r.am_qm_margin) << ',' << format_double(r.q_minus_g_residual)
      << "\n";
  return 0;
}

int do_lemma(double a, double b, double c, double d, long n, const std::string& out_fmt,
             std::ostream& out) {
  const Margin g = lemma_gap(a, b, c, d, n);
  if (out_fmt == "json") {
    ordered_json j;
    j["meta"] = meta_json("lemma");
    j["a"] = a;
    j["b"] = b;
    j["c"] = c;
    j["d"] = d;
    j["n"] = n;
    j["gap"] = g.value;
    j["rel_gap"] = g.rel();
    out << j.dump(2) << "\n";
    return 0;
  }
  out << kCsvVersionLine << "\na,b,c,d,n,gap,rel_gap\n"
      << format_double(a) << ',' << format_double(b) << ',' << format_double(c) << ','
      << format_double(d) << ',' << n << ',' << format_double(g.value) << ','
      << format_double(g.rel()) << "\n";
  return 0;
}

int do_scan(const ScanConfig& cfg, const std::string& out_fmt, std::ostream& out) {
  const SignMap map = scan(cfg);
  if (out_fmt == "json") {
    emit_signmap_json(out, map, "scan");
  } else {
    emit_signmap_csv(out, map);
  }
  return 0;
}

int do_hunt(const ScanConfig& cfg, const std::string& out_fmt, std::ostream& out) {
  const HuntResult res = hunt(cfg);
  if (out_fmt == "json") {
    ordered_json j;
    ordered_json meta = meta_json("hunt");
    meta["seed"] = cfg.seed;
    meta["evaluations"] = res.evaluations;
    j["meta"] = meta;
    if (res.witness) {
      const Witness& w = *res.witness;
      ordered_json wj;
      wj["t"] = w.t;
      if (w.exponent) wj["n"] = *w.exponent;
      wj["margin"] = w.margin;
      wj["outcome"] = std::string(to_string(w.certified.outcome));
      wj["bound"] = w.certified.bound;
      wj["digits"] = w.digits;
      j["witness"] = wj;
    } else {
      j["witness"] = nullptr;
    }
    j["min_margin"] = res.min_margin;
    j["min_margin_t"] = res.min_margin_t;
    if (res.min_margin_n) j["min_margin_n"] = *res.min_margin_n;
    out << j.dump(2) << "\n";
    return res.witness ? 3 : 0;
  }
  out << kCsvVersionLine << "\n";
  out << "# seed " << cfg.seed << "\n";
  out << "# evaluations " << res.evaluations << "\n";
  if (!res.witness) {
    out << "# no-witness\n";
    out << "# min-margin " << format_double(res.min_margin) << " at t "
        << format_double(res.min_margin_t) << "\n";
    out << "id,x,y,t,n,margin,rel_margin,sign,digits,certified\n";
    return 0;
  }
  const Witness& w = *res.witness;
  out << "id,x,y,t,n,margin,rel_margin,sign,digits,certified\n";
  ReportRow row;
  row.record.id = cfg.id;
  row.record.x = w.t;
  row.record.y = 1.0;
  row.record.exponent = w.exponent;
  row.record.margin = w.margin;
  const Margin full = margin_of(cfg.id, PositivePair::from_ratio(w.t), w.exponent);
  row.rel_margin = full.rel();
  row.sign = label_of(w.certified.outcome);
  row.record.digits = w.digits;
  row.certified = true;
  write_reportrow(out, row);
  return 3;
}

int do_bracket(const std::string& ineq_text, std::optional<double> exponent, double t_lo,
               double t_hi, double tol_t, int digits, const std::string& out_fmt,
               std::ostream& out) {
  const InequalityId id = parse_ineq_or_throw(ineq_text);
  const BracketResult br = bracket_ratio_crossing(id, exponent, t_lo, t_hi, tol_t, digits);
  const double width = std::log(br.t_hi / br.t_lo);
  if (out_fmt == "json") {
    ordered_json j;
    j["meta"] = meta_json("bracket");
    j["id"] = std::string(to_string(id));
    if (exponent) j["n"] = *exponent;
    j["t_lo"] = br.t_lo;
    j["t_hi"] = br.t_hi;
    j["log_width"] = width;
    j["sign_lo"] = std::string(to_string(label_of(br.sign_lo.outcome)));
    j["sign_hi"] = std::string(to_string(label_of(br.sign_hi.outcome)));
    j["digits"] = digits;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << kCsvVersionLine << "\nid,n,t_lo,t_hi,log_width,sign_lo,sign_hi,digits\n"
      << to_string(id) << ',';
  if (exponent) out << format_double(*exponent);
  out << ',' << format_double(br.t_lo) << ',' << format_double(br.t_hi) << ','
      << format_double(width) << ',' << to_string(label_of(br.sign_lo.outcome)) << ','
      << to_string(label_of(br.sign_hi.outcome)) << ',' << digits << "\n";
  return 0;
}

int do_profile(const std::vector<double>& n_grid, double t_lo, double t_hi, int digits,
               const std::string& out_fmt, std::ostream& out) {
  const CriticalProfile profile = exponent_profile(n_grid, t_lo, t_hi, digits);
  if (out_fmt == "json") {
    ordered_json j;
    j["meta"] = meta_json("profile");
    j["t_lo"] = t_lo;
    j["t_hi"] = t_hi;
    ordered_json rows = ordered_json::array();
    for (const ProfileRow& r : profile.rows) {
      ordered_json rj;
      rj["n"] = r.n;
      rj["t_at_min"] = r.t_at_min;
      rj["min_margin"] = r.min_margin;
      rj["classification"] = std::string(to_string(r.classification));
      rj["digits"] = r.digits;
      rj["certified"] = r.certified;
      rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << kCsvVersionLine << "\nn,t_at_min,min_margin,classification,digits,certified\n";
  for (const ProfileRow& r : profile.rows) {
    out << format_double(r.n) << ',' << format_double(r.t_at_min) << ','
        << format_double(r.min_margin) << ',' << to_string(r.classification) << ','
        << r.digits << ',' << (r.certified ? 1 : 0) << "\n";
  }
  return 0;
}

// grid flags shared by scan and hunt
struct GridFlags {
  std::string ineq;
  CLI::Option* on = nullptr;
  CLI::Option* on_lo = nullptr;
  CLI::Option* on_hi = nullptr;
  CLI::Option* odigits = nullptr;
  double n = 0.0, n_lo = 0.0, n_hi = 0.0;
  int digits = kDefaultOracleDigits;
  std::string out_fmt = "csv";

  void add_to(CLI::App* cmd, ScanConfig& cfg) {
    cmd->add_option("--ineq", ineq, "inequality id")->required();
    cmd->add_option("--t-lo", cfg.t_lo, "lower ratio bound (>= 1)");
    cmd->add_option("--t-hi", cfg.t_hi, "upper ratio bound");
    cmd->add_option("--t-steps", cfg.t_steps, "grid cells along t");
    cmd->add_flag("--log-t{true},--linear-t{false}", cfg.log_t,
                  "t grid spacing (default log)");
    on = cmd->add_option("--n", n, "single exponent (EQ1_POWER)");
    on_lo = cmd->add_option("--n-lo", n_lo, "lower exponent bound");
    on_hi = cmd->add_option("--n-hi", n_hi, "upper exponent bound");
    cmd->add_option("--n-steps", cfg.n_steps, "grid cells along n");
    cmd->add_option("--seed", cfg.seed, "PRNG seed");
    cmd->add_option("--budget", cfg.budget, "evaluation cap");
    odigits = cmd->add_option("--digits", digits, "oracle start precision");
    cmd->add_option("--out", out_fmt)->check(CLI::IsMember({"csv", "json"}));
  }

  void apply(ScanConfig& cfg, int env_digits) const {
    cfg.id = parse_ineq_or_throw(ineq);
    if (on->count() > 0) {
      if (on_lo->count() > 0 || on_hi->count() > 0) {
        throw std::invalid_argument("give either --n or --n-lo/--n-hi, not both");
      }
      cfg.n_range = {this->n, this->n};
      cfg.n_steps = 1;
    } else if (on_lo->count() > 0 || on_hi->count() > 0) {
      if (on_lo->count() == 0 || on_hi->count() == 0) {
        throw std::invalid_argument("--n-lo and --n-hi must be given together");
      }
      cfg.n_range = {n_lo, n_hi};
    }
    cfg.oracle_digits = odigits->count() > 0 ? digits : env_digits;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"means-lab: bivariate mean inequalities, margins, and conjecture search"};
  app.require_subcommand(1);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate one mean of a pair");
  std::string eval_kind;
  PairFlags eval_pair;
  int eval_digits = 0;
  std::string eval_out = "plain";
  eval_cmd->add_option("--kind", eval_kind, "mean: one of H G A Q P L I")->required();
  eval_pair.add_to(eval_cmd);
  CLI::Option* eval_odigits =
      eval_cmd->add_option("--digits", eval_digits, "evaluate at this decimal precision");
  eval_cmd->add_option("--out", eval_out, "output format: plain|csv|json")
      ->check(CLI::IsMember({"plain", "csv", "json"}));

  auto* margin_cmd = app.add_subcommand("margin", "signed margin of one inequality");
  std::string margin_ineq;
  PairFlags margin_pair;
  double margin_n = 0.0;
  int margin_digits = 0;
  std::string margin_out = "csv";
  margin_cmd->add_option("--ineq", margin_ineq, "inequality id (e.g. EQ2_PRODUCT)")
      ->required();
  margin_pair.add_to(margin_cmd);
  CLI::Option* margin_on = margin_cmd->add_option("--n", margin_n, "exponent (EQ1_POWER only)");
  CLI::Option* margin_odigits =
      margin_cmd->add_option("--digits", margin_digits, "evaluate at this decimal precision");
  margin_cmd->add_option("--out", margin_out)->check(CLI::IsMember({"csv", "json"}));

  auto* chain_cmd = app.add_subcommand("chain", "six chain quantities and five margins");
  PairFlags chain_pair;
  std::string chain_out = "csv";
  chain_pair.add_to(chain_cmd);
  chain_cmd->add_option("--out", chain_out)->check(CLI::IsMember({"csv", "json"}));

  auto* ident_cmd =
      app.add_subcommand("identities", "margins/residuals of the proof devices");
  PairFlags ident_pair;
  std::string ident_out = "csv";
  ident_pair.add_to(ident_cmd);
  ident_cmd->add_option("--out", ident_out)->check(CLI::IsMember({"csv", "json"}));

  auto* lemma_cmd = app.add_subcommand("lemma", "power-sum gap on a feasible quadruple");
  double la = 0, lb = 0, lc = 0, ld = 0;
  long ln = 0;
  std::string lemma_out = "csv";
  lemma_cmd->add_option("--a", la)->required();
  lemma_cmd->add_option("--b", lb)->required();
  lemma_cmd->add_option("--c", lc)->required();
  lemma_cmd->add_option("--d", ld)->required();
  lemma_cmd->add_option("--n", ln, "integer exponent")->required();
  lemma_cmd->add_option("--out", lemma_out)->check(CLI::IsMember({"csv", "json"}));

  auto* scan_cmd = app.add_subcommand("scan", "margin sign map over a ratio/exponent grid");
  ScanConfig scan_cfg;
  GridFlags scan_flags;
  scan_flags.add_to(scan_cmd, scan_cfg);

  auto* hunt_cmd = app.add_subcommand("hunt", "certified counterexample search");
  ScanConfig hunt_cfg;
  hunt_cfg.budget = 100000;
  GridFlags hunt_flags;
  hunt_flags.add_to(hunt_cmd, hunt_cfg);

  auto* bracket_cmd = app.add_subcommand("bracket", "bisection bracket of a sign change");
  std::string bracket_ineq;
  double br_t_lo = 0, br_t_hi = 0, br_tol = 1e-6;
  double bracket_n = 0.0;
  int bracket_digits = 0;
  std::string bracket_out = "csv";
  bracket_cmd->add_option("--ineq", bracket_ineq)->required();
  bracket_cmd->add_option("--t-lo", br_t_lo)->required();
  bracket_cmd->add_option("--t-hi", br_t_hi)->required();
  bracket_cmd->add_option("--tol-t", br_tol, "target width in log t (default 1e-6)");
  CLI::Option* bracket_on =
      bracket_cmd->add_option("--n", bracket_n, "exponent (EQ1_POWER only)");
  CLI::Option* bracket_odigits = bracket_cmd->add_option("--digits", bracket_digits);
  bracket_cmd->add_option("--out", bracket_out)->check(CLI::IsMember({"csv", "json"}));

  auto* profile_cmd = app.add_subcommand("profile", "per-exponent minimal-margin profile");
  std::vector<double> profile_ns;
  double pf_t_lo = 1.000001, pf_t_hi = 1e6;
  int profile_digits = 0;
  std::string profile_out = "csv";
  profile_cmd->add_option("--n-grid", profile_ns, "comma-separated exponent list")
      ->required()
      ->delimiter(',');
  profile_cmd->add_option("--t-lo", pf_t_lo, "lower ratio bound (default 1.000001)");
  profile_cmd->add_option("--t-hi", pf_t_hi, "upper ratio bound (default 1e6)");
  CLI::Option* profile_odigits = profile_cmd->add_option("--digits", profile_digits);
  profile_cmd->add_option("--out", profile_out)->check(CLI::IsMember({"csv", "json"}));

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("means-lab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const int env_digits = default_digits();
    if (app.got_subcommand(eval_cmd)) {
      std::optional<int> d;
      if (eval_odigits->count() > 0) d = eval_digits;
      return do_eval(eval_kind, eval_pair, d, eval_out, out);
    }
    if (app.got_subcommand(margin_cmd)) {
      std::optional<double> n;
      if (margin_on->count() > 0) n = margin_n;
      std::optional<int> d;
      if (margin_odigits->count() > 0) d = margin_digits;
      return do_margin(margin_ineq, margin_pair, n, d, margin_out, out);
    }
    if (app.got_subcommand(chain_cmd)) return do_chain(chain_pair, chain_out, out);
    if (app.got_subcommand(ident_cmd)) return do_identities(ident_pair, ident_out, out);
    if (app.got_subcommand(lemma_cmd)) return do_lemma(la, lb, lc, ld, ln, lemma_out, out);
    if (app.got_subcommand(scan_cmd)) {
      scan_flags.apply(scan_cfg, env_digits);
      return do_scan(scan_cfg, scan_flags.out_fmt, out);
    }
    if (app.got_subcommand(hunt_cmd)) {
      hunt_flags.apply(hunt_cfg, env_digits);
      return do_hunt(hunt_cfg, hunt_flags.out_fmt, out);
    }
    if (app.got_subcommand(bracket_cmd)) {
      std::optional<double> n;
      if (bracket_on->count() > 0) n = bracket_n;
      const int d = bracket_odigits->count() > 0 ? bracket_digits : env_digits;
      return do_bracket(bracket_ineq, n, br_t_lo, br_t_hi, br_tol, d, bracket_out, out);
    }
    if (app.got_subcommand(profile_cmd)) {
      const int d = profile_odigits->count() > 0 ? profile_digits : env_digits;
      return do_profile(profile_ns, pf_t_lo, pf_t_hi, d, profile_out, out);
    }
    err << "usage error: no subcommand given\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace meanslab
