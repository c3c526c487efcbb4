// zetalab: command-line front end for the verification suites.
//
// Exit status: 0 when every theorem record passes, 1 when one fails or errors,
// 2 on usage or configuration errors.

#include <zetalab/report.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace zetalab;

struct Output {
  std::string format = "text";
  std::string path;
  std::string config_file;
  bool no_timing = false;
  std::optional<unsigned> threads;
};

RunConfig base_config(const Output& o) {
  RunConfig cfg;
  if (!o.config_file.empty()) load_config_file(cfg, o.config_file);
  if (std::getenv("ZETALAB_THREADS")) cfg.threads = default_threads();
  if (o.threads) cfg.threads = *o.threads;
  if (o.no_timing) cfg.timing = false;
  return cfg;
}

int finish(const Report& report, const Output& o) {
  emit(o.format == "json" ? render_json(report) : render_text(report), o.path);
  for (const Record* r : report.counterexamples())
    std::cerr << "COUNTEREXAMPLE: conjecture " << r->id << " fails; see the report detail\n";
  return report.pass() ? 0 : 1;
}

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw Error(std::string(what) + ": " + e.what());
  }
}

Record gf_side_record(GF which, GFSide side, const Rational& a, const Rational& b, unsigned digits) {
  std::string id = gf_id(which, a, b) + (side == GFSide::LHS ? ":LHS" : ":RHS");
  return detail::guarded(id, "series", [&](Record& r) {
    DigitsValue v = gf_eval(which, side, a, b, digits);
    r.status = "pass";
    r.detail["digits"] = digits;
    r.detail["value"] = digits_json(v, digits);
  });
}

Record y1_custom_record(long n, const Rational& z, long k_max) {
  return detail::guarded("Y1", "series", [&](Record& r) {
    TailTrace t = y1_partial(n, z, k_max);
    r.status = t.geometric_decay ? "pass" : "fail";
    r.detail["n"] = n;
    r.detail["z"] = z.get_str();
    r.detail["k_max"] = k_max;
    r.detail["geometric_decay"] = t.geometric_decay;
    r.detail["g_first"] = t.g_first.get_str();
    r.detail["g_last"] = to_decimal(t.g_last, 25);
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.partial_sums.size(); ++i)
      rows.push_back({{"k", n + static_cast<long>(i)},
                      {"partial_sum", to_decimal(t.partial_sums[i], 25)},
                      {"deviation", to_decimal(t.deviations[i], 25)}});
    r.detail["trace"] = rows;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of WZ pairs, finite identities, supercongruences and Apery-like series"};
  app.require_subcommand(1);
  Output out;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", out.path, "Write the report to this file instead of standard output");
    cmd->add_option("--config", out.config_file, "key=value configuration file")->check(CLI::ExistingFile);
    cmd->add_flag("--no-timing", out.no_timing, "Report zero timings so output is byte-stable");
    cmd->add_option("--threads", out.threads, "Worker threads (overrides ZETALAB_THREADS)")->check(CLI::PositiveNumber);
  };

  std::function<Report()> run;

  // wz verify
  auto* wz = app.add_subcommand("wz", "WZ pair certification");
  wz->require_subcommand(1);
  auto* wz_verify = wz->add_subcommand("verify", "Check the WZ relation exactly");
  std::vector<std::string> wz_pairs, wz_files;
  wz_verify->add_option("--pair", wz_pairs, "Bundled pair name (default: all certified pairs)");
  wz_verify->add_option("--file", wz_files, "Pair definition file");
  add_output(wz_verify);
  wz_verify->callback([&] {
    run = [&] {
      RunConfig cfg = base_config(out);
      cfg.suites = {"wz"};
      cfg.ids = wz_pairs;
      cfg.wz_files = wz_files;
      if (!wz_files.empty() && wz_pairs.empty()) cfg.ids = {"-"};  // files only
      Report r = run_all(cfg);
      if (cfg.ids == std::vector<std::string>{"-"}) r.config.ids.clear();
      for (const auto& name : wz_pairs) {
        bool found = false;
        for (const auto& rec : r.records) found = found || rec.id == name;
        if (!found) r.records.push_back(detail::guarded(name, "wz", [&](Record&) { bundled_pair(name); }));
      }
      return r;
    };
  });

  // identity check
  auto* identity = app.add_subcommand("identity", "Finite identities");
  identity->require_subcommand(1);
  auto* id_check = identity->add_subcommand("check", "Check an identity for a range of n");
  std::string id_name, id_param;
  long n_max = 0, n_min = 1;
  id_check->add_option("--id", id_name, "Identity id, or 'all'")->required();
  id_check->add_option("--n-max", n_max, "Largest n (default: the identity's own range)");
  id_check->add_option("--n-min", n_min, "Smallest n")->check(CLI::PositiveNumber);
  id_check->add_option("--param", id_param, "Instantiate the parameter at this rational");
  add_output(id_check);
  id_check->callback([&] {
    run = [&] {
      if (id_name != "all") identity_info(id_name);
      RunConfig cfg = base_config(out);
      cfg.suites = {"identity"};
      cfg.ids = {id_name};
      if (n_max > 0) cfg.n_max = n_max;
      std::optional<Rational> param;
      if (!id_param.empty()) param = rational_arg(id_param, "--param");
      if (!param && n_min == 1) return run_all(cfg);
      Report r;
      r.config = cfg;
      for (const auto& info : identity_catalog()) {
        if (id_name != "all" && info.id != id_name) continue;
        long hi = n_max > 0 ? n_max : info.default_n_max;
        r.records.push_back(detail::guarded(info.id, "identity", [&](Record& rec) {
          CheckReport rep = check_range(info.id, hi, param, cfg.threads, n_min);
          rec.status = rep.pass ? "pass" : "fail";
          rec.detail = identity_detail(rep);
        }));
      }
      return r;
    };
  });

  // congruence scan
  auto* congruence = app.add_subcommand("congruence", "Supercongruence scans");
  congruence->require_subcommand(1);
  auto* scan_cmd = congruence->add_subcommand("scan", "Scan a case over a prime range");
  std::string case_id = "all", path = "exact";
  std::optional<long> p_min, p_max, cap;
  std::optional<unsigned> mod_exp;
  scan_cmd->add_option("--id", case_id, "Case id, family name, or 'all'");
  scan_cmd->add_option("--p-min", p_min, "Smallest prime (default: first prime the hypothesis allows)");
  scan_cmd->add_option("--p-max", p_max, "Largest prime (default 300)");
  scan_cmd->add_option("--path", path, "Evaluation path")->check(CLI::IsMember({"exact", "modular", "both"}));
  scan_cmd->add_option("--mod-exp", mod_exp, "Override the target exponent m")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--bernoulli-cap", cap, "Largest p for cases needing Bernoulli numbers");
  add_output(scan_cmd);
  scan_cmd->callback([&] {
    run = [&] {
      RunConfig cfg = base_config(out);
      cfg.suites = {"congruence"};
      cfg.path = parse_scan_path(path);
      if (cap) cfg.bernoulli_cap = *cap;
      if (p_max) cfg.p_max = *p_max;
      CongruenceOptions opt;
      opt.bernoulli_cap = cfg.bernoulli_cap;
      opt.mod_exp = mod_exp;
      Report r;
      cfg.ids = {case_id};
      if (p_min) cfg.p_min = *p_min;
      r.config = cfg;
      for (const auto& id : expand_case_ids(case_id)) {
        const CongruenceCase& c = congruence_case(id);
        bool conj = c.status == CaseStatus::Conjecture;
        long lo = p_min ? *p_min : conj ? cfg.conjecture_p_min : first_prime_above(c.p0);
        long hi = p_max ? *p_max : conj ? cfg.conjecture_p_max : cfg.p_max;
        r.records.push_back(congruence_record(c, lo, hi, cfg.path, opt, cfg.threads));
      }
      return r;
    };
  });

  // series
  auto* series = app.add_subcommand("series", "Apery-like series and generating functions");
  series->require_subcommand(1);
  auto* s_eval = series->add_subcommand("eval", "Evaluate a series and compare with the zeta oracle");
  std::string series_id;
  unsigned digits = 30;
  s_eval->add_option("--id", series_id, "Series id")->required();
  s_eval->add_option("--digits", digits, "Certified decimal digits")->check(CLI::Range(1, 50));
  add_output(s_eval);
  s_eval->callback([&] {
    run = [&] {
      Report r;
      r.config = base_config(out);
      r.config.suites = {"series"};
      r.config.ids = {series_id};
      r.config.digits = digits;
      r.records.push_back(apery_record(series_id, digits));
      return r;
    };
  });

  auto* s_gf = series->add_subcommand("gf", "Evaluate a generating function at rational (a, b)");
  std::string which = "gf2", a_text = "0", b_text = "0", side = "both", region;
  unsigned gf_digits = 25;
  s_gf->add_option("--which", which, "gf1 or gf2")->check(CLI::IsMember({"gf1", "gf2", "GF1", "GF2"}));
  s_gf->add_option("--a", a_text, "Rational a");
  s_gf->add_option("--b", b_text, "Rational b");
  s_gf->add_option("--digits", gf_digits, "Certified decimal digits")->check(CLI::PositiveNumber);
  s_gf->add_option("--side", side, "lhs, rhs, or both (compare)")->check(CLI::IsMember({"lhs", "rhs", "both"}));
  add_output(s_gf);
  s_gf->callback([&] {
    run = [&] {
      Report r;
      r.config = base_config(out);
      r.config.suites = {"series"};
      r.config.gf_digits = gf_digits;
      GF g = parse_gf(which);
      Rational a = rational_arg(a_text, "--a"), b = rational_arg(b_text, "--b");
      r.config.ids = {gf_id(g, a, b)};
      if (side == "both") {
        r.records.push_back(detail::guarded(gf_id(g, a, b), "series", [&](Record& rec) {
          DigitsValue lhs = gf_eval(g, GFSide::LHS, a, b, gf_digits);
          DigitsValue rhs = gf_eval(g, GFSide::RHS, a, b, gf_digits);
          rec.status = agree_to(lhs, rhs, gf_digits) ? "pass" : "fail";
          rec.detail["digits"] = gf_digits;
          rec.detail["lhs"] = digits_json(lhs, gf_digits);
          rec.detail["rhs"] = digits_json(rhs, gf_digits);
        }));
      } else {
        r.records.push_back(gf_side_record(g, side == "lhs" ? GFSide::LHS : GFSide::RHS, a, b, gf_digits));
      }
      return r;
    };
  });

  auto* s_extract = series->add_subcommand("extract", "Extract GF2 coefficients of a^r b^2s");
  unsigned r_max = 2, s_max = 2;
  long k_max = 200;
  s_extract->add_option("--r-max", r_max, "Largest power of a");
  s_extract->add_option("--s-max", s_max, "Largest s in b^2s");
  s_extract->add_option("--k-max", k_max, "Terms summed")->check(CLI::Range(3L, 5000L));
  add_output(s_extract);
  s_extract->callback([&] {
    run = [&] {
      Report r;
      r.config = base_config(out);
      r.config.suites = {"series"};
      r.config.ids = {"EXTRACT"};
      r.config.r_max = r_max;
      r.config.s_max = s_max;
      r.config.k_max = k_max;
      r.records.push_back(extract_record(r_max, s_max, k_max));
      return r;
    };
  });

  auto* s_y1 = series->add_subcommand("y1", "Partial sums of the W2 tail sum");
  long y1_n = 1, y1_kmax = 40;
  std::string y1_z = "0";
  s_y1->add_option("--n", y1_n, "n")->check(CLI::PositiveNumber);
  s_y1->add_option("--z", y1_z, "Rational z");
  s_y1->add_option("--k-max", y1_kmax, "Last k summed");
  add_output(s_y1);
  s_y1->callback([&] {
    run = [&] {
      Report r;
      r.config = base_config(out);
      r.config.suites = {"series"};
      r.config.ids = {"Y1"};
      r.records.push_back(y1_custom_record(y1_n, rational_arg(y1_z, "--z"), y1_kmax));
      return r;
    };
  });

  // report run-all
  auto* report_cmd = app.add_subcommand("report", "Full verification report");
  report_cmd->require_subcommand(1);
  auto* run_all_cmd = report_cmd->add_subcommand("run-all", "Run every selected suite");
  std::vector<std::string> suites, ids, extra_wz;
  std::optional<long> ra_p_max;
  run_all_cmd->add_option("--suite", suites, "wz, identity, congruence, series (repeatable)")
      ->check(CLI::IsMember({"wz", "identity", "congruence", "series"}));
  run_all_cmd->add_option("--id", ids, "Restrict to these record ids (repeatable)");
  run_all_cmd->add_option("--wz-file", extra_wz, "Extra pair definition file to certify");
  run_all_cmd->add_option("--p-max", ra_p_max, "Largest prime for congruence scans");
  add_output(run_all_cmd);
  run_all_cmd->callback([&] {
    run = [&] {
      RunConfig cfg = base_config(out);
      if (!suites.empty()) cfg.suites = std::set<std::string>(suites.begin(), suites.end());
      if (!ids.empty()) cfg.ids = ids;
      for (const auto& f : extra_wz) cfg.wz_files.push_back(f);
      if (ra_p_max) cfg.p_max = *ra_p_max;
      return run_all(cfg);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return finish(run(), out);
  } catch (const zetalab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
