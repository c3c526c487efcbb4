#pragma once

// Runs the verification suites and renders the outcome as JSON or text.
// Records appear in a fixed order (suite, then catalog order) so equal
// configurations give byte-identical JSON when timings are suppressed.

#include <zetalab/congruence.hpp>
#include <zetalab/identities.hpp>
#include <zetalab/series.hpp>
#include <zetalab/wz.hpp>

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace zetalab {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

struct RunConfig {
  std::set<std::string> suites{"wz", "identity", "congruence", "series"};
  std::vector<std::string> ids;  // empty: everything in the selected suites
  std::vector<std::string> wz_files;
  std::optional<long> n_max;     // overrides each identity's default range
  std::optional<long> p_min;     // default: first prime above the case's hypothesis bound
  long p_max = 300;
  long conjecture_p_min = 11;
  long conjecture_p_max = 150;
  ScanPath path = ScanPath::Exact;
  long bernoulli_cap = 100;
  unsigned digits = 30;
  unsigned gf_digits = 25;
  unsigned r_max = 2, s_max = 2;
  long k_max = 200;
  unsigned threads = default_threads();
  bool timing = true;

  void validate() const {
    for (const auto& s : suites)
      if (s != "wz" && s != "identity" && s != "congruence" && s != "series") throw Error("unknown suite '" + s + "'");
    if (suites.empty()) throw Error("no suite selected");
    if (n_max && *n_max < 1) throw Error("n_max must be positive");
    if (p_min && *p_min > p_max) throw Error("empty prime range");
    if (conjecture_p_min > conjecture_p_max) throw Error("empty conjecture prime range");
    if (digits < 1 || gf_digits < 1) throw Error("digits must be at least 1");
    if (threads < 1) throw Error("threads must be at least 1");
    if (k_max < 3) throw Error("k_max must be at least 3");
  }

  Json to_json() const {
    Json j;
    j["suites"] = std::vector<std::string>(suites.begin(), suites.end());
    j["ids"] = ids;
    j["wz_files"] = wz_files;
    j["n_max"] = n_max ? Json(*n_max) : Json(nullptr);
    j["p_min"] = p_min ? Json(*p_min) : Json(nullptr);
    j["p_max"] = p_max;
    j["conjecture_p_min"] = conjecture_p_min;
    j["conjecture_p_max"] = conjecture_p_max;
    j["path"] = path_name(path);
    j["bernoulli_cap"] = bernoulli_cap;
    j["digits"] = digits;
    j["gf_digits"] = gf_digits;
    j["r_max"] = r_max;
    j["s_max"] = s_max;
    j["k_max"] = k_max;
    return j;
  }
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_copy(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("bad boolean '" + v + "'");
}

}  // namespace detail

/// Applies one key=value setting.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto num = [&] { return detail::parse_long(value, key); };
  auto positive = [&] {
    long v = num();
    if (v < 1) throw Error(key + " must be positive");
    return static_cast<unsigned>(v);
  };
  if (key == "suites") {
    auto list = detail::split_list(value);
    cfg.suites = std::set<std::string>(list.begin(), list.end());
  } else if (key == "ids") {
    cfg.ids = detail::split_list(value);
  } else if (key == "wz_files") {
    cfg.wz_files = detail::split_list(value);
  } else if (key == "n_max") {
    cfg.n_max = num();
  } else if (key == "p_min") {
    cfg.p_min = num();
  } else if (key == "p_max") {
    cfg.p_max = num();
  } else if (key == "conjecture_p_min") {
    cfg.conjecture_p_min = num();
  } else if (key == "conjecture_p_max") {
    cfg.conjecture_p_max = num();
  } else if (key == "path") {
    cfg.path = parse_scan_path(value);
  } else if (key == "bernoulli_cap") {
    cfg.bernoulli_cap = num();
  } else if (key == "digits") {
    cfg.digits = positive();
  } else if (key == "gf_digits") {
    cfg.gf_digits = positive();
  } else if (key == "r_max") {
    cfg.r_max = static_cast<unsigned>(num());
  } else if (key == "s_max") {
    cfg.s_max = static_cast<unsigned>(num());
  } else if (key == "k_max") {
    cfg.k_max = num();
  } else if (key == "threads") {
    cfg.threads = positive();
  } else if (key == "timing") {
    cfg.timing = detail::parse_bool(value);
  } else {
    throw Error("unknown config key '" + key + "'");
  }
}

/// Config file: one key=value per line, '#' comments.
inline void load_config_text(RunConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string body = detail::trim_copy(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(line_no) + ": expected key=value");
    apply_setting(cfg, detail::trim_copy(body.substr(0, eq)), detail::trim_copy(body.substr(eq + 1)));
  }
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  load_config_text(cfg, ss.str());
}

// ---------------------------------------------------------------------------
// Records

struct Record {
  std::string id;
  std::string kind;    // wz | identity | congruence | series
  std::string status;  // pass | fail | conjecture-consistent | counterexample | error
  Json detail = Json::object();
  double time_ms = 0;

  bool is_conjecture() const { return status == "conjecture-consistent" || status == "counterexample"; }

  Json to_json(bool timing) const {
    Json j;
    j["id"] = id;
    j["kind"] = kind;
    j["status"] = status;
    j["detail"] = detail;
    j["time_ms"] = timing ? std::round(time_ms * 1000) / 1000 : 0.0;
    return j;
  }
};

struct Report {
  RunConfig config;
  std::vector<Record> records;

  /// Every non-conjecture record passed.
  bool pass() const {
    for (const auto& r : records)
      if (!r.is_conjecture() && r.status != "pass") return false;
    return true;
  }

  std::vector<const Record*> counterexamples() const {
    std::vector<const Record*> out;
    for (const auto& r : records)
      if (r.status == "counterexample") out.push_back(&r);
    return out;
  }

  Json to_json() const {
    Json j;
    j["version"] = kVersion;
    j["config"] = config.to_json();
    j["records"] = Json::array();
    for (const auto& r : records) j["records"].push_back(r.to_json(config.timing));
    j["pass"] = pass();
    return j;
  }
};

namespace detail {

class Stopwatch {
 public:
  double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Runs body(record); any library error becomes status "error".
template <class Body>
Record guarded(std::string id, std::string kind, Body&& body) {
  Record r;
  r.id = std::move(id);
  r.kind = std::move(kind);
  Stopwatch sw;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.status = "error";
    r.detail["error"] = e.what();
  }
  r.time_ms = sw.ms();
  return r;
}

inline bool selected(const RunConfig& cfg, std::string_view id) {
  if (cfg.ids.empty()) return true;
  for (const auto& s : cfg.ids)
    if (s == id || s == "all") return true;
  return false;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline Record wz_record(const WZPair& pair) {
  return detail::guarded(pair.name, "wz", [&](Record& r) {
    WZReport rep = wz_check(pair);
    r.status = rep.pass ? "pass" : "fail";
    r.detail["commutation"] = rep.commutation;
    r.detail["residual_terms"] = rep.residual.size();
    if (!rep.pass) {
      std::string text = rep.residual.to_string();
      if (text.size() > 400) text = text.substr(0, 400) + "...";
      r.detail["residual"] = text;
    }
  });
}

inline Record wz_file_record(const std::string& path) {
  std::string name = path;
  try {
    WZPair pair = parse_pair(detail::read_text(path), path);
    return wz_record(pair);
  } catch (const std::exception& e) {
    Record r;
    r.id = name;
    r.kind = "wz";
    r.status = "error";
    r.detail["error"] = e.what();
    return r;
  }
}

inline Json identity_detail(const CheckReport& rep) {
  Json d;
  d["field"] = rep.field;
  d["n_min"] = rep.n_min;
  d["n_max"] = rep.n_max;
  d["checked"] = rep.results.size();
  d["parameter"] = rep.parameter ? Json(rep.parameter->get_str()) : Json(nullptr);
  if (rep.first_failure) {
    d["first_failure"] = {{"n", rep.first_failure->n}, {"witness", rep.first_failure->witness}};
  }
  return d;
}

inline Record identity_record(std::string_view id, long n_max, std::optional<Rational> param, unsigned threads) {
  return detail::guarded(std::string(id), "identity", [&](Record& r) {
    CheckReport rep = check_range(id, n_max, param, threads);
    r.status = rep.pass ? "pass" : "fail";
    r.detail = identity_detail(rep);
  });
}

inline Json congruence_detail(const ScanReport& rep) {
  Json d;
  d["p_min"] = rep.p_min;
  d["p_max"] = rep.p_max;
  d["m"] = rep.m;
  d["path"] = path_name(rep.path);
  d["case_status"] = rep.case_status == CaseStatus::Theorem ? "theorem" : "conjecture";
  d["primes_checked"] = rep.primes.size();
  d["min_valuation"] = rep.min_valuation == kInfiniteValuation ? Json("inf") : Json(rep.min_valuation);
  d["valuation_is_bound"] = rep.path == ScanPath::Modular;
  Json failures = Json::array(), errors = Json::array();
  for (const auto& p : rep.primes) {
    if (!p.error.empty()) {
      errors.push_back({{"p", p.p}, {"error", p.error}});
    } else if (!p.pass) {
      Json f{{"p", p.p}, {"valuation", p.valuation}};
      if (p.lhs_residue) f["lhs_residue"] = p.lhs_residue->get_str();
      if (p.rhs_residue) f["rhs_residue"] = p.rhs_residue->get_str();
      failures.push_back(f);
    }
  }
  d["failures"] = failures;
  d["errors"] = errors;
  return d;
}

inline Record congruence_record(const CongruenceCase& c, long p_min, long p_max, ScanPath path,
                                const CongruenceOptions& opt, unsigned threads) {
  return detail::guarded(c.id, "congruence", [&](Record& r) {
    ScanReport rep = scan(c, p_min, p_max, path, opt, threads);
    r.status = rep.status();
    r.detail = congruence_detail(rep);
  });
}

inline Json digits_json(const DigitsValue& v, unsigned digits) {
  return {{"value", v.decimal(digits)}, {"certified_digits", v.certified_digits()}};
}

inline Record apery_record(std::string_view id, unsigned digits) {
  return detail::guarded(std::string(id), "series", [&](Record& r) {
    const SeriesInfo& info = series_info(id);
    AperyResult a = apery_eval(id, digits);
    DigitsValue z = zeta_oracle(info.zeta_argument, digits + 2);
    bool agree = agree_to(a.value, z, digits);
    r.status = agree ? "pass" : "fail";
    r.detail["digits"] = digits;
    r.detail["terms"] = a.terms;
    r.detail["series"] = digits_json(a.value, digits);
    r.detail["oracle"] = digits_json(z, digits);
    r.detail["limit"] = "zeta(" + std::to_string(info.zeta_argument) + ")";
  });
}

inline Record zeta_pi_record(unsigned digits) {
  return detail::guarded("ZETA-PI", "series", [&](Record& r) {
    DigitsValue z2 = zeta_oracle(2, digits + 2), z4 = zeta_oracle(4, digits + 2);
    DigitsValue pi = pi_oracle(digits + 4);
    DigitsValue p2 = square(pi), p4 = square(p2);
    bool ok2 = agree_to(z2, {p2.value / 6, p2.error_bound / 6}, digits);
    bool ok4 = agree_to(z4, {p4.value / 90, p4.error_bound / 90}, digits);
    r.status = ok2 && ok4 ? "pass" : "fail";
    r.detail["digits"] = digits;
    r.detail["zeta2"] = digits_json(z2, digits);
    r.detail["zeta4"] = digits_json(z4, digits);
    r.detail["pi"] = digits_json(pi, digits);
  });
}

inline std::string gf_id(GF which, const Rational& a, const Rational& b) {
  return std::string(which == GF::GF1 ? "GF1" : "GF2") + "(" + a.get_str() + "," + b.get_str() + ")";
}

/// GF2 records compare both sides; GF1 at the origin compares the right side with zeta(3).
inline Record gf_record(GF which, const Rational& a, const Rational& b, unsigned digits) {
  return detail::guarded(gf_id(which, a, b), "series", [&](Record& r) {
    DigitsValue rhs = gf_eval(which, GFSide::RHS, a, b, digits);
    DigitsValue other = which == GF::GF1 && a == 0 && b == 0 ? zeta_oracle(3, digits + 2)
                                                             : gf_eval(which, GFSide::LHS, a, b, digits);
    r.status = agree_to(rhs, other, digits) ? "pass" : "fail";
    r.detail["digits"] = digits;
    r.detail["rhs"] = digits_json(rhs, digits);
    r.detail[which == GF::GF1 && a == 0 && b == 0 ? "zeta3" : "lhs"] = digits_json(other, digits);
  });
}

inline Record extract_record(unsigned r_max, unsigned s_max, long k_max) {
  return detail::guarded("EXTRACT", "series", [&](Record& r) {
    ExtractTable t = gf_extract(r_max, s_max, k_max);
    const Rational tol = ten_to_minus(10);
    bool ok = t.odd_b_vanish;
    Json rows = Json::array();
    for (const auto& c : t.coefficients) {
      ok = ok && c.deviation <= tol;
      Json row{{"r", c.r},
               {"s", c.s},
               {"coefficient", to_decimal(c.partial_sum, 20)},
               {"expected", to_decimal(c.expected.value, 20)},
               {"deviation", to_decimal(c.deviation, 25)}};
      row["refined_uncertified"] = c.refined ? Json(to_decimal(*c.refined, 25)) : Json(nullptr);
      rows.push_back(row);
    }
    r.status = ok ? "pass" : "fail";
    r.detail["k_max"] = k_max;
    r.detail["tolerance"] = "1e-10";
    r.detail["odd_b_vanish"] = t.odd_b_vanish;
    r.detail["coefficients"] = rows;
  });
}

/// W2 tail sums at z = 1/3 for n = 1..3, summed to k = 40.
inline Record y1_record() {
  return detail::guarded("Y1", "series", [&](Record& r) {
    bool ok = true;
    Json rows = Json::array();
    const Rational z = make_rational(1, 3);
    for (long n = 1; n <= 3; ++n) {
      TailTrace t = y1_partial(n, z, 40);
      bool row_ok = t.geometric_decay && t.deviations.back() <= ten_to_minus(10);
      ok = ok && row_ok;
      rows.push_back({{"n", n}, {"z", z.get_str()}, {"k_max", 40},
                      {"deviation", to_decimal(t.deviations.back(), 25)}, {"geometric_decay", t.geometric_decay}});
    }
    r.status = ok ? "pass" : "fail";
    r.detail["traces"] = rows;
  });
}

// ---------------------------------------------------------------------------

inline long first_prime_above(long p0) {
  long p = p0 + 1;
  while (!is_prime(static_cast<std::uint64_t>(p))) ++p;
  return p;
}

inline Report run_all(const RunConfig& cfg) {
  cfg.validate();
  Report report;
  report.config = cfg;
  auto& out = report.records;
  if (cfg.suites.count("wz")) {
    for (const auto& [name, text] : wz_catalog::files()) {
      WZPair pair = parse_pair(text, name);
      if (pair.certificate && detail::selected(cfg, name)) out.push_back(wz_record(pair));
    }
    for (const auto& path : cfg.wz_files) out.push_back(wz_file_record(path));
  }
  if (cfg.suites.count("identity")) {
    for (const auto& info : identity_catalog()) {
      if (!detail::selected(cfg, info.id)) continue;
      out.push_back(identity_record(info.id, cfg.n_max.value_or(info.default_n_max), std::nullopt, cfg.threads));
    }
  }
  if (cfg.suites.count("congruence")) {
    CongruenceOptions opt;
    opt.bernoulli_cap = cfg.bernoulli_cap;
    std::set<std::string> wanted;
    for (const auto& id : cfg.ids) {
      try {
        for (auto& e : expand_case_ids(id)) wanted.insert(e);
      } catch (const Error&) {
      }
    }
    for (const auto& c : congruence_catalog()) {
      if (!cfg.ids.empty() && !wanted.count(c.id)) continue;
      bool conj = c.status == CaseStatus::Conjecture;
      long lo = cfg.p_min ? *cfg.p_min : conj ? cfg.conjecture_p_min : first_prime_above(c.p0);
      long hi = conj ? std::min(cfg.p_max, cfg.conjecture_p_max) : cfg.p_max;
      if (uses_bernoulli(c.lhs) || uses_bernoulli(c.rhs)) hi = std::min(hi, cfg.bernoulli_cap);
      lo = std::max(lo, first_prime_above(c.p0));
      out.push_back(congruence_record(c, lo, hi, cfg.path, opt, cfg.threads));
    }
  }
  if (cfg.suites.count("series")) {
    if (detail::selected(cfg, "ZETA-PI")) out.push_back(zeta_pi_record(28));
    for (const auto& info : series_catalog())
      if (detail::selected(cfg, info.id)) out.push_back(apery_record(info.id, cfg.digits));
    const std::vector<std::pair<Rational, Rational>> points{
        {0, 0}, {make_rational(1, 7), make_rational(1, 11)}, {make_rational(-1, 8), make_rational(1, 9)}};
    for (const auto& [a, b] : points)
      if (detail::selected(cfg, gf_id(GF::GF2, a, b)) || detail::selected(cfg, "GF2"))
        out.push_back(gf_record(GF::GF2, a, b, cfg.gf_digits));
    if (detail::selected(cfg, "GF1(0,0)") || detail::selected(cfg, "GF1"))
      out.push_back(gf_record(GF::GF1, 0, 0, cfg.gf_digits));
    if (detail::selected(cfg, "EXTRACT")) out.push_back(extract_record(cfg.r_max, cfg.s_max, cfg.k_max));
    if (detail::selected(cfg, "Y1")) out.push_back(y1_record());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_json(const Report& r) { return r.to_json().dump(2) + "\n"; }

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  std::size_t w = 4;
  for (const auto& rec : r.records) w = std::max(w, rec.id.size());
  for (const auto& rec : r.records) {
    os << std::left << std::setw(static_cast<int>(w) + 2) << rec.id << std::setw(12) << rec.kind
       << std::setw(24) << rec.status;
    if (r.config.timing) os << std::fixed << std::setprecision(1) << rec.time_ms << " ms";
    if (rec.detail.contains("error")) os << "  " << rec.detail["error"].get<std::string>();
    os << "\n";
  }
  os << (r.pass() ? "overall: pass" : "overall: fail") << "\n";
  return os.str();
}

/// Writes to `path`, or standard output when it is empty.
inline void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace zetalab
