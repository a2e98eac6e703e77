#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lhz/corpus.hpp"
#include "lhz/herz.hpp"
#include "lhz/interp.hpp"
#include "lhz/lorentz.hpp"
#include "lhz/suites.hpp"

using namespace lhz;

namespace {

double parse_extended(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InputError("not a number: '" + s + "'");
  return v;
}

json scalar_json(const std::string& s) {
  if (s == "inf" || s == "infinity") return "inf";
  try {
    return parse_extended(s);
  } catch (const InputError&) {
    return s;
  }
}

std::vector<RadialStepFunction> load_radial(const std::string& path) {
  auto c = read_corpus(path);
  if (c.radial.empty()) throw InputError("'" + path + "' has no radial_step records");
  return c.radial;
}

void print_value(double v) {
  if (std::isinf(v))
    std::cout << "inf\n";
  else
    std::cout << v << '\n';
}

struct NormArgs {
  std::string space = "hl";
  std::string a = "0", p = "2", q = "2", r = "2";
  std::string input;
};

int run_norm(const NormArgs& o) {
  const double a = parse_extended(o.a), p = parse_extended(o.p), q = parse_extended(o.q), r = parse_extended(o.r);
  for (const auto& f : load_radial(o.input)) {
    if (o.space == "lorentz")
      print_value(lorentz_norm(f, {p, r}));
    else if (o.space == "lorentz-star")
      print_value(lorentz_star_norm(f, {p, r}));
    else if (o.space == "hl")
      print_value(hl_norm(f, {a, p, q, r}));
    else if (o.space == "hl-star")
      print_value(hl_norm(f, {a, p, q, r}, true));
    else if (o.space == "lp")
      print_value(lorentz_norm(f, {p, p}));
    else
      throw InputError("unknown space '" + o.space + "'");
  }
  return 0;
}

int run_rearrange(const std::string& input, const std::vector<std::string>& ts) {
  std::size_t index = 0;
  for (const auto& f : load_radial(input)) {
    const auto g = rearrangement(f);
    std::cout << "# record " << index++ << "\n# from\tto\tlevel\n";
    double from = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      std::cout << from << '\t' << g.knots()[j] << '\t' << g.levels()[j] << '\n';
      from = g.knots()[j];
    }
    for (const auto& ts_str : ts) {
      const double t = parse_extended(ts_str);
      if (!(t > 0.0)) throw DomainError("t must be positive");
      std::cout << "# t=" << t << "\tf*=" << g(t) << "\tf**=" << g.average(t) << '\n';
    }
  }
  return 0;
}

struct KfuncArgs {
  std::string input;
  std::string couple = "l1-linf";
  double a0 = 0.0, a1 = 1.0;
  std::string q0 = "1", q1 = "1";
  int record = 0;
  double t_min = 1.0 / 1024.0, t_max = 1024.0;
  int per_octave = 4;
};

int run_kfunc(const KfuncArgs& o) {
  const auto corpus = load_radial(o.input);
  if (o.record < 0 || static_cast<std::size_t>(o.record) >= corpus.size()) throw InputError("record index out of range");
  const auto& f = corpus[static_cast<std::size_t>(o.record)];
  KCurve curve;
  if (o.couple == "l1-linf") {
    curve = l1_linf_curve(f);
  } else if (o.couple == "herz") {
    curve = herz_l1_linf_curve(f, SequenceCouple(o.a0, parse_extended(o.q0), o.a1, parse_extended(o.q1)));
  } else if (o.couple == "sequence") {
    const SequenceCouple couple(o.a0, parse_extended(o.q0), o.a1, parse_extended(o.q1));
    curve = sequence_curve(retract_L(f, {1.0, 1.0}), couple);
  } else {
    throw InputError("unknown couple '" + o.couple + "'");
  }
  if (!(o.t_min > 0.0 && o.t_max > o.t_min) || o.per_octave < 1) throw InputError("bad t range");
  std::cout.precision(17);
  const double lo = std::log2(o.t_min), hi = std::log2(o.t_max);
  const int steps = static_cast<int>(std::ceil((hi - lo) * o.per_octave));
  for (int k = 0; k <= steps; ++k) {
    const double t = std::exp2(std::min(hi, lo + static_cast<double>(k) / o.per_octave));
    std::cout << t << '\t' << curve(t) << '\n';
  }
  return 0;
}

void emit(const std::vector<ReportRecord>& records, const std::string& format, std::ostream& os) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    os << arr.dump(1) << '\n';
  } else if (format == "tsv") {
    os << to_tsv(records);
  } else {
    throw InputError("unknown format '" + format + "'");
  }
}

std::string summary(const std::vector<ReportRecord>& records) {
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.pass ? 0 : 1;
  std::ostringstream os;
  os << (failed == 0 ? "PASS" : "FAIL") << ": " << records.size() - failed << "/" << records.size()
     << " checks passed";
  return os.str();
}

struct VerifyArgs {
  std::string suite;
  std::string config;
  std::vector<std::string> corpus;
  std::string output;
  std::string format = "tsv";
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> sets;
};

int run_verify(const VerifyArgs& o) {
  SuiteConfig cfg;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw InputError("cannot open config '" + o.config + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw InputError("config is not valid JSON: " + std::string(e.what()));
    }
    cfg = config_from_json(j);
  }
  if (!o.suite.empty()) cfg.suite = o.suite;
  if (!o.corpus.empty()) cfg.corpus = o.corpus;
  if (o.seed) cfg.seed = *o.seed;
  for (const auto& [k, v] : o.overrides) cfg.params[k] = scalar_json(v);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("--set expects key=value");
    const auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (!val.empty() && val.front() == '[')
      cfg.params[key] = json::parse(val);
    else
      cfg.params[key] = scalar_json(val);
  }
  const auto out = run_suite(cfg);
  if (out.exit_code == 2) {
    std::cerr << "lhz verify: " << out.diagnostic << '\n';
    return 2;
  }
  if (!o.output.empty()) {
    std::ofstream file(o.output);
    if (!file) throw InputError("cannot write '" + o.output + "'");
    emit(out.records, o.format, file);
  } else {
    std::cout.precision(10);
    emit(out.records, o.format, std::cout);
  }
  std::cout << cfg.suite << ": " << summary(out.records) << '\n';
  return out.exit_code;
}

int run_gen_corpus(const std::string& kind, CorpusOptions o, const std::string& output) {
  o.kind = parse_corpus_kind(kind);
  const auto corpus = generate_corpus(o);
  if (output.empty())
    std::cout << to_json(corpus).dump(1) << '\n';
  else
    write_corpus(output, corpus);
  return 0;
}

int run_report(const std::string& input, const std::string& format) {
  std::ifstream in(input);
  if (!in) throw InputError("cannot open report '" + input + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("report is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_array()) throw InputError("report must be a JSON array of records");
  std::vector<ReportRecord> records;
  for (const auto& r : j) records.push_back(record_from_json(r));
  if (format == "summary") {
    std::map<std::string, std::pair<int, int>> by_suite;
    for (const auto& r : records) {
      auto& [pass, total] = by_suite[r.suite];
      pass += r.pass ? 1 : 0;
      ++total;
    }
    for (const auto& [suite, c] : by_suite) std::cout << suite << '\t' << c.first << '/' << c.second << '\n';
  } else {
    std::cout.precision(17);
    emit(records, format, std::cout);
  }
  std::cout << summary(records) << '\n';
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; }) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for non-homogeneous Lorentz-Herz spaces"};
  app.require_subcommand(1);
  std::cout.precision(12);

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "Norm of each radial record in a corpus file");
  norm_cmd->add_option("--space", norm.space, "lorentz | lorentz-star | hl | hl-star | lp")->capture_default_str();
  norm_cmd->add_option("--a", norm.a)->capture_default_str();
  norm_cmd->add_option("--p", norm.p)->capture_default_str();
  norm_cmd->add_option("--q", norm.q)->capture_default_str();
  norm_cmd->add_option("--r", norm.r)->capture_default_str();
  norm_cmd->add_option("--input", norm.input)->required();

  std::string rearrange_input;
  std::vector<std::string> rearrange_ts;
  auto* re_cmd = app.add_subcommand("rearrange", "Decreasing rearrangement as (from, to, level) rows");
  re_cmd->add_option("--input", rearrange_input)->required();
  re_cmd->add_option("--t", rearrange_ts, "evaluate f* and f** at these points");

  KfuncArgs kf;
  auto* kf_cmd = app.add_subcommand("kfunc", "K-curve as two-column (t, K) text");
  kf_cmd->add_option("--input", kf.input)->required();
  kf_cmd->add_option("--couple", kf.couple, "l1-linf | herz | sequence")->capture_default_str();
  kf_cmd->add_option("--record", kf.record)->capture_default_str();
  kf_cmd->add_option("--a0", kf.a0)->capture_default_str();
  kf_cmd->add_option("--a1", kf.a1)->capture_default_str();
  kf_cmd->add_option("--q0", kf.q0)->capture_default_str();
  kf_cmd->add_option("--q1", kf.q1)->capture_default_str();
  kf_cmd->add_option("--tmin", kf.t_min)->capture_default_str();
  kf_cmd->add_option("--tmax", kf.t_max)->capture_default_str();
  kf_cmd->add_option("--per-octave", kf.per_octave)->capture_default_str();

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "Run a named verification suite");
  vf_cmd->add_option("suite", vf.suite, "suite name")->check(CLI::IsMember(suite_names()));
  vf_cmd->add_option("--config", vf.config, "JSON config file");
  vf_cmd->add_option("--corpus", vf.corpus, "corpus files");
  vf_cmd->add_option("--output", vf.output, "write the report here");
  vf_cmd->add_option("--format", vf.format, "json | tsv")->capture_default_str();
  vf_cmd->add_option("--seed", vf.seed);
  vf_cmd->add_option("--set", vf.sets, "extra parameter key=value (value may be a JSON list)");
  for (const char* key : {"a", "p", "q", "r", "theta", "cutoff", "a0", "a1", "q0", "q1", "dim", "size", "V", "trials",
                          "pairs", "op", "variant", "expect"}) {
    vf_cmd->add_option_function<std::string>(std::string("--") + key,
                                             [&vf, key](const std::string& v) { vf.overrides[key] = v; });
  }

  std::string kind = "random-step", gen_output;
  CorpusOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a deterministic corpus file");
  gen_cmd->add_option("--kind", kind, "characteristic | shells | random-step | grid")->capture_default_str();
  gen_cmd->add_option("--size", gen.size)->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim)->capture_default_str();
  gen_cmd->add_option("--measures", gen.measures, "set measures for the characteristic kind");
  gen_cmd->add_flag("--paper-example", gen.paper_example, "shells: B_u with measure 2/u^2");
  gen_cmd->add_option("--half-width", gen.half_width)->capture_default_str();
  gen_cmd->add_option("--cells", gen.cells)->capture_default_str();
  gen_cmd->add_option("--output", gen_output);

  std::string report_input, report_format = "summary";
  auto* rp_cmd = app.add_subcommand("report", "Re-emit or summarise a JSON report");
  rp_cmd->add_option("--input", report_input)->required();
  rp_cmd->add_option("--format", report_format, "summary | json | tsv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*norm_cmd) return run_norm(norm);
    if (*re_cmd) return run_rearrange(rearrange_input, rearrange_ts);
    if (*kf_cmd) return run_kfunc(kf);
    if (*vf_cmd) {
      if (vf.suite.empty() && vf.config.empty()) throw InputError("verify needs a suite name or --config");
      return run_verify(vf);
    }
    if (*gen_cmd) return run_gen_corpus(kind, gen, gen_output);
    if (*rp_cmd) return run_report(report_input, report_format);
  } catch (const InputError& e) {
    std::cerr << "lhz: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "lhz: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "lhz: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
