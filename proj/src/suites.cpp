#include "lhz/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "lhz/herz.hpp"
#include "lhz/interp.hpp"
#include "lhz/lorentz.hpp"
#include "lhz/operators.hpp"

namespace lhz {

namespace {

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double parse_number(const json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw InputError("parameter '" + key + "' is not a number");
}

}  // namespace

json to_json(const ReportRecord& r) {
  return {{"suite", r.suite},         {"params", r.params}, {"check_id", r.check_id},
          {"lhs", number(r.lhs)},     {"rhs", number(r.rhs)}, {"ratio", number(r.ratio)},
          {"pass", r.pass},           {"notes", r.notes}};
}

ReportRecord record_from_json(const json& j) {
  ReportRecord r;
  try {
    r.suite = j.at("suite").get<std::string>();
    r.params = j.value("params", json::object());
    r.check_id = j.at("check_id").get<std::string>();
    r.lhs = parse_number(j.at("lhs"), "lhs");
    r.rhs = parse_number(j.at("rhs"), "rhs");
    r.ratio = parse_number(j.at("ratio"), "ratio");
    r.pass = j.at("pass").get<bool>();
    r.notes = j.value("notes", "");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report record: ") + e.what());
  }
  return r;
}

std::string to_tsv(const std::vector<ReportRecord>& records) {
  std::ostringstream os;
  os.precision(17);
  os << "suite\tparams\tcheck_id\tlhs\trhs\tratio\tpass\tnotes\n";
  for (const auto& r : records) {
    os << r.suite << '\t' << r.params.dump() << '\t' << r.check_id << '\t' << r.lhs << '\t' << r.rhs
       << '\t' << r.ratio << '\t' << (r.pass ? "pass" : "fail") << '\t' << r.notes << '\n';
  }
  return os.str();
}

SuiteConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  SuiteConfig c;
  c.suite = j.value("suite", "");
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw InputError("'params' must be an object");
    c.params = j.at("params");
  }
  if (j.contains("corpus")) {
    const auto& cp = j.at("corpus");
    if (cp.is_string())
      c.corpus.push_back(cp.get<std::string>());
    else if (cp.is_array())
      for (const auto& p : cp) c.corpus.push_back(p.get<std::string>());
    else
      throw InputError("'corpus' must be a path or a list of paths");
  }
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

namespace {

// ---------------------------------------------------------------------------
// parameter access

class Params {
 public:
  explicit Params(const json& j) : j_(j) {}

  double num(const std::string& key, double fallback) const {
    return j_.contains(key) ? parse_number(j_.at(key), key) : fallback;
  }
  int integer(const std::string& key, int fallback) const {
    const double v = num(key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw InputError("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
  }
  std::vector<double> list(const std::string& key, std::vector<double> fallback) const {
    if (!j_.contains(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_array()) return {parse_number(v, key)};
    std::vector<double> out;
    for (const auto& e : v) out.push_back(parse_number(e, key));
    if (out.empty()) throw InputError("parameter '" + key + "' is an empty list");
    return out;
  }
  std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) const {
    if (!j_.contains(key)) return fallback;
    const auto& v = j_.at(key);
    if (v.is_string()) return {v.get<std::string>()};
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.get<std::string>());
    return out;
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    return j_.contains(key) ? j_.at(key).get<std::string>() : fallback;
  }

 private:
  const json& j_;
};

json herz_json(const HerzParams& h) {
  return {{"a", number(h.a)}, {"p", number(h.p)}, {"q", number(h.q)}, {"r", number(h.r)}};
}

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  ReportRecord& add(std::string id, json params, double lhs, double rhs, bool pass, std::string notes = {}) {
    ReportRecord r;
    r.suite = suite_;
    r.params = std::move(params);
    r.check_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs != 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : kInf);
    r.pass = pass;
    r.notes = std::move(notes);
    records_.push_back(std::move(r));
    return records_.back();
  }
  std::vector<ReportRecord> take() { return std::move(records_); }

 private:
  std::string suite_;
  std::vector<ReportRecord> records_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

CorpusOptions characteristic_options(std::uint64_t seed) {
  CorpusOptions o;
  o.kind = CorpusKind::characteristic;
  o.seed = seed;
  return o;
}

Corpus load_corpora(const SuiteConfig& c) {
  Corpus all;
  for (const auto& path : c.corpus) {
    auto part = read_corpus(path);
    all.radial.insert(all.radial.end(), part.radial.begin(), part.radial.end());
    all.grid.insert(all.grid.end(), part.grid.begin(), part.grid.end());
  }
  return all;
}

std::vector<RadialStepFunction> radial_corpus(const SuiteConfig& c, const Params& P, std::size_t size,
                                              bool with_indicators) {
  auto corpus = load_corpora(c).radial;
  if (!corpus.empty()) return corpus;
  if (with_indicators) corpus = generate_corpus(characteristic_options(c.seed)).radial;
  CorpusOptions o;
  o.kind = CorpusKind::random_step;
  o.size = static_cast<std::size_t>(P.integer("size", static_cast<int>(size)));
  o.seed = c.seed;
  o.dim = P.integer("dim", 1);
  const auto extra = generate_corpus(o).radial;
  corpus.insert(corpus.end(), extra.begin(), extra.end());
  return corpus;
}

std::vector<GridFunction1D> grid_corpus(const SuiteConfig& c, const Params& P) {
  auto corpus = load_corpora(c).grid;
  if (!corpus.empty()) return corpus;
  CorpusOptions o;
  o.kind = CorpusKind::grid;
  o.size = static_cast<std::size_t>(P.integer("size", 6));
  o.seed = c.seed;
  o.half_width = P.num("half_width", 16.0);
  o.cells = static_cast<std::size_t>(P.integer("cells", 512));
  return generate_corpus(o).grid;
}

// ---------------------------------------------------------------------------
// suites

std::vector<ReportRecord> suite_rearrange(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("rearrange");
  const auto corpus = radial_corpus(c, P, 200, false);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& f = corpus[i];
    const auto g = rearrangement(f);
    std::vector<double> alphas{0.0};
    for (double v : f.values()) alphas.push_back(std::abs(v));
    std::sort(alphas.begin(), alphas.end());
    const std::size_t m = alphas.size();
    for (std::size_t k = 0; k + 1 < m; ++k) alphas.push_back(0.5 * (alphas[k] + alphas[k + 1]));
    alphas.push_back(alphas[m - 1] + 1.0);
    double worst = 0.0;
    for (double a : alphas) worst = std::max(worst, std::abs(distribution(f, a) - g.distribution(a)));
    rec.add("equimeasurable[" + std::to_string(i) + "]", json::object(), worst, 0.0, worst == 0.0);
    const double lhs = g.mass(), rhs = f.integral_abs();
    rec.add("mass[" + std::to_string(i) + "]", json::object(), lhs, rhs,
            std::abs(lhs - rhs) <= 1e-12 * rhs, lhs == rhs ? "exact" : "");
  }
  std::mt19937_64 rng(c.seed);
  const int trials = P.integer("trials", 100);
  const int terms = P.integer("terms", 5);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<RadialStepFunction> fs;
    std::vector<double> w;
    double total = 0.0;
    for (int k = 0; k < terms; ++k) {
      fs.push_back(corpus[rng() % corpus.size()].abs());
      w.push_back(static_cast<double>(1 + rng() % 8));
      total += w.back();
    }
    for (double& x : w) x /= total;
    const double t = static_cast<double>(1 + rng() % 32) / 8.0;
    const auto r = sum_bound_check(fs, t, w);
    rec.add("sum-bound[" + std::to_string(trial) + "]", {{"t", t}}, r.lhs_avg, r.rhs_avg, r.pass,
            "weighted: " + fmt(r.lhs_weighted) + " <= " + fmt(r.rhs_weighted));
  }
  return rec.take();
}

std::vector<ReportRecord> suite_lorentz_equivalence(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("lorentz-equivalence");
  const auto corpus = radial_corpus(c, P, 50, true);
  for (double p : P.list("p", {1.5, 2.0, 4.0})) {
    for (double r : P.list("r", {1.0, 2.0, kInf})) {
      const LorentzParams lp(p, r);
      if (!lp.starred_admissible())
        throw DomainError("equivalence needs 1 < p < inf, 1 <= r <= inf (got p = " + fmt(p) + ", r = " + fmt(r) + ")");
      const json params{{"p", number(p)}, {"r", number(r)}};
      double max_ratio = 0.0;
      bool all = true;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto e = equivalence_check(corpus[i], lp);
        auto& row = rec.add("sandwich[" + std::to_string(i) + "]", params, e.starred, e.upper_factor * e.quasi,
                            e.pass, "quasi " + fmt(e.quasi));
        row.ratio = e.ratio;
        max_ratio = std::max(max_ratio, e.ratio);
        all = all && e.pass;
      }
      rec.add("max-ratio", params, max_ratio, lp.p / (lp.p - 1.0), all, "starred/quasi vs p/(p-1)");
    }
  }
  return rec.take();
}

std::vector<ReportRecord> suite_holder(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("herz-holder");
  const auto corpus = radial_corpus(c, P, 50, false);
  const auto as = P.list("a", {-0.4, 0.0, 0.4});
  const auto ps = P.list("p", {1.5, 2.0, 4.0});
  const auto qs = P.list("q", {1.0, 2.0, kInf});
  const auto rs = P.list("r", {1.0, 2.0, kInf});
  std::vector<HerzParams> grid;
  for (double a : as)
    for (double p : ps)
      for (double q : qs)
        for (double r : rs) grid.emplace_back(a, p, q, r);
  std::mt19937_64 rng(c.seed);
  const int pairs = P.integer("pairs", 100);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const auto& f = corpus[rng() % corpus.size()];
    const auto& g = corpus[rng() % corpus.size()];
    const auto& hp = grid[static_cast<std::size_t>(k) % grid.size()];
    const auto h = hl_holder_check(f, g, hp);
    rec.add("pair[" + std::to_string(k) + "]", herz_json(hp), h.integral, h.bound, h.pass);
    worst = std::max(worst, h.ratio);
  }
  const auto chi = RadialStepFunction::shell_indicator(1, 0.5, 1.0);
  const auto eq = hl_holder_check(chi, chi, {0.0, 2.0, 2.0, 2.0});
  rec.add("equality", herz_json({0.0, 2.0, 2.0, 2.0}), eq.integral, eq.bound,
          eq.pass && std::abs(eq.integral - eq.bound) <= 1e-12, "f = g = chi_{A_0}");
  rec.add("max-ratio", json::object(), worst, 1.0, worst <= 1.0 + 1e-12, "empirical constant");
  return rec.take();
}

std::vector<ReportRecord> suite_bfs(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("bfs");
  const HerzParams hp(P.num("a", 1.0), P.num("p", 2.0), P.num("q", 2.0), P.num("r", 2.0));
  AnnulusMeasureSequence m;
  m.dim = P.integer("dim", 1);
  if (c.params.contains("head")) m.head = P.list("head", {});
  if (c.params.contains("tail_coefficient") || !c.params.contains("head")) {
    m.tail = AnnulusMeasureSequence::PowerTail{P.num("tail_coefficient", 2.0), P.num("tail_power", 2.0),
                                               P.integer("tail_start", 1)};
  }
  const int cutoff = P.integer("cutoff", 20);
  const auto r = bfs_condition_check(m, hp, cutoff);
  for (std::size_t i = 0; i < r.partial_a.size(); ++i) {
    const int u = static_cast<int>(i) + kFirstAnnulus;
    rec.add("partial[" + std::to_string(u) + "]", herz_json(hp), r.partial_a[i], r.partial_b[i], true,
            "lhs: condition (a), rhs: condition (b)");
  }
  const std::string expect = P.str("expect", "");
  const bool ok = expect.empty() || expect == to_string(r.verdict);
  rec.add("verdict", herz_json(hp), r.partial_a.back(), r.partial_b.back(), ok,
          "a: " + to_string(r.verdict_a) + ", b: " + to_string(r.verdict_b) + ", overall: " + to_string(r.verdict) +
              (expect.empty() ? "" : ", expected " + expect));
  return rec.take();
}

std::vector<ReportRecord> suite_divergence(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("example-divergence");
  const HerzParams hp(P.num("a", 1.0), P.num("p", 1.0), P.num("q", 1.0), P.num("r", 1.0));
  const int cutoff = P.integer("cutoff", 5);
  const auto r = divergence_example(hp, cutoff);
  for (std::size_t i = 0; i < r.partial_sums.size(); ++i) {
    const bool has_norm = i < r.norm_partial.size();
    const double rhs = has_norm ? r.norm_partial[i] : r.partial_sums[i];
    rec.add("partial[" + std::to_string(i + 1) + "]", herz_json(hp), r.partial_sums[i], rhs,
            std::abs(r.partial_sums[i] - rhs) <= 1e-9 * rhs,
            has_norm ? "rhs: ||chi_{E_U}||^q from the step representative" : "rhs not resolved in double");
  }
  rec.add("measure", herz_json(hp), r.measure_partial, r.measure_total, r.measure_partial <= r.measure_total,
          "sum of 2/u^2 against pi^2/3");
  const bool expect_growth = hp.a > 0.0;
  rec.add("verdict", herz_json(hp), r.partial_sums.back(), static_cast<double>(r.increasing_from),
          !expect_growth || r.verdict == GrowthVerdict::growing,
          to_string(r.verdict) + (r.eventually_increasing ? ", terms increasing from u = " + std::to_string(r.increasing_from)
                                                          : ""));
  return rec.take();
}

std::vector<ReportRecord> suite_embeddings(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("embeddings");
  auto corpus = radial_corpus(c, P, 30, false);
  for (int u = kFirstAnnulus; u <= 3; ++u)
    corpus.push_back(RadialStepFunction::shell_indicator(1, annulus_inner_radius(u), annulus_outer_radius(u)));
  struct Item {
    EmbeddingVariant v;
    const char* name;
    HerzParams source, target;
  };
  const std::vector<Item> items{
      {EmbeddingVariant::A, "A", {0.3, 2, 2, 1}, {0.3, 2, 2, 2}},
      {EmbeddingVariant::A, "A", {0.3, 2, 2, 1}, {0.3, 2, 2, kInf}},
      {EmbeddingVariant::A, "A", {-0.2, 3, 1, 2}, {-0.2, 3, 1, 4}},
      {EmbeddingVariant::B, "B", {1, 2, 2, 2}, {0, 2, 2, 2}},
      {EmbeddingVariant::B, "B", {0.5, 1.5, 1, kInf}, {-0.5, 1.5, 1, kInf}},
      {EmbeddingVariant::C, "C", {0.2, 4, 2, 2}, {0.2, 2, 2, 2}},
      {EmbeddingVariant::C, "C", {0.2, 4, 2, kInf}, {0.2, 2, 2, 2}},
      {EmbeddingVariant::C, "C", {0, 3, kInf, 1}, {0, 1.5, kInf, 4}},
      {EmbeddingVariant::D, "D", {0, 2, 1, 2}, {0, 2, 2, 2}},
      {EmbeddingVariant::D, "D", {0.4, 2, 2, 1}, {0.4, 2, kInf, 1}},
  };
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& it = items[k];
    const json params{{"variant", it.name}, {"source", herz_json(it.source)}, {"target", herz_json(it.target)}};
    double constant = 0.0;
    bool all = true;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto e = embedding_check(it.v, corpus[i], it.source, it.target);
      rec.add(std::string(it.name) + std::to_string(k) + "[" + std::to_string(i) + "]", params, e.lhs, e.rhs, e.pass,
              it.v == EmbeddingVariant::C ? "weak path " + fmt(e.weak_path) : "");
      constant = std::max(constant, e.constant);
      all = all && e.pass;
    }
    rec.add(std::string(it.name) + std::to_string(k) + "-constant", params, constant, 1.0, all,
            "max ||f||_target / ||f||_source over the corpus");
  }
  return rec.take();
}

void add_interp_report(Recorder& rec, const InterpSuiteReport& r, const json& params) {
  for (const auto& ch : r.checks)
    rec.add(r.suite + ":" + ch.label, params, ch.value, ch.target, std::isfinite(ch.ratio) && ch.ratio > 0.0,
            "bracket " + fmt(ch.bracket));
  rec.add(r.suite + ":band", params, r.band_hi, r.band_lo, r.pass && r.band_hi <= r.band_lo * 1e300,
          "target " + r.target + "; max/min ratio " + fmt(r.band_hi / r.band_lo));
  rec.add(r.suite + ":homogeneity", params, r.homogeneity, 0.0, r.pass, "max relative gap for 2f");
}

InterpSuiteConfig interp_config(const Params& P, const std::string& variant, InterpSuiteConfig d) {
  d.suite = variant;
  d.theta = P.num("theta", d.theta);
  d.q = P.num("q", d.q);
  d.a0 = P.num("a0", d.a0);
  d.a1 = P.num("a1", d.a1);
  d.q0 = P.num("q0", d.q0);
  d.q1 = P.num("q1", d.q1);
  d.p = P.num("p", d.p);
  d.r = P.num("r", d.r);
  d.stability = P.num("stability", d.stability);
  d.grid.octaves = P.integer("octaves", d.grid.octaves);
  d.grid.per_octave = P.integer("per_octave", d.grid.per_octave);
  return validated(d);
}

json interp_json(const InterpSuiteConfig& c) {
  return {{"theta", c.theta}, {"q", number(c.q)}, {"a0", c.a0}, {"a1", c.a1}, {"q0", number(c.q0)},
          {"q1", number(c.q1)}, {"p", number(c.p)}, {"r", number(c.r)}};
}

std::vector<ReportRecord> suite_interp_seq(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("interp-seq");
  std::vector<WeightedSeq> units;
  for (int u = kFirstAnnulus; u <= 10; ++u) units.push_back(WeightedSeq::unit(u));
  std::vector<WeightedSeq> seqs = units;
  std::mt19937_64 rng(c.seed);
  for (int k = 0; k < P.integer("size", 8); ++k) {
    std::vector<double> y(2 + rng() % 7);
    for (double& v : y) v = static_cast<double>(rng() % 9) / 8.0;
    y.back() = 1.0;
    seqs.emplace_back(y);
  }
  for (const auto& variant : P.strings("variant", {"seq-a", "seq-q"})) {
    InterpSuiteConfig d;
    if (variant == "seq-q") d.a0 = d.a1 = 0.5, d.q0 = 1.0, d.q1 = 2.0;
    const auto cfg = interp_config(P, variant, d);
    const auto report = verify_interpolation(cfg, std::span<const WeightedSeq>(seqs));
    add_interp_report(rec, report, interp_json(cfg));
    if (variant == "seq-a") {
      // one coordinate: K = min(2^{u a0}, t 2^{u a1}), so the ratio is a constant
      const double th = cfg.theta, q = cfg.q;
      const double expected =
          std::isinf(q) ? 1.0 : std::pow(1.0 / ((1.0 - th) * q) + 1.0 / (th * q), 1.0 / q);
      for (std::size_t i = 0; i < units.size(); ++i) {
        const auto& ch = report.checks[i];
        rec.add("seq-a:unit[" + std::to_string(static_cast<int>(i) + kFirstAnnulus) + "]", interp_json(cfg), ch.ratio,
                expected, std::abs(ch.ratio - expected) <= 1e-6, "closed form for e_u");
      }
    }
  }
  return rec.take();
}

std::vector<ReportRecord> suite_interp_lorentz(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("interp-lorentz");
  auto corpus = load_corpora(c).radial;
  if (corpus.empty()) {
    corpus = generate_corpus(characteristic_options(c.seed)).radial;
    CorpusOptions o;
    o.size = static_cast<std::size_t>(P.integer("size", 6));
    o.seed = c.seed;
    const auto extra = generate_corpus(o).radial;
    corpus.insert(corpus.end(), extra.begin(), extra.end());
  }
  InterpSuiteConfig d;
  d.q = 2.0;
  const auto cfg = interp_config(P, "lorentz", d);
  const auto report = verify_interpolation(cfg, std::span<const RadialStepFunction>(corpus));
  add_interp_report(rec, report, interp_json(cfg));
  const double tol = P.num("identity_tol", 1e-8);
  for (const auto& ch : report.checks)
    rec.add("identity:" + ch.label, interp_json(cfg), ch.value, ch.target, std::abs(ch.ratio - 1.0) <= tol,
            "(L1, Linf)_{theta,q} against the starred Lorentz norm");
  return rec.take();
}

std::vector<ReportRecord> suite_interp_hl(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("interp-hl");
  const auto corpus = radial_corpus(c, P, 5, false);
  for (const auto& variant : P.strings("variant", {"hl-1", "hl-2", "hl-3", "hl-4"})) {
    InterpSuiteConfig d;
    if (variant == "hl-1") d.q0 = 1.0, d.q1 = 2.0, d.q = 2.0;
    if (variant == "hl-2") d.a0 = d.a1 = 0.5, d.q0 = 1.0, d.q1 = 2.0, d.r = 1.0;
    if (variant == "hl-4") d.q0 = 1.0, d.q1 = 2.0;
    const auto cfg = interp_config(P, variant, d);
    const auto report = verify_interpolation(cfg, std::span<const RadialStepFunction>(corpus));
    add_interp_report(rec, report, interp_json(cfg));
  }
  return rec.take();
}

std::vector<ReportRecord> suite_lemma(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("lemma-bound");
  const int lo = P.integer("lo", -1), hi = P.integer("hi", 60);
  for (double N : P.list("dim", {1, 2, 3})) {
    for (double p : P.list("p", {1.5, 2.0, 4.0})) {
      for (double r : P.list("r", {1.0, 2.0, kInf})) {
        const LorentzParams lp(p, r);
        const auto s = annulus_interaction_scan(static_cast<int>(N), lp, lo, hi);
        rec.add("constant", {{"dim", N}, {"p", number(p)}, {"r", number(r)}}, s.constant, s.min_ratio, s.finite,
                "worst (u, v) = (" + std::to_string(s.worst_u) + ", " + std::to_string(s.worst_v) + ")");
      }
    }
  }
  // equality cases N = 1, p = r = 2: lhs / 2^{(v-u)/2} = 1 exactly
  for (int gap : {0, 2}) {
    bool exact = true;
    for (int v = 0; v + gap <= hi; ++v) {
      const auto b = annulus_interaction_bound(v + gap, v, 1, {2.0, 2.0});
      exact = exact && b.constant == 1.0;
    }
    rec.add("equality[u-v=" + std::to_string(gap) + "]", {{"dim", 1}, {"p", 2}, {"r", 2}}, exact ? 1.0 : 0.0, 1.0,
            exact, "every v in [0, hi - gap]");
  }
  return rec.take();
}

std::vector<ReportRecord> suite_boundedness(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("boundedness");
  const auto corpus = grid_corpus(c, P);
  const auto grid = sweep_grid(P.list("p", {1.5, 2.0, 4.0}), P.list("q", {1.0, 2.0, kInf}), P.list("r", {1.0, 2.0, kInf}));
  const double drift = P.num("drift", 0.05);
  for (const auto& name : P.strings("op", {"maximal", "hilbert"})) {
    const auto op = parse_operator(name);
    const auto rep = boundedness_sweep(op, corpus, grid, drift);
    for (const auto& cell : rep.cells) {
      json params = herz_json(cell.params);
      params["op"] = name;
      if (!cell.in_range) {
        rec.add("excluded", params, 0.0, 0.0, true, "excluded: " + cell.excluded);
        continue;
      }
      rec.add("ratio", params, cell.max_ratio, cell.max_ratio_refined, cell.pass, "drift " + fmt(cell.drift));
    }
  }
  return rec.take();
}

std::vector<ReportRecord> suite_witness(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("witness");
  const double p = P.num("p", 2.0);
  const HerzParams hp(P.num("a", 1.0 / conjugate_exponent(p) + 0.5), p, P.num("q", 2.0), P.num("r", 2.0));
  const int V = P.integer("V", 8);
  const auto w = out_of_range_witness(hp, V, P.integer("window_steps", 6));
  for (std::size_t i = 0; i < w.ratios_by_v.size(); ++i) {
    const double prev = i == 0 ? 0.0 : w.ratios_by_v[i - 1];
    rec.add("v=" + std::to_string(i + 1), herz_json(hp), w.ratios_by_v[i], prev, i == 0 || w.ratios_by_v[i] > prev,
            "window radius " + fmt(w.half_width) + "; rhs: previous ratio");
  }
  rec.add("growing", herz_json(hp), w.growing ? 1.0 : 0.0, 1.0, !w.applicable || w.growing,
          w.applicable ? "ratios strictly increasing in v" : "single ratio, not applicable");
  for (std::size_t k = 0; k < w.ratios_by_window.size(); ++k)
    rec.add("window=" + fmt(std::ldexp(1.0, 3 + static_cast<int>(k))), herz_json(hp), w.ratios_by_window[k],
            k == 0 ? 0.0 : w.ratios_by_window[k - 1], true, "f = chi_{A_1}; diagnostic");
  return rec.take();
}

std::vector<ReportRecord> suite_interp_boundedness(const SuiteConfig& c) {
  const Params P(c.params);
  Recorder rec("interp-boundedness");
  const auto corpus = grid_corpus(c, P);
  const auto op = parse_operator(P.str("op", "hilbert"));
  for (double p : P.list("p", {2.0})) {
    for (double q : P.list("q", {1.0, 2.0, 3.0})) {
      for (double a : P.list("a", {-0.2, 0.0, 0.2})) {
        const auto r = interpolated_boundedness_check(op, p, q, a, corpus);
        const json params{{"a", a}, {"p", p}, {"q", number(q)}, {"r", number(q)}, {"op", to_string(op)}};
        rec.add("max-ratio", params, r.max_ratio, r.sweep_ratio, r.pass,
                q >= 1.0 ? "rhs: boundedness sweep at r = q, gap " + fmt(r.gap) : "no sweep cell for q < 1");
      }
    }
  }
  return rec.take();
}

using SuiteFn = std::function<std::vector<ReportRecord>(const SuiteConfig&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> table{
      {"rearrange", suite_rearrange},
      {"lorentz-equivalence", suite_lorentz_equivalence},
      {"herz-holder", suite_holder},
      {"holder", suite_holder},
      {"bfs", suite_bfs},
      {"example-divergence", suite_divergence},
      {"embeddings", suite_embeddings},
      {"interp-seq", suite_interp_seq},
      {"interp-lorentz", suite_interp_lorentz},
      {"interp-hl", suite_interp_hl},
      {"lemma-bound", suite_lemma},
      {"boundedness", suite_boundedness},
      {"witness", suite_witness},
      {"interp-boundedness", suite_interp_boundedness},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

SuiteOutcome run_suite(const SuiteConfig& config) {
  SuiteOutcome out;
  const auto it = registry().find(config.suite);
  if (it == registry().end()) {
    out.exit_code = 2;
    out.diagnostic = "unknown suite '" + config.suite + "'";
    return out;
  }
  try {
    out.records = it->second(config);
  } catch (const DomainError& e) {
    out.exit_code = 2;
    out.diagnostic = std::string("hypothesis violation: ") + e.what();
    return out;
  } catch (const InputError& e) {
    out.exit_code = 2;
    out.diagnostic = std::string("config error: ") + e.what();
    return out;
  } catch (const json::exception& e) {
    out.exit_code = 2;
    out.diagnostic = std::string("config error: ") + e.what();
    return out;
  }
  const bool ok = std::all_of(out.records.begin(), out.records.end(), [](const auto& r) { return r.pass; });
  out.exit_code = ok ? 0 : 1;
  return out;
}

}  // namespace lhz
