#include "lhz/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

namespace lhz {

json to_json(const RadialStepFunction& f) {
  return {{"type", "radial_step"}, {"dim", f.dim()}, {"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

json to_json(const GridFunction1D& f) {
  return {{"type", "grid1d"}, {"half_width", f.half_width()}, {"cells", f.cells()}, {"values", f.values()}};
}

json to_json(const Corpus& corpus) {
  json records = json::array();
  for (const auto& f : corpus.radial) records.push_back(to_json(f));
  for (const auto& f : corpus.grid) records.push_back(to_json(f));
  return records;
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("record is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad '") + key + "': " + e.what());
  }
}

}  // namespace

RadialStepFunction radial_from_json(const json& j) {
  if (field<std::string>(j, "type") != "radial_step") throw InputError("expected a radial_step record");
  const auto dim = field<int>(j, "dim");
  auto rho = field<std::vector<double>>(j, "breakpoints");
  auto vals = field<std::vector<double>>(j, "values");
  for (std::size_t i = 1; i < rho.size(); ++i)
    if (!(rho[i] > rho[i - 1])) throw InputError("breakpoints must be strictly increasing");
  try {
    return RadialStepFunction(dim, std::move(rho), std::move(vals));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

GridFunction1D grid_from_json(const json& j) {
  if (field<std::string>(j, "type") != "grid1d") throw InputError("expected a grid1d record");
  const auto R = field<double>(j, "half_width");
  const auto cells = field<std::size_t>(j, "cells");
  auto vals = field<std::vector<double>>(j, "values");
  if (vals.size() != cells) throw InputError("grid1d: 'cells' does not match the number of values");
  try {
    return GridFunction1D(R, std::move(vals));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

Corpus corpus_from_json(const json& j) {
  Corpus out;
  auto add = [&](const json& rec) {
    if (!rec.is_object()) throw InputError("corpus records must be objects");
    const auto type = field<std::string>(rec, "type");
    if (type == "radial_step")
      out.radial.push_back(radial_from_json(rec));
    else if (type == "grid1d")
      out.grid.push_back(grid_from_json(rec));
    else
      throw InputError("unknown record type '" + type + "'");
  };
  if (j.is_array()) {
    for (const auto& rec : j) add(rec);
  } else if (j.is_object() && j.contains("records")) {
    for (const auto& rec : j.at("records")) add(rec);
  } else {
    add(j);
  }
  return out;
}

Corpus read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("corpus file '" + path + "' is not valid JSON: " + e.what());
  }
  return corpus_from_json(j);
}

void write_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << to_json(corpus).dump(1) << '\n';
}

CorpusKind parse_corpus_kind(const std::string& name) {
  if (name == "characteristic") return CorpusKind::characteristic;
  if (name == "shells") return CorpusKind::shells;
  if (name == "random-step") return CorpusKind::random_step;
  if (name == "grid") return CorpusKind::grid;
  throw InputError("unknown corpus kind '" + name + "'");
}

namespace {

// raw engine output, so files match across standard libraries
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

RadialStepFunction random_step(std::mt19937_64& rng, int dim) {
  const auto shells = 1 + draw(rng, 6);
  std::vector<double> rho{0.0}, vals;
  for (std::uint64_t i = 0; i < shells; ++i) {
    rho.push_back(rho.back() + static_cast<double>(1 + draw(rng, 16)) / 8.0);
    // signed quarter-integers in [-4, 4], zero allowed
    vals.push_back((static_cast<double>(draw(rng, 33)) - 16.0) / 4.0);
  }
  if (vals.back() == 0.0) vals.back() = 1.0;
  return RadialStepFunction(dim, std::move(rho), std::move(vals));
}

GridFunction1D random_grid(std::mt19937_64& rng, double R, std::size_t cells) {
  const auto pieces = 1 + draw(rng, 5);
  std::set<int> cuts;  // in units of 1/4, within [-4, 4]
  while (cuts.size() < pieces + 1) cuts.insert(static_cast<int>(draw(rng, 33)) - 16);
  std::vector<int> edges(cuts.begin(), cuts.end());
  std::vector<double> levels;
  for (std::uint64_t i = 0; i < pieces; ++i) {
    double v = (static_cast<double>(draw(rng, 17)) - 8.0) / 2.0;
    levels.push_back(v == 0.0 ? 1.0 : v);
  }
  return GridFunction1D::sampled(R, cells, [&](double x) {
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      if (x >= edges[i] / 4.0 && x < edges[i + 1] / 4.0) return levels[i];
    return 0.0;
  });
}

}  // namespace

Corpus generate_corpus(const CorpusOptions& o) {
  if (o.size < 1) throw InputError("corpus size must be at least 1");
  if (o.dim < 1) throw InputError("dimension must be positive");
  Corpus out;
  std::mt19937_64 rng(o.seed);
  switch (o.kind) {
    case CorpusKind::characteristic: {
      const std::vector<double> measures = o.measures.empty() ? std::vector<double>{0.25, 1.0, 9.0} : o.measures;
      for (double m : measures) {
        if (!(m > 0.0)) throw InputError("characteristic measures must be positive");
        const double one = 1.0;
        out.radial.push_back(RadialStepFunction::from_shell_measures(o.dim, {&m, 1}, {&one, 1}));
      }
      break;
    }
    case CorpusKind::shells: {
      for (std::size_t i = 0; i < o.size; ++i) {
        if (o.paper_example) {
          const int u = static_cast<int>(i) + 1;
          const double outer = std::ldexp(1.0, u);
          out.radial.push_back(RadialStepFunction::shell_indicator(1, outer - 1.0 / (u * u), outer));
        } else {
          const int u = static_cast<int>(i) + kFirstAnnulus;
          out.radial.push_back(
              RadialStepFunction::shell_indicator(o.dim, annulus_inner_radius(u), annulus_outer_radius(u)));
        }
      }
      break;
    }
    case CorpusKind::random_step:
      for (std::size_t i = 0; i < o.size; ++i) out.radial.push_back(random_step(rng, o.dim));
      break;
    case CorpusKind::grid: {
      if (o.half_width < 4.0) throw InputError("grid corpus needs half_width >= 4");
      out.grid.push_back(GridFunction1D::indicator(o.half_width, o.cells, -1.0, 1.0));
      for (std::size_t i = 1; i < o.size; ++i) out.grid.push_back(random_grid(rng, o.half_width, o.cells));
      break;
    }
  }
  return out;
}

}  // namespace lhz
