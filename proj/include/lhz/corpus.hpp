#ifndef LHZ_CORPUS_HPP
#define LHZ_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lhz/operators.hpp"
#include "lhz/rearrange.hpp"

namespace lhz {

using json = nlohmann::json;

/// Raised for malformed corpus or configuration input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Corpus {
  std::vector<RadialStepFunction> radial;
  std::vector<GridFunction1D> grid;

  bool empty() const { return radial.empty() && grid.empty(); }
};

json to_json(const RadialStepFunction& f);
json to_json(const GridFunction1D& f);
json to_json(const Corpus& corpus);

/// {"type":"radial_step",...}; rejects non-increasing breakpoints.
RadialStepFunction radial_from_json(const json& j);
/// {"type":"grid1d",...}
GridFunction1D grid_from_json(const json& j);
/// A single record, an array of records, or {"records": [...]}.
Corpus corpus_from_json(const json& j);

Corpus read_corpus(const std::string& path);
void write_corpus(const std::string& path, const Corpus& corpus);

enum class CorpusKind { characteristic, shells, random_step, grid };
CorpusKind parse_corpus_kind(const std::string& name);

struct CorpusOptions {
  CorpusKind kind = CorpusKind::random_step;
  std::size_t size = 10;
  std::uint64_t seed = 1;
  int dim = 1;
  std::vector<double> measures;  // characteristic: set measures (default 1/4, 1, 9)
  bool paper_example = false;    // shells: the B_u family with mu(B_u) = 2/u^2
  double half_width = 16.0;      // grid
  std::size_t cells = 512;       // grid
};

/// Deterministic: the same options always give the same records.
Corpus generate_corpus(const CorpusOptions& options);

}  // namespace lhz

#endif
