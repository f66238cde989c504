#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lielat/intform.hpp"
#include "lielat/parahoric.hpp"
#include "lielat/replabel.hpp"

namespace lielat {

struct LayerReport {
  int index = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> orbit_sizes;
  std::optional<LayerLabel> label;  ///< simply-laced types only
};

/// Everything the library knows about one maximal parahoric at one prime.
/// Invariant: dim_reduced + dim_radical = dim g.
struct ParahoricReport {
  LieType type;
  int node = 0;
  std::string node_name;
  int mark = 1;
  std::uint64_t prime = 2;
  std::vector<LieType> reduced_components;
  std::size_t dim_reduced = 0;  ///< rank + |Phi_alpha|
  std::size_t dim_radical = 0;
  std::vector<LayerReport> layers;
  FactoredInteger discriminant;
  bool hyperspecial = false;
};

ParahoricReport make_report(const ParahoricCalculator& calc, int node, std::uint64_t p);

/// "A1+A2+A5"; components in the order given.
std::string format_components(const std::vector<LieType>& components);
/// "2x3x6"
std::string format_factors(const LayerLabel& label);

}  // namespace lielat
