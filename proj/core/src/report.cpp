#include "lielat/report.hpp"

#include "lielat/errors.hpp"

namespace lielat {

ParahoricReport make_report(const ParahoricCalculator& calc, int node, std::uint64_t p) {
  const RootSystem& rs = calc.algebra().root_system();
  check_node(rs, node);
  ParahoricReport r;
  r.type = rs.type();
  r.node = node;
  r.node_name = node_name(rs, node);
  r.mark = node_mark(rs, node);
  r.prime = p;
  r.hyperspecial = node == 0;

  const ReducedSubsystem red = reduced_subsystem(rs, node);
  for (const auto& c : red.components) r.reduced_components.push_back(c.type);
  r.dim_reduced = static_cast<std::size_t>(rs.rank()) + red.roots.size();
  r.dim_radical = rs.num_roots() - red.roots.size();

  std::size_t layer_total = 0;
  for (const Layer& l : layers(rs, node)) {
    LayerReport lr;
    lr.index = l.index;
    lr.dim = l.dim();
    lr.orbit_sizes = weyl_orbits(rs, node, l.index);
    if (rs.simply_laced()) lr.label = factor_labels(rs, node, l.index);
    layer_total += lr.dim;
    r.layers.push_back(std::move(lr));
  }
  if (layer_total != r.dim_radical || r.dim_reduced + r.dim_radical != rs.dim())
    throw InternalError("layer dimensions do not add up for " + node_description(rs, node));

  r.discriminant = calc.parahoric_discriminant(node, p);
  return r;
}

std::string format_components(const std::vector<LieType>& components) {
  std::string out;
  for (const auto& t : components) {
    if (!out.empty()) out += '+';
    out += t.name();
  }
  return out;
}

std::string format_factors(const LayerLabel& label) {
  std::string out;
  for (const auto& f : label.factors) {
    if (!out.empty()) out += 'x';
    out += std::to_string(f.dimension);
  }
  return out;
}

}  // namespace lielat
