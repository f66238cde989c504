#include "lielat/replabel.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

#include "lielat/errors.hpp"

namespace lielat {

std::size_t LayerLabel::product() const {
  std::size_t p = 1;
  for (const auto& f : factors) p *= f.dimension;
  return p;
}

namespace {

const Layer& pick_layer(const std::vector<Layer>& ls, const RootSystem& rs, int node, int i) {
  if (ls.empty())
    throw DomainError(node_description(rs, node) + " has no unipotent radical layers");
  if (i < 1 || i > static_cast<int>(ls.size()))
    throw DomainError("layer index " + std::to_string(i) + " out of range 1.." + std::to_string(ls.size()));
  return ls[i - 1];
}

Coords reflect(const RootSystem& rs, const Coords& x, const Coords& gamma) {
  const int k = rs.pairing(x, gamma);
  Coords out = x;
  for (std::size_t t = 0; t < out.size(); ++t) out[t] -= k * gamma[t];
  return out;
}

}  // namespace

std::vector<std::size_t> weyl_orbits(const RootSystem& rs, int node, int i) {
  const std::vector<Layer> ls = layers(rs, node);
  const Layer& layer = pick_layer(ls, rs, node, i);
  const ReducedSubsystem red = reduced_subsystem(rs, node);

  std::unordered_set<Coords, CoordsHash> members;
  for (std::size_t r : layer.roots) members.insert(rs.root(r).coords);

  std::unordered_set<Coords, CoordsHash> seen;
  std::vector<std::size_t> sizes;
  for (std::size_t r : layer.roots) {
    const Coords& start = rs.root(r).coords;
    if (seen.count(start)) continue;
    std::size_t size = 0;
    std::vector<Coords> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      Coords x = std::move(queue.back());
      queue.pop_back();
      ++size;
      for (const auto& comp : red.components)
        for (const Coords& g : comp.simple_roots) {
          Coords y = reflect(rs, x, g);
          if (!members.count(y)) throw InternalError("reflection leaves layer U_" + std::to_string(i));
          if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::size_t weight_orbit_size(const Matrix<int>& cartan, const std::vector<int>& weight) {
  const std::size_t n = cartan.rows();
  if (weight.size() != n) throw DimensionMismatch("weight length does not match the Cartan matrix");
  std::set<std::vector<int>> seen{weight};
  std::vector<std::vector<int>> queue{weight};
  while (!queue.empty()) {
    std::vector<int> mu = std::move(queue.back());
    queue.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (mu[j] == 0) continue;
      // s_j(mu) = mu - mu_j alpha_j, and alpha_j has coordinates A(k, j).
      std::vector<int> nu = mu;
      for (std::size_t k = 0; k < n; ++k) nu[k] -= mu[j] * cartan(k, j);
      if (seen.insert(nu).second) queue.push_back(std::move(nu));
    }
  }
  return seen.size();
}

LayerLabel factor_labels(const RootSystem& rs, int node, int i) {
  if (!rs.simply_laced())
    throw UnsupportedError("factor labels are only defined for simply-laced types; " + rs.type().name() +
                           " layers may carry two Weyl orbits, use weyl_orbits instead");
  const std::vector<Layer> ls = layers(rs, node);
  const Layer& layer = pick_layer(ls, rs, node, i);
  const ReducedSubsystem red = reduced_subsystem(rs, node);

  std::vector<std::size_t> dominant;
  for (std::size_t r : layer.roots) {
    const Coords& x = rs.root(r).coords;
    bool dom = true;
    for (const auto& comp : red.components)
      for (const Coords& g : comp.simple_roots)
        if (rs.pairing(x, g) < 0) dom = false;
    if (dom) dominant.push_back(r);
  }
  if (dominant.size() != 1)
    throw InternalError("layer U_" + std::to_string(i) + " has " + std::to_string(dominant.size()) +
                        " dominant weights; expected a single minuscule orbit");

  LayerLabel label;
  label.index = i;
  label.orbit_sizes = weyl_orbits(rs, node, i);
  const Coords& top = rs.root(dominant.front()).coords;
  for (const auto& comp : red.components) {
    FactorLabel f;
    f.component = comp.type;
    for (const Coords& g : comp.simple_roots) f.highest_weight.push_back(rs.pairing(top, g));
    f.dimension = weight_orbit_size(comp.cartan, f.highest_weight);
    label.factors.push_back(std::move(f));
  }
  if (label.product() != layer.dim())
    throw InternalError("factor dimensions of U_" + std::to_string(i) + " do not multiply to the layer dimension");
  return label;
}

}  // namespace lielat
