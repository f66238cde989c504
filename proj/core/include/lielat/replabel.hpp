#pragma once

#include <cstddef>
#include <vector>

#include "lielat/parahoric.hpp"
#include "lielat/rootsys.hpp"

namespace lielat {

/// One tensor factor of a layer: the projected highest weight on a
/// component of the reduced group and the size of its Weyl orbit.
struct FactorLabel {
  LieType component;
  std::vector<int> highest_weight;  ///< fundamental-weight coordinates, component order
  std::size_t dimension = 1;
};

struct LayerLabel {
  int index = 0;
  std::vector<std::size_t> orbit_sizes;  ///< descending
  std::vector<FactorLabel> factors;      ///< aligned with ReducedSubsystem::components
  std::size_t product() const;
};

/// Orbit sizes (descending) of the Weyl group of Phi_alpha on the weights of
/// layer U_i. Throws DomainError unless the node has mark >= 2 and
/// 1 <= i < mark.
std::vector<std::size_t> weyl_orbits(const RootSystem& rs, int node, int i);

/// Tensor-factor dimensions of U_i for simply-laced types. The dominant
/// weight of the layer is projected onto each component; the factor
/// dimension is the Weyl orbit size of the projection, which is the
/// dimension because these layers are minuscule.
/// Throws UnsupportedError for B, C, F, G (use weyl_orbits there).
LayerLabel factor_labels(const RootSystem& rs, int node, int i);

/// Size of the Weyl orbit of a weight given in fundamental-weight
/// coordinates, for the root system with Cartan matrix `cartan`.
std::size_t weight_orbit_size(const Matrix<int>& cartan, const std::vector<int>& weight);

}  // namespace lielat
