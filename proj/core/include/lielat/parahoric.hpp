#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lielat/chevalley.hpp"
#include "lielat/intform.hpp"
#include "lielat/rootsys.hpp"

namespace lielat {

// Nodes of the extended Dynkin diagram are numbered 0 .. rank: node 0 is the
// affine node -beta_0, node k is the simple root alpha_k.

/// Throws DomainError unless 0 <= node <= rank.
void check_node(const RootSystem& rs, int node);
/// n_alpha(beta_0) for a finite node, 1 for the affine node.
int node_mark(const RootSystem& rs, int node);
/// "affine" or "a4".
std::string node_name(const RootSystem& rs, int node);
/// "a4 (mark 5)".
std::string node_description(const RootSystem& rs, int node);

bool is_prime(std::uint64_t n);

struct ExtendedDiagram {
  struct Bond {
    int a = 0, b = 0;
    int multiplicity = 1;  ///< max(|A_ab|, |A_ba|); 2 for affine A1
    int longer = -1;       ///< endpoint with the longer root, -1 if equal
  };
  int rank = 0;
  std::vector<Coords> node_roots;  ///< node 0 carries -beta_0
  std::vector<int> marks;          ///< marks[0] = 1
  Matrix<int> cartan;              ///< (rank+1)^2, same convention as RootSystem
  std::vector<Bond> bonds;
};

ExtendedDiagram extended_diagram(const RootSystem& rs);

enum class LatticeKind { Standard, Iwahori, JAlpha, Parahoric };

/// A Z_p-lattice spanned by p^{v_i} b_i over the Chevalley basis b_i.
struct ParahoricLattice {
  LatticeKind kind = LatticeKind::Standard;
  std::uint64_t prime = 2;
  int node = 0;                 ///< meaningful for JAlpha and Parahoric
  std::vector<int> valuations;  ///< one per basis vector
};

ParahoricLattice standard_lattice(const ChevalleyAlgebra& alg, std::uint64_t p);
/// 0 on the torus and negative roots, 1 on positive roots.
ParahoricLattice iwahori_lattice(const ChevalleyAlgebra& alg, std::uint64_t p);
/// Inverse image of the maximal parabolic for the simple root alpha_k:
/// 1 on X_beta with n_k(beta) > 0, 0 elsewhere. Throws DomainError unless
/// 1 <= k <= rank.
ParahoricLattice j_alpha_lattice(const ChevalleyAlgebra& alg, int k, std::uint64_t p);
/// Lie lattice of the maximal parahoric at `node`. With n the mark:
/// -1 on X_beta with n_k(beta) = -n, 0 on the torus and on -n < n_k(beta) <= 0,
/// +1 on n_k(beta) > 0. The affine node gives the Chevalley lattice.
ParahoricLattice parahoric_lattice(const ChevalleyAlgebra& alg, int node, std::uint64_t p);

/// Componentwise maximum of two valuation vectors (lattice intersection).
std::vector<int> valuation_max(const std::vector<int>& a, const std::vector<int>& b);

/// p-adic valuation of a nonzero integer.
int padic_valuation(long long value, std::uint64_t p);

struct ClosureReport {
  bool closed = true;
  std::size_t pairs_checked = 0;
  std::optional<std::string> first_violation;
};

/// Checks p^{v_i + v_j} [b_i, b_j] in the lattice for every basis pair,
/// coefficient by coefficient.
ClosureReport check_closure(const ChevalleyAlgebra& alg, const ParahoricLattice& lattice);

struct ReducedComponent {
  LieType type;
  std::vector<Coords> simple_roots;  ///< ordered so the local Cartan matrix is `cartan`
  Matrix<int> cartan;
  bool contains_affine = false;
};

/// Root system Phi_alpha = { beta : n_alpha(beta) = 0 mod n } of the reduced
/// group, split into irreducible components with simple roots
/// (Delta \ {alpha}) u {-beta_0}. Components are sorted by family, then
/// rank, then the component holding -beta_0 first.
struct ReducedSubsystem {
  int node = 0;
  int mark = 1;
  std::vector<std::size_t> roots;
  std::vector<ReducedComponent> components;
};

ReducedSubsystem reduced_subsystem(const RootSystem& rs, int node);

/// Type of a connected Cartan matrix (up to simultaneous permutation).
/// Throws InternalError for anything that is not of finite type.
LieType classify_cartan(const Matrix<int>& cartan);

struct Layer {
  int index = 0;                   ///< i in 1 .. n-1
  std::vector<std::size_t> roots;  ///< roots with n_alpha(beta) = i mod n
  std::size_t dim() const { return roots.size(); }
};

/// Layers U_1 .. U_{n-1} of the unipotent radical. Empty for mark-1 nodes.
std::vector<Layer> layers(const RootSystem& rs, int node);

/// dim g - rank - |Phi_alpha|.
std::size_t radical_dimension(const RootSystem& rs, int node);

/// Caches the normalized Gram matrix and its discriminant so that
/// repeated lattice computations on one algebra stay cheap.
class ParahoricCalculator {
 public:
  explicit ParahoricCalculator(const ChevalleyAlgebra& alg);

  const ChevalleyAlgebra& algebra() const { return alg_; }
  const Matrix<long long>& normalized() const { return normalized_; }
  /// |det| of the normalized form on the Chevalley lattice.
  const FactoredInteger& standard_discriminant() const { return standard_disc_; }

  /// Normalized Gram on the basis p^{v_i} b_i; p-denominators are carried
  /// by the IntegerForm when some v_i + v_j < 0 meets a nonzero entry.
  IntegerForm lattice_gram(const ParahoricLattice& lattice) const;
  /// |det| of lattice_gram.
  FactoredInteger discriminant(const ParahoricLattice& lattice) const;
  FactoredInteger parahoric_discriminant(int node, std::uint64_t p) const;
  /// Elementary divisors of the parahoric lattice over Z_p, i.e. the
  /// p-primary parts of the integral Smith form, ascending. Throws
  /// PreconditionError when p divides the standard discriminant.
  std::vector<mpz_class> parahoric_divisors(int node, std::uint64_t p) const;
  /// All nodes (affine included) whose parahoric discriminant at p equals
  /// the candidate (compared up to sign).
  std::vector<int> matching_parahorics(std::uint64_t p, const FactoredInteger& candidate) const;

 private:
  const ChevalleyAlgebra& alg_;
  Matrix<long long> normalized_;
  FactoredInteger standard_disc_;
};

FactoredInteger parahoric_discriminant(const ChevalleyAlgebra& alg, int node, std::uint64_t p);
std::vector<mpz_class> parahoric_divisors(const ChevalleyAlgebra& alg, int node, std::uint64_t p);
std::vector<int> matching_parahorics(const ChevalleyAlgebra& alg, std::uint64_t p, const FactoredInteger& candidate);

std::string to_string(LatticeKind kind);

}  // namespace lielat
