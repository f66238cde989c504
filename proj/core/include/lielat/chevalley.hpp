#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lielat/intform.hpp"
#include "lielat/matrix.hpp"
#include "lielat/rootsys.hpp"

namespace lielat {

/// Sparse integer combination of Chevalley basis vectors.
///
/// Basis index convention: 0 .. rank-1 are the simple coroots H_i, and
/// rank + k is X_beta for the root with index k in RootSystem::roots().
class Element {
 public:
  using Term = std::pair<std::uint32_t, std::int64_t>;

  Element() = default;
  explicit Element(std::size_t dim) : dim_(dim) {}
  static Element basis(std::size_t dim, std::size_t index, std::int64_t coeff = 1);
  static Element from_dense(const std::vector<std::int64_t>& coords);

  std::size_t dim() const { return dim_; }
  /// Nonzero terms sorted by basis index.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coeff(std::size_t index) const;
  std::vector<std::int64_t> to_dense() const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator*(std::int64_t scalar) const;
  bool operator==(const Element&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Term> terms_;
};

/// Total order on positive roots used to pick extraspecial pairs.
enum class RootOrder {
  HeightLex,    ///< height, then the RootSystem's own order
  HeightColex,  ///< height, then the reverse of it
};

/// The Chevalley lattice of a simple Lie algebra: integral basis
/// {H_i} u {X_beta} with structure constants N_{a,b} = +-(m+1).
///
/// Signs come from the extraspecial-pair scheme: every extraspecial pair gets
/// sign +1 and the rest follow from the Chevalley-basis identities, with
/// N_{-a,-b} = -N_{a,b}. Construction checks |N_{a,b}| = m+1 and throws
/// InternalError otherwise.
///
/// Immutable after construction; bracket tables are materialized eagerly so
/// every const member is safe to call concurrently.
class ChevalleyAlgebra {
 public:
  explicit ChevalleyAlgebra(RootSystem rs, RootOrder order = RootOrder::HeightLex);

  const RootSystem& root_system() const { return rs_; }
  RootOrder order() const { return order_; }
  std::size_t dim() const { return rs_.dim(); }
  int rank() const { return rs_.rank(); }

  std::size_t torus_index(int i) const { return static_cast<std::size_t>(i); }
  std::size_t root_index(std::size_t root) const { return static_cast<std::size_t>(rank()) + root; }
  bool is_torus(std::size_t basis) const { return basis < static_cast<std::size_t>(rank()); }
  std::size_t root_of(std::size_t basis) const { return basis - static_cast<std::size_t>(rank()); }
  std::string basis_name(std::size_t basis) const;

  /// N_{a,b} for root indices; 0 when a+b is not a root.
  int structure_constant(std::size_t a, std::size_t b) const;
  /// Number of ordered root pairs with nonzero N.
  std::size_t num_constants() const { return constants_.size(); }
  /// Multiset of |N| over all ordered pairs, as value -> count.
  std::map<int, std::size_t> abs_constant_counts() const;
  /// All nonzero constants as (a, b, N) with a, b root indices, sorted.
  std::vector<std::tuple<std::size_t, std::size_t, int>> constants() const;

  /// Coroot coordinates of H_beta in the H_i basis.
  const Coords& coroot(std::size_t root) const { return coroots_[root]; }

  /// [b_i, b_j] for basis vectors.
  const Element& bracket_basis(std::size_t i, std::size_t j) const;
  /// Bilinear bracket. Throws DimensionMismatch on wrong lengths.
  Element bracket(const Element& x, const Element& y) const;

  /// Builds an algebra from a stored table of constants; throws
  /// ConstructionError if the table is incomplete or violates the Chevalley
  /// conditions.
  static ChevalleyAlgebra from_constants(RootSystem rs, RootOrder order,
                                         const std::vector<std::tuple<std::size_t, std::size_t, int>>& table);

 private:
  struct ConstantEntry {
    std::uint32_t a, b, sum;
    int n;
  };
  ChevalleyAlgebra(RootSystem rs, RootOrder order, std::vector<int> dense_constants);
  void compute_signs(std::vector<int>& dense) const;
  void finish(const std::vector<int>& dense);
  void check_string_lengths() const;

  RootSystem rs_;
  RootOrder order_;
  std::vector<Coords> coroots_;
  std::vector<ConstantEntry> constants_;  // sorted by (a, b)
  std::vector<std::size_t> row_start_;    // CSR over a
  std::vector<Element> brackets_;         // dim x dim
};

/// Gram matrix of the Killing form Tr(ad x ad y) on the Chevalley basis,
/// computed as an exact sparse trace.
Matrix<long long> killing_matrix(const ChevalleyAlgebra& alg);
IntegerForm killing_gram(const ChevalleyAlgebra& alg);

/// Killing form divided by 2 h-dual. Throws InternalError if some entry is
/// not divisible (that would mean a structure-constant bug).
Matrix<long long> normalized_matrix(const ChevalleyAlgebra& alg);
IntegerForm normalized_gram(const ChevalleyAlgebra& alg);

enum class VerifyMode { Fast, Full };

struct VerificationReport {
  VerifyMode mode = VerifyMode::Fast;
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::optional<std::string> first_violation;
};

/// Checks antisymmetry on all basis pairs and the Jacobi identity on basis
/// triples i < j < k. Full mode enumerates every triple. Fast mode checks
/// every triple containing a torus vector, X_{+-alpha} for a simple alpha or
/// X_{+-beta_0}, plus 20000 further triples drawn from a fixed-seed mt19937.
VerificationReport verify_algebra(const ChevalleyAlgebra& alg, VerifyMode mode);

/// Versioned JSON cache of the structure constants, keyed by type, root
/// order and sign-convention version. Loading re-runs the fast checks.
inline constexpr int kCacheFormatVersion = 1;
inline constexpr int kSignConventionVersion = 1;
void save_constants(const ChevalleyAlgebra& alg, std::ostream& out);
ChevalleyAlgebra load_constants(std::istream& in);

std::string to_string(RootOrder order);
std::string to_string(VerifyMode mode);

}  // namespace lielat
