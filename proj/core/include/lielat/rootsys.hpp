#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lielat/matrix.hpp"

namespace lielat {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// Cartan–Killing type of an irreducible reduced root system.
///
/// Rank bounds: A >= 1, B >= 2, C >= 2, D >= 3, E in {6,7,8}, F = 4, G = 2.
struct LieType {
  Family family = Family::A;
  int rank = 1;

  /// Throws ConstructionError naming the violated bound.
  void validate() const;
  std::string name() const;
  /// Parses strings like "E8", "b4", " G2 ". Throws ConstructionError.
  static LieType parse(std::string_view text);

  auto operator<=>(const LieType&) const = default;
};

/// Integer coefficients of a root over the simple roots.
using Coords = std::vector<int>;

struct CoordsHash {
  std::size_t operator()(const Coords& c) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : c) h = (h ^ static_cast<std::size_t>(v + 64)) * 1099511628211ull;
    return h;
  }
};

struct Root {
  Coords coords;
  int height = 0;
  bool is_long = true;

  bool positive() const { return height > 0; }
};

/// (h, c, h-dual) for a root system.
struct CoxeterNumbers {
  int h = 0;
  int c = 1;
  int h_dual = 0;
  bool operator==(const CoxeterNumbers&) const = default;
};

/// An irreducible root system with all roots stored in simple-root
/// coordinates.
///
/// Conventions used throughout the library:
///  - cartan()(i, j) is the value of the simple root alpha_j on the coroot
///    alpha_i^vee, i.e. 2 (alpha_i, alpha_j) / (alpha_i, alpha_i).
///  - Simple roots are numbered as in Bourbaki, except E8, F4 and G2 which
///    follow the chain from the affine node: E8 is alpha_1 .. alpha_7 along
///    the long arm starting next to -beta_0 with alpha_8 attached to
///    alpha_5; G2 has alpha_1 long and alpha_2 short.
///  - roots() lists the positive roots ordered by height and then by
///    descending lexicographic order of coordinates (so index i < rank is
///    alpha_{i+1}), followed by their negatives in the
///    same order. Root indices refer to this list.
///
/// Immutable after construction; all queries are const and thread-safe.
class RootSystem {
 public:
  explicit RootSystem(LieType type);

  const LieType& type() const { return type_; }
  int rank() const { return type_.rank; }
  std::size_t dim() const { return static_cast<std::size_t>(rank()) + roots_.size(); }

  const Matrix<int>& cartan() const { return cartan_; }
  /// W-invariant symmetric form on the simple roots, scaled so that short
  /// roots have squared length 2 (long roots 2c).
  const Matrix<int>& root_form() const { return root_form_; }
  /// Even indivisible W-invariant form on the simple coroots: 2 on coroots of
  /// long roots and 2c on coroots of short roots.
  const Matrix<int>& coroot_gram() const { return coroot_gram_; }

  std::span<const Root> roots() const { return roots_; }
  std::size_t num_roots() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  const Root& root(std::size_t index) const;

  std::optional<std::size_t> index_of(const Coords& coords) const;
  std::size_t negative_of(std::size_t index) const;
  std::size_t simple_root(int i) const;  // i in [0, rank)
  bool is_simple(std::size_t index) const;

  std::size_t highest_root() const { return highest_; }
  /// Coefficients of the highest root (the marks), in node order.
  const Coords& marks() const { return roots_[highest_].coords; }

  CoxeterNumbers numbers() const { return numbers_; }
  int center_order() const { return center_order_; }
  bool simply_laced() const { return numbers_.c == 1; }

  /// Symmetric form (x, y) on arbitrary coefficient vectors.
  int inner(const Coords& x, const Coords& y) const;
  /// <x, gamma^vee> = 2 (x, gamma) / (gamma, gamma) for a root gamma.
  int pairing(const Coords& x, const Coords& gamma) const;
  /// x(alpha_i^vee) for a simple coroot.
  int pairing_simple(const Coords& x, int i) const;

  /// Largest m >= 0 with beta - m alpha a root. Throws DomainError on
  /// arguments that are not roots.
  int root_string_m(const Coords& alpha, const Coords& beta) const;
  int root_string_m(std::size_t alpha, std::size_t beta) const;

  /// Coordinates of beta^vee in the simple-coroot basis.
  Coords coroot_coords(const Coords& beta) const;
  Coords coroot_coords(std::size_t beta) const;

 private:
  void generate_roots();
  void compute_numbers();

  LieType type_;
  Matrix<int> root_form_;
  Matrix<int> cartan_;
  Matrix<int> coroot_gram_;
  std::vector<Root> roots_;
  std::unordered_map<Coords, std::size_t, CoordsHash> index_;
  std::size_t highest_ = 0;
  CoxeterNumbers numbers_;
  int center_order_ = 1;
};

/// Returns (h, c, h-dual).
inline CoxeterNumbers numbers(const RootSystem& rs) { return rs.numbers(); }

/// Determinant of a small integer matrix (exact, by fraction-free
/// elimination in 64-bit arithmetic; meant for Cartan-sized inputs).
long long small_determinant(const Matrix<int>& m);

/// Human-readable root: "a1+2a2+3a3", "-a1".
std::string format_root(const Coords& coords);

}  // namespace lielat
