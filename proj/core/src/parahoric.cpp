#include "lielat/parahoric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "lielat/errors.hpp"

namespace lielat {

void check_node(const RootSystem& rs, int node) {
  if (node < 0 || node > rs.rank())
    throw DomainError("node " + std::to_string(node) + " out of range 0.." + std::to_string(rs.rank()) + " for " +
                      rs.type().name());
}

int node_mark(const RootSystem& rs, int node) {
  check_node(rs, node);
  return node == 0 ? 1 : rs.marks()[node - 1];
}

std::string node_name(const RootSystem& rs, int node) {
  check_node(rs, node);
  return node == 0 ? "affine" : "a" + std::to_string(node);
}

std::string node_description(const RootSystem& rs, int node) {
  return node_name(rs, node) + " (mark " + std::to_string(node_mark(rs, node)) + ")";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not a prime");
}

// n_k(beta) for node k; the affine node has no coefficient (returns 0).
int coefficient(const RootSystem& rs, int node, std::size_t root) {
  return node == 0 ? 0 : rs.root(root).coords[node - 1];
}

}  // namespace

// ---------------------------------------------------------------------------

ExtendedDiagram extended_diagram(const RootSystem& rs) {
  ExtendedDiagram d;
  const int r = rs.rank();
  d.rank = r;
  Coords minus_b0 = rs.marks();
  for (int& v : minus_b0) v = -v;
  d.node_roots.push_back(minus_b0);
  d.marks.push_back(1);
  for (int i = 0; i < r; ++i) {
    d.node_roots.push_back(rs.root(rs.simple_root(i)).coords);
    d.marks.push_back(rs.marks()[i]);
  }
  d.cartan = Matrix<int>(r + 1, r + 1);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j) d.cartan(i, j) = rs.pairing(d.node_roots[j], d.node_roots[i]);
  for (int i = 0; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      if (d.cartan(i, j) == 0) continue;
      ExtendedDiagram::Bond b;
      b.a = i;
      b.b = j;
      b.multiplicity = std::max(std::abs(d.cartan(i, j)), std::abs(d.cartan(j, i)));
      const int li = rs.inner(d.node_roots[i], d.node_roots[i]);
      const int lj = rs.inner(d.node_roots[j], d.node_roots[j]);
      b.longer = li == lj ? -1 : (li > lj ? i : j);
      d.bonds.push_back(b);
    }
  return d;
}

// ---------------------------------------------------------------------------
// Lattices

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Standard: return "standard";
    case LatticeKind::Iwahori: return "iwahori";
    case LatticeKind::JAlpha: return "j-alpha";
    case LatticeKind::Parahoric: return "parahoric";
  }
  return "?";
}

ParahoricLattice standard_lattice(const ChevalleyAlgebra& alg, std::uint64_t p) {
  require_prime(p);
  return ParahoricLattice{LatticeKind::Standard, p, 0, std::vector<int>(alg.dim(), 0)};
}

ParahoricLattice iwahori_lattice(const ChevalleyAlgebra& alg, std::uint64_t p) {
  ParahoricLattice l = standard_lattice(alg, p);
  l.kind = LatticeKind::Iwahori;
  const RootSystem& rs = alg.root_system();
  for (std::size_t r = 0; r < rs.num_roots(); ++r)
    if (rs.root(r).positive()) l.valuations[alg.root_index(r)] = 1;
  return l;
}

ParahoricLattice j_alpha_lattice(const ChevalleyAlgebra& alg, int k, std::uint64_t p) {
  const RootSystem& rs = alg.root_system();
  if (k < 1 || k > rs.rank()) throw DomainError("J_alpha needs a simple root a1..a" + std::to_string(rs.rank()));
  ParahoricLattice l = standard_lattice(alg, p);
  l.kind = LatticeKind::JAlpha;
  l.node = k;
  for (std::size_t r = 0; r < rs.num_roots(); ++r)
    if (coefficient(rs, k, r) > 0) l.valuations[alg.root_index(r)] = 1;
  return l;
}

ParahoricLattice parahoric_lattice(const ChevalleyAlgebra& alg, int node, std::uint64_t p) {
  const RootSystem& rs = alg.root_system();
  check_node(rs, node);
  ParahoricLattice l = standard_lattice(alg, p);
  l.kind = LatticeKind::Parahoric;
  l.node = node;
  if (node == 0) return l;
  const int n = node_mark(rs, node);
  for (std::size_t r = 0; r < rs.num_roots(); ++r) {
    const int c = coefficient(rs, node, r);
    int v = 0;
    if (c == -n) v = -1;
    else if (c > 0) v = 1;
    l.valuations[alg.root_index(r)] = v;
  }
  return l;
}

std::vector<int> valuation_max(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("valuation vectors differ in length");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

int padic_valuation(long long value, std::uint64_t p) {
  if (value == 0) throw DomainError("valuation of 0");
  int v = 0;
  unsigned long long x = value < 0 ? static_cast<unsigned long long>(-value) : static_cast<unsigned long long>(value);
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

ClosureReport check_closure(const ChevalleyAlgebra& alg, const ParahoricLattice& lattice) {
  const std::size_t d = alg.dim();
  if (lattice.valuations.size() != d) throw DimensionMismatch("lattice does not match the algebra");
  ClosureReport report;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ++report.pairs_checked;
      const int vij = lattice.valuations[i] + lattice.valuations[j];
      for (const auto& [k, c] : alg.bracket_basis(i, j).terms()) {
        if (padic_valuation(c, lattice.prime) + vij < lattice.valuations[k]) {
          report.closed = false;
          report.first_violation = "[" + alg.basis_name(i) + ", " + alg.basis_name(j) + "] leaves the lattice at " +
                                   alg.basis_name(k);
          return report;
        }
      }
    }
  return report;
}

// ---------------------------------------------------------------------------
// Reduced subsystem

namespace {

bool cartan_isomorphic(const Matrix<int>& sub, const Matrix<int>& std_cartan) {
  const std::size_t n = sub.rows();
  if (std_cartan.rows() != n) return false;
  std::vector<int> perm(n, -1);  // std index -> sub index
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = sub(c, perm[j]) == std_cartan(i, j) && sub(perm[j], c) == std_cartan(j, i);
      if (!ok) continue;
      perm[i] = static_cast<int>(c);
      used[c] = 1;
      if (place(i + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  return place(0);
}

std::vector<LieType> candidate_types(int r) {
  std::vector<LieType> out{{Family::A, r}};
  if (r >= 2) out.push_back({Family::B, r});
  if (r >= 3) out.push_back({Family::C, r});
  if (r >= 4) out.push_back({Family::D, r});
  if (r >= 6 && r <= 8) out.push_back({Family::E, r});
  if (r == 4) out.push_back({Family::F, 4});
  if (r == 2) out.push_back({Family::G, 2});
  return out;
}

}  // namespace

LieType classify_cartan(const Matrix<int>& cartan) {
  const int r = static_cast<int>(cartan.rows());
  if (r == 0) throw InternalError("cannot classify an empty Cartan matrix");
  for (const LieType& t : candidate_types(r))
    if (cartan_isomorphic(cartan, RootSystem(t).cartan())) return t;
  throw InternalError("Cartan matrix of rank " + std::to_string(r) + " is not of finite type");
}

ReducedSubsystem reduced_subsystem(const RootSystem& rs, int node) {
  check_node(rs, node);
  ReducedSubsystem out;
  out.node = node;
  out.mark = node_mark(rs, node);
  for (std::size_t r = 0; r < rs.num_roots(); ++r)
    if (coefficient(rs, node, r) % out.mark == 0) out.roots.push_back(r);

  std::vector<Coords> simple;
  std::vector<char> affine;
  if (node != 0) {
    Coords minus_b0 = rs.marks();
    for (int& v : minus_b0) v = -v;
    simple.push_back(minus_b0);
    affine.push_back(1);
  }
  for (int i = 0; i < rs.rank(); ++i)
    if (i + 1 != node) {
      simple.push_back(rs.root(rs.simple_root(i)).coords);
      affine.push_back(0);
    }

  const std::size_t m = simple.size();
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < m; ++v)
        if (comp[v] < 0 && rs.inner(simple[u], simple[v]) != 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }

  std::size_t rank_sum = 0, root_sum = 0;
  std::vector<std::tuple<LieType, int, std::size_t, ReducedComponent>> sorted;
  for (int c = 0; c < ncomp; ++c) {
    ReducedComponent rc;
    std::size_t first = m;
    for (std::size_t s = 0; s < m; ++s)
      if (comp[s] == c) {
        rc.simple_roots.push_back(simple[s]);
        rc.contains_affine = rc.contains_affine || affine[s];
        first = std::min(first, s);
      }
    const std::size_t k = rc.simple_roots.size();
    rc.cartan = Matrix<int>(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) rc.cartan(i, j) = rs.pairing(rc.simple_roots[j], rc.simple_roots[i]);
    rc.type = classify_cartan(rc.cartan);
    rank_sum += k;
    root_sum += RootSystem(rc.type).num_roots();
    sorted.emplace_back(rc.type, rc.contains_affine ? 0 : 1, first, std::move(rc));
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
  });
  for (auto& t : sorted) out.components.push_back(std::move(std::get<3>(t)));

  if (rank_sum != static_cast<std::size_t>(rs.rank()) || root_sum != out.roots.size())
    throw InternalError("reduced subsystem of " + rs.type().name() + " at node " + std::to_string(node) +
                        " does not match its classified components");
  return out;
}

std::vector<Layer> layers(const RootSystem& rs, int node) {
  const int n = node_mark(rs, node);
  std::vector<Layer> out;
  for (int i = 1; i < n; ++i) {
    Layer l;
    l.index = i;
    for (std::size_t r = 0; r < rs.num_roots(); ++r) {
      const int c = coefficient(rs, node, r);
      if (((c % n) + n) % n == i) l.roots.push_back(r);
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::size_t radical_dimension(const RootSystem& rs, int node) {
  return rs.num_roots() - reduced_subsystem(rs, node).roots.size();
}

// ---------------------------------------------------------------------------
// Discriminants

ParahoricCalculator::ParahoricCalculator(const ChevalleyAlgebra& alg)
    : alg_(alg), normalized_(normalized_matrix(alg)) {
  const auto det = determinant(IntegerForm::from_ints(normalized_));
  if (!det) throw InternalError("normalized form is degenerate");
  standard_disc_ = det->abs();
}

IntegerForm ParahoricCalculator::lattice_gram(const ParahoricLattice& lattice) const {
  const std::size_t d = alg_.dim();
  if (lattice.valuations.size() != d) throw DimensionMismatch("lattice does not match the algebra");
  const auto& v = lattice.valuations;
  int min_exp = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (normalized_(i, j) != 0) min_exp = std::min(min_exp, v[i] + v[j]);
  Matrix<mpz_class> g(d, d);
  mpz_class pe;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (normalized_(i, j) == 0) continue;
      mpz_ui_pow_ui(pe.get_mpz_t(), lattice.prime, static_cast<unsigned long>(v[i] + v[j] - min_exp));
      g(i, j) = pe * static_cast<long>(normalized_(i, j));
    }
  return IntegerForm(std::move(g), lattice.prime, -min_exp);
}

FactoredInteger ParahoricCalculator::discriminant(const ParahoricLattice& lattice) const {
  const auto det = determinant(lattice_gram(lattice));
  if (!det) throw InternalError("lattice Gram matrix is degenerate");
  return det->abs();
}

FactoredInteger ParahoricCalculator::parahoric_discriminant(int node, std::uint64_t p) const {
  return discriminant(parahoric_lattice(alg_, node, p));
}

std::vector<mpz_class> ParahoricCalculator::parahoric_divisors(int node, std::uint64_t p) const {
  require_prime(p);
  check_node(alg_.root_system(), node);
  if (standard_disc_.exponent(p) != 0)
    throw PreconditionError("p = " + std::to_string(p) + " divides det <,> = " + standard_disc_.to_string() +
                            " on the Chevalley lattice; the (Z/pZ)^dim R description needs p not dividing det");
  const IntegerForm form = lattice_gram(parahoric_lattice(alg_, node, p));
  if (!form.integral()) throw InternalError("parahoric Gram matrix is not integral");
  // The lattice lives over Z_p: keep the p-primary part of each divisor.
  std::vector<mpz_class> out;
  const mpz_class pz(static_cast<unsigned long>(p));
  for (const mpz_class& d : elementary_divisors(form)) {
    mpz_class q = d, part = 1;
    while (q != 0 && q % pz == 0) {
      q /= pz;
      part *= pz;
    }
    out.push_back(part);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ParahoricCalculator::matching_parahorics(std::uint64_t p, const FactoredInteger& candidate) const {
  std::vector<int> out;
  const FactoredInteger target = candidate.abs();
  for (int node = 0; node <= alg_.rank(); ++node)
    if (parahoric_discriminant(node, p) == target) out.push_back(node);
  return out;
}

FactoredInteger parahoric_discriminant(const ChevalleyAlgebra& alg, int node, std::uint64_t p) {
  return ParahoricCalculator(alg).parahoric_discriminant(node, p);
}

std::vector<mpz_class> parahoric_divisors(const ChevalleyAlgebra& alg, int node, std::uint64_t p) {
  return ParahoricCalculator(alg).parahoric_divisors(node, p);
}

std::vector<int> matching_parahorics(const ChevalleyAlgebra& alg, std::uint64_t p, const FactoredInteger& candidate) {
  return ParahoricCalculator(alg).matching_parahorics(p, candidate);
}

}  // namespace lielat
