#include "lielat/chevalley.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <random>
#include <sstream>

#include "lielat/errors.hpp"

namespace lielat {

// ---------------------------------------------------------------------------
// Element

Element Element::basis(std::size_t dim, std::size_t index, std::int64_t coeff) {
  if (index >= dim) throw DimensionMismatch("basis index out of range");
  Element e(dim);
  if (coeff != 0) e.terms_.emplace_back(static_cast<std::uint32_t>(index), coeff);
  return e;
}

Element Element::from_dense(const std::vector<std::int64_t>& coords) {
  Element e(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) e.terms_.emplace_back(static_cast<std::uint32_t>(i), coords[i]);
  return e;
}

std::int64_t Element::coeff(std::size_t index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, std::size_t i) { return t.first < i; });
  return (it != terms_.end() && it->first == index) ? it->second : 0;
}

std::vector<std::int64_t> Element::to_dense() const {
  std::vector<std::int64_t> out(dim_, 0);
  for (const auto& [i, v] : terms_) out[i] = v;
  return out;
}

Element Element::operator+(const Element& other) const {
  if (dim_ != other.dim_) throw DimensionMismatch("adding elements of different dimension");
  Element out(dim_);
  auto a = terms_.begin(), b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.terms_.push_back(*b++);
    } else {
      const std::int64_t v = a->second + b->second;
      if (v != 0) out.terms_.emplace_back(a->first, v);
      ++a;
      ++b;
    }
  }
  return out;
}

Element Element::operator-(const Element& other) const { return *this + other * -1; }

Element Element::operator*(std::int64_t scalar) const {
  Element out(dim_);
  if (scalar == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.second *= scalar;
  return out;
}

std::string to_string(RootOrder order) {
  return order == RootOrder::HeightLex ? "height-lex" : "height-colex";
}

std::string to_string(VerifyMode mode) { return mode == VerifyMode::Fast ? "fast" : "full"; }

// ---------------------------------------------------------------------------
// Construction

namespace {

std::optional<std::size_t> sum_root(const RootSystem& rs, std::size_t a, std::size_t b) {
  const Coords& x = rs.root(a).coords;
  const Coords& y = rs.root(b).coords;
  Coords s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
  return rs.index_of(s);
}

std::vector<std::size_t> order_positions(const RootSystem& rs, RootOrder order) {
  const std::size_t np = rs.num_positive();
  std::vector<std::size_t> idx(np);
  for (std::size_t i = 0; i < np; ++i) idx[i] = i;
  if (order == RootOrder::HeightColex) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const int ha = rs.root(a).height, hb = rs.root(b).height;
      if (ha != hb) return ha < hb;
      return a > b;
    });
  }
  std::vector<std::size_t> pos(np);
  for (std::size_t k = 0; k < np; ++k) pos[idx[k]] = k;
  return pos;
}

}  // namespace

void ChevalleyAlgebra::compute_signs(std::vector<int>& dense) const {
  const RootSystem& rs = rs_;
  const std::size_t nr = rs.num_roots();
  const std::size_t np = rs.num_positive();
  const std::vector<std::size_t> pos = order_positions(rs, order_);
  auto is_pos = [&](std::size_t r) { return r < np; };
  auto neg = [&](std::size_t r) { return rs.negative_of(r); };

  std::vector<long long> norm(nr);
  for (std::size_t r = 0; r < nr; ++r) norm[r] = rs.inner(rs.root(r).coords, rs.root(r).coords);

  std::vector<std::optional<std::size_t>> sum_table(nr * nr);
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t b = 0; b < nr; ++b) sum_table[a * nr + b] = sum_root(rs, a, b);
  auto sum = [&](std::size_t a, std::size_t b) { return sum_table[a * nr + b]; };

  // Extraspecial pair (alpha, xi - alpha) for each non-simple positive xi:
  // alpha is the earliest root in the order with xi - alpha positive.
  std::vector<std::pair<std::size_t, std::size_t>> extraspecial(np, {SIZE_MAX, SIZE_MAX});
  for (std::size_t xi = 0; xi < np; ++xi) {
    if (rs.is_simple(xi)) continue;
    std::size_t best = SIZE_MAX;
    for (std::size_t a = 0; a < np; ++a) {
      const Coords& x = rs.root(xi).coords;
      const Coords& y = rs.root(a).coords;
      Coords d(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
      auto b = rs.index_of(d);
      if (!b || !is_pos(*b)) continue;
      if (best == SIZE_MAX || pos[a] < pos[best]) best = a;
    }
    const Coords& x = rs.root(xi).coords;
    Coords d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - rs.root(best).coords[i];
    extraspecial[xi] = {best, *rs.index_of(d)};
  }

  constexpr int kUnknown = INT_MIN;
  std::fill(dense.begin(), dense.end(), kUnknown);
  for (std::size_t xi = 0; xi < np; ++xi) {
    if (rs.is_simple(xi)) continue;
    const auto [a, b] = extraspecial[xi];
    dense[a * nr + b] = rs.root_string_m(a, b) + 1;
  }

  auto exact_div = [&](long long num, long long den, const char* where) -> int {
    if (den == 0 || num % den != 0)
      throw InternalError(std::string("non-integral structure constant in ") + where + " for " +
                          rs.type().name());
    return static_cast<int>(num / den);
  };

  std::function<int(std::size_t, std::size_t)> get = [&](std::size_t r, std::size_t s) -> int {
    int& slot = dense[r * nr + s];
    if (slot != kUnknown) return slot;
    const auto rs_sum = sum(r, s);
    int val = 0;
    if (!rs_sum) {
      val = 0;
    } else if (is_pos(r) && is_pos(s)) {
      if (pos[r] > pos[s]) {
        val = -get(s, r);
      } else {
        const std::size_t xi = *rs_sum;
        const auto [a, b] = extraspecial[xi];
        if (a == r) throw InternalError("extraspecial constant missing");
        // Four-term identity on (a, b, -r, -s) with N_{-r,-s} = -N_{r,s}.
        long long num1 = 0, den1 = 1, num2 = 0, den2 = 1;
        if (auto br = sum(b, neg(r))) {
          num1 = static_cast<long long>(get(b, neg(r))) * get(a, neg(s));
          den1 = norm[*br];
        }
        if (auto ar = sum(a, neg(r))) {
          num2 = static_cast<long long>(get(neg(r), a)) * get(b, neg(s));
          den2 = norm[*ar];
        }
        const long long nab = get(a, b);
        val = exact_div(norm[xi] * (num1 * den2 + num2 * den1), den1 * den2 * nab, "special pair");
      }
    } else if (!is_pos(r) && !is_pos(s)) {
      val = -get(neg(r), neg(s));
    } else if (is_pos(r)) {
      // r > 0 > s. With t = -(r+s): N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s).
      const std::size_t t = neg(*rs_sum);
      if (is_pos(*rs_sum)) {
        // s, t negative: N_{s,t} = -N_{-s,-t}.
        val = exact_div(-norm[t] * get(neg(s), neg(t)), norm[r], "mixed pair");
      } else {
        val = exact_div(norm[t] * get(t, r), norm[s], "mixed pair");
      }
    } else {
      val = -get(s, r);
    }
    slot = val;
    return val;
  };

  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t s = 0; s < nr; ++s) get(r, s);
}

ChevalleyAlgebra::ChevalleyAlgebra(RootSystem rs, RootOrder order) : rs_(std::move(rs)), order_(order) {
  const std::size_t nr = rs_.num_roots();
  std::vector<int> dense(nr * nr, 0);
  compute_signs(dense);
  finish(dense);
  check_string_lengths();
}

ChevalleyAlgebra::ChevalleyAlgebra(RootSystem rs, RootOrder order, std::vector<int> dense)
    : rs_(std::move(rs)), order_(order) {
  finish(dense);
}

void ChevalleyAlgebra::finish(const std::vector<int>& dense) {
  const RootSystem& rs = rs_;
  const std::size_t nr = rs.num_roots();
  coroots_.resize(nr);
  for (std::size_t r = 0; r < nr; ++r) coroots_[r] = rs.coroot_coords(r);

  constants_.clear();
  row_start_.assign(nr + 1, 0);
  for (std::size_t a = 0; a < nr; ++a) {
    row_start_[a] = constants_.size();
    for (std::size_t b = 0; b < nr; ++b) {
      const int n = dense[a * nr + b];
      if (n == 0) continue;
      auto s = sum_root(rs, a, b);
      if (!s) throw ConstructionError("structure constant on a pair whose sum is not a root");
      constants_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                            static_cast<std::uint32_t>(*s), n});
    }
  }
  row_start_[nr] = constants_.size();

  // Bracket table on basis vectors.
  const std::size_t d = dim();
  const int n = rank();
  brackets_.assign(d * d, Element(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Element& out = brackets_[i * d + j];
      if (is_torus(i) && is_torus(j)) continue;
      if (is_torus(i) || is_torus(j)) {
        const bool flip = is_torus(j);
        const std::size_t h = flip ? j : i;
        const std::size_t x = flip ? i : j;
        const int v = rs.pairing_simple(rs.root(root_of(x)).coords, static_cast<int>(h));
        if (v != 0) out = Element::basis(d, x, flip ? -v : v);
        continue;
      }
      const std::size_t a = root_of(i), b = root_of(j);
      if (rs.negative_of(a) == b) {
        std::vector<std::int64_t> h(d, 0);
        for (int k = 0; k < n; ++k) h[k] = coroots_[a][k];
        out = Element::from_dense(h);
        continue;
      }
      const int c = structure_constant(a, b);
      if (c != 0) {
        const auto s = sum_root(rs, a, b);
        out = Element::basis(d, root_index(*s), c);
      }
    }
  }
}

void ChevalleyAlgebra::check_string_lengths() const {
  const std::size_t nr = rs_.num_roots();
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      const bool root_sum = sum_root(rs_, a, b).has_value();
      const int c = structure_constant(a, b);
      if (root_sum != (c != 0))
        throw InternalError("structure constant support mismatch at " + basis_name(root_index(a)) + ", " +
                            basis_name(root_index(b)));
      if (root_sum && std::abs(c) != rs_.root_string_m(a, b) + 1)
        throw InternalError("|N| != m+1 at " + basis_name(root_index(a)) + ", " + basis_name(root_index(b)));
    }
}

ChevalleyAlgebra ChevalleyAlgebra::from_constants(
    RootSystem rs, RootOrder order, const std::vector<std::tuple<std::size_t, std::size_t, int>>& table) {
  const std::size_t nr = rs.num_roots();
  std::vector<int> dense(nr * nr, 0);
  for (const auto& [a, b, n] : table) {
    if (a >= nr || b >= nr) throw ConstructionError("structure constant table refers to a missing root");
    if (n == 0) throw ConstructionError("structure constant table contains a zero entry");
    dense[a * nr + b] = n;
  }
  ChevalleyAlgebra alg(std::move(rs), order, std::move(dense));
  try {
    alg.check_string_lengths();
  } catch (const InternalError& e) {
    throw ConstructionError(std::string("invalid structure constant table: ") + e.what());
  }
  return alg;
}

std::string ChevalleyAlgebra::basis_name(std::size_t basis) const {
  if (basis >= dim()) throw DomainError("basis index out of range");
  if (is_torus(basis)) return "H" + std::to_string(basis + 1);
  return "X[" + format_root(rs_.root(root_of(basis)).coords) + "]";
}

int ChevalleyAlgebra::structure_constant(std::size_t a, std::size_t b) const {
  if (a >= rs_.num_roots() || b >= rs_.num_roots()) throw DomainError("root index out of range");
  auto first = constants_.begin() + static_cast<std::ptrdiff_t>(row_start_[a]);
  auto last = constants_.begin() + static_cast<std::ptrdiff_t>(row_start_[a + 1]);
  auto it = std::lower_bound(first, last, b, [](const ConstantEntry& e, std::size_t v) { return e.b < v; });
  return (it != last && it->b == b) ? it->n : 0;
}

std::map<int, std::size_t> ChevalleyAlgebra::abs_constant_counts() const {
  std::map<int, std::size_t> out;
  for (const auto& e : constants_) ++out[std::abs(e.n)];
  return out;
}

std::vector<std::tuple<std::size_t, std::size_t, int>> ChevalleyAlgebra::constants() const {
  std::vector<std::tuple<std::size_t, std::size_t, int>> out;
  out.reserve(constants_.size());
  for (const auto& e : constants_) out.emplace_back(e.a, e.b, e.n);
  return out;
}

const Element& ChevalleyAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  if (i >= dim() || j >= dim()) throw DimensionMismatch("basis index out of range");
  return brackets_[i * dim() + j];
}

Element ChevalleyAlgebra::bracket(const Element& x, const Element& y) const {
  const std::size_t d = dim();
  if (x.dim() != d || y.dim() != d)
    throw DimensionMismatch("bracket: expected coordinate length " + std::to_string(d));
  std::vector<std::int64_t> acc(d, 0);
  for (const auto& [i, u] : x.terms())
    for (const auto& [j, v] : y.terms())
      for (const auto& [k, w] : brackets_[i * d + j].terms()) acc[k] += u * v * w;
  return Element::from_dense(acc);
}

// ---------------------------------------------------------------------------
// Killing form

Matrix<long long> killing_matrix(const ChevalleyAlgebra& alg) {
  const std::size_t d = alg.dim();
  Matrix<long long> out(d, d, 0);
  // ad_i[l][k] = coefficient of b_l in [b_i, b_k].
  std::vector<long long> ad_i(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    std::fill(ad_i.begin(), ad_i.end(), 0);
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [l, v] : alg.bracket_basis(i, k).terms()) ad_i[l * d + k] = v;
    for (std::size_t j = i; j < d; ++j) {
      // Tr(ad_i ad_j) = sum_l sum_{(k, v) in [b_j, b_l]} v * ad_i[l][k].
      long long tr = 0;
      for (std::size_t l = 0; l < d; ++l)
        for (const auto& [k, v] : alg.bracket_basis(j, l).terms()) tr += v * ad_i[l * d + k];
      out(i, j) = tr;
      out(j, i) = tr;
    }
  }
  return out;
}

IntegerForm killing_gram(const ChevalleyAlgebra& alg) { return IntegerForm::from_ints(killing_matrix(alg)); }

Matrix<long long> normalized_matrix(const ChevalleyAlgebra& alg) {
  Matrix<long long> k = killing_matrix(alg);
  const long long scale = 2LL * alg.root_system().numbers().h_dual;
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) {
      if (k(i, j) % scale != 0)
        throw InternalError("Killing form entry (" + alg.basis_name(i) + ", " + alg.basis_name(j) +
                            ") is not divisible by 2h^vee");
      k(i, j) /= scale;
    }
  return k;
}

IntegerForm normalized_gram(const ChevalleyAlgebra& alg) { return IntegerForm::from_ints(normalized_matrix(alg)); }

// ---------------------------------------------------------------------------
// Verification

namespace {

class JacobiChecker {
 public:
  explicit JacobiChecker(const ChevalleyAlgebra& alg) : alg_(alg), acc_(alg.dim(), 0) {}

  // Returns true when the Jacobi sum vanishes.
  bool check(std::size_t x, std::size_t y, std::size_t z) {
    add(x, y, z);
    add(y, z, x);
    add(z, x, y);
    bool zero = true;
    for (std::size_t k : touched_) {
      if (acc_[k] != 0) zero = false;
      acc_[k] = 0;
    }
    touched_.clear();
    return zero;
  }

 private:
  // acc += [x, [y, z]]
  void add(std::size_t x, std::size_t y, std::size_t z) {
    for (const auto& [k, v] : alg_.bracket_basis(y, z).terms())
      for (const auto& [l, w] : alg_.bracket_basis(x, k).terms()) {
        acc_[l] += v * w;
        touched_.push_back(l);
      }
  }

  const ChevalleyAlgebra& alg_;
  std::vector<std::int64_t> acc_;
  std::vector<std::size_t> touched_;
};

}  // namespace

VerificationReport verify_algebra(const ChevalleyAlgebra& alg, VerifyMode mode) {
  VerificationReport report;
  report.mode = mode;
  const std::size_t d = alg.dim();
  auto violation = [&](const std::string& what) {
    if (report.ok) report.first_violation = what;
    report.ok = false;
  };

  for (std::size_t i = 0; i < d && report.ok; ++i)
    for (std::size_t j = i; j < d; ++j) {
      ++report.pairs_checked;
      if (!(alg.bracket_basis(i, j) == alg.bracket_basis(j, i) * -1)) {
        violation("antisymmetry fails for (" + alg.basis_name(i) + ", " + alg.basis_name(j) + ")");
        break;
      }
    }
  if (!report.ok) return report;

  JacobiChecker jacobi(alg);
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    ++report.triples_checked;
    if (!jacobi.check(i, j, k))
      violation("Jacobi identity fails for (" + alg.basis_name(i) + ", " + alg.basis_name(j) + ", " +
                alg.basis_name(k) + ")");
    return report.ok;
  };

  if (mode == VerifyMode::Full) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k)
          if (!check(i, j, k)) return report;
    return report;
  }

  const RootSystem& rs = alg.root_system();
  std::vector<char> special(d, 0);
  for (int i = 0; i < rs.rank(); ++i) {
    special[alg.torus_index(i)] = 1;
    special[alg.root_index(rs.simple_root(i))] = 1;
    special[alg.root_index(rs.negative_of(rs.simple_root(i)))] = 1;
  }
  special[alg.root_index(rs.highest_root())] = 1;
  special[alg.root_index(rs.negative_of(rs.highest_root()))] = 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k)
        if ((special[i] || special[j] || special[k]) && !check(i, j, k)) return report;

  if (d >= 3) {
    std::mt19937_64 gen(0x5eed'c4e7);
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    for (int n = 0; n < 20000; ++n) {
      std::size_t t[3] = {pick(gen), pick(gen), pick(gen)};
      std::sort(t, t + 3);
      if (t[0] == t[1] || t[1] == t[2]) continue;
      if (!check(t[0], t[1], t[2])) return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cache

void save_constants(const ChevalleyAlgebra& alg, std::ostream& out) {
  nlohmann::json doc;
  doc["format"] = "lielat.structure-constants";
  doc["version"] = kCacheFormatVersion;
  doc["convention"] = kSignConventionVersion;
  doc["type"] = alg.root_system().type().name();
  doc["root_order"] = to_string(alg.order());
  nlohmann::json table = nlohmann::json::array();
  for (const auto& [a, b, n] : alg.constants()) table.push_back({a, b, n});
  doc["constants"] = std::move(table);
  out << doc.dump() << '\n';
}

ChevalleyAlgebra load_constants(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(std::string("unreadable structure constant cache: ") + e.what());
  }
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) throw ConstructionError("structure constant cache: " + what);
  };
  try {
    require(doc.value("format", "") == "lielat.structure-constants", "wrong format tag");
    require(doc.value("version", 0) == kCacheFormatVersion, "unsupported version");
    require(doc.value("convention", 0) == kSignConventionVersion, "unsupported sign convention");
    const std::string order_name = doc.at("root_order").get<std::string>();
    require(order_name == "height-lex" || order_name == "height-colex", "unknown root order");
    const RootOrder order = order_name == "height-lex" ? RootOrder::HeightLex : RootOrder::HeightColex;
    RootSystem rs(LieType::parse(doc.at("type").get<std::string>()));
    std::vector<std::tuple<std::size_t, std::size_t, int>> table;
    for (const auto& row : doc.at("constants")) {
      require(row.is_array() && row.size() == 3, "malformed constant entry");
      table.emplace_back(row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<int>());
    }
    ChevalleyAlgebra alg = ChevalleyAlgebra::from_constants(std::move(rs), order, table);
    const VerificationReport report = verify_algebra(alg, VerifyMode::Fast);
    require(report.ok, "fast verification failed: " + report.first_violation.value_or(""));
    return alg;
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(std::string("malformed structure constant cache: ") + e.what());
  }
}

}  // namespace lielat
