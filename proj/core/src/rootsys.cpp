#include "lielat/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <utility>

#include "lielat/errors.hpp"

namespace lielat {

void LieType::validate() const {
  const std::string n = std::string(1, static_cast<char>(family));
  auto fail = [&](const std::string& bound) {
    throw ConstructionError("invalid rank " + std::to_string(rank) + " for type " + n + ": " + bound);
  };
  switch (family) {
    case Family::A: if (rank < 1) fail("A requires rank >= 1"); break;
    case Family::B: if (rank < 2) fail("B requires rank >= 2"); break;
    case Family::C: if (rank < 2) fail("C requires rank >= 2"); break;
    case Family::D: if (rank < 3) fail("D requires rank >= 3"); break;
    case Family::E: if (rank < 6 || rank > 8) fail("E requires rank in {6,7,8}"); break;
    case Family::F: if (rank != 4) fail("F requires rank 4"); break;
    case Family::G: if (rank != 2) fail("G requires rank 2"); break;
    default: throw ConstructionError("unknown family");
  }
}

std::string LieType::name() const {
  return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

LieType LieType::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.size() < 2) throw ConstructionError("cannot parse Lie type '" + std::string(text) + "'");
  const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (std::string_view("ABCDEFG").find(f) == std::string_view::npos)
    throw ConstructionError("unknown family in Lie type '" + std::string(text) + "'");
  const std::string digits = s.substr(1);
  if (digits.size() > 4 || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw ConstructionError("cannot parse rank in Lie type '" + std::string(text) + "'");
  LieType t{static_cast<Family>(f), std::stoi(digits)};
  t.validate();
  return t;
}

namespace {

// Symmetric form on simple roots; short roots have (a, a) = 2.
Matrix<int> make_root_form(const LieType& t) {
  const int n = t.rank;
  Matrix<int> s(n, n, 0);
  auto edge = [&](int i, int j, int v) { s(i, j) = v; s(j, i) = v; };
  switch (t.family) {
    case Family::A:
      for (int i = 0; i < n; ++i) s(i, i) = 2;
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -1);
      break;
    case Family::B:
      for (int i = 0; i < n; ++i) s(i, i) = (i + 1 < n) ? 4 : 2;
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -2);
      break;
    case Family::C:
      for (int i = 0; i < n; ++i) s(i, i) = (i + 1 < n) ? 2 : 4;
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, -1);
      edge(n - 2, n - 1, -2);
      break;
    case Family::D:
      for (int i = 0; i < n; ++i) s(i, i) = 2;
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, -1);
      edge(n - 3, n - 1, -1);
      break;
    case Family::E:
      for (int i = 0; i < n; ++i) s(i, i) = 2;
      if (n == 8) {
        for (int i = 0; i + 1 < 7; ++i) edge(i, i + 1, -1);
        edge(4, 7, -1);
      } else {
        // Bourbaki: a1-a3-a4-...-an, a2-a4.
        edge(0, 2, -1);
        for (int i = 2; i + 1 < n; ++i) edge(i, i + 1, -1);
        edge(1, 3, -1);
      }
      break;
    case Family::F:
      s(0, 0) = 4; s(1, 1) = 4; s(2, 2) = 2; s(3, 3) = 2;
      edge(0, 1, -2); edge(1, 2, -2); edge(2, 3, -1);
      break;
    case Family::G:
      s(0, 0) = 6; s(1, 1) = 2;
      edge(0, 1, -3);
      break;
  }
  return s;
}

}  // namespace

long long small_determinant(const Matrix<int>& m) {
  const std::size_t n = m.rows();
  Matrix<long long> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) { a.swap_rows(piv, k); sign = -sign; }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * (n == 0 ? 1 : a(n - 1, n - 1));
}

std::string format_root(const Coords& coords) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const int c = coords[i];
    if (c == 0) continue;
    if (c < 0) out << '-';
    else if (!first) out << '+';
    if (std::abs(c) != 1) out << std::abs(c);
    out << 'a' << (i + 1);
    first = false;
  }
  return first ? "0" : out.str();
}

RootSystem::RootSystem(LieType type) : type_(type) {
  type_.validate();
  const int n = rank();
  root_form_ = make_root_form(type_);
  cartan_ = Matrix<int>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cartan_(i, j) = 2 * root_form_(i, j) / root_form_(i, i);

  int short_len = root_form_(0, 0), long_len = root_form_(0, 0);
  for (int i = 0; i < n; ++i) {
    short_len = std::min(short_len, root_form_(i, i));
    long_len = std::max(long_len, root_form_(i, i));
  }
  const int c = long_len / short_len;
  coroot_gram_ = Matrix<int>(n, n);
  // (a_i^v, a_j^v) = 4 (a_i, a_j) / ((a_i, a_i)(a_j, a_j)), rescaled so long
  // roots have coroots of norm 2.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      coroot_gram_(i, j) = 2 * long_len * root_form_(i, j) / (root_form_(i, i) * root_form_(j, j));
  numbers_.c = c;

  generate_roots();
  compute_numbers();
}

void RootSystem::generate_roots() {
  const int n = rank();
  std::vector<Coords> positive;
  std::unordered_map<Coords, int, CoordsHash> seen;
  std::vector<Coords> level;
  for (int i = 0; i < n; ++i) {
    Coords e(n, 0);
    e[i] = 1;
    level.push_back(e);
    seen.emplace(e, 1);
  }
  while (!level.empty()) {
    std::vector<Coords> next;
    for (const Coords& beta : level) {
      positive.push_back(beta);
      for (int i = 0; i < n; ++i) {
        // p = length of the alpha_i-string below beta.
        int p = 0;
        Coords down = beta;
        while (true) {
          down[i] -= 1;
          if (!seen.count(down)) break;
          ++p;
        }
        const int q = p - pairing_simple(beta, i);
        if (q > 0) {
          Coords up = beta;
          up[i] += 1;
          if (seen.emplace(up, 1).second) next.push_back(std::move(up));
        }
      }
    }
    level = std::move(next);
  }

  auto height = [](const Coords& c) { return std::accumulate(c.begin(), c.end(), 0); };
  std::sort(positive.begin(), positive.end(), [&](const Coords& a, const Coords& b) {
    const int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });

  int long_len = 0;
  for (int i = 0; i < n; ++i) long_len = std::max(long_len, root_form_(i, i));

  roots_.clear();
  roots_.reserve(2 * positive.size());
  for (const Coords& c : positive) roots_.push_back(Root{c, height(c), inner(c, c) == long_len});
  for (const Coords& c : positive) {
    Coords neg(c.size());
    std::transform(c.begin(), c.end(), neg.begin(), [](int v) { return -v; });
    roots_.push_back(Root{neg, -height(c), inner(c, c) == long_len});
  }
  index_.clear();
  for (std::size_t k = 0; k < roots_.size(); ++k) index_.emplace(roots_[k].coords, k);
  highest_ = positive.size() - 1;
  // The highest root is the unique root of maximal height.
  if (positive.size() >= 2 && height(positive[positive.size() - 2]) == height(positive.back()))
    throw InternalError("highest root is not unique in " + type_.name());
}

void RootSystem::compute_numbers() {
  const Coords& m = marks();
  int h = 1;
  for (int v : m) h += v;
  int long_sum = 0, short_sum = 0;
  for (int i = 0; i < rank(); ++i) {
    if (coroot_gram_(i, i) == 2) long_sum += m[i];
    else short_sum += m[i];
  }
  const int c = numbers_.c;
  if (short_sum % c != 0) throw InternalError("dual Coxeter number is not integral");
  numbers_.h = h;
  numbers_.h_dual = 1 + long_sum + short_sum / c;
  center_order_ = static_cast<int>(std::llabs(small_determinant(cartan_)));
}

const Root& RootSystem::root(std::size_t index) const {
  if (index >= roots_.size()) throw DomainError("root index out of range");
  return roots_[index];
}

std::optional<std::size_t> RootSystem::index_of(const Coords& coords) const {
  auto it = index_.find(coords);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::negative_of(std::size_t index) const {
  const std::size_t np = num_positive();
  if (index >= roots_.size()) throw DomainError("root index out of range");
  return index < np ? index + np : index - np;
}

std::size_t RootSystem::simple_root(int i) const {
  if (i < 0 || i >= rank()) throw DomainError("simple root index out of range");
  return static_cast<std::size_t>(i);  // height-1 roots sort as a_1, ..., a_n
}

bool RootSystem::is_simple(std::size_t index) const {
  return index < roots_.size() && roots_[index].height == 1;
}

int RootSystem::inner(const Coords& x, const Coords& y) const {
  int s = 0;
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      if (y[j] != 0) s += x[i] * y[j] * root_form_(i, j);
  }
  return s;
}

int RootSystem::pairing(const Coords& x, const Coords& gamma) const {
  return 2 * inner(x, gamma) / inner(gamma, gamma);
}

int RootSystem::pairing_simple(const Coords& x, int i) const {
  int s = 0;
  for (int j = 0; j < rank(); ++j) s += x[j] * cartan_(i, j);
  return s;
}

int RootSystem::root_string_m(const Coords& alpha, const Coords& beta) const {
  if (!index_of(alpha) || !index_of(beta)) throw DomainError("root_string_m: argument is not a root");
  int m = 0;
  Coords cur = beta;
  while (true) {
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= alpha[i];
    if (!index_of(cur)) break;
    ++m;
  }
  return m;
}

int RootSystem::root_string_m(std::size_t alpha, std::size_t beta) const {
  return root_string_m(root(alpha).coords, root(beta).coords);
}

Coords RootSystem::coroot_coords(const Coords& beta) const {
  if (!index_of(beta)) throw DomainError("coroot_coords: argument is not a root");
  // beta^vee = sum_j n_j (a_j, a_j) / (beta, beta) a_j^vee.
  const int bb = inner(beta, beta);
  Coords out(rank());
  for (int j = 0; j < rank(); ++j) {
    const int num = beta[j] * root_form_(j, j);
    if (num % bb != 0) throw InternalError("non-integral coroot coordinates");
    out[j] = num / bb;
  }
  return out;
}

Coords RootSystem::coroot_coords(std::size_t beta) const { return coroot_coords(root(beta).coords); }

}  // namespace lielat
