#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "lielat/errors.hpp"
#include "lielat/intform.hpp"
#include "lielat/rootsys.hpp"
#include "oracles.hpp"

using namespace lielat;

namespace {

std::vector<std::string> all_types() {
  std::vector<std::string> out;
  for (int n = 1; n <= 8; ++n) out.push_back("A" + std::to_string(n));
  for (int n = 2; n <= 8; ++n) out.push_back("B" + std::to_string(n));
  for (int n = 2; n <= 8; ++n) out.push_back("C" + std::to_string(n));
  for (int n = 3; n <= 8; ++n) out.push_back("D" + std::to_string(n));
  for (const char* t : {"E6", "E7", "E8", "F4", "G2"}) out.push_back(t);
  return out;
}

std::size_t expected_root_count(const LieType& t) {
  const std::size_t n = static_cast<std::size_t>(t.rank);
  switch (t.family) {
    case Family::A: return n * n + n;
    case Family::B:
    case Family::C: return 2 * n * n;
    case Family::D: return 2 * n * n - 2 * n;
    case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    case Family::F: return 48;
    case Family::G: return 12;
  }
  return 0;
}

long long det_of(const Matrix<int>& g) {
  std::vector<std::vector<mpz_class>> m(g.rows(), std::vector<mpz_class>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) m[i][j] = g(i, j);
  return oracle::cofactor_det(m).get_si();
}

}  // namespace

TEST(LieType, ParsesAndNames) {
  EXPECT_EQ(LieType::parse("E8").name(), "E8");
  EXPECT_EQ(LieType::parse(" b4 ").name(), "B4");
  EXPECT_EQ(LieType::parse("G2").family, Family::G);
}

TEST(LieType, RankBoundsAreEnforced) {
  for (const char* bad : {"A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "Z9", "", "E", "8"})
    EXPECT_THROW(LieType::parse(bad), ConstructionError) << bad;
  try {
    RootSystem rs(LieType{Family::D, 2});
    FAIL();
  } catch (const ConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("D"), std::string::npos);
  }
}

TEST(RootSystem, RootCountsForAllTypes) {
  for (const auto& name : all_types()) {
    const RootSystem rs(LieType::parse(name));
    EXPECT_EQ(rs.num_roots(), expected_root_count(rs.type())) << name;
    EXPECT_EQ(rs.dim(), rs.num_roots() + static_cast<std::size_t>(rs.rank())) << name;
  }
  EXPECT_EQ(RootSystem(LieType::parse("E8")).dim(), 248u);
  EXPECT_EQ(RootSystem(LieType::parse("G2")).dim(), 14u);
}

TEST(RootSystem, CartanMatchesDynkinDiagram) {
  for (const auto& name : all_types()) {
    const RootSystem rs(LieType::parse(name));
    const auto want = oracle::dynkin_cartan(name[0], rs.rank());
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) EXPECT_EQ(rs.cartan()(i, j), want[i][j]) << name << " " << i << "," << j;
  }
}

TEST(RootSystem, RootsEqualWeylOrbitOfSimpleRoots) {
  for (const auto& name : all_types()) {
    const RootSystem rs(LieType::parse(name));
    const auto want = oracle::weyl_orbit_roots(oracle::dynkin_cartan(name[0], rs.rank()));
    std::set<std::vector<int>> got;
    for (const Root& r : rs.roots()) got.insert(r.coords);
    EXPECT_EQ(got, want) << name;
  }
}

TEST(RootSystem, ClosureAndNegation) {
  for (const char* name : {"B3", "C4", "D5", "F4", "G2", "E7"}) {
    const RootSystem rs(LieType::parse(name));
    std::set<std::vector<int>> all;
    for (const Root& r : rs.roots()) all.insert(r.coords);
    for (const Root& a : rs.roots()) {
      Coords neg = a.coords;
      for (int& x : neg) x = -x;
      EXPECT_TRUE(all.count(neg));
      EXPECT_EQ(a.positive(), a.height > 0);
      int h = 0;
      for (int x : a.coords) h += x;
      EXPECT_EQ(h, a.height);
      EXPECT_NE(h, 0);
      for (const Root& b : rs.roots()) {
        Coords s = a.coords;
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += b.coords[k];
        if (all.count(s)) { EXPECT_TRUE(rs.index_of(s).has_value()); }
      }
    }
  }
}

TEST(RootSystem, PositiveRootsComeFirstWithSimpleRootsLeading) {
  const RootSystem rs(LieType::parse("F4"));
  for (int i = 0; i < rs.rank(); ++i) {
    const Root& r = rs.root(rs.simple_root(i));
    for (int k = 0; k < rs.rank(); ++k) EXPECT_EQ(r.coords[k], k == i ? 1 : 0);
    EXPECT_TRUE(rs.is_simple(rs.simple_root(i)));
  }
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    EXPECT_TRUE(rs.root(k).positive());
    EXPECT_EQ(rs.negative_of(k), k + rs.num_positive());
  }
}

TEST(RootSystem, NumbersTable) {
  struct Row {
    const char* t;
    int h, c, hv;
  };
  for (const Row& r : {Row{"A1", 2, 1, 2}, Row{"A5", 6, 1, 6}, Row{"B3", 6, 2, 5}, Row{"B4", 8, 2, 7},
                       Row{"C3", 6, 2, 4}, Row{"C4", 8, 2, 5}, Row{"D6", 10, 1, 10}, Row{"G2", 6, 3, 4},
                       Row{"F4", 12, 2, 9}, Row{"E6", 12, 1, 12}, Row{"E7", 18, 1, 18}, Row{"E8", 30, 1, 30}}) {
    const CoxeterNumbers n = numbers(RootSystem(LieType::parse(r.t)));
    EXPECT_EQ(n.h, r.h) << r.t;
    EXPECT_EQ(n.c, r.c) << r.t;
    EXPECT_EQ(n.h_dual, r.hv) << r.t;
  }
}

TEST(RootSystem, MarksDominateAndSumToCoxeterNumber) {
  for (const auto& name : all_types()) {
    const RootSystem rs(LieType::parse(name));
    int sum = 0;
    for (int m : rs.marks()) {
      EXPECT_GE(m, 1);
      sum += m;
    }
    EXPECT_EQ(rs.numbers().h, 1 + sum) << name;
    for (const Root& r : rs.roots())
      for (int k = 0; k < rs.rank(); ++k) EXPECT_LE(r.coords[k], rs.marks()[k]) << name;
    // h-dual from the marks, short simple roots weighted by 1/c.
    int long_sum = 0, short_sum = 0;
    for (int k = 0; k < rs.rank(); ++k) (rs.root(rs.simple_root(k)).is_long ? long_sum : short_sum) += rs.marks()[k];
    EXPECT_EQ(short_sum % rs.numbers().c, 0);
    EXPECT_EQ(rs.numbers().h_dual, 1 + long_sum + short_sum / rs.numbers().c) << name;
  }
}

TEST(RootSystem, MarksInDiagramOrder) {
  EXPECT_EQ(RootSystem(LieType::parse("E8")).marks(), (Coords{2, 3, 4, 5, 6, 4, 2, 3}));
  EXPECT_EQ(RootSystem(LieType::parse("G2")).marks(), (Coords{2, 3}));
  EXPECT_EQ(RootSystem(LieType::parse("F4")).marks(), (Coords{2, 3, 4, 2}));
  EXPECT_EQ(RootSystem(LieType::parse("A6")).marks(), Coords(6, 1));
  const RootSystem g2(LieType::parse("G2"));
  EXPECT_TRUE(g2.root(g2.simple_root(0)).is_long);
  EXPECT_FALSE(g2.root(g2.simple_root(1)).is_long);
}

TEST(RootSystem, G2MarksFromClosureOracle) {
  // Highest root = the orbit element with the largest height.
  const auto roots = oracle::weyl_orbit_roots(oracle::dynkin_cartan('G', 2));
  std::vector<int> best;
  int best_h = -100;
  for (const auto& r : roots)
    if (r[0] + r[1] > best_h) {
      best_h = r[0] + r[1];
      best = r;
    }
  EXPECT_EQ(RootSystem(LieType::parse("G2")).marks(), best);
}

TEST(RootSystem, CorootGram) {
  for (const auto& name : all_types()) {
    const RootSystem rs(LieType::parse(name));
    const auto& g = rs.coroot_gram();
    const int c = rs.numbers().c;
    for (int i = 0; i < rs.rank(); ++i) {
      EXPECT_EQ(g(i, i), rs.root(rs.simple_root(i)).is_long ? 2 : 2 * c) << name;
      EXPECT_EQ(g(i, i) % 2, 0);
      for (int j = 0; j < rs.rank(); ++j) EXPECT_EQ(g(i, j), g(j, i));
    }
    // Positive definite: leading principal minors.
    for (int k = 1; k <= rs.rank(); ++k) {
      Matrix<int> sub(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = g(i, j);
      EXPECT_GT(det_of(sub), 0) << name << " minor " << k;
    }
  }
}

TEST(RootSystem, CorootGramDeterminants) {
  struct Row {
    const char* t;
    long long det;
  };
  for (const Row& r : {Row{"A1", 2}, Row{"A4", 5}, Row{"A7", 8}, Row{"D4", 4}, Row{"D7", 4}, Row{"G2", 3},
                       Row{"F4", 4}, Row{"E6", 3}, Row{"E7", 2}, Row{"E8", 1}, Row{"B2", 4}, Row{"B5", 4},
                       Row{"C2", 4}, Row{"C3", 8}, Row{"C5", 32}})
    EXPECT_EQ(det_of(RootSystem(LieType::parse(r.t)).coroot_gram()), r.det) << r.t;
}

TEST(RootSystem, CenterOrder) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(RootSystem(LieType{Family::A, n}).center_order(), n + 1);
  for (int n = 4; n <= 8; ++n) EXPECT_EQ(RootSystem(LieType{Family::D, n}).center_order(), 4);
  EXPECT_EQ(RootSystem(LieType::parse("E6")).center_order(), 3);
  EXPECT_EQ(RootSystem(LieType::parse("E7")).center_order(), 2);
  for (const char* t : {"E8", "F4", "G2"}) EXPECT_EQ(RootSystem(LieType::parse(t)).center_order(), 1);
  for (const auto& name : all_types()) {
    const RootSystem rs(LieType::parse(name));
    EXPECT_EQ(rs.center_order(), std::llabs(small_determinant(rs.cartan())));
  }
}

TEST(RootSystem, RootStringLength) {
  const RootSystem a2(LieType::parse("A2"));
  EXPECT_EQ(a2.root_string_m(Coords{1, 0}, Coords{0, 1}), 0);
  EXPECT_EQ(a2.root_string_m(Coords{1, 0}, Coords{1, 0}), 0);

  const RootSystem g2(LieType::parse("G2"));
  int best = 0;
  for (const Root& a : g2.roots())
    for (const Root& b : g2.roots()) {
      const int m = g2.root_string_m(a.coords, b.coords);
      EXPECT_GE(m, 0);
      EXPECT_LE(m, 3);  // longest G2 string: a long root and three short steps
      // Definition check: b - m a is a root, b - (m+1) a is not.
      Coords x = b.coords, y = b.coords;
      for (int k = 0; k < 2; ++k) {
        x[k] -= m * a.coords[k];
        y[k] -= (m + 1) * a.coords[k];
      }
      EXPECT_TRUE(g2.index_of(x).has_value());
      EXPECT_FALSE(g2.index_of(y).has_value());
      if (!a.is_long && !b.is_long) best = std::max(best, m);
    }
  EXPECT_EQ(best, 2);

  EXPECT_THROW(g2.root_string_m(Coords{0, 0}, Coords{1, 0}), DomainError);
  EXPECT_THROW(g2.root_string_m(Coords{1, 0}, Coords{5, 5}), DomainError);
}

TEST(RootSystem, CorootCoordinates) {
  for (const auto& name : all_types()) {
    const RootSystem rs(LieType::parse(name));
    for (int i = 0; i < rs.rank(); ++i) {
      Coords e(static_cast<std::size_t>(rs.rank()), 0);
      e[i] = 1;
      EXPECT_EQ(rs.coroot_coords(rs.simple_root(i)), e);
    }
    for (std::size_t k = 0; k < rs.num_roots(); ++k) {
      const Coords& beta = rs.root(k).coords;
      const Coords cv = rs.coroot_coords(k);
      // beta(beta^vee) = sum_i cv_i beta(alpha_i^vee) = sum_i cv_i sum_j beta_j A(i, j).
      long long v = 0;
      for (int i = 0; i < rs.rank(); ++i)
        for (int j = 0; j < rs.rank(); ++j) v += static_cast<long long>(cv[i]) * beta[j] * rs.cartan()(i, j);
      EXPECT_EQ(v, 2) << name << " root " << k;
    }
  }
  const RootSystem e8(LieType::parse("E8"));
  EXPECT_EQ(e8.coroot_coords(e8.highest_root()), e8.marks());
  // G2 short alpha_2: the coroot is a long coroot, coordinates (0, 1); the
  // short root alpha_1 + alpha_2 has coroot 3 alpha_1^vee + alpha_2^vee.
  const RootSystem g2(LieType::parse("G2"));
  EXPECT_EQ(g2.coroot_coords(Coords{1, 1}), (Coords{3, 1}));
  EXPECT_EQ(g2.coroot_coords(Coords{2, 3}), (Coords{2, 1}));
  EXPECT_THROW(g2.coroot_coords(Coords{1, 2, 3}), DomainError);
  EXPECT_THROW(g2.coroot_coords(Coords{0, 2}), DomainError);
}

TEST(RootSystem, ConcurrentReadsAgree) {
  const RootSystem rs(LieType::parse("E8"));
  std::vector<long long> sums(4, 0);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      long long s = 0;
      for (std::size_t a = 0; a < rs.num_roots(); a += 3)
        for (std::size_t b = 0; b < rs.num_roots(); b += 5) s += rs.root_string_m(a, b) + rs.coroot_coords(b)[0];
      sums[t] = s;
    });
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(sums[t], sums[0]);
}

TEST(RootSystem, FormatRoot) {
  EXPECT_EQ(format_root(Coords{1, 2, 0}), "a1+2a2");
  EXPECT_EQ(format_root(Coords{-1, 0}), "-a1");
}
