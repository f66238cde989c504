#include "lielat/reference.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "lielat/chevalley.hpp"
#include "lielat/intform.hpp"
#include "lielat/parahoric.hpp"
#include "lielat/replabel.hpp"
#include "lielat/report.hpp"
#include "lielat/rootsys.hpp"

namespace lielat {

bool ReferenceRun::ok() const { return count(CheckStatus::Fail) == 0; }

std::size_t ReferenceRun::count(CheckStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const CheckResult& r) { return r.status == status; }));
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Info: return "info";
  }
  return "?";
}

std::string to_string(Tier tier) { return tier == Tier::Fast ? "fast" : "slow"; }

namespace {

struct Recorder {
  std::vector<CheckResult>& out;
  int group = 0;

  void check(bool ok, std::string name, std::string detail = {}) {
    out.push_back({group, std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)});
  }
  void info(std::string name, std::string detail) {
    out.push_back({group, std::move(name), CheckStatus::Info, std::move(detail)});
  }
  // Runs f and records a failure instead of propagating exceptions.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(false, name, std::string("exception: ") + e.what());
    }
  }
};

std::string join(const std::vector<std::size_t>& v, char sep) {
  std::string s;
  for (std::size_t x : v) {
    if (!s.empty()) s += sep;
    s += std::to_string(x);
  }
  return s;
}

FactoredInteger fi(const char* s) { return FactoredInteger::parse(s); }

FactoredInteger pow2(int e) {
  FactoredInteger f;
  f.multiply_prime_power(2, e);
  return f;
}

FactoredInteger torus_discriminant(const RootSystem& rs) {
  const auto& g = rs.coroot_gram();
  Matrix<long long> m(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) m(i, j) = g(i, j);
  return determinant(IntegerForm::from_ints(m))->abs();
}

const std::vector<std::string>& table_types() {
  static const std::vector<std::string> t = {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3",
                                             "B4", "C2", "C3", "C4", "D4", "D5", "D6", "D7", "D8", "G2",
                                             "F4", "E6", "E7", "E8"};
  return t;
}

// The (h, c, h-dual) table.
CoxeterNumbers expected_numbers(const LieType& t) {
  const int n = t.rank;
  switch (t.family) {
    case Family::A: return {n + 1, 1, n + 1};
    case Family::B: return {2 * n, 2, 2 * n - 1};
    case Family::C: return {2 * n, 2, n + 1};
    case Family::D: return {2 * n - 2, 1, 2 * n - 2};
    case Family::G: return {6, 3, 4};
    case Family::F: return {12, 2, 9};
    case Family::E: return n == 6 ? CoxeterNumbers{12, 1, 12} : n == 7 ? CoxeterNumbers{18, 1, 18} : CoxeterNumbers{30, 1, 30};
  }
  return {};
}

void group1(std::vector<CheckResult>& out) {
  Recorder r{out, 1};
  for (const auto& name : table_types()) {
    r.guarded("numbers " + name, [&] {
      const RootSystem rs(LieType::parse(name));
      const CoxeterNumbers got = rs.numbers(), want = expected_numbers(rs.type());
      std::ostringstream d;
      d << "(h, c, h^v) = (" << got.h << ", " << got.c << ", " << got.h_dual << ")";
      if (!(got == want)) d << ", expected (" << want.h << ", " << want.c << ", " << want.h_dual << ")";
      r.check(got == want, "numbers " + name, d.str());
    });
  }
}

void group2(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs) {
  Recorder r{out, 2};
  for (const auto& name : table_types()) {
    r.guarded("killing law " + name, [&] {
      const ChevalleyAlgebra& alg = *algs.at(name);
      const RootSystem& rs = alg.root_system();
      const long long two_hv = 2LL * rs.numbers().h_dual;
      const Matrix<long long> k = killing_matrix(alg);
      const Matrix<long long> n = normalized_matrix(alg);
      bool prop = true;
      for (std::size_t i = 0; i < alg.dim() && prop; ++i)
        for (std::size_t j = 0; j < alg.dim(); ++j)
          if (k(i, j) != two_hv * n(i, j)) {
            prop = false;
            break;
          }
      bool diag = true;
      for (int i = 0; i < rs.rank(); ++i)
        if (rs.root(rs.simple_root(i)).is_long && k(i, i) != 2 * two_hv) diag = false;
      r.check(prop && diag, "killing law " + name,
              "K = " + std::to_string(two_hv) + " <,>, K(H,H) = " + std::to_string(2 * two_hv) + " on long simple coroots");
    });
  }
}

void group3(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs) {
  Recorder r{out, 3};
  struct Row {
    const char* type;
    const char* on_g;
    const char* on_t;
  };
  const Row rows[] = {{"A1", "2", "2"},     {"A2", "3", "3"},     {"A3", "2^2", "2^2"}, {"A4", "5", "5"},
                      {"A5", "2*3", "2*3"}, {"A6", "7", "7"},     {"A7", "2^3", "2^3"}, {"A8", "3^2", "3^2"},
                      {"D4", "2^2", "2^2"}, {"D5", "2^2", "2^2"}, {"D6", "2^2", "2^2"}, {"D7", "2^2", "2^2"},
                      {"D8", "2^2", "2^2"}, {"G2", "3^7", "3"},   {"F4", "2^26", "2^2"}, {"E6", "3", "3"},
                      {"E7", "2", "2"},     {"E8", "1", "1"}};
  for (const Row& row : rows) {
    r.guarded(std::string("discriminant ") + row.type, [&] {
      const ChevalleyAlgebra& alg = *algs.at(row.type);
      const FactoredInteger g = ParahoricCalculator(alg).standard_discriminant();
      const FactoredInteger t = torus_discriminant(alg.root_system());
      r.check(g == fi(row.on_g) && t == fi(row.on_t), std::string("discriminant ") + row.type,
              "g: " + g.to_string() + " (table " + row.on_g + "), t: " + t.to_string() + " (table " + row.on_t + ")");
    });
  }

  // B_n and C_n: the torus column agrees with the table; the g column of the
  // table does not match a direct computation, so only report it.
  for (const auto& name : {"B2", "B3", "B4", "C2", "C3", "C4"}) {
    r.guarded(std::string("discriminant ") + name, [&] {
      const ChevalleyAlgebra& alg = *algs.at(name);
      const LieType t = alg.root_system().type();
      const int n = t.rank;
      const bool is_b = t.family == Family::B;
      const FactoredInteger g = ParahoricCalculator(alg).standard_discriminant();
      const FactoredInteger tor = torus_discriminant(alg.root_system());
      const FactoredInteger want_t = is_b ? pow2(2) : pow2(n);
      r.check(tor == want_t, std::string("torus discriminant ") + name,
              "t: " + tor.to_string() + " (table " + want_t.to_string() + ")");
      const FactoredInteger derived = is_b ? pow2(2 * n + 2) : pow2(2 * n * n - n);
      const FactoredInteger table = is_b ? pow2(n + 2) : pow2(n * n);
      r.check(g == derived, std::string("discriminant ") + name + " from first principles",
              "g: " + g.to_string() + " (expected " + derived.to_string() + ")");
      r.info(std::string("informational: paper-table mismatch candidate ") + name,
             "computed " + g.to_string() + ", table row " + table.to_string() +
                 (g == table ? " (agree)" : " (differ)"));
    });
  }
}

void group4(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs, Tier tier) {
  Recorder r{out, 4};
  for (const auto& name : {"A1", "A2", "A3", "G2", "F4", "D4", "E6", "E7", "E8"}) {
    const bool big = name[0] == 'E';
    const VerifyMode mode = big && tier == Tier::Fast ? VerifyMode::Fast : VerifyMode::Full;
    const std::string label = std::string("jacobi ") + name + " (" + to_string(mode) + ")";
    r.guarded(label, [&] {
      const VerificationReport rep = verify_algebra(*algs.at(name), mode);
      r.check(rep.ok, label,
              rep.ok ? std::to_string(rep.triples_checked) + " triples, " + std::to_string(rep.pairs_checked) + " pairs"
                     : *rep.first_violation);
    });
  }
}

struct SweepRow {
  const char* components;
  std::size_t dim_r;
  std::vector<std::vector<std::size_t>> factors;
};

void group5(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs) {
  Recorder r{out, 5};
  // Indexed by node: affine, alpha_1 .. alpha_8.
  const std::vector<SweepRow> rows = {
      {"E8", 0, {}},
      {"A1+E7", 112, {{2, 56}}},
      {"A2+E6", 162, {{3, 27}, {3, 27}}},
      {"A3+D5", 188, {{4, 16}, {6, 10}, {4, 16}}},
      {"A4+A4", 200, {{5, 10}, {10, 5}, {10, 5}, {5, 10}}},
      {"A1+A2+A5", 202, {{2, 3, 6}, {1, 3, 15}, {2, 1, 20}, {1, 3, 15}, {2, 3, 6}}},
      {"A1+A7", 182, {{2, 28}, {1, 70}, {2, 28}}},
      {"D8", 128, {{128}}},
      {"A8", 168, {{84}, {84}}},
  };
  const ParahoricCalculator calc(*algs.at("E8"));
  for (int node = 0; node <= 8; ++node) {
    const RootSystem& rs = calc.algebra().root_system();
    const std::string label = "E8 " + node_description(rs, node);
    r.guarded(label, [&] {
      const ParahoricReport rep = make_report(calc, node, 2);
      const SweepRow& want = rows[static_cast<std::size_t>(node)];
      std::vector<std::vector<std::size_t>> factors;
      for (const auto& l : rep.layers) {
        std::vector<std::size_t> f;
        for (const auto& x : l.label->factors) f.push_back(x.dimension);
        factors.push_back(std::move(f));
      }
      const std::string comps = format_components(rep.reduced_components);
      std::string got = comps + ", dim R " + std::to_string(rep.dim_radical) + ", layers";
      for (const auto& f : factors) got += " (" + join(f, ',') + ")";
      r.check(comps == want.components && rep.dim_radical == want.dim_r && factors == want.factors, label, got);
    });
  }
}

void group6(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs) {
  Recorder r{out, 6};
  r.guarded("D4 central node", [&] {
    const ParahoricCalculator calc(*algs.at("D4"));
    const ParahoricReport rep = make_report(calc, 2, 2);
    const bool ok = format_components(rep.reduced_components) == "A1+A1+A1+A1" && rep.layers.size() == 1 &&
                    rep.layers[0].dim == 16 && format_factors(*rep.layers[0].label) == "2x2x2x2" && rep.dim_radical == 16;
    r.check(ok, "D4 central node",
            format_components(rep.reduced_components) + ", U1 " + format_factors(*rep.layers.at(0).label));
  });
  r.guarded("E6 mark-3 node", [&] {
    const ParahoricCalculator calc(*algs.at("E6"));
    const ParahoricReport rep = make_report(calc, 4, 2);
    bool ok = rep.mark == 3 && format_components(rep.reduced_components) == "A2+A2+A2" && rep.layers.size() == 2 &&
              rep.dim_radical == 54;
    std::string detail = format_components(rep.reduced_components);
    for (const auto& l : rep.layers) {
      ok = ok && l.dim == 27 && format_factors(*l.label) == "3x3x3";
      detail += ", U" + std::to_string(l.index) + " " + format_factors(*l.label);
    }
    r.check(ok, "E6 mark-3 node", detail + ", dim R " + std::to_string(rep.dim_radical));
  });
}

void group7(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs) {
  Recorder r{out, 7};
  const std::pair<const char*, std::uint64_t> cases[] = {{"G2", 2}, {"F4", 3}, {"E6", 2}, {"E7", 3}, {"E8", 2}};
  for (const auto& [name, p] : cases) {
    const ParahoricCalculator calc(*algs.at(name));
    const RootSystem& rs = calc.algebra().root_system();
    for (int node = 0; node <= rs.rank(); ++node) {
      const std::string label = std::string(name) + " " + node_description(rs, node) + " p=" + std::to_string(p);
      r.guarded(label, [&] {
        const auto prof = divisor_profile(calc.parahoric_divisors(node, p));
        const std::size_t dim_r = radical_dimension(rs, node);
        std::map<mpz_class, std::size_t> want;
        if (dim_r < rs.dim()) want[1] = rs.dim() - dim_r;
        if (dim_r > 0) want[mpz_class(static_cast<unsigned long>(p))] = dim_r;
        r.check(prof == want, label, "dim R " + std::to_string(dim_r) + " divisors equal to p");
      });
    }
  }
}

void group8(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs) {
  Recorder r{out, 8};
  struct Case {
    const char* type;
    std::uint64_t p;
    int node;
    const char* disc;
  };
  for (const Case& c : {Case{"E8", 2, 4, "2^200"}, Case{"F4", 3, 2, "2^26*3^36"}, Case{"G2", 2, 2, "2^6*3^7"}}) {
    const std::string label = std::string(c.type) + " a" + std::to_string(c.node) + " p=" + std::to_string(c.p);
    r.guarded(label, [&] {
      const ParahoricCalculator calc(*algs.at(c.type));
      const FactoredInteger d = calc.parahoric_discriminant(c.node, c.p);
      const std::vector<int> m = calc.matching_parahorics(c.p, fi(c.disc));
      r.check(d == fi(c.disc) && m == std::vector<int>{c.node}, label,
              "discriminant " + d.to_string() + ", matches " + std::to_string(m.size()) + " node(s)");
    });
  }
  r.guarded("G2 a2 index", [&] {
    // Index 2^3 in the Chevalley lattice: discriminant ratio 2^6.
    const ParahoricCalculator calc(*algs.at("G2"));
    FactoredInteger ratio = calc.parahoric_discriminant(2, 2);
    ratio.multiply_prime_power(3, -7);
    r.check(ratio == pow2(6), "G2 a2 index", "discriminant ratio " + ratio.to_string());
  });
  r.guarded("E8 2^248 unmatched", [&] {
    const ParahoricCalculator calc(*algs.at("E8"));
    const auto m = calc.matching_parahorics(2, pow2(248));
    r.check(m.empty(), "E8 2^248 unmatched", std::to_string(m.size()) + " node(s)");
  });
}

void group9(std::vector<CheckResult>& out, std::map<std::string, std::unique_ptr<ChevalleyAlgebra>>& algs) {
  Recorder r{out, 9};
  for (const auto& name : {"G2", "F4", "E6", "E7", "E8"}) {
    const ChevalleyAlgebra& alg = *algs.at(name);
    const RootSystem& rs = alg.root_system();
    r.guarded(std::string("closure ") + name, [&] {
      std::size_t lattices = 0;
      std::string bad;
      for (std::uint64_t p : {2, 3, 5}) {
        std::vector<ParahoricLattice> ls{iwahori_lattice(alg, p)};
        for (int node = 0; node <= rs.rank(); ++node) ls.push_back(parahoric_lattice(alg, node, p));
        for (int k = 1; k <= rs.rank(); ++k) ls.push_back(j_alpha_lattice(alg, k, p));
        for (const auto& l : ls) {
          ++lattices;
          const ClosureReport c = check_closure(alg, l);
          if (!c.closed && bad.empty()) bad = to_string(l.kind) + " node " + std::to_string(l.node) + ": " + *c.first_violation;
        }
      }
      r.check(bad.empty(), std::string("closure ") + name,
              bad.empty() ? std::to_string(lattices) + " lattices closed" : bad);
    });
    r.guarded(std::string("j-alpha ") + name, [&] {
      bool ok = true;
      for (int k = 1; k <= rs.rank(); ++k)
        ok = ok && j_alpha_lattice(alg, k, 2).valuations ==
                       valuation_max(standard_lattice(alg, 2).valuations, parahoric_lattice(alg, k, 2).valuations);
      r.check(ok, std::string("j-alpha ") + name, "J = max(standard, parahoric) for every node");
    });
    r.guarded(std::string("layers ") + name, [&] {
      bool ok = true;
      for (int node = 0; node <= rs.rank(); ++node) {
        const auto ls = layers(rs, node);
        const ReducedSubsystem red = reduced_subsystem(rs, node);
        std::size_t total = red.roots.size();
        for (std::size_t i = 0; i < ls.size(); ++i) {
          total += ls[i].dim();
          ok = ok && ls[i].dim() == ls[ls.size() - 1 - i].dim();
        }
        ok = ok && total == rs.num_roots();
      }
      r.check(ok, std::string("layers ") + name, "dim U_i = dim U_{n-i}; |Phi| = |Phi_a| + sum dim U_i");
    });
  }
}

}  // namespace

ReferenceRun run_reference_checks(Tier tier) {
  ReferenceRun run;
  run.tier = tier;
  std::map<std::string, std::unique_ptr<ChevalleyAlgebra>> algs;
  for (const auto& name : table_types()) algs[name] = std::make_unique<ChevalleyAlgebra>(RootSystem(LieType::parse(name)));

  group1(run.results);
  group2(run.results, algs);
  group3(run.results, algs);
  group4(run.results, algs, tier);
  group5(run.results, algs);
  group6(run.results, algs);
  group7(run.results, algs);
  group8(run.results, algs);
  group9(run.results, algs);
  return run;
}

}  // namespace lielat
