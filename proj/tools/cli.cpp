#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "lielat/chevalley.hpp"
#include "lielat/errors.hpp"
#include "lielat/parahoric.hpp"
#include "lielat/reference.hpp"
#include "lielat/replabel.hpp"

namespace lielat::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON

json to_json(const FactoredInteger& f) {
  json factors = json::array();
  for (const auto& [p, e] : f.factors()) factors.push_back({p, e});
  return {{"text", f.to_string()}, {"sign", f.sign()}, {"factors", factors}};
}

FactoredInteger factored_from_json(const json& j) {
  FactoredInteger f;
  for (const auto& pe : j.at("factors")) f.multiply_prime_power(pe.at(0).get<std::uint64_t>(), pe.at(1).get<int>());
  if (j.at("sign").get<int>() < 0) f = f * FactoredInteger::parse("-1");
  return f;
}

json to_json(const ParahoricReport& r) {
  json layers = json::array();
  for (const auto& l : r.layers) {
    json jl = {{"index", l.index}, {"dim", l.dim}, {"orbit_sizes", l.orbit_sizes}};
    if (l.label) {
      json factors = json::array();
      for (const auto& f : l.label->factors)
        factors.push_back(
            {{"component", f.component.name()}, {"highest_weight", f.highest_weight}, {"dimension", f.dimension}});
      jl["factors"] = factors;
    }
    layers.push_back(std::move(jl));
  }
  json comps = json::array();
  for (const auto& c : r.reduced_components) comps.push_back(c.name());
  return {{"type", r.type.name()},
          {"node", r.node},
          {"node_name", r.node_name},
          {"mark", r.mark},
          {"prime", r.prime},
          {"hyperspecial", r.hyperspecial},
          {"reduced_components", comps},
          {"dim_reduced", r.dim_reduced},
          {"dim_radical", r.dim_radical},
          {"layers", layers},
          {"discriminant", to_json(r.discriminant)}};
}

ParahoricReport report_from_json(const json& j) {
  ParahoricReport r;
  r.type = LieType::parse(j.at("type").get<std::string>());
  r.node = j.at("node").get<int>();
  r.node_name = j.at("node_name").get<std::string>();
  r.mark = j.at("mark").get<int>();
  r.prime = j.at("prime").get<std::uint64_t>();
  r.hyperspecial = j.at("hyperspecial").get<bool>();
  for (const auto& c : j.at("reduced_components")) r.reduced_components.push_back(LieType::parse(c.get<std::string>()));
  r.dim_reduced = j.at("dim_reduced").get<std::size_t>();
  r.dim_radical = j.at("dim_radical").get<std::size_t>();
  for (const auto& jl : j.at("layers")) {
    LayerReport l;
    l.index = jl.at("index").get<int>();
    l.dim = jl.at("dim").get<std::size_t>();
    l.orbit_sizes = jl.at("orbit_sizes").get<std::vector<std::size_t>>();
    if (jl.contains("factors")) {
      LayerLabel label;
      label.index = l.index;
      label.orbit_sizes = l.orbit_sizes;
      for (const auto& jf : jl.at("factors")) {
        FactorLabel f;
        f.component = LieType::parse(jf.at("component").get<std::string>());
        f.highest_weight = jf.at("highest_weight").get<std::vector<int>>();
        f.dimension = jf.at("dimension").get<std::size_t>();
        label.factors.push_back(std::move(f));
      }
      l.label = std::move(label);
    }
    r.layers.push_back(std::move(l));
  }
  r.discriminant = factored_from_json(j.at("discriminant"));
  return r;
}

// ---------------------------------------------------------------------------
// Argument helpers

namespace {

LieType parse_type(const std::string& text) {
  try {
    return LieType::parse(text);
  } catch (const ConstructionError& e) {
    throw UsageError(e.what());
  }
}

std::uint64_t parse_prime(std::uint64_t p) {
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not a prime");
  return p;
}

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<int> parse_int(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return std::stoi(std::string(s));
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json document(const std::string& command, json request, json result) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"request", std::move(request)}, {"result", std::move(result)}};
}

std::string join_ints(const std::vector<int>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string join_sizes(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

FactoredInteger torus_det(const RootSystem& rs) {
  const auto& g = rs.coroot_gram();
  Matrix<long long> m(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) m(i, j) = g(i, j);
  return determinant(IntegerForm::from_ints(m))->abs();
}

void print_report(std::ostream& out, const ParahoricReport& r) {
  out << r.type.name() << ' ' << r.node_name << " (mark " << r.mark << "), p = " << r.prime
      << (r.hyperspecial ? ", hyperspecial" : "") << '\n';
  out << "  reduced type   " << format_components(r.reduced_components) << " (dim " << r.dim_reduced << ")\n";
  out << "  dim R          " << r.dim_radical << '\n';
  for (const auto& l : r.layers) {
    out << "  U" << l.index << "  dim " << std::setw(3) << l.dim << "  orbits " << join_sizes(l.orbit_sizes, "+");
    if (l.label) out << "  factors " << format_factors(*l.label);
    out << '\n';
  }
  out << "  discriminant   " << r.discriminant.to_string() << '\n';
}

std::string divisor_text(const std::map<mpz_class, std::size_t>& profile) {
  std::string s;
  for (const auto& [d, n] : profile) s += (s.empty() ? "" : ", ") + d.get_str() + " x" + std::to_string(n);
  return s;
}

json divisor_json(const std::map<mpz_class, std::size_t>& profile) {
  json a = json::array();
  for (const auto& [d, n] : profile) a.push_back({{"divisor", d.get_str()}, {"count", n}});
  return a;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_info(const std::string& type_text, bool machine, std::ostream& out) {
  const RootSystem rs(parse_type(type_text));
  const ChevalleyAlgebra alg(rs);
  const ParahoricCalculator calc(alg);
  const CoxeterNumbers nb = rs.numbers();
  const FactoredInteger det_g = calc.standard_discriminant(), det_t = torus_det(rs);
  if (machine) {
    emit(out, document("info", {{"type", type_text}},
                       {{"type", rs.type().name()},
                        {"rank", rs.rank()},
                        {"dim", rs.dim()},
                        {"roots", rs.num_roots()},
                        {"positive_roots", rs.num_positive()},
                        {"h", nb.h},
                        {"c", nb.c},
                        {"h_dual", nb.h_dual},
                        {"marks", rs.marks()},
                        {"center_order", rs.center_order()},
                        {"det_g", to_json(det_g)},
                        {"det_torus", to_json(det_t)}}));
    return kOk;
  }
  out << "type                " << rs.type().name() << '\n'
      << "rank                " << rs.rank() << '\n'
      << "dim                 " << rs.dim() << '\n'
      << "roots               " << rs.num_roots() << " (" << rs.num_positive() << " positive)\n"
      << "h, c, h^v           " << nb.h << ", " << nb.c << ", " << nb.h_dual << '\n'
      << "marks               " << join_ints(rs.marks()) << '\n'
      << "center order        " << rs.center_order() << '\n'
      << "det <,> on g        " << det_g.to_string() << '\n'
      << "det <,> on Lie(T)   " << det_t.to_string() << '\n';
  return kOk;
}

int cmd_roots(const std::string& type_text, bool all, bool machine, std::ostream& out) {
  const RootSystem rs(parse_type(type_text));
  const std::size_t n = all ? rs.num_roots() : rs.num_positive();
  if (machine) {
    json roots = json::array();
    for (std::size_t k = 0; k < n; ++k) {
      const Root& r = rs.root(k);
      roots.push_back({{"index", k}, {"coords", r.coords}, {"height", r.height}, {"long", r.is_long}});
    }
    emit(out, document("roots", {{"type", type_text}, {"all", all}}, {{"type", rs.type().name()}, {"roots", roots}}));
    return kOk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Root& r = rs.root(k);
    out << std::setw(4) << k << "  [" << join_ints(r.coords) << "]  ht " << std::setw(3) << r.height << "  "
        << (r.is_long ? "long " : "short") << "  " << format_root(r.coords) << '\n';
  }
  return kOk;
}

int cmd_algebra(const std::string& type_text, const std::string& verify, const std::string& cache,
                const std::string& order_text, bool machine, std::ostream& out, std::ostream& err) {
  const LieType type = parse_type(type_text);
  if (order_text != "height-lex" && order_text != "height-colex") throw UsageError("unknown root order " + order_text);
  const RootOrder order = order_text == "height-lex" ? RootOrder::HeightLex : RootOrder::HeightColex;

  std::optional<ChevalleyAlgebra> alg;
  std::string source = "constructed";
  if (!cache.empty()) {
    std::ifstream in(cache);
    if (in) {
      alg.emplace(load_constants(in));
      if (alg->root_system().type() != type || alg->order() != order)
        throw UsageError("cache " + cache + " holds " + alg->root_system().type().name() + " (" + to_string(alg->order()) +
                         "), not " + type.name() + " (" + order_text + ")");
      source = "cache";
    }
  }
  if (!alg) {
    alg.emplace(RootSystem(type), order);
    if (!cache.empty()) {
      std::ofstream o(cache);
      if (!o) throw UsageError("cannot write cache " + cache);
      save_constants(*alg, o);
      source = "constructed, cached";
    }
  }

  std::optional<VerificationReport> rep;
  if (!verify.empty()) rep = verify_algebra(*alg, verify == "full" ? VerifyMode::Full : VerifyMode::Fast);

  const auto counts = alg->abs_constant_counts();
  if (machine) {
    json abs = json::object();
    for (const auto& [v, n] : counts) abs[std::to_string(v)] = n;
    json result = {{"type", type.name()}, {"dim", alg->dim()}, {"root_order", to_string(order)},
                   {"source", source},    {"nonzero_constants", alg->num_constants()}, {"abs_constant_counts", abs}};
    if (rep)
      result["verification"] = {{"mode", to_string(rep->mode)},
                                {"ok", rep->ok},
                                {"pairs", rep->pairs_checked},
                                {"triples", rep->triples_checked},
                                {"first_violation", rep->first_violation ? json(*rep->first_violation) : json(nullptr)}};
    emit(out, document("algebra", {{"type", type_text}, {"verify", verify}, {"cache", cache}, {"root_order", order_text}},
                       result));
  } else {
    out << type.name() << ": dim " << alg->dim() << ", " << alg->num_constants() << " nonzero N (" << source << ", "
        << to_string(order) << ")\n  |N| counts:";
    for (const auto& [v, n] : counts) out << "  " << v << ": " << n;
    out << '\n';
    if (rep) {
      out << "  verification (" << to_string(rep->mode) << "): " << (rep->ok ? "ok" : "FAILED") << ", "
          << rep->pairs_checked << " pairs, " << rep->triples_checked << " triples\n";
      if (!rep->ok) err << "first violation: " << *rep->first_violation << '\n';
    }
  }
  return rep && !rep->ok ? kFailure : kOk;
}

int cmd_gram(const std::string& type_text, bool normalized, bool divisors, bool matrix, bool machine, std::ostream& out) {
  const ChevalleyAlgebra alg{RootSystem(parse_type(type_text))};
  const IntegerForm form = normalized ? normalized_gram(alg) : killing_gram(alg);
  const FactoredInteger det = *determinant(form);
  std::map<mpz_class, std::size_t> profile;
  if (divisors) profile = divisor_profile(elementary_divisors(form));
  const char* which = normalized ? "normalized" : "killing";

  if (machine) {
    json result = {{"type", alg.root_system().type().name()}, {"form", which}, {"dim", form.dim()}, {"det", to_json(det)}};
    if (divisors) result["divisors"] = divisor_json(profile);
    if (matrix) {
      json rows = json::array();
      for (std::size_t i = 0; i < form.dim(); ++i) {
        std::vector<long long> row;
        for (std::size_t j = 0; j < form.dim(); ++j) row.push_back(form.numerator()(i, j).get_si());
        rows.push_back(row);
      }
      result["matrix"] = rows;
    }
    emit(out, document("gram", {{"type", type_text}, {"normalized", normalized}, {"divisors", divisors}, {"matrix", matrix}},
                       result));
    return kOk;
  }
  out << alg.root_system().type().name() << ' ' << which << " form, dim " << form.dim() << '\n';
  out << "  det        " << det.to_string() << '\n';
  if (divisors) out << "  divisors   " << divisor_text(profile) << '\n';
  if (matrix)
    for (std::size_t i = 0; i < form.dim(); ++i) {
      for (std::size_t j = 0; j < form.dim(); ++j) out << (j ? " " : "  ") << form.numerator()(i, j).get_str();
      out << '\n';
    }
  return kOk;
}

int cmd_parahoric(const std::string& type_text, const std::string& selector, std::uint64_t prime, bool divisors,
                  bool machine, std::ostream& out) {
  const RootSystem rs(parse_type(type_text));
  const std::uint64_t p = parse_prime(prime);
  const std::vector<int> nodes = parse_node_selector(rs, selector);
  const ChevalleyAlgebra alg(rs);
  const ParahoricCalculator calc(alg);
  if (divisors && calc.standard_discriminant().exponent(p) != 0)
    throw UsageError("--divisors needs p not dividing det <,> = " + calc.standard_discriminant().to_string());

  std::vector<ParahoricReport> reports;
  std::vector<std::map<mpz_class, std::size_t>> profiles;
  for (int node : nodes) {
    reports.push_back(make_report(calc, node, p));
    if (divisors) profiles.push_back(divisor_profile(calc.parahoric_divisors(node, p)));
  }
  if (machine) {
    json arr = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      json j = to_json(reports[i]);
      if (divisors) j["divisors"] = divisor_json(profiles[i]);
      arr.push_back(std::move(j));
    }
    emit(out, document("parahoric", {{"type", type_text}, {"node", selector}, {"prime", p}, {"divisors", divisors}},
                       {{"reports", arr}}));
    return kOk;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out << '\n';
    print_report(out, reports[i]);
    if (divisors) out << "  divisors/Z_p   " << divisor_text(profiles[i]) << '\n';
  }
  return kOk;
}

int cmd_match(const std::string& type_text, std::uint64_t prime, const std::string& disc, bool machine, std::ostream& out) {
  const RootSystem rs(parse_type(type_text));
  const std::uint64_t p = parse_prime(prime);
  FactoredInteger candidate;
  try {
    candidate = FactoredInteger::parse(disc);
  } catch (const std::invalid_argument& e) {
    throw UsageError("cannot parse discriminant '" + disc + "': " + e.what());
  }
  const ChevalleyAlgebra alg(rs);
  const ParahoricCalculator calc(alg);
  std::vector<ParahoricReport> matches;
  for (int node : calc.matching_parahorics(p, candidate)) matches.push_back(make_report(calc, node, p));

  if (machine) {
    json arr = json::array();
    for (const auto& r : matches) arr.push_back(to_json(r));
    emit(out, document("match", {{"type", type_text}, {"prime", p}, {"disc", disc}},
                       {{"candidate", to_json(candidate)}, {"matches", arr}}));
    return kOk;
  }
  if (matches.empty()) {
    out << "no maximal parahoric of " << rs.type().name() << " at p = " << p << " has discriminant "
        << candidate.to_string() << '\n';
    return kOk;
  }
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (i) out << '\n';
    print_report(out, matches[i]);
  }
  return kOk;
}

int cmd_verify_paper(bool slow, bool machine, std::ostream& out) {
  const ReferenceRun run = run_reference_checks(slow ? Tier::Slow : Tier::Fast);
  if (machine) {
    json checks = json::array();
    for (const auto& c : run.results)
      checks.push_back({{"group", c.group}, {"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    emit(out, document("verify-paper", {{"tier", to_string(run.tier)}},
                       {{"ok", run.ok()},
                        {"passed", run.count(CheckStatus::Pass)},
                        {"failed", run.count(CheckStatus::Fail)},
                        {"informational", run.count(CheckStatus::Info)},
                        {"checks", checks}}));
  } else {
    for (const auto& c : run.results)
      out << '[' << c.group << "] " << std::left << std::setw(5) << to_string(c.status) << std::right << ' ' << c.name
          << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    out << run.count(CheckStatus::Pass) << " passed, " << run.count(CheckStatus::Fail) << " failed, "
        << run.count(CheckStatus::Info) << " informational (" << to_string(run.tier) << " tier)\n";
  }
  return run.ok() ? kOk : kFailure;
}

}  // namespace

std::vector<int> parse_node_selector(const RootSystem& rs, std::string_view text) {
  const std::string s = lower(text);
  const int r = rs.rank();
  auto in_range = [&](int k) {
    if (k < 0 || k > r)
      throw UsageError("node " + std::to_string(k) + " out of range 0.." + std::to_string(r) + " for " + rs.type().name());
    return k;
  };
  auto nodes_with_mark = [&](int m) {
    std::vector<int> out;
    for (int k = 0; k <= r; ++k)
      if (node_mark(rs, k) == m) out.push_back(k);
    if (out.empty()) throw UsageError("no node of " + rs.type().name() + " has mark " + std::to_string(m));
    return out;
  };
  auto named = [&](const std::string& t) -> std::optional<int> {
    if (t == "affine" || t == "a0") return 0;
    for (const char* prefix : {"alpha", "a"})
      if (t.rfind(prefix, 0) == 0)
        if (auto k = parse_int(std::string_view(t).substr(std::string_view(prefix).size()))) return in_range(*k);
    return std::nullopt;
  };

  if (s == "all") {
    std::vector<int> out(static_cast<std::size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) out[static_cast<std::size_t>(k)] = k;
    return out;
  }
  if (auto k = parse_int(s)) return {in_range(*k)};
  if (s.rfind("mark", 0) == 0)
    if (auto m = parse_int(std::string_view(s).substr(4))) return nodes_with_mark(*m);
  if (auto k = named(s)) return {*k};
  // "a4 (mark 5)" as printed in reports (whitespace already removed).
  const auto open = s.find("(mark");
  if (open != std::string::npos && s.back() == ')') {
    const auto k = named(s.substr(0, open));
    const auto m = parse_int(std::string_view(s).substr(open + 5, s.size() - open - 6));
    if (k && m) {
      if (node_mark(rs, *k) != *m)
        throw UsageError(std::string(text) + ": node " + node_name(rs, *k) + " has mark " +
                         std::to_string(node_mark(rs, *k)));
      return {*k};
    }
  }
  throw UsageError("unrecognized node selector '" + std::string(text) + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chevalley lattices, parahoric Lie lattices and their discriminants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lielat 0.1.0");
  bool machine = false;

  std::string type, verify, cache, order = "height-lex", node, disc;
  std::uint64_t prime = 0;
  bool all = false, normalized = false, divisors = false, matrix = false, slow = false;

  auto machine_flag = [&](CLI::App* sub) { sub->add_flag("--machine", machine, "Emit one JSON document"); };

  auto* info = app.add_subcommand("info", "Root-system numbers and discriminants");
  info->add_option("type", type, "Type such as E8, B4")->required();
  machine_flag(info);

  auto* roots = app.add_subcommand("roots", "List roots in simple-root coordinates");
  roots->add_option("type", type)->required();
  roots->add_flag("--all", all, "Include negative roots");
  machine_flag(roots);

  auto* algebra = app.add_subcommand("algebra", "Build the Chevalley basis and optionally verify it");
  algebra->add_option("type", type)->required();
  algebra->add_option("--verify", verify, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  algebra->add_option("--cache", cache, "Structure-constant cache file (read if present, written otherwise)");
  algebra->add_option("--order", order, "Positive-root order: height-lex or height-colex");
  machine_flag(algebra);

  auto* gram = app.add_subcommand("gram", "Killing or normalized Gram matrix");
  gram->add_option("type", type)->required();
  gram->add_flag("--normalized", normalized, "Divide the Killing form by 2h^v");
  gram->add_flag("--divisors", divisors, "Elementary divisors");
  gram->add_flag("--matrix", matrix, "Print the matrix itself");
  machine_flag(gram);

  auto* parahoric = app.add_subcommand("parahoric", "Maximal parahoric reports");
  parahoric->add_option("type", type)->required();
  parahoric->add_option("--node", node, "k, all, affine, a4, mark5, \"a4 (mark 5)\"")->required();
  parahoric->add_option("--prime", prime)->required();
  parahoric->add_flag("--divisors", divisors, "Elementary divisors over Z_p");
  machine_flag(parahoric);

  auto* match = app.add_subcommand("match", "Nodes whose parahoric discriminant equals a value");
  match->add_option("type", type)->required();
  match->add_option("--prime", prime)->required();
  match->add_option("--disc", disc, "Factored integer, e.g. 2^26*3^36")->required();
  machine_flag(match);

  auto* verify_paper = app.add_subcommand("verify-paper", "Run the golden-table checks");
  verify_paper->add_flag("--slow", slow, "Full Jacobi enumeration for E6, E7, E8");
  machine_flag(verify_paper);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (info->parsed()) return cmd_info(type, machine, out);
    if (roots->parsed()) return cmd_roots(type, all, machine, out);
    if (algebra->parsed()) return cmd_algebra(type, verify, cache, order, machine, out, err);
    if (gram->parsed()) return cmd_gram(type, normalized, divisors, matrix, machine, out);
    if (parahoric->parsed()) return cmd_parahoric(type, node, prime, divisors, machine, out);
    if (match->parsed()) return cmd_match(type, prime, disc, machine, out);
    if (verify_paper->parsed()) return cmd_verify_paper(slow, machine, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace lielat::cli
