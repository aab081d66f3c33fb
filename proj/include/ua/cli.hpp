#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ua/fixtures.hpp"
#include "ua/io.hpp"

namespace ua::cli {

enum Exit { ok = 0, negative = 1, usage = 2 };

struct Options {
  std::string in, in2, theta = "full", delta = "zero", phi, out, config, dir, op;
  int scope = 1;
  std::size_t cap = 100000;
  unsigned seed = 1;
  int count = 50;
  bool timing = false;
};

// NAME/blocks: zero, full, monolith, a document label, cg:a,b, or blocks "0,2|1,3"
// (unlisted elements stay singletons).
inline Partition resolve_partition(const std::string& spec, const AlgebraDocument& doc) {
  const Algebra& A = doc.alg;
  const int n = A.size();
  if (spec == "zero" || spec == "0") return Partition::identity(n);
  if (spec == "full" || spec == "1") return Partition::full(n);
  if (spec == "monolith") {
    auto m = monolith(A);
    require_input(m.has_value(), "the algebra is not subdirectly irreducible");
    return *m;
  }
  if (auto it = doc.labels.find(spec); it != doc.labels.end()) return it->second;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require_input(used == s.size() && !s.empty(), "bad element '" + s + "' in partition " + spec);
    require_input(v >= 0 && v < n, "element out of range in partition " + spec + ": " + s);
    return v;
  };
  auto split = [](const std::string& s, char c) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, c)) out.push_back(part);
    return out;
  };
  if (spec.rfind("cg:", 0) == 0) {
    auto parts = split(spec.substr(3), ',');
    require_input(parts.size() == 2, "cg: takes two elements");
    return principal_congruence(A, number(parts[0]), number(parts[1]));
  }
  require_input(spec.find_first_not_of("0123456789,| ") == std::string::npos, "unknown partition or label: " + spec);
  std::vector<std::vector<int>> blocks;
  std::vector<char> seen(n, 0);
  for (const auto& b : split(spec, '|')) {
    std::vector<int> block;
    for (const auto& x : split(b, ',')) {
      if (x.find_first_not_of(' ') == std::string::npos) continue;
      int v = number(x.substr(x.find_first_not_of(' ')));
      require_input(!seen[v], "element listed twice in partition " + spec);
      seen[v] = 1;
      block.push_back(v);
    }
    blocks.push_back(block);
  }
  return Partition::from_blocks(n, blocks);
}

inline AlgebraDocument load(const std::string& path) {
  require_input(!path.empty(), "--in is required");
  return parse_algebra(read_file(path));
}

// --op if given, else a ternary operation named d, else the first term found by search.
inline WdtCertificate certificate(const Algebra& A, const Options& o) {
  std::string name = o.op;
  if (name.empty() && A.op_index("d") >= 0 && A.op(A.op_index("d")).arity == 3) name = "d";
  if (!name.empty()) return verify_wdt(A, Ternary::from_op(A, name), o.scope);
  auto c = search_wdt(A, o.cap);
  require_pre(c.has_value(), "no weak difference term found within the search cap");
  return *c;
}

inline std::vector<int> class_representatives(const Partition& p) {
  std::vector<int> out;
  for (const auto& b : p.blocks()) out.push_back(b.front());
  return out;
}

inline Algebra random_algebra(std::mt19937& rng, int max_size = 4) {
  std::uniform_int_distribution<int> size(2, max_size), nops(1, 2), arity(1, 2);
  const int n = size(rng);
  Algebra A(n);
  const int k = nops(rng);
  for (int i = 0; i < k; ++i) {
    Operation o{"f" + std::to_string(i), arity(rng), {}};
    std::uniform_int_distribution<int> el(0, n - 1);
    for (std::size_t t = 0; t < ipow(n, o.arity); ++t) o.table.push_back(el(rng));
    A.add_operation(std::move(o));
  }
  return A;
}

// Law checks on one algebra. Disagreements between independent computations
// surface as failed items.
inline Report algebra_laws(const Algebra& A, std::size_t cap) {
  Report r;
  auto L = congruence_lattice(A);
  bool agree = true;
  std::string w;
  try {
    for (const auto& d : L.elements())
      for (const auto& t : L.elements())
        for (const auto& p : L.elements()) centralizes(A, p, t, d);
  } catch (const InternalError& e) {
    agree = false;
    w = e.what();
  }
  r.add("centrality-rows-columns", "the row and column forms of the term condition agree", "centrality-two-forms",
        agree, w);

  bool principal = true;
  for (int a = 0; a < A.size() && principal; ++a)
    for (int b = 0; b < A.size(); ++b) {
      auto p = principal_congruence(A, a, b);
      for (const auto& c : L.elements())
        if (c.related(a, b) && !p.leq(c)) {
          principal = false;
          w = "(a,b)=" + tuple_string(std::vector<int>{a, b});
        }
      if (!p.related(a, b) || !L.contains(p)) principal = false;
    }
  r.add("principal-least", "Cg(a,b) is the least congruence containing (a,b)", "principal-congruence", principal, w);

  auto cert = search_wdt(A, cap);
  if (!cert) {
    r.skip("abelian-two-term", "abelian iff two-term condition", "abelian-two-term", "no weak difference term found");
    return r;
  }
  bool tt = true;
  w.clear();
  for (const auto& t : L.elements())
    if (is_abelian(A, t) != two_term_condition(A, t).holds) {
      tt = false;
      w = "θ=" + t.to_string();
    }
  r.add("abelian-two-term", "with a weak difference term, abelian iff two-term condition", "abelian-two-term", tt, w);
  r.append(check_wdt_laws(A, *cert), "wdt");
  return r;
}

inline void write_fixtures(const std::string& dir) {
  require_input(!dir.empty(), "--dir is required");
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    write_file((std::filesystem::path(dir) / name).string(), text);
  };
  auto alg = [&](const std::string& name, const Algebra& A, std::map<std::string, Partition> labels = {}) {
    put(name, serialize_algebra(AlgebraDocument{A, std::move(labels), {}}));
  };
  auto Z4 = fixtures::z4();
  alg("z2.json", fixtures::z2());
  alg("z4.json", Z4, {{"theta", Partition::from_blocks(4, {{0, 2}, {1, 3}})}});
  alg("dz4.json", diff_of(Z4, verify_wdt(Z4, Ternary::from_op(Z4, "p"))).alg);
  alg("s2.json", fixtures::s2());
  alg("sq2.json", fixtures::sq2());
  put("gen1.cfg.json", serialize_config(fixtures::gen1_config()));
  put("gen2.cfg.json", serialize_config(fixtures::gen2_config()));
  put("gen3.cfg.json", serialize_config(fixtures::gen3_config()));
}

inline int execute(const std::string& cmd, const Options& o, Report& r) {
  if (cmd == "fixtures") {
    write_fixtures(o.dir);
    r.add("fixtures", "fixture documents written", "fixtures", true, o.dir);
    return ok;
  }
  if (cmd == "generate") {
    require_input(!o.config.empty(), "--config is required");
    require_input(!o.out.empty(), "--out is required");
    auto G = generate_example(parse_config(read_file(o.config)));
    write_file(o.out, serialize_algebra(document_of(G)));
    r.add("generate", "example algebra generated", "generate", true,
          "|A|=" + std::to_string(G.alg.size()) + " operations=" + std::to_string(G.alg.num_ops()));
    return ok;
  }
  if (cmd == "laws" && o.in.empty()) {
    std::mt19937 rng(o.seed);
    for (int i = 0; i < o.count; ++i) {
      auto A = random_algebra(rng);
      r.append(algebra_laws(A, o.cap), "alg" + std::to_string(i));
    }
    return r.all_pass() ? ok : negative;
  }

  auto doc = load(o.in);
  const Algebra& A = doc.alg;
  if (cmd == "con") {
    auto L = congruence_lattice(A, o.cap);
    auto S = structure_report(L);
    r.add("lattice", "congruence lattice computed", "congruence-lattice", true, "|Con A|=" + std::to_string(L.size()));
    for (int i = 0; i < L.size(); ++i) r.add("con[" + std::to_string(i) + "]", "congruence", "congruence", true, L.at(i).to_string());
    r.add("subdirectly-irreducible", "A is subdirectly irreducible", "monolith", true,
          S.is_si ? "monolith " + S.monolith->to_string() : "not subdirectly irreducible");
    return ok;
  }
  if (cmd == "centralizer") {
    auto c = centralizer(A, resolve_partition(o.delta, doc), resolve_partition(o.theta, doc));
    r.add("centralizer", "(δ:θ)", "centralizer", true, c.to_string());
    return ok;
  }
  if (cmd == "abelian") {
    auto res = is_abelian_witness(A, resolve_partition(o.theta, doc), resolve_partition(o.delta, doc));
    r.add("abelian", "C(θ,θ;δ)", "abelian", res.holds, res.witness ? matrix_string(*res.witness) : "");
    return res.holds ? ok : negative;
  }
  if (cmd == "wdt-verify") {
    std::string name = o.op.empty() ? "d" : o.op;
    auto c = verify_wdt(A, Ternary::from_op(A, name), o.scope);
    r.add("wdt", "the operation is a weak difference term", "wdt", c.verdict,
          c.verdict ? "scope " + std::to_string(c.scope) : c.witness);
    return c.verdict ? ok : negative;
  }
  if (cmd == "wdt-search") {
    auto c = search_wdt(A, o.cap);
    r.add("wdt-search", "a weak difference term exists in the ternary clone", "wdt", c.has_value(),
          c ? tuple_string(c->d.table) : "none within the cap");
    return c ? ok : negative;
  }

  auto cert = certificate(A, o);
  require_pre(cert.verdict, "the chosen operation is not a weak difference term: " + cert.witness);
  if (cmd == "diffalg") {
    auto DA = difference_algebra(A, resolve_partition(o.theta, doc), cert);
    r.add("difference-algebra", "D(A,θ) constructed", "difference-algebra", true,
          "|D|=" + std::to_string(DA.size()) + " φ=" + DA.phi.to_string());
    r.append(verify_diffalg_theorems(DA));
    return r.all_pass() ? ok : negative;
  }
  if (cmd == "ranges") {
    auto DA = difference_algebra(A, resolve_partition(o.theta, doc), cert);
    for (int c : class_representatives(DA.theta)) {
      auto R = range_of_class(DA, c);
      r.add("range[" + std::to_string(c) + "]", "range of the θ-class", "range", true,
            tuple_string(R.members) + (R.full() ? " full" : " proper"));
    }
    return ok;
  }
  if (cmd == "arrow") {
    auto DA = difference_algebra(A, resolve_partition(o.theta, doc), cert);
    for (int a : class_representatives(DA.alpha))
      r.append(check_arrow_graph(DA, arrow_graph(DA, a)), "alpha" + std::to_string(a));
    return r.all_pass() ? ok : negative;
  }
  if (cmd == "field") {
    if (!o.phi.empty()) {
      auto phi = resolve_partition(o.phi, doc);
      auto Ts = subuniverse_transversals(A, phi);
      require_pre(!Ts.empty(), "φ has no transversal subuniverse");
      auto F = division_ring(A, phi, Ts.front(), cert);
      r.add("field", "the endomorphism ring is a division ring", "division-ring", true,
            "|F|=" + std::to_string(F.size()));
      return ok;
    }
    auto DA = difference_algebra(A, resolve_partition(o.theta, doc), cert);
    auto F = division_ring(DA);
    r.add("field", "the endomorphism ring of D(A,θ) is a division ring", "division-ring", true,
          "|F|=" + std::to_string(F.size()));
    for (int e : class_representatives(DA.theta)) {
      auto act = canonical_action(DA, F, e);
      r.add("dimension[" + std::to_string(e) + "]", "canonical vector space on the range", "canonical-action", true,
            std::to_string(act.dimension));
    }
    return ok;
  }
  if (cmd == "freese") {
    auto theta = resolve_partition(o.theta, doc);
    auto FR = freese_ring(A, theta, class_representatives(theta), cert);
    r.add("freese", "the commuting ring is isomorphic to the field of θ", "freese-ring", true,
          "|ring|=" + std::to_string(FR.ring.n) + " |F|=" + std::to_string(FR.field_size));
    return ok;
  }
  if (cmd == "similar" || cmd == "bridge") {
    if (cmd == "bridge" && o.in2.empty()) {
      auto T = canonical_bridge(A, cert);
      auto chk = bridge_verify(T.A, T.B, T.T);
      r.append(chk.report);
      return chk.valid ? ok : negative;
    }
    require_input(!o.in2.empty(), "--in2 is required");
    auto doc2 = load(o.in2);
    auto cert2 = certificate(doc2.alg, o);
    require_pre(cert2.verdict, "second algebra: not a weak difference term: " + cert2.witness);
    auto s = is_similar(A, cert, doc2.alg, cert2);
    if (cmd == "similar") {
      r.add("similar", "D(A) ≅ D(B)", "similarity", s.similar, s.iso ? tuple_string(s.iso->images) : "not similar");
      return s.similar ? ok : negative;
    }
    if (!s.similar) {
      r.add("similar", "D(A) ≅ D(B)", "similarity", false, "not similar");
      return negative;
    }
    auto T = bridge_from_iso(A, cert, doc2.alg, cert2, s.iso);
    auto chk = bridge_verify(T.A, T.B, T.T);
    r.append(chk.report);
    return chk.valid ? ok : negative;
  }
  if (cmd == "verify-claims") {
    require_input(doc.generator.has_value(), "document has no generator config");
    auto G = generate_example(*doc.generator);
    r.add("document-matches-config", "the stored tables equal a fresh run of the generator", "generate",
          G.alg == A);
    r.append(verify_claims(G));
    return r.all_pass() ? ok : negative;
  }
  if (cmd == "laws") {
    r.append(algebra_laws(A, o.cap));
    return r.all_pass() ? ok : negative;
  }
  throw InputError("unknown command " + cmd);
}

inline int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite algebra toolkit"};
  app.require_subcommand(1);
  Options o;
  struct Cmd {
    const char* name;
    const char* help;
    std::vector<std::string> flags;
  };
  const std::vector<Cmd> cmds{
      {"con", "congruence lattice", {"in"}},
      {"centralizer", "centralizer (δ:θ)", {"in", "theta", "delta"}},
      {"abelian", "test C(θ,θ;δ)", {"in", "theta", "delta"}},
      {"wdt-verify", "verify a weak difference term", {"in", "op", "scope"}},
      {"wdt-search", "search the ternary clone for a weak difference term", {"in", "cap"}},
      {"diffalg", "difference algebra and its checks", {"in", "theta", "op", "scope", "cap"}},
      {"ranges", "ranges of θ-classes", {"in", "theta", "op", "scope", "cap"}},
      {"arrow", "arrow graphs", {"in", "theta", "op", "scope", "cap"}},
      {"field", "division ring of a minimal abelian congruence", {"in", "theta", "phi", "op", "scope", "cap"}},
      {"freese", "ring of commuting class endomorphisms", {"in", "theta", "op", "scope", "cap"}},
      {"similar", "similarity test", {"in", "in2", "op", "scope", "cap"}},
      {"bridge", "construct and verify a bridge", {"in", "in2", "op", "scope", "cap"}},
      {"generate", "generate an example algebra from a config", {"config"}},
      {"verify-claims", "check a generated algebra", {"in"}},
      {"laws", "law sweeps on one algebra or on random ones", {"in", "seed", "count", "cap"}},
      {"fixtures", "write the fixture documents", {"dir"}},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    for (const auto& f : c.flags) {
      if (f == "in") sub->add_option("--in", o.in, "algebra document");
      if (f == "in2") sub->add_option("--in2", o.in2, "second algebra document");
      if (f == "theta") sub->add_option("--theta", o.theta, "congruence: zero, full, monolith, label, cg:a,b or blocks");
      if (f == "delta") sub->add_option("--delta", o.delta, "lower congruence");
      if (f == "phi") sub->add_option("--phi", o.phi, "congruence of a difference algebra");
      if (f == "op") sub->add_option("--op", o.op, "ternary operation to use as the weak difference term");
      if (f == "scope") sub->add_option("--scope", o.scope, "powers of A examined (1-3)");
      if (f == "cap") sub->add_option("--cap", o.cap, "enumeration cap");
      if (f == "seed") sub->add_option("--seed", o.seed, "random seed");
      if (f == "count") sub->add_option("--count", o.count, "number of random algebras");
      if (f == "config") sub->add_option("--config", o.config, "generator config");
      if (f == "dir") sub->add_option("--dir", o.dir, "output directory");
    }
    sub->add_option("--out", o.out, c.name == std::string("generate") ? "algebra output" : "report output");
    sub->add_flag("--timing", o.timing, "include wall time in the report");
  }
  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    ReportDocument bad{argv, {}, {}};
    bad.report.add("error", "usage error", "usage", false, e.what());
    out << serialize_report(bad);
    err << e.what() << "\n";
    return usage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  ReportDocument doc{argv, {}, {}};
  int code = usage;
  const auto start = std::chrono::steady_clock::now();
  try {
    code = execute(cmd, o, doc.report);
  } catch (const InputError& e) {
    doc.report.add("error", "input error", "input", false, e.what());
  } catch (const PreconditionError& e) {
    doc.report.add("error", "precondition failed", "precondition", false, e.what());
  } catch (const CapExceeded& e) {
    doc.report.add("error", "cap exceeded", "cap", false, e.what());
  } catch (const InternalError& e) {
    doc.report.add("error", "internal inconsistency", "internal", false, e.what());
  }
  if (o.timing)
    doc.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const auto text = serialize_report(doc);
  out << text;
  if (!o.out.empty() && cmd != "generate") {
    try {
      write_file(o.out, text);
    } catch (const InputError& e) {
      err << e.what() << "\n";
      return usage;
    }
  }
  if (code == usage && !doc.report.items.empty()) err << doc.report.items.back().witness << "\n";
  return code;
}

}  // namespace ua::cli
