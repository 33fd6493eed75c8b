#include "vclab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "vclab/catalog.hpp"
#include "vclab/io.hpp"

namespace vclab {

using nlohmann::json;

namespace {

struct CommonFlags {
  std::string group;
  std::string b_name;
  long long p = 0;
  int k = 0;
  int n = 0;
  int m = 0;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string out_path;
  Budgets budgets;
};

void add_budget_flags(CLI::App* cmd, Budgets& b) {
  cmd->add_option("--cap-lattice", b.lattice_subgroup_cap, "subgroup lattice size cap");
  cmd->add_option("--cap-family", b.family_enum_cap, "family enumeration cap");
  cmd->add_option("--cap-s", b.s_explicit_cap, "explicit point-set cap");
  cmd->add_option("--cap-nodes", b.solver_nodes, "solver node budget");
  cmd->add_option("--cap-schanuel", b.schanuel_cap, "root search budget");
  cmd->add_option("--cap-g", b.g_enum_cap, "G enumeration cap (tier i)");
  cmd->add_option("--cap-pairs", b.g_pair_cap, "G assignment sweep cap (tier ii)");
}

uint64_t resolve_seed(const CommonFlags& f) {
  if (f.seed_set) return f.seed;
  if (const char* env = std::getenv("VCLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw std::invalid_argument("VCLAB_SEED is not a number");
    }
  }
  return 0;
}

std::pair<FiniteGroup, std::string> load_group(const std::string& flag) {
  if (flag.empty()) throw std::invalid_argument("--group is required");
  if (flag.front() == '@') {
    std::string path = flag.substr(1);
    return {load_group_file(path), path};
  }
  if (!catalog_has(flag))
    throw std::invalid_argument("unknown catalog group '" + flag +
                                "' (use @file for Cayley files)");
  return {catalog_group(flag), flag};
}

BuildOptions build_options(const FiniteGroup& h, const CommonFlags& f) {
  BuildOptions opt;
  opt.budgets = f.budgets;
  if (!f.b_name.empty() || f.p != 0 || f.k != 0) {
    if (f.b_name.empty() || f.p == 0 || f.k == 0)
      throw std::invalid_argument("--b, --p and --k must be given together");
    auto b = h.element_by_name(f.b_name);
    if (!b) throw std::invalid_argument("no element named '" + f.b_name + "'");
    opt.witness = PurityWitness{*b, f.p, f.k};
  }
  if (f.n != 0) opt.n_used_override = f.n;
  if (f.m != 0) opt.dim_m_override = f.m;
  return opt;
}

std::vector<std::string> names_of(const FiniteGroup& g, const std::vector<int>& elems) {
  std::vector<std::string> out;
  for (int e : elems) out.push_back(g.name(e));
  return out;
}

void emit(const json& report, const std::string& out_path, std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) {
    write_text_file(out_path, text);
    out << "report written to " << out_path << "\n";
  } else {
    out << text;
  }
}

json analyze_group(const FiniteGroup& g, const std::string& name, const Budgets& budgets) {
  json rep;
  rep["command"] = "analyze";
  rep["group"] = name;
  rep["order"] = g.order();
  rep["abelian"] = g.is_abelian();
  rep["exponent"] = g.exponent();
  rep["centre"] = names_of(g, centre(g).members);
  auto w = purity_witness_search(g);
  if (w) {
    rep["witness"] = {{"b", g.name(w->b)}, {"p", w->p}, {"k", w->k}};
    std::vector<int> e = special_set(g, *w);
    rep["special_set"] = names_of(g, e);
    BoundedN bn = bounded_n_search(g, e, budgets.family_size_cap, budgets);
    rep["n"] = bn.n;
    rep["n_exact"] = bn.exact;
  } else {
    rep["witness"] = nullptr;
    rep["centre_is_pure"] = true;
  }
  rep["gens_mod_centre"] = names_of(g, generators_mod_centre(g));
  return rep;
}

int cmd_analyze(const CommonFlags& f, std::ostream& out) {
  auto [g, name] = load_group(f.group);
  json rep = analyze_group(g, name, f.budgets);
  emit(rep, f.out_path, out);
  return 0;
}

int cmd_construct(const CommonFlags& f, std::ostream& out) {
  auto [g, name] = load_group(f.group);
  CounterexampleSpec spec = build_spec(g, build_options(g, f));
  json rep;
  rep["command"] = "construct";
  rep["group"] = name;
  rep["spec"] = spec_to_json(spec);
  emit(rep, f.out_path, out);
  return 0;
}

int cmd_verify_nac(const CommonFlags& f, std::ostream& out) {
  auto [g, name] = load_group(f.group);
  CounterexampleSpec spec = build_spec(g, build_options(g, f));
  Certificate cert = certify_not_algebraically_closed(spec, f.budgets, resolve_seed(f));
  emit(certificate_to_json(cert), f.out_path, out);
  out << "not-algebraically-closed certificate issued: " << cert.eq_count
      << " equations, UNSAT over H with exhaustion\n";
  return 0;
}

int cmd_verify_vc(const CommonFlags& f, const AuditOptions& audit_in, std::ostream& out) {
  auto [g, name] = load_group(f.group);
  CounterexampleSpec spec = build_spec(g, build_options(g, f));
  AuditOptions audit = audit_in;
  audit.seed = resolve_seed(f);
  audit.budgets = f.budgets;
  VcEvidence ev = verbal_closedness_audit(spec, audit);
  json rep;
  rep["command"] = "verify-vc";
  rep["group"] = name;
  rep["evidence"] = evidence_to_json(ev);
  emit(rep, f.out_path, out);
  out << (ev.pass() ? "verbal-closedness audit: zero violations\n"
                    : "verbal-closedness audit FAILED\n");
  return ev.pass() ? 0 : 1;
}

int cmd_fnlemma(const CommonFlags& f, bool sample, int trials, std::ostream& out) {
  if (f.p == 0 || f.k == 0 || f.n == 0)
    throw std::invalid_argument("fnlemma needs --p, --k and --n");
  PrimePower ring = PrimePower::make(f.p, f.k);
  int dim_m = f.m != 0 ? f.m : choose_m(f.p, f.k, f.n);
  FnLemmaOptions opt;
  opt.enumerate = !sample;
  opt.samples = trials;
  opt.seed = resolve_seed(f);
  opt.family_cap = f.budgets.family_enum_cap;
  opt.s_explicit_cap = f.budgets.s_explicit_cap;
  opt.schanuel_budget = f.budgets.schanuel_cap;
  FnLemmaReport rep = verify_function_lemma(ring, f.n, dim_m, opt);
  json j;
  j["command"] = "fnlemma";
  j["p"] = f.p;
  j["k"] = f.k;
  j["n"] = f.n;
  j["dim_m"] = dim_m;
  j["report"] = fnlemma_report_to_json(rep);
  emit(j, f.out_path, out);
  out << (rep.pass() ? "function lemma verified\n" : "function lemma check FAILED\n");
  return rep.pass() ? 0 : 1;
}

int cmd_demo(const CommonFlags& f, const AuditOptions& audit_in, std::ostream& out) {
  auto [g, name] = load_group(f.group);
  uint64_t seed = resolve_seed(f);
  out << "== analyze " << name << "\n";
  json analysis = analyze_group(g, name, f.budgets);
  out << "centre: " << analysis["centre"].dump() << "\n";
  if (analysis["witness"].is_null()) {
    out << "centre is pure; the construction does not apply\n";
    return 2;
  }
  out << "witness: " << analysis["witness"].dump() << "\n";

  out << "== construct\n";
  CounterexampleSpec spec = build_spec(g, build_options(g, f));
  out << "dim_m=" << spec.dim_m << " |S|=" << spec.s_size() << " |F|=" << spec.family.size()
      << " n_used=" << spec.n_used << " |G|=" << spec.g_order() << "\n";

  out << "== certify not algebraically closed\n";
  Certificate cert = certify_not_algebraically_closed(spec, f.budgets, seed);
  out << cert.eq_count << " equations; G-solution residuals all identity; "
      << "H search exhausted after " << cert.h_nodes << " nodes, UNSAT\n";

  out << "== verbal closedness audit\n";
  AuditOptions audit = audit_in;
  audit.seed = seed;
  audit.budgets = f.budgets;
  VcEvidence ev = verbal_closedness_audit(spec, audit);
  cert.vc = ev;
  for (const VcTier& t : ev.tiers)
    if (t.violations > 0)
      out << "violations in tier " << t.tier << " (" << t.word << ")\n";

  emit(certificate_to_json(cert), f.out_path, out);
  bool ok = ev.pass() && cert.residuals_ok && cert.h_exhausted;
  out << (ok ? "demo passed\n" : "demo FAILED\n");
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& in_path, std::ostream& out) {
  if (in_path.empty()) throw std::invalid_argument("verify needs --in <certificate>");
  json j = json::parse(read_text_file(in_path));
  Certificate cert = certificate_from_json(j);
  cert.spec.validate();
  EquationSystem sys = build_equation_system(cert.spec);
  if (sys.equations.size() != cert.eq_count)
    throw VerificationError("equation count mismatch: certificate says " +
                            std::to_string(cert.eq_count) + ", rebuilt " +
                            std::to_string(sys.equations.size()));
  std::vector<bool> residuals = eval_system_g(sys, cert.spec, cert.g_solution);
  std::size_t bad = 0;
  for (bool r : residuals)
    if (!r) ++bad;
  if (bad > 0)
    throw VerificationError(std::to_string(bad) + " equations have nonidentity residuals");
  out << "certificate ok: " << sys.equations.size()
      << " residuals re-checked, spec invariants hold\n";
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"counterexample toolkit for verbally closed but not algebraically "
               "closed diagonal subgroups"};
  app.require_subcommand(1);

  CommonFlags flags;
  AuditOptions audit;
  bool sample = false;
  int trials = 100;
  std::string in_path;

  auto add_common = [&](CLI::App* cmd, bool with_group) {
    if (with_group)
      cmd->add_option("--group", flags.group, "catalog name or @file (Cayley table)");
    cmd->add_option("--b", flags.b_name, "witness element name");
    cmd->add_option("--p", flags.p, "witness prime");
    cmd->add_option("--k", flags.k, "witness exponent k");
    cmd->add_option("--n", flags.n, "override n_used");
    cmd->add_option("--m", flags.m, "override dim_m (downward only)");
    cmd->add_option("--seed", flags.seed, "seed (default: VCLAB_SEED or 0)")
        ->each([&](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--out", flags.out_path, "write the JSON report here");
    add_budget_flags(cmd, flags.budgets);
  };

  CLI::App* analyze = app.add_subcommand("analyze", "structural analysis of a group");
  add_common(analyze, true);

  CLI::App* construct = app.add_subcommand("construct", "build and certify the spec");
  add_common(construct, true);

  CLI::App* nac = app.add_subcommand("verify-nac",
                                     "certify the diagonal subgroup not algebraically closed");
  add_common(nac, true);

  CLI::App* vc = app.add_subcommand("verify-vc", "verbal closedness audit");
  add_common(vc, true);
  vc->add_option("--trials", audit.trials, "tier-3 random words");
  vc->add_option("--assignments", audit.assignments, "assignments per sampled word");
  vc->add_option("--max-len", audit.max_len, "max random word length");
  vc->add_option("--max-vars", audit.max_vars, "max random word variables");
  vc->add_option("--word", audit.curated, "curated complete-sweep word (repeatable)");

  CLI::App* fn = app.add_subcommand("fnlemma", "verify the function-family properties");
  add_common(fn, false);
  fn->add_flag("--enumerate", "enumerate the full family (default)");
  fn->add_flag("--sample", sample, "sampled check instead of enumeration");
  fn->add_option("--trials", trials, "samples in --sample mode");

  CLI::App* demo = app.add_subcommand("demo", "end-to-end run on one group");
  std::string demo_group;
  demo->add_option("name", demo_group, "catalog name or @file")->required();
  add_common(demo, false);
  demo->add_option("--trials", audit.trials, "tier-3 random words");
  demo->add_option("--assignments", audit.assignments, "assignments per sampled word");
  demo->add_option("--max-len", audit.max_len, "max random word length");
  demo->add_option("--max-vars", audit.max_vars, "max random word variables");

  CLI::App* verify = app.add_subcommand("verify", "re-check a stored certificate");
  verify->add_option("--in", in_path, "certificate file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(flags, out);
    if (construct->parsed()) return cmd_construct(flags, out);
    if (nac->parsed()) return cmd_verify_nac(flags, out);
    if (vc->parsed()) return cmd_verify_vc(flags, audit, out);
    if (fn->parsed()) return cmd_fnlemma(flags, sample, trials, out);
    if (demo->parsed()) {
      flags.group = demo_group;
      return cmd_demo(flags, audit, out);
    }
    if (verify->parsed()) return cmd_verify(in_path, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "no command\n";
  return 2;
}

}  // namespace vclab
