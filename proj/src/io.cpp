#include "vclab/io.hpp"

#include <fstream>
#include <sstream>

namespace vclab {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

FiniteGroup parse_group_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg, int col = 0) -> std::runtime_error {
    return std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                 (col ? ":" + std::to_string(col) : "") + ": " + msg);
  };

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw std::invalid_argument(origin + ": empty file");
  std::istringstream head(line);
  std::string kw, name, orderkw;
  long long order = 0;
  if (!(head >> kw >> name >> orderkw >> order) || kw != "group" || orderkw != "order")
    throw fail("expected header 'group <name> order <N>'");
  if (order < 1 || order > 4096) throw fail("unsupported group order " + std::to_string(order));

  std::vector<std::vector<int>> rows;
  for (int r = 0; r < order; ++r) {
    if (!next_line()) {
      ++lineno;
      throw fail("missing table row " + std::to_string(r));
    }
    std::istringstream rs(line);
    std::vector<int> row;
    long long v;
    while (rs >> v) {
      if (v < 0 || v >= order)
        throw fail("row " + std::to_string(r) + " has out-of-range index " +
                       std::to_string(v),
                   int(rs.tellg() == -1 ? line.size() : std::size_t(rs.tellg())));
      row.push_back(int(v));
    }
    if (!rs.eof()) throw fail("row " + std::to_string(r) + " has a non-numeric token");
    if (int(row.size()) != order)
      throw fail("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                 " entries, expected " + std::to_string(order));
    rows.push_back(std::move(row));
  }

  std::vector<std::string> names;
  if (next_line()) {
    std::istringstream ns(line);
    std::string first;
    ns >> first;
    if (first != "names") throw fail("expected optional 'names ...' line");
    std::string n;
    while (ns >> n) names.push_back(n);
    if (long long(names.size()) != order)
      throw fail("names line lists " + std::to_string(names.size()) +
                 " entries, expected " + std::to_string(order));
    if (next_line()) throw fail("unexpected trailing content");
  }

  try {
    return FiniteGroup(std::move(rows), std::move(names));
  } catch (const std::invalid_argument& ex) {
    throw std::invalid_argument(origin + ": " + ex.what());
  }
}

FiniteGroup load_group_file(const std::string& path) {
  return parse_group_text(read_text_file(path), path);
}

std::string group_file_text(const FiniteGroup& g, const std::string& name) {
  std::ostringstream out;
  out << "group " << name << " order " << g.order() << "\n";
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << "\n";
  }
  out << "names";
  for (int a = 0; a < g.order(); ++a) out << " " << g.name(a);
  out << "\n";
  return out.str();
}

json group_to_json(const FiniteGroup& g, const std::string& name) {
  json j;
  j["name"] = name;
  j["order"] = g.order();
  j["table"] = g.rows();
  j["names"] = g.names();
  return j;
}

FiniteGroup group_from_json(const json& j) {
  return FiniteGroup(j.at("table").get<std::vector<std::vector<int>>>(),
                     j.value("names", std::vector<std::string>{}));
}

json fnlemma_report_to_json(const FnLemmaReport& rep) {
  json j;
  j["bound"] = rep.bound;
  j["bound_ok"] = rep.bound_ok;
  j["property1_ok"] = rep.property1_ok;
  j["property2_ok"] = rep.property2_ok;
  j["complete1"] = rep.complete1;
  j["complete2"] = rep.complete2;
  j["checked1"] = rep.checked1;
  j["checked2"] = rep.checked2;
  j["family_size"] = rep.family_size;
  j["notes"] = rep.notes;
  j["pass"] = rep.pass();
  return j;
}

static FnLemmaReport fnlemma_report_from_json(const json& j) {
  FnLemmaReport rep;
  rep.bound = j.at("bound").get<long long>();
  rep.bound_ok = j.at("bound_ok").get<bool>();
  rep.property1_ok = j.at("property1_ok").get<bool>();
  rep.property2_ok = j.at("property2_ok").get<bool>();
  rep.complete1 = j.at("complete1").get<bool>();
  rep.complete2 = j.at("complete2").get<bool>();
  rep.checked1 = j.at("checked1").get<long long>();
  rep.checked2 = j.at("checked2").get<long long>();
  rep.family_size = j.at("family_size").get<std::size_t>();
  rep.notes = j.at("notes").get<std::vector<std::string>>();
  return rep;
}

json spec_to_json(const CounterexampleSpec& spec) {
  json j;
  j["group"] = group_to_json(spec.h);
  j["witness"] = {{"b", spec.witness.b},
                  {"b_name", spec.h.name(spec.witness.b)},
                  {"p", spec.witness.p},
                  {"k", spec.witness.k}};
  j["n"] = spec.n;
  j["n_exact"] = spec.n_exact;
  j["n_caveat"] = spec.n_caveat;
  j["n_used"] = spec.n_used;
  j["dim_m"] = spec.dim_m;
  j["p_k"] = spec.pk;
  j["s_points"] = spec.s.points;
  json fam = json::array();
  for (const FunctionTable& t : spec.family) {
    json ft;
    ft["values"] = t.values;
    if (t.provenance) ft["poly"] = format_poly(*t.provenance);
    fam.push_back(std::move(ft));
  }
  j["family"] = std::move(fam);
  j["gens"] = spec.gens;
  j["certification"] = fnlemma_report_to_json(spec.certification);
  return j;
}

CounterexampleSpec spec_from_json(const json& j) {
  CounterexampleSpec spec{group_from_json(j.at("group"))};
  spec.witness.b = j.at("witness").at("b").get<int>();
  spec.witness.p = j.at("witness").at("p").get<long long>();
  spec.witness.k = j.at("witness").at("k").get<int>();
  spec.n = j.at("n").get<int>();
  spec.n_exact = j.at("n_exact").get<bool>();
  spec.n_caveat = j.at("n_caveat").get<bool>();
  spec.n_used = j.at("n_used").get<int>();
  spec.dim_m = j.at("dim_m").get<int>();
  PrimePower ring = PrimePower::make(spec.witness.p, spec.witness.k);
  spec.s.ring = ring;
  spec.s.dim_m = spec.dim_m;
  spec.s.is_explicit = true;
  spec.s.points = j.at("s_points").get<std::vector<std::vector<long long>>>();
  for (const auto& ft : j.at("family")) {
    FunctionTable t;
    t.values = ft.at("values").get<std::vector<long long>>();
    spec.family.push_back(std::move(t));
  }
  spec.gens = j.at("gens").get<std::vector<int>>();
  spec.certification = fnlemma_report_from_json(j.at("certification"));
  spec.finalize();
  return spec;
}

json evidence_to_json(const VcEvidence& ev) {
  json j;
  j["seed"] = ev.seed;
  j["pass"] = ev.pass();
  json tiers = json::array();
  for (const VcTier& t : ev.tiers) {
    json tj;
    tj["tier"] = t.tier;
    tj["word"] = t.word;
    tj["complete"] = t.complete;
    tj["checked"] = t.checked;
    tj["hits"] = t.hits;
    tj["transferred"] = t.transferred;
    tj["violations"] = t.violations;
    if (!t.note.empty()) tj["note"] = t.note;
    tiers.push_back(std::move(tj));
  }
  j["tiers"] = std::move(tiers);
  return j;
}

static VcEvidence evidence_from_json(const json& j) {
  VcEvidence ev;
  ev.seed = j.at("seed").get<uint64_t>();
  for (const auto& tj : j.at("tiers")) {
    VcTier t;
    t.tier = tj.at("tier").get<std::string>();
    t.word = tj.at("word").get<std::string>();
    t.complete = tj.at("complete").get<bool>();
    t.checked = tj.at("checked").get<uint64_t>();
    t.hits = tj.at("hits").get<uint64_t>();
    t.transferred = tj.at("transferred").get<uint64_t>();
    t.violations = tj.at("violations").get<uint64_t>();
    t.note = tj.value("note", "");
    ev.tiers.push_back(std::move(t));
  }
  return ev;
}

json certificate_to_json(const Certificate& cert) {
  json j;
  j["format"] = "vclab-certificate";
  j["version"] = cert.version;
  j["seed"] = cert.seed;
  j["spec"] = spec_to_json(cert.spec);
  j["equations"] = {{"count", cert.eq_count},
                    {"by_family",
                     std::vector<int>(cert.eq_family_counts.begin() +
                                          (cert.eq_family_counts.empty() ? 0 : 1),
                                      cert.eq_family_counts.end())}};
  json sol = json::array();
  for (const BigElement& x : cert.g_solution)
    sol.push_back({{"f", x.f}, {"comps", x.comps}});
  j["g_solution"] = std::move(sol);
  j["g_residuals_identity"] = cert.residuals_ok;
  j["h_unsat"] = {{"exhausted", cert.h_exhausted},
                  {"nodes", cert.h_nodes},
                  {"domain_sizes", cert.h_domain_sizes},
                  {"solution_found", false}};
  if (cert.vc) j["vc_evidence"] = evidence_to_json(*cert.vc);
  return j;
}

Certificate certificate_from_json(const json& j) {
  if (j.value("format", "") != "vclab-certificate")
    throw std::invalid_argument("not a certificate document");
  Certificate cert;
  cert.version = j.at("version").get<std::string>();
  cert.seed = j.at("seed").get<uint64_t>();
  cert.spec = spec_from_json(j.at("spec"));
  cert.eq_count = j.at("equations").at("count").get<std::size_t>();
  cert.eq_family_counts = {0};
  for (int c : j.at("equations").at("by_family").get<std::vector<int>>())
    cert.eq_family_counts.push_back(c);
  for (const auto& sj : j.at("g_solution")) {
    BigElement x;
    x.f = sj.at("f").get<int>();
    x.comps = sj.at("comps").get<std::vector<int>>();
    cert.g_solution.push_back(std::move(x));
  }
  cert.residuals_ok = j.at("g_residuals_identity").get<bool>();
  cert.h_exhausted = j.at("h_unsat").at("exhausted").get<bool>();
  cert.h_nodes = j.at("h_unsat").at("nodes").get<uint64_t>();
  cert.h_domain_sizes = j.at("h_unsat").at("domain_sizes").get<std::vector<int>>();
  if (j.contains("vc_evidence")) cert.vc = evidence_from_json(j.at("vc_evidence"));
  return cert;
}

}  // namespace vclab
