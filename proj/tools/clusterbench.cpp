#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "clusterbench/autpoly.hpp"
#include "clusterbench/clusterauto.hpp"
#include "clusterbench/http.hpp"
#include "clusterbench/invariants.hpp"
#include "clusterbench/presentations.hpp"
#include "clusterbench/serialize.hpp"
#include "clusterbench/session.hpp"

using namespace clusterbench;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string out;
  std::string type;
  int rank = 0;
  int level = 0;
  bool principal = false;
  std::size_t budget = kDefaultBudget;
};

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out);
  f << text;
}

SessionDescriptor descriptor(const Common& c) {
  SessionDescriptor d;
  d.type = c.type;
  d.rank = c.rank;
  d.level = c.level;
  d.principal = c.principal;
  d.dynkin();
  return d;
}

void add_type_args(CLI::App* cmd, Common& c, bool level_required) {
  cmd->add_option("type", c.type, "Dynkin family: A, D or E")->required();
  cmd->add_option("rank", c.rank, "rank of the Dynkin type")->required();
  auto* l = cmd->add_option("l", c.level, "level l >= 1 of Q_{g,l}; 0 or omitted gives the bare Dynkin quiver");
  if (level_required) l->required();
  cmd->add_flag("--principal", c.principal, "specialize frozen variables to 1");
  cmd->add_option("--out", c.out, "write JSON here instead of stdout");
}

int cmd_build(const Common& c) {
  const DynkinType t = DynkinType::parse(c.type, c.rank);
  Quiver q = c.level == 0 ? dynkin_quiver(t) : build_hl_quiver(t, c.level);
  if (c.principal) q = q.principal();
  json j = to_json(q);
  j["type"] = t.name();
  j["l"] = c.level;
  if (c.level > 0 && !c.principal) {
    json fam = json::array();
    for (const auto& a : hl_arrows(t, c.level))
      fam.push_back({{"src", hl_label(c.level, a.src)}, {"dst", hl_label(c.level, a.dst)}, {"family", a.family}});
    j["family_arrows"] = fam;
  }
  emit(j, c.out);
  return kExitPass;
}

int cmd_mutate(const Common& c, const std::vector<std::string>& vertices) {
  SessionState s(descriptor(c));
  json steps = json::array();
  for (const auto& v : vertices) {
    const Quiver& q = s.current().quiver();
    int k = -1;
    if (auto idx = q.index_of(v)) {
      k = *idx;
    } else {
      try {
        std::size_t pos = 0;
        k = std::stoi(v, &pos);
        if (pos != v.size()) k = -1;
      } catch (const std::exception&) {
        k = -1;
      }
    }
    if (k < 0 || k >= q.size()) throw CLI::ValidationError("vertex", "unknown vertex '" + v + "'");
    steps.push_back(to_json(s.mutate(k)));
  }
  json j = s.to_json();
  j["steps"] = steps;
  emit(j, c.out);
  return kExitPass;
}

int cmd_enumerate(const Common& c) {
  const Seed s = build_initial_seed(descriptor(c));
  const ExchangeGraph g = exchange_graph(s, c.budget);
  json j;
  j["complete"] = g.complete();
  j["budget"] = c.budget;
  if (!g.complete()) {
    j["clusters_found"] = g.size();
    emit(j, c.out);
    return kExitFail;
  }
  j["census"] = to_json(census(g));
  j["laurent_positive"] = check_laurent_positive(g);
  // With frozen vertices both readings are reported: frozen variables kept
  // as coefficients, and specialized to 1.
  if (s.quiver().n_frozen() > 0) j["principal_census"] = to_json(census(specialize(g)));
  j["graph"] = to_json(g);
  emit(j, c.out);
  return kExitPass;
}

int cmd_autgroup(const Common& c, bool frozen_aware) {
  const SessionDescriptor d = descriptor(c);
  const auto r = compute_aut_group(build_initial_seed(d), frozen_aware, c.budget);
  json j = to_json(r.group, r.identified);
  j["clusters"] = r.census.cluster_count;
  j["variables"] = r.census.variable_count;
  j["frozen_aware"] = frozen_aware;
  if (auto pt = principal_part_type(d.dynkin(), std::max(d.level, 1))) {
    const GroupExpr table = aut_cl_table(*pt);
    j["principal_type"] = pt->name();
    j["table"] = to_json(table);
    j["table_relation"] = to_string(compare_with_table(r.group, table));
  }
  emit(j, c.out);
  return kExitPass;
}

int cmd_report(const Common& c) {
  const DynkinType t = DynkinType::parse(c.type, c.rank);
  emit(to_json(invariant_report(t, c.level)), c.out);
  return kExitPass;
}

json check(const std::string& name, bool pass, json detail = json()) {
  json j{{"name", name}, {"pass", pass}};
  if (!detail.is_null()) j["detail"] = std::move(detail);
  return j;
}

void verify_presentation_checks(const Presentation& p, int rank, const std::string& displayed, json& checks) {
  checks.push_back(check(p.name + " relation substitutes to 0", verify_presentation(p), verification_trace(p)));
  const auto c = census(exchange_graph(initial_seed(dynkin_quiver({DynkinFamily::A, rank}))));
  const auto hits = census_matches(p, c);
  checks.push_back(check(p.name + " generators are cluster variables",
                         std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 0; }), hits));
  const std::string h = to_string(homogenize(p.relation));
  checks.push_back(check(p.name + " homogenized form", h == displayed, h));
}

void verify_nagata_checks(const Coef& a, json& checks) {
  const std::string tag = "nagata a=" + to_string(a);
  const PolyEndo n = nagata(a);
  const LaurentPoly d = nagata_delta(a);
  checks.push_back(check(tag + " delta invariant", n.apply(d) == d));
  const PolyEndo inv = nagata_inverse(a);  // self-verifying
  checks.push_back(check(tag + " inverse both ways", is_identity(compose(n, inv)) && is_identity(compose(inv, n))));
}

int cmd_verify(const std::string& what, const std::string& a_text, const std::string& out) {
  json checks = json::array();
  if (what == "a2" || what == "all") verify_presentation_checks(a2_presentation(), 2, "u*v*w - u*z^2 - v*z^2 - z^3", checks);
  if (what == "a3" || what == "all")
    verify_presentation_checks(a3_presentation(), 3, "t*w*x_1*x_3 - t*x_3*z^2 - w*x_1*z^2 - x_1*x_3*z^2", checks);
  if (what == "nagata") verify_nagata_checks(parse_coef(a_text), checks);
  if (what == "all")
    for (const char* a : {"1", "-1", "2", "1/2"}) verify_nagata_checks(parse_coef(a), checks);
  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  emit({{"verify", what}, {"pass", pass}, {"checks", checks}}, out);
  return pass ? kExitPass : kExitFail;
}

int cmd_serve(int port, const std::string& host) {
  Service svc;
  httplib::Server server;
  install_routes(server, svc);
  std::cerr << "serving on http://" << host << ":" << port << "/api\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return kExitFail;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic workbench for Hernandez-Leclerc cluster algebras"};
  app.require_subcommand(1);

  Common common;
  auto* build = app.add_subcommand("build", "build Q_{g,l} (or the Dynkin quiver) as JSON");
  add_type_args(build, common, false);

  std::vector<std::string> vertices;
  auto* mutate = app.add_subcommand("mutate", "apply a mutation sequence to the initial seed");
  add_type_args(mutate, common, true);
  mutate->add_option("--at", vertices, "vertices (index or label), applied in order")->required();

  auto* enumerate = app.add_subcommand("enumerate", "exchange graph and cluster-variable census");
  add_type_args(enumerate, common, false);
  enumerate->add_option("--budget", common.budget, "maximum number of clusters");

  bool frozen_aware = false;
  auto* autgroup = app.add_subcommand("autgroup", "cluster automorphism group of the principal part");
  add_type_args(autgroup, common, false);
  autgroup->add_option("--budget", common.budget, "maximum number of clusters");
  autgroup->add_flag("--frozen-aware", frozen_aware, "keep frozen vertices when comparing quivers");

  auto* report = app.add_subcommand("report", "invariant report for (type, rank, l)");
  add_type_args(report, common, true);

  std::string what = "all", a_text = "1", verify_out;
  auto* verify = app.add_subcommand("verify", "verify presentations and Nagata identities");
  verify->add_option("what", what, "all | a2 | a3 | nagata")->check(CLI::IsMember({"all", "a2", "a3", "nagata"}));
  verify->add_option("--a", a_text, "Nagata parameter (rational, nonzero)");
  verify->add_option("--out", verify_out, "write JSON here instead of stdout");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "serve the JSON API on localhost");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*build) return cmd_build(common);
    if (*mutate) return cmd_mutate(common, vertices);
    if (*enumerate) return cmd_enumerate(common);
    if (*autgroup) return cmd_autgroup(common, frozen_aware);
    if (*report) return cmd_report(common);
    if (*verify) return cmd_verify(what, a_text, verify_out);
    if (*serve) return cmd_serve(port, host);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LevelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MutationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DivisionByZero& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
