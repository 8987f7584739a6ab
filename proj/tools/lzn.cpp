#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "lzn/families.hpp"
#include "lzn/game.hpp"
#include "lzn/graph.hpp"
#include "lzn/pruning.hpp"
#include "lzn/solver.hpp"
#include "lzn/strategies.hpp"
#include "lzn/trees.hpp"
#include "lzn/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitBudgetExceeded = 3;
constexpr int kExitUsage = 4;

lzn::SolverOptions solver_options_from_env() {
  lzn::SolverOptions opts;
  if (const char* env = std::getenv("LZN_BUDGET_STATES")) opts.state_budget = std::atoll(env);
  return opts;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
}

int cmd_solve(const std::string& family, int max_cops, const std::string& table_path) {
  lzn::BuiltFamily fam = lzn::build(lzn::FamilyDescriptor::parse(family));
  if (!fam.finite) {
    std::cerr << "error: exact solving needs a finite graph (try a truncation)\n";
    return kExitUsage;
  }
  lzn::SolverOptions opts = solver_options_from_env();
  std::shared_ptr<lzn::WinTable> last_table;
  for (int k = 1; k <= max_cops; ++k) {
    auto [win, table] = lzn::cop_wins(*fam.finite, k, opts);
    last_table = table;
    if (win) {
      std::cout << "zeta = " << k << "\n";
      if (!table_path.empty()) write_output(table_path, table->to_string());
      return kExitOk;
    }
  }
  std::cout << "zeta > " << max_cops << "\n";
  if (!table_path.empty() && last_table) write_output(table_path, last_table->to_string());
  return kExitOk;
}

int cmd_simulate(const std::string& family, const std::string& cops, const std::string& robber,
                 int rounds, std::uint64_t seed, const std::string& out_path) {
  lzn::BuiltFamily fam = lzn::build(lzn::FamilyDescriptor::parse(family));
  lzn::StrategyContext ctx{fam, solver_options_from_env()};
  auto cop = lzn::make_cop_strategy(cops, ctx);
  auto rob = lzn::make_robber(robber, ctx);
  lzn::PlayOptions po;
  po.max_rounds = rounds;
  lzn::PlayResult result = lzn::play(*fam.graph, *cop, *rob, po);

  std::ostringstream os;
  os << "# lzn-transcript v1\n";
  os << "family " << fam.desc.to_string() << "\n";
  os << "cops " << cops << "\n";
  os << "robber " << robber << "\n";
  os << "seed " << seed << "\n";
  os << lzn::transcript_to_string(result);
  write_output(out_path, os.str());
  if (out_path.empty() || out_path == "-") return kExitOk;
  std::cout << (result.captured() ? "captured round " + std::to_string(result.rounds)
                                  : std::string("evaded"))
            << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, int max_n, int seeds) {
  lzn::VerifyOptions opts;
  opts.solver = solver_options_from_env();
  if (max_n > 0) {
    opts.seager_max_n = max_n;
    opts.subdivision_max_n = max_n;
  }
  if (seeds > 0) {
    opts.sn_random_seeds = seeds;
    opts.comb_random_seeds = seeds;
  }
  lzn::SuiteReport report = lzn::run_suite(suite, opts);
  std::cout << report.to_string();
  return report.ok() ? kExitOk : kExitVerificationFailure;
}

int cmd_prune(const std::string& family, int radius, const std::string& dot_path) {
  lzn::BuiltFamily fam = lzn::build(lzn::FamilyDescriptor::parse(family));
  std::ostringstream os;
  if (fam.finite) {
    if (!fam.finite->is_tree()) {
      std::cerr << "error: pruning needs a tree\n";
      return kExitUsage;
    }
    auto labels = lzn::recursive_pruning(*fam.finite, 0);
    for (int v = 0; v < fam.finite->vertex_count(); ++v)
      os << "vertex " << v << " label " << labels[static_cast<std::size_t>(v)] << "\n";
    std::cout << os.str();
    if (!dot_path.empty()) {
      std::vector<std::string> tags;
      for (int l : labels) tags.push_back(std::to_string(l));
      write_output(dot_path, lzn::graph_to_dot(*fam.finite, tags));
    }
    return kExitOk;
  }
  lzn::DecoratedPruning dp = lzn::recursive_pruning(fam, radius);
  std::vector<std::pair<lzn::VertexId, int>> rows(dp.labels.begin(), dp.labels.end());
  std::sort(rows.begin(), rows.end());
  for (const auto& [v, l] : rows) os << "vertex " << v.to_string() << " label " << l << "\n";
  if (fam.decorated) {
    lzn::EndInfo info = lzn::end_labels(*fam.decorated, dp);
    os << "alpha " << info.alpha << " ends " << info.attaining.size() << "\n";
  }
  std::cout << os.str();
  if (!dot_path.empty()) {
    lzn::Truncation t = lzn::truncate(*fam.graph, dp.valid_radius);
    std::vector<std::string> tags;
    for (const lzn::VertexId& v : t.to_vertex) {
      auto it = dp.labels.find(v);
      tags.push_back(it == dp.labels.end() ? "?" : std::to_string(it->second));
    }
    write_output(dot_path, lzn::graph_to_dot(t.graph, tags));
  }
  return kExitOk;
}

int cmd_export(const std::string& family, int radius, const std::string& out_path,
               const std::string& map_path) {
  lzn::BuiltFamily fam = lzn::build(lzn::FamilyDescriptor::parse(family));
  lzn::Truncation t = lzn::truncate(*fam.graph, radius);
  write_output(out_path, lzn::graph_to_string(t.graph));
  if (!map_path.empty()) write_output(map_path, lzn::correspondence_to_string(t));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization game toolkit: exact solving, strategy simulation, pruning"};
  app.require_subcommand(1);

  std::string family, cops, robber, out_path, table_path, dot_path, map_path, suite;
  int max_cops = 2, rounds = 100, radius = 8, max_n = 0, seeds = 0;
  std::uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "Exact localization number of a finite graph");
  solve->add_option("--family", family, "family descriptor (e.g. hat, file:g.txt)")->required();
  solve->add_option("--max-cops", max_cops, "largest cop count to try");
  solve->add_option("--win-table", table_path, "write the win table here");

  auto* simulate = app.add_subcommand("simulate", "Play one cop strategy against one robber");
  simulate->add_option("--family", family)->required();
  simulate->add_option("--cops", cops, "cop strategy name")->required();
  simulate->add_option("--robber", robber, "robber agent name")->required();
  simulate->add_option("--rounds", rounds);
  simulate->add_option("--seed", seed, "recorded in the transcript header");
  simulate->add_option("--out", out_path, "transcript file ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Run a named verification suite");
  verify->add_option("suite", suite, "seager | sn | comb | subdivision | ends | pruning")
      ->required();
  verify->add_option("--max-n", max_n, "size cap for enumeration suites");
  verify->add_option("--seeds", seeds, "random strategies per evasion suite");

  auto* prune = app.add_subcommand("prune", "Recursive pruning labels and end labels");
  prune->add_option("--family", family)->required();
  prune->add_option("--radius", radius, "trusted label radius for infinite families");
  prune->add_option("--dot", dot_path, "DOT export colored by label");

  auto* exp = app.add_subcommand("export", "Truncate a family and write it out");
  exp->add_option("--family", family)->required();
  exp->add_option("--radius", radius)->required();
  exp->add_option("--out", out_path, "graph file ('-' for stdout)");
  exp->add_option("--map", map_path, "sidecar index-to-address correspondence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(family, max_cops, table_path);
    if (simulate->parsed()) return cmd_simulate(family, cops, robber, rounds, seed, out_path);
    if (verify->parsed()) return cmd_verify(suite, max_n, seeds);
    if (prune->parsed()) return cmd_prune(family, radius, dot_path);
    if (exp->parsed()) return cmd_export(family, radius, out_path, map_path);
  } catch (const lzn::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
