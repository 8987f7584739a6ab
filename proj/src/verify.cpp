#include "lzn/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "lzn/families.hpp"
#include "lzn/game.hpp"
#include "lzn/pruning.hpp"
#include "lzn/strategies.hpp"
#include "lzn/trees.hpp"

namespace lzn {

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string SuiteReport::to_string() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    os << (c.pass ? "pass" : "FAIL") << " " << c.name;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  os << (ok() ? "suite " + suite + ": pass" : "suite " + suite + ": FAIL") << "\n";
  return os.str();
}

std::vector<std::string> suite_names() {
  return {"seager", "sn", "comb", "subdivision", "ends", "pruning"};
}

namespace {

struct Collector {
  SuiteReport report;
  void add(std::string name, bool pass, std::string detail = "") {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  }
  SuiteReport finish() {
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return std::move(report);
  }
};

// Frozen tree counts per vertex count, from the enumeration oracle.
const std::vector<int> kTreeCounts = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};

SuiteReport run_seager(const VerifyOptions& opts) {
  Collector out;
  out.report.suite = "seager";
  for (int n = 1; n <= opts.seager_max_n; ++n) {
    auto trees = enumerate_trees(n);
    bool count_ok = static_cast<int>(trees.size()) == kTreeCounts[static_cast<std::size_t>(n)];
    out.add("seager:count:n=" + std::to_string(n), count_ok,
            std::to_string(trees.size()) + " trees");
    int mismatches = 0;
    for (const FiniteGraph& t : trees) {
      int expected = contains_hat(t) ? 2 : 1;
      auto zeta = localization_number(t, 2, opts.solver);
      if (!zeta || *zeta != expected) ++mismatches;
    }
    out.add("seager:oracle:n=" + std::to_string(n), mismatches == 0,
            std::to_string(mismatches) + " mismatches");
  }
  return out.finish();
}

// Capture sweep of a cop strategy over every start within `radius`,
// across the listed movement policies.
struct SweepResult {
  bool all_captured = true;
  int runs = 0;
  std::vector<PlayResult> transcripts;
};

SweepResult capture_sweep(const BuiltFamily& family, const CopStrategy& proto, int radius,
                          int max_rounds, const std::vector<ConcretePolicy>& policies,
                          bool keep_transcripts = false) {
  SweepResult res;
  auto starts = ball(*family.graph, family.graph->root(), radius);
  for (const VertexId& start : starts) {
    for (const ConcretePolicy& policy : policies) {
      auto cop = proto.fresh();
      auto robber = make_concrete_robber(start, policy);
      PlayOptions po;
      po.max_rounds = max_rounds;
      PlayResult r = play(*family.graph, *cop, *robber, po);
      ++res.runs;
      if (!r.captured()) res.all_captured = false;
      if (keep_transcripts || !r.captured()) res.transcripts.push_back(std::move(r));
    }
  }
  return res;
}

std::vector<ConcretePolicy> standard_policies() {
  ConcretePolicy stay;
  ConcretePolicy flee;
  flee.kind = ConcretePolicy::Kind::Flee;
  ConcretePolicy walk1;
  walk1.kind = ConcretePolicy::Kind::Walk;
  walk1.seed = 11;
  ConcretePolicy walk2;
  walk2.kind = ConcretePolicy::Kind::Walk;
  walk2.seed = 29;
  return {stay, flee, walk1, walk2};
}

// Progress of the sn chase: every time the strategy moves its root, the
// robber-to-root distance must have dropped.
bool sn_progress_holds(const BuiltFamily& family, const CopStrategy& proto,
                       const PlayResult& r) {
  auto roots = sn_cop_roots(proto, r.visible());
  std::optional<TreeAddress> prev_root;
  int prev_dist = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!r.transcript[i].robber) return false;
    int d = distance(*family.graph, VertexId::from_address(roots[i]),
                     *r.transcript[i].robber);
    if (prev_root && roots[i] != *prev_root) {
      if (d > prev_dist - 1) return false;
      prev_root = roots[i];
      prev_dist = d;
    } else if (!prev_root) {
      prev_root = roots[i];
      prev_dist = d;
    }
  }
  return true;
}

bool evades(const Graph& g, CopStrategy& cop, RobberAgent& robber, int rounds,
            std::string* why = nullptr) {
  PlayOptions po;
  po.max_rounds = rounds;
  po.exact_cap = 4000;
  po.keep_size = 128;
  PlayResult r = play(g, cop, robber, po);
  if (r.captured()) {
    if (why) *why = "captured round " + std::to_string(r.rounds);
    return false;
  }
  for (const RoundRecord& rec : r.transcript) {
    if (rec.candidates < 2) {
      if (why) *why = "candidate count dropped below 2";
      return false;
    }
  }
  return true;
}

SuiteReport run_sn(const VerifyOptions& opts) {
  Collector out;
  out.report.suite = "sn";
  for (int n : {2, 3}) {
    BuiltFamily fam = build(FamilyDescriptor::sn(n));
    std::string tag = "sn:n=" + std::to_string(n);

    // Upper bound: n cops capture everyone near the root.
    auto cop = make_sn_cop(fam, n);
    SweepResult sweep = capture_sweep(fam, *cop, 3 * n, 50 * n, standard_policies(), true);
    out.add(tag + ":capture", sweep.all_captured, std::to_string(sweep.runs) + " runs");
    bool progress = true;
    for (const PlayResult& r : sweep.transcripts)
      if (!sn_progress_holds(fam, *cop, r)) progress = false;
    out.add(tag + ":progress", progress);

    // Lower bound: the omniscient robber evades n-1 cops.
    int rounds = 200;
    {
      auto weak_cop = make_sn_cop(fam, n, n - 1);
      auto robber = make_sn_robber(fam, n);
      std::string why;
      bool ok = evades(*fam.graph, *weak_cop, *robber, rounds, &why);
      out.add(tag + ":evade:sn-cop", ok, why);
    }
    {
      int failures = 0;
      for (int seed = 1; seed <= opts.sn_random_seeds; ++seed) {
        auto rc = make_random_cop(fam, n - 1, static_cast<std::uint64_t>(seed));
        auto robber = make_sn_robber(fam, n);
        if (!evades(*fam.graph, *rc, *robber, rounds)) ++failures;
      }
      out.add(tag + ":evade:random", failures == 0,
              std::to_string(opts.sn_random_seeds) + " seeds, " + std::to_string(failures) +
                  " failures");
    }
    {
      auto replay = make_truncation_replay_cop(fam, n - 1, 3 * n, opts.solver);
      auto robber = make_sn_robber(fam, n);
      std::string why;
      bool ok = evades(*fam.graph, *replay, *robber, rounds, &why);
      out.add(tag + ":evade:solver-replay", ok, why);
    }
  }
  return out.finish();
}

std::vector<std::unique_ptr<CopStrategy>> comb_suite(const BuiltFamily& fam, int seeds) {
  std::vector<std::unique_ptr<CopStrategy>> cops;
  // Outward spine sweep, leaf sweep, and a mixed sweep.
  std::vector<ProbeTuple> spine, leaves, mixed;
  for (int p = 0; p <= 25; ++p) {
    spine.push_back({VertexId::from_address(comb_spine_address(p))});
    spine.push_back({VertexId::from_address(comb_spine_address(-p))});
    leaves.push_back({VertexId::from_address(comb_leaf_address(p))});
    leaves.push_back({VertexId::from_address(comb_leaf_address(-p))});
    mixed.push_back({VertexId::from_address(comb_spine_address(p))});
    mixed.push_back({VertexId::from_address(comb_leaf_address(-p))});
  }
  cops.push_back(make_script_cop("spine-sweep", std::move(spine)));
  cops.push_back(make_script_cop("leaf-sweep", std::move(leaves)));
  cops.push_back(make_script_cop("mixed-sweep", std::move(mixed)));
  cops.push_back(make_fixed_cop({VertexId::from_address(comb_spine_address(0))}));
  // Single-cop pivot pusher: alternates the pivot with its neighbors and
  // walks toward whichever side answered closer.
  {
    std::vector<ProbeTuple> push;
    for (int p = 0; p <= 12; ++p) {
      push.push_back({VertexId::from_address(comb_spine_address(p))});
      push.push_back({VertexId::from_address(comb_leaf_address(p))});
      push.push_back({VertexId::from_address(comb_spine_address(p + 1))});
    }
    cops.push_back(make_script_cop("pivot-push", std::move(push)));
  }
  for (int seed = 1; seed <= seeds; ++seed)
    cops.push_back(make_random_cop(fam, 1, static_cast<std::uint64_t>(seed)));
  return cops;
}

bool comb_invariant(const PlayResult& r) {
  for (const RoundRecord& rec : r.transcript) {
    if (!rec.tracked) return false;
    int spine = 0;
    for (const VertexId& v : *rec.tracked) {
      auto c = comb_coord(v.address());
      if (c && !c->leaf) ++spine;
    }
    if (spine < 1 || rec.tracked->size() < 2) return false;
  }
  return true;
}

SuiteReport run_comb(const VerifyOptions& opts) {
  Collector out;
  out.report.suite = "comb";
  BuiltFamily fam = build(FamilyDescriptor::comb());
  int failures = 0;
  int invariant_failures = 0;
  int runs = 0;
  for (auto& cop : comb_suite(fam, opts.comb_random_seeds)) {
    auto robber = make_comb_robber(fam);
    PlayOptions po;
    po.max_rounds = 100;
    po.record_sets = true;
    PlayResult r = play(*fam.graph, *cop, *robber, po);
    ++runs;
    if (r.captured()) ++failures;
    if (!comb_invariant(r)) ++invariant_failures;
  }
  out.add("comb:evades", failures == 0, std::to_string(runs) + " cops");
  out.add("comb:invariant", invariant_failures == 0);

  // Finite sanity: truncations are hat-free and one-cop localizable.
  bool hatfree = true, zeta_one = true;
  for (int radius = 1; radius <= 5; ++radius) {
    Truncation t = truncate(*fam.graph, radius);
    if (contains_hat(t.graph)) hatfree = false;
    auto zeta = localization_number(t.graph, 2, opts.solver);
    if (!zeta || *zeta != 1) zeta_one = false;
  }
  out.add("comb:truncations-hat-free", hatfree);
  out.add("comb:truncations-zeta-1", zeta_one);
  return out.finish();
}

// Connected graphs on <= max_n vertices, one per isomorphism class,
// deduplicated by the minimum adjacency bitmask over all relabelings.
std::vector<FiniteGraph> connected_graphs_up_to(int max_n) {
  std::vector<FiniteGraph> out;
  for (int n = 1; n <= max_n; ++n) {
    int pairs = n * (n - 1) / 2;
    std::set<std::uint64_t> seen;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      FiniteGraph g(n);
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (mask & (1ULL << bit)) g.add_edge(i, j);
      if (!g.is_connected()) continue;
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
      std::uint64_t best = ~0ULL;
      do {
        std::uint64_t m = 0;
        int b = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j, ++b)
            if (g.has_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]))
              m |= 1ULL << b;
        best = std::min(best, m);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (seen.insert(best).second) out.push_back(std::move(g));
    }
  }
  return out;
}

SuiteReport run_subdivision(const VerifyOptions& opts) {
  Collector out;
  out.report.suite = "subdivision";
  auto graphs = connected_graphs_up_to(opts.subdivision_max_n);
  bool plan_ok = true, zeta_ok = true, capture_ok = true, phantom_ok = true;
  int count = 0;
  for (const FiniteGraph& g : graphs) {
    ++count;
    SubdividedFinite sub = localize_subdivision(g);
    // The plan's arithmetic against actual distances in the result.
    auto dist = sub.gprime.bfs_distances(sub.base);
    for (std::size_t i = 0; i < sub.levels.size(); ++i) {
      for (int w : sub.levels[i])
        if (dist[static_cast<std::size_t>(w)] != sub.plan.D[i]) plan_ok = false;
    }
    for (std::size_t i = 0; i + 1 < sub.levels.size(); ++i) {
      int expect = 2 + static_cast<int>(sub.levels[i].size() + sub.levels[i + 1].size());
      if (sub.plan.s[i] != expect) plan_ok = false;
    }

    // The solver's confirmation that one cop wins on the result.
    bool win = false;
    if (sub.gprime.vertex_count() <= 45) {
      win = cop_wins(sub.gprime, 1, opts.solver).first;
    } else {
      win = cop_wins_directed(sub.gprime, 1, opts.solver).first;
    }
    if (!win) zeta_ok = false;

    // The constructive strategy, exhaustively.
    BuiltFamily fam;
    fam.desc = FamilyDescriptor::subdivided(FamilyDescriptor::finite_given(g));
    auto subp = std::make_shared<SubdividedFinite>(sub);
    fam.subdivided = subp;
    fam.finite = subp->gprime;
    fam.graph = std::make_shared<FiniteGraphView>(*fam.finite);
    auto cop = make_subdivision_one_cop(subp);
    int max_rounds = 8 * sub.gprime.vertex_count() + 60;
    ConcretePolicy stay;
    ConcretePolicy flee;
    flee.kind = ConcretePolicy::Kind::Flee;
    SweepResult sweep = capture_sweep(fam, *cop, sub.gprime.vertex_count(), max_rounds,
                                      {stay, flee});
    if (!sweep.all_captured) capture_ok = false;

    auto phantom = make_greedy_phantom();
    auto cop2 = cop->fresh();
    PlayOptions po;
    po.max_rounds = max_rounds;
    PlayResult r = play(*fam.graph, *cop2, *phantom, po);
    if (!r.captured()) phantom_ok = false;
  }
  out.add("subdivision:graphs", count > 0, std::to_string(count) + " graphs");
  out.add("subdivision:plan-distances", plan_ok);
  out.add("subdivision:zeta-1", zeta_ok);
  out.add("subdivision:captures", capture_ok);
  out.add("subdivision:phantom", phantom_ok);
  return out.finish();
}

// A double ray with small periodic decorations.
DecoratedRaySpec decorated_instance() {
  DecoratedRaySpec spec;
  spec.core = FiniteGraph(1);
  spec.root = 0;
  spec.spine_attach = {0, 0};
  spec.decorate = [](int, int pos) {
    if (pos % 3 == 0) return DecorationAttachment{FiniteGraph(2, {{0, 1}}), 0};
    if (pos % 3 == 1) return DecorationAttachment{FiniteGraph(1), 0};
    return DecorationAttachment{};
  };
  return spec;
}

// The strengthened claim: a robber standing on the strategy's pivot at
// probe time is captured by that very probe.
bool pivot_claim_holds(const PlayResult& r, const VertexId& pivot) {
  for (std::size_t i = 0; i < r.transcript.size(); ++i) {
    const RoundRecord& rec = r.transcript[i];
    if (rec.robber && *rec.robber == pivot) {
      bool captured_now = r.captured() && r.rounds == static_cast<int>(i) + 1;
      if (!captured_now) return false;
    }
  }
  return true;
}

SuiteReport run_ends(const VerifyOptions&) {
  Collector out;
  out.report.suite = "ends";
  std::vector<std::pair<std::string, BuiltFamily>> instances;
  instances.emplace_back("comb", build(FamilyDescriptor::comb()));
  instances.emplace_back("decorated", build(FamilyDescriptor::decorated_ray(decorated_instance())));
  instances.emplace_back("double-ray", build(FamilyDescriptor::double_ray()));
  for (auto& [label, fam] : instances) {
    VertexId pivot = fam.graph->root();
    auto cop = make_finite_ends_two_cop(fam, pivot);
    int radius = label == "double-ray" ? 10 : 8;
    auto policies = standard_policies();
    ConcretePolicy rush;
    rush.kind = ConcretePolicy::Kind::Rush;
    rush.target = pivot;
    policies.push_back(rush);
    SweepResult sweep = capture_sweep(fam, *cop, radius, 300, policies, true);
    out.add("ends:" + label + ":capture", sweep.all_captured,
            std::to_string(sweep.runs) + " runs");
    bool claim = true;
    for (const PlayResult& r : sweep.transcripts)
      if (!pivot_claim_holds(r, pivot)) claim = false;
    out.add("ends:" + label + ":pivot-claim", claim);
  }
  return out.finish();
}

SuiteReport run_pruning(const VerifyOptions&) {
  Collector out;
  out.report.suite = "pruning";

  // Comb labels: leaves 0, spine 1, root 2.
  BuiltFamily comb = build(FamilyDescriptor::comb());
  DecoratedPruning dp = recursive_pruning(comb, 8);
  bool labels_ok = true;
  for (const auto& [v, l] : dp.labels) {
    auto c = comb_coord(v.address());
    if (!c) {
      labels_ok = false;
      continue;
    }
    int expect = c->leaf ? 0 : (c->pos == 0 ? 2 : 1);
    if (l != expect) labels_ok = false;
  }
  out.add("pruning:comb-labels", labels_ok);
  EndInfo info = end_labels(*comb.decorated, dp);
  out.add("pruning:comb-alpha", info.alpha == 1 && info.attaining.size() == 2);
  auto [alpha, depth] = essential_alpha(*comb.decorated, dp);
  out.add("pruning:comb-essential", alpha == 1 && depth == 1);

  // Random finite trees: the recurrence against the literal stages, and
  // monotonicity along the tree order.
  std::mt19937_64 rng(2024);
  bool agree = true, monotone = true;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + static_cast<int>(rng() % 29);
    std::vector<int> seq;
    for (int i = 0; i + 2 < n; ++i) seq.push_back(static_cast<int>(rng() % n));
    FiniteGraph t = tree_from_pruefer(seq, n);
    int root = static_cast<int>(rng() % n);
    auto fast = recursive_pruning(t, root);
    auto slow = recursive_pruning_by_stages(t, root);
    if (fast != slow) agree = false;
    for (int w = 0; w < n; ++w)
      for (int u : t.neighbors(w)) {
        if (tree_order_leq(t, root, u, w) &&
            fast[static_cast<std::size_t>(u)] < fast[static_cast<std::size_t>(w)])
          monotone = false;
      }
  }
  out.add("pruning:stage-agreement", agree, "1000 random trees");
  out.add("pruning:monotone", monotone);
  return out.finish();
}

}  // namespace

SuiteReport run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "seager") return run_seager(opts);
  if (name == "sn") return run_sn(opts);
  if (name == "comb") return run_comb(opts);
  if (name == "subdivision") return run_subdivision(opts);
  if (name == "ends") return run_ends(opts);
  if (name == "pruning") return run_pruning(opts);
  throw std::invalid_argument("unknown verification suite: " + name);
}

}  // namespace lzn
