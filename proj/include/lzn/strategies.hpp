#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lzn/families.hpp"
#include "lzn/game.hpp"
#include "lzn/solver.hpp"

namespace lzn {

// --- cop strategies -------------------------------------------------------

/// One cop parked on the ray's endpoint: the reported distance names the
/// robber's vertex outright.
std::unique_ptr<CopStrategy> make_ray_one_cop(const BuiltFamily& family);

/// The n-cop chase on the subdivided branching tree: probe blocks of
/// child branch nodes under the current root, descend toward the branch
/// the distances single out, and pin down path robbers with a root+child
/// double probe. `cops` defaults to n; smaller cop counts stretch the
/// probing blocks.
std::unique_ptr<CopStrategy> make_sn_cop(const BuiltFamily& family, int n, int cops = -1);

/// Two cops on a finite tree: one holds the pivot, the other scans its
/// neighbors; whoever scans the robber's subtree becomes the new pivot
/// holder. Captures every robber and never lets one sit on the pivot.
std::unique_ptr<CopStrategy> make_push_cop(const BuiltFamily& family, const VertexId& pivot);

/// Two cops on a tree with finitely many ends: ray arithmetic splits the
/// tree at the pivot, identifies the robber's component, and recurses
/// into it with one fewer end, bottoming out in the pivot-push sweep.
std::unique_ptr<CopStrategy> make_finite_ends_two_cop(const BuiltFamily& family,
                                                      const VertexId& pivot);

/// Single cop on a subdivided graph: locate the robber's level band from
/// the base distance, trap it on one stretched edge, then close in via
/// the level scans.
std::unique_ptr<CopStrategy> make_subdivision_one_cop(const BuiltFamily& family);
std::unique_ptr<CopStrategy> make_subdivision_one_cop(
    std::shared_ptr<const SubdividedFinite> sub);

/// Seeded probe noise: on finite graphs uniform vertices, on lazy trees
/// a random depth then a random path. Ignores observations entirely, so
/// replay is trivially deterministic.
std::unique_ptr<CopStrategy> make_random_cop(const BuiltFamily& family, int k,
                                             std::uint64_t seed, int base_radius = 8);

/// Constant probe tuple every round.
std::unique_ptr<CopStrategy> make_fixed_cop(std::vector<VertexId> probe);

/// Plays a fixed probe script, looping when it runs out.
std::unique_ptr<CopStrategy> make_script_cop(std::string label, std::vector<ProbeTuple> script);

/// Current roots of an sn-cop instance per round, recovered by replay;
/// roots[r] is the root in force when round r's probe was produced.
std::vector<TreeAddress> sn_cop_roots(const CopStrategy& proto, const VisibleHistory& h);

/// Replays a strategy synthesized on a truncation against the infinite
/// family, resetting its table state whenever observations leave it.
std::unique_ptr<CopStrategy> make_truncation_replay_cop(const BuiltFamily& family, int k,
                                                        int radius,
                                                        const SolverOptions& opts = {});

// --- robber agents ----------------------------------------------------------

struct ConcretePolicy {
  enum class Kind { Stay, Flee, Walk, Rush };
  Kind kind = Kind::Stay;
  std::uint64_t seed = 0;           // Walk
  std::optional<VertexId> target;   // Rush
};

/// Concrete robber with a start vertex and a simple movement policy:
/// stay put, greedily flee the last probes, random-walk, or rush a
/// target vertex.
std::unique_ptr<RobberAgent> make_concrete_robber(VertexId start,
                                                  ConcretePolicy policy = {});

/// Omniscient evader for the subdivided branching tree against n-1
/// cops: starts adjacent to the root toward a branch the cops will not
/// probe for n rounds, walks branch to branch, and re-selects via
/// lookahead at every branch node. Raises if the lookahead window shows
/// every component probed.
std::unique_ptr<RobberAgent> make_sn_robber(const BuiltFamily& family, int n);

/// Phantom evader on the comb: keeps a spine vertex plus a second
/// candidate alive forever by the four-way case split on the cop's
/// probe side.
std::unique_ptr<RobberAgent> make_comb_robber(const BuiltFamily& family);

/// Phantom that always keeps the largest class, ties broken by smallest
/// canonical vertex. On infinite graphs the first class is picked at the
/// declared horizon.
std::unique_ptr<RobberAgent> make_greedy_phantom(int horizon = 3);

/// Tracked spine vertex of the comb robber, for invariant checks.
int comb_robber_tracked_spine(const RobberAgent& agent);

// --- embedding certificate ---------------------------------------------------

/// Root and arity certificate for an evasion subtree inside the
/// increasing-arity tree: every vertex at or below the returned root has
/// at least `required_arity` children.
struct OmegaEmbedding {
  int required_arity = 0;
  TreeAddress subtree_root;
  TreeAddress embed(const TreeAddress& a) const;
};
OmegaEmbedding omega_subtree_reduction(int m);

// --- registry -----------------------------------------------------------------

struct StrategyContext {
  BuiltFamily family;
  SolverOptions solver;
};

/// Names: ray-one-cop | sn-cop:<n>[:<k>] | push:<pivot> | ends-two-cop |
/// subdivision-one-cop | solver:<k> | random:<k>:<seed> |
/// fixed:<v>[,<v>...]
std::unique_ptr<CopStrategy> make_cop_strategy(const std::string& name,
                                               const StrategyContext& ctx);

/// Names: concrete:at=<v>[:stay|:flee|:walk=<seed>|:rush=<v>] |
/// sn-robber:<n> | comb-robber | phantom-greedy[:<horizon>]
std::unique_ptr<RobberAgent> make_robber(const std::string& name, const StrategyContext& ctx);

}  // namespace lzn
