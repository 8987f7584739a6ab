#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lzn/game.hpp"
#include "lzn/graph.hpp"

namespace lzn {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(long long explored)
      : std::runtime_error("state-space budget exceeded after exploring " +
                           std::to_string(explored) + " states"),
        explored(explored) {}
  long long explored;
};

struct IntVecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : v) h ^= std::hash<int>{}(x) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
  }
};

/// Per candidate-set state: whether the cops can force capture, the
/// worst-case probe count, and the witness probe that achieves it.
class WinTable {
 public:
  int intern(std::vector<int> state);
  std::optional<int> find(const std::vector<int>& state) const;
  const std::vector<int>& state(int id) const { return states_[static_cast<std::size_t>(id)]; }
  int state_count() const { return static_cast<int>(states_.size()); }

  bool cop_win(int id) const { return rank_[static_cast<std::size_t>(id)] >= 1; }
  int rank(int id) const { return rank_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& witness(int id) const {
    return witness_[static_cast<std::size_t>(id)];
  }
  void mark_win(int id, int rank, std::vector<int> witness);

  int initial_state = -1;
  bool initial_cop_win() const { return initial_state >= 0 && cop_win(initial_state); }

  /// Diagnostic lines: "state <vertices> -> win <rank> probe <tuple>" or
  /// "-> lose", sorted by state.
  std::string to_string() const;

 private:
  std::vector<std::vector<int>> states_;
  std::unordered_map<std::vector<int>, int, IntVecHash> index_;
  std::vector<int> rank_;  // -1 = robber win / not proven
  std::vector<std::vector<int>> witness_;
};

struct SolverOptions {
  long long state_budget = 2000000;
  long long node_budget = 20000000;  // directed-search expansion budget
};

/// Exact least-fixpoint solve for k cops from the all-vertices initial
/// state: a state is winning iff some probe tuple makes every
/// non-singleton class expand into a lower-rank winning state. States
/// that never enter the fixpoint are robber wins (infinite evasion).
/// The returned table covers the whole reachable state graph.
std::pair<bool, std::shared_ptr<WinTable>> cop_wins(const FiniteGraph& g, int k,
                                                    const SolverOptions& opts = {});

/// Sound one-sided variant for larger instances: depth-first witness
/// search with win memoization; revisiting a state on the current path
/// counts as a loss, so a positive answer is a genuine cop win. A
/// negative answer proves nothing. The table contains the witness-closed
/// set of proven states.
std::pair<bool, std::shared_ptr<WinTable>> cop_wins_directed(const FiniteGraph& g, int k,
                                                             const SolverOptions& opts = {});

/// Least k <= k_max with a k-cop win; nullopt when every k fails
/// ("exceeds k_max").
std::optional<int> localization_number(const FiniteGraph& g, int k_max,
                                       const SolverOptions& opts = {});

/// Plays each state's witness probe, tracking the candidate state from
/// observed distance vectors. Requires a winning initial state unless
/// fallback_reset is set, in which case unknown states restart from the
/// initial one (used when replaying against a different graph).
std::unique_ptr<CopStrategy> synthesize_strategy(const FiniteGraph& g, int k,
                                                 std::shared_ptr<const WinTable> table,
                                                 bool fallback_reset = false);

}  // namespace lzn
