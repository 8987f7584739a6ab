#include "lzn/solver.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace lzn {

int WinTable::intern(std::vector<int> state) {
  auto it = index_.find(state);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(states_.size());
  index_.emplace(state, id);
  states_.push_back(std::move(state));
  rank_.push_back(-1);
  witness_.emplace_back();
  return id;
}

std::optional<int> WinTable::find(const std::vector<int>& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void WinTable::mark_win(int id, int rank, std::vector<int> witness) {
  rank_[static_cast<std::size_t>(id)] = rank;
  witness_[static_cast<std::size_t>(id)] = std::move(witness);
}

std::string WinTable::to_string() const {
  std::vector<int> order(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return states_[static_cast<std::size_t>(a)] < states_[static_cast<std::size_t>(b)];
  });
  std::ostringstream os;
  for (int id : order) {
    os << "state";
    for (int v : states_[static_cast<std::size_t>(id)]) os << " " << v;
    if (cop_win(id)) {
      os << " -> win " << rank(id) << " probe";
      for (int v : witness(id)) os << " " << v;
    } else {
      os << " -> lose";
    }
    os << "\n";
  }
  return os.str();
}

namespace {

struct Arena {
  const FiniteGraph& g;
  std::vector<std::vector<int>> dist;  // all-pairs

  explicit Arena(const FiniteGraph& graph) : g(graph) {
    if (!g.is_connected()) throw std::invalid_argument("solver requires a connected graph");
    dist.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) dist.push_back(g.bfs_distances(v));
  }

  std::vector<int> expand(const std::vector<int>& set) const {
    std::vector<int> out = set;
    for (int x : set) {
      const auto& nb = g.neighbors(x);
      out.insert(out.end(), nb.begin(), nb.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::map<std::vector<int>, std::vector<int>> partition(const std::vector<int>& set,
                                                         const std::vector<int>& probe) const {
    std::map<std::vector<int>, std::vector<int>> classes;
    std::vector<int> key(probe.size());
    for (int x : set) {
      for (std::size_t i = 0; i < probe.size(); ++i)
        key[i] = dist[static_cast<std::size_t>(probe[i])][static_cast<std::size_t>(x)];
      classes[key].push_back(x);
    }
    return classes;
  }

  std::vector<int> initial_state() const {
    std::vector<int> all(static_cast<std::size_t>(g.vertex_count()));
    for (int i = 0; i < g.vertex_count(); ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }
};

// Nondecreasing k-tuples over 0..n-1; repeats allowed since probe order
// is irrelevant to the partition.
void for_each_probe(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> tuple(static_cast<std::size_t>(k), 0);
  while (true) {
    fn(tuple);
    int i = k - 1;
    while (i >= 0 && tuple[static_cast<std::size_t>(i)] == n - 1) --i;
    if (i < 0) return;
    int v = ++tuple[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) tuple[static_cast<std::size_t>(j)] = v;
  }
}

}  // namespace

std::pair<bool, std::shared_ptr<WinTable>> cop_wins(const FiniteGraph& g, int k,
                                                    const SolverOptions& opts) {
  if (k < 1) throw std::invalid_argument("need at least one cop");
  Arena arena(g);
  auto table = std::make_shared<WinTable>();
  int initial = table->intern(arena.initial_state());
  table->initial_state = initial;

  // Forward closure. States with an all-singleton probe are rank-1 wins
  // and terminal: no options are recorded for them.
  struct Option {
    std::vector<int> probe;
    std::vector<int> succs;  // deduped state ids
    int pending = 0;
  };
  std::vector<std::vector<Option>> options;               // by state id
  std::vector<std::vector<std::pair<int, int>>> parents;  // succ -> (state, option)

  std::deque<int> frontier{initial};
  options.emplace_back();
  parents.emplace_back();
  std::vector<int> rank1;

  while (!frontier.empty()) {
    int id = frontier.front();
    frontier.pop_front();
    const std::vector<int> state = table->state(id);

    bool won = false;
    std::set<std::vector<int>> seen_succ_sets;
    std::vector<Option> opts_here;
    for_each_probe(g.vertex_count(), k, [&](const std::vector<int>& probe) {
      if (won) return;
      auto classes = arena.partition(state, probe);
      std::vector<int> succs;
      for (const auto& [vec, members] : classes) {
        (void)vec;
        if (members.size() < 2) continue;
        std::vector<int> next = arena.expand(members);
        int prev_count = table->state_count();
        int sid = table->intern(std::move(next));
        if (sid >= prev_count) {
          if (table->state_count() > opts.state_budget)
            throw BudgetExceeded(table->state_count());
          options.emplace_back();
          parents.emplace_back();
          frontier.push_back(sid);
        }
        succs.push_back(sid);
      }
      std::sort(succs.begin(), succs.end());
      succs.erase(std::unique(succs.begin(), succs.end()), succs.end());
      if (succs.empty()) {
        table->mark_win(id, 1, probe);
        rank1.push_back(id);
        won = true;
        return;
      }
      if (seen_succ_sets.insert(succs).second) {
        Option o;
        o.probe = probe;
        o.succs = std::move(succs);
        opts_here.push_back(std::move(o));
      }
    });
    if (!won) options[static_cast<std::size_t>(id)] = std::move(opts_here);
  }

  for (std::size_t id = 0; id < options.size(); ++id) {
    for (std::size_t oi = 0; oi < options[id].size(); ++oi) {
      Option& o = options[id][oi];
      o.pending = static_cast<int>(o.succs.size());
      for (int s : o.succs)
        parents[static_cast<std::size_t>(s)].emplace_back(static_cast<int>(id),
                                                          static_cast<int>(oi));
    }
  }

  // Backward propagation in nondecreasing rank order: when an option's
  // last successor completes at rank r, its owner wins at rank r + 1.
  std::vector<std::vector<int>> buckets(2);
  buckets[1] = rank1;
  for (int r = 1; r < static_cast<int>(buckets.size()); ++r) {
    auto& bucket = buckets[static_cast<std::size_t>(r)];
    for (std::size_t bi = 0; bi < bucket.size(); ++bi) {
      int won_id = bucket[bi];
      for (auto [pid, oi] : parents[static_cast<std::size_t>(won_id)]) {
        if (table->cop_win(pid)) continue;
        Option& o = options[static_cast<std::size_t>(pid)][static_cast<std::size_t>(oi)];
        if (--o.pending == 0) {
          table->mark_win(pid, r + 1, o.probe);
          if (static_cast<int>(buckets.size()) <= r + 1)
            buckets.resize(static_cast<std::size_t>(r + 2));
          buckets[static_cast<std::size_t>(r + 1)].push_back(pid);
        }
      }
    }
  }

  return {table->initial_cop_win(), table};
}

namespace {

// Probe order for the directed search: vertices at or near the
// candidate set first; for k = 2, a vertex paired with one of its
// neighbors comes before arbitrary near pairs.
std::vector<std::vector<int>> directed_probe_order(const Arena& arena,
                                                   const std::vector<int>& state, int k) {
  const FiniteGraph& g = arena.g;
  std::vector<int> near = arena.expand(arena.expand(state));
  std::vector<std::vector<int>> probes;
  if (k == 1) {
    std::vector<bool> in_near(static_cast<std::size_t>(g.vertex_count()), false);
    for (int x : near) {
      probes.push_back({x});
      in_near[static_cast<std::size_t>(x)] = true;
    }
    for (int x = 0; x < g.vertex_count(); ++x)
      if (!in_near[static_cast<std::size_t>(x)]) probes.push_back({x});
    return probes;
  }
  std::set<std::vector<int>> seen;
  auto push = [&](int a, int b) {
    std::vector<int> p{std::min(a, b), std::max(a, b)};
    while (static_cast<int>(p.size()) < k) p.push_back(p.back());
    if (seen.insert(p).second) probes.push_back(std::move(p));
  };
  for (int x : near)
    for (int y : g.neighbors(x)) push(x, y);
  for (int x : near) push(x, x);
  for (int x : near)
    for (int y : near) push(x, y);
  return probes;
}

struct DirectedSearch {
  const Arena& arena;
  WinTable& table;
  int k;
  long long budget;
  long long used = 0;
  std::set<std::vector<int>> on_stack;

  bool prove(const std::vector<int>& state) {
    if (state.size() == 1) return true;  // probing the lone candidate captures
    if (auto id = table.find(state); id && table.cop_win(*id)) return true;
    if (on_stack.count(state)) return false;  // looping favors the robber
    if (++used > budget) throw BudgetExceeded(used);
    on_stack.insert(state);
    bool proven = false;
    for (const auto& probe : directed_probe_order(arena, state, k)) {
      auto classes = arena.partition(state, probe);
      std::vector<std::vector<int>> next;
      for (const auto& [vec, members] : classes) {
        (void)vec;
        if (members.size() >= 2) next.push_back(arena.expand(members));
      }
      std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
        return a.size() < b.size() || (a.size() == b.size() && a < b);
      });
      bool ok = true;
      for (const auto& s : next)
        if (!prove(s)) {
          ok = false;
          break;
        }
      if (ok) {
        int id = table.intern(state);
        int r = 1;
        for (const auto& s : next)
          if (auto sid = table.find(s); sid && table.cop_win(*sid))
            r = std::max(r, table.rank(*sid) + 1);
        table.mark_win(id, r, probe);
        proven = true;
        break;
      }
    }
    on_stack.erase(state);
    return proven;
  }
};

}  // namespace

std::pair<bool, std::shared_ptr<WinTable>> cop_wins_directed(const FiniteGraph& g, int k,
                                                             const SolverOptions& opts) {
  if (k < 1) throw std::invalid_argument("need at least one cop");
  Arena arena(g);
  auto table = std::make_shared<WinTable>();
  DirectedSearch search{arena, *table, k, opts.node_budget, 0, {}};
  std::vector<int> initial = arena.initial_state();
  bool win = search.prove(initial);
  table->initial_state = table->intern(initial);
  return {win, table};
}

std::optional<int> localization_number(const FiniteGraph& g, int k_max,
                                       const SolverOptions& opts) {
  for (int k = 1; k <= k_max; ++k)
    if (cop_wins(g, k, opts).first) return k;
  return std::nullopt;
}

namespace {

class SynthesizedCop final : public CopStrategy {
 public:
  SynthesizedCop(FiniteGraph g, int k, std::shared_ptr<const WinTable> table,
                 bool fallback_reset)
      : g_(std::move(g)), k_(k), table_(std::move(table)), fallback_(fallback_reset) {
    if (table_->initial_state < 0)
      throw std::invalid_argument("win table has no initial state");
    if (!table_->initial_cop_win())
      throw std::runtime_error("cannot synthesize a strategy from a losing initial state");
    reset();
  }

  std::string name() const override { return "solver:" + std::to_string(k_); }
  int cop_count() const override { return k_; }

  ProbeTuple next_probe(const VisibleHistory& h) override {
    sync(h);
    ProbeTuple p;
    if (captured_) {
      p.assign(static_cast<std::size_t>(k_), VertexId::from_index(capture_probe_));
      return p;
    }
    for (int v : table_->witness(current_)) p.push_back(VertexId::from_index(v));
    return p;
  }

  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<SynthesizedCop>(g_, k_, table_, fallback_);
  }

 private:
  void reset() {
    current_ = table_->initial_state;
    captured_ = false;
    synced_rounds_ = 0;
  }

  // Pure function of the visible history: replays the observed vectors
  // through the table, so replicas land in the same state.
  void sync(const VisibleHistory& h) {
    if (static_cast<int>(h.size()) < synced_rounds_) reset();
    for (std::size_t r = static_cast<std::size_t>(synced_rounds_); r < h.size(); ++r)
      advance(h[r]);
    synced_rounds_ = static_cast<int>(h.size());
  }

  void advance(const VisibleRound& round) {
    if (captured_) return;
    const std::vector<int>& state = table_->state(current_);
    std::vector<int> cls;
    for (int x : state) {
      bool match = true;
      for (std::size_t i = 0; i < round.probe.size(); ++i) {
        if (!round.probe[i].is_index() ||
            g_.distance(round.probe[i].index(), x) != round.dist[i]) {
          match = false;
          break;
        }
      }
      if (match) cls.push_back(x);
    }
    if (cls.size() == 1) {
      captured_ = true;  // game over; keep pointing at the capture vertex
      capture_probe_ = cls.front();
      return;
    }
    if (cls.empty()) {
      if (fallback_) {
        current_ = table_->initial_state;
        return;
      }
      throw std::runtime_error("observed distances are inconsistent with the win table");
    }
    std::vector<int> next = cls;
    for (int x : cls) {
      const auto& nb = g_.neighbors(x);
      next.insert(next.end(), nb.begin(), nb.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    auto id = table_->find(next);
    if (!id || !table_->cop_win(*id)) {
      if (fallback_) {
        current_ = table_->initial_state;
        return;
      }
      throw std::runtime_error("reached a state outside the winning region");
    }
    current_ = *id;
  }

  FiniteGraph g_;
  int k_;
  std::shared_ptr<const WinTable> table_;
  bool fallback_;
  int current_ = -1;
  bool captured_ = false;
  int capture_probe_ = 0;
  int synced_rounds_ = 0;
};

}  // namespace

std::unique_ptr<CopStrategy> synthesize_strategy(const FiniteGraph& g, int k,
                                                 std::shared_ptr<const WinTable> table,
                                                 bool fallback_reset) {
  return std::make_unique<SynthesizedCop>(g, k, std::move(table), fallback_reset);
}

}  // namespace lzn
