#include "lzn/game.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lzn {

CandidateSet CandidateSet::all_vertices() {
  CandidateSet c;
  c.all_ = true;
  return c;
}

CandidateSet CandidateSet::of(std::vector<VertexId> sorted_vertices, bool exact) {
  CandidateSet c;
  c.verts_ = std::move(sorted_vertices);
  c.exact_ = exact;
  return c;
}

const std::vector<VertexId>& CandidateSet::vertices() const {
  if (all_) throw std::logic_error("candidate set is still symbolic");
  return verts_;
}

bool CandidateSet::contains(const VertexId& v) const {
  if (all_) return true;
  return std::binary_search(verts_.begin(), verts_.end(), v);
}

std::string CandidateSet::summary() const {
  if (all_) return "all";
  if (exact_) return std::to_string(size());
  return "ge:" + std::to_string(size());
}

DistanceVector probe_response(const Graph& g, const VertexId& robber_pos, const ProbeTuple& p) {
  DistanceVector d;
  d.reserve(p.size());
  for (const VertexId& u : p) d.push_back(distance(g, u, robber_pos));
  return d;
}

std::map<DistanceVector, std::vector<VertexId>> partition_candidates(const Graph& g,
                                                                     const CandidateSet& c,
                                                                     const ProbeTuple& p) {
  if (c.is_all()) {
    if (!g.finite())
      throw std::runtime_error("unsupported symbolic partition");
    return partition_candidates(g, CandidateSet::of(g.all_vertices()), p);
  }
  std::map<DistanceVector, std::vector<VertexId>> classes;
  for (const VertexId& x : c.vertices()) classes[probe_response(g, x, p)].push_back(x);
  return classes;
}

namespace {

std::vector<VertexId> closed_neighborhood(const Graph& g, const std::vector<VertexId>& set) {
  std::vector<VertexId> out = set;
  for (const VertexId& x : set) {
    auto nb = g.neighbors(x);
    out.insert(out.end(), nb.begin(), nb.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

CandidateSet expand_candidates(const Graph& g, const CandidateSet& c) {
  if (c.is_all()) return c;
  return CandidateSet::of(closed_neighborhood(g, c.vertices()), c.exact());
}

std::unique_ptr<CopStrategy> fork_for_lookahead(const CopStrategy& proto,
                                                const VisibleHistory& h) {
  auto replica = proto.fresh();
  VisibleHistory fed;
  for (const VisibleRound& round : h) {
    ProbeTuple p = replica->next_probe(fed);
    if (p != round.probe)
      throw std::runtime_error("nondeterministic cop strategy (replay mismatch)");
    fed.push_back(round);
  }
  return replica;
}

std::vector<ProbeTuple> Lookahead::future_probes(const std::vector<VertexId>& positions) const {
  auto replica = fork_for_lookahead(proto_, history_);
  VisibleHistory sim = history_;
  std::vector<ProbeTuple> out;
  for (const VertexId& pos : positions) {
    ProbeTuple p = replica->next_probe(sim);
    DistanceVector d = probe_response(g_, pos, p);
    sim.push_back({p, d});
    out.push_back(std::move(p));
  }
  return out;
}

VertexId RobberAgent::initial_position(const Graph&, const Lookahead&) {
  throw std::logic_error("robber agent has no concrete interface");
}
VertexId RobberAgent::move(const Graph&, const VertexId&, const VisibleHistory&,
                           const Lookahead&) {
  throw std::logic_error("robber agent has no concrete interface");
}
DistanceVector RobberAgent::choose_vector(const Graph&, const CandidateSet&,
                                          const ProbeTuple&) {
  throw std::logic_error("robber agent has no phantom interface");
}

VisibleHistory PlayResult::visible() const {
  VisibleHistory h;
  for (const RoundRecord& r : transcript) h.push_back({r.probe, r.dist});
  return h;
}

namespace {

// Depth-first sphere walk on a lazy tree with a work budget. Calls
// visit() for each vertex at exact distance r. Returns false if the
// budget ran out before the sphere was fully enumerated.
bool walk_descendants(const LazyTreeGraph& g, const TreeAddress& a, int budget, int skip_child,
                      long long& work, const std::function<void(const TreeAddress&)>& visit) {
  if (--work < 0) return false;
  if (budget == 0) {
    visit(a);
    return true;
  }
  int k = g.arity(a);
  for (int c = 0; c < k; ++c) {
    if (c == skip_child) continue;
    if (!walk_descendants(g, a.child(static_cast<std::uint32_t>(c)), budget - 1, -1, work,
                          visit))
      return false;
  }
  return true;
}

bool walk_sphere(const LazyTreeGraph& g, const TreeAddress& center, int r, long long work_cap,
                 const std::function<void(const TreeAddress&)>& visit) {
  long long work = work_cap;
  TreeAddress anc = center;
  int came_from = -1;
  for (int h = 0; h <= r; ++h) {
    if (!walk_descendants(g, anc, r - h, came_from, work, visit)) return false;
    if (anc.is_root()) break;
    came_from = static_cast<int>(anc.step(anc.depth() - 1));
    anc = anc.parent();
  }
  return true;
}

struct FilterOutcome {
  std::vector<VertexId> set;
  bool exact = true;
};

// Resolves the symbolic initial set at the first probe: enumerate the
// sphere of the first coordinate and filter by the rest.
FilterOutcome initial_filter(const Graph& g, const ProbeTuple& p, const DistanceVector& d,
                             const PlayOptions& opts) {
  FilterOutcome out;
  auto matches = [&](const VertexId& x) {
    for (std::size_t i = 1; i < p.size(); ++i)
      if (distance(g, p[i], x) != d[i]) return false;
    return true;
  };
  if (g.finite()) {
    for (const VertexId& x : g.all_vertices())
      if (distance(g, p[0], x) == d[0] && matches(x)) out.set.push_back(x);
    std::sort(out.set.begin(), out.set.end());
    return out;
  }
  const auto* tree = dynamic_cast<const LazyTreeGraph*>(&g);
  if (tree == nullptr) throw std::runtime_error("unsupported graph kind for symbolic filtering");
  bool complete = walk_sphere(*tree, p[0].address(), d[0], opts.work_cap,
                              [&](const TreeAddress& a) {
                                VertexId x = VertexId::from_address(a);
                                if (static_cast<int>(out.set.size()) <= opts.exact_cap &&
                                    matches(x))
                                  out.set.push_back(x);
                              });
  out.exact = complete && static_cast<int>(out.set.size()) <= opts.exact_cap;
  if (static_cast<int>(out.set.size()) > opts.exact_cap) out.set.resize(opts.exact_cap);
  std::sort(out.set.begin(), out.set.end());
  return out;
}

// Keeps a spread subset of `set` of size at most `keep`, always
// retaining `must_keep` when present.
std::vector<VertexId> thin_subset(const std::vector<VertexId>& set, int keep,
                                  const std::optional<VertexId>& must_keep) {
  std::vector<VertexId> out;
  std::size_t n = set.size();
  std::size_t stride = (n + static_cast<std::size_t>(keep) - 1) / static_cast<std::size_t>(keep);
  for (std::size_t i = 0; i < n; i += stride) out.push_back(set[i]);
  if (must_keep && !std::binary_search(out.begin(), out.end(), *must_keep) &&
      std::binary_search(set.begin(), set.end(), *must_keep)) {
    out.push_back(*must_keep);
    std::sort(out.begin(), out.end());
  }
  return out;
}

}  // namespace

PlayResult play(const Graph& g, CopStrategy& cop, RobberAgent& robber,
                const PlayOptions& opts) {
  if (opts.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (cop.cop_count() < 1) throw std::invalid_argument("need at least one cop");

  PlayResult result;
  VisibleHistory visible;
  CandidateSet candidates = CandidateSet::all_vertices();
  std::optional<VertexId> pos;

  if (!robber.phantom()) {
    Lookahead la(g, cop, visible);
    pos = robber.initial_position(g, la);
    if (!g.contains(*pos))
      throw std::runtime_error("robber contract violation: initial position not in graph");
  }

  for (int round = 1; round <= opts.max_rounds; ++round) {
    ProbeTuple probe = cop.next_probe(visible);
    if (static_cast<int>(probe.size()) != cop.cop_count())
      throw std::runtime_error("cop strategy produced a probe of the wrong size");
    for (const VertexId& u : probe)
      if (!g.contains(u)) throw std::runtime_error("cop strategy probed a vertex not in graph");

    DistanceVector dist;
    if (robber.phantom()) {
      dist = robber.choose_vector(g, candidates, probe);
      if (dist.size() != probe.size())
        throw std::runtime_error("robber contract violation: bad distance vector length");
    } else {
      dist = probe_response(g, *pos, probe);
    }

    // Filter.
    bool was_exact = candidates.exact();
    FilterOutcome filtered;
    if (candidates.is_all()) {
      if (robber.phantom() && !g.finite()) {
        // The agent named a sphere class; enumerate it.
        filtered = initial_filter(g, probe, dist, opts);
      } else {
        filtered = initial_filter(g, probe, dist, opts);
      }
    } else {
      for (const VertexId& x : candidates.vertices())
        if (probe_response(g, x, probe) == dist) filtered.set.push_back(x);
      filtered.exact = was_exact;
    }
    if (robber.phantom()) {
      if (!filtered.exact)
        throw std::runtime_error("candidate tracking overflow with a phantom robber");
      if (filtered.set.empty())
        throw std::runtime_error("robber contract violation: empty candidate class");
    } else {
      if (filtered.exact && !std::binary_search(filtered.set.begin(), filtered.set.end(), *pos))
        throw std::logic_error("engine invariant broken: robber left the candidate set");
      if (!filtered.exact &&
          !std::binary_search(filtered.set.begin(), filtered.set.end(), *pos)) {
        filtered.set.push_back(*pos);
        std::sort(filtered.set.begin(), filtered.set.end());
      }
    }

    candidates = CandidateSet::of(filtered.set, filtered.exact);
    RoundRecord rec;
    rec.probe = probe;
    rec.dist = dist;
    rec.candidates = candidates.size();
    rec.exact = candidates.exact();
    if (pos) rec.robber = pos;
    if (opts.record_sets) rec.tracked = candidates.vertices();
    result.transcript.push_back(rec);
    visible.push_back({probe, dist});

    if (candidates.singleton()) {
      result.outcome = PlayResult::Outcome::Captured;
      result.rounds = round;
      result.capture_vertex = candidates.vertices().front();
      if (pos && *result.capture_vertex != *pos)
        throw std::logic_error("engine invariant broken: capture vertex mismatch");
      return result;
    }

    if (round == opts.max_rounds) break;

    // Robber moves, candidate set expands.
    if (!robber.phantom()) {
      Lookahead la(g, cop, visible);
      VertexId next = robber.move(g, *pos, visible, la);
      if (next != *pos) {
        auto nb = g.neighbors(*pos);
        if (std::find(nb.begin(), nb.end(), next) == nb.end())
          throw std::runtime_error("robber contract violation: illegal move");
      }
      pos = next;
    }
    std::vector<VertexId> grown = closed_neighborhood(g, candidates.vertices());
    bool exact = candidates.exact();
    if (static_cast<int>(grown.size()) > opts.exact_cap ||
        (!exact && static_cast<int>(grown.size()) > opts.keep_size)) {
      grown = thin_subset(grown, opts.keep_size, pos);
      exact = false;
    }
    candidates = CandidateSet::of(std::move(grown), exact);
  }

  result.outcome = PlayResult::Outcome::Evaded;
  result.rounds = opts.max_rounds;
  return result;
}

std::string transcript_to_string(const PlayResult& r) {
  std::ostringstream os;
  int n = 0;
  for (const RoundRecord& rec : r.transcript) {
    os << "round " << ++n << " probe";
    for (const VertexId& v : rec.probe) os << " " << v.to_string();
    os << " dist";
    for (int d : rec.dist) os << " " << d;
    os << " candidates " << (rec.exact ? std::to_string(rec.candidates)
                                       : "ge:" + std::to_string(rec.candidates));
    os << "\n";
    if (rec.robber) os << "robber " << rec.robber->to_string() << "\n";
  }
  if (r.outcome == PlayResult::Outcome::Captured)
    os << "outcome captured round " << r.rounds << " vertex "
       << r.capture_vertex->to_string() << "\n";
  else
    os << "outcome evaded rounds " << r.rounds << "\n";
  return os.str();
}

}  // namespace lzn
