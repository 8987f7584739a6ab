#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lzn/graph.hpp"

namespace lzn {

using ProbeTuple = std::vector<VertexId>;
using DistanceVector = std::vector<int>;

/// Information state of the game: either "no information yet" or an
/// explicit vertex set. Once tracking outgrows the configured cap the
/// engine keeps a certified subset instead (exact() false); the subset
/// is still closed under filtering, so its size is a sound lower bound
/// on the true candidate count.
class CandidateSet {
 public:
  static CandidateSet all_vertices();
  static CandidateSet of(std::vector<VertexId> sorted_vertices, bool exact = true);

  bool is_all() const { return all_; }
  bool exact() const { return exact_; }
  const std::vector<VertexId>& vertices() const;
  int size() const { return static_cast<int>(vertices().size()); }
  bool singleton() const { return !all_ && exact_ && size() == 1; }
  bool contains(const VertexId& v) const;

  std::string summary() const;  // "all", "5", or "ge:5"

 private:
  bool all_ = false;
  bool exact_ = true;
  std::vector<VertexId> verts_;
};

DistanceVector probe_response(const Graph& g, const VertexId& robber_pos, const ProbeTuple& p);

/// Fibers of the distance-vector map restricted to an explicit
/// candidate set, keyed by vector. Symbolic inputs are rejected.
std::map<DistanceVector, std::vector<VertexId>> partition_candidates(const Graph& g,
                                                                     const CandidateSet& c,
                                                                     const ProbeTuple& p);

/// Closed neighborhood N[C].
CandidateSet expand_candidates(const Graph& g, const CandidateSet& c);

struct VisibleRound {
  ProbeTuple probe;
  DistanceVector dist;
};
using VisibleHistory = std::vector<VisibleRound>;

class CopStrategy {
 public:
  virtual ~CopStrategy() = default;
  virtual std::string name() const = 0;
  virtual int cop_count() const = 0;
  /// Called exactly once per round, in order, with the rounds played so
  /// far. Must be a deterministic function of the visible history.
  virtual ProbeTuple next_probe(const VisibleHistory& h) = 0;
  /// A replica in its initial state, used for omniscient lookahead.
  virtual std::unique_ptr<CopStrategy> fresh() const = 0;
};

/// Replays a recorded history into a fresh replica; throws if the
/// replica's probes disagree with the record.
std::unique_ptr<CopStrategy> fork_for_lookahead(const CopStrategy& proto,
                                                const VisibleHistory& h);

/// Omniscient view of the cops' future: simulates the opposing strategy
/// against a hypothetical robber path without advancing the real game.
class Lookahead {
 public:
  Lookahead(const Graph& g, const CopStrategy& proto, const VisibleHistory& h)
      : g_(g), proto_(proto), history_(h) {}

  /// Probes the cops would make over the next positions.size() rounds if
  /// the robber stood at positions[t] in round (current + 1 + t).
  std::vector<ProbeTuple> future_probes(const std::vector<VertexId>& positions) const;

 private:
  const Graph& g_;
  const CopStrategy& proto_;
  const VisibleHistory& history_;
};

class RobberAgent {
 public:
  virtual ~RobberAgent() = default;
  virtual std::string name() const = 0;
  virtual bool phantom() const { return false; }

  // Concrete interface.
  virtual VertexId initial_position(const Graph& g, const Lookahead& la);
  virtual VertexId move(const Graph& g, const VertexId& current, const VisibleHistory& h,
                        const Lookahead& la);

  // Phantom interface: name the class of the induced partition to keep.
  virtual DistanceVector choose_vector(const Graph& g, const CandidateSet& pre,
                                       const ProbeTuple& probe);
};

struct PlayOptions {
  int max_rounds = 100;
  int exact_cap = 20000;  // explicit tracking limit
  int keep_size = 512;    // subset retained after an overflow
  long long work_cap = 4000000;  // visit budget for the first-probe sphere walk
  bool record_sets = false;      // keep per-round candidate sets in the transcript
};

struct RoundRecord {
  ProbeTuple probe;
  DistanceVector dist;
  int candidates = 0;
  bool exact = true;
  std::optional<VertexId> robber;
  std::optional<std::vector<VertexId>> tracked;  // with record_sets
};

struct PlayResult {
  enum class Outcome { Captured, Evaded };
  Outcome outcome = Outcome::Evaded;
  int rounds = 0;  // capture round, or rounds played
  std::optional<VertexId> capture_vertex;
  std::vector<RoundRecord> transcript;

  bool captured() const { return outcome == Outcome::Captured; }
  VisibleHistory visible() const;
};

/// Runs one play. Round order: the robber takes or keeps a position,
/// the cops probe, the candidate set is filtered (capture iff it is a
/// singleton), then the robber moves and the set is expanded.
PlayResult play(const Graph& g, CopStrategy& cop, RobberAgent& robber,
                const PlayOptions& opts = {});

/// Round lines in the transcript text format, including robber lines
/// when positions were recorded.
std::string transcript_to_string(const PlayResult& r);

}  // namespace lzn
