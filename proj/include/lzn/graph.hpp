#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lzn/address.hpp"

namespace lzn {

/// Simple undirected graph with explicit adjacency. Edges are kept
/// symmetric and loop-free; adjacency lists are sorted ascending so
/// iteration order is canonical.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  explicit FiniteGraph(int n) : adj_(static_cast<std::size_t>(n)) {}
  FiniteGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const;
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  std::vector<std::pair<int, int>> edges() const;

  bool is_connected() const;
  bool is_tree() const;

  /// BFS distances from `source`; unreachable vertices get -1.
  std::vector<int> bfs_distances(int source) const;
  /// Shortest-path distance; throws "unreachable vertex" if disconnected.
  int distance(int u, int v) const;

 private:
  void check_vertex(int v) const;
  std::vector<std::vector<int>> adj_;
};

/// Runtime interface shared by finite and lazily expanded graphs. All
/// implementations are immutable after construction; neighbor sequences
/// are deterministic and ordered.
class Graph {
 public:
  virtual ~Graph() = default;

  /// Canonical start vertex (index 0 for finite graphs, the tree root
  /// for lazy trees).
  virtual VertexId root() const = 0;
  virtual std::vector<VertexId> neighbors(const VertexId& v) const = 0;
  virtual bool contains(const VertexId& v) const = 0;

  virtual bool finite() const { return false; }
  virtual int vertex_count() const;
  virtual std::vector<VertexId> all_vertices() const;

  /// True when vertices are tree addresses whose path structure matches
  /// the graph, so distances have the closed form
  /// |a| + |b| - 2*|common prefix|.
  virtual bool tree_metric() const { return false; }
};

class FiniteGraphView final : public Graph {
 public:
  explicit FiniteGraphView(FiniteGraph g) : g_(std::move(g)) {}

  VertexId root() const override { return VertexId::from_index(0); }
  std::vector<VertexId> neighbors(const VertexId& v) const override;
  bool contains(const VertexId& v) const override;
  bool finite() const override { return true; }
  int vertex_count() const override { return g_.vertex_count(); }
  std::vector<VertexId> all_vertices() const override;

  const FiniteGraph& underlying() const { return g_; }

 private:
  FiniteGraph g_;
};

/// Lazily expanded rooted tree defined by a pure arity oracle: the
/// vertex at address a has arity(a) children a.child(0..arity-1).
/// Neighbor order is parent first, then children ascending.
class LazyTreeGraph final : public Graph {
 public:
  using ArityFn = std::function<int(const TreeAddress&)>;

  explicit LazyTreeGraph(ArityFn arity) : arity_(std::move(arity)) {}

  VertexId root() const override { return VertexId::from_address(TreeAddress::root()); }
  std::vector<VertexId> neighbors(const VertexId& v) const override;
  bool contains(const VertexId& v) const override;
  bool tree_metric() const override { return true; }

  int arity(const TreeAddress& a) const { return arity_(a); }

 private:
  ArityFn arity_;
};

/// Shortest-path distance. Uses the closed form on tree-metric graphs;
/// otherwise BFS with expansion bounded by the ball of the answer's
/// radius.
int distance(const Graph& g, const VertexId& u, const VertexId& v);

/// All vertices at distance exactly r from `center`, sorted. Finite on
/// any locally finite graph.
std::vector<VertexId> sphere(const Graph& g, const VertexId& center, int r);

/// All vertices at distance at most r, sorted.
std::vector<VertexId> ball(const Graph& g, const VertexId& center, int r);

/// Lower-bound probe: reports min(|sphere(center, r)|, cap) without
/// enumerating the whole sphere. On tree-metric graphs this runs a
/// depth-bounded walk whose cost is proportional to the answer, not to
/// the ball volume.
int sphere_size_at_least(const Graph& g, const VertexId& center, int r, int cap);

/// Replaces edge (u, v) by a path with k fresh internal vertices
/// (k = 0 leaves the graph unchanged). New vertices are appended after
/// the existing ones, ordered from the u side.
FiniteGraph subdivide_edge(const FiniteGraph& g, int u, int v, int k);

// --- text formats ------------------------------------------------------

/// Writes the "lzn-graph v1" format: header, vertex count, one
/// undirected edge per line.
void write_graph(std::ostream& os, const FiniteGraph& g);
std::string graph_to_string(const FiniteGraph& g);
FiniteGraph parse_graph(std::istream& is);
FiniteGraph parse_graph_string(const std::string& text);
FiniteGraph load_graph_file(const std::string& path);

/// DOT export for rendering; optional per-vertex labels.
std::string graph_to_dot(const FiniteGraph& g, const std::vector<std::string>& labels = {});

}  // namespace lzn
