#include "lzn/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace lzn {

FiniteGraph::FiniteGraph(int n, const std::vector<std::pair<int, int>>& edges)
    : adj_(static_cast<std::size_t>(n)) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void FiniteGraph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count()) throw std::out_of_range("vertex index out of range");
}

int FiniteGraph::edge_count() const {
  int total = 0;
  for (const auto& a : adj_) total += static_cast<int>(a.size());
  return total / 2;
}

void FiniteGraph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (has_edge(u, v)) return;
  auto& au = adj_[static_cast<std::size_t>(u)];
  auto& av = adj_[static_cast<std::size_t>(v)];
  au.insert(std::lower_bound(au.begin(), au.end(), v), v);
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

bool FiniteGraph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& au = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(au.begin(), au.end(), v);
}

const std::vector<int>& FiniteGraph::neighbors(int v) const {
  check_vertex(v);
  return adj_[static_cast<std::size_t>(v)];
}

std::vector<std::pair<int, int>> FiniteGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < vertex_count(); ++u)
    for (int v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool FiniteGraph::is_connected() const {
  if (vertex_count() == 0) return true;
  auto d = bfs_distances(0);
  return std::find(d.begin(), d.end(), -1) == d.end();
}

bool FiniteGraph::is_tree() const {
  return is_connected() && edge_count() == vertex_count() - 1;
}

std::vector<int> FiniteGraph::bfs_distances(int source) const {
  check_vertex(source);
  std::vector<int> dist(static_cast<std::size_t>(vertex_count()), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

int FiniteGraph::distance(int u, int v) const {
  check_vertex(v);
  auto d = bfs_distances(u);
  if (d[static_cast<std::size_t>(v)] < 0) throw std::runtime_error("unreachable vertex");
  return d[static_cast<std::size_t>(v)];
}

int Graph::vertex_count() const {
  throw std::logic_error("vertex_count is only defined for finite graphs");
}

std::vector<VertexId> Graph::all_vertices() const {
  throw std::logic_error("all_vertices is only defined for finite graphs");
}

std::vector<VertexId> FiniteGraphView::neighbors(const VertexId& v) const {
  std::vector<VertexId> out;
  for (int w : g_.neighbors(v.index())) out.push_back(VertexId::from_index(w));
  return out;
}

bool FiniteGraphView::contains(const VertexId& v) const {
  return v.is_index() && v.index() >= 0 && v.index() < g_.vertex_count();
}

std::vector<VertexId> FiniteGraphView::all_vertices() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(g_.vertex_count()));
  for (int i = 0; i < g_.vertex_count(); ++i) out.push_back(VertexId::from_index(i));
  return out;
}

std::vector<VertexId> LazyTreeGraph::neighbors(const VertexId& v) const {
  const TreeAddress& a = v.address();
  std::vector<VertexId> out;
  if (!a.is_root()) out.push_back(VertexId::from_address(a.parent()));
  int k = arity_(a);
  for (int c = 0; c < k; ++c)
    out.push_back(VertexId::from_address(a.child(static_cast<std::uint32_t>(c))));
  return out;
}

bool LazyTreeGraph::contains(const VertexId& v) const {
  if (!v.is_address()) return false;
  const TreeAddress& a = v.address();
  TreeAddress cur = TreeAddress::root();
  for (int i = 0; i < a.depth(); ++i) {
    std::uint32_t s = a.step(i);
    if (static_cast<int>(s) >= arity_(cur)) return false;
    cur = cur.child(s);
  }
  return true;
}

namespace {

int tree_metric_distance(const VertexId& u, const VertexId& v) {
  const TreeAddress& a = u.address();
  const TreeAddress& b = v.address();
  int lcp = a.common_prefix_length(b);
  return a.depth() + b.depth() - 2 * lcp;
}

}  // namespace

int distance(const Graph& g, const VertexId& u, const VertexId& v) {
  if (g.tree_metric()) return tree_metric_distance(u, v);
  if (u == v) return 0;
  // Plain BFS; on finite graphs visits at most the whole graph, on lazy
  // graphs at most the ball of the answer's radius.
  std::unordered_map<VertexId, int, VertexIdHash> dist;
  std::queue<VertexId> q;
  dist.emplace(u, 0);
  q.push(u);
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop();
    int dx = dist.at(x);
    for (const VertexId& w : g.neighbors(x)) {
      if (dist.count(w)) continue;
      if (w == v) return dx + 1;
      dist.emplace(w, dx + 1);
      q.push(w);
    }
  }
  throw std::runtime_error("unreachable vertex");
}

namespace {

// Shared BFS to radius r; calls visit(vertex, distance) once per vertex.
void bfs_to_radius(const Graph& g, const VertexId& center, int r,
                   const std::function<void(const VertexId&, int)>& visit) {
  std::unordered_set<VertexId, VertexIdHash> seen;
  std::deque<std::pair<VertexId, int>> q;
  seen.insert(center);
  q.emplace_back(center, 0);
  visit(center, 0);
  while (!q.empty()) {
    auto [x, dx] = q.front();
    q.pop_front();
    if (dx == r) continue;
    for (const VertexId& w : g.neighbors(x)) {
      if (!seen.insert(w).second) continue;
      visit(w, dx + 1);
      q.emplace_back(w, dx + 1);
    }
  }
}

}  // namespace

std::vector<VertexId> sphere(const Graph& g, const VertexId& center, int r) {
  if (r < 0) throw std::invalid_argument("negative radius");
  std::vector<VertexId> out;
  bfs_to_radius(g, center, r, [&](const VertexId& v, int d) {
    if (d == r) out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> ball(const Graph& g, const VertexId& center, int r) {
  if (r < 0) throw std::invalid_argument("negative radius");
  std::vector<VertexId> out;
  bfs_to_radius(g, center, r, [&](const VertexId& v, int) { out.push_back(v); });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Counts vertices at exact depth `budget` below `a`, excluding the
// subtree through `skip_child` (-1 = none), stopping once `cap` found.
int count_descendants_at_depth(const LazyTreeGraph& g, const TreeAddress& a, int budget,
                               int skip_child, int cap) {
  if (cap <= 0) return 0;
  if (budget == 0) return 1;
  int found = 0;
  int k = g.arity(a);
  for (int c = 0; c < k && found < cap; ++c) {
    if (c == skip_child) continue;
    found += count_descendants_at_depth(g, a.child(static_cast<std::uint32_t>(c)),
                                        budget - 1, -1, cap - found);
  }
  return found;
}

}  // namespace

int sphere_size_at_least(const Graph& g, const VertexId& center, int r, int cap) {
  if (r < 0) throw std::invalid_argument("negative radius");
  if (cap <= 0) return 0;
  const auto* tree = dynamic_cast<const LazyTreeGraph*>(&g);
  if (tree == nullptr || !center.is_address()) {
    auto s = sphere(g, center, r);
    return std::min<int>(static_cast<int>(s.size()), cap);
  }
  // Every sphere member meets the root path at a unique ancestor of the
  // center: at height h above it, members sit at exact depth r - h below
  // that ancestor, outside the branch leading back down to the center.
  int found = 0;
  TreeAddress anc = center.address();
  int came_from = -1;
  for (int h = 0; h <= r && found < cap; ++h) {
    found += count_descendants_at_depth(*tree, anc, r - h, came_from, cap - found);
    if (anc.is_root()) break;
    came_from = static_cast<int>(anc.step(anc.depth() - 1));
    anc = anc.parent();
  }
  return std::min(found, cap);
}

FiniteGraph subdivide_edge(const FiniteGraph& g, int u, int v, int k) {
  if (!g.has_edge(u, v)) throw std::invalid_argument("subdivide_edge: not an edge");
  if (k < 0) throw std::invalid_argument("subdivide_edge: negative count");
  if (k == 0) return g;
  int n = g.vertex_count();
  FiniteGraph out(n + k);
  for (auto [a, b] : g.edges())
    if (!((a == u && b == v) || (a == v && b == u))) out.add_edge(a, b);
  int prev = u;
  for (int i = 0; i < k; ++i) {
    out.add_edge(prev, n + i);
    prev = n + i;
  }
  out.add_edge(prev, v);
  return out;
}

void write_graph(std::ostream& os, const FiniteGraph& g) {
  os << "# lzn-graph v1\n";
  os << "vertices " << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) os << "edge " << u << " " << v << "\n";
}

std::string graph_to_string(const FiniteGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

FiniteGraph parse_graph(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "# lzn-graph v1")
    throw std::runtime_error("bad graph header (expected '# lzn-graph v1')");
  if (!std::getline(is, line)) throw std::runtime_error("missing vertex count");
  std::istringstream head(line);
  std::string kw;
  int n = -1;
  head >> kw >> n;
  if (kw != "vertices" || n < 0) throw std::runtime_error("bad vertex count line");
  FiniteGraph g(n);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int u, v;
    row >> kw >> u >> v;
    if (kw != "edge" || row.fail()) throw std::runtime_error("bad edge line: " + line);
    g.add_edge(u, v);
  }
  return g;
}

FiniteGraph parse_graph_string(const std::string& text) {
  std::istringstream is(text);
  return parse_graph(is);
}

FiniteGraph load_graph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open graph file: " + path);
  return parse_graph(is);
}

std::string graph_to_dot(const FiniteGraph& g, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "graph lzn {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    os << "  n" << v;
    if (static_cast<std::size_t>(v) < labels.size())
      os << " [label=\"" << labels[static_cast<std::size_t>(v)] << "\"]";
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  n" << u << " -- n" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace lzn
