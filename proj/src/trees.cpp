#include "lzn/trees.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <stdexcept>

namespace lzn {

FiniteGraph hat_tree() {
  FiniteGraph g(10);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 4);
  g.add_edge(1, 5);
  g.add_edge(2, 6);
  g.add_edge(2, 7);
  g.add_edge(3, 8);
  g.add_edge(3, 9);
  return g;
}

namespace {

void require_tree(const FiniteGraph& t) {
  if (!t.is_tree()) throw std::invalid_argument("input graph is not a tree");
}

}  // namespace

std::vector<int> tree_center(const FiniteGraph& t) {
  require_tree(t);
  int n = t.vertex_count();
  if (n == 1) return {0};
  // Peel leaves layer by layer; the last layer is the center.
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = t.degree(v);
    if (deg[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
  }
  int removed = 0;
  std::vector<int> current = layer;
  while (removed + static_cast<int>(current.size()) < n) {
    removed += static_cast<int>(current.size());
    std::vector<int> next;
    for (int v : current) {
      deg[static_cast<std::size_t>(v)] = 0;
      for (int w : t.neighbors(v)) {
        if (deg[static_cast<std::size_t>(w)] > 0 && --deg[static_cast<std::size_t>(w)] == 1)
          next.push_back(w);
      }
    }
    current = std::move(next);
  }
  std::sort(current.begin(), current.end());
  return current;
}

bool contains_induced_subtree(const FiniteGraph& host, const FiniteGraph& pattern) {
  int hn = host.vertex_count();
  int pn = pattern.vertex_count();
  if (pn > hn) return false;
  // Backtracking injective embedding; host and pattern are trees, so
  // induced containment only constrains adjacency of mapped pairs.
  std::vector<int> map(static_cast<std::size_t>(pn), -1);
  std::vector<bool> used(static_cast<std::size_t>(hn), false);
  // Order pattern vertices so each one after the first touches a mapped
  // neighbor (BFS order from 0).
  std::vector<int> order;
  {
    std::vector<bool> seen(static_cast<std::size_t>(pn), false);
    std::vector<int> q{0};
    seen[0] = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      order.push_back(q[i]);
      for (int w : pattern.neighbors(q[i]))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          q.push_back(w);
        }
    }
  }
  std::function<bool(std::size_t)> place = [&](std::size_t pos) {
    if (pos == order.size()) return true;
    int p = order[pos];
    for (int h = 0; h < hn; ++h) {
      if (used[static_cast<std::size_t>(h)]) continue;
      bool ok = true;
      for (int q = 0; q < pn && ok; ++q) {
        if (map[static_cast<std::size_t>(q)] < 0) continue;
        bool pe = pattern.has_edge(p, q);
        bool he = host.has_edge(h, map[static_cast<std::size_t>(q)]);
        if (pe != he) ok = false;
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(p)] = h;
      used[static_cast<std::size_t>(h)] = true;
      if (place(pos + 1)) return true;
      map[static_cast<std::size_t>(p)] = -1;
      used[static_cast<std::size_t>(h)] = false;
    }
    return false;
  };
  return place(0);
}

bool contains_hat(const FiniteGraph& t) {
  require_tree(t);
  bool found = false;
  for (int v = 0; v < t.vertex_count() && !found; ++v) {
    int heavy = 0;
    for (int w : t.neighbors(v))
      if (t.degree(w) >= 3) ++heavy;
    if (heavy >= 3) found = true;
  }
#ifndef NDEBUG
  if (t.vertex_count() <= 12) assert(found == contains_induced_subtree(t, hat_tree()));
#endif
  return found;
}

std::string canonical_rooted_form(const FiniteGraph& t, int root) {
  require_tree(t);
  std::function<std::string(int, int)> encode = [&](int v, int parent) {
    std::vector<std::string> parts;
    for (int w : t.neighbors(v))
      if (w != parent) parts.push_back(encode(w, v));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    out += ")";
    return out;
  };
  return encode(root, -1);
}

std::string canonical_tree_form(const FiniteGraph& t) {
  auto center = tree_center(t);
  if (center.size() == 1) return "C" + canonical_rooted_form(t, center[0]);
  std::string a = canonical_rooted_form(t, center[0]);
  std::string b = canonical_rooted_form(t, center[1]);
  if (b < a) std::swap(a, b);
  return "B" + a + "|" + b;
}

std::vector<std::vector<int>> rooted_level_sequences(int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  std::vector<std::vector<int>> out;
  // Successor rule on canonical level sequences: starting from the path,
  // find the last entry above 1, cap it, and repeat the tail pattern.
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(s);
    int p = -1;
    for (int i = n - 1; i >= 0; --i)
      if (s[static_cast<std::size_t>(i)] > 1) {
        p = i;
        break;
      }
    if (p < 0) break;
    int q = -1;
    for (int i = p - 1; i >= 0; --i)
      if (s[static_cast<std::size_t>(i)] == s[static_cast<std::size_t>(p)] - 1) {
        q = i;
        break;
      }
    for (int i = p; i < n; ++i)
      s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i - (p - q))];
  }
  return out;
}

FiniteGraph tree_from_level_sequence(const std::vector<int>& levels) {
  int n = static_cast<int>(levels.size());
  FiniteGraph g(n);
  std::vector<int> last_at_depth(levels.size() + 1, -1);
  last_at_depth[0] = 0;
  for (int i = 1; i < n; ++i) {
    int d = levels[static_cast<std::size_t>(i)];
    g.add_edge(i, last_at_depth[static_cast<std::size_t>(d - 1)]);
    last_at_depth[static_cast<std::size_t>(d)] = i;
  }
  return g;
}

std::vector<FiniteGraph> enumerate_trees(int n) {
  if (n < 1 || n > kMaxEnumerationN)
    throw std::invalid_argument("enumerate_trees: n out of range (1.." +
                                std::to_string(kMaxEnumerationN) + ")");
  std::vector<FiniteGraph> out;
  std::set<std::string> seen;
  for (const auto& levels : rooted_level_sequences(n)) {
    FiniteGraph t = tree_from_level_sequence(levels);
    std::string form = canonical_tree_form(t);
    if (seen.insert(form).second) out.push_back(std::move(t));
  }
  return out;
}

FiniteGraph tree_from_pruefer(const std::vector<int>& seq, int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (static_cast<int>(seq.size()) != std::max(0, n - 2))
    throw std::invalid_argument("pruefer sequence must have length n-2");
  FiniteGraph g(n);
  if (n == 1) return g;
  std::vector<int> deg(static_cast<std::size_t>(n), 1);
  for (int x : seq) ++deg[static_cast<std::size_t>(x)];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[static_cast<std::size_t>(v)] == 1) leaves.insert(v);
  for (int x : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    g.add_edge(leaf, x);
    if (--deg[static_cast<std::size_t>(x)] == 1) leaves.insert(x);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  g.add_edge(a, b);
  return g;
}

}  // namespace lzn
