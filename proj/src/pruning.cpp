#include "lzn/pruning.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace lzn {

bool tree_order_leq(const TreeAddress& u, const TreeAddress& w) { return u.is_prefix_of(w); }

bool tree_order_leq(const FiniteGraph& t, int root, int u, int w) {
  if (!t.is_tree()) throw std::invalid_argument("tree order needs a tree");
  // Walk from w toward the root; u must appear on the way.
  std::vector<int> parent(static_cast<std::size_t>(t.vertex_count()), -2);
  std::deque<int> q{root};
  parent[static_cast<std::size_t>(root)] = -1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : t.neighbors(x))
      if (parent[static_cast<std::size_t>(y)] == -2) {
        parent[static_cast<std::size_t>(y)] = x;
        q.push_back(y);
      }
  }
  for (int x = w; x != -1; x = parent[static_cast<std::size_t>(x)])
    if (x == u) return true;
  return false;
}

namespace {

struct Rooted {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> post_order;
};

Rooted root_tree(const FiniteGraph& t, int root) {
  if (!t.is_tree()) throw std::invalid_argument("pruning needs a tree");
  int n = t.vertex_count();
  Rooted r;
  r.parent.assign(static_cast<std::size_t>(n), -2);
  r.children.assign(static_cast<std::size_t>(n), {});
  std::vector<int> order;
  std::deque<int> q{root};
  r.parent[static_cast<std::size_t>(root)] = -1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    order.push_back(x);
    for (int y : t.neighbors(x))
      if (r.parent[static_cast<std::size_t>(y)] == -2) {
        r.parent[static_cast<std::size_t>(y)] = x;
        r.children[static_cast<std::size_t>(x)].push_back(y);
        q.push_back(y);
      }
  }
  r.post_order.assign(order.rbegin(), order.rend());
  return r;
}

}  // namespace

std::vector<int> recursive_pruning(const FiniteGraph& t, int root) {
  Rooted r = root_tree(t, root);
  std::vector<int> label(static_cast<std::size_t>(t.vertex_count()), 0);
  for (int v : r.post_order) {
    int l1 = -1, l2 = -1;  // two largest child labels
    for (int c : r.children[static_cast<std::size_t>(v)]) {
      int lc = label[static_cast<std::size_t>(c)];
      if (lc > l1) {
        l2 = l1;
        l1 = lc;
      } else if (lc > l2) {
        l2 = lc;
      }
    }
    if (l1 < 0)
      label[static_cast<std::size_t>(v)] = 0;
    else
      label[static_cast<std::size_t>(v)] = l1 + (l1 == l2 ? 1 : 0);
  }
  return label;
}

std::vector<int> recursive_pruning_by_stages(const FiniteGraph& t, int root) {
  Rooted r = root_tree(t, root);
  int n = t.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int stage = 0;
  int remaining = n;
  while (remaining > 0) {
    // A surviving vertex qualifies when its surviving descendants are
    // pairwise comparable, i.e. form one descending path.
    std::vector<bool> chain(static_cast<std::size_t>(n), false);
    std::vector<int> qualify;
    for (int v : r.post_order) {
      if (label[static_cast<std::size_t>(v)] >= 0) continue;
      int alive_children = 0;
      bool ok = true;
      for (int c : r.children[static_cast<std::size_t>(v)]) {
        if (label[static_cast<std::size_t>(c)] >= 0) continue;
        ++alive_children;
        if (!chain[static_cast<std::size_t>(c)]) ok = false;
      }
      chain[static_cast<std::size_t>(v)] = ok && alive_children <= 1;
      if (chain[static_cast<std::size_t>(v)]) qualify.push_back(v);
    }
    if (qualify.empty()) throw std::logic_error("stage recursion stalled");
    for (int v : qualify) label[static_cast<std::size_t>(v)] = stage;
    remaining -= static_cast<int>(qualify.size());
    ++stage;
  }
  return label;
}

namespace {

int decoration_height(const DecoratedRayLayout& layout, int spine, int pos) {
  DecorationAttachment d = layout.decoration(spine, pos);
  int n = d.tree.vertex_count();
  if (n == 0) return 0;
  auto dist = d.tree.bfs_distances(d.attach);
  return 1 + *std::max_element(dist.begin(), dist.end());
}

std::unordered_map<VertexId, int, VertexIdHash> truncated_labels(const DecoratedRayLayout& layout,
                                                                 int radius) {
  LazyTreeGraph g([&layout](const TreeAddress& a) { return layout.arity(a); });
  Truncation t = truncate(g, radius);
  std::vector<int> label = recursive_pruning(t.graph, 0);
  std::unordered_map<VertexId, int, VertexIdHash> out;
  for (std::size_t i = 0; i < t.to_vertex.size(); ++i)
    out.emplace(t.to_vertex[i], label[i]);
  return out;
}

}  // namespace

DecoratedPruning recursive_pruning(const DecoratedRayLayout& layout, int min_valid_radius) {
  int margin = 2;
  int radius = min_valid_radius + margin;
  for (int iter = 0; iter < 8; ++iter) {
    int m = 2;
    for (int s = 0; s < layout.spine_count(); ++s)
      for (int p = 1; p <= radius; ++p)
        m = std::max(m, decoration_height(layout, s, p) + 2);
    if (m == margin && radius >= min_valid_radius + margin) break;
    margin = m;
    radius = min_valid_radius + margin;
  }
  if (radius < min_valid_radius + margin)
    throw std::runtime_error("no stabilization within configured depth");

  DecoratedPruning out;
  out.radius = radius;
  out.valid_radius = radius - margin;
  auto labels = truncated_labels(layout, radius);
  auto check = truncated_labels(layout, radius + margin + 2);
  for (const auto& [v, l] : labels) {
    if (v.address().depth() > out.valid_radius) continue;
    auto it = check.find(v);
    if (it == check.end() || it->second != l)
      throw std::runtime_error("no stabilization within configured depth");
    out.labels.emplace(v, l);
  }
  return out;
}

DecoratedPruning recursive_pruning(const BuiltFamily& family, int min_valid_radius) {
  EndCount ends = family.desc.declared_ends();
  if (ends.kind == EndCountKind::Uncountable)
    throw std::runtime_error("no recursive pruning exists");
  if (family.decorated) return recursive_pruning(*family.decorated, min_valid_radius);
  if (family.desc.kind == FamilyDescriptor::Kind::Ray) {
    DecoratedRaySpec spec;
    spec.core = FiniteGraph(1);
    spec.root = 0;
    spec.spine_attach = {0};
    DecoratedRayLayout layout(std::move(spec));
    return recursive_pruning(layout, min_valid_radius);
  }
  if (family.desc.kind == FamilyDescriptor::Kind::Regular && family.desc.param == 2) {
    DecoratedRayLayout layout(double_ray_spec());
    return recursive_pruning(layout, min_valid_radius);
  }
  throw std::invalid_argument("pruning needs a decorated-ray description or a finite tree");
}

EndInfo end_labels(const DecoratedRayLayout& layout, const DecoratedPruning& pruning) {
  EndInfo info;
  for (int s = 0; s < layout.spine_count(); ++s) {
    int deepest = -1;
    int tail = -1;
    for (int p = 1;; ++p) {
      TreeAddress a = layout.spine_address(s, p);
      if (a.depth() > pruning.valid_radius) break;
      auto it = pruning.labels.find(VertexId::from_address(a));
      if (it == pruning.labels.end()) break;
      deepest = p;
      tail = it->second;
    }
    if (deepest < 1) throw std::runtime_error("window too small for end labels");
    info.end_labels.push_back(tail);
  }
  info.alpha = *std::max_element(info.end_labels.begin(), info.end_labels.end());
  for (std::size_t s = 0; s < info.end_labels.size(); ++s)
    if (info.end_labels[s] == info.alpha) info.attaining.push_back(static_cast<int>(s));
  return info;
}

std::pair<int, int> essential_alpha(const DecoratedRayLayout& layout,
                                    const DecoratedPruning& pruning) {
  if (layout.spine_count() == 0) throw std::runtime_error("no essential vertices");
  // Essential vertices sit on root rays: the core paths toward spine
  // attachments plus the spine vertices themselves.
  std::vector<std::vector<int>> by_depth(static_cast<std::size_t>(pruning.valid_radius + 1));
  auto note = [&](const TreeAddress& a) {
    if (a.depth() > pruning.valid_radius) return;
    auto it = pruning.labels.find(VertexId::from_address(a));
    if (it != pruning.labels.end())
      by_depth[static_cast<std::size_t>(a.depth())].push_back(it->second);
  };
  for (int s = 0; s < layout.spine_count(); ++s) {
    int attach = layout.spec().spine_attach[static_cast<std::size_t>(s)];
    // Core vertices on the root-to-attach path are prefixes of the
    // attach address.
    TreeAddress at = layout.core_address(attach);
    for (int len = 0; len <= at.depth(); ++len) note(at.prefix(len));
    for (int p = 1; layout.spine_address(s, p).depth() <= pruning.valid_radius; ++p)
      note(layout.spine_address(s, p));
  }
  std::vector<int> alpha_i;
  for (const auto& labels : by_depth) {
    if (labels.empty()) break;
    alpha_i.push_back(*std::max_element(labels.begin(), labels.end()));
  }
  if (alpha_i.empty()) throw std::runtime_error("no essential vertices");
  int tail = alpha_i.back();
  int j = static_cast<int>(alpha_i.size()) - 1;
  while (j > 0 && alpha_i[static_cast<std::size_t>(j - 1)] == tail) --j;
  EndInfo info = end_labels(layout, pruning);
  if (info.alpha != tail)
    throw std::logic_error("essential label tail disagrees with the end labels");
  return {tail, j};
}

}  // namespace lzn
