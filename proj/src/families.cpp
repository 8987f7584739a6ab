#include "lzn/families.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "lzn/trees.hpp"

namespace lzn {

std::string EndCount::to_string() const {
  switch (kind) {
    case EndCountKind::Finite:
      return std::to_string(count);
    case EndCountKind::CountablyInfinite:
      return "countably-infinite";
    case EndCountKind::Uncountable:
      return "uncountable";
  }
  return "?";
}

// --- DecoratedRayLayout --------------------------------------------------

DecoratedRayLayout::DecoratedRayLayout(DecoratedRaySpec spec) : spec_(std::move(spec)) {
  if (!spec_.core.is_tree()) throw std::invalid_argument("decorated ray core must be a tree");
  int n = spec_.core.vertex_count();
  if (spec_.root < 0 || spec_.root >= n) throw std::invalid_argument("bad core root");
  core_parent_.assign(static_cast<std::size_t>(n), -1);
  core_children_.assign(static_cast<std::size_t>(n), {});
  std::deque<int> q{spec_.root};
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  seen[static_cast<std::size_t>(spec_.root)] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : spec_.core.neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      core_parent_[static_cast<std::size_t>(w)] = v;
      core_children_[static_cast<std::size_t>(v)].push_back(w);
      q.push_back(w);
    }
  }
  spines_at_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t s = 0; s < spec_.spine_attach.size(); ++s) {
    int at = spec_.spine_attach[s];
    if (at < 0 || at >= n) throw std::invalid_argument("bad spine attachment");
    spines_at_[static_cast<std::size_t>(at)].push_back(static_cast<int>(s));
  }
}

DecorationAttachment DecoratedRayLayout::decoration(int spine, int pos) const {
  if (!spec_.decorate) return {};
  DecorationAttachment d = spec_.decorate(spine, pos);
  if (d.tree.vertex_count() > 0) {
    if (!d.tree.is_tree()) throw std::invalid_argument("decoration must be a tree");
    if (d.attach < 0 || d.attach >= d.tree.vertex_count())
      throw std::invalid_argument("bad decoration attach vertex");
  }
  return d;
}

DecoratedRayLayout::RootedDeco DecoratedRayLayout::rooted_decoration(int spine, int pos) const {
  DecorationAttachment d = decoration(spine, pos);
  RootedDeco r{std::move(d.tree), d.attach, {}, {}};
  int n = r.tree.vertex_count();
  r.parent.assign(static_cast<std::size_t>(n), -1);
  r.children.assign(static_cast<std::size_t>(n), {});
  if (n == 0) return r;
  std::deque<int> q{r.attach};
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  seen[static_cast<std::size_t>(r.attach)] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : r.tree.neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      r.parent[static_cast<std::size_t>(w)] = v;
      r.children[static_cast<std::size_t>(v)].push_back(w);
      q.push_back(w);
    }
  }
  return r;
}

DecoratedRayLayout::Node DecoratedRayLayout::resolve(const TreeAddress& a) const {
  Node cur;
  cur.kind = Node::Kind::Core;
  cur.core_vertex = spec_.root;
  for (int i = 0; i < a.depth(); ++i) {
    std::uint32_t step = a.step(i);
    switch (cur.kind) {
      case Node::Kind::Core: {
        const auto& sp = spines_at(cur.core_vertex);
        const auto& cc = core_children(cur.core_vertex);
        if (step < sp.size()) {
          cur.kind = Node::Kind::Spine;
          cur.spine = sp[step];
          cur.pos = 1;
        } else if (step < sp.size() + cc.size()) {
          cur.core_vertex = cc[step - sp.size()];
        } else {
          throw std::invalid_argument("address not in decorated tree");
        }
        break;
      }
      case Node::Kind::Spine: {
        if (step == 0) {
          ++cur.pos;
        } else if (step == 1) {
          RootedDeco d = rooted_decoration(cur.spine, cur.pos);
          if (d.tree.vertex_count() == 0)
            throw std::invalid_argument("address not in decorated tree");
          cur.kind = Node::Kind::Deco;
          cur.deco_vertex = d.attach;
        } else {
          throw std::invalid_argument("address not in decorated tree");
        }
        break;
      }
      case Node::Kind::Deco: {
        RootedDeco d = rooted_decoration(cur.spine, cur.pos);
        const auto& dc = d.children[static_cast<std::size_t>(cur.deco_vertex)];
        if (step >= dc.size()) throw std::invalid_argument("address not in decorated tree");
        cur.deco_vertex = dc[step];
        break;
      }
    }
  }
  return cur;
}

int DecoratedRayLayout::arity(const TreeAddress& a) const {
  Node n = resolve(a);
  switch (n.kind) {
    case Node::Kind::Core:
      return static_cast<int>(spines_at(n.core_vertex).size() + core_children(n.core_vertex).size());
    case Node::Kind::Spine: {
      DecorationAttachment d = decoration(n.spine, n.pos);
      return 1 + (d.tree.vertex_count() > 0 ? 1 : 0);
    }
    case Node::Kind::Deco: {
      RootedDeco d = rooted_decoration(n.spine, n.pos);
      return static_cast<int>(d.children[static_cast<std::size_t>(n.deco_vertex)].size());
    }
  }
  return 0;
}

TreeAddress DecoratedRayLayout::core_address(int core_vertex) const {
  std::vector<int> path;
  int v = core_vertex;
  while (v != spec_.root) {
    path.push_back(v);
    v = core_parent(v);
  }
  TreeAddress a = TreeAddress::root();
  int at = spec_.root;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const auto& cc = core_children(at);
    auto rank = std::find(cc.begin(), cc.end(), *it) - cc.begin();
    a = a.child(static_cast<std::uint32_t>(spines_at(at).size() + rank));
    at = *it;
  }
  return a;
}

TreeAddress DecoratedRayLayout::spine_address(int spine, int pos) const {
  int at = spec_.spine_attach[static_cast<std::size_t>(spine)];
  const auto& sp = spines_at(at);
  auto rank = std::find(sp.begin(), sp.end(), spine) - sp.begin();
  TreeAddress a = core_address(at).child(static_cast<std::uint32_t>(rank));
  for (int i = 1; i < pos; ++i) a = a.child(0);
  return a;
}

DecoratedRaySpec double_ray_spec() {
  DecoratedRaySpec s;
  s.core = FiniteGraph(1);
  s.root = 0;
  s.spine_attach = {0, 0};
  s.decorate = nullptr;
  return s;
}

DecoratedRaySpec comb_spec() {
  DecoratedRaySpec s;
  s.core = FiniteGraph(2, {{0, 1}});
  s.root = 0;
  s.spine_attach = {0, 0};
  s.decorate = [](int, int) { return DecorationAttachment{FiniteGraph(1), 0}; };
  return s;
}

// --- FamilyDescriptor -----------------------------------------------------

FamilyDescriptor FamilyDescriptor::double_ray() {
  FamilyDescriptor d;
  d.kind = Kind::DoubleRay;
  return d;
}
FamilyDescriptor FamilyDescriptor::regular(int delta) {
  if (delta < 2) throw std::invalid_argument("regular tree needs degree >= 2");
  FamilyDescriptor d;
  d.kind = Kind::Regular;
  d.param = delta;
  return d;
}
FamilyDescriptor FamilyDescriptor::omega() {
  FamilyDescriptor d;
  d.kind = Kind::Omega;
  return d;
}
FamilyDescriptor FamilyDescriptor::tn(int n) {
  if (n < 2) throw std::invalid_argument("tn family needs n >= 2");
  FamilyDescriptor d;
  d.kind = Kind::Tn;
  d.param = n;
  return d;
}
FamilyDescriptor FamilyDescriptor::sn(int n) {
  if (n < 2) throw std::invalid_argument("sn family needs n >= 2");
  FamilyDescriptor d;
  d.kind = Kind::Sn;
  d.param = n;
  return d;
}
FamilyDescriptor FamilyDescriptor::hat() {
  FamilyDescriptor d;
  d.kind = Kind::Hat;
  return d;
}
FamilyDescriptor FamilyDescriptor::comb() {
  FamilyDescriptor d;
  d.kind = Kind::Comb;
  return d;
}
FamilyDescriptor FamilyDescriptor::decorated_ray(DecoratedRaySpec spec) {
  FamilyDescriptor d;
  d.kind = Kind::Decorated;
  d.decorated = std::make_shared<DecoratedRaySpec>(std::move(spec));
  return d;
}
FamilyDescriptor FamilyDescriptor::finite_given(FiniteGraph g, std::string source) {
  if (!g.is_connected()) throw std::invalid_argument("family graphs must be connected");
  FamilyDescriptor d;
  d.kind = Kind::FiniteGiven;
  d.given = std::make_shared<FiniteGraph>(std::move(g));
  d.source = std::move(source);
  return d;
}
FamilyDescriptor FamilyDescriptor::subdivided(FamilyDescriptor inner) {
  FamilyDescriptor d;
  d.kind = Kind::Subdivided;
  d.inner = std::make_shared<FamilyDescriptor>(std::move(inner));
  return d;
}

FamilyDescriptor FamilyDescriptor::parse(const std::string& text) {
  auto with_param = [&](const std::string& prefix) -> std::optional<int> {
    if (text.rfind(prefix + ":", 0) != 0) return std::nullopt;
    std::string rest = text.substr(prefix.size() + 1);
    if (rest.empty()) throw std::invalid_argument("missing parameter in '" + text + "'");
    return std::stoi(rest);
  };
  if (text == "ray") return ray();
  if (text == "double-ray") return double_ray();
  if (text == "omega") return omega();
  if (text == "hat") return hat();
  if (text == "comb") return comb();
  if (auto p = with_param("regular")) return regular(*p);
  if (auto p = with_param("tn")) return tn(*p);
  if (auto p = with_param("sn")) return sn(*p);
  if (text.rfind("file:", 0) == 0) {
    std::string path = text.substr(5);
    return finite_given(load_graph_file(path), path);
  }
  if (text.rfind("subdivided:", 0) == 0) return subdivided(parse(text.substr(11)));
  throw std::invalid_argument("unknown family descriptor: " + text);
}

std::string FamilyDescriptor::to_string() const {
  switch (kind) {
    case Kind::Ray:
      return "ray";
    case Kind::DoubleRay:
      return "double-ray";
    case Kind::Regular:
      return "regular:" + std::to_string(param);
    case Kind::Omega:
      return "omega";
    case Kind::Tn:
      return "tn:" + std::to_string(param);
    case Kind::Sn:
      return "sn:" + std::to_string(param);
    case Kind::Hat:
      return "hat";
    case Kind::Comb:
      return "comb";
    case Kind::Decorated:
      return "decorated";
    case Kind::FiniteGiven:
      return source.empty() ? "finite" : "file:" + source;
    case Kind::Subdivided:
      return "subdivided:" + inner->to_string();
  }
  return "?";
}

EndCount FamilyDescriptor::declared_ends() const {
  switch (kind) {
    case Kind::Ray:
      return {EndCountKind::Finite, 1};
    case Kind::DoubleRay:
    case Kind::Comb:
      return {EndCountKind::Finite, 2};
    case Kind::Hat:
    case Kind::FiniteGiven:
      return {EndCountKind::Finite, 0};
    case Kind::Decorated:
      return {EndCountKind::Finite, static_cast<int>(decorated->spine_attach.size())};
    case Kind::Regular:
      return param == 2 ? EndCount{EndCountKind::Finite, 2}
                        : EndCount{EndCountKind::Uncountable, 0};
    case Kind::Omega:
    case Kind::Tn:
    case Kind::Sn:
      return {EndCountKind::Uncountable, 0};
    case Kind::Subdivided:
      return inner->declared_ends();
  }
  return {};
}

bool FamilyDescriptor::is_tree_family() const {
  switch (kind) {
    case Kind::FiniteGiven:
      return given->is_tree();
    case Kind::Subdivided:
      return inner->is_tree_family();
    default:
      return true;
  }
}

// --- build ----------------------------------------------------------------

namespace {

std::shared_ptr<const LazyTreeGraph> make_lazy(LazyTreeGraph::ArityFn f) {
  return std::make_shared<LazyTreeGraph>(std::move(f));
}

}  // namespace

BuiltFamily build(const FamilyDescriptor& d) {
  BuiltFamily out;
  out.desc = d;
  switch (d.kind) {
    case FamilyDescriptor::Kind::Ray:
      out.graph = make_lazy([](const TreeAddress&) { return 1; });
      break;
    case FamilyDescriptor::Kind::DoubleRay:
    case FamilyDescriptor::Kind::Comb:
    case FamilyDescriptor::Kind::Decorated: {
      DecoratedRaySpec spec = d.kind == FamilyDescriptor::Kind::DoubleRay ? double_ray_spec()
                              : d.kind == FamilyDescriptor::Kind::Comb    ? comb_spec()
                                                                          : *d.decorated;
      auto layout = std::make_shared<const DecoratedRayLayout>(std::move(spec));
      out.decorated = layout;
      out.graph = make_lazy([layout](const TreeAddress& a) { return layout->arity(a); });
      break;
    }
    case FamilyDescriptor::Kind::Regular: {
      int delta = d.param;
      out.graph = make_lazy(
          [delta](const TreeAddress& a) { return a.is_root() ? delta : delta - 1; });
      break;
    }
    case FamilyDescriptor::Kind::Omega:
      out.graph = make_lazy([](const TreeAddress& a) { return a.depth() + 1; });
      break;
    case FamilyDescriptor::Kind::Tn: {
      int k = d.param * (d.param - 1) + 1;
      out.graph = make_lazy([k](const TreeAddress&) { return k; });
      break;
    }
    case FamilyDescriptor::Kind::Sn: {
      int n = d.param;
      int k = n * (n - 1) + 1;
      out.graph = make_lazy(
          [n, k](const TreeAddress& a) { return a.depth() % n == 0 ? k : 1; });
      break;
    }
    case FamilyDescriptor::Kind::Hat: {
      out.finite = hat_tree();
      out.graph = std::make_shared<FiniteGraphView>(*out.finite);
      break;
    }
    case FamilyDescriptor::Kind::FiniteGiven: {
      out.finite = *d.given;
      out.graph = std::make_shared<FiniteGraphView>(*out.finite);
      break;
    }
    case FamilyDescriptor::Kind::Subdivided: {
      BuiltFamily inner = build(*d.inner);
      if (inner.finite) {
        auto sub = std::make_shared<SubdividedFinite>(localize_subdivision(*inner.finite));
        out.subdivided = sub;
        out.finite = sub->gprime;
        out.graph = std::make_shared<FiniteGraphView>(*out.finite);
      } else {
        auto tree = std::dynamic_pointer_cast<const LazyTreeGraph>(inner.graph);
        if (!tree)
          throw std::invalid_argument("subdivided: inner family must be finite or a lazy tree");
        out.graph = localize_subdivision_tree(tree);
      }
      break;
    }
  }
  return out;
}

// --- truncate ---------------------------------------------------------------

Truncation truncate(const Graph& g, int radius) {
  if (radius < 0) throw std::invalid_argument("negative radius");
  Truncation t;
  std::deque<std::pair<VertexId, int>> q;
  VertexId r = g.root();
  t.to_index.emplace(r, 0);
  t.to_vertex.push_back(r);
  q.emplace_back(r, 0);
  while (!q.empty()) {
    auto [v, dv] = q.front();
    q.pop_front();
    if (dv == radius) continue;
    for (const VertexId& w : g.neighbors(v)) {
      if (t.to_index.count(w)) continue;
      t.to_index.emplace(w, static_cast<int>(t.to_vertex.size()));
      t.to_vertex.push_back(w);
      q.emplace_back(w, dv + 1);
    }
  }
  t.graph = FiniteGraph(static_cast<int>(t.to_vertex.size()));
  for (std::size_t i = 0; i < t.to_vertex.size(); ++i) {
    for (const VertexId& w : g.neighbors(t.to_vertex[i])) {
      auto it = t.to_index.find(w);
      if (it != t.to_index.end()) t.graph.add_edge(static_cast<int>(i), it->second);
    }
  }
  return t;
}

std::string correspondence_to_string(const Truncation& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.to_vertex.size(); ++i)
    os << i << " " << t.to_vertex[i].to_string() << "\n";
  return os.str();
}

// --- subdivision plan -------------------------------------------------------

int SubdivisionPlan::locate_level(int d) const {
  if (d <= 0) throw std::invalid_argument("locate_level needs d > 0");
  for (std::size_t i = 1; i < D.size(); ++i)
    if (d <= D[i]) return static_cast<int>(i);
  throw std::out_of_range("distance beyond the planned levels");
}

namespace {

SubdivisionPlan plan_from_level_sizes(std::vector<int> sizes) {
  SubdivisionPlan p;
  p.level_sizes = std::move(sizes);
  int t = static_cast<int>(p.level_sizes.size()) - 1;
  for (int i = 0; i < t; ++i)
    p.s.push_back(2 + p.level_sizes[static_cast<std::size_t>(i)] +
                  p.level_sizes[static_cast<std::size_t>(i + 1)]);
  p.D.push_back(0);
  int acc = 0;
  for (int i = 1; i <= t; ++i) {
    acc += p.s[static_cast<std::size_t>(i - 1)];
    p.D.push_back(i + acc);
  }
  return p;
}

}  // namespace

SubdivisionPlan subdivision_plan(const Graph& h, const VertexId& v, int max_level) {
  if (!h.contains(v)) throw std::invalid_argument("base vertex not in graph");
  std::vector<int> sizes;
  if (h.finite()) {
    const auto& fg = dynamic_cast<const FiniteGraphView&>(h).underlying();
    auto dist = fg.bfs_distances(v.index());
    int ecc = *std::max_element(dist.begin(), dist.end());
    if (std::find(dist.begin(), dist.end(), -1) != dist.end())
      throw std::runtime_error("unreachable vertex");
    sizes.assign(static_cast<std::size_t>(ecc + 1), 0);
    for (int x : dist) ++sizes[static_cast<std::size_t>(x)];
  } else {
    for (int i = 0; i <= max_level; ++i) {
      auto s = sphere(h, v, i);
      if (s.empty()) break;
      sizes.push_back(static_cast<int>(s.size()));
    }
    if (static_cast<int>(sizes.size()) == max_level + 1 &&
        !sphere(h, v, max_level + 1).empty())
      throw std::runtime_error("max_level exceeded on infinite input");
  }
  return plan_from_level_sizes(std::move(sizes));
}

// --- localize_subdivision (finite) -------------------------------------------

SubdividedFinite localize_subdivision(const FiniteGraph& g, int base_vertex) {
  if (!g.is_connected()) throw std::invalid_argument("graph must be connected");
  int n = g.vertex_count();
  if (base_vertex < 0 || base_vertex >= n) throw std::invalid_argument("bad base vertex");
  auto gedges = g.edges();
  int m = static_cast<int>(gedges.size());

  // H: every edge subdivided once; midpoint of edge e gets id n + e.
  FiniteGraph h(n + m);
  for (int e = 0; e < m; ++e) {
    h.add_edge(gedges[static_cast<std::size_t>(e)].first, n + e);
    h.add_edge(n + e, gedges[static_cast<std::size_t>(e)].second);
  }
  auto hlevel = h.bfs_distances(base_vertex);
  int t = *std::max_element(hlevel.begin(), hlevel.end());
  std::vector<int> sizes(static_cast<std::size_t>(t + 1), 0);
  for (int x : hlevel) ++sizes[static_cast<std::size_t>(x)];

  SubdividedFinite out;
  out.plan = plan_from_level_sizes(sizes);
  out.base = base_vertex;

  // H-edges all join consecutive levels (H is bipartite).
  struct RawEdge {
    int lo, hi, level;
  };
  std::vector<RawEdge> raw;
  for (auto [a, b] : h.edges()) {
    int la = hlevel[static_cast<std::size_t>(a)];
    int lb = hlevel[static_cast<std::size_t>(b)];
    if (la > lb) {
      std::swap(a, b);
      std::swap(la, lb);
    }
    assert(lb == la + 1);
    raw.push_back({a, b, la});
  }
  std::sort(raw.begin(), raw.end(), [](const RawEdge& x, const RawEdge& y) {
    return std::tie(x.level, x.lo, x.hi) < std::tie(y.level, y.lo, y.hi);
  });

  int total = n + m;
  for (const auto& e : raw) total += out.plan.s[static_cast<std::size_t>(e.level)];
  out.gprime = FiniteGraph(total);
  out.tags.assign(static_cast<std::size_t>(total), {});
  out.h_down.assign(static_cast<std::size_t>(total), {});
  out.h_up.assign(static_cast<std::size_t>(total), {});
  out.levels.assign(static_cast<std::size_t>(t + 1), {});

  for (int v = 0; v < n + m; ++v) {
    out.tags[static_cast<std::size_t>(v)].h_vertex = true;
    out.tags[static_cast<std::size_t>(v)].level = hlevel[static_cast<std::size_t>(v)];
    out.levels[static_cast<std::size_t>(hlevel[static_cast<std::size_t>(v)])].push_back(v);
  }

  int next = n + m;
  for (std::size_t e = 0; e < raw.size(); ++e) {
    SubdividedFinite::HEdge he;
    he.lo = raw[e].lo;
    he.hi = raw[e].hi;
    he.level = raw[e].level;
    int count = out.plan.s[static_cast<std::size_t>(he.level)];
    int prev = he.lo;
    for (int i = 0; i < count; ++i) {
      out.gprime.add_edge(prev, next);
      out.tags[static_cast<std::size_t>(next)] = {false, -1, static_cast<int>(e), i + 1};
      he.path.push_back(next);
      prev = next;
      ++next;
    }
    out.gprime.add_edge(prev, he.hi);
    out.h_down[static_cast<std::size_t>(he.hi)].push_back(he.lo);
    out.h_up[static_cast<std::size_t>(he.lo)].push_back(he.hi);
    out.hedges.push_back(std::move(he));
  }
  for (auto& v : out.h_down) std::sort(v.begin(), v.end());
  for (auto& v : out.h_up) std::sort(v.begin(), v.end());
  return out;
}

// --- localize_subdivision (lazy trees) ----------------------------------------

namespace {

// Per-depth bookkeeping for the subdivision of a rooted lazy tree: level
// sizes of the halved tree come from sphere sizes of the input, and the
// chain length below depth d is s_{2d} + 1 + s_{2d+1}.
class TreeSubdivState {
 public:
  explicit TreeSubdivState(std::shared_ptr<const LazyTreeGraph> t) : t_(std::move(t)) {
    levels_.push_back({TreeAddress::root()});
  }

  int chain_length(int depth) {
    return s_at(2 * depth) + 1 + s_at(2 * depth + 1);
  }

  int arity_of_original(const TreeAddress& a) { return t_->arity(a); }

 private:
  long long sphere_size(int depth) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(levels_.size()) <= depth) {
      const auto& prev = levels_.back();
      std::vector<TreeAddress> next;
      for (const auto& a : prev) {
        int k = t_->arity(a);
        for (int c = 0; c < k; ++c) next.push_back(a.child(static_cast<std::uint32_t>(c)));
      }
      levels_.push_back(std::move(next));
    }
    return static_cast<long long>(levels_[static_cast<std::size_t>(depth)].size());
  }

  int s_at(int hlevel) {
    // |L_{2d}| = |sphere(d)|, |L_{2d+1}| = |sphere(d+1)| (edge midpoints).
    long long lo = hlevel % 2 == 0 ? sphere_size(hlevel / 2) : sphere_size(hlevel / 2 + 1);
    long long hi = (hlevel + 1) % 2 == 0 ? sphere_size((hlevel + 1) / 2)
                                         : sphere_size((hlevel + 1) / 2 + 1);
    return static_cast<int>(2 + lo + hi);
  }

  std::shared_ptr<const LazyTreeGraph> t_;
  std::mutex mu_;
  std::vector<std::vector<TreeAddress>> levels_;
};

}  // namespace

std::shared_ptr<const LazyTreeGraph> localize_subdivision_tree(
    std::shared_ptr<const LazyTreeGraph> t) {
  auto state = std::make_shared<TreeSubdivState>(std::move(t));
  return make_lazy([state](const TreeAddress& a) {
    TreeAddress u = TreeAddress::root();
    int depth = 0;
    int i = 0;
    while (true) {
      if (i == a.depth()) return state->arity_of_original(u);
      std::uint32_t j = a.step(i);
      if (static_cast<int>(j) >= state->arity_of_original(u))
        throw std::invalid_argument("address not in subdivided tree");
      ++i;
      int zeros = state->chain_length(depth);
      while (zeros > 0 && i < a.depth()) {
        if (a.step(i) != 0) throw std::invalid_argument("address not in subdivided tree");
        ++i;
        --zeros;
      }
      if (zeros > 0) return 1;  // mid-chain
      u = u.child(j);
      ++depth;
    }
  });
}

// --- family coordinate helpers -------------------------------------------------

int sn_branch_child_count(int n) { return n * (n - 1) + 1; }

SnNodeKind sn_node_kind(int n, const TreeAddress& a) {
  return a.depth() % n == 0 ? SnNodeKind::Branch : SnNodeKind::Path;
}

TreeAddress sn_child_branch(int n, const TreeAddress& branch, int child) {
  TreeAddress a = branch.child(static_cast<std::uint32_t>(child));
  for (int i = 1; i < n; ++i) a = a.child(0);
  return a;
}

std::optional<CombCoord> comb_coord(const TreeAddress& a) {
  if (a.is_root()) return CombCoord{0, false};
  std::uint32_t first = a.step(0);
  if (first == 2) {
    if (a.depth() == 1) return CombCoord{0, true};
    return std::nullopt;
  }
  if (first > 1) return std::nullopt;
  int sign = first == 0 ? 1 : -1;
  int i = 1;
  int pos = 1;
  while (i < a.depth() && a.step(i) == 0) {
    ++pos;
    ++i;
  }
  if (i == a.depth()) return CombCoord{sign * pos, false};
  if (i == a.depth() - 1 && a.step(i) == 1) return CombCoord{sign * pos, true};
  return std::nullopt;
}

TreeAddress comb_spine_address(int pos) {
  if (pos == 0) return TreeAddress::root();
  TreeAddress a = TreeAddress::root().child(pos > 0 ? 0 : 1);
  for (int i = 1; i < std::abs(pos); ++i) a = a.child(0);
  return a;
}

TreeAddress comb_leaf_address(int pos) {
  if (pos == 0) return TreeAddress::root().child(2);
  return comb_spine_address(pos).child(1);
}

}  // namespace lzn
