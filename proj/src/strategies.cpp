#include "lzn/strategies.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lzn {

namespace {

// Shared base: strategies keep internal state but remain deterministic
// functions of the visible history. sync() replays any rounds the
// instance has not yet digested, which makes fresh replicas land in the
// same state.
class SyncedCop : public CopStrategy {
 public:
  ProbeTuple next_probe(const VisibleHistory& h) final {
    sync(h);
    return emit();
  }

 protected:
  void sync(const VisibleHistory& h) {
    if (static_cast<int>(h.size()) < synced_) {
      restart();
      synced_ = 0;
    }
    for (std::size_t r = static_cast<std::size_t>(synced_); r < h.size(); ++r) advance(h[r]);
    synced_ = static_cast<int>(h.size());
  }

  virtual ProbeTuple emit() = 0;
  virtual void advance(const VisibleRound& round) = 0;
  virtual void restart() = 0;

 private:
  int synced_ = 0;
};

class FixedCop final : public CopStrategy {
 public:
  explicit FixedCop(std::vector<VertexId> probe) : probe_(std::move(probe)) {
    if (probe_.empty()) throw std::invalid_argument("fixed strategy needs probes");
  }
  std::string name() const override { return "fixed"; }
  int cop_count() const override { return static_cast<int>(probe_.size()); }
  ProbeTuple next_probe(const VisibleHistory&) override { return probe_; }
  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<FixedCop>(probe_);
  }

 private:
  ProbeTuple probe_;
};

class ScriptCop final : public CopStrategy {
 public:
  ScriptCop(std::string label, std::vector<ProbeTuple> script)
      : label_(std::move(label)), script_(std::move(script)) {
    if (script_.empty()) throw std::invalid_argument("empty probe script");
  }
  std::string name() const override { return label_; }
  int cop_count() const override { return static_cast<int>(script_.front().size()); }
  ProbeTuple next_probe(const VisibleHistory& h) override {
    return script_[h.size() % script_.size()];
  }
  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<ScriptCop>(label_, script_);
  }

 private:
  std::string label_;
  std::vector<ProbeTuple> script_;
};

// --- the branching-tree chase ------------------------------------------------

class SnCop final : public SyncedCop {
  friend std::vector<TreeAddress> lzn::sn_cop_roots(const CopStrategy&, const VisibleHistory&);
 public:
  SnCop(int n, int cops) : n_(n), k_(cops), probed_(n * (n - 1)) {
    if (n_ < 2) throw std::invalid_argument("sn cop needs n >= 2");
    if (k_ < 1 || k_ > probed_) throw std::invalid_argument("bad cop count for sn cop");
    restart();
  }

  std::string name() const override {
    return "sn-cop:" + std::to_string(n_) + ":" + std::to_string(k_);
  }
  int cop_count() const override { return k_; }
  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<SnCop>(n_, k_);
  }

 protected:
  void restart() override {
    root_ = TreeAddress::root();
    pin_child_ = -1;
    block_round_ = 0;
  }

  ProbeTuple emit() override {
    ProbeTuple p;
    if (pin_child_ >= 0) {
      p.push_back(VertexId::from_address(root_));
      TreeAddress c = sn_child_branch(n_, root_, pin_child_);
      for (int j = 1; j < k_; ++j) p.push_back(VertexId::from_address(c));
      return p;
    }
    for (int j = 0; j < k_; ++j) {
      int child = std::min(block_round_ * k_ + j, probed_ - 1);
      p.push_back(VertexId::from_address(sn_child_branch(n_, root_, child)));
    }
    return p;
  }

  void advance(const VisibleRound& round) override {
    if (pin_child_ >= 0) {
      // Pin probes (root, child branch): on the connecting path the two
      // distances sum to n and the engine has already captured; anything
      // larger means the robber sits at or below the child.
      int d_root = round.dist[0];
      int d_child = round.dist.size() > 1 ? round.dist[1] : d_root;
      if (d_root + d_child > n_)
        descend(pin_child_);
      // otherwise stay pinned
      return;
    }
    // Distinct children probed this round with their distances.
    std::vector<std::pair<int, int>> seen;  // (child, dist)
    for (int j = 0; j < static_cast<int>(round.dist.size()); ++j) {
      int child = std::min(block_round_ * k_ + j, probed_ - 1);
      if (seen.empty() || seen.back().first != child)
        seen.emplace_back(child, round.dist[static_cast<std::size_t>(j)]);
    }
    int dmin = seen.front().second, dmax = seen.front().second, cmin = seen.front().first;
    for (auto [c, d] : seen) {
      if (d < dmin) {
        dmin = d;
        cmin = c;
      }
      dmax = std::max(dmax, d);
    }
    bool all_equal = dmin == dmax;
    int last_round = (probed_ + k_ - 1) / k_ - 1;
    if (!all_equal) {
      int others_max = dmax;
      if (dmin < n_ && others_max < 2 * n_)
        pin_child_ = cmin;
      else
        descend(cmin);
      return;
    }
    if (dmin < n_ && seen.size() == 1) {
      // Single-probe rounds carry no comparison; a short distance still
      // places the robber in this child's component.
      pin_child_ = cmin;
      return;
    }
    if (block_round_ == last_round) {
      int omitted = probed_;  // the one child never probed
      if (dmin < 2 * n_)
        pin_child_ = omitted;
      else
        descend(omitted);
      return;
    }
    ++block_round_;
  }

 private:
  void descend(int child) {
    root_ = sn_child_branch(n_, root_, child);
    pin_child_ = -1;
    block_round_ = 0;
  }

  int n_;
  int k_;
  int probed_;  // children probed per block; child `probed_` stays unprobed
  TreeAddress root_;
  int pin_child_ = -1;
  int block_round_ = 0;
};

// --- pivot push on a tree ------------------------------------------------------

using Membership = std::function<bool(const VertexId&)>;

// One cop holds the pivot while the other scans its neighbors; the scan
// probe undercuts the pivot probe by one exactly when it hits the
// robber's subtree, and the pivot advances there.
class PushMachine {
 public:
  PushMachine(const Graph& g, VertexId pivot, Membership member)
      : g_(g), member_(std::move(member)) {
    reset(std::move(pivot));
  }

  void reset(VertexId pivot) {
    pivot_ = std::move(pivot);
    exclude_.reset();
    rebuild_queue();
  }

  ProbeTuple emit() const {
    VertexId scan = queue_.empty() ? pivot_ : queue_[static_cast<std::size_t>(idx_)];
    return {pivot_, scan};
  }

  void advance(const VisibleRound& round) {
    int d_pivot = round.dist[0];
    int d_scan = round.dist[1];
    if (!queue_.empty() && d_scan == d_pivot - 1) {
      VertexId next = queue_[static_cast<std::size_t>(idx_)];
      exclude_ = pivot_;
      pivot_ = next;
      rebuild_queue();
      return;
    }
    if (!queue_.empty()) idx_ = (idx_ + 1) % static_cast<int>(queue_.size());
  }

  const VertexId& pivot() const { return pivot_; }

 private:
  void rebuild_queue() {
    queue_.clear();
    idx_ = 0;
    for (const VertexId& w : g_.neighbors(pivot_)) {
      if (exclude_ && w == *exclude_) continue;
      if (member_ && !member_(w)) continue;
      queue_.push_back(w);
    }
    std::sort(queue_.begin(), queue_.end());
  }

  const Graph& g_;
  Membership member_;
  VertexId pivot_;
  std::optional<VertexId> exclude_;
  std::vector<VertexId> queue_;
  int idx_ = 0;
};

class PushCop final : public SyncedCop {
 public:
  PushCop(std::shared_ptr<const Graph> g, VertexId pivot)
      : g_(std::move(g)), start_(std::move(pivot)), machine_(*g_, start_, nullptr) {}

  std::string name() const override { return "push:" + start_.to_string(); }
  int cop_count() const override { return 2; }
  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<PushCop>(g_, start_);
  }

 protected:
  void restart() override { machine_.reset(start_); }
  ProbeTuple emit() override { return machine_.emit(); }
  void advance(const VisibleRound& round) override { machine_.advance(round); }

 private:
  std::shared_ptr<const Graph> g_;
  VertexId start_;
  PushMachine machine_;
};

// --- two cops, finitely many ends ------------------------------------------------

// Frames of the ray-splitting recursion. Each frame owns a component of
// the previous split, probes its pivot plus descending ray positions,
// and the arithmetic of the two distances names the component holding
// the robber: sum = i on the ray (immediate capture), difference = i in
// the i-th split component, reversed difference in the pivot-side one.
class EndsTwoCop final : public SyncedCop {
 public:
  EndsTwoCop(std::shared_ptr<const DecoratedRayLayout> layout, VertexId pivot)
      : layout_(std::move(layout)), start_(std::move(pivot)) {
    DecoratedRayLayout::Node node;
    try {
      node = layout_->resolve(start_.address());
    } catch (const std::exception&) {
      throw std::invalid_argument("ends-two-cop: pivot not in the described tree");
    }
    if (node.kind != DecoratedRayLayout::Node::Kind::Core)
      throw std::invalid_argument("ends-two-cop: pivot must be a core vertex");
    restart();
  }

  std::string name() const override { return "ends-two-cop"; }
  int cop_count() const override { return 2; }
  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<EndsTwoCop>(layout_, start_);
  }

 protected:
  void restart() override {
    push_.reset();
    frame_ = initial_frame();
    phase_ = Phase::FrameStart;
    i_ = 0;
  }

  ProbeTuple emit() override {
    if (push_) return push_->emit();
    VertexId p = core_vid(frame_.core_path.front());
    if (phase_ == Phase::FrameStart) return {p, p};
    return {p, ray_vertex(i_)};
  }

  void advance(const VisibleRound& round) override {
    if (push_) {
      push_->advance(round);
      return;
    }
    if (phase_ == Phase::FrameStart) {
      int d = round.dist[0];
      if (d == 0) return;  // engine has the capture
      i_ = d + 1;
      phase_ = Phase::Arith;
      return;
    }
    int d1 = round.dist[0];
    int d2 = round.dist[1];
    if (d1 + d2 == i_) return;  // robber on the ray; singleton filter fires
    if (d1 - d2 == i_) {
      enter_component(i_);
      return;
    }
    if (d2 - d1 == i_) {
      enter_component(0);
      return;
    }
    --i_;
    if (i_ < 1)
      throw std::logic_error("ends-two-cop: ray arithmetic failed to localize the robber");
  }

 private:
  enum class Phase { FrameStart, Arith };

  struct Frame {
    std::vector<int> core_set;   // sorted core vertices of the component
    std::vector<int> spines;     // spine ids attached inside it
    int ray_spine = -1;          // first spine: the frame's ray
    std::vector<int> core_path;  // pivot ... attach(ray_spine)
  };

  VertexId core_vid(int core_vertex) const {
    return VertexId::from_address(layout_->core_address(core_vertex));
  }

  VertexId ray_vertex(int i) const {
    int path_len = static_cast<int>(frame_.core_path.size()) - 1;
    if (i <= path_len) return core_vid(frame_.core_path[static_cast<std::size_t>(i)]);
    return VertexId::from_address(layout_->spine_address(frame_.ray_spine, i - path_len));
  }

  std::vector<int> core_path_between(int u, int v) const {
    const FiniteGraph& core = layout_->spec().core;
    std::vector<int> parent(static_cast<std::size_t>(core.vertex_count()), -2);
    std::vector<int> queue{u};
    parent[static_cast<std::size_t>(u)] = -1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (int w : core.neighbors(queue[qi])) {
        if (parent[static_cast<std::size_t>(w)] != -2) continue;
        parent[static_cast<std::size_t>(w)] = queue[qi];
        queue.push_back(w);
      }
    }
    std::vector<int> path;
    for (int x = v; x != -1; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;  // starts at u, ends at v
  }

  Frame initial_frame() const {
    Frame f;
    for (int v = 0; v < layout_->spec().core.vertex_count(); ++v) f.core_set.push_back(v);
    for (int s = 0; s < layout_->spine_count(); ++s) f.spines.push_back(s);
    if (f.spines.empty())
      throw std::invalid_argument("ends-two-cop: description has no spine rays");
    f.ray_spine = f.spines.front();
    int pivot = layout_->resolve(start_.address()).core_vertex;
    f.core_path = core_path_between(
        pivot, layout_->spec().spine_attach[static_cast<std::size_t>(f.ray_spine)]);
    return f;
  }

  void enter_component(int i) {
    int path_len = static_cast<int>(frame_.core_path.size()) - 1;
    int ray_spine = frame_.ray_spine;
    if (i > path_len) {
      // A decoration hanging off the frame's ray: finite, push it.
      int pos = i - path_len;
      VertexId pivot = ray_vertex(i);
      auto layout = layout_;
      Membership member = [layout, ray_spine, pos](const VertexId& x) {
        auto node = layout->resolve(x.address());
        if (node.kind == DecoratedRayLayout::Node::Kind::Spine)
          return node.spine == ray_spine && node.pos == pos;
        if (node.kind == DecoratedRayLayout::Node::Kind::Deco)
          return node.spine == ray_spine && node.pos == pos;
        return false;
      };
      start_push(pivot, std::move(member));
      return;
    }
    // A core-side component: cut the ray's core path edges and take the
    // piece holding core_path[i].
    std::set<std::pair<int, int>> cut;
    for (std::size_t j = 0; j + 1 < frame_.core_path.size(); ++j) {
      int a = frame_.core_path[j], b = frame_.core_path[j + 1];
      cut.insert({std::min(a, b), std::max(a, b)});
    }
    const FiniteGraph& core = layout_->spec().core;
    std::set<int> in_frame(frame_.core_set.begin(), frame_.core_set.end());
    std::vector<int> comp;
    {
      std::set<int> seen;
      std::vector<int> queue{frame_.core_path[static_cast<std::size_t>(i)]};
      seen.insert(queue.front());
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        comp.push_back(x);
        for (int w : core.neighbors(x)) {
          if (!in_frame.count(w) || seen.count(w)) continue;
          if (cut.count({std::min(x, w), std::max(x, w)})) continue;
          seen.insert(w);
          queue.push_back(w);
        }
      }
      std::sort(comp.begin(), comp.end());
    }
    std::vector<int> spines_here;
    for (int s : frame_.spines) {
      if (s == ray_spine) continue;
      if (std::binary_search(comp.begin(), comp.end(),
                             layout_->spec().spine_attach[static_cast<std::size_t>(s)]))
        spines_here.push_back(s);
    }
    int pivot_core = frame_.core_path[static_cast<std::size_t>(i)];
    if (spines_here.empty()) {
      auto layout = layout_;
      auto comp_shared = std::make_shared<std::vector<int>>(comp);
      Membership member = [layout, comp_shared](const VertexId& x) {
        auto node = layout->resolve(x.address());
        return node.kind == DecoratedRayLayout::Node::Kind::Core &&
               std::binary_search(comp_shared->begin(), comp_shared->end(), node.core_vertex);
      };
      start_push(core_vid(pivot_core), std::move(member));
      return;
    }
    Frame next;
    next.core_set = std::move(comp);
    next.spines = std::move(spines_here);
    next.ray_spine = next.spines.front();
    {
      std::vector<int> full = core_path_between(
          pivot_core, layout_->spec().spine_attach[static_cast<std::size_t>(next.ray_spine)]);
      next.core_path = std::move(full);
    }
    frame_ = std::move(next);
    phase_ = Phase::FrameStart;
    i_ = 0;
  }

  void start_push(VertexId pivot, Membership member) {
    push_.emplace(*graph(), std::move(pivot), std::move(member));
  }

  const Graph* graph() {
    if (!graph_) graph_ = std::make_shared<LazyTreeGraph>([layout = layout_](
                                                              const TreeAddress& a) {
      return layout->arity(a);
    });
    return graph_.get();
  }

  std::shared_ptr<const DecoratedRayLayout> layout_;
  VertexId start_;
  std::shared_ptr<const Graph> graph_;
  Frame frame_;
  Phase phase_ = Phase::FrameStart;
  int i_ = 0;
  std::optional<PushMachine> push_;
};

// --- one cop on a subdivided graph -------------------------------------------------

class SubdivisionCop final : public SyncedCop {
 public:
  explicit SubdivisionCop(std::shared_ptr<const SubdividedFinite> sub) : sub_(std::move(sub)) {
    if (!sub_) throw std::invalid_argument("subdivision-one-cop: missing plan and tags");
    restart();
  }

  std::string name() const override { return "subdivision-one-cop"; }
  int cop_count() const override { return 1; }
  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<SubdivisionCop>(sub_);
  }

 protected:
  void restart() override {
    phase_ = Phase::Start;
    band_ = 0;
    layer_ = 0;
    idx_ = 0;
    probe_v_next_ = false;
    w_ = -1;
    pin_partner_ = -1;
    pin_rounds_ = 0;
  }

  ProbeTuple emit() override {
    switch (phase_) {
      case Phase::Start:
        return {VertexId::from_index(sub_->base)};
      case Phase::Band:
        if (probe_v_next_) return {VertexId::from_index(sub_->base)};
        return {VertexId::from_index(band_queue_[static_cast<std::size_t>(idx_)])};
      case Phase::LayerScan:
        return {VertexId::from_index(layer_members()[static_cast<std::size_t>(idx_)])};
      case Phase::Anchor:
        return {VertexId::from_index(sub_->base)};
      case Phase::NeighborScan:
        return {VertexId::from_index(nbr_queue_[static_cast<std::size_t>(idx_)])};
      case Phase::Pin:
        return {VertexId::from_index(pin_rounds_ % 2 == 0 ? w_ : pin_partner_)};
    }
    return {VertexId::from_index(sub_->base)};
  }

  void advance(const VisibleRound& round) override {
    int d = round.dist[0];
    switch (phase_) {
      case Phase::Start: {
        if (d == 0) return;  // captured at the base
        band_ = sub_->plan.locate_level(d);
        band_queue_ = sub_->levels[static_cast<std::size_t>(band_)];
        const auto& lower = sub_->levels[static_cast<std::size_t>(band_ - 1)];
        band_queue_.insert(band_queue_.end(), lower.begin(), lower.end());
        idx_ = 0;
        probe_v_next_ = false;
        phase_ = Phase::Band;
        return;
      }
      case Phase::Band: {
        if (probe_v_next_) {
          probe_v_next_ = false;
          if (std::abs(d - sub_->plan.D[static_cast<std::size_t>(band_ - 1)]) <= 1) {
            enter_layer(band_ - 1);
          } else if (std::abs(d - sub_->plan.D[static_cast<std::size_t>(band_)]) <= 1) {
            enter_layer(band_);
          }
          return;
        }
        idx_ = (idx_ + 1) % static_cast<int>(band_queue_.size());
        probe_v_next_ = true;
        return;
      }
      case Phase::LayerScan: {
        const auto& members = layer_members();
        if (d <= static_cast<int>(members.size()) + 1) {
          w_ = members[static_cast<std::size_t>(idx_)];
          phase_ = Phase::Anchor;
          return;
        }
        idx_ = (idx_ + 1) % static_cast<int>(members.size());
        return;
      }
      case Phase::Anchor: {
        int dl = sub_->plan.D[static_cast<std::size_t>(layer_)];
        if (d == dl) {
          // Robber pinned at w; the singleton filter has fired. If not,
          // rescan the layer.
          enter_layer(layer_);
          return;
        }
        const auto& queue = d < dl ? sub_->h_down[static_cast<std::size_t>(w_)]
                                   : sub_->h_up[static_cast<std::size_t>(w_)];
        if (queue.empty()) {
          restart();
          return;
        }
        nbr_queue_ = queue;
        threshold_ = d < dl ? sub_->plan.s[static_cast<std::size_t>(layer_ - 1)]
                            : sub_->plan.s[static_cast<std::size_t>(layer_)];
        idx_ = 0;
        phase_ = Phase::NeighborScan;
        return;
      }
      case Phase::NeighborScan: {
        if (d <= threshold_) {
          pin_partner_ = nbr_queue_[static_cast<std::size_t>(idx_)];
          pin_rounds_ = 0;
          phase_ = Phase::Pin;
          return;
        }
        idx_ = (idx_ + 1) % static_cast<int>(nbr_queue_.size());
        return;
      }
      case Phase::Pin: {
        if (++pin_rounds_ > 2 * (threshold_ + 4)) restart();
        return;
      }
    }
  }

 private:
  enum class Phase { Start, Band, LayerScan, Anchor, NeighborScan, Pin };

  const std::vector<int>& layer_members() const {
    return sub_->levels[static_cast<std::size_t>(layer_)];
  }

  void enter_layer(int layer) {
    layer_ = layer;
    idx_ = 0;
    phase_ = Phase::LayerScan;
  }

  std::shared_ptr<const SubdividedFinite> sub_;
  Phase phase_ = Phase::Start;
  int band_ = 0;                 // robber between levels band_-1 and band_
  std::vector<int> band_queue_;  // L_band then L_band-1
  int layer_ = 0;                // phase-2 layer
  int idx_ = 0;
  bool probe_v_next_ = false;
  int w_ = -1;
  std::vector<int> nbr_queue_;
  int threshold_ = 0;
  int pin_partner_ = -1;
  int pin_rounds_ = 0;
};

// --- seeded probe noise ---------------------------------------------------------

class RandomCop final : public CopStrategy {
 public:
  RandomCop(std::shared_ptr<const Graph> g, int k, std::uint64_t seed, int base_radius)
      : g_(std::move(g)), k_(k), seed_(seed), base_radius_(base_radius), rng_(seed) {
    if (k_ < 1) throw std::invalid_argument("need at least one cop");
  }

  std::string name() const override {
    return "random:" + std::to_string(k_) + ":" + std::to_string(seed_);
  }
  int cop_count() const override { return k_; }

  ProbeTuple next_probe(const VisibleHistory& h) override {
    std::size_t round = h.size();
    while (generated_.size() <= round) generated_.push_back(generate(generated_.size()));
    return generated_[round];
  }

  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<RandomCop>(g_, k_, seed_, base_radius_);
  }

 private:
  ProbeTuple generate(std::size_t round) {
    ProbeTuple p;
    for (int j = 0; j < k_; ++j) {
      if (g_->finite()) {
        p.push_back(VertexId::from_index(
            static_cast<int>(rng_() % static_cast<std::uint64_t>(g_->vertex_count()))));
      } else {
        int radius = base_radius_ + static_cast<int>(round);
        int depth = static_cast<int>(rng_() % static_cast<std::uint64_t>(radius + 1));
        const auto* tree = dynamic_cast<const LazyTreeGraph*>(g_.get());
        TreeAddress a = TreeAddress::root();
        for (int s = 0; s < depth; ++s) {
          int arity = tree->arity(a);
          if (arity == 0) break;
          a = a.child(static_cast<std::uint32_t>(rng_() % static_cast<std::uint64_t>(arity)));
        }
        p.push_back(VertexId::from_address(a));
      }
    }
    return p;
  }

  std::shared_ptr<const Graph> g_;
  int k_;
  std::uint64_t seed_;
  int base_radius_;
  std::mt19937_64 rng_;
  std::vector<ProbeTuple> generated_;
};

// --- replaying a truncation strategy on the infinite family ------------------------

class TruncationReplayCop final : public CopStrategy {
 public:
  TruncationReplayCop(std::shared_ptr<const Truncation> trunc,
                      std::unique_ptr<CopStrategy> inner, int k)
      : trunc_(std::move(trunc)), inner_(std::move(inner)), k_(k) {}

  std::string name() const override { return "solver-replay:" + std::to_string(k_); }
  int cop_count() const override { return k_; }

  ProbeTuple next_probe(const VisibleHistory& h) override {
    VisibleHistory translated;
    translated.reserve(h.size());
    for (const VisibleRound& r : h) {
      VisibleRound t;
      t.dist = r.dist;
      for (const VertexId& v : r.probe) {
        auto it = trunc_->to_index.find(v);
        t.probe.push_back(VertexId::from_index(it == trunc_->to_index.end() ? 0 : it->second));
      }
      translated.push_back(std::move(t));
    }
    ProbeTuple inner_probe = inner_->next_probe(translated);
    ProbeTuple out;
    for (const VertexId& v : inner_probe)
      out.push_back(trunc_->to_vertex[static_cast<std::size_t>(v.index())]);
    while (static_cast<int>(out.size()) < k_) out.push_back(out.back());
    out.resize(static_cast<std::size_t>(k_));
    return out;
  }

  std::unique_ptr<CopStrategy> fresh() const override {
    return std::make_unique<TruncationReplayCop>(trunc_, inner_->fresh(), k_);
  }

 private:
  std::shared_ptr<const Truncation> trunc_;
  std::unique_ptr<CopStrategy> inner_;
  int k_;
};

// --- concrete robbers ----------------------------------------------------------------

class ConcreteRobber final : public RobberAgent {
 public:
  ConcreteRobber(VertexId start, ConcretePolicy policy)
      : start_(std::move(start)), policy_(policy), rng_(policy.seed) {}

  std::string name() const override { return "concrete:at=" + start_.to_string(); }

  VertexId initial_position(const Graph&, const Lookahead&) override {
    rng_.seed(policy_.seed);
    return start_;
  }

  VertexId move(const Graph& g, const VertexId& current, const VisibleHistory& h,
                const Lookahead&) override {
    switch (policy_.kind) {
      case ConcretePolicy::Kind::Stay:
        return current;
      case ConcretePolicy::Kind::Flee: {
        const ProbeTuple& probes = h.back().probe;
        auto score = [&](const VertexId& x) {
          int best = std::numeric_limits<int>::max();
          for (const VertexId& u : probes) best = std::min(best, distance(g, u, x));
          return best;
        };
        VertexId best = current;
        int best_score = score(current);
        auto nb = g.neighbors(current);
        std::sort(nb.begin(), nb.end());
        for (const VertexId& w : nb) {
          int s = score(w);
          if (s > best_score) {
            best = w;
            best_score = s;
          }
        }
        return best;
      }
      case ConcretePolicy::Kind::Walk: {
        auto nb = g.neighbors(current);
        std::sort(nb.begin(), nb.end());
        nb.push_back(current);
        return nb[static_cast<std::size_t>(rng_() % nb.size())];
      }
      case ConcretePolicy::Kind::Rush: {
        if (!policy_.target || current == *policy_.target) return current;
        int here = distance(g, current, *policy_.target);
        auto nb = g.neighbors(current);
        std::sort(nb.begin(), nb.end());
        for (const VertexId& w : nb)
          if (distance(g, w, *policy_.target) < here) return w;
        return current;
      }
    }
    return current;
  }

 private:
  VertexId start_;
  ConcretePolicy policy_;
  std::mt19937_64 rng_;
};

// --- the omniscient branching-tree evader ----------------------------------------------

class SnRobber final : public RobberAgent {
 public:
  explicit SnRobber(int n) : n_(n), components_(n * (n - 1) + 1) {
    if (n_ < 2) throw std::invalid_argument("sn robber needs n >= 2");
  }

  std::string name() const override { return "sn-robber:" + std::to_string(n_); }

  // Starts on the first branch node of a component the cops will leave
  // alone for n rounds. Branch arrivals then fall on rounds 1 mod n, so
  // every stay at a branch node coincides with a fresh probing block and
  // the component chosen on departure keeps its n-round grace period.
  VertexId initial_position(const Graph& g, const Lookahead& la) override {
    target_ = select_component(g, la, TreeAddress::root(), /*parked=*/true);
    return VertexId::from_address(target_);
  }

  VertexId move(const Graph& g, const VertexId& current, const VisibleHistory&,
                const Lookahead& la) override {
    const TreeAddress& at = current.address();
    if (at == target_) target_ = select_component(g, la, at, /*parked=*/false);
    return VertexId::from_address(target_.prefix(at.depth() + 1));
  }

 private:
  // Picks a child branch whose component no cop will probe during the
  // next n rounds. The counting argument guarantees one exists; a full
  // window is a loud failure, not something to improvise around.
  TreeAddress select_component(const Graph& g, const Lookahead& la, const TreeAddress& s,
                               bool parked) {
    (void)g;
    for (int c = 0; c < components_; ++c) {
      TreeAddress branch = sn_child_branch(n_, s, c);
      TreeAddress prefix = s.child(static_cast<std::uint32_t>(c));
      std::vector<VertexId> path;
      for (int t = 1; t <= n_; ++t) {
        int depth = parked ? n_ : s.depth() + t;
        path.push_back(VertexId::from_address(branch.prefix(depth)));
      }
      bool clean = true;
      for (const ProbeTuple& probe : la.future_probes(path)) {
        for (const VertexId& u : probe) {
          if (u.is_address() && prefix.is_prefix_of(u.address())) {
            clean = false;
            break;
          }
        }
        if (!clean) break;
      }
      if (clean) return branch;
    }
    throw std::logic_error(
        "sn robber: every component is probed within the lookahead window");
  }

  int n_;
  int components_;
  TreeAddress target_;
};

// --- the comb evader ---------------------------------------------------------------------

class CombRobber final : public RobberAgent {
 public:
  CombRobber() = default;

  std::string name() const override { return "comb-robber"; }
  bool phantom() const override { return true; }

  DistanceVector choose_vector(const Graph& g, const CandidateSet&, 
                               const ProbeTuple& probe) override {
    if (probe.size() != 1)
      throw std::invalid_argument("comb robber plays against exactly one cop");
    auto coord = comb_coord(probe[0].address());
    if (!coord) throw std::invalid_argument("comb robber: probe is not a comb vertex");
    if (!started_) {
      started_ = true;
      spine_ = coord->leaf ? coord->pos + 1 : coord->pos + 2;
      return {2};
    }
    // Cases on the probe's side of the tracked spine vertex v: probing v
    // or its left side leaves {w, v'}; the right side leaves {u, v'};
    // probing the leaf v' leaves {u, w}.
    if (!coord->leaf && coord->pos == spine_) {
      spine_ += 1;
      return {1};
    }
    if (coord->leaf && coord->pos == spine_) {
      spine_ -= 1;
      return {2};
    }
    VertexId v = VertexId::from_address(comb_spine_address(spine_));
    int d = distance(g, probe[0], v);
    if (coord->pos < spine_) {
      spine_ += 1;
    } else {
      spine_ -= 1;
    }
    return {d + 1};
  }

  int tracked_spine() const { return spine_; }

 private:
  bool started_ = false;
  int spine_ = 0;
};

// --- greedy phantom ------------------------------------------------------------------------

class GreedyPhantom final : public RobberAgent {
 public:
  explicit GreedyPhantom(int horizon) : horizon_(horizon) {}

  std::string name() const override { return "phantom-greedy"; }
  bool phantom() const override { return true; }

  DistanceVector choose_vector(const Graph& g, const CandidateSet& pre,
                               const ProbeTuple& probe) override {
    if (pre.is_all() && !g.finite()) {
      // Declared horizon: walk straight down from the first probe.
      const auto* tree = dynamic_cast<const LazyTreeGraph*>(&g);
      TreeAddress a = probe[0].address();
      for (int i = 0; i < horizon_; ++i) {
        if (tree->arity(a) == 0) break;
        a = a.child(0);
      }
      return probe_response(g, VertexId::from_address(a), probe);
    }
    auto classes = partition_candidates(g, pre, probe);
    const std::vector<VertexId>* best = nullptr;
    const DistanceVector* best_vec = nullptr;
    for (const auto& [vec, members] : classes) {
      if (best == nullptr || members.size() > best->size() ||
          (members.size() == best->size() && members.front() < best->front())) {
        best = &members;
        best_vec = &vec;
      }
    }
    return *best_vec;
  }

 private:
  int horizon_;
};

}  // namespace

// --- factories ---------------------------------------------------------------------------

std::unique_ptr<CopStrategy> make_ray_one_cop(const BuiltFamily& family) {
  if (family.desc.kind != FamilyDescriptor::Kind::Ray)
    throw std::invalid_argument("ray-one-cop requires the ray family");
  return make_fixed_cop({family.graph->root()});
}

std::unique_ptr<CopStrategy> make_sn_cop(const BuiltFamily& family, int n, int cops) {
  if (family.desc.kind != FamilyDescriptor::Kind::Sn || family.desc.param != n)
    throw std::invalid_argument("sn-cop requires the matching sn family");
  return std::make_unique<SnCop>(n, cops < 0 ? n : cops);
}

std::unique_ptr<CopStrategy> make_push_cop(const BuiltFamily& family, const VertexId& pivot) {
  const auto& g = family.graph;
  if (g->finite()) {
    const auto& fg = dynamic_cast<const FiniteGraphView&>(*g).underlying();
    if (!fg.is_tree()) throw std::invalid_argument("push strategy requires a tree");
  } else if (!g->tree_metric()) {
    throw std::invalid_argument("push strategy requires a tree");
  }
  if (!g->contains(pivot)) throw std::invalid_argument("pivot not in graph");
  return std::make_unique<PushCop>(g, pivot);
}

std::unique_ptr<CopStrategy> make_finite_ends_two_cop(const BuiltFamily& family,
                                                      const VertexId& pivot) {
  if (!family.decorated)
    throw std::invalid_argument(
        "ends-two-cop requires a decorated-ray family description");
  return std::make_unique<EndsTwoCop>(family.decorated, pivot);
}

std::unique_ptr<CopStrategy> make_subdivision_one_cop(const BuiltFamily& family) {
  if (!family.subdivided)
    throw std::invalid_argument("subdivision-one-cop requires a subdivided finite family");
  return std::make_unique<SubdivisionCop>(family.subdivided);
}

std::unique_ptr<CopStrategy> make_subdivision_one_cop(
    std::shared_ptr<const SubdividedFinite> sub) {
  return std::make_unique<SubdivisionCop>(std::move(sub));
}

std::unique_ptr<CopStrategy> make_random_cop(const BuiltFamily& family, int k,
                                             std::uint64_t seed, int base_radius) {
  return std::make_unique<RandomCop>(family.graph, k, seed, base_radius);
}

std::unique_ptr<CopStrategy> make_fixed_cop(std::vector<VertexId> probe) {
  return std::make_unique<FixedCop>(std::move(probe));
}

std::unique_ptr<CopStrategy> make_script_cop(std::string label, std::vector<ProbeTuple> script) {
  return std::make_unique<ScriptCop>(std::move(label), std::move(script));
}

std::vector<TreeAddress> sn_cop_roots(const CopStrategy& proto, const VisibleHistory& h) {
  auto replica = proto.fresh();
  auto* sn = dynamic_cast<SnCop*>(replica.get());
  if (sn == nullptr) throw std::invalid_argument("not an sn-cop strategy");
  std::vector<TreeAddress> roots;
  VisibleHistory fed;
  for (const VisibleRound& round : h) {
    sn->next_probe(fed);
    roots.push_back(sn->root_);
    fed.push_back(round);
  }
  return roots;
}

std::unique_ptr<CopStrategy> make_truncation_replay_cop(const BuiltFamily& family, int k,
                                                        int radius, const SolverOptions& opts) {
  auto trunc = std::make_shared<Truncation>(truncate(*family.graph, radius));
  std::shared_ptr<WinTable> table;
  bool win = false;
  try {
    auto [w, t] = cop_wins(trunc->graph, 1, opts);
    win = w;
    table = t;
  } catch (const BudgetExceeded&) {
    auto [w, t] = cop_wins_directed(trunc->graph, 1, opts);
    win = w;
    table = t;
  }
  if (!win) {
    auto [w, t] = cop_wins_directed(trunc->graph, 1, opts);
    win = w;
    table = t;
  }
  if (!win) throw std::runtime_error("truncation is not one-cop localizable");
  auto inner = synthesize_strategy(trunc->graph, 1, table, /*fallback_reset=*/true);
  return std::make_unique<TruncationReplayCop>(trunc, std::move(inner), k);
}

std::unique_ptr<RobberAgent> make_concrete_robber(VertexId start, ConcretePolicy policy) {
  return std::make_unique<ConcreteRobber>(std::move(start), policy);
}

std::unique_ptr<RobberAgent> make_sn_robber(const BuiltFamily& family, int n) {
  if (family.desc.kind != FamilyDescriptor::Kind::Sn || family.desc.param != n)
    throw std::invalid_argument("sn-robber requires the matching sn family");
  return std::make_unique<SnRobber>(n);
}

std::unique_ptr<RobberAgent> make_comb_robber(const BuiltFamily& family) {
  if (family.desc.kind != FamilyDescriptor::Kind::Comb)
    throw std::invalid_argument("comb-robber requires the comb family");
  return std::make_unique<CombRobber>();
}

std::unique_ptr<RobberAgent> make_greedy_phantom(int horizon) {
  return std::make_unique<GreedyPhantom>(horizon);
}

int comb_robber_tracked_spine(const RobberAgent& agent) {
  return dynamic_cast<const CombRobber&>(agent).tracked_spine();
}

TreeAddress OmegaEmbedding::embed(const TreeAddress& a) const {
  std::vector<std::uint32_t> steps = subtree_root.steps();
  for (std::uint32_t s : a.steps()) steps.push_back(s);
  return TreeAddress(std::move(steps));
}

OmegaEmbedding omega_subtree_reduction(int m) {
  if (m < 1) throw std::invalid_argument("need at least one cop to evade");
  int r = 1;
  while (r * r < m + 1) ++r;
  OmegaEmbedding e;
  e.required_arity = 2 * r;
  // In the increasing-arity tree a vertex at depth d has d + 1 children,
  // so everything at or below depth required-1 has enough branching.
  std::vector<std::uint32_t> steps(static_cast<std::size_t>(e.required_arity - 1), 0);
  e.subtree_root = TreeAddress(std::move(steps));
  return e;
}

// --- registry -------------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

VertexId parse_vertex_or_throw(const std::string& text) {
  auto v = VertexId::parse(text);
  if (!v) throw std::invalid_argument("cannot parse vertex: " + text);
  return *v;
}

}  // namespace

std::unique_ptr<CopStrategy> make_cop_strategy(const std::string& name,
                                               const StrategyContext& ctx) {
  auto parts = split(name, ':');
  const std::string& head = parts[0];
  if (head == "ray-one-cop") return make_ray_one_cop(ctx.family);
  if (head == "sn-cop") {
    if (parts.size() < 2) throw std::invalid_argument("sn-cop:<n>[:<k>]");
    int n = std::stoi(parts[1]);
    int k = parts.size() > 2 ? std::stoi(parts[2]) : -1;
    return make_sn_cop(ctx.family, n, k);
  }
  if (head == "push") {
    if (parts.size() != 2) throw std::invalid_argument("push:<pivot>");
    return make_push_cop(ctx.family, parse_vertex_or_throw(parts[1]));
  }
  if (head == "ends-two-cop") {
    VertexId pivot = parts.size() > 1 ? parse_vertex_or_throw(parts[1])
                                      : ctx.family.graph->root();
    return make_finite_ends_two_cop(ctx.family, pivot);
  }
  if (head == "subdivision-one-cop") return make_subdivision_one_cop(ctx.family);
  if (head == "solver") {
    if (parts.size() != 2) throw std::invalid_argument("solver:<k>");
    int k = std::stoi(parts[1]);
    if (!ctx.family.finite)
      throw std::invalid_argument("solver strategies need a finite graph");
    auto [win, table] = cop_wins(*ctx.family.finite, k, ctx.solver);
    if (!win) throw std::runtime_error("no winning strategy with " + parts[1] + " cops");
    return synthesize_strategy(*ctx.family.finite, k, table);
  }
  if (head == "solver-replay") {
    if (parts.size() != 3) throw std::invalid_argument("solver-replay:<k>:<radius>");
    return make_truncation_replay_cop(ctx.family, std::stoi(parts[1]), std::stoi(parts[2]),
                                      ctx.solver);
  }
  if (head == "random") {
    if (parts.size() != 3) throw std::invalid_argument("random:<k>:<seed>");
    return make_random_cop(ctx.family, std::stoi(parts[1]),
                           static_cast<std::uint64_t>(std::stoull(parts[2])));
  }
  if (head == "fixed") {
    if (parts.size() != 2) throw std::invalid_argument("fixed:<v>[,<v>...]");
    std::vector<VertexId> probe;
    for (const std::string& tok : split(parts[1], ','))
      probe.push_back(parse_vertex_or_throw(tok));
    return make_fixed_cop(std::move(probe));
  }
  throw std::invalid_argument("unknown cop strategy: " + name);
}

std::unique_ptr<RobberAgent> make_robber(const std::string& name, const StrategyContext& ctx) {
  auto parts = split(name, ':');
  const std::string& head = parts[0];
  if (head == "concrete") {
    if (parts.size() < 2 || parts[1].rfind("at=", 0) != 0)
      throw std::invalid_argument("concrete:at=<v>[:stay|:flee|:walk=<seed>|:rush=<v>]");
    VertexId start = parse_vertex_or_throw(parts[1].substr(3));
    ConcretePolicy policy;
    if (parts.size() > 2) {
      const std::string& p = parts[2];
      if (p == "stay") {
        policy.kind = ConcretePolicy::Kind::Stay;
      } else if (p == "flee") {
        policy.kind = ConcretePolicy::Kind::Flee;
      } else if (p.rfind("walk=", 0) == 0) {
        policy.kind = ConcretePolicy::Kind::Walk;
        policy.seed = std::stoull(p.substr(5));
      } else if (p.rfind("rush=", 0) == 0) {
        policy.kind = ConcretePolicy::Kind::Rush;
        policy.target = parse_vertex_or_throw(p.substr(5));
      } else {
        throw std::invalid_argument("unknown robber policy: " + p);
      }
    }
    return make_concrete_robber(std::move(start), policy);
  }
  if (head == "sn-robber") {
    if (parts.size() != 2) throw std::invalid_argument("sn-robber:<n>");
    return make_sn_robber(ctx.family, std::stoi(parts[1]));
  }
  if (head == "comb-robber") return make_comb_robber(ctx.family);
  if (head == "phantom-greedy")
    return make_greedy_phantom(parts.size() > 1 ? std::stoi(parts[1]) : 3);
  throw std::invalid_argument("unknown robber: " + name);
}

}  // namespace lzn
