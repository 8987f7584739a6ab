#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lzn/graph.hpp"

namespace lzn {

enum class EndCountKind { Finite, CountablyInfinite, Uncountable };

struct EndCount {
  EndCountKind kind = EndCountKind::Finite;
  int count = 0;  // meaningful for Finite only
  std::string to_string() const;
};

/// A finite decoration glued by an edge from a spine vertex to
/// `attach`. An empty tree means no decoration at that position.
struct DecorationAttachment {
  FiniteGraph tree;
  int attach = 0;
};

/// Pure function of (spine index, position >= 1).
using DecorationRule = std::function<DecorationAttachment(int, int)>;

/// Finite core tree with finitely many spine rays, each spine position
/// optionally decorated by a finite tree. Covers the double ray (trivial
/// core, no decorations) and the comb (single-leaf decorations).
struct DecoratedRaySpec {
  FiniteGraph core;
  int root = 0;
  std::vector<int> spine_attach;  // core vertex per spine
  DecorationRule decorate;        // may be null (no decorations)
};

DecoratedRaySpec double_ray_spec();
DecoratedRaySpec comb_spec();

/// Rooted lazy-tree coordinates for a DecoratedRaySpec. Children of a
/// core vertex are its spines (ascending spine index) followed by its
/// core children (ascending index); children of a spine vertex are the
/// next spine vertex, then the decoration attach vertex if present.
class DecoratedRayLayout {
 public:
  struct Node {
    enum class Kind { Core, Spine, Deco };
    Kind kind = Kind::Core;
    int core_vertex = 0;   // Core
    int spine = -1;        // Spine, Deco
    int pos = 0;           // Spine, Deco
    int deco_vertex = 0;   // Deco
  };

  explicit DecoratedRayLayout(DecoratedRaySpec spec);

  const DecoratedRaySpec& spec() const { return spec_; }
  int spine_count() const { return static_cast<int>(spec_.spine_attach.size()); }

  Node resolve(const TreeAddress& a) const;
  int arity(const TreeAddress& a) const;

  TreeAddress core_address(int core_vertex) const;
  TreeAddress spine_address(int spine, int pos) const;  // pos >= 1

  int core_parent(int v) const { return core_parent_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& core_children(int v) const {
    return core_children_[static_cast<std::size_t>(v)];
  }
  const std::vector<int>& spines_at(int core_vertex) const {
    return spines_at_[static_cast<std::size_t>(core_vertex)];
  }

  DecorationAttachment decoration(int spine, int pos) const;

 private:
  struct RootedDeco {
    FiniteGraph tree;
    int attach;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
  };
  RootedDeco rooted_decoration(int spine, int pos) const;

  DecoratedRaySpec spec_;
  std::vector<int> core_parent_;
  std::vector<std::vector<int>> core_children_;
  std::vector<std::vector<int>> spines_at_;
};

struct FamilyDescriptor {
  enum class Kind {
    Ray,
    DoubleRay,
    Regular,
    Omega,
    Tn,
    Sn,
    Hat,
    Comb,
    Decorated,
    FiniteGiven,
    Subdivided
  };

  Kind kind = Kind::Ray;
  int param = 0;  // delta for Regular, n for Tn/Sn
  std::shared_ptr<DecoratedRaySpec> decorated;
  std::shared_ptr<FiniteGraph> given;
  std::shared_ptr<FamilyDescriptor> inner;  // Subdivided
  std::string source;                       // file path, display only

  static FamilyDescriptor ray() { return {Kind::Ray, 0, nullptr, nullptr, nullptr, ""}; }
  static FamilyDescriptor double_ray();
  static FamilyDescriptor regular(int delta);
  static FamilyDescriptor omega();
  static FamilyDescriptor tn(int n);
  static FamilyDescriptor sn(int n);
  static FamilyDescriptor hat();
  static FamilyDescriptor comb();
  static FamilyDescriptor decorated_ray(DecoratedRaySpec spec);
  static FamilyDescriptor finite_given(FiniteGraph g, std::string source = "");
  static FamilyDescriptor subdivided(FamilyDescriptor inner);

  /// CLI syntax: ray | double-ray | regular:<d> | omega | tn:<n> |
  /// sn:<n> | hat | comb | file:<path> | subdivided:<inner>
  static FamilyDescriptor parse(const std::string& text);
  std::string to_string() const;

  EndCount declared_ends() const;
  bool is_tree_family() const;
};

// --- the subdivision construction --------------------------------------

/// Level sizes, per-level subdivision counts s_i = 2 + |L_i| + |L_{i+1}|,
/// and cumulative base distances D_i = i + sum_{j<i} s_j of the
/// single-localizable subdivision. Indices follow the convention that
/// s_i stretches edges between L_i and L_{i+1}.
struct SubdivisionPlan {
  std::vector<int> level_sizes;
  std::vector<int> s;  // size = levels-1
  std::vector<int> D;  // size = levels

  int locate_level(int d) const;  // unique i >= 1 with D_{i-1} < d <= D_i
};

/// Computes the plan of an already once-subdivided graph from `v`.
/// Finite inputs stop at the eccentricity of v; lazy inputs error if
/// levels extend beyond max_level.
SubdivisionPlan subdivision_plan(const Graph& h, const VertexId& v, int max_level = 64);

/// The fully subdivided finite graph with all bookkeeping the one-cop
/// strategy needs.
struct SubdividedFinite {
  FiniteGraph gprime;
  SubdivisionPlan plan;
  int base = 0;

  struct VTag {
    bool h_vertex = false;
    int level = -1;    // H vertices
    int edge_id = -1;  // internals
    int offset = 0;    // internals: 1..s from the lower-level endpoint
  };
  std::vector<VTag> tags;

  struct HEdge {
    int lo = 0, hi = 0;  // G' indices, lo in L_level, hi in L_level+1
    int level = 0;
    std::vector<int> path;  // internal vertices from the lo side
  };
  std::vector<HEdge> hedges;

  std::vector<std::vector<int>> levels;  // H-vertex G' indices per level
  std::vector<std::vector<int>> h_down;  // per G' vertex: H-neighbors one level down
  std::vector<std::vector<int>> h_up;    // per G' vertex: H-neighbors one level up
};

/// Subdivides every edge of g once, then stretches each level-i H-edge
/// by s_i fresh vertices.
SubdividedFinite localize_subdivision(const FiniteGraph& g, int base_vertex = 0);

/// Lazy variant for rooted tree inputs: same construction driven by the
/// arity oracle, rebased as a lazy tree.
std::shared_ptr<const LazyTreeGraph> localize_subdivision_tree(
    std::shared_ptr<const LazyTreeGraph> t);

// --- build & truncate ---------------------------------------------------

struct BuiltFamily {
  FamilyDescriptor desc;
  std::shared_ptr<const Graph> graph;
  std::optional<FiniteGraph> finite;
  std::shared_ptr<const DecoratedRayLayout> decorated;   // decorated families
  std::shared_ptr<const SubdividedFinite> subdivided;    // finite subdivided
};

BuiltFamily build(const FamilyDescriptor& d);

struct Truncation {
  FiniteGraph graph;
  std::vector<VertexId> to_vertex;  // index -> original vertex
  std::unordered_map<VertexId, int, VertexIdHash> to_index;
};

/// Induced subgraph on ball(root, radius), indexed in BFS order.
Truncation truncate(const Graph& g, int radius);

/// Sidecar correspondence format: one "<index> <vertex>" line per vertex.
std::string correspondence_to_string(const Truncation& t);

// --- family coordinate helpers ------------------------------------------

enum class SnNodeKind { Branch, Path };

int sn_branch_child_count(int n);  // n(n-1)+1
SnNodeKind sn_node_kind(int n, const TreeAddress& a);
/// Address of the `child`-th branch node below `branch`.
TreeAddress sn_child_branch(int n, const TreeAddress& branch, int child);

struct CombCoord {
  int pos = 0;
  bool leaf = false;
};
std::optional<CombCoord> comb_coord(const TreeAddress& a);
TreeAddress comb_spine_address(int pos);
TreeAddress comb_leaf_address(int pos);

}  // namespace lzn
