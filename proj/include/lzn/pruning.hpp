#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "lzn/families.hpp"
#include "lzn/graph.hpp"

namespace lzn {

/// Tree order: u below-or-equal w iff u lies on the root-to-w path.
bool tree_order_leq(const TreeAddress& u, const TreeAddress& w);
bool tree_order_leq(const FiniteGraph& t, int root, int u, int w);

/// Pruning labels of a finite rooted tree. Stage zero labels every
/// vertex whose descendants form a single descending path; each later
/// stage strips everything labeled so far and repeats. Computed here by
/// the equivalent bottom-up recurrence: a leaf gets 0, a vertex with one
/// surviving child inherits its label, and a tie between the two largest
/// child labels bumps the label by one.
std::vector<int> recursive_pruning(const FiniteGraph& t, int root);

/// Literal stage-by-stage simulation of the definition; the independent
/// slow route kept for cross-checks.
std::vector<int> recursive_pruning_by_stages(const FiniteGraph& t, int root);

/// Pruning labels of a decorated-ray tree, computed on a truncation wide
/// enough that boundary effects cannot reach the reported window. Labels
/// cover ball(root, valid_radius).
struct DecoratedPruning {
  int radius = 0;        // truncation used
  int valid_radius = 0;  // labels trusted within this distance of the root
  std::unordered_map<VertexId, int, VertexIdHash> labels;
};

DecoratedPruning recursive_pruning(const DecoratedRayLayout& layout, int min_valid_radius = 8);

/// Throws "no recursive pruning exists" for descriptors declaring
/// uncountably many ends; otherwise labels the family's tree.
DecoratedPruning recursive_pruning(const BuiltFamily& family, int min_valid_radius = 8);

/// Eventual constant label along each spine ray, the maximal such label,
/// and which ends attain it.
struct EndInfo {
  std::vector<int> end_labels;  // by spine index
  int alpha = 0;
  std::vector<int> attaining;  // spine indices with label alpha
};

EndInfo end_labels(const DecoratedRayLayout& layout, const DecoratedPruning& pruning);

/// Maximal label over vertices that lie on root rays, evaluated outward
/// by distance until it stabilizes. Returns (alpha, first stable depth).
/// Errors when the tree has no rays at all.
std::pair<int, int> essential_alpha(const DecoratedRayLayout& layout,
                                    const DecoratedPruning& pruning);

}  // namespace lzn
