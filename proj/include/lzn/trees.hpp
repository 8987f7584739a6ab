#pragma once

#include <string>
#include <vector>

#include "lzn/graph.hpp"

namespace lzn {

/// The ten-vertex obstruction tree: a root with three children, each of
/// which carries two leaves. Vertex 0 is the root, 1-3 the middle
/// layer, 4-9 the leaves.
FiniteGraph hat_tree();

/// Center of a tree: one or two vertices minimizing eccentricity.
std::vector<int> tree_center(const FiniteGraph& t);

/// True iff the tree contains the hat tree as an induced subgraph. For
/// trees this is equivalent to having a vertex with at least three
/// neighbors of degree at least three; that form is used here, with a
/// debug-build cross-check against literal subtree search on small
/// inputs. Throws on non-tree input.
bool contains_hat(const FiniteGraph& t);

/// Literal search for an induced copy of `pattern` (a tree) inside the
/// tree `host`. Exponential; intended for small inputs and cross-checks.
bool contains_induced_subtree(const FiniteGraph& host, const FiniteGraph& pattern);

/// Canonical encoding of an unrooted tree (rooted canonical form at the
/// center). Two trees have equal forms iff they are isomorphic. Throws
/// on non-tree input.
std::string canonical_tree_form(const FiniteGraph& t);

/// Canonical encoding of a rooted tree.
std::string canonical_rooted_form(const FiniteGraph& t, int root);

inline constexpr int kMaxEnumerationN = 12;

/// One representative per isomorphism class of trees on n vertices,
/// generated from canonical rooted level sequences and deduplicated by
/// canonical form. n is capped at kMaxEnumerationN.
std::vector<FiniteGraph> enumerate_trees(int n);

/// All rooted-tree level sequences on n vertices in the canonical
/// (lexicographically decreasing) successor order. Level sequences list
/// vertex depths, root first, in preorder; depth of the root is 0.
std::vector<std::vector<int>> rooted_level_sequences(int n);

/// Builds the tree of a level sequence; vertex i is the i-th preorder
/// entry.
FiniteGraph tree_from_level_sequence(const std::vector<int>& levels);

/// Decodes a Pruefer sequence over 0..n-1 (length n-2) into its labeled
/// tree.
FiniteGraph tree_from_pruefer(const std::vector<int>& seq, int n);

}  // namespace lzn
