#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bnd/model.hpp"

namespace bnd {

inline constexpr std::size_t kDefaultExactLimit = 10;
inline constexpr std::size_t kDefaultHtndExactLimit = 8;

using NodeSet = std::vector<std::size_t>; // ascending node indices
using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// A spanning tree whose internal nodes are the structural bottlenecks.
/// A root of tree-degree 1 counts as a leaf.
struct SpanningTreeResult
{
	std::size_t root = 0;
	EdgeList edges; // (parent, child)
	NodeSet leaves;
	NodeSet internal;
	std::vector<std::size_t> degree; // tree degree per node

	bool operator==(const SpanningTreeResult&) const = default;
};

/// Primary path plus secondary forest hanging off it.
struct TwoLevelDesign
{
	std::vector<std::size_t> primary_path; // node sequence, >= 2 nodes
	EdgeList primary_edges;
	EdgeList secondary_edges; // (attached-to, new node)
	double total_cost = 0.0;

	bool operator==(const TwoLevelDesign&) const = default;
};

// Greedy leaf-maximizing growth; every node is tried as root, best kept.
SpanningTreeResult mlst_heuristic(const Graph& graph);
// Exhaustive over leaf sets, largest first.
SpanningTreeResult mlst_exact(const Graph& graph, std::size_t limit = kDefaultExactLimit);

NodeSet cds_heuristic(const Graph& graph);
NodeSet cds_exact(const Graph& graph, std::size_t limit = kDefaultExactLimit);

TwoLevelDesign htnd_heuristic(const Graph& graph);
TwoLevelDesign htnd_exact(const Graph& graph, std::size_t limit = kDefaultHtndExactLimit);

/// |minimum CDS| == n - (maximum leaf count), from the two exact solvers.
bool mlst_cds_identity_check(const Graph& graph, std::size_t limit = kDefaultExactLimit);

// Structural checks used by tests and the CLI self-check.
bool is_connected(const Graph& graph);
bool is_spanning_tree(const Graph& graph, const EdgeList& edges);
bool is_valid_tree_result(const Graph& graph, const SpanningTreeResult& tree);
bool is_connected_dominating_set(const Graph& graph, const NodeSet& set);
bool is_valid_design(const Graph& graph, const TwoLevelDesign& design);

/// Total cost of a design recomputed from the graph's edge costs.
double design_cost(const Graph& graph, const TwoLevelDesign& design);

/// Minimum spanning tree weight on secondary costs (Prim).
double mst_weight_secondary(const Graph& graph);

} // namespace bnd
