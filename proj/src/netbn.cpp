#include "bnd/netbn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include <fmt/format.h>

namespace bnd {
namespace {

constexpr double kCostEps = 1e-9;
constexpr std::size_t kMaskLimit = 62;

using Adjacency = std::vector<std::vector<std::size_t>>;

void require_graph(const Graph& graph, std::size_t min_nodes)
{
	auto report = validate_graph(graph);
	if (!report.empty())
		throw InputError("invalid graph:\n" + format_report(report));
	if (graph.size() < min_nodes)
		throw InputError(fmt::format("graph needs at least {} nodes, got {}", min_nodes, graph.size()));
	if (!is_connected(graph))
		throw InputError("graph is disconnected");
}

void require_exact_size(const Graph& graph, std::size_t limit)
{
	if (graph.size() > limit || graph.size() > kMaskLimit)
		throw InfeasibleError(fmt::format("instance too large for the exact solver: {} nodes > limit {}",
										  graph.size(), std::min(limit, kMaskLimit)));
}

bool connected_within(const Adjacency& adj, std::uint64_t mask)
{
	if (mask == 0)
		return false;
	const auto start = static_cast<std::size_t>(std::countr_zero(mask));
	std::uint64_t seen = std::uint64_t{1} << start;
	std::vector<std::size_t> stack{start};
	while (!stack.empty()) {
		auto v = stack.back();
		stack.pop_back();
		for (auto w : adj[v]) {
			const auto bit = std::uint64_t{1} << w;
			if ((mask & bit) && !(seen & bit)) {
				seen |= bit;
				stack.push_back(w);
			}
		}
	}
	return seen == mask;
}

bool dominates_all(const Adjacency& adj, std::uint64_t mask)
{
	for (std::size_t v = 0; v < adj.size(); ++v) {
		if (mask >> v & 1)
			continue;
		bool hit = false;
		for (auto w : adj[v])
			hit = hit || (mask >> w & 1);
		if (!hit)
			return false;
	}
	return true;
}

/// Calls fn(mask) for every k-subset of {0..n-1} in lexicographic order of
/// index sequences, stopping early when fn returns true.
bool for_each_subset(std::size_t n, std::size_t k, const std::function<bool(std::uint64_t)>& fn)
{
	if (k > n)
		return false;
	std::vector<std::size_t> idx(k);
	std::iota(idx.begin(), idx.end(), 0);
	while (true) {
		std::uint64_t mask = 0;
		for (auto i : idx)
			mask |= std::uint64_t{1} << i;
		if (fn(mask))
			return true;
		std::size_t i = k;
		while (i > 0 && idx[i - 1] == n - k + (i - 1))
			--i;
		if (i == 0)
			return false;
		++idx[i - 1];
		for (std::size_t j = i; j < k; ++j)
			idx[j] = idx[j - 1] + 1;
	}
}

NodeSet to_set(std::uint64_t mask)
{
	NodeSet out;
	for (std::size_t v = 0; mask; ++v, mask >>= 1)
		if (mask & 1)
			out.push_back(v);
	return out;
}

SpanningTreeResult classify(std::size_t n, std::size_t root, EdgeList edges)
{
	SpanningTreeResult tree;
	tree.root = root;
	tree.edges = std::move(edges);
	tree.degree.assign(n, 0);
	for (auto [a, b] : tree.edges) {
		++tree.degree[a];
		++tree.degree[b];
	}
	for (std::size_t v = 0; v < n; ++v)
		(tree.degree[v] == 1 ? tree.leaves : tree.internal).push_back(v);
	return tree;
}

SpanningTreeResult grow_leafy_tree(const Adjacency& adj, std::size_t root)
{
	const std::size_t n = adj.size();
	std::vector<bool> in_tree(n, false), expanded(n, false);
	EdgeList edges;
	in_tree[root] = true;
	std::size_t covered = 1;
	while (covered < n) {
		std::size_t best = n, best_gain = 0;
		for (std::size_t u = 0; u < n; ++u) {
			if (!in_tree[u] || expanded[u])
				continue;
			std::size_t gain = 0;
			for (auto w : adj[u])
				gain += in_tree[w] ? 0 : 1;
			if (gain > best_gain) {
				best = u;
				best_gain = gain;
			}
		}
		if (best == n)
			throw InputError("graph is disconnected");
		expanded[best] = true;
		for (auto w : adj[best]) {
			if (!in_tree[w]) {
				in_tree[w] = true;
				edges.emplace_back(best, w);
				++covered;
			}
		}
	}
	return classify(n, root, std::move(edges));
}

NodeSet grow_cds(const Adjacency& adj, std::size_t start)
{
	const std::size_t n = adj.size();
	std::vector<bool> in_set(n, false), dominated(n, false);
	auto add = [&](std::size_t v) {
		in_set[v] = true;
		dominated[v] = true;
		for (auto w : adj[v])
			dominated[w] = true;
	};
	add(start);
	auto all = [&] { return std::all_of(dominated.begin(), dominated.end(), [](bool b) { return b; }); };
	while (!all()) {
		std::size_t best = n, best_gain = 0;
		for (std::size_t u = 0; u < n; ++u) {
			if (in_set[u] || !dominated[u])
				continue; // only grey nodes keep the set connected
			std::size_t gain = 0;
			for (auto w : adj[u])
				gain += dominated[w] ? 0 : 1;
			if (gain > best_gain) {
				best = u;
				best_gain = gain;
			}
		}
		if (best == n)
			throw InputError("graph is disconnected");
		add(best);
	}
	std::uint64_t mask = 0;
	for (std::size_t v = 0; v < n; ++v)
		if (in_set[v])
			mask |= std::uint64_t{1} << v;
	// Drop redundant members, highest index first.
	for (std::size_t v = n; v-- > 0;) {
		const auto bit = std::uint64_t{1} << v;
		if (!(mask & bit))
			continue;
		const auto trial = mask & ~bit;
		if (trial && connected_within(adj, trial) && dominates_all(adj, trial))
			mask = trial;
	}
	return to_set(mask);
}

/// Symmetric cost lookup; NaN where there is no edge.
struct CostMatrix
{
	std::size_t n = 0;
	std::vector<double> primary, secondary;

	explicit CostMatrix(const Graph& graph)
		: n(graph.size()), primary(n * n, std::nan("")), secondary(n * n, std::nan(""))
	{
		for (const auto& e : graph.edges) {
			if (!e.cost)
				throw InputError(fmt::format("edge ({},{}) has no primary/secondary costs",
											 graph.nodes[e.u], graph.nodes[e.v]));
			primary[e.u * n + e.v] = primary[e.v * n + e.u] = e.cost->primary;
			secondary[e.u * n + e.v] = secondary[e.v * n + e.u] = e.cost->secondary;
		}
	}

	bool has(std::size_t a, std::size_t b) const { return !std::isnan(primary[a * n + b]); }
	double p(std::size_t a, std::size_t b) const { return primary[a * n + b]; }
	double s(std::size_t a, std::size_t b) const { return secondary[a * n + b]; }
};

/// Builds the cheapest design for a fixed primary path: Prim on secondary
/// costs growing from the path nodes.
TwoLevelDesign design_for_path(const CostMatrix& costs, const std::vector<std::size_t>& path)
{
	const std::size_t n = costs.n;
	TwoLevelDesign d;
	d.primary_path = path;
	std::vector<bool> in_tree(n, false);
	for (std::size_t i = 0; i < path.size(); ++i) {
		in_tree[path[i]] = true;
		if (i + 1 < path.size()) {
			d.primary_edges.emplace_back(path[i], path[i + 1]);
			d.total_cost += costs.p(path[i], path[i + 1]);
		}
	}
	std::vector<double> best(n, std::numeric_limits<double>::infinity());
	std::vector<std::size_t> via(n, n);
	auto relax = [&](std::size_t x) {
		for (std::size_t y = 0; y < n; ++y)
			if (!in_tree[y] && costs.has(x, y) && costs.s(x, y) < best[y]) {
				best[y] = costs.s(x, y);
				via[y] = x;
			}
	};
	for (auto v : path)
		relax(v);
	for (std::size_t added = path.size(); added < n; ++added) {
		std::size_t pick = n;
		for (std::size_t y = 0; y < n; ++y)
			if (!in_tree[y] && via[y] < n && (pick == n || best[y] < best[pick]))
				pick = y;
		if (pick == n)
			throw InputError("graph is disconnected");
		in_tree[pick] = true;
		d.secondary_edges.emplace_back(via[pick], pick);
		d.total_cost += best[pick];
		relax(pick);
	}
	return d;
}

void require_costs(const Graph& graph)
{
	for (const auto& e : graph.edges)
		if (!e.cost)
			throw InputError(fmt::format("edge ({},{}) has no primary/secondary costs",
										 graph.nodes[e.u], graph.nodes[e.v]));
}

/// Dijkstra on primary costs; ties prefer the smaller predecessor index.
std::vector<std::size_t> primary_shortest_path(const CostMatrix& costs, std::size_t from,
											   std::size_t to)
{
	const std::size_t n = costs.n;
	std::vector<double> dist(n, std::numeric_limits<double>::infinity());
	std::vector<std::size_t> prev(n, n);
	std::vector<bool> done(n, false);
	dist[from] = 0.0;
	for (std::size_t it = 0; it < n; ++it) {
		std::size_t u = n;
		for (std::size_t v = 0; v < n; ++v)
			if (!done[v] && std::isfinite(dist[v]) && (u == n || dist[v] < dist[u]))
				u = v;
		if (u == n)
			break;
		done[u] = true;
		for (std::size_t v = 0; v < n; ++v) {
			if (done[v] || !costs.has(u, v))
				continue;
			const double nd = dist[u] + costs.p(u, v);
			if (nd < dist[v] - kCostEps || (std::abs(nd - dist[v]) <= kCostEps && u < prev[v])) {
				dist[v] = nd;
				prev[v] = u;
			}
		}
	}
	std::vector<std::size_t> path;
	for (std::size_t v = to; v != n; v = prev[v])
		path.push_back(v);
	std::reverse(path.begin(), path.end());
	return path;
}

std::vector<std::size_t> hop_eccentricity(const Adjacency& adj)
{
	const std::size_t n = adj.size();
	std::vector<std::size_t> ecc(n, 0);
	for (std::size_t s = 0; s < n; ++s) {
		std::vector<std::size_t> dist(n, n);
		std::queue<std::size_t> q;
		dist[s] = 0;
		q.push(s);
		while (!q.empty()) {
			auto u = q.front();
			q.pop();
			ecc[s] = std::max(ecc[s], dist[u]);
			for (auto w : adj[u])
				if (dist[w] == n) {
					dist[w] = dist[u] + 1;
					q.push(w);
				}
		}
	}
	return ecc;
}

} // namespace

bool is_connected(const Graph& graph)
{
	const auto adj = graph.adjacency();
	const std::size_t n = adj.size();
	if (n == 0)
		return true;
	std::vector<bool> seen(n, false);
	std::vector<std::size_t> stack{0};
	seen[0] = true;
	std::size_t count = 1;
	while (!stack.empty()) {
		auto v = stack.back();
		stack.pop_back();
		for (auto w : adj[v])
			if (!seen[w]) {
				seen[w] = true;
				++count;
				stack.push_back(w);
			}
	}
	return count == n;
}

bool is_spanning_tree(const Graph& graph, const EdgeList& edges)
{
	const std::size_t n = graph.size();
	if (n == 0 || edges.size() != n - 1)
		return false;
	std::set<std::pair<std::size_t, std::size_t>> present;
	for (const auto& e : graph.edges)
		present.insert(std::minmax(e.u, e.v));
	std::vector<std::size_t> parent(n);
	std::iota(parent.begin(), parent.end(), 0);
	std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
		return parent[x] == x ? x : parent[x] = find(parent[x]);
	};
	for (auto [a, b] : edges) {
		if (a >= n || b >= n || !present.count(std::minmax(a, b)))
			return false;
		auto ra = find(a), rb = find(b);
		if (ra == rb)
			return false;
		parent[ra] = rb;
	}
	return true;
}

bool is_valid_tree_result(const Graph& graph, const SpanningTreeResult& tree)
{
	const std::size_t n = graph.size();
	if (!is_spanning_tree(graph, tree.edges) || tree.degree.size() != n || tree.root >= n)
		return false;
	std::vector<std::size_t> deg(n, 0);
	for (auto [a, b] : tree.edges) {
		++deg[a];
		++deg[b];
	}
	if (deg != tree.degree)
		return false;
	NodeSet leaves, internal;
	for (std::size_t v = 0; v < n; ++v)
		(deg[v] == 1 ? leaves : internal).push_back(v);
	return leaves == tree.leaves && internal == tree.internal;
}

bool is_connected_dominating_set(const Graph& graph, const NodeSet& set)
{
	const auto adj = graph.adjacency();
	if (set.empty() || adj.size() > kMaskLimit)
		return false;
	std::uint64_t mask = 0;
	for (auto v : set) {
		if (v >= adj.size())
			return false;
		mask |= std::uint64_t{1} << v;
	}
	return connected_within(adj, mask) && dominates_all(adj, mask);
}

double design_cost(const Graph& graph, const TwoLevelDesign& design)
{
	const CostMatrix costs(graph);
	double total = 0.0;
	for (auto [a, b] : design.primary_edges)
		total += costs.p(a, b);
	for (auto [a, b] : design.secondary_edges)
		total += costs.s(a, b);
	return total;
}

bool is_valid_design(const Graph& graph, const TwoLevelDesign& design)
{
	const auto& path = design.primary_path;
	if (path.size() < 2)
		return false;
	std::set<std::size_t> distinct(path.begin(), path.end());
	if (distinct.size() != path.size() || *distinct.rbegin() >= graph.size())
		return false;
	if (design.primary_edges.size() != path.size() - 1)
		return false;
	for (std::size_t i = 0; i + 1 < path.size(); ++i)
		if (std::minmax(design.primary_edges[i].first, design.primary_edges[i].second) !=
			std::minmax(path[i], path[i + 1]))
			return false;
	EdgeList all = design.primary_edges;
	all.insert(all.end(), design.secondary_edges.begin(), design.secondary_edges.end());
	if (!is_spanning_tree(graph, all))
		return false;
	return std::abs(design_cost(graph, design) - design.total_cost) <= 1e-6;
}

double mst_weight_secondary(const Graph& graph)
{
	require_costs(graph);
	if (graph.size() == 0)
		return 0.0;
	const CostMatrix costs(graph);
	return design_for_path(costs, {0}).total_cost;
}

SpanningTreeResult mlst_heuristic(const Graph& graph)
{
	require_graph(graph, 2);
	const auto adj = graph.adjacency();
	SpanningTreeResult best;
	bool have = false;
	for (std::size_t root = 0; root < adj.size(); ++root) {
		auto tree = grow_leafy_tree(adj, root);
		if (!have || tree.leaves.size() > best.leaves.size()) {
			best = std::move(tree);
			have = true;
		}
	}
	return best;
}

SpanningTreeResult mlst_exact(const Graph& graph, std::size_t limit)
{
	require_graph(graph, 2);
	require_exact_size(graph, limit);
	const auto adj = graph.adjacency();
	const std::size_t n = adj.size();
	if (n == 2)
		return classify(n, 0, {{0, 1}});

	const std::uint64_t full = (std::uint64_t{1} << n) - 1;
	for (std::size_t k = n - 1; k >= 1; --k) {
		std::uint64_t found = 0;
		// A leaf set L is realisable iff V \ L is nonempty and connected and
		// every node of L has a neighbour in V \ L.
		for_each_subset(n, k, [&](std::uint64_t leaves) {
			const std::uint64_t core = full & ~leaves;
			if (!connected_within(adj, core))
				return false;
			for (std::size_t v = 0; v < n; ++v) {
				if (!(leaves >> v & 1))
					continue;
				bool anchored = false;
				for (auto w : adj[v])
					anchored = anchored || (core >> w & 1);
				if (!anchored)
					return false;
			}
			found = core;
			return true;
		});
		if (!found)
			continue;
		const auto root = static_cast<std::size_t>(std::countr_zero(found));
		EdgeList edges;
		std::vector<bool> seen(n, false);
		std::queue<std::size_t> q;
		seen[root] = true;
		q.push(root);
		while (!q.empty()) {
			auto u = q.front();
			q.pop();
			for (auto w : adj[u])
				if ((found >> w & 1) && !seen[w]) {
					seen[w] = true;
					edges.emplace_back(u, w);
					q.push(w);
				}
		}
		for (std::size_t v = 0; v < n; ++v) {
			if (found >> v & 1)
				continue;
			for (auto w : adj[v])
				if (found >> w & 1) {
					edges.emplace_back(w, v);
					break;
				}
		}
		return classify(n, root, std::move(edges));
	}
	throw InputError("graph is disconnected");
}

NodeSet cds_heuristic(const Graph& graph)
{
	require_graph(graph, 2);
	const auto adj = graph.adjacency();
	if (adj.size() > kMaskLimit)
		throw InfeasibleError(fmt::format("CDS heuristic supports at most {} nodes", kMaskLimit));
	NodeSet best;
	for (std::size_t start = 0; start < adj.size(); ++start) {
		auto set = grow_cds(adj, start);
		if (best.empty() || set.size() < best.size() || (set.size() == best.size() && set < best))
			best = std::move(set);
	}
	return best;
}

NodeSet cds_exact(const Graph& graph, std::size_t limit)
{
	require_graph(graph, 2);
	require_exact_size(graph, limit);
	const auto adj = graph.adjacency();
	const std::size_t n = adj.size();
	for (std::size_t k = 1; k <= n; ++k) {
		std::uint64_t found = 0;
		for_each_subset(n, k, [&](std::uint64_t mask) {
			if (connected_within(adj, mask) && dominates_all(adj, mask)) {
				found = mask;
				return true;
			}
			return false;
		});
		if (found)
			return to_set(found);
	}
	throw InputError("graph is disconnected");
}

bool mlst_cds_identity_check(const Graph& graph, std::size_t limit)
{
	if (graph.size() < 3)
		throw InputError("the MLST/CDS identity needs at least 3 nodes");
	const auto tree = mlst_exact(graph, limit);
	const auto cds = cds_exact(graph, limit);
	return cds.size() == graph.size() - tree.leaves.size();
}

TwoLevelDesign htnd_heuristic(const Graph& graph)
{
	require_graph(graph, 2);
	require_costs(graph);
	const CostMatrix costs(graph);
	const auto adj = graph.adjacency();
	const std::size_t n = adj.size();

	std::vector<std::vector<std::size_t>> trials;
	for (const auto& e : graph.edges)
		trials.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});

	// Shortest primary paths between peripheral nodes: every pair when small,
	// otherwise the pairs among the highest-eccentricity nodes.
	const auto ecc = hop_eccentricity(adj);
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(),
					 [&](std::size_t a, std::size_t b) { return ecc[a] > ecc[b]; });
	const std::size_t ends = n <= 64 ? n : 16;
	for (std::size_t i = 0; i < ends; ++i)
		for (std::size_t j = i + 1; j < ends; ++j)
			trials.push_back(primary_shortest_path(costs, order[i], order[j]));

	TwoLevelDesign best;
	bool have = false;
	auto consider = [&](const std::vector<std::size_t>& path) {
		if (path.size() < 2)
			return false;
		auto d = design_for_path(costs, path);
		if (!have || d.total_cost < best.total_cost - kCostEps) {
			best = std::move(d);
			have = true;
			return true;
		}
		return false;
	};
	for (const auto& t : trials)
		consider(t);

	// Local search: trim or extend either end while the cost drops.
	for (bool improved = true; improved;) {
		improved = false;
		const auto path = best.primary_path;
		std::vector<std::vector<std::size_t>> moves;
		if (path.size() > 2) {
			moves.emplace_back(path.begin() + 1, path.end());
			moves.emplace_back(path.begin(), path.end() - 1);
		}
		for (int side = 0; side < 2; ++side) {
			const auto end = side == 0 ? path.front() : path.back();
			for (auto w : adj[end]) {
				if (std::find(path.begin(), path.end(), w) != path.end())
					continue;
				auto ext = path;
				if (side == 0)
					ext.insert(ext.begin(), w);
				else
					ext.push_back(w);
				moves.push_back(std::move(ext));
			}
		}
		for (const auto& m : moves)
			if (consider(m)) {
				improved = true;
				break;
			}
	}
	return best;
}

TwoLevelDesign htnd_exact(const Graph& graph, std::size_t limit)
{
	require_graph(graph, 2);
	require_costs(graph);
	require_exact_size(graph, limit);
	const CostMatrix costs(graph);
	const auto adj = graph.adjacency();
	const std::size_t n = adj.size();

	TwoLevelDesign best;
	bool have = false;
	std::vector<std::size_t> path;
	std::vector<bool> on_path(n, false);
	std::function<void()> extend = [&] {
		// Each undirected path is evaluated once, oriented low end first.
		if (path.size() >= 2 && path.front() < path.back()) {
			auto d = design_for_path(costs, path);
			if (!have || d.total_cost < best.total_cost - kCostEps) {
				best = std::move(d);
				have = true;
			}
		}
		for (auto w : adj[path.back()]) {
			if (on_path[w])
				continue;
			on_path[w] = true;
			path.push_back(w);
			extend();
			path.pop_back();
			on_path[w] = false;
		}
	};
	for (std::size_t s = 0; s < n; ++s) {
		path = {s};
		on_path.assign(n, false);
		on_path[s] = true;
		extend();
	}
	return best;
}

} // namespace bnd
