#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "bnd/netbn.hpp"
#include "support/fixtures.hpp"

using namespace bnd;
using bnd::testing::random_connected_graph;

namespace {

Graph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
	Graph g;
	for (std::size_t i = 0; i < n; ++i)
		g.nodes.push_back(std::string(1, static_cast<char>('a' + i)));
	for (auto [u, v] : edges)
		g.edges.push_back({u, v, EdgeCost{1, 1}});
	return g;
}

Graph star(std::size_t leaves)
{
	std::vector<std::pair<std::size_t, std::size_t>> e;
	for (std::size_t i = 1; i <= leaves; ++i)
		e.emplace_back(0, i);
	return make_graph(leaves + 1, e);
}

Graph path(std::size_t n)
{
	std::vector<std::pair<std::size_t, std::size_t>> e;
	for (std::size_t i = 1; i < n; ++i)
		e.emplace_back(i - 1, i);
	return make_graph(n, e);
}

Graph cycle(std::size_t n)
{
	auto g = path(n);
	g.edges.push_back({n - 1, 0, EdgeCost{1, 1}});
	return g;
}

Graph complete(std::size_t n)
{
	std::vector<std::pair<std::size_t, std::size_t>> e;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			e.emplace_back(i, j);
	return make_graph(n, e);
}

struct UnionFind
{
	std::vector<std::size_t> parent;
	explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
	std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
	bool unite(std::size_t a, std::size_t b)
	{
		a = find(a);
		b = find(b);
		if (a == b)
			return false;
		parent[a] = b;
		return true;
	}
};

/// Maximum leaf count over every spanning tree, by edge-subset enumeration.
std::size_t brute_max_leaves(const Graph& g)
{
	const std::size_t n = g.size(), m = g.edges.size();
	std::size_t best = 0;
	for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
		if (static_cast<std::size_t>(std::popcount(mask)) != n - 1)
			continue;
		UnionFind uf(n);
		std::vector<std::size_t> deg(n, 0);
		bool acyclic = true;
		for (std::size_t e = 0; e < m && acyclic; ++e)
			if (mask >> e & 1) {
				acyclic = uf.unite(g.edges[e].u, g.edges[e].v);
				++deg[g.edges[e].u];
				++deg[g.edges[e].v];
			}
		if (acyclic)
			best = std::max<std::size_t>(best, std::count(deg.begin(), deg.end(), 1));
	}
	return best;
}

/// Smallest connected dominating set size, by node-subset enumeration.
std::size_t brute_min_cds(const Graph& g)
{
	const std::size_t n = g.size();
	std::size_t best = n;
	for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
		const auto size = static_cast<std::size_t>(std::popcount(mask));
		if (size >= best)
			continue;
		std::vector<bool> covered(n, false);
		UnionFind uf(n);
		for (std::size_t v = 0; v < n; ++v)
			if (mask >> v & 1)
				covered[v] = true;
		for (const auto& e : g.edges) {
			const bool iu = mask >> e.u & 1, iv = mask >> e.v & 1;
			if (iu)
				covered[e.v] = true;
			if (iv)
				covered[e.u] = true;
			if (iu && iv)
				uf.unite(e.u, e.v);
		}
		if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }))
			continue;
		std::size_t roots = 0;
		for (std::size_t v = 0; v < n; ++v)
			if ((mask >> v & 1) && uf.find(v) == v)
				++roots;
		if (roots == 1)
			best = size;
	}
	return best;
}

/// Cheapest two-level design: every simple path of >= 2 nodes, priced as its
/// primary edges plus a Kruskal forest on secondary costs with the path
/// contracted.
double brute_htnd(const Graph& g)
{
	const std::size_t n = g.size();
	std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
	for (const auto& e : g.edges) {
		adj[e.u].push_back({e.v, e.cost->primary});
		adj[e.v].push_back({e.u, e.cost->primary});
	}
	std::vector<std::size_t> order(g.edges.size());
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
		return g.edges[a].cost->secondary < g.edges[b].cost->secondary;
	});

	double best = std::numeric_limits<double>::infinity();
	std::vector<std::size_t> stack;
	std::vector<bool> on(n, false);
	std::function<void(std::size_t, double)> dfs = [&](std::size_t v, double primary) {
		if (stack.size() >= 2) {
			UnionFind uf(n);
			for (std::size_t i = 1; i < stack.size(); ++i)
				uf.unite(stack[0], stack[i]);
			double cost = primary;
			for (auto e : order)
				if (uf.unite(g.edges[e].u, g.edges[e].v))
					cost += g.edges[e].cost->secondary;
			best = std::min(best, cost);
		}
		for (auto [w, c] : adj[v])
			if (!on[w]) {
				on[w] = true;
				stack.push_back(w);
				dfs(w, primary + c);
				stack.pop_back();
				on[w] = false;
			}
	};
	for (std::size_t s = 0; s < n; ++s) {
		on[s] = true;
		stack = {s};
		dfs(s, 0.0);
		on[s] = false;
	}
	return best;
}

} // namespace

TEST(Mlst, ClassicGraphs)
{
	EXPECT_EQ(mlst_exact(star(5)).leaves.size(), 5u);
	EXPECT_EQ(mlst_heuristic(star(5)).internal, (NodeSet{0}));
	EXPECT_EQ(mlst_exact(path(6)).leaves.size(), 2u);
	EXPECT_EQ(mlst_exact(cycle(6)).leaves.size(), 2u);
	EXPECT_EQ(mlst_exact(complete(6)).leaves.size(), 5u);
	EXPECT_EQ(mlst_heuristic(complete(6)).leaves.size(), 5u);
	const auto two = mlst_exact(path(2));
	EXPECT_EQ(two.leaves.size(), 2u);
	EXPECT_TRUE(two.internal.empty());
}

TEST(Cds, ClassicGraphs)
{
	EXPECT_EQ(cds_exact(star(5)), (NodeSet{0}));
	EXPECT_EQ(cds_exact(path(6)).size(), 4u);
	EXPECT_EQ(cds_exact(cycle(6)).size(), 4u);
	EXPECT_EQ(cds_exact(complete(6)).size(), 1u);
	EXPECT_EQ(cds_heuristic(path(6)), (NodeSet{1, 2, 3, 4}));
}

TEST(NetPreconditions, Errors)
{
	Graph one;
	one.nodes = {"a"};
	EXPECT_THROW(mlst_heuristic(one), InputError);
	EXPECT_THROW(cds_exact(one), InputError);

	auto split = make_graph(4, {{0, 1}, {2, 3}});
	EXPECT_THROW(mlst_exact(split), InputError);
	EXPECT_THROW(cds_heuristic(split), InputError);
	EXPECT_THROW(htnd_heuristic(split), InputError);

	EXPECT_THROW(mlst_exact(complete(11)), InfeasibleError);
	EXPECT_NO_THROW(mlst_exact(complete(11), 11));
	EXPECT_THROW(cds_exact(complete(11)), InfeasibleError);
	EXPECT_THROW(htnd_exact(complete(9)), InfeasibleError);

	auto free = path(4);
	free.edges[1].cost.reset();
	EXPECT_THROW(htnd_heuristic(free), InputError);
	EXPECT_NO_THROW(mlst_heuristic(free));

	EXPECT_THROW(mlst_cds_identity_check(path(2)), InputError);
}

TEST(Mlst, ExactMatchesSpanningTreeEnumeration)
{
	for (std::uint64_t seed = 0; seed < 60; ++seed) {
		const std::size_t n = 3 + seed % 5;
		const auto g = random_connected_graph(seed, n, 30);
		if (g.edges.size() > 18)
			continue;
		EXPECT_EQ(mlst_exact(g).leaves.size(), brute_max_leaves(g)) << "seed " << seed;
	}
}

TEST(Cds, ExactMatchesSubsetEnumeration)
{
	for (std::uint64_t seed = 0; seed < 60; ++seed) {
		const auto g = random_connected_graph(seed, 3 + seed % 7, 25);
		EXPECT_EQ(cds_exact(g).size(), brute_min_cds(g)) << "seed " << seed;
	}
}

TEST(Htnd, ExactMatchesPathEnumeration)
{
	for (std::uint64_t seed = 0; seed < 60; ++seed) {
		const auto g = random_connected_graph(seed, 2 + seed % 6, 35);
		EXPECT_DOUBLE_EQ(htnd_exact(g).total_cost, brute_htnd(g)) << "seed " << seed;
	}
}

TEST(NetHeuristics, ValidAndNeverBetterThanExact)
{
	for (std::uint64_t seed = 100; seed < 200; ++seed) {
		const std::size_t n = 2 + seed % 8;
		const auto g = random_connected_graph(seed, n, 20 + seed % 40);

		const auto th = mlst_heuristic(g), te = mlst_exact(g);
		ASSERT_TRUE(is_valid_tree_result(g, th)) << "seed " << seed;
		ASSERT_TRUE(is_valid_tree_result(g, te)) << "seed " << seed;
		EXPECT_LE(th.leaves.size(), te.leaves.size());

		const auto ch = cds_heuristic(g), ce = cds_exact(g);
		ASSERT_TRUE(is_connected_dominating_set(g, ch));
		ASSERT_TRUE(is_connected_dominating_set(g, ce));
		EXPECT_GE(ch.size(), ce.size());
		if (n >= 3)
			EXPECT_EQ(ce.size(), n - te.leaves.size());

		if (n <= 8) {
			const auto dh = htnd_heuristic(g), de = htnd_exact(g);
			ASSERT_TRUE(is_valid_design(g, dh));
			ASSERT_TRUE(is_valid_design(g, de));
			EXPECT_DOUBLE_EQ(dh.total_cost, design_cost(g, dh));
			EXPECT_GE(dh.total_cost, de.total_cost);
		}
	}
}

TEST(Htnd, CostCollapseGivesMst)
{
	for (std::uint64_t seed = 0; seed < 40; ++seed) {
		auto g = random_connected_graph(seed, 2 + seed % 7, 40);
		for (auto& e : g.edges)
			e.cost->secondary = e.cost->primary;
		const double mst = mst_weight_secondary(g);
		EXPECT_DOUBLE_EQ(htnd_exact(g).total_cost, mst) << "seed " << seed;
		EXPECT_DOUBLE_EQ(htnd_heuristic(g).total_cost, mst) << "seed " << seed;
	}
}

TEST(NetChecks, RejectBrokenOutputs)
{
	const auto g = cycle(5);
	auto t = mlst_exact(g);
	ASSERT_TRUE(is_valid_tree_result(g, t));
	t.edges.pop_back();
	EXPECT_FALSE(is_valid_tree_result(g, t));
	EXPECT_FALSE(is_connected_dominating_set(g, NodeSet{0}));
	EXPECT_FALSE(is_connected_dominating_set(g, NodeSet{0, 2}));
	EXPECT_TRUE(is_connected_dominating_set(g, NodeSet{0, 1, 2}));
	EXPECT_FALSE(is_spanning_tree(g, EdgeList{{0, 2}, {1, 2}, {2, 3}, {3, 4}}));
}

TEST(NetDeterminism, RepeatedRunsAgree)
{
	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		const auto g = random_connected_graph(seed, 8, 30);
		EXPECT_EQ(mlst_heuristic(g), mlst_heuristic(g));
		EXPECT_EQ(cds_heuristic(g), cds_heuristic(g));
		EXPECT_EQ(htnd_heuristic(g), htnd_heuristic(g));
	}
}
