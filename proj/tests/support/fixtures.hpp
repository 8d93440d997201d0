#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bnd/io.hpp"
#include "bnd/model.hpp"

namespace bnd::testing {

inline std::string data_path(const std::string& name)
{
	return std::string(BND_DATA_DIR) + "/" + name;
}

template <class T>
T load(const std::string& name)
{
	return std::get<T>(load_document(data_path(name)));
}

/// Random connected graph, fully determined by (seed, n, extra_edge_percent).
///
/// 1. rng = mt19937_64(seed); every draw is rng() % bound.
/// 2. Node i is named "v<i>". For i = 1..n-1 node i joins a random earlier
///    node (a random recursive tree, so the graph is connected).
/// 3. Every other pair (u < v) is then added with probability
///    extra_edge_percent / 100.
/// 4. Each edge gets primary cost 1 + rng() % 9 and secondary cost
///    1 + rng() % primary, so secondary <= primary.
inline Graph random_connected_graph(std::uint64_t seed, std::size_t n, unsigned extra_edge_percent)
{
	std::mt19937_64 rng(seed);
	Graph g;
	for (std::size_t i = 0; i < n; ++i)
		g.nodes.push_back("v" + std::to_string(i));
	std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
	auto add = [&](std::size_t u, std::size_t v) {
		has[u][v] = has[v][u] = true;
		const double p = 1.0 + static_cast<double>(rng() % 9);
		const double s = 1.0 + static_cast<double>(rng() % static_cast<std::uint64_t>(p));
		g.edges.push_back({std::min(u, v), std::max(u, v), EdgeCost{p, s}});
	};
	for (std::size_t i = 1; i < n; ++i)
		add(rng() % i, i);
	for (std::size_t u = 0; u < n; ++u)
		for (std::size_t v = u + 1; v < n; ++v)
			if (!has[u][v] && rng() % 100 < extra_edge_percent)
				add(u, v);
	return g;
}

/// Random morph system: `slots` slots with 1..max_das DAs each, priorities in
/// [1,k], compatibilities in [0,nu] on every cross-slot pair.
inline MorphSystem random_system(std::uint64_t seed, std::size_t slots, std::size_t max_das, int k,
								 int nu)
{
	std::mt19937_64 rng(seed);
	MorphSystem m;
	m.quality_levels = k;
	m.compat_max = nu;
	for (std::size_t s = 0; s < slots; ++s) {
		const std::string slot(1, static_cast<char>('A' + s));
		m.slots.push_back(slot);
		const std::size_t das = 1 + rng() % max_das;
		for (std::size_t d = 0; d < das; ++d)
			m.alternatives.push_back(
				{slot + std::to_string(d + 1), slot, 1 + static_cast<int>(rng() % static_cast<unsigned>(k))});
	}
	for (std::size_t i = 0; i < m.alternatives.size(); ++i)
		for (std::size_t j = i + 1; j < m.alternatives.size(); ++j)
			if (m.alternatives[i].slot_id != m.alternatives[j].slot_id)
				m.compat.push_back({m.alternatives[i].id, m.alternatives[j].id,
									static_cast<int>(rng() % static_cast<unsigned>(nu + 1))});
	return m;
}

} // namespace bnd::testing
