#include "bnd/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

namespace bnd {

std::optional<std::size_t> EstimateTable::component_index(std::string_view id) const
{
	for (std::size_t i = 0; i < components.size(); ++i)
		if (components[i].id == id)
			return i;
	return std::nullopt;
}

std::optional<std::size_t> EstimateTable::criterion_index(std::string_view id) const
{
	for (std::size_t j = 0; j < criteria.size(); ++j)
		if (criteria[j].id == id)
			return j;
	return std::nullopt;
}

const DesignAlternative* MorphSystem::find_alternative(std::string_view id) const
{
	for (const auto& da : alternatives)
		if (da.id == id)
			return &da;
	return nullptr;
}

std::optional<std::size_t> MorphSystem::slot_index(std::string_view id) const
{
	for (std::size_t i = 0; i < slots.size(); ++i)
		if (slots[i] == id)
			return i;
	return std::nullopt;
}

std::vector<const DesignAlternative*> MorphSystem::alternatives_of(std::string_view slot) const
{
	std::vector<const DesignAlternative*> out;
	for (const auto& da : alternatives)
		if (da.slot_id == slot)
			out.push_back(&da);
	return out;
}

std::optional<int> MorphSystem::compat_between(std::string_view a, std::string_view b) const
{
	for (const auto& e : compat)
		if ((e.a == a && e.b == b) || (e.a == b && e.b == a))
			return e.w;
	return std::nullopt;
}

int QualityVector::total() const
{
	int s = 0;
	for (int e : eta)
		s += e;
	return s;
}

std::optional<std::size_t> Graph::node_index(std::string_view id) const
{
	for (std::size_t i = 0; i < nodes.size(); ++i)
		if (nodes[i] == id)
			return i;
	return std::nullopt;
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const
{
	std::vector<std::vector<std::size_t>> adj(nodes.size());
	for (const auto& e : edges) {
		if (e.u >= nodes.size() || e.v >= nodes.size() || e.u == e.v)
			continue;
		adj[e.u].push_back(e.v);
		adj[e.v].push_back(e.u);
	}
	for (auto& row : adj) {
		std::sort(row.begin(), row.end());
		row.erase(std::unique(row.begin(), row.end()), row.end());
	}
	return adj;
}

ValidationReport validate_system(const MorphSystem& system)
{
	ValidationReport report;
	auto add = [&](std::string where, std::string message) {
		report.push_back({std::move(where), std::move(message)});
	};

	if (system.quality_levels < 1)
		add("quality_levels", fmt::format("must be >= 1, got {}", system.quality_levels));
	if (system.compat_max < 0)
		add("compat_max", fmt::format("must be >= 0, got {}", system.compat_max));

	std::set<std::string> slot_ids;
	for (const auto& s : system.slots)
		if (!slot_ids.insert(s).second)
			add("slot " + s, "duplicate slot id");

	std::unordered_map<std::string, const DesignAlternative*> by_id;
	std::map<std::string, int> per_slot;
	for (const auto& da : system.alternatives) {
		if (!by_id.emplace(da.id, &da).second)
			add("DA " + da.id, "duplicate design alternative id");
		if (!slot_ids.count(da.slot_id))
			add("DA " + da.id, fmt::format("unknown slot '{}'", da.slot_id));
		else
			++per_slot[da.slot_id];
		if (da.priority < 1 || da.priority > system.quality_levels)
			add("DA " + da.id,
				fmt::format("priority {} outside [1,{}]", da.priority, system.quality_levels));
	}
	for (const auto& s : system.slots)
		if (per_slot[s] == 0)
			add("slot " + s, "slot has no design alternatives");

	std::map<std::pair<std::string, std::string>, int> seen;
	for (const auto& e : system.compat) {
		const std::string where = fmt::format("pair ({},{})", e.a, e.b);
		auto ia = by_id.find(e.a);
		auto ib = by_id.find(e.b);
		if (ia == by_id.end() || ib == by_id.end()) {
			add(where, "compatibility refers to an unknown design alternative");
			continue;
		}
		if (e.a == e.b || ia->second->slot_id == ib->second->slot_id)
			add(where, "compatibility declared between alternatives of the same slot");
		if (e.w < 0 || e.w > system.compat_max)
			add(where, fmt::format("compatibility {} outside [0,{}]", e.w, system.compat_max));
		auto key = std::minmax(e.a, e.b);
		auto [it, fresh] = seen.emplace(std::pair{key.first, key.second}, e.w);
		if (!fresh) {
			if (it->second != e.w)
				add(where, fmt::format("asymmetric compatibility ({} vs {})", it->second, e.w));
			else
				add(where, "duplicate compatibility entry");
		}
	}

	const auto& das = system.alternatives;
	for (std::size_t i = 0; i < das.size(); ++i) {
		for (std::size_t j = i + 1; j < das.size(); ++j) {
			if (das[i].slot_id == das[j].slot_id)
				continue;
			auto key = std::minmax(das[i].id, das[j].id);
			if (!seen.count({key.first, key.second}))
				add(fmt::format("pair ({},{})", das[i].id, das[j].id), "missing compatibility");
		}
	}
	return report;
}

ValidationReport validate_estimates(const EstimateTable& table)
{
	ValidationReport report;
	auto add = [&](std::string where, std::string message) {
		report.push_back({std::move(where), std::move(message)});
	};

	std::unordered_map<std::string, std::size_t> index;
	for (std::size_t i = 0; i < table.components.size(); ++i)
		if (!index.emplace(table.components[i].id, i).second)
			add("component " + table.components[i].id, "duplicate component id");

	for (const auto& c : table.components) {
		if (c.parent_id && !index.count(*c.parent_id))
			add("component " + c.id, fmt::format("unknown parent '{}'", *c.parent_id));
	}
	// Walk parent chains; a chain longer than the component count is a cycle.
	for (const auto& c : table.components) {
		const ComponentRecord* cur = &c;
		std::size_t steps = 0;
		while (cur->parent_id && steps <= table.components.size()) {
			auto it = index.find(*cur->parent_id);
			if (it == index.end())
				break;
			cur = &table.components[it->second];
			++steps;
		}
		if (steps > table.components.size())
			add("component " + c.id, "parent links form a cycle");
	}

	std::set<std::string> crit_ids;
	for (const auto& k : table.criteria) {
		if (!crit_ids.insert(k.id).second)
			add("criterion " + k.id, "duplicate criterion id");
		if (!std::isfinite(k.weight) || k.weight < 0.0)
			add("criterion " + k.id, fmt::format("weight {} must be finite and >= 0", k.weight));
		if (k.scale_min && k.scale_max && !(*k.scale_min < *k.scale_max))
			add("criterion " + k.id,
				fmt::format("scale_min {} must be < scale_max {}", *k.scale_min, *k.scale_max));
	}

	if (table.values.size() != table.components.size())
		add("values", fmt::format("{} rows for {} components", table.values.size(),
								  table.components.size()));

	const std::size_t rows = std::min(table.values.size(), table.components.size());
	for (std::size_t i = 0; i < rows; ++i) {
		const auto& row = table.values[i];
		const auto& cid = table.components[i].id;
		for (std::size_t j = row.size(); j < table.criteria.size(); ++j)
			add(fmt::format("cell ({}, {})", cid, table.criteria[j].id), "missing value");
		if (row.size() > table.criteria.size())
			add("component " + cid, fmt::format("{} values for {} criteria", row.size(),
												table.criteria.size()));
		const std::size_t cols = std::min(row.size(), table.criteria.size());
		for (std::size_t j = 0; j < cols; ++j) {
			const auto& k = table.criteria[j];
			const double v = row[j];
			const std::string where = fmt::format("cell ({}, {})", cid, k.id);
			if (!std::isfinite(v)) {
				add(where, "value is not finite");
				continue;
			}
			if ((k.scale_min && v < *k.scale_min) || (k.scale_max && v > *k.scale_max))
				add(where, fmt::format("value {} outside [{}, {}]", v,
									   k.scale_min ? fmt::format("{}", *k.scale_min) : "-inf",
									   k.scale_max ? fmt::format("{}", *k.scale_max) : "+inf"));
		}
	}
	return report;
}

ValidationReport validate_graph(const Graph& graph)
{
	ValidationReport report;
	auto add = [&](std::string where, std::string message) {
		report.push_back({std::move(where), std::move(message)});
	};

	std::set<std::string> ids;
	for (const auto& n : graph.nodes)
		if (!ids.insert(n).second)
			add("node " + n, "duplicate node id");

	std::set<std::pair<std::size_t, std::size_t>> seen;
	const std::size_t n = graph.nodes.size();
	for (std::size_t k = 0; k < graph.edges.size(); ++k) {
		const auto& e = graph.edges[k];
		if (e.u >= n || e.v >= n) {
			add(fmt::format("edge #{}", k), "endpoint does not exist");
			continue;
		}
		const std::string where = fmt::format("edge ({},{})", graph.nodes[e.u], graph.nodes[e.v]);
		if (e.u == e.v)
			add(where, "self-loop");
		if (!seen.insert(std::minmax(e.u, e.v)).second)
			add(where, "duplicate edge");
		if (e.cost) {
			if (!std::isfinite(e.cost->primary) || !std::isfinite(e.cost->secondary) ||
				e.cost->primary < 0.0 || e.cost->secondary < 0.0)
				add(where, "costs must be finite and nonnegative");
			else if (e.cost->secondary > e.cost->primary)
				add(where, fmt::format("secondary cost {} exceeds primary cost {}",
									   e.cost->secondary, e.cost->primary));
		}
	}
	return report;
}

std::string format_report(const ValidationReport& report)
{
	std::string out;
	for (const auto& v : report)
		out += fmt::format("{}: {}\n", v.where, v.message);
	return out;
}

} // namespace bnd
