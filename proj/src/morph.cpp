#include "bnd/morph.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace bnd {
namespace {

/// Dense index over a MorphSystem: DA indices, slot membership and a
/// compatibility matrix with -1 for undeclared pairs.
struct IndexedSystem
{
	std::vector<std::vector<std::size_t>> slot_das;
	std::vector<std::size_t> slot_of;
	std::vector<int> priority;
	std::vector<int> compat; // row-major, size das x das
	std::size_t das = 0;

	explicit IndexedSystem(const MorphSystem& system)
		: slot_das(system.slots.size()), das(system.alternatives.size())
	{
		std::map<std::string, std::size_t> by_id;
		for (std::size_t d = 0; d < das; ++d) {
			const auto& da = system.alternatives[d];
			auto s = system.slot_index(da.slot_id);
			if (!s)
				throw InputError(fmt::format("DA {} refers to unknown slot '{}'", da.id, da.slot_id));
			slot_of.push_back(*s);
			slot_das[*s].push_back(d);
			priority.push_back(da.priority);
			by_id.emplace(da.id, d);
		}
		compat.assign(das * das, -1);
		for (const auto& e : system.compat) {
			auto a = by_id.find(e.a);
			auto b = by_id.find(e.b);
			if (a == by_id.end() || b == by_id.end())
				continue;
			compat[a->second * das + b->second] = e.w;
			compat[b->second * das + a->second] = e.w;
		}
	}

	int pair(std::size_t a, std::size_t b) const { return compat[a * das + b]; }
};

QualityVector quality_of(const MorphSystem& system, const IndexedSystem& idx,
						 std::span<const std::size_t> picked)
{
	QualityVector q;
	q.eta.assign(static_cast<std::size_t>(std::max(system.quality_levels, 0)), 0);
	q.w = system.compat_max;
	for (auto d : picked) {
		const int p = idx.priority[d];
		if (p < 1 || p > system.quality_levels)
			throw InputError(fmt::format("DA {} has priority {} outside [1,{}]",
										 system.alternatives[d].id, p, system.quality_levels));
		++q.eta[static_cast<std::size_t>(p - 1)];
	}
	for (std::size_t i = 0; i < picked.size(); ++i) {
		for (std::size_t j = i + 1; j < picked.size(); ++j) {
			const int w = idx.pair(picked[i], picked[j]);
			if (w < 0)
				throw InputError(fmt::format("missing compatibility for pair ({},{})",
											 system.alternatives[picked[i]].id,
											 system.alternatives[picked[j]].id));
			q.w = std::min(q.w, w);
		}
	}
	return q;
}

std::vector<std::size_t> resolve_picks(const MorphSystem& system, const IndexedSystem& idx,
									   std::span<const std::string> picks)
{
	if (picks.size() != system.slots.size())
		throw InputError(fmt::format("expected {} picks (one per slot), got {}", system.slots.size(),
									 picks.size()));
	constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
	std::vector<std::size_t> by_slot(system.slots.size(), kNone);
	for (const auto& id : picks) {
		std::size_t d = 0;
		while (d < idx.das && system.alternatives[d].id != id)
			++d;
		if (d == idx.das)
			throw InputError(fmt::format("unknown design alternative '{}'", id));
		auto& slot = by_slot[idx.slot_of[d]];
		if (slot != kNone)
			throw InputError(fmt::format("slot {} picked twice", system.slots[idx.slot_of[d]]));
		slot = d;
	}
	for (std::size_t s = 0; s < by_slot.size(); ++s)
		if (by_slot[s] == kNone)
			throw InputError(fmt::format("missing pick for slot {}", system.slots[s]));
	return by_slot;
}

void require_valid(const MorphSystem& system)
{
	auto report = validate_system(system);
	if (!report.empty())
		throw InputError("invalid morphological system:\n" + format_report(report));
}

template <typename T, typename Dominates>
std::vector<T> maximal(const std::vector<T>& items, Dominates&& dominates)
{
	std::vector<T> out;
	for (std::size_t b = 0; b < items.size(); ++b) {
		bool beaten = false;
		for (std::size_t a = 0; a < items.size() && !beaten; ++a)
			beaten = a != b && dominates(items[a], items[b]) && !dominates(items[b], items[a]);
		if (!beaten)
			out.push_back(items[b]);
	}
	return out;
}

} // namespace

bool dominates_eta(std::span<const int> a, std::span<const int> b)
{
	if (a.size() != b.size())
		throw InputError(fmt::format("eta length mismatch ({} vs {})", a.size(), b.size()));
	long sa = 0, sb = 0;
	bool ok = true;
	for (std::size_t r = 0; r < a.size(); ++r) {
		sa += a[r];
		sb += b[r];
		ok = ok && sa >= sb;
	}
	if (sa != sb)
		throw InputError(fmt::format("eta totals differ ({} vs {})", sa, sb));
	return ok;
}

bool dominates_quality(const QualityVector& a, const QualityVector& b, DominanceMode mode)
{
	if (a.w < b.w) {
		// Still validate shapes so mismatches never pass silently.
		(void)dominates_eta(a.eta, b.eta);
		return false;
	}
	return mode == DominanceMode::Solution ? dominates_eta(a.eta, b.eta)
										   : dominates_eta(b.eta, a.eta);
}

CompositeSolution compose(const MorphSystem& system, std::span<const std::string> picks)
{
	IndexedSystem idx(system);
	const auto picked = resolve_picks(system, idx, picks);
	CompositeSolution sol;
	for (auto d : picked)
		sol.picks.push_back(system.alternatives[d].id);
	sol.quality = quality_of(system, idx, picked);
	return sol;
}

std::uint64_t combination_count(const MorphSystem& system)
{
	std::uint64_t count = 1;
	for (const auto& s : system.slots) {
		const auto n = static_cast<std::uint64_t>(system.alternatives_of(s).size());
		if (n == 0)
			return 0;
		if (count > std::numeric_limits<std::uint64_t>::max() / n)
			return std::numeric_limits<std::uint64_t>::max();
		count *= n;
	}
	return count;
}

std::vector<CompositeSolution> enumerate_solutions(const MorphSystem& system, std::uint64_t budget)
{
	require_valid(system);
	const auto count = combination_count(system);
	if (count > budget)
		throw InfeasibleError(fmt::format(
			"enumeration budget exceeded: {} combinations > budget {}", count, budget));

	IndexedSystem idx(system);
	const std::size_t m = system.slots.size();
	std::vector<CompositeSolution> out;
	if (m == 0)
		return out;
	std::vector<std::size_t> odometer(m, 0), picked(m);
	while (true) {
		for (std::size_t s = 0; s < m; ++s)
			picked[s] = idx.slot_das[s][odometer[s]];
		auto q = quality_of(system, idx, picked);
		if (q.w > 0) {
			CompositeSolution sol;
			for (auto d : picked)
				sol.picks.push_back(system.alternatives[d].id);
			sol.quality = std::move(q);
			out.push_back(std::move(sol));
		}
		std::size_t s = m;
		while (s > 0) {
			--s;
			if (++odometer[s] < idx.slot_das[s].size())
				break;
			odometer[s] = 0;
			if (s == 0)
				return out;
		}
	}
}

std::vector<CompositeSolution> pareto_solutions(const MorphSystem& system, std::uint64_t budget)
{
	const auto all = enumerate_solutions(system, budget);

	// Dominance only looks at quality, so compare the distinct points.
	std::vector<QualityVector> points;
	for (const auto& s : all)
		if (std::find(points.begin(), points.end(), s.quality) == points.end())
			points.push_back(s.quality);
	const auto best = maximal(points, [](const auto& a, const auto& b) {
		return dominates_quality(a, b, DominanceMode::Solution);
	});

	std::vector<CompositeSolution> out;
	for (const auto& s : all)
		if (std::find(best.begin(), best.end(), s.quality) != best.end())
			out.push_back(s);
	return out;
}

std::vector<ImprovementAction> improvement_actions(const MorphSystem& system,
												   const CompositeSolution& solution)
{
	IndexedSystem idx(system);
	const auto picked = resolve_picks(system, idx, solution.picks);
	std::vector<ImprovementAction> out;
	for (auto d : picked) {
		if (idx.priority[d] > 1)
			out.push_back({ImprovementAction::Kind::DaUpgrade,
						   {system.alternatives[d].id},
						   idx.priority[d],
						   1});
	}
	for (std::size_t i = 0; i < picked.size(); ++i) {
		for (std::size_t j = i + 1; j < picked.size(); ++j) {
			const int w = idx.pair(picked[i], picked[j]);
			if (w < 0)
				throw InputError(fmt::format("missing compatibility for pair ({},{})",
											 system.alternatives[picked[i]].id,
											 system.alternatives[picked[j]].id));
			if (w < system.compat_max)
				out.push_back({ImprovementAction::Kind::IcUpgrade,
							   {system.alternatives[picked[i]].id, system.alternatives[picked[j]].id},
							   w,
							   system.compat_max});
		}
	}
	return out;
}

Subsystem make_subsystem(const MorphSystem& system, const CompositeSolution& solution,
						 std::span<const std::size_t> slots)
{
	IndexedSystem idx(system);
	const auto picked = resolve_picks(system, idx, solution.picks);
	std::vector<std::size_t> chosen(slots.begin(), slots.end());
	std::sort(chosen.begin(), chosen.end());
	if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end())
		throw InputError("subsystem slots must be distinct");
	if (chosen.size() < 2)
		throw InputError("a subsystem needs at least two slots");
	if (chosen.back() >= picked.size())
		throw InputError(fmt::format("subsystem slot index {} out of range", chosen.back()));

	Subsystem sub;
	sub.slots = chosen;
	std::vector<std::size_t> das;
	for (auto s : chosen) {
		das.push_back(picked[s]);
		sub.picks.push_back(system.alternatives[picked[s]].id);
	}
	sub.quality = quality_of(system, idx, das);
	return sub;
}

std::vector<Subsystem> all_subsystems(const MorphSystem& system, const CompositeSolution& solution,
									  std::size_t size)
{
	const std::size_t m = system.slots.size();
	if (size < 2 || size >= m)
		throw InputError(fmt::format("subsystem size must satisfy 2 <= size < {}, got {}", m, size));
	std::vector<Subsystem> out;
	std::vector<std::size_t> pick(size);
	for (std::size_t i = 0; i < size; ++i)
		pick[i] = i;
	while (true) {
		out.push_back(make_subsystem(system, solution, pick));
		std::size_t i = size;
		while (i > 0 && pick[i - 1] == m - size + (i - 1))
			--i;
		if (i == 0)
			return out;
		++pick[i - 1];
		for (std::size_t j = i; j < size; ++j)
			pick[j] = pick[j - 1] + 1;
	}
}

std::vector<Subsystem> composite_bottlenecks(const MorphSystem& system,
											 const CompositeSolution& solution, std::size_t size)
{
	const auto subs = all_subsystems(system, solution, size);
	return maximal(subs, [](const Subsystem& a, const Subsystem& b) {
		return dominates_quality(a.quality, b.quality, DominanceMode::Bottleneck);
	});
}

std::string format_quality(const QualityVector& q)
{
	return fmt::format("({};{})", q.w, fmt::join(q.eta, ","));
}

} // namespace bnd
