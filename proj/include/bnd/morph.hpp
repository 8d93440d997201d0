#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bnd/model.hpp"

namespace bnd {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

enum class DominanceMode
{
	Solution,  // max eta, max w
	Bottleneck // min eta, max w
};

/// Cumulative best-first dominance: every prefix sum of `a` is at least the
/// matching prefix sum of `b`. Requires equal lengths and totals.
bool dominates_eta(std::span<const int> a, std::span<const int> b);

bool dominates_quality(const QualityVector& a, const QualityVector& b, DominanceMode mode);

/// Quality of a full pick list. Picks may be given in any order; the result
/// lists them in slot order.
CompositeSolution compose(const MorphSystem& system, std::span<const std::string> picks);

/// Number of slot-wise combinations (saturates at UINT64_MAX).
std::uint64_t combination_count(const MorphSystem& system);

/// Exhaustive enumeration. Combinations with any zero compatibility are
/// infeasible and skipped. Returns the maximal solutions in enumeration order
/// (first slot varies slowest, alternatives in declaration order).
std::vector<CompositeSolution> pareto_solutions(const MorphSystem& system,
												std::uint64_t budget = kDefaultEnumerationBudget);

/// Every feasible combination, in enumeration order. Exposed for oracle tests.
std::vector<CompositeSolution> enumerate_solutions(const MorphSystem& system,
												   std::uint64_t budget = kDefaultEnumerationBudget);

struct ImprovementAction
{
	enum class Kind
	{
		DaUpgrade,
		IcUpgrade
	};
	Kind kind = Kind::DaUpgrade;
	std::vector<std::string> target; // one DA, or a DA pair in slot order
	int from_level = 0;
	int to_level = 0;

	bool operator==(const ImprovementAction&) const = default;
};

/// DA upgrades (priority -> 1) then IC upgrades (w -> nu), both in slot order.
std::vector<ImprovementAction> improvement_actions(const MorphSystem& system,
												   const CompositeSolution& solution);

struct Subsystem
{
	std::vector<std::size_t> slots; // ascending slot indices
	std::vector<std::string> picks;
	QualityVector quality;

	bool operator==(const Subsystem&) const = default;
};

/// Quality of the picks restricted to `slots` (at least two slots).
Subsystem make_subsystem(const MorphSystem& system, const CompositeSolution& solution,
						 std::span<const std::size_t> slots);

/// All subsystems of the given size, slot subsets in lexicographic order.
std::vector<Subsystem> all_subsystems(const MorphSystem& system, const CompositeSolution& solution,
									  std::size_t size);

/// Maximal subsystems under bottleneck-mode dominance.
std::vector<Subsystem> composite_bottlenecks(const MorphSystem& system,
											 const CompositeSolution& solution, std::size_t size);

std::string format_quality(const QualityVector& q);

} // namespace bnd
