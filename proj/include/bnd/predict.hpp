#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bnd/model.hpp"
#include "bnd/morph.hpp"
#include "bnd/screening.hpp"

namespace bnd {

using Snapshot = std::variant<MorphSystem, EstimateTable>;

/// States of one system skeleton at strictly increasing ordinal timestamps.
struct SnapshotSeries
{
	std::vector<int> timestamps;
	std::vector<Snapshot> states;
	// Optional user-supplied forecast states carried alongside the history.
	std::vector<int> forecast_timestamps;
	std::vector<Snapshot> forecast_states;

	bool operator==(const SnapshotSeries&) const = default;
};

ValidationReport validate_series(const SnapshotSeries& series);

/// Empty when both snapshots share slots, DAs and declared compat pairs
/// (or components and criteria); otherwise lists the differences.
ValidationReport skeleton_mismatch(const Snapshot& reference, const Snapshot& other);

struct TimedSnapshot
{
	int timestamp = 0;
	Snapshot state;

	bool operator==(const TimedSnapshot&) const = default;
};

struct Forecaster
{
	enum class Method
	{
		HoldLast,
		LinearTrend,
		UserSupplied
	};
	Method method = Method::HoldLast;
	int horizon = 1;
	std::vector<TimedSnapshot> supplied; // UserSupplied only
};

/// Least-squares trend per parameter. Ordinals (priorities, compatibilities)
/// are rounded half away from zero; every value is clamped to its scale.
std::vector<TimedSnapshot> forecast(const SnapshotSeries& series, const Forecaster& forecaster);

// Detectors runnable on a snapshot.
struct ChartDetector
{
	std::string criterion;
	double threshold = 0.0;
};
struct ParetoDetector
{
	std::vector<std::string> criteria; // empty = all
};
struct RankDetector
{
	std::vector<std::string> criteria; // empty = all
	OutrankParams params;
};
struct SolveDetector
{
	std::uint64_t budget = kDefaultEnumerationBudget;
};
struct BottleneckDetector
{
	std::vector<std::string> picks; // empty: every slot must hold exactly one DA
	std::size_t subsystem_size = 3;
};

using Detector =
	std::variant<ChartDetector, ParetoDetector, RankDetector, SolveDetector, BottleneckDetector>;

using DetectionResult = std::variant<ParetoChart, std::vector<std::string>, LayerRanking,
									 std::vector<CompositeSolution>, std::vector<Subsystem>>;

DetectionResult run_detector(const Snapshot& snapshot, const Detector& detector);

struct TrajectoryEntry
{
	int timestamp = 0;
	bool forecast = false;
	DetectionResult result;
};

struct BottleneckTrajectory
{
	std::vector<TrajectoryEntry> entries;
};

BottleneckTrajectory predictive_bottlenecks(const SnapshotSeries& series,
											const Forecaster& forecaster, const Detector& detector);

/// The solution a BottleneckDetector examines on a morph snapshot.
CompositeSolution detector_solution(const MorphSystem& system, const BottleneckDetector& detector);

} // namespace bnd
