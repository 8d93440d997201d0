#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnd/model.hpp"

namespace bnd {

struct ChartBar
{
	std::string component;
	double value = 0.0;
	bool selected = false;

	bool operator==(const ChartBar&) const = default;
};

/// Components sorted by one criterion (descending, ties by id) with an
/// inclusive selection threshold.
struct ParetoChart
{
	std::string criterion;
	double threshold = 0.0;
	std::vector<ChartBar> bars;
	std::vector<std::string> selected; // in bar order

	bool operator==(const ParetoChart&) const = default;
};

ParetoChart pareto_chart(const EstimateTable& table, std::string_view criterion,
						 double threshold);

/// Components not criticality-dominated on the given criteria, in table order.
std::vector<std::string> pareto_efficient(const EstimateTable& table,
										  std::span<const std::string> criteria);

/// ELECTRE-I thresholds. A discordance range that is absent for a criterion
/// defaults to the observed (max - min) over the table.
struct OutrankParams
{
	double concordance_threshold = 0.5; // p
	double discordance_threshold = 1.0; // q
	std::map<std::string, double> discordance_range;

	bool operator==(const OutrankParams&) const = default;
};

double concordance(const EstimateTable& table, std::string_view a, std::string_view b,
				   std::span<const std::string> criteria);

double discordance(const EstimateTable& table, std::string_view a, std::string_view b,
				   std::span<const std::string> criteria, const OutrankParams& params);

/// Layer 1 holds the most critical components.
struct LayerRanking
{
	std::vector<std::vector<std::string>> layers;

	bool operator==(const LayerRanking&) const = default;
};

/// Outranking digraph (a -> b iff concordance >= p and discordance <= q),
/// condensed into strongly connected components and peeled source-first.
LayerRanking electre_layers(const EstimateTable& table, std::span<const std::string> criteria,
							const OutrankParams& params);

/// Adjacency of the outranking relation over table rows (row-major n x n).
std::vector<bool> outranking_matrix(const EstimateTable& table,
									std::span<const std::string> criteria,
									const OutrankParams& params);

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct CalibrationGrid
{
	double p_min = 0.5, p_max = 1.0;
	double q_min = 0.1, q_max = 1.0;
	double step = 0.05;
};

struct Calibration
{
	OutrankParams params;
	std::vector<double> layer_jaccard; // per target layer
	bool exact_first_layer = false;
	std::size_t grid_points = 0;
	std::size_t exact_first_layer_points = 0;
};

/// Grid search over (p, q). Ranks points by first-layer Jaccard, then by the
/// summed Jaccard of the remaining target layers, then by smaller p, then by
/// smaller q.
Calibration calibrate_outranking(const EstimateTable& table,
								 std::span<const std::string> criteria,
								 const std::vector<std::vector<std::string>>& target_layers,
								 const CalibrationGrid& grid = {});

/// All criterion ids of the table, in column order.
std::vector<std::string> all_criteria(const EstimateTable& table);

} // namespace bnd
