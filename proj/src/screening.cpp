#include "bnd/screening.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace bnd {
namespace {

constexpr double kEps = 1e-12;

std::vector<std::size_t> resolve_criteria(const EstimateTable& table,
										  std::span<const std::string> criteria)
{
	if (criteria.empty())
		throw InputError("criteria set is empty");
	std::vector<std::size_t> cols;
	cols.reserve(criteria.size());
	for (const auto& id : criteria) {
		auto j = table.criterion_index(id);
		if (!j)
			throw InputError(fmt::format("unknown criterion '{}'", id));
		cols.push_back(*j);
	}
	return cols;
}

std::size_t resolve_component(const EstimateTable& table, std::string_view id)
{
	auto i = table.component_index(id);
	if (!i)
		throw InputError(fmt::format("unknown component '{}'", id));
	return *i;
}

double oriented(const EstimateTable& table, std::size_t row, std::size_t col)
{
	const double v = table.values.at(row).at(col);
	return table.criteria[col].ascending ? v : -v;
}

/// Precomputed oriented values, weights and discordance ranges for one
/// (table, criteria, params) triple.
class OutrankContext
{
  public:
	OutrankContext(const EstimateTable& table, std::span<const std::string> criteria,
				   const OutrankParams* params)
		: table_(table), cols_(resolve_criteria(table, criteria))
	{
		for (auto j : cols_) {
			total_weight_ += table.criteria[j].weight;
			double lo = std::numeric_limits<double>::infinity();
			double hi = -lo;
			for (std::size_t i = 0; i < table.components.size(); ++i) {
				lo = std::min(lo, oriented(table, i, j));
				hi = std::max(hi, oriented(table, i, j));
			}
			double range = table.components.empty() ? 0.0 : hi - lo;
			if (params) {
				auto it = params->discordance_range.find(table.criteria[j].id);
				if (it != params->discordance_range.end())
					range = it->second;
			}
			ranges_.push_back(range);
		}
	}

	double concordance(std::size_t a, std::size_t b) const
	{
		if (!(total_weight_ > 0.0))
			throw InputError("total criteria weight is zero");
		double agree = 0.0;
		for (auto j : cols_)
			if (oriented(table_, a, j) >= oriented(table_, b, j))
				agree += table_.criteria[j].weight;
		return agree / total_weight_;
	}

	double discordance(std::size_t a, std::size_t b) const
	{
		double worst = 0.0;
		for (std::size_t k = 0; k < cols_.size(); ++k) {
			if (!(ranges_[k] > 0.0))
				continue;
			const double gap = oriented(table_, b, cols_[k]) - oriented(table_, a, cols_[k]);
			worst = std::max(worst, gap / ranges_[k]);
		}
		return std::clamp(worst, 0.0, 1.0);
	}

  private:
	const EstimateTable& table_;
	std::vector<std::size_t> cols_;
	std::vector<double> ranges_;
	double total_weight_ = 0.0;
};

// Tarjan's SCC; returns component id per node, ids in reverse topological order.
std::vector<std::size_t> strongly_connected(std::size_t n, const std::vector<bool>& adj,
											std::size_t& count)
{
	constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
	std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
	std::vector<bool> on_stack(n, false);
	std::vector<std::size_t> stack;
	std::size_t next = 0;
	count = 0;

	std::function<void(std::size_t)> visit = [&](std::size_t v) {
		index[v] = low[v] = next++;
		stack.push_back(v);
		on_stack[v] = true;
		for (std::size_t w = 0; w < n; ++w) {
			if (!adj[v * n + w])
				continue;
			if (index[w] == kUnset) {
				visit(w);
				low[v] = std::min(low[v], low[w]);
			} else if (on_stack[w]) {
				low[v] = std::min(low[v], index[w]);
			}
		}
		if (low[v] == index[v]) {
			std::size_t w;
			do {
				w = stack.back();
				stack.pop_back();
				on_stack[w] = false;
				comp[w] = count;
			} while (w != v);
			++count;
		}
	};
	for (std::size_t v = 0; v < n; ++v)
		if (index[v] == kUnset)
			visit(v);
	return comp;
}

} // namespace

std::vector<std::string> all_criteria(const EstimateTable& table)
{
	std::vector<std::string> ids;
	for (const auto& k : table.criteria)
		ids.push_back(k.id);
	return ids;
}

ParetoChart pareto_chart(const EstimateTable& table, std::string_view criterion,
						 double threshold)
{
	auto col = table.criterion_index(criterion);
	if (!col)
		throw InputError(fmt::format("unknown criterion '{}'", criterion));

	ParetoChart chart;
	chart.criterion = std::string(criterion);
	chart.threshold = threshold;
	for (std::size_t i = 0; i < table.components.size(); ++i) {
		const double v = table.values.at(i).at(*col);
		chart.bars.push_back({table.components[i].id, v, v >= threshold});
	}
	std::stable_sort(chart.bars.begin(), chart.bars.end(), [](const auto& x, const auto& y) {
		if (x.value != y.value)
			return x.value > y.value;
		return x.component < y.component;
	});
	for (const auto& bar : chart.bars)
		if (bar.selected)
			chart.selected.push_back(bar.component);
	return chart;
}

std::vector<std::string> pareto_efficient(const EstimateTable& table,
										  std::span<const std::string> criteria)
{
	const auto cols = resolve_criteria(table, criteria);
	const std::size_t n = table.components.size();
	auto dominates = [&](std::size_t a, std::size_t b) {
		bool strict = false;
		for (auto j : cols) {
			const double va = oriented(table, a, j);
			const double vb = oriented(table, b, j);
			if (va < vb)
				return false;
			strict = strict || va > vb;
		}
		return strict;
	};
	std::vector<std::string> out;
	for (std::size_t b = 0; b < n; ++b) {
		bool dominated = false;
		for (std::size_t a = 0; a < n && !dominated; ++a)
			dominated = a != b && dominates(a, b);
		if (!dominated)
			out.push_back(table.components[b].id);
	}
	return out;
}

double concordance(const EstimateTable& table, std::string_view a, std::string_view b,
				   std::span<const std::string> criteria)
{
	if (a == b)
		throw InputError("concordance requires two distinct components");
	OutrankContext ctx(table, criteria, nullptr);
	return ctx.concordance(resolve_component(table, a), resolve_component(table, b));
}

double discordance(const EstimateTable& table, std::string_view a, std::string_view b,
				   std::span<const std::string> criteria, const OutrankParams& params)
{
	if (a == b)
		throw InputError("discordance requires two distinct components");
	OutrankContext ctx(table, criteria, &params);
	return ctx.discordance(resolve_component(table, a), resolve_component(table, b));
}

std::vector<bool> outranking_matrix(const EstimateTable& table,
									std::span<const std::string> criteria,
									const OutrankParams& params)
{
	const auto& p = params.concordance_threshold;
	const auto& q = params.discordance_threshold;
	if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
		throw InputError(fmt::format("outranking thresholds must lie in [0,1], got p={} q={}", p, q));
	OutrankContext ctx(table, criteria, &params);
	const std::size_t n = table.components.size();
	std::vector<bool> adj(n * n, false);
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = 0; b < n; ++b)
			if (a != b)
				adj[a * n + b] = ctx.concordance(a, b) >= p - kEps && ctx.discordance(a, b) <= q + kEps;
	return adj;
}

LayerRanking electre_layers(const EstimateTable& table, std::span<const std::string> criteria,
							const OutrankParams& params)
{
	const auto adj = outranking_matrix(table, criteria, params);
	const std::size_t n = table.components.size();
	std::size_t count = 0;
	const auto comp = strongly_connected(n, adj, count);

	std::vector<std::set<std::size_t>> preds(count);
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = 0; b < n; ++b)
			if (adj[a * n + b] && comp[a] != comp[b])
				preds[comp[b]].insert(comp[a]);

	LayerRanking ranking;
	std::vector<bool> removed(count, false);
	std::size_t left = count;
	while (left > 0) {
		std::vector<bool> source(count, false);
		for (std::size_t c = 0; c < count; ++c) {
			if (removed[c])
				continue;
			source[c] = std::none_of(preds[c].begin(), preds[c].end(),
									 [&](std::size_t p) { return !removed[p]; });
		}
		std::vector<std::string> layer;
		for (std::size_t i = 0; i < n; ++i)
			if (source[comp[i]])
				layer.push_back(table.components[i].id);
		for (std::size_t c = 0; c < count; ++c)
			if (source[c]) {
				removed[c] = true;
				--left;
			}
		ranking.layers.push_back(std::move(layer));
	}
	return ranking;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
	std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
	if (sa.empty() && sb.empty())
		return 1.0;
	std::size_t common = 0;
	for (const auto& x : sa)
		common += sb.count(x);
	return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

Calibration calibrate_outranking(const EstimateTable& table,
								 std::span<const std::string> criteria,
								 const std::vector<std::vector<std::string>>& target_layers,
								 const CalibrationGrid& grid)
{
	if (target_layers.empty())
		throw InputError("calibration needs at least one target layer");
	if (!(grid.step > 0.0))
		throw InputError("calibration grid step must be positive");

	auto steps = [&](double lo, double hi) {
		return static_cast<int>(std::floor((hi - lo) / grid.step + 1e-9));
	};
	Calibration best;
	bool have = false;
	std::tuple<double, double> best_key{-1.0, -1.0};
	for (int pi = 0; pi <= steps(grid.p_min, grid.p_max); ++pi) {
		for (int qi = 0; qi <= steps(grid.q_min, grid.q_max); ++qi) {
			OutrankParams params;
			// Round to the grid so the recorded values print cleanly.
			params.concordance_threshold = std::round((grid.p_min + pi * grid.step) * 1e6) / 1e6;
			params.discordance_threshold = std::round((grid.q_min + qi * grid.step) * 1e6) / 1e6;
			const auto ranking = electre_layers(table, criteria, params);
			std::vector<double> scores;
			for (std::size_t l = 0; l < target_layers.size(); ++l)
				scores.push_back(l < ranking.layers.size() ? jaccard(ranking.layers[l], target_layers[l])
														   : 0.0);
			double rest = 0.0;
			for (std::size_t l = 1; l < scores.size(); ++l)
				rest += scores[l];
			const bool exact = scores[0] == 1.0;
			++best.grid_points;
			if (exact)
				++best.exact_first_layer_points;
			std::tuple<double, double> key{scores[0], rest};
			// Strictly greater keeps the earliest (smallest p, then q) on ties.
			if (!have || key > best_key) {
				have = true;
				best_key = key;
				best.params = params;
				best.layer_jaccard = scores;
				best.exact_first_layer = exact;
			}
		}
	}
	return best;
}

} // namespace bnd
