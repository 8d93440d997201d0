#include "bnd/predict.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace bnd {
namespace {

const char* kind_name(const Snapshot& s)
{
	return std::holds_alternative<MorphSystem>(s) ? "morph-system" : "estimate-table";
}

std::set<std::pair<std::string, std::string>> compat_pairs(const MorphSystem& m)
{
	std::set<std::pair<std::string, std::string>> out;
	for (const auto& e : m.compat) {
		auto [a, b] = std::minmax(e.a, e.b);
		out.emplace(a, b);
	}
	return out;
}

/// Least-squares line through (ts, ys) evaluated at t.
double trend_at(const std::vector<double>& ts, const std::vector<double>& ys, double t)
{
	const double n = static_cast<double>(ts.size());
	double tm = 0.0, ym = 0.0;
	for (std::size_t i = 0; i < ts.size(); ++i) {
		tm += ts[i];
		ym += ys[i];
	}
	tm /= n;
	ym /= n;
	double sxx = 0.0, sxy = 0.0;
	for (std::size_t i = 0; i < ts.size(); ++i) {
		sxx += (ts[i] - tm) * (ts[i] - tm);
		sxy += (ts[i] - tm) * (ys[i] - ym);
	}
	return ym + (sxx > 0.0 ? sxy / sxx : 0.0) * (t - tm);
}

int ordinal_trend(const std::vector<double>& ts, const std::vector<double>& ys, double t, int lo,
				  int hi)
{
	const double raw = std::round(trend_at(ts, ys, t));
	return static_cast<int>(std::clamp(raw, static_cast<double>(lo), static_cast<double>(hi)));
}

Snapshot extrapolate(const SnapshotSeries& series, double t)
{
	std::vector<double> ts(series.timestamps.begin(), series.timestamps.end());
	const std::size_t n = series.states.size();

	if (const auto* last = std::get_if<MorphSystem>(&series.states.back())) {
		MorphSystem out = *last;
		for (std::size_t d = 0; d < out.alternatives.size(); ++d) {
			std::vector<double> ys;
			for (std::size_t i = 0; i < n; ++i)
				ys.push_back(std::get<MorphSystem>(series.states[i]).alternatives[d].priority);
			out.alternatives[d].priority = ordinal_trend(ts, ys, t, 1, out.quality_levels);
		}
		for (auto& e : out.compat) {
			std::vector<double> ys;
			for (std::size_t i = 0; i < n; ++i)
				ys.push_back(*std::get<MorphSystem>(series.states[i]).compat_between(e.a, e.b));
			e.w = ordinal_trend(ts, ys, t, 0, out.compat_max);
		}
		return out;
	}

	EstimateTable out = std::get<EstimateTable>(series.states.back());
	for (std::size_t r = 0; r < out.values.size(); ++r) {
		for (std::size_t c = 0; c < out.values[r].size(); ++c) {
			std::vector<double> ys;
			for (std::size_t i = 0; i < n; ++i)
				ys.push_back(std::get<EstimateTable>(series.states[i]).values[r][c]);
			double v = trend_at(ts, ys, t);
			const auto& k = out.criteria[c];
			if (k.scale_min)
				v = std::max(v, *k.scale_min);
			if (k.scale_max)
				v = std::min(v, *k.scale_max);
			out.values[r][c] = v;
		}
	}
	return out;
}

ValidationReport validate_state(const Snapshot& s)
{
	return std::visit(
		[](const auto& v) {
			if constexpr (std::is_same_v<std::decay_t<decltype(v)>, MorphSystem>)
				return validate_system(v);
			else
				return validate_estimates(v);
		},
		s);
}

void append(ValidationReport& into, const ValidationReport& from, const std::string& prefix)
{
	for (const auto& v : from)
		into.push_back({prefix + v.where, v.message});
}

} // namespace

ValidationReport skeleton_mismatch(const Snapshot& reference, const Snapshot& other)
{
	ValidationReport report;
	if (reference.index() != other.index()) {
		report.push_back({"kind", fmt::format("{} vs {}", kind_name(reference), kind_name(other))});
		return report;
	}
	if (const auto* a = std::get_if<MorphSystem>(&reference)) {
		const auto& b = std::get<MorphSystem>(other);
		if (a->slots != b.slots)
			report.push_back({"slots", "slot lists differ"});
		bool same_das = a->alternatives.size() == b.alternatives.size();
		for (std::size_t i = 0; same_das && i < a->alternatives.size(); ++i)
			same_das = a->alternatives[i].id == b.alternatives[i].id &&
					   a->alternatives[i].slot_id == b.alternatives[i].slot_id;
		if (!same_das)
			report.push_back({"alternatives", "design alternatives differ"});
		if (compat_pairs(*a) != compat_pairs(b))
			report.push_back({"compat", "declared compatibility pairs differ"});
		if (a->quality_levels != b.quality_levels || a->compat_max != b.compat_max)
			report.push_back({"scales", "quality_levels or compat_max differ"});
	} else {
		const auto& ta = std::get<EstimateTable>(reference);
		const auto& tb = std::get<EstimateTable>(other);
		bool same = ta.components.size() == tb.components.size();
		for (std::size_t i = 0; same && i < ta.components.size(); ++i)
			same = ta.components[i].id == tb.components[i].id;
		if (!same)
			report.push_back({"components", "component lists differ"});
		same = ta.criteria.size() == tb.criteria.size();
		for (std::size_t j = 0; same && j < ta.criteria.size(); ++j)
			same = ta.criteria[j].id == tb.criteria[j].id;
		if (!same)
			report.push_back({"criteria", "criterion lists differ"});
	}
	return report;
}

ValidationReport validate_series(const SnapshotSeries& series)
{
	ValidationReport report;
	if (series.states.empty()) {
		report.push_back({"states", "series needs at least one snapshot"});
		return report;
	}
	if (series.timestamps.size() != series.states.size())
		report.push_back({"timestamps", fmt::format("{} timestamps for {} states",
													series.timestamps.size(), series.states.size())});
	for (std::size_t i = 1; i < series.timestamps.size(); ++i)
		if (series.timestamps[i] <= series.timestamps[i - 1])
			report.push_back({fmt::format("timestamps[{}]", i), "timestamps must strictly increase"});
	for (std::size_t i = 0; i < series.states.size(); ++i) {
		const auto prefix = fmt::format("state {}: ", i);
		append(report, validate_state(series.states[i]), prefix);
		if (i > 0)
			append(report, skeleton_mismatch(series.states[0], series.states[i]), prefix);
	}

	if (series.forecast_timestamps.size() != series.forecast_states.size())
		report.push_back({"forecast", fmt::format("{} timestamps for {} forecast states",
												  series.forecast_timestamps.size(),
												  series.forecast_states.size())});
	int prev = series.timestamps.empty() ? 0 : series.timestamps.back();
	for (std::size_t i = 0; i < series.forecast_timestamps.size(); ++i) {
		if (series.forecast_timestamps[i] <= prev)
			report.push_back({fmt::format("forecast timestamps[{}]", i),
							  "forecast timestamps must follow the history strictly"});
		prev = series.forecast_timestamps[i];
	}
	for (std::size_t i = 0; i < series.forecast_states.size(); ++i) {
		const auto prefix = fmt::format("forecast {}: ", i);
		append(report, validate_state(series.forecast_states[i]), prefix);
		append(report, skeleton_mismatch(series.states[0], series.forecast_states[i]), prefix);
	}
	return report;
}

std::vector<TimedSnapshot> forecast(const SnapshotSeries& series, const Forecaster& forecaster)
{
	const auto report = validate_series(series);
	if (!report.empty())
		throw InputError("invalid snapshot series:\n" + format_report(report));
	const int last = series.timestamps.back();

	std::vector<TimedSnapshot> out;
	switch (forecaster.method) {
	case Forecaster::Method::UserSupplied: {
		if (forecaster.supplied.empty())
			throw InputError("user-supplied forecaster has no forecast states");
		int prev = last;
		for (const auto& f : forecaster.supplied) {
			if (f.timestamp <= prev)
				throw InputError("forecast timestamps must follow the history strictly");
			prev = f.timestamp;
			auto bad = validate_state(f.state);
			append(bad, skeleton_mismatch(series.states.back(), f.state), "");
			if (!bad.empty())
				throw InputError("user-supplied forecast rejected:\n" + format_report(bad));
			out.push_back(f);
		}
		return out;
	}
	case Forecaster::Method::HoldLast:
	case Forecaster::Method::LinearTrend:
		break;
	}

	if (forecaster.horizon < 1)
		throw InputError(fmt::format("forecast horizon must be >= 1, got {}", forecaster.horizon));
	if (forecaster.method == Forecaster::Method::LinearTrend && series.states.size() < 2)
		throw InputError("linear-trend forecasting needs at least two snapshots");
	for (int step = 1; step <= forecaster.horizon; ++step) {
		const int t = last + step;
		if (forecaster.method == Forecaster::Method::HoldLast)
			out.push_back({t, series.states.back()});
		else
			out.push_back({t, extrapolate(series, t)});
	}
	return out;
}

CompositeSolution detector_solution(const MorphSystem& system, const BottleneckDetector& detector)
{
	if (!detector.picks.empty())
		return compose(system, detector.picks);
	std::vector<std::string> picks;
	for (const auto& slot : system.slots) {
		const auto das = system.alternatives_of(slot);
		if (das.size() != 1)
			throw InputError(fmt::format(
				"slot {} has {} alternatives; pass explicit picks to choose a solution", slot,
				das.size()));
		picks.push_back(das.front()->id);
	}
	return compose(system, picks);
}

DetectionResult run_detector(const Snapshot& snapshot, const Detector& detector)
{
	const auto report = validate_state(snapshot);
	if (!report.empty())
		throw InputError(fmt::format("invalid {} snapshot:\n{}", kind_name(snapshot),
									 format_report(report)));

	auto criteria_or_all = [](const EstimateTable& t, const std::vector<std::string>& c) {
		return c.empty() ? all_criteria(t) : c;
	};
	auto table = [&](const char* what) -> const EstimateTable& {
		if (const auto* t = std::get_if<EstimateTable>(&snapshot))
			return *t;
		throw InputError(fmt::format("detector '{}' needs estimate-table snapshots", what));
	};
	auto morph = [&](const char* what) -> const MorphSystem& {
		if (const auto* m = std::get_if<MorphSystem>(&snapshot))
			return *m;
		throw InputError(fmt::format("detector '{}' needs morph-system snapshots", what));
	};

	return std::visit(
		[&](const auto& d) -> DetectionResult {
			using D = std::decay_t<decltype(d)>;
			if constexpr (std::is_same_v<D, ChartDetector>) {
				return pareto_chart(table("screen-chart"), d.criterion, d.threshold);
			} else if constexpr (std::is_same_v<D, ParetoDetector>) {
				const auto& t = table("screen-pareto");
				const auto c = criteria_or_all(t, d.criteria);
				return pareto_efficient(t, c);
			} else if constexpr (std::is_same_v<D, RankDetector>) {
				const auto& t = table("screen-rank");
				const auto c = criteria_or_all(t, d.criteria);
				return electre_layers(t, c, d.params);
			} else if constexpr (std::is_same_v<D, SolveDetector>) {
				return pareto_solutions(morph("morph-solve"), d.budget);
			} else {
				const auto& m = morph("morph-bottlenecks");
				return composite_bottlenecks(m, detector_solution(m, d), d.subsystem_size);
			}
		},
		detector);
}

BottleneckTrajectory predictive_bottlenecks(const SnapshotSeries& series,
											const Forecaster& forecaster, const Detector& detector)
{
	const auto future = forecast(series, forecaster);
	BottleneckTrajectory trajectory;
	for (std::size_t i = 0; i < series.states.size(); ++i)
		trajectory.entries.push_back({series.timestamps[i], false, run_detector(series.states[i], detector)});
	for (const auto& f : future)
		trajectory.entries.push_back({f.timestamp, true, run_detector(f.state, detector)});
	return trajectory;
}

} // namespace bnd
