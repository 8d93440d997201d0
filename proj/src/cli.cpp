#include "bnd/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "bnd/io.hpp"
#include "bnd/morph.hpp"
#include "bnd/netbn.hpp"
#include "bnd/predict.hpp"
#include "bnd/screening.hpp"

namespace bnd::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct Report
{
	ojson data = ojson::object();
	std::string text;
	std::string csv;
};

std::string num(double v)
{
	return fmt::format("{}", v);
}

std::string picks_text(const std::vector<std::string>& picks)
{
	return fmt::format("{}", fmt::join(picks, "*"));
}

ojson quality_json(const QualityVector& q)
{
	return {{"w", q.w}, {"eta", q.eta}};
}

template <class T>
const T& expect(const Document& doc, const char* command, const char* kind)
{
	if (const auto* v = std::get_if<T>(&doc))
		return *v;
	throw InputError(
		fmt::format("{} expects a {} document, got {}", command, kind, document_kind(doc)));
}

std::vector<std::string> criteria_or_all(const EstimateTable& t, const std::vector<std::string>& c)
{
	return c.empty() ? all_criteria(t) : c;
}

OutrankParams outrank_params(const RunConfig& cfg)
{
	OutrankParams params;
	if (!cfg.params_file.empty())
		params = load_outrank_params(cfg.params_file);
	if (cfg.p)
		params.concordance_threshold = *cfg.p;
	if (cfg.q)
		params.discordance_threshold = *cfg.q;
	if (params.concordance_threshold < 0.0 || params.concordance_threshold > 1.0)
		throw InputError(fmt::format("p must lie in [0,1], got {}", params.concordance_threshold));
	if (params.discordance_threshold < 0.0 || params.discordance_threshold > 1.0)
		throw InputError(fmt::format("q must lie in [0,1], got {}", params.discordance_threshold));
	return params;
}

// ---- detection result rendering, shared by the screen/morph commands and predict ----

void render(const ParetoChart& chart, Report& r)
{
	r.data["criterion"] = chart.criterion;
	r.data["threshold"] = chart.threshold;
	r.data["bars"] = ojson::array();
	for (const auto& b : chart.bars)
		r.data["bars"].push_back({{"component", b.component}, {"value", b.value}, {"selected", b.selected}});
	r.data["selected"] = chart.selected;

	r.text += fmt::format("Pareto chart on {} (threshold {})\n", chart.criterion, num(chart.threshold));
	r.text += fmt::format("  {:<10} {:>12}  {}\n", "component", "value", "selected");
	for (const auto& b : chart.bars)
		r.text += fmt::format("  {:<10} {:>12}  {}\n", b.component, num(b.value), b.selected ? "*" : "");
	r.text += fmt::format("selected ({}): {}\n", chart.selected.size(), fmt::join(chart.selected, ", "));

	r.csv = "component,value,selected\n";
	for (const auto& b : chart.bars)
		r.csv += fmt::format("{},{},{}\n", b.component, num(b.value), b.selected ? 1 : 0);
}

void render_efficient(const std::vector<std::string>& efficient, Report& r)
{
	r.data["efficient"] = efficient;
	r.text += fmt::format("Pareto-efficient components ({}): {}\n", efficient.size(),
						  fmt::join(efficient, ", "));
	r.csv = "component\n";
	for (const auto& c : efficient)
		r.csv += c + "\n";
}

void render(const LayerRanking& ranking, Report& r)
{
	r.data["layers"] = ranking.layers;
	r.csv = "layer,component\n";
	for (std::size_t i = 0; i < ranking.layers.size(); ++i) {
		r.text += fmt::format("layer {} ({}): {}\n", i + 1, ranking.layers[i].size(),
							  fmt::join(ranking.layers[i], ", "));
		for (const auto& c : ranking.layers[i])
			r.csv += fmt::format("{},{}\n", i + 1, c);
	}
}

void render(const std::vector<CompositeSolution>& solutions, Report& r)
{
	r.data["solutions"] = ojson::array();
	for (const auto& s : solutions)
		r.data["solutions"].push_back({{"picks", s.picks}, {"quality", quality_json(s.quality)}});
	r.text += fmt::format("Pareto-efficient solutions ({}):\n", solutions.size());
	r.csv = "solution,picks,w,eta\n";
	for (std::size_t i = 0; i < solutions.size(); ++i) {
		const auto& s = solutions[i];
		r.text += fmt::format("  S{} = {}  N = {}\n", i + 1, picks_text(s.picks), format_quality(s.quality));
		r.csv += fmt::format("S{},{},{},{}\n", i + 1, fmt::join(s.picks, " "), s.quality.w,
							 fmt::join(s.quality.eta, " "));
	}
}

std::string slot_names(const MorphSystem& m, const Subsystem& s)
{
	std::string out;
	for (auto i : s.slots)
		out += m.slots[i];
	return out;
}

ojson subsystem_json(const MorphSystem& m, const Subsystem& s)
{
	ojson slots = ojson::array();
	for (auto i : s.slots)
		slots.push_back(m.slots[i]);
	return {{"slots", slots}, {"picks", s.picks}, {"quality", quality_json(s.quality)}};
}

/// Lists every subsystem of the given size and marks the maximal ones.
void render_subsystems(const MorphSystem& m, const std::vector<Subsystem>& all,
					   const std::vector<Subsystem>& maximal, Report& r)
{
	r.data["subsystems"] = ojson::array();
	r.data["bottlenecks"] = ojson::array();
	r.csv = "slots,picks,w,eta,bottleneck\n";
	r.text += fmt::format("  {:<8} {:<16} {:<12} {}\n", "slots", "picks", "N", "bottleneck");
	for (const auto& s : all) {
		const bool is_max = std::find(maximal.begin(), maximal.end(), s) != maximal.end();
		const auto id = slot_names(m, s);
		auto j = subsystem_json(m, s);
		j["bottleneck"] = is_max;
		r.data["subsystems"].push_back(j);
		if (is_max)
			r.data["bottlenecks"].push_back(id);
		r.text += fmt::format("  {:<8} {:<16} {:<12} {}\n", id, picks_text(s.picks),
							  format_quality(s.quality), is_max ? "*" : "");
		r.csv += fmt::format("{},{},{},{},{}\n", id, fmt::join(s.picks, " "), s.quality.w,
							 fmt::join(s.quality.eta, " "), is_max ? 1 : 0);
	}
	std::vector<std::string> ids = r.data["bottlenecks"];
	r.text += fmt::format("composite bottlenecks: {}\n", fmt::join(ids, ", "));
}

// ---- commands ----

Report screen_chart(const RunConfig& cfg, const Document& doc)
{
	const auto& table = expect<EstimateTable>(doc, "screen chart", "estimate-table");
	if (cfg.criterion.empty())
		throw InputError("screen chart needs --criterion");
	Report r;
	render(pareto_chart(table, cfg.criterion, cfg.threshold), r);
	if (!cfg.chart_file.empty()) {
		std::ofstream f(cfg.chart_file, std::ios::binary);
		if (!f)
			throw InputError("cannot write chart file " + cfg.chart_file);
		f << r.csv;
	}
	return r;
}

Report screen_pareto(const RunConfig& cfg, const Document& doc)
{
	const auto& table = expect<EstimateTable>(doc, "screen pareto", "estimate-table");
	const auto criteria = criteria_or_all(table, cfg.criteria);
	Report r;
	r.data["criteria"] = criteria;
	r.text += fmt::format("criteria: {}\n", fmt::join(criteria, ", "));
	render_efficient(pareto_efficient(table, criteria), r);
	return r;
}

std::vector<std::vector<std::string>> load_target_layers(const std::string& path)
{
	try {
		const auto j = nlohmann::json::parse(read_file(path));
		return j.at("layers").get<std::vector<std::vector<std::string>>>();
	} catch (const nlohmann::json::exception& e) {
		throw InputError(fmt::format("{}: expected {{\"layers\": [[ids...], ...]}}: {}", path, e.what()));
	}
}

Report screen_rank(const RunConfig& cfg, const Document& doc)
{
	const auto& table = expect<EstimateTable>(doc, "screen rank", "estimate-table");
	const auto criteria = criteria_or_all(table, cfg.criteria);
	Report r;
	r.data["criteria"] = criteria;
	OutrankParams params = outrank_params(cfg);

	if (!cfg.target_layers_file.empty()) {
		const auto target = load_target_layers(cfg.target_layers_file);
		const auto cal = calibrate_outranking(table, criteria, target);
		params = cal.params;
		r.data["calibration"] = {{"grid_points", cal.grid_points},
								 {"exact_first_layer", cal.exact_first_layer},
								 {"exact_first_layer_points", cal.exact_first_layer_points},
								 {"layer_jaccard", cal.layer_jaccard}};
		r.text += fmt::format("calibration: {} grid points, {} reproduce the first target layer\n",
							  cal.grid_points, cal.exact_first_layer_points);
		r.text += fmt::format("  best p = {}, q = {}; Jaccard per target layer: {}\n",
							  num(params.concordance_threshold), num(params.discordance_threshold),
							  fmt::join(cal.layer_jaccard, ", "));
		if (!cfg.write_params_file.empty()) {
			std::ofstream f(cfg.write_params_file, std::ios::binary);
			if (!f)
				throw InputError("cannot write params file " + cfg.write_params_file);
			f << to_json(params).dump(2) << "\n";
		}
	}

	r.data["params"] = to_json(params);
	r.text += fmt::format("criteria: {}\nELECTRE-I p = {}, q = {}\n", fmt::join(criteria, ", "),
						  num(params.concordance_threshold), num(params.discordance_threshold));
	const auto ranking = electre_layers(table, criteria, params);
	std::string header = r.text;
	r.text.clear();
	render(ranking, r);
	r.text = header + r.text;
	return r;
}

Report morph_solve(const RunConfig& cfg, const Document& doc)
{
	const auto& m = expect<MorphSystem>(doc, "morph solve", "morph-system");
	Report r;
	const auto count = combination_count(m);
	r.data["combinations"] = count;
	r.text += fmt::format("{} combinations over {} slots\n", count, m.slots.size());
	render(pareto_solutions(m, cfg.budget), r);
	return r;
}

Report morph_actions(const RunConfig& cfg, const Document& doc)
{
	const auto& m = expect<MorphSystem>(doc, "morph actions", "morph-system");
	const auto solution = detector_solution(m, BottleneckDetector{cfg.picks, 0});
	const auto actions = improvement_actions(m, solution);
	Report r;
	r.data["solution"] = {{"picks", solution.picks}, {"quality", quality_json(solution.quality)}};
	r.data["actions"] = ojson::array();
	r.text += fmt::format("solution {}  N = {}\n", picks_text(solution.picks), format_quality(solution.quality));
	r.text += fmt::format("improvement actions ({}):\n", actions.size());
	r.csv = "kind,target,from,to\n";
	for (const auto& a : actions) {
		const char* kind = a.kind == ImprovementAction::Kind::DaUpgrade ? "da" : "ic";
		r.data["actions"].push_back(
			{{"kind", kind}, {"target", a.target}, {"from", a.from_level}, {"to", a.to_level}});
		r.text += fmt::format("  {}  {:<10} {} => {}\n", kind, fmt::format("{}", fmt::join(a.target, "-")), a.from_level,
							  a.to_level);
		r.csv += fmt::format("{},{},{},{}\n", kind, fmt::join(a.target, " "), a.from_level, a.to_level);
	}
	return r;
}

std::size_t subsystem_size(const RunConfig& cfg, const MorphSystem& m)
{
	if (cfg.subsystem_size)
		return *cfg.subsystem_size;
	return m.slots.size() > 2 ? m.slots.size() - 1 : 2;
}

Report morph_bottlenecks(const RunConfig& cfg, const Document& doc)
{
	const auto& m = expect<MorphSystem>(doc, "morph bottlenecks", "morph-system");
	const auto size = subsystem_size(cfg, m);
	const auto solution = detector_solution(m, BottleneckDetector{cfg.picks, size});
	Report r;
	r.data["solution"] = {{"picks", solution.picks}, {"quality", quality_json(solution.quality)}};
	r.data["size"] = size;
	r.text += fmt::format("solution {}  N = {}; subsystems of {} slots\n", picks_text(solution.picks),
						  format_quality(solution.quality), size);
	render_subsystems(m, all_subsystems(m, solution, size), composite_bottlenecks(m, solution, size), r);
	return r;
}

std::vector<std::string> node_names(const Graph& g, const NodeSet& set)
{
	std::vector<std::string> out;
	for (auto i : set)
		out.push_back(g.nodes[i]);
	return out;
}

ojson edges_json(const Graph& g, const EdgeList& edges)
{
	ojson out = ojson::array();
	for (auto [u, v] : edges)
		out.push_back({g.nodes[u], g.nodes[v]});
	return out;
}

std::string edges_text(const Graph& g, const EdgeList& edges)
{
	std::vector<std::string> parts;
	for (auto [u, v] : edges)
		parts.push_back(g.nodes[u] + "-" + g.nodes[v]);
	return fmt::format("{}", fmt::join(parts, " "));
}

bool wants(const RunConfig& cfg, const char* method)
{
	return cfg.method == method || cfg.method == "both";
}

Report net_mlst(const RunConfig& cfg, const Document& doc)
{
	const auto& g = expect<Graph>(doc, "net mlst", "graph");
	Report r;
	r.csv = "method,node,degree,internal\n";
	auto emit = [&](const char* method, const SpanningTreeResult& t) {
		r.data[method] = {{"root", g.nodes[t.root]},
						  {"leaves", node_names(g, t.leaves)},
						  {"internal", node_names(g, t.internal)},
						  {"edges", edges_json(g, t.edges)}};
		ojson degree = ojson::object();
		for (std::size_t i = 0; i < g.size(); ++i)
			degree[g.nodes[i]] = t.degree[i];
		r.data[method]["degree"] = degree;
		r.text += fmt::format("{}: {} leaves, {} internal (bottlenecks): {}\n", method, t.leaves.size(),
							  t.internal.size(), fmt::join(node_names(g, t.internal), ", "));
		r.text += fmt::format("  tree: {}\n", edges_text(g, t.edges));
		for (std::size_t i = 0; i < g.size(); ++i) {
			const bool internal = std::binary_search(t.internal.begin(), t.internal.end(), i);
			r.csv += fmt::format("{},{},{},{}\n", method, g.nodes[i], t.degree[i], internal ? 1 : 0);
		}
	};
	std::optional<std::size_t> h, e;
	if (wants(cfg, "heuristic")) {
		const auto t = mlst_heuristic(g);
		h = t.leaves.size();
		emit("heuristic", t);
	}
	if (wants(cfg, "exact")) {
		const auto t = mlst_exact(g, cfg.exact_limit.value_or(kDefaultExactLimit));
		e = t.leaves.size();
		emit("exact", t);
	}
	if (h && e) {
		r.data["leaf_gap"] = *e - *h;
		r.text += fmt::format("leaf gap (exact - heuristic): {}\n", *e - *h);
	}
	return r;
}

Report net_cds(const RunConfig& cfg, const Document& doc)
{
	const auto& g = expect<Graph>(doc, "net cds", "graph");
	Report r;
	r.csv = "method,node\n";
	auto emit = [&](const char* method, const NodeSet& s) {
		const auto names = node_names(g, s);
		r.data[method] = names;
		r.text += fmt::format("{}: |CDS| = {}: {}\n", method, s.size(), fmt::join(names, ", "));
		for (const auto& n : names)
			r.csv += fmt::format("{},{}\n", method, n);
	};
	std::optional<std::size_t> h, e;
	if (wants(cfg, "heuristic")) {
		const auto s = cds_heuristic(g);
		h = s.size();
		emit("heuristic", s);
	}
	if (wants(cfg, "exact")) {
		const auto s = cds_exact(g, cfg.exact_limit.value_or(kDefaultExactLimit));
		e = s.size();
		emit("exact", s);
	}
	if (h && e) {
		r.data["size_gap"] = *h - *e;
		r.text += fmt::format("size gap (heuristic - exact): {}\n", *h - *e);
	}
	return r;
}

Report net_htnd(const RunConfig& cfg, const Document& doc)
{
	const auto& g = expect<Graph>(doc, "net htnd", "graph");
	Report r;
	r.csv = "method,level,u,v\n";
	auto emit = [&](const char* method, const TwoLevelDesign& d) {
		r.data[method] = {{"primary_path", node_names(g, d.primary_path)},
						  {"primary_edges", edges_json(g, d.primary_edges)},
						  {"secondary_edges", edges_json(g, d.secondary_edges)},
						  {"total_cost", d.total_cost}};
		std::vector<std::string> path = node_names(g, d.primary_path);
		r.text += fmt::format("{}: cost {}, primary path {}\n", method, num(d.total_cost),
							  fmt::join(path, "-"));
		r.text += fmt::format("  secondary: {}\n", edges_text(g, d.secondary_edges));
		for (auto [u, v] : d.primary_edges)
			r.csv += fmt::format("{},primary,{},{}\n", method, g.nodes[u], g.nodes[v]);
		for (auto [u, v] : d.secondary_edges)
			r.csv += fmt::format("{},secondary,{},{}\n", method, g.nodes[u], g.nodes[v]);
	};
	std::optional<double> h, e;
	if (wants(cfg, "heuristic")) {
		const auto d = htnd_heuristic(g);
		h = d.total_cost;
		emit("heuristic", d);
	}
	if (wants(cfg, "exact")) {
		const auto d = htnd_exact(g, cfg.exact_limit.value_or(kDefaultHtndExactLimit));
		e = d.total_cost;
		emit("exact", d);
	}
	if (h && e) {
		r.data["cost_gap"] = *h - *e;
		r.text += fmt::format("cost gap (heuristic - exact): {}\n", num(*h - *e));
	}
	return r;
}

Detector make_detector(const RunConfig& cfg, const SnapshotSeries& series)
{
	const auto& d = cfg.detector;
	if (d == "screen-chart") {
		if (cfg.criterion.empty())
			throw InputError("detector screen-chart needs --criterion");
		return ChartDetector{cfg.criterion, cfg.threshold};
	}
	if (d == "screen-pareto")
		return ParetoDetector{cfg.criteria};
	if (d == "screen-rank")
		return RankDetector{cfg.criteria, outrank_params(cfg)};
	if (d == "morph-solve")
		return SolveDetector{cfg.budget};
	if (d == "morph-bottlenecks") {
		std::size_t size = 3;
		if (cfg.subsystem_size)
			size = *cfg.subsystem_size;
		else if (const auto* m = std::get_if<MorphSystem>(&series.states.front()))
			size = subsystem_size(cfg, *m);
		return BottleneckDetector{cfg.picks, size};
	}
	throw InputError(fmt::format("unknown detector '{}'", d));
}

Forecaster make_forecaster(const RunConfig& cfg, const SnapshotSeries& series)
{
	Forecaster f;
	f.horizon = cfg.horizon;
	if (cfg.forecaster == "hold-last") {
		f.method = Forecaster::Method::HoldLast;
	} else if (cfg.forecaster == "linear-trend") {
		f.method = Forecaster::Method::LinearTrend;
	} else if (cfg.forecaster == "user") {
		f.method = Forecaster::Method::UserSupplied;
		for (std::size_t i = 0; i < series.forecast_states.size(); ++i)
			f.supplied.push_back({series.forecast_timestamps[i], series.forecast_states[i]});
	} else {
		throw InputError(fmt::format("unknown forecaster '{}'", cfg.forecaster));
	}
	return f;
}

Report predict_run(const RunConfig& cfg, const Document& doc)
{
	const auto& series = expect<SnapshotSeries>(doc, "predict run", "snapshot-series");
	if (series.states.empty())
		throw InputError("snapshot series has no states");
	const auto detector = make_detector(cfg, series);
	const auto trajectory = predictive_bottlenecks(series, make_forecaster(cfg, series), detector);

	Report r;
	r.data["detector"] = cfg.detector;
	r.data["forecaster"] = cfg.forecaster;
	r.data["trajectory"] = ojson::array();
	std::string header, rows;
	for (const auto& entry : trajectory.entries) {
		Report part;
		std::visit(
			[&](const auto& res) {
				using T = std::decay_t<decltype(res)>;
				if constexpr (std::is_same_v<T, std::vector<std::string>>) {
					render_efficient(res, part);
				} else if constexpr (std::is_same_v<T, std::vector<Subsystem>>) {
					// slot names are shared by every state of the series
					const auto& m = std::get<MorphSystem>(series.states.front());
					part.data["bottlenecks"] = ojson::array();
					part.csv = "slots,picks,w,eta\n";
					for (const auto& s : res) {
						part.data["bottlenecks"].push_back(subsystem_json(m, s));
						part.text += fmt::format("  {:<8} {:<16} N = {}\n", slot_names(m, s),
												 picks_text(s.picks), format_quality(s.quality));
						part.csv += fmt::format("{},{},{},{}\n", slot_names(m, s), fmt::join(s.picks, " "),
												s.quality.w, fmt::join(s.quality.eta, " "));
					}
				} else {
					render(res, part);
				}
			},
			entry.result);
		r.data["trajectory"].push_back(
			{{"timestamp", entry.timestamp}, {"forecast", entry.forecast}, {"result", part.data}});
		r.text += fmt::format("t = {}{}\n", entry.timestamp, entry.forecast ? " (forecast)" : "");
		r.text += part.text;

		std::istringstream lines(part.csv);
		std::string line;
		std::getline(lines, header);
		while (std::getline(lines, line))
			rows += fmt::format("{},{},{}\n", entry.timestamp, entry.forecast ? 1 : 0, line);
	}
	r.csv = "timestamp,forecast," + header + "\n" + rows;
	return r;
}

using Handler = Report (*)(const RunConfig&, const Document&);

Handler find_handler(const std::string& command)
{
	static const std::vector<std::pair<std::string, Handler>> table = {
		{"screen chart", screen_chart},	  {"screen pareto", screen_pareto},
		{"screen rank", screen_rank},	  {"morph solve", morph_solve},
		{"morph actions", morph_actions}, {"morph bottlenecks", morph_bottlenecks},
		{"net mlst", net_mlst},			  {"net cds", net_cds},
		{"net htnd", net_htnd},			  {"predict run", predict_run},
	};
	for (const auto& [name, h] : table)
		if (name == command)
			return h;
	return nullptr;
}

void validate_config(const RunConfig& cfg)
{
	if (!find_handler(cfg.command))
		throw InputError(fmt::format("unknown command '{}'", cfg.command));
	if (cfg.input.empty())
		throw InputError("no input file given");
	if (cfg.method != "heuristic" && cfg.method != "exact" && cfg.method != "both")
		throw InputError(fmt::format("--method must be heuristic, exact or both, got '{}'", cfg.method));
	if (cfg.horizon < 1)
		throw InputError(fmt::format("--horizon must be >= 1, got {}", cfg.horizon));
	if (cfg.subsystem_size && *cfg.subsystem_size < 2)
		throw InputError("--size must be >= 2");
}

std::string render_output(const RunConfig& cfg, const Report& r)
{
	switch (cfg.format) {
	case Format::Csv:
		return r.csv;
	case Format::JsonReport: {
		ojson doc = {{"command", cfg.command}, {"input", cfg.input}, {"result", r.data}};
		return doc.dump(2) + "\n";
	}
	case Format::Text:
		break;
	}
	return fmt::format("{} {}\n", cfg.command, cfg.input) + r.text;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	try {
		validate_config(cfg);
		const auto doc = load_document(cfg.input);
		const auto report = find_handler(cfg.command)(cfg, doc);
		const auto text = render_output(cfg, report);
		out << text;
		if (!cfg.report_file.empty()) {
			std::ofstream f(cfg.report_file, std::ios::binary);
			if (!f)
				throw InputError("cannot write report file " + cfg.report_file);
			f << text;
		}
		return kOk;
	} catch (const InfeasibleError& e) {
		err << "error: " << e.what() << "\n";
		return kInfeasible;
	} catch (const InputError& e) {
		err << "error: " << e.what() << "\n";
		return kInputError;
	}
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Bottleneck detection in modular systems", "bnd"};
	app.require_subcommand(1);
	app.fallthrough();

	RunConfig cfg;
	std::string format = "text";
	app.add_option("--format", format, "text | csv | json-report")
		->check(CLI::IsMember({"text", "csv", "json-report"}));
	app.add_option("--exact-limit", cfg.exact_limit, "node limit for exact solvers");
	app.add_option("--budget", cfg.budget, "enumeration budget for morph solve");
	app.add_option("--seed", cfg.seed, "reserved; all algorithms are deterministic");
	app.add_option("--report", cfg.report_file, "also write the report to this file");

	auto add_leaf = [&](CLI::App* group, const char* name, const char* help) {
		auto* sub = group->add_subcommand(name, help);
		sub->fallthrough();
		sub->add_option("input", cfg.input, "input JSON document")->required();
		sub->callback([&cfg, group, name] { cfg.command = group->get_name() + " " + name; });
		return sub;
	};

	auto* screen = app.add_subcommand("screen", "component screening");
	screen->require_subcommand(1);
	screen->fallthrough();
	auto* chart = add_leaf(screen, "chart", "Pareto chart on one criterion");
	chart->add_option("--criterion", cfg.criterion)->required();
	chart->add_option("--threshold", cfg.threshold)->required();
	chart->add_option("--chart", cfg.chart_file, "write the chart CSV here");
	auto* pareto = add_leaf(screen, "pareto", "Pareto-efficient components");
	pareto->add_option("--criteria", cfg.criteria)->delimiter(',');
	auto* rank = add_leaf(screen, "rank", "ELECTRE-I layering");
	rank->add_option("--criteria", cfg.criteria)->delimiter(',');
	rank->add_option("--params", cfg.params_file, "outrank-params JSON");
	rank->add_option("--p", cfg.p, "concordance threshold");
	rank->add_option("--q", cfg.q, "discordance threshold");
	rank->add_option("--calibrate-to", cfg.target_layers_file, "JSON with target layers");
	rank->add_option("--write-params", cfg.write_params_file, "save calibrated params");

	auto* morph = app.add_subcommand("morph", "morphological analysis");
	morph->require_subcommand(1);
	morph->fallthrough();
	add_leaf(morph, "solve", "Pareto-efficient composite solutions");
	auto* actions = add_leaf(morph, "actions", "improvement actions for a solution");
	actions->add_option("--picks", cfg.picks)->delimiter(',');
	auto* bn = add_leaf(morph, "bottlenecks", "composite bottlenecks of a solution");
	bn->add_option("--picks", cfg.picks)->delimiter(',');
	bn->add_option("--size", cfg.subsystem_size, "subsystem size in slots");

	auto* net = app.add_subcommand("net", "network structural bottlenecks");
	net->require_subcommand(1);
	net->fallthrough();
	for (const auto& [name, about] : {std::pair{"mlst", "maximum-leaf spanning tree"},
									  std::pair{"cds", "minimum connected dominating set"},
									  std::pair{"htnd", "two-level design: primary path plus secondary trees"}}) {
		auto* sub = add_leaf(net, name, about);
		sub->add_option("--method", cfg.method, "heuristic | exact | both")
			->check(CLI::IsMember({"heuristic", "exact", "both"}));
	}

	auto* predict = app.add_subcommand("predict", "forecast-driven detection");
	predict->require_subcommand(1);
	predict->fallthrough();
	auto* prun = add_leaf(predict, "run", "run a detector along a snapshot series");
	prun->add_option("--detector", cfg.detector)
		->required()
		->check(CLI::IsMember(
			{"screen-chart", "screen-pareto", "screen-rank", "morph-solve", "morph-bottlenecks"}));
	prun->add_option("--forecaster", cfg.forecaster, "hold-last | linear-trend | user")
		->check(CLI::IsMember({"hold-last", "linear-trend", "user"}));
	prun->add_option("--horizon", cfg.horizon);
	prun->add_option("--criterion", cfg.criterion);
	prun->add_option("--threshold", cfg.threshold);
	prun->add_option("--criteria", cfg.criteria)->delimiter(',');
	prun->add_option("--params", cfg.params_file);
	prun->add_option("--p", cfg.p);
	prun->add_option("--q", cfg.q);
	prun->add_option("--picks", cfg.picks)->delimiter(',');
	prun->add_option("--size", cfg.subsystem_size);

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return kOk;
	} catch (const CLI::CallForAllHelp&) {
		out << app.help("", CLI::AppFormatMode::All);
		return kOk;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n";
		return kInputError;
	}
	cfg.format = format == "csv"		   ? Format::Csv
				 : format == "json-report" ? Format::JsonReport
										   : Format::Text;
	return run(cfg, out, err);
}

} // namespace bnd::cli
