#include "bnd/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace bnd {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what)
{
	throw InputError(fmt::format("at {}: {}", path.empty() ? "/" : path, what));
}

const json& field(const json& obj, const char* key, const std::string& path)
{
	if (!obj.is_object())
		schema_error(path, "expected an object");
	auto it = obj.find(key);
	if (it == obj.end())
		schema_error(path, fmt::format("missing field '{}'", key));
	return *it;
}

const json* optional_field(const json& obj, const char* key)
{
	auto it = obj.find(key);
	return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string as_string(const json& j, const std::string& path)
{
	if (!j.is_string())
		schema_error(path, "expected a string");
	return j.get<std::string>();
}

double as_number(const json& j, const std::string& path)
{
	if (!j.is_number())
		schema_error(path, "expected a number");
	return j.get<double>();
}

int as_int(const json& j, const std::string& path)
{
	if (!j.is_number_integer())
		schema_error(path, "expected an integer");
	return j.get<int>();
}

const json& as_array(const json& j, const std::string& path)
{
	if (!j.is_array())
		schema_error(path, "expected an array");
	return j;
}

std::string sub(const std::string& path, std::string_view key)
{
	return fmt::format("{}/{}", path, key);
}

std::string sub(const std::string& path, std::size_t index)
{
	return fmt::format("{}/{}", path, index);
}

EstimateTable table_from_json(const json& j, const std::string& path)
{
	EstimateTable t;
	const auto& comps = as_array(field(j, "components", path), sub(path, "components"));
	for (std::size_t i = 0; i < comps.size(); ++i) {
		const auto p = sub(sub(path, "components"), i);
		ComponentRecord c;
		c.id = as_string(field(comps[i], "id", p), sub(p, "id"));
		if (const auto* l = optional_field(comps[i], "label"))
			c.label = as_string(*l, sub(p, "label"));
		if (const auto* par = optional_field(comps[i], "parent"))
			c.parent_id = as_string(*par, sub(p, "parent"));
		t.components.push_back(std::move(c));
	}
	const auto& crits = as_array(field(j, "criteria", path), sub(path, "criteria"));
	for (std::size_t i = 0; i < crits.size(); ++i) {
		const auto p = sub(sub(path, "criteria"), i);
		CriterionSpec k;
		k.id = as_string(field(crits[i], "id", p), sub(p, "id"));
		if (const auto* w = optional_field(crits[i], "weight"))
			k.weight = as_number(*w, sub(p, "weight"));
		if (const auto* lo = optional_field(crits[i], "scale_min"))
			k.scale_min = as_number(*lo, sub(p, "scale_min"));
		if (const auto* hi = optional_field(crits[i], "scale_max"))
			k.scale_max = as_number(*hi, sub(p, "scale_max"));
		if (const auto* d = optional_field(crits[i], "direction")) {
			const auto dir = as_string(*d, sub(p, "direction"));
			if (dir != "ascending" && dir != "descending")
				schema_error(sub(p, "direction"), "expected 'ascending' or 'descending'");
			k.ascending = dir == "ascending";
		}
		t.criteria.push_back(std::move(k));
	}
	const auto& rows = as_array(field(j, "values", path), sub(path, "values"));
	for (std::size_t i = 0; i < rows.size(); ++i) {
		const auto p = sub(sub(path, "values"), i);
		std::vector<double> row;
		const auto& cells = as_array(rows[i], p);
		for (std::size_t c = 0; c < cells.size(); ++c)
			row.push_back(as_number(cells[c], sub(p, c)));
		t.values.push_back(std::move(row));
	}
	return t;
}

MorphSystem morph_from_json(const json& j, const std::string& path)
{
	MorphSystem m;
	m.quality_levels = as_int(field(j, "quality_levels", path), sub(path, "quality_levels"));
	m.compat_max = as_int(field(j, "compat_max", path), sub(path, "compat_max"));
	const auto& slots = as_array(field(j, "slots", path), sub(path, "slots"));
	for (std::size_t i = 0; i < slots.size(); ++i) {
		const auto p = sub(sub(path, "slots"), i);
		const auto slot = as_string(field(slots[i], "id", p), sub(p, "id"));
		m.slots.push_back(slot);
		const auto& das = as_array(field(slots[i], "alternatives", p), sub(p, "alternatives"));
		for (std::size_t d = 0; d < das.size(); ++d) {
			const auto dp = sub(sub(p, "alternatives"), d);
			DesignAlternative da;
			da.id = as_string(field(das[d], "id", dp), sub(dp, "id"));
			da.slot_id = slot;
			da.priority = as_int(field(das[d], "priority", dp), sub(dp, "priority"));
			m.alternatives.push_back(std::move(da));
		}
	}
	const auto& compat = as_array(field(j, "compat", path), sub(path, "compat"));
	for (std::size_t i = 0; i < compat.size(); ++i) {
		const auto p = sub(sub(path, "compat"), i);
		CompatEntry e;
		e.a = as_string(field(compat[i], "a", p), sub(p, "a"));
		e.b = as_string(field(compat[i], "b", p), sub(p, "b"));
		e.w = as_int(field(compat[i], "w", p), sub(p, "w"));
		m.compat.push_back(std::move(e));
	}
	return m;
}

Graph graph_from_json(const json& j, const std::string& path)
{
	Graph g;
	const auto& nodes = as_array(field(j, "nodes", path), sub(path, "nodes"));
	for (std::size_t i = 0; i < nodes.size(); ++i)
		g.nodes.push_back(as_string(nodes[i], sub(sub(path, "nodes"), i)));
	const auto& edges = as_array(field(j, "edges", path), sub(path, "edges"));
	for (std::size_t i = 0; i < edges.size(); ++i) {
		const auto p = sub(sub(path, "edges"), i);
		GraphEdge e;
		auto endpoint = [&](const char* key) {
			const auto id = as_string(field(edges[i], key, p), sub(p, key));
			auto idx = g.node_index(id);
			if (!idx)
				schema_error(sub(p, key), fmt::format("unknown node '{}'", id));
			return *idx;
		};
		e.u = endpoint("u");
		e.v = endpoint("v");
		const auto* pc = optional_field(edges[i], "primary");
		const auto* sc = optional_field(edges[i], "secondary");
		if ((pc == nullptr) != (sc == nullptr))
			schema_error(p, "edge costs need both 'primary' and 'secondary'");
		if (pc)
			e.cost = EdgeCost{as_number(*pc, sub(p, "primary")), as_number(*sc, sub(p, "secondary"))};
		g.edges.push_back(std::move(e));
	}
	return g;
}

Snapshot snapshot_from_json(const json& j, const std::string& path);

SnapshotSeries series_from_json(const json& j, const std::string& path)
{
	SnapshotSeries s;
	const auto& ts = as_array(field(j, "timestamps", path), sub(path, "timestamps"));
	for (std::size_t i = 0; i < ts.size(); ++i)
		s.timestamps.push_back(as_int(ts[i], sub(sub(path, "timestamps"), i)));
	const auto& states = as_array(field(j, "states", path), sub(path, "states"));
	for (std::size_t i = 0; i < states.size(); ++i)
		s.states.push_back(snapshot_from_json(states[i], sub(sub(path, "states"), i)));
	if (const auto* f = optional_field(j, "forecast")) {
		const auto fp = sub(path, "forecast");
		const auto& fts = as_array(field(*f, "timestamps", fp), sub(fp, "timestamps"));
		for (std::size_t i = 0; i < fts.size(); ++i)
			s.forecast_timestamps.push_back(as_int(fts[i], sub(sub(fp, "timestamps"), i)));
		const auto& fst = as_array(field(*f, "states", fp), sub(fp, "states"));
		for (std::size_t i = 0; i < fst.size(); ++i)
			s.forecast_states.push_back(snapshot_from_json(fst[i], sub(sub(fp, "states"), i)));
	}
	return s;
}

Snapshot snapshot_from_json(const json& j, const std::string& path)
{
	const auto kind = as_string(field(j, "kind", path), sub(path, "kind"));
	if (kind == "morph-system")
		return morph_from_json(j, path);
	if (kind == "estimate-table")
		return table_from_json(j, path);
	schema_error(sub(path, "kind"), fmt::format("snapshot kind '{}' is not supported", kind));
}

ojson table_to_json(const EstimateTable& t)
{
	ojson j;
	j["kind"] = "estimate-table";
	j["components"] = ojson::array();
	for (const auto& c : t.components) {
		ojson o;
		o["id"] = c.id;
		o["label"] = c.label;
		if (c.parent_id)
			o["parent"] = *c.parent_id;
		j["components"].push_back(std::move(o));
	}
	j["criteria"] = ojson::array();
	for (const auto& k : t.criteria) {
		ojson o;
		o["id"] = k.id;
		o["weight"] = k.weight;
		if (k.scale_min)
			o["scale_min"] = *k.scale_min;
		if (k.scale_max)
			o["scale_max"] = *k.scale_max;
		o["direction"] = k.ascending ? "ascending" : "descending";
		j["criteria"].push_back(std::move(o));
	}
	j["values"] = ojson::array();
	for (const auto& row : t.values)
		j["values"].push_back(row);
	return j;
}

ojson morph_to_json(const MorphSystem& m)
{
	ojson j;
	j["kind"] = "morph-system";
	j["quality_levels"] = m.quality_levels;
	j["compat_max"] = m.compat_max;
	j["slots"] = ojson::array();
	for (const auto& s : m.slots) {
		ojson o;
		o["id"] = s;
		o["alternatives"] = ojson::array();
		for (const auto* da : m.alternatives_of(s))
			o["alternatives"].push_back({{"id", da->id}, {"priority", da->priority}});
		j["slots"].push_back(std::move(o));
	}
	j["compat"] = ojson::array();
	for (const auto& e : m.compat)
		j["compat"].push_back({{"a", e.a}, {"b", e.b}, {"w", e.w}});
	return j;
}

ojson graph_to_json(const Graph& g)
{
	ojson j;
	j["kind"] = "graph";
	j["nodes"] = g.nodes;
	j["edges"] = ojson::array();
	for (const auto& e : g.edges) {
		ojson o;
		o["u"] = g.nodes.at(e.u);
		o["v"] = g.nodes.at(e.v);
		if (e.cost) {
			o["primary"] = e.cost->primary;
			o["secondary"] = e.cost->secondary;
		}
		j["edges"].push_back(std::move(o));
	}
	return j;
}

ojson snapshot_to_json(const Snapshot& s)
{
	return std::visit(
		[](const auto& v) {
			if constexpr (std::is_same_v<std::decay_t<decltype(v)>, MorphSystem>)
				return morph_to_json(v);
			else
				return table_to_json(v);
		},
		s);
}

ojson series_to_json(const SnapshotSeries& s)
{
	ojson j;
	j["kind"] = "snapshot-series";
	j["timestamps"] = s.timestamps;
	j["states"] = ojson::array();
	for (const auto& st : s.states)
		j["states"].push_back(snapshot_to_json(st));
	if (!s.forecast_states.empty() || !s.forecast_timestamps.empty()) {
		ojson f;
		f["timestamps"] = s.forecast_timestamps;
		f["states"] = ojson::array();
		for (const auto& st : s.forecast_states)
			f["states"].push_back(snapshot_to_json(st));
		j["forecast"] = std::move(f);
	}
	return j;
}

json parse_json(std::string_view text)
{
	try {
		return json::parse(text);
	} catch (const json::parse_error& e) {
		// Translate the byte offset into line:column.
		std::size_t line = 1, col = 1;
		const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
		for (std::size_t i = 0; i < stop; ++i) {
			if (text[i] == '\n') {
				++line;
				col = 1;
			} else {
				++col;
			}
		}
		throw InputError(fmt::format("malformed JSON at line {}, column {}: {}", line, col, e.what()));
	}
}

void check(const Document& doc)
{
	ValidationReport report = std::visit(
		[](const auto& v) -> ValidationReport {
			using T = std::decay_t<decltype(v)>;
			if constexpr (std::is_same_v<T, EstimateTable>)
				return validate_estimates(v);
			else if constexpr (std::is_same_v<T, MorphSystem>)
				return validate_system(v);
			else if constexpr (std::is_same_v<T, Graph>)
				return validate_graph(v);
			else
				return validate_series(v);
		},
		doc);
	if (!report.empty())
		throw InputError(fmt::format("invalid {}:\n{}", document_kind(doc), format_report(report)));
}

} // namespace

const char* document_kind(const Document& doc)
{
	switch (doc.index()) {
	case 0:
		return "estimate-table";
	case 1:
		return "morph-system";
	case 2:
		return "graph";
	default:
		return "snapshot-series";
	}
}

Document parse_document_unchecked(std::string_view text)
{
	const json j = parse_json(text);
	const auto kind = as_string(field(j, "kind", ""), "/kind");
	if (kind == "estimate-table")
		return table_from_json(j, "");
	if (kind == "morph-system")
		return morph_from_json(j, "");
	if (kind == "graph")
		return graph_from_json(j, "");
	if (kind == "snapshot-series")
		return series_from_json(j, "");
	schema_error("/kind", fmt::format("unknown document kind '{}'", kind));
}

Document parse_document(std::string_view text)
{
	auto doc = parse_document_unchecked(text);
	check(doc);
	return doc;
}

std::string read_file(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw InputError(fmt::format("cannot open '{}'", path.string()));
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

Document load_document(const std::filesystem::path& path)
{
	try {
		return parse_document(read_file(path));
	} catch (const InputError& e) {
		throw InputError(fmt::format("{}: {}", path.string(), e.what()));
	}
}

ojson to_json(const Document& doc)
{
	return std::visit(
		[](const auto& v) -> ojson {
			using T = std::decay_t<decltype(v)>;
			if constexpr (std::is_same_v<T, EstimateTable>)
				return table_to_json(v);
			else if constexpr (std::is_same_v<T, MorphSystem>)
				return morph_to_json(v);
			else if constexpr (std::is_same_v<T, Graph>)
				return graph_to_json(v);
			else
				return series_to_json(v);
		},
		doc);
}

std::string serialize(const Document& doc)
{
	return to_json(doc).dump(2) + "\n";
}

OutrankParams parse_outrank_params(std::string_view text)
{
	const json j = parse_json(text);
	const auto kind = as_string(field(j, "kind", ""), "/kind");
	if (kind != "outrank-params")
		schema_error("/kind", fmt::format("expected 'outrank-params', got '{}'", kind));
	OutrankParams p;
	p.concordance_threshold = as_number(field(j, "p", ""), "/p");
	p.discordance_threshold = as_number(field(j, "q", ""), "/q");
	if (const auto* r = optional_field(j, "discordance_range")) {
		if (!r->is_object())
			schema_error("/discordance_range", "expected an object");
		for (auto it = r->begin(); it != r->end(); ++it)
			p.discordance_range[it.key()] = as_number(it.value(), "/discordance_range/" + it.key());
	}
	if (p.concordance_threshold < 0.0 || p.concordance_threshold > 1.0 ||
		p.discordance_threshold < 0.0 || p.discordance_threshold > 1.0)
		throw InputError("outranking thresholds p and q must lie in [0,1]");
	return p;
}

OutrankParams load_outrank_params(const std::filesystem::path& path)
{
	try {
		return parse_outrank_params(read_file(path));
	} catch (const InputError& e) {
		throw InputError(fmt::format("{}: {}", path.string(), e.what()));
	}
}

ojson to_json(const OutrankParams& params)
{
	ojson j;
	j["kind"] = "outrank-params";
	j["p"] = params.concordance_threshold;
	j["q"] = params.discordance_threshold;
	if (!params.discordance_range.empty()) {
		ojson r = ojson::object();
		for (const auto& [k, v] : params.discordance_range)
			r[k] = v;
		j["discordance_range"] = std::move(r);
	}
	return j;
}

} // namespace bnd
