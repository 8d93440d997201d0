#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bnd/cli.hpp"
#include "bnd/io.hpp"
#include "support/fixtures.hpp"

using namespace bnd;
using bnd::testing::data_path;

namespace {

const std::vector<std::string> kFixtures = {"supercharger.json", "fig5_system.json",
											"fig8_s2.json",		 "fig13_series.json",
											"network9.json",	 "single_node.json"};

struct Run
{
	int code;
	std::string out, err;
};

Run invoke(const std::vector<std::string>& args)
{
	std::ostringstream out, err;
	const int code = bnd::cli::run_cli(args, out, err);
	return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
	const auto path = std::filesystem::temp_directory_path() / ("bnd_test_" + name);
	std::ofstream(path, std::ios::binary) << content;
	return path.string();
}

std::string expect_input_error(std::string_view text)
{
	try {
		parse_document(text);
	} catch (const InputError& e) {
		return e.what();
	}
	ADD_FAILURE() << "no InputError";
	return "";
}

} // namespace

TEST(Io, FixturesRoundTrip)
{
	for (const auto& name : kFixtures) {
		const auto doc = load_document(data_path(name));
		const auto text = serialize(doc);
		EXPECT_EQ(parse_document(text), doc) << name;
		EXPECT_EQ(serialize(parse_document(text)), text) << name;
	}
}

TEST(Io, SuperchargerShape)
{
	const auto t = std::get<EstimateTable>(load_document(data_path("supercharger.json")));
	EXPECT_EQ(t.components.size(), 35u);
	EXPECT_EQ(t.criteria.size(), 6u);
	EXPECT_EQ(t.components[29].id, "7.11");
	EXPECT_DOUBLE_EQ(t.values[29][0], 70.0);
	EXPECT_EQ(t.components[31].parent_id, "8");
}

TEST(Io, EmptyComponentList)
{
	const auto doc = parse_document(R"({"kind":"estimate-table","components":[],
		"criteria":[{"id":"C1","weight":1}],"values":[]})");
	EXPECT_TRUE(std::get<EstimateTable>(doc).components.empty());
}

TEST(Io, MalformedJsonReportsLineAndColumn)
{
	const auto msg = expect_input_error("{\n  \"kind\": \"graph\",\n  \"nodes\": [,]\n}");
	EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
	EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Io, SchemaErrorsCarryPointer)
{
	auto msg = expect_input_error(R"({"kind":"graph","nodes":["a"],"edges":[{"u":"a","v":7}]})");
	EXPECT_NE(msg.find("/edges/0/v"), std::string::npos) << msg;
	msg = expect_input_error(R"({"kind":"morph-system","quality_levels":3,"slots":[],"compat":[]})");
	EXPECT_NE(msg.find("compat_max"), std::string::npos) << msg;
	msg = expect_input_error(R"({"kind":"nope"})");
	EXPECT_NE(msg.find("/kind"), std::string::npos) << msg;
}

TEST(Io, InvariantViolationCarriesReport)
{
	auto text = read_file(data_path("fig5_system.json"));
	const auto j = nlohmann::json::parse(text);
	auto k = j;
	auto& compat = k["compat"];
	compat.erase(compat.begin()); // X1/Y1
	const auto msg = expect_input_error(k.dump());
	EXPECT_NE(msg.find("pair (X1,Y1)"), std::string::npos) << msg;
	EXPECT_NO_THROW(parse_document_unchecked(k.dump()));
}

TEST(Io, OutrankParams)
{
	const auto p = parse_outrank_params(R"({"kind":"outrank-params","p":0.7,"q":0.4,
		"discordance_range":{"C2":10}})");
	EXPECT_DOUBLE_EQ(p.concordance_threshold, 0.7);
	EXPECT_DOUBLE_EQ(p.discordance_range.at("C2"), 10.0);
	EXPECT_EQ(parse_outrank_params(to_json(p).dump()), p);
	EXPECT_THROW(parse_outrank_params(R"({"kind":"outrank-params","p":2,"q":0.4})"), InputError);
}

TEST(Cli, ScreenChartAndCsv)
{
	const auto csv_path = (std::filesystem::temp_directory_path() / "bnd_test_chart.csv").string();
	auto r = invoke({"screen", "chart", data_path("supercharger.json"), "--criterion", "C1", "--threshold",
				  "6.8", "--chart", csv_path});
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_NE(r.out.find("selected (2): 7.11, 4"), std::string::npos) << r.out;
	const auto csv = read_file(csv_path);
	EXPECT_EQ(csv.substr(0, csv.find('\n')), "component,value,selected");
	EXPECT_EQ(csv.substr(csv.find('\n') + 1, 12), "7.11,70,1\n4,");

	r = invoke({"--format", "csv", "screen", "chart", data_path("supercharger.json"), "--criterion", "C1",
			 "--threshold", "6.8"});
	EXPECT_EQ(r.out, csv);
}

TEST(Cli, MorphSolveListsSolutionsWithQuality)
{
	const auto r = invoke({"morph", "solve", data_path("fig5_system.json")});
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_NE(r.out.find("16 combinations"), std::string::npos);
	EXPECT_NE(r.out.find("N = ("), std::string::npos);
}

TEST(Cli, JsonReportParses)
{
	const auto r = invoke({"morph", "bottlenecks", data_path("fig8_s2.json"), "--size", "3", "--format",
						"json-report"});
	ASSERT_EQ(r.code, 0) << r.err;
	const auto j = nlohmann::json::parse(r.out);
	EXPECT_EQ(j["command"], "morph bottlenecks");
	EXPECT_EQ(j["result"]["bottlenecks"], (nlohmann::json{"XZH", "YZH"}));
}

TEST(Cli, ExitCodes)
{
	auto r = invoke({"net", "mlst", data_path("single_node.json")});
	EXPECT_EQ(r.code, 1);
	EXPECT_NE(r.err.find("at least 2 nodes"), std::string::npos) << r.err;

	EXPECT_EQ(invoke({"net", "mlst", "/nonexistent/file.json"}).code, 1);
	EXPECT_EQ(invoke({"screen", "chart", data_path("fig5_system.json"), "--criterion", "C1", "--threshold", "1"}).code, 1);
	EXPECT_EQ(invoke({"screen", "chart", data_path("supercharger.json"), "--criterion", "C1"}).code, 1);
	EXPECT_EQ(invoke({"bogus"}).code, 1);
	EXPECT_EQ(invoke({"net", "cds", data_path("network9.json"), "--method", "fast"}).code, 1);
	EXPECT_EQ(invoke({"screen", "rank", data_path("supercharger.json"), "--p", "1.5"}).code, 1);

	const auto bad = temp_file("bad.json", "{\"kind\": \"graph\",\n \"nodes\": [\"a\" \"b\"]}");
	r = invoke({"net", "cds", bad});
	EXPECT_EQ(r.code, 1);
	EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;

	EXPECT_EQ(invoke({"--budget", "10", "morph", "solve", data_path("fig5_system.json")}).code, 2);
	EXPECT_EQ(invoke({"net", "htnd", data_path("network9.json"), "--method", "exact"}).code, 2);
	EXPECT_EQ(invoke({"--exact-limit", "9", "net", "htnd", data_path("network9.json"), "--method", "exact"}).code, 0);
	EXPECT_EQ(invoke({"--exact-limit", "3", "net", "mlst", data_path("network9.json"), "--method", "both"}).code, 2);
	EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, PredictRun)
{
	const auto r = invoke({"predict", "run", data_path("fig13_series.json"), "--detector", "morph-bottlenecks",
						"--forecaster", "user"});
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_NE(r.out.find("t = 2 (forecast)"), std::string::npos);
	EXPECT_EQ(invoke({"predict", "run", data_path("fig13_series.json"), "--detector", "screen-chart",
				   "--criterion", "C1"})
				  .code,
			  1);
}

TEST(Cli, DeterministicAcrossRuns)
{
	const std::vector<std::vector<std::string>> commands = {
		{"screen", "chart", data_path("supercharger.json"), "--criterion", "C3", "--threshold", "5"},
		{"screen", "pareto", data_path("supercharger.json")},
		{"screen", "rank", data_path("supercharger.json"), "--params", data_path("electre_calibration.json")},
		{"morph", "solve", data_path("fig5_system.json")},
		{"morph", "actions", data_path("fig5_system.json"), "--picks", "X1,Y2,Z2,H1"},
		{"morph", "bottlenecks", data_path("fig5_system.json"), "--picks", "X2,Y2,Z2,H2"},
		{"net", "mlst", data_path("network9.json"), "--method", "both"},
		{"net", "cds", data_path("network9.json"), "--method", "both"},
		{"net", "htnd", data_path("network9.json")},
		{"predict", "run", data_path("fig13_series.json"), "--detector", "morph-bottlenecks", "--forecaster",
		 "linear-trend"},
	};
	for (const auto& c : commands)
		for (const char* format : {"text", "csv", "json-report"}) {
			auto args = c;
			args.insert(args.begin(), {"--format", format});
			const auto a = invoke(args), b = invoke(args);
			ASSERT_EQ(a.code, 0) << args[3] << " " << a.err;
			EXPECT_EQ(a.out, b.out);
		}
}
