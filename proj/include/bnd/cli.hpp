#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bnd::cli {

enum ExitCode : int
{
	kOk = 0,
	kInputError = 1,
	kInfeasible = 2,
};

enum class Format
{
	Text,
	Csv,
	JsonReport
};

/// Everything a single invocation needs, validated before dispatch.
struct RunConfig
{
	std::string command; // e.g. "screen chart"
	std::string input;
	Format format = Format::Text;
	std::optional<std::size_t> exact_limit;
	std::uint64_t budget = 1'000'000;
	std::uint64_t seed = 0; // reserved; every algorithm is deterministic

	// screening
	std::string criterion;
	double threshold = 0.0;
	std::vector<std::string> criteria;
	std::string params_file;
	std::optional<double> p, q;
	std::string target_layers_file;
	std::string write_params_file;
	std::string chart_file;

	// morph
	std::vector<std::string> picks;
	std::optional<std::size_t> subsystem_size;

	// net
	std::string method = "heuristic"; // heuristic | exact | both

	// predict
	std::string forecaster = "hold-last";
	int horizon = 1;
	std::string detector;

	std::string report_file;
};

/// Runs one command; returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bnd::cli
