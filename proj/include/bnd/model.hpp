#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bnd {

/// Malformed input or a violated precondition. The CLI maps this to exit 1.
class InputError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

/// The instance is valid but cannot be solved within the configured limits
/// (enumeration budget, exact-solver node limit) or has no feasible answer.
/// The CLI maps this to exit 2.
class InfeasibleError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

struct Violation
{
	std::string where;
	std::string message;

	bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

// ---------------------------------------------------------------------------
// Estimate tables
// ---------------------------------------------------------------------------

struct ComponentRecord
{
	std::string id;
	std::string label;
	std::optional<std::string> parent_id;

	bool operator==(const ComponentRecord&) const = default;
};

struct CriterionSpec
{
	std::string id;
	double weight = 1.0;
	std::optional<double> scale_min;
	std::optional<double> scale_max;
	// Higher value means a stronger bottleneck candidate unless overridden.
	bool ascending = true;

	bool operator==(const CriterionSpec&) const = default;
};

/// Dense component x criterion matrix of criticality estimates.
struct EstimateTable
{
	std::vector<ComponentRecord> components;
	std::vector<CriterionSpec> criteria;
	std::vector<std::vector<double>> values; // values[component][criterion]

	std::optional<std::size_t> component_index(std::string_view id) const;
	std::optional<std::size_t> criterion_index(std::string_view id) const;

	bool operator==(const EstimateTable&) const = default;
};

// ---------------------------------------------------------------------------
// Morphological systems
// ---------------------------------------------------------------------------

struct DesignAlternative
{
	std::string id;
	std::string slot_id;
	int priority = 1; // 1 = best

	bool operator==(const DesignAlternative&) const = default;
};

struct CompatEntry
{
	std::string a;
	std::string b;
	int w = 0;

	bool operator==(const CompatEntry&) const = default;
};

struct MorphSystem
{
	std::vector<std::string> slots;
	std::vector<DesignAlternative> alternatives;
	std::vector<CompatEntry> compat;
	int quality_levels = 3; // k
	int compat_max = 3;		// nu

	const DesignAlternative* find_alternative(std::string_view id) const;
	std::optional<std::size_t> slot_index(std::string_view id) const;
	/// Alternatives of one slot in declaration order.
	std::vector<const DesignAlternative*> alternatives_of(std::string_view slot) const;
	/// Symmetric lookup; nullopt when the pair is not declared.
	std::optional<int> compat_between(std::string_view a, std::string_view b) const;

	bool operator==(const MorphSystem&) const = default;
};

/// HMMD quality point N = (w; eta_1..eta_k).
struct QualityVector
{
	int w = 0;
	std::vector<int> eta;

	int total() const;
	bool operator==(const QualityVector&) const = default;
};

struct CompositeSolution
{
	std::vector<std::string> picks; // one DA id per slot, in slot order
	QualityVector quality;

	bool operator==(const CompositeSolution&) const = default;
};

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

struct EdgeCost
{
	double primary = 0.0;
	double secondary = 0.0;

	bool operator==(const EdgeCost&) const = default;
};

struct GraphEdge
{
	std::size_t u = 0;
	std::size_t v = 0;
	std::optional<EdgeCost> cost;

	bool operator==(const GraphEdge&) const = default;
};

/// Undirected simple graph. Node indices follow declaration order, which is
/// also the tie-break order used by every graph algorithm.
struct Graph
{
	std::vector<std::string> nodes;
	std::vector<GraphEdge> edges;

	std::size_t size() const { return nodes.size(); }
	std::optional<std::size_t> node_index(std::string_view id) const;
	std::vector<std::vector<std::size_t>> adjacency() const;

	bool operator==(const Graph&) const = default;
};

// ---------------------------------------------------------------------------
// Validation. Violations are data; nothing here throws.
// ---------------------------------------------------------------------------

ValidationReport validate_system(const MorphSystem& system);
ValidationReport validate_estimates(const EstimateTable& table);
ValidationReport validate_graph(const Graph& graph);

std::string format_report(const ValidationReport& report);

} // namespace bnd
