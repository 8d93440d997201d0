#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "bnd/model.hpp"
#include "bnd/predict.hpp"
#include "bnd/screening.hpp"

namespace bnd {

/// Any input file. The top-level "kind" field selects the alternative:
/// estimate-table, morph-system, graph, snapshot-series.
using Document = std::variant<EstimateTable, MorphSystem, Graph, SnapshotSeries>;

/// Parses and validates. Malformed JSON is reported with line and column;
/// schema errors with the JSON pointer of the offending field; invariant
/// violations with the full validation report.
Document parse_document(std::string_view text);
Document load_document(const std::filesystem::path& path);

/// Parse without running the invariant checks (schema errors still throw).
Document parse_document_unchecked(std::string_view text);

nlohmann::ordered_json to_json(const Document& doc);
std::string serialize(const Document& doc);

const char* document_kind(const Document& doc);

/// Outranking parameters file ("kind": "outrank-params").
OutrankParams parse_outrank_params(std::string_view text);
OutrankParams load_outrank_params(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const OutrankParams& params);

std::string read_file(const std::filesystem::path& path);

} // namespace bnd
