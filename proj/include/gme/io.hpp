// io.hpp
// External formats: state-descriptor JSON ingestion and JSON/CSV/text
// emission of reports, tensor dumps, and scan results. Party labels in
// all external formats are 1-based.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gme/criteria.hpp"
#include "gme/scan.hpp"

namespace gme {

enum class OutputFormat { Json, Csv, Text };

OutputFormat parse_format(const std::string& name);

// Named families understood by descriptors and the CLI: "ghz" (n, d),
// "w" (n), "paper_332".
KetExpression resolve_family(const std::string& name, int n, int d);

// Descriptor: {"dims":[...], "named":{"name":...,"n":...,"d":...},
// "noise_x":x} or {"dims":[...], "matrix_re":[[...]], "matrix_im":[[...]]}.
// Matrices are row-major; dimensions must multiply to the matrix size.
DensityMatrix parse_state_descriptor(const nlohmann::json& j);
DensityMatrix load_state_descriptor(const std::string& path);

nlohmann::json report_to_json(const CriterionReport& rep);
void write_report(std::ostream& os, const CriterionReport& rep, OutputFormat format);

// Correlation-tensor dump: one record per coefficient with modulus
// above `cutoff`, as {"subset":[...], "indices":"ij,kl", "re":..,
// "im":..}.
nlohmann::json tensor_records(const BlochTensor& t, double cutoff);
void write_tensor(std::ostream& os, const BlochTensor& t, double cutoff, OutputFormat format);

nlohmann::json scan_result_to_json(const ScanResult& res);
void write_scan_results(std::ostream& os, const std::vector<ScanResult>& results,
                        OutputFormat format);

// Curve rows: x, T, K, F = T - K, detected; optionally the fixed
// four-qubit GHZ reference lines g1, g2.
void write_curve(std::ostream& os, const std::vector<CurvePoint>& curve, OutputFormat format,
                 bool with_reference_lines = false);

}  // namespace gme
