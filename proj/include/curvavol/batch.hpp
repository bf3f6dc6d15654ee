#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvavol/specfun.hpp"
#include "curvavol/tetvol.hpp"

namespace curvavol {

enum class InstanceKind {
  TetraAngles,
  TetraEdgesEuclidean,
  IdealTetra,
  Orthoscheme,
  Bolyai,
  Triangle,
  CyclicQuad,
  BicentricQuad,
  Trapezoid,
  SeidelFamily,
};

std::string_view to_string(InstanceKind kind) noexcept;

/// One entry of an instance file.  Planar kinds use H3 for the hyperbolic
/// plane and E3 for the Euclidean one.
struct InstanceSpec {
  std::string id;
  InstanceKind kind = InstanceKind::TetraAngles;
  Space space = Space::H3;
  std::map<std::string, double> params;
};

/// An instance that failed to parse keeps its diagnostic so the batch can
/// report it in place.
struct ParsedInstance {
  InstanceSpec spec;
  std::string error;  // empty when the entry parsed

  bool ok() const { return error.empty(); }
};

/// Parses a JSON array of instance objects.  Throws InvalidInput when the
/// text is not a JSON array; per-entry problems land in ParsedInstance::error.
std::vector<ParsedInstance> parse_instances(const std::string& json_text);

struct RunConfig {
  Tolerance tol = Tolerance::tight();
  std::size_t mc_samples = 1'000'000;
  std::uint64_t mc_seed = 1;
  std::vector<std::string> methods;  // empty: every applicable method except mc
  bool crosscheck = false;
  bool degrees = false;  // angle parameters are in degrees
  bool timing = false;   // fill elapsed_s (makes output nondeterministic)
  unsigned threads = 1;  // instances evaluated in parallel

  /// Throws InvalidInput on unknown methods or mc with fewer than 1000 samples.
  void validate() const;
};

/// Methods applicable to a kind in a space, in output order.
std::vector<std::string> methods_for(InstanceKind kind, Space space);

struct ReportRow {
  std::size_t index = 0;
  std::string id;
  std::string kind;
  std::string space;
  std::string method;
  std::string status;  // ok, error
  std::optional<double> value;
  std::optional<double> error_estimate;
  std::optional<double> gram_det;
  std::optional<double> crosscheck;
  std::string message;
  std::optional<double> elapsed_s;

  bool operator==(const ReportRow&) const = default;
};

struct Report {
  std::vector<ReportRow> rows;
  bool timing = false;  // whether elapsed_s is part of the output

  bool any_error() const;
  bool operator==(const Report&) const = default;
};

/// One row per (instance, method).  Instance failures become error rows and
/// never abort the batch.  Output order follows input order regardless of
/// cfg.threads.
Report run_batch(const std::vector<ParsedInstance>& instances, const RunConfig& cfg);

enum class Format { Json, Csv };

/// JSON: array of flat objects with keys in the fixed column order.  CSV: a
/// header line with the same columns.  Reals use 17 significant digits and
/// missing values are null (JSON) or empty (CSV).
std::string emit(const Report& report, Format format);

/// Inverse of emit.
Report parse_report(const std::string& text, Format format);

/// Column names in output order.
std::vector<std::string> report_columns(bool timing);

}  // namespace curvavol
