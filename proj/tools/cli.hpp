#pragma once

// Command implementations behind the rm2 executable. Each command returns an
// OutputRecord; rendering to CSV or JSON is separate so both formats carry
// the same numbers.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rm2/config.hpp"
#include "rm2/types.hpp"

namespace rm2::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

enum class Provenance { Analytic, Oracle, Comparison, Label };

const char* to_string(Provenance p);

struct Column {
  std::string name;
  Provenance provenance = Provenance::Analytic;
  /// Numbers, integers, strings, booleans or null (missing entry).
  std::vector<Json> cells;
};

struct Table {
  std::string name;
  std::vector<Column> columns;

  std::size_t rows() const;
};

struct OutputRecord {
  std::string command;
  Json params = Json::object();
  /// Scalar results, each {"value": ..., "provenance": ...}.
  Json summary = Json::object();
  std::vector<Table> tables;
  std::vector<std::string> notes;
  /// Run-dependent data (timings). Not part of the comparable payload.
  Json metadata = Json::object();
};

enum class Format { Csv, Json };

Format parse_format(const std::string& text);

/// JSON document with schema_version, command, params and payload.
std::string render_json(const OutputRecord& record, bool with_metadata = true);
/// '#'-prefixed header lines (schema, params, summary, notes), then one
/// block per table: a header row and data rows, numbers at 17 significant digits.
std::string render_csv(const OutputRecord& record, bool with_metadata = true);
std::string render(const OutputRecord& record, Format format, bool with_metadata = true);

struct Options {
  double lambda = 5.4;
  double beta = 1.0;
  int n_cap = 20;
  std::optional<int> condition;
  std::vector<int> n;
  std::string seed_kind = "ground";
  std::string family = "phi";
  std::optional<double> energy;
  std::optional<Grid> grid;
  double alpha = 2.4;
  int big_n = 3;
  std::string suite;
  Tolerances tol = default_tolerances();
};

OutputRecord cmd_potential(const Options& o);
OutputRecord cmd_poles(const Options& o);
OutputRecord cmd_wavefunction(const Options& o);
OutputRecord cmd_smatrix(const Options& o);
OutputRecord cmd_susy(const Options& o);

struct VerifyResult {
  OutputRecord record;
  bool passed = false;
};

VerifyResult cmd_verify(const Options& o);

}  // namespace rm2::cli
