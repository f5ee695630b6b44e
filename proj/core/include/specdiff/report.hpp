#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specdiff/experiments.hpp"

namespace specdiff {

inline constexpr std::string_view kSchemaVersion = "specdiff/1";

/// %.17g; non-finite values as inf, -inf, nan.
[[nodiscard]] std::string format_double(double v);

/// 16 lowercase hex digits.
[[nodiscard]] std::string hash_hex(std::uint64_t h);

/// CSV with a "# schema=specdiff/1,kind=<kind>" first line, then a header row.
/// Lines starting with '#' after the first are comments.
struct CsvTable {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;
};

[[nodiscard]] std::string write_csv(const CsvTable& table);

/// Throws ValidationError on a missing or different schema stamp or ragged rows.
[[nodiscard]] CsvTable parse_csv(std::string_view text);

/// Re-emits a JSON document with every floating-point number at 17 significant
/// digits (non-finite as null), indented by two spaces.
[[nodiscard]] std::string format_json(std::string_view json_text);

[[nodiscard]] std::string dataset_csv(const Dataset& ds);
[[nodiscard]] std::string dataset_json(const Dataset& ds);

/// Columns config,n,x,err.
[[nodiscard]] std::string curves_csv(std::span<const ErrorCurve> curves);

[[nodiscard]] std::string verification_json(const VerificationReport& report, const SingularFunction& f,
                                            const Method& method, int m);

/// Writes to path through a temporary file and rename.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace specdiff
