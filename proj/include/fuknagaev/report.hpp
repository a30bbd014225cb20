#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fuknagaev/bounds.hpp"
#include "fuknagaev/legendre.hpp"
#include "fuknagaev/quantile.hpp"
#include "fuknagaev/verify.hpp"

namespace fuknagaev::report {

enum class Format { csv, json };

/// Accepts "csv" or "json"; throws invalid-argument otherwise.
Format parse_format(std::string_view name);

/// 17 significant digits, the round-trip format of machine outputs.
std::string format_machine(double value);
/// 6 significant digits for human summaries.
std::string format_human(double value);

inline constexpr std::string_view kVerificationCsvHeader = "level,bound,exceed,trials,rate,cp_upper,verdict";

std::string to_csv(const VerificationReport& report);
std::string to_json(const VerificationReport& report);

std::string to_csv(const std::vector<TightnessRow>& rows);
std::string to_json(const std::vector<TightnessRow>& rows);

std::string to_csv(const ProofChainReport& report);
std::string to_json(const ProofChainReport& report);

std::string to_csv(const BoundResult& result);
std::string to_json(const BoundResult& result);

struct QuantileRow {
  double level = 0.0;
  QuantileTriple triple;
};
std::string to_csv(const std::vector<QuantileRow>& rows);
std::string to_json(const std::vector<QuantileRow>& rows);

/// Writes the text verbatim; throws io-error when the path is not writable.
void write_file(const std::filesystem::path& path, std::string_view text);

struct SchemaResult {
  bool valid = true;
  std::vector<std::string> errors;
};

/// Validates a JSON document against a schema using the keywords type,
/// properties, required, additionalProperties (boolean), items, enum,
/// minimum and maximum.
SchemaResult validate_schema(std::string_view document, std::string_view schema);

}  // namespace fuknagaev::report
