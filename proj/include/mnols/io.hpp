#pragma once

// Versioned JSON documents for columns, squares, difference profiles,
// verification reports and search outcomes, plus CSV export of squares.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mnols/core.hpp"
#include "mnols/search.hpp"
#include "mnols/verification.hpp"

namespace mnols::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

enum class DocumentKind { Columns, Square, Profile, Report, Search };

[[nodiscard]] std::string to_string(DocumentKind kind);
[[nodiscard]] std::optional<DocumentKind> parse_document_kind(std::string_view text);

struct ArtifactDocument {
  std::string schema_version{kSchemaVersion};
  DocumentKind kind = DocumentKind::Columns;
  std::optional<std::uint32_t> n;
  std::optional<FamilyTag> family;
  std::optional<std::uint64_t> k;
  Json payload;

  bool operator==(const ArtifactDocument&) const = default;
};

/// Single-line JSON with schema_version first. Throws ParseError on
/// malformed input or an unknown schema version.
[[nodiscard]] std::string serialize(const ArtifactDocument& doc);
[[nodiscard]] ArtifactDocument parse_document(std::string_view text);

[[nodiscard]] ArtifactDocument columns_document(std::span<const ColumnVector> columns,
                                                std::optional<FamilyId> family = std::nullopt);
[[nodiscard]] std::vector<ColumnVector> columns_from_document(const ArtifactDocument& doc);

/// Writes exactly serialize(columns_document(columns, family)) followed by a
/// newline, without building the intermediate JSON tree.
void write_columns_document(std::ostream& out, std::span<const ColumnVector> columns,
                            std::optional<FamilyId> family = std::nullopt);

[[nodiscard]] ArtifactDocument square_document(const LatinSquare& square,
                                               std::optional<FamilyId> family = std::nullopt);
[[nodiscard]] LatinSquare square_from_document(const ArtifactDocument& doc);

/// A difference profile together with the row-wise differences that
/// produced it; pair names the 1-based columns (minuend, subtrahend).
struct ProfileRecord {
  std::array<std::uint32_t, 2> pair{};
  std::vector<Symbol> differences;
  DifferenceProfile profile;
  bool quasi_difference = false;

  bool operator==(const ProfileRecord&) const = default;
};

[[nodiscard]] ProfileRecord make_profile_record(std::uint32_t minuend_index,
                                                const ColumnVector& minuend,
                                                std::uint32_t subtrahend_index,
                                                const ColumnVector& subtrahend);
[[nodiscard]] ArtifactDocument profile_document(const ProfileRecord& record,
                                                std::optional<FamilyId> family = std::nullopt);
[[nodiscard]] ProfileRecord profile_from_document(const ArtifactDocument& doc);

[[nodiscard]] ArtifactDocument report_document(const VerificationReport& report);
[[nodiscard]] VerificationReport report_from_document(const ArtifactDocument& doc);

struct SearchRecord {
  std::uint32_t n = 0;
  std::uint32_t t = 0;
  bool reflection = false;
  SearchOutcome outcome;
};

[[nodiscard]] ArtifactDocument search_document(const SearchRecord& record);
[[nodiscard]] SearchRecord search_from_document(const ArtifactDocument& doc);

/// One row per line, comma separated.
void write_square_csv(std::ostream& out, const LatinSquare& square);
[[nodiscard]] LatinSquare read_square_csv(std::istream& in);

}  // namespace mnols::io
