#include "mnols/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "mnols/errors.hpp"

namespace mnols::io {

namespace {

Json header(DocumentKind kind, std::optional<std::uint32_t> n, std::optional<FamilyId> family) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = to_string(kind);
  doc["n"] = n ? Json(*n) : Json(nullptr);
  doc["family"] = family ? Json(to_string(family->tag)) : Json(nullptr);
  doc["k"] = family ? Json(family->k) : Json(nullptr);
  return doc;
}

ArtifactDocument make_document(DocumentKind kind, std::uint32_t n, std::optional<FamilyId> family,
                               Json payload) {
  ArtifactDocument doc;
  doc.kind = kind;
  doc.n = n;
  if (family) {
    doc.family = family->tag;
    doc.k = family->k;
  }
  doc.payload = std::move(payload);
  return doc;
}

void expect_kind(const ArtifactDocument& doc, DocumentKind kind) {
  if (doc.kind != kind) {
    throw ParseError("expected a '" + to_string(kind) + "' document, got '" +
                     to_string(doc.kind) + "'");
  }
}

Order document_order(const ArtifactDocument& doc) {
  if (!doc.n) throw ParseError("document has no order n");
  return Order(*doc.n);
}

std::optional<FamilyId> document_family(const ArtifactDocument& doc) {
  if (!doc.family) return std::nullopt;
  return FamilyId{*doc.family, doc.k.value_or(0)};
}

// Runs a payload decoder, turning JSON access errors into ParseError.
template <typename Fn>
auto decode(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed payload: ") + e.what());
  }
}

Json optional_bool(const std::optional<bool>& value) {
  return value ? Json(*value) : Json(nullptr);
}

std::optional<bool> read_optional_bool(const Json& value) {
  if (value.is_null()) return std::nullopt;
  return value.get<bool>();
}

}  // namespace

std::string to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::Columns: return "columns";
    case DocumentKind::Square: return "square";
    case DocumentKind::Profile: return "profile";
    case DocumentKind::Report: return "report";
    case DocumentKind::Search: return "search";
  }
  return "?";
}

std::optional<DocumentKind> parse_document_kind(std::string_view text) {
  for (DocumentKind kind : {DocumentKind::Columns, DocumentKind::Square, DocumentKind::Profile,
                            DocumentKind::Report, DocumentKind::Search}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::string serialize(const ArtifactDocument& doc) {
  Json out;
  out["schema_version"] = doc.schema_version;
  out["kind"] = to_string(doc.kind);
  out["n"] = doc.n ? Json(*doc.n) : Json(nullptr);
  out["family"] = doc.family ? Json(to_string(*doc.family)) : Json(nullptr);
  out["k"] = doc.k ? Json(*doc.k) : Json(nullptr);
  out["payload"] = doc.payload;
  return out.dump();
}

ArtifactDocument parse_document(std::string_view text) {
  Json in;
  try {
    in = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return decode([&] {
    ArtifactDocument doc;
    if (!in.is_object()) throw ParseError("document is not a JSON object");
    doc.schema_version = in.at("schema_version").get<std::string>();
    if (doc.schema_version != kSchemaVersion) {
      throw ParseError("unsupported schema_version '" + doc.schema_version + "'");
    }
    const auto kind = parse_document_kind(in.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown document kind");
    doc.kind = *kind;
    if (const Json& n = in.at("n"); !n.is_null()) doc.n = n.get<std::uint32_t>();
    if (const Json& fam = in.at("family"); !fam.is_null()) {
      doc.family = parse_family_tag(fam.get<std::string>());
      if (!doc.family) throw ParseError("unknown family '" + fam.get<std::string>() + "'");
    }
    if (const Json& k = in.at("k"); !k.is_null()) doc.k = k.get<std::uint64_t>();
    doc.payload = in.at("payload");
    return doc;
  });
}

ArtifactDocument columns_document(std::span<const ColumnVector> columns,
                                  std::optional<FamilyId> family) {
  if (columns.empty()) throw InvalidArgument("no columns to serialize");
  Json payload = Json::array();
  for (const ColumnVector& col : columns) {
    payload.push_back(Json(std::vector<Symbol>(col.entries().begin(), col.entries().end())));
  }
  return make_document(DocumentKind::Columns, columns.front().order().n(), family,
                       std::move(payload));
}

std::vector<ColumnVector> columns_from_document(const ArtifactDocument& doc) {
  expect_kind(doc, DocumentKind::Columns);
  const Order order = document_order(doc);
  return decode([&] {
    std::vector<ColumnVector> columns;
    for (const Json& col : doc.payload) {
      columns.emplace_back(order, col.get<std::vector<Symbol>>());
    }
    return columns;
  });
}

void write_columns_document(std::ostream& out, std::span<const ColumnVector> columns,
                            std::optional<FamilyId> family) {
  if (columns.empty()) throw InvalidArgument("no columns to serialize");
  Json head = header(DocumentKind::Columns, columns.front().order().n(), family);
  std::string prefix = head.dump();
  prefix.pop_back();  // reopen the object to append the payload
  out << prefix << ",\"payload\":[";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c != 0) out << ',';
    out << '[';
    const auto entries = columns[c].entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i != 0) out << ',';
      out << entries[i];
    }
    out << ']';
  }
  out << "]}\n";
}

ArtifactDocument square_document(const LatinSquare& square, std::optional<FamilyId> family) {
  const std::uint32_t n = square.order().n();
  Json rows = Json::array();
  for (std::uint32_t r = 0; r < n; ++r) {
    const auto row = square.row(r);
    rows.push_back(Json(std::vector<Symbol>(row.begin(), row.end())));
  }
  return make_document(DocumentKind::Square, n, family, std::move(rows));
}

LatinSquare square_from_document(const ArtifactDocument& doc) {
  expect_kind(doc, DocumentKind::Square);
  const Order order = document_order(doc);
  return decode([&] {
    if (doc.payload.size() != order.n()) throw ParseError("square row count differs from n");
    std::vector<Symbol> cells;
    cells.reserve(static_cast<std::size_t>(order.n()) * order.n());
    for (const Json& row : doc.payload) {
      const auto values = row.get<std::vector<Symbol>>();
      if (values.size() != order.n()) throw ParseError("square row length differs from n");
      cells.insert(cells.end(), values.begin(), values.end());
    }
    return LatinSquare(order, std::move(cells));
  });
}

ProfileRecord make_profile_record(std::uint32_t minuend_index, const ColumnVector& minuend,
                                  std::uint32_t subtrahend_index,
                                  const ColumnVector& subtrahend) {
  DifferenceProfile profile = difference_profile(minuend, subtrahend);
  std::vector<Symbol> differences(minuend.size());
  for (std::size_t i = 0; i < differences.size(); ++i) {
    differences[i] = mod_reduce(static_cast<std::int64_t>(minuend[i]) - subtrahend[i],
                                minuend.order());
  }
  const bool qd = is_quasi_difference(profile);
  return {{minuend_index, subtrahend_index}, std::move(differences), std::move(profile), qd};
}

ArtifactDocument profile_document(const ProfileRecord& record, std::optional<FamilyId> family) {
  Json payload;
  payload["pair"] = record.pair;
  payload["differences"] = record.differences;
  payload["counts"] = std::vector<std::uint32_t>(record.profile.counts().begin(),
                                                 record.profile.counts().end());
  payload["quasi_difference"] = record.quasi_difference;
  return make_document(DocumentKind::Profile, record.profile.order().n(), family,
                       std::move(payload));
}

ProfileRecord profile_from_document(const ArtifactDocument& doc) {
  expect_kind(doc, DocumentKind::Profile);
  const Order order = document_order(doc);
  return decode([&] {
    const Json& p = doc.payload;
    return ProfileRecord{p.at("pair").get<std::array<std::uint32_t, 2>>(),
                         p.at("differences").get<std::vector<Symbol>>(),
                         DifferenceProfile(order, p.at("counts").get<std::vector<std::uint32_t>>()),
                         p.at("quasi_difference").get<bool>()};
  });
}

ArtifactDocument report_document(const VerificationReport& report) {
  Json payload;
  payload["mode"] = to_string(report.mode);
  payload["pass"] = report.pass();
  payload["columns_ok"] = report.columns_ok;
  payload["reflection_ok"] = report.reflection_ok;
  payload["latin_ok"] = optional_bool(report.latin_ok);
  Json pairs = Json::array();
  for (const PairCheck& p : report.pairwise) {
    Json entry;
    entry["pair"] = {p.first, p.second};
    entry["profile_ok"] = p.profile_ok;
    entry["full_ok"] = optional_bool(p.full_ok);
    pairs.push_back(std::move(entry));
  }
  payload["pairwise"] = std::move(pairs);
  payload["elapsed_ms"] = report.elapsed.count();
  payload["details"] = report.details;
  return make_document(DocumentKind::Report, report.n, report.family, std::move(payload));
}

VerificationReport report_from_document(const ArtifactDocument& doc) {
  expect_kind(doc, DocumentKind::Report);
  return decode([&] {
    const Json& p = doc.payload;
    VerificationReport report;
    report.family = document_family(doc);
    report.n = doc.n.value_or(0);
    const auto mode = parse_verification_mode(p.at("mode").get<std::string>());
    if (!mode) throw ParseError("unknown verification mode");
    report.mode = *mode;
    report.columns_ok = p.at("columns_ok").get<bool>();
    report.reflection_ok = p.at("reflection_ok").get<bool>();
    report.latin_ok = read_optional_bool(p.at("latin_ok"));
    for (const Json& entry : p.at("pairwise")) {
      PairCheck check;
      const auto pair = entry.at("pair").get<std::array<std::size_t, 2>>();
      check.first = pair[0];
      check.second = pair[1];
      check.profile_ok = entry.at("profile_ok").get<bool>();
      check.full_ok = read_optional_bool(entry.at("full_ok"));
      report.pairwise.push_back(check);
    }
    report.elapsed = std::chrono::duration<double, std::milli>(p.at("elapsed_ms").get<double>());
    report.details = p.at("details").get<std::vector<std::string>>();
    return report;
  });
}

ArtifactDocument search_document(const SearchRecord& record) {
  Json payload;
  payload["t"] = record.t;
  payload["reflection"] = record.reflection;
  Json solutions = Json::array();
  for (const auto& set : record.outcome.solutions) {
    Json cols = Json::array();
    for (const ColumnVector& col : set) {
      cols.push_back(Json(std::vector<Symbol>(col.entries().begin(), col.entries().end())));
    }
    solutions.push_back(std::move(cols));
  }
  payload["solutions"] = std::move(solutions);
  payload["nodes_expanded"] = record.outcome.nodes_expanded;
  payload["exhausted"] = record.outcome.exhausted;
  payload["stop_reason"] = to_string(record.outcome.stop_reason);
  return make_document(DocumentKind::Search, record.n, std::nullopt, std::move(payload));
}

SearchRecord search_from_document(const ArtifactDocument& doc) {
  expect_kind(doc, DocumentKind::Search);
  const Order order = document_order(doc);
  return decode([&] {
    const Json& p = doc.payload;
    SearchRecord record;
    record.n = order.n();
    record.t = p.at("t").get<std::uint32_t>();
    record.reflection = p.at("reflection").get<bool>();
    for (const Json& set : p.at("solutions")) {
      std::vector<ColumnVector> cols;
      for (const Json& col : set) cols.emplace_back(order, col.get<std::vector<Symbol>>());
      record.outcome.solutions.push_back(std::move(cols));
    }
    record.outcome.nodes_expanded = p.at("nodes_expanded").get<std::uint64_t>();
    record.outcome.exhausted = p.at("exhausted").get<bool>();
    const std::string reason = p.at("stop_reason").get<std::string>();
    bool known = false;
    for (StopReason r : {StopReason::Exhausted, StopReason::NodeCap, StopReason::SolutionCap,
                         StopReason::TimeCap}) {
      if (reason == to_string(r)) {
        record.outcome.stop_reason = r;
        known = true;
      }
    }
    if (!known) throw ParseError("unknown stop_reason '" + reason + "'");
    return record;
  });
}

void write_square_csv(std::ostream& out, const LatinSquare& square) {
  for (std::uint32_t r = 0; r < square.order().n(); ++r) {
    const auto row = square.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out << ',';
      out << row[c];
    }
    out << '\n';
  }
}

LatinSquare read_square_csv(std::istream& in) {
  std::vector<Symbol> cells;
  std::size_t rows = 0;
  std::size_t width = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) break;
    std::size_t fields = 0;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        const unsigned long value = std::stoul(field, &used);
        if (used != field.size()) throw ParseError("bad CSV field '" + field + "'");
        cells.push_back(static_cast<Symbol>(value));
      } catch (const std::logic_error&) {
        throw ParseError("bad CSV field '" + field + "'");
      }
      ++fields;
    }
    if (rows == 0) width = fields;
    if (fields != width) throw ParseError("ragged CSV row " + std::to_string(rows));
    ++rows;
  }
  if (rows == 0 || rows != width) throw ParseError("CSV square is not n x n");
  return LatinSquare(Order(rows), std::move(cells));
}

}  // namespace mnols::io
