#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "soccover/covering.hpp"
#include "soccover/lifts.hpp"
#include "soccover/slack.hpp"
#include "soccover/support.hpp"

namespace soccover {

using Json = nlohmann::ordered_json;

// Matrix documents carry the generating curve next to the entries; exact
// matrices serialize entries as integer/fraction strings, floating ones as
// plain numbers.
struct MatrixDocument {
  GeneratorCurve curve;
  std::variant<LabeledMatrix<Rat>, LabeledMatrix<double>> matrix;

  bool exact() const { return std::holds_alternative<LabeledMatrix<Rat>>(matrix); }
  int n() const;
};

Json matrix_to_json(const MatrixDocument& doc);
MatrixDocument matrix_from_json(const Json& j);

// CSV export: header "row,1,..,n", one line per pair row labeled "i1-i2".
std::string matrix_to_csv(const MatrixDocument& doc);

Json pattern_to_json(const SupportPattern& p);
SupportPattern pattern_from_json(const Json& j);

// FNV-1a 64-bit digest of the canonical pattern string, "fnv1a:" + 16 hex.
std::string pattern_digest(const SupportPattern& p);

Json certificate_to_json(const CoverCertificate& cert);
CoverCertificate certificate_from_json(const Json& j);

Json lift_to_json(const SocLiftDescription& lift);
SocLiftDescription lift_from_json(const Json& j);

// Support document: pattern plus the canonical zero structure and its
// components, as written by the `support` subcommand.
Json support_doc_to_json(const SupportPattern& p);

// Serializes with a fixed layout (2-space indent, trailing newline) so that
// identical inputs produce byte-identical files.
std::string dump_document(const Json& j);

void save_document(const std::string& path, const Json& j);
Json load_document(const std::string& path);

// Shortest round-trip decimal form of a double.
std::string double_to_string(double v);

std::string fnv1a_hex(const std::string& data);

}  // namespace soccover
