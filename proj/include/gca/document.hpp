#pragma once

// Input documents: one JSON object per file, kind "fusion" or
// "character_table". Field names: kind, name, sectors, iota, matrix,
// class_sizes, characters, irrep_names, rep. Character entries are
// numbers or [re, im] pairs. Unknown fields are rejected with the field
// path; malformed values name the offending row/entry.

#include "gca/fusion.hpp"
#include "gca/groups.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gca {

struct DocumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DocumentKind { Fusion, CharacterTable };

const char* to_string(DocumentKind k);

struct InputDocument {
  DocumentKind kind = DocumentKind::Fusion;
  std::string name;
  FusionData fusion;     // kind == Fusion
  CharacterTable table;  // kind == CharacterTable
  std::string rep;       // chosen irrep label, kind == CharacterTable

  bool operator==(const InputDocument& other) const;
};

/// Parses and schema-checks one document. Throws DocumentError with
/// line/column on syntax errors and with a field path on schema errors.
InputDocument parse_document(const std::string& text);

nlohmann::json emit_document(const InputDocument& doc);

struct CatalogEntry {
  std::string name;
  std::string description;
};

/// Built-in examples: inner-d (d a positive integer, e.g. inner-2),
/// a4-iota, lee-yang-rho, s3-std, z2-sign.
std::vector<CatalogEntry> catalog_names();

InputDocument catalog_get(const std::string& name);

}  // namespace gca
