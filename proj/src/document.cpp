#include "gca/document.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gca {

using nlohmann::json;

const char* to_string(DocumentKind k) {
  return k == DocumentKind::Fusion ? "fusion" : "character_table";
}

namespace {

bool matrix_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (*(a.data() + i) != *(b.data() + i)) return false;
  return true;
}

bool table_equal(const CharacterTable& a, const CharacterTable& b) {
  if (a.group_name != b.group_name || a.class_sizes != b.class_sizes ||
      a.irrep_names != b.irrep_names || a.characters.rows() != b.characters.rows() ||
      a.characters.cols() != b.characters.cols())
    return false;
  for (Index i = 0; i < a.characters.size(); ++i)
    if (*(a.characters.data() + i) != *(b.characters.data() + i)) return false;
  return true;
}

[[noreturn]] void fail(const std::string& message) { throw DocumentError(message); }

void reject_unknown_fields(const json& object, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items())
    if (!allowed.count(key)) fail("unknown field \"" + key + "\"");
}

const json& field(const json& object, const std::string& name) {
  const auto it = object.find(name);
  if (it == object.end()) fail("missing field \"" + name + "\"");
  return *it;
}

std::string as_string(const json& value, const std::string& where) {
  if (!value.is_string()) fail(where + " must be a string");
  return value.get<std::string>();
}

std::int64_t as_integer(const json& value, const std::string& where) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  fail(where + " must be an integer");
}

Complex as_complex(const json& value, const std::string& where) {
  if (value.is_number()) return Complex(value.get<double>(), 0.0);
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number())
    return Complex(value[0].get<double>(), value[1].get<double>());
  fail(where + " must be a number or an [re, im] pair");
}

FusionData parse_fusion_body(const json& object) {
  FusionData data;
  const json& sectors = field(object, "sectors");
  if (!sectors.is_array() || sectors.empty()) fail("\"sectors\" must be a non-empty array");
  for (std::size_t i = 0; i < sectors.size(); ++i)
    data.sectors.push_back(as_string(sectors[i], "sectors[" + std::to_string(i) + "]"));

  const std::string iota_label = as_string(field(object, "iota"), "\"iota\"");
  const auto it = std::find(data.sectors.begin(), data.sectors.end(), iota_label);
  if (it == data.sectors.end()) fail("iota label \"" + iota_label + "\" is not a sector");
  data.iota = static_cast<Index>(it - data.sectors.begin());

  const json& matrix = field(object, "matrix");
  const auto s = static_cast<Index>(data.sectors.size());
  if (!matrix.is_array() || static_cast<Index>(matrix.size()) != s)
    fail("\"matrix\" must have exactly " + std::to_string(s) + " rows");
  data.matrix.resize(s, s);
  for (Index i = 0; i < s; ++i) {
    const json& row = matrix[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != s)
      fail("matrix row " + std::to_string(i) + " must have exactly " + std::to_string(s) +
           " entries");
    for (Index j = 0; j < s; ++j)
      data.matrix(i, j) = as_integer(row[static_cast<std::size_t>(j)],
                                     "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  return data;
}

void parse_character_body(const json& object, InputDocument& doc) {
  CharacterTable& table = doc.table;
  table.group_name = doc.name;

  const json& sizes = field(object, "class_sizes");
  if (!sizes.is_array() || sizes.empty()) fail("\"class_sizes\" must be a non-empty array");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    table.class_sizes.push_back(as_integer(sizes[i], "class_sizes[" + std::to_string(i) + "]"));

  const json& names = field(object, "irrep_names");
  if (!names.is_array() || names.empty()) fail("\"irrep_names\" must be a non-empty array");
  for (std::size_t i = 0; i < names.size(); ++i)
    table.irrep_names.push_back(as_string(names[i], "irrep_names[" + std::to_string(i) + "]"));

  const json& rows = field(object, "characters");
  if (!rows.is_array() || rows.size() != table.irrep_names.size())
    fail("\"characters\" must have one row per irrep");
  table.characters.resize(static_cast<Index>(rows.size()),
                          static_cast<Index>(table.class_sizes.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != table.class_sizes.size())
      fail("characters row " + std::to_string(i) + " must have exactly " +
           std::to_string(table.class_sizes.size()) + " entries");
    for (std::size_t j = 0; j < row.size(); ++j)
      table.characters(static_cast<Index>(i), static_cast<Index>(j)) =
          as_complex(row[j], "characters[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }

  doc.rep = as_string(field(object, "rep"), "\"rep\"");
  if (std::find(table.irrep_names.begin(), table.irrep_names.end(), doc.rep) ==
      table.irrep_names.end())
    fail("rep label \"" + doc.rep + "\" is not an irrep of the table");
}

}  // namespace

bool InputDocument::operator==(const InputDocument& other) const {
  if (kind != other.kind || name != other.name) return false;
  if (kind == DocumentKind::Fusion)
    return fusion.sectors == other.fusion.sectors && fusion.iota == other.fusion.iota &&
           matrix_equal(fusion.matrix, other.fusion.matrix);
  return rep == other.rep && table_equal(table, other.table);
}

InputDocument parse_document(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover line/column from the byte offset for the diagnostic.
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << column << ": " << e.what();
    fail(os.str());
  }
  if (!parsed.is_object()) fail("document must be a JSON object");

  InputDocument doc;
  const std::string kind = as_string(field(parsed, "kind"), "\"kind\"");
  doc.name = as_string(field(parsed, "name"), "\"name\"");
  if (kind == "fusion") {
    doc.kind = DocumentKind::Fusion;
    reject_unknown_fields(parsed, {"kind", "name", "sectors", "iota", "matrix"});
    doc.fusion = parse_fusion_body(parsed);
  } else if (kind == "character_table") {
    doc.kind = DocumentKind::CharacterTable;
    reject_unknown_fields(parsed,
                          {"kind", "name", "class_sizes", "characters", "irrep_names", "rep"});
    parse_character_body(parsed, doc);
  } else {
    fail("unknown kind \"" + kind + "\" (expected \"fusion\" or \"character_table\")");
  }
  return doc;
}

nlohmann::json emit_document(const InputDocument& doc) {
  json out;
  out["kind"] = to_string(doc.kind);
  out["name"] = doc.name;
  if (doc.kind == DocumentKind::Fusion) {
    out["sectors"] = doc.fusion.sectors;
    out["iota"] = doc.fusion.sectors[static_cast<std::size_t>(doc.fusion.iota)];
    json rows = json::array();
    for (Index i = 0; i < doc.fusion.matrix.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < doc.fusion.matrix.cols(); ++j) row.push_back(doc.fusion.matrix(i, j));
      rows.push_back(std::move(row));
    }
    out["matrix"] = std::move(rows);
    return out;
  }
  out["class_sizes"] = doc.table.class_sizes;
  out["irrep_names"] = doc.table.irrep_names;
  json rows = json::array();
  for (Index i = 0; i < doc.table.characters.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < doc.table.characters.cols(); ++j) {
      const Complex c = doc.table.characters(i, j);
      if (c.imag() == 0.0)
        row.push_back(c.real());
      else
        row.push_back(json::array({c.real(), c.imag()}));
    }
    rows.push_back(std::move(row));
  }
  out["characters"] = std::move(rows);
  out["rep"] = doc.rep;
  return out;
}

namespace {

InputDocument fusion_document(std::string name, std::vector<std::string> sectors,
                              const std::string& iota, std::vector<std::vector<std::int64_t>> rows) {
  InputDocument doc;
  doc.kind = DocumentKind::Fusion;
  doc.name = std::move(name);
  doc.fusion.sectors = std::move(sectors);
  const auto it = std::find(doc.fusion.sectors.begin(), doc.fusion.sectors.end(), iota);
  doc.fusion.iota = static_cast<Index>(it - doc.fusion.sectors.begin());
  const auto s = static_cast<Index>(doc.fusion.sectors.size());
  doc.fusion.matrix.resize(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j)
      doc.fusion.matrix(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return doc;
}

InputDocument character_document(std::string name, CharacterTable table, std::string rep) {
  InputDocument doc;
  doc.kind = DocumentKind::CharacterTable;
  doc.name = std::move(name);
  doc.table = std::move(table);
  doc.table.group_name = doc.name;
  doc.rep = std::move(rep);
  return doc;
}

std::optional<std::int64_t> inner_parameter(const std::string& name) {
  if (name.rfind("inner-", 0) != 0) return std::nullopt;
  const std::string digits = name.substr(6);
  if (digits.empty() || digits.size() > 6 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  const std::int64_t d = std::stoll(digits);
  if (d < 1) return std::nullopt;
  return d;
}

}  // namespace

std::vector<CatalogEntry> catalog_names() {
  return {
      {"inner-d", "single sector with a d-fold self-loop (inner case; ordinary Cuntz "
                  "algebra O_d; use a concrete d, e.g. inner-2)"},
      {"a4-iota", "A4 principal graph seen from the inclusion sector; golden-ratio "
                  "dimension, finite skeleton"},
      {"lee-yang-rho", "Lee-Yang fusion rho^2 = id + rho seen from the identity sector; "
                       "infinite skeleton"},
      {"s3-std", "S3 character table, standard two-dimensional representation"},
      {"z2-sign", "Z2 character table, sign representation (degenerate d = 1 sanity case)"},
  };
}

InputDocument catalog_get(const std::string& name) {
  if (const auto d = inner_parameter(name))
    return fusion_document(name, {"id"}, "id", {{*d}});
  if (name == "a4-iota")
    return fusion_document(name, {"iota", "alpha"}, "iota", {{1, 1}, {1, 0}});
  if (name == "lee-yang-rho")
    return fusion_document(name, {"id", "rho"}, "id", {{0, 1}, {1, 1}});
  if (name == "s3-std") return character_document(name, s3_table(), "std");
  if (name == "z2-sign") return character_document(name, z2_table(), "sgn");

  std::ostringstream os;
  os << "unknown catalog entry \"" << name << "\"; available:";
  for (const auto& entry : catalog_names()) os << " " << entry.name;
  fail(os.str());
}

}  // namespace gca
