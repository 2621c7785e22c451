#include "gca/groups.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gca {

std::int64_t CharacterTable::group_order() const {
  return std::accumulate(class_sizes.begin(), class_sizes.end(), std::int64_t{0});
}

Index CharacterTable::irrep_index(const std::string& name) const {
  for (std::size_t i = 0; i < irrep_names.size(); ++i)
    if (irrep_names[i] == name) return static_cast<Index>(i);
  throw std::invalid_argument("unknown irrep \"" + name + "\" in table " + group_name);
}

ValidationResult validate_table(const CharacterTable& table) {
  ValidationResult result;
  auto defect = [&result](const std::string& msg) { result.defects.push_back({msg}); };

  const Index r = table.characters.rows();
  const Index c = table.characters.cols();
  if (r < 1 || c < 1) {
    defect("character table is empty");
    return result;
  }
  if (static_cast<Index>(table.class_sizes.size()) != c)
    defect("class_sizes length does not match the number of columns");
  if (static_cast<Index>(table.irrep_names.size()) != r)
    defect("irrep_names length does not match the number of rows");
  for (std::size_t i = 0; i < table.class_sizes.size(); ++i)
    if (table.class_sizes[i] <= 0)
      defect("class size " + std::to_string(i) + " is not positive");
  if (!result.ok()) return result;

  const double order = static_cast<double>(table.group_order());
  for (Index i = 0; i < r; ++i) {
    const Complex dim = table.characters(i, 0);
    if (std::abs(dim.imag()) > 1e-9 || std::abs(dim.real() - std::round(dim.real())) > 1e-9 ||
        dim.real() < 0.5)
      defect("irrep " + table.irrep_names[static_cast<std::size_t>(i)] +
             " has a non-positive-integer dimension entry");
    for (Index j = 0; j < r; ++j) {
      Complex acc = 0;
      for (Index k = 0; k < c; ++k)
        acc += static_cast<double>(table.class_sizes[static_cast<std::size_t>(k)]) *
               table.characters(i, k) * std::conj(table.characters(j, k));
      acc /= order;
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(acc - Complex(expected, 0)) > 1e-9) {
        std::ostringstream os;
        os << "row orthogonality fails for (" << table.irrep_names[static_cast<std::size_t>(i)]
           << ", " << table.irrep_names[static_cast<std::size_t>(j)] << "), <.,.> = " << acc;
        defect(os.str());
      }
    }
  }
  return result;
}

void require_valid(const CharacterTable& table) {
  const auto result = validate_table(table);
  if (result.ok()) return;
  std::ostringstream os;
  os << "invalid character table \"" << table.group_name << "\":";
  for (const auto& d : result.defects) os << " [" << d.message << "]";
  throw std::invalid_argument(os.str());
}

CharacterTable z2_table() {
  CharacterTable t;
  t.group_name = "Z2";
  t.class_sizes = {1, 1};
  t.irrep_names = {"triv", "sgn"};
  t.characters.resize(2, 2);
  t.characters << 1, 1, 1, -1;
  return t;
}

CharacterTable z3_table() {
  CharacterTable t;
  t.group_name = "Z3";
  t.class_sizes = {1, 1, 1};
  t.irrep_names = {"triv", "omega", "omega2"};
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  t.characters.resize(3, 3);
  t.characters << Complex(1), Complex(1), Complex(1),
                  Complex(1), w, w * w,
                  Complex(1), w * w, w;
  return t;
}

CharacterTable s3_table() {
  CharacterTable t;
  t.group_name = "S3";
  t.class_sizes = {1, 3, 2};  // identity, transpositions, 3-cycles
  t.irrep_names = {"triv", "sgn", "std"};
  t.characters.resize(3, 3);
  t.characters << 1, 1, 1, 1, -1, 1, 2, 0, -1;
  return t;
}

namespace {

std::int64_t round_to_multiplicity(const Complex& value, double tol, const std::string& what) {
  const double re = value.real();
  const double rounded = std::round(re);
  if (std::abs(value.imag()) > tol || std::abs(re - rounded) > tol || rounded < -0.5) {
    std::ostringstream os;
    os << what << " = " << value << " is not a non-negative integer within " << tol;
    throw std::invalid_argument(os.str());
  }
  return static_cast<std::int64_t>(rounded);
}

}  // namespace

FusionData fusion_from_characters(const CharacterTable& table, Index rep_index, double tol) {
  require_valid(table);
  if (rep_index < 0 || rep_index >= table.irrep_count())
    throw std::invalid_argument("fusion_from_characters: rep index out of range");

  const Index r = table.irrep_count();
  const Index c = table.class_count();
  const double order = static_cast<double>(table.group_order());

  // Trivial irrep = the all-ones row; it is the base point.
  Index trivial = -1;
  for (Index i = 0; i < r && trivial < 0; ++i) {
    bool ones = true;
    for (Index k = 0; k < c; ++k)
      ones = ones && std::abs(table.characters(i, k) - Complex(1, 0)) <= 1e-9;
    if (ones) trivial = i;
  }
  if (trivial < 0)
    throw std::invalid_argument("fusion_from_characters: table has no trivial irrep row");

  IntMatrix full(r, r);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j) {
      Complex acc = 0;
      for (Index k = 0; k < c; ++k)
        acc += static_cast<double>(table.class_sizes[static_cast<std::size_t>(k)]) *
               table.characters(j, k) * table.characters(rep_index, k) *
               std::conj(table.characters(i, k));
      acc /= order;
      std::ostringstream what;
      what << "multiplicity of " << table.irrep_names[static_cast<std::size_t>(i)] << " in "
           << table.irrep_names[static_cast<std::size_t>(j)] << " (x) "
           << table.irrep_names[static_cast<std::size_t>(rep_index)];
      full(i, j) = round_to_multiplicity(acc, tol, what.str());
    }

  FusionData everything;
  everything.sectors = table.irrep_names;
  everything.iota = trivial;
  everything.matrix = full;
  const auto kept = reachable_sectors(everything);

  FusionData out;
  out.matrix.resize(static_cast<Index>(kept.size()), static_cast<Index>(kept.size()));
  for (std::size_t a = 0; a < kept.size(); ++a) {
    out.sectors.push_back(table.irrep_names[static_cast<std::size_t>(kept[a])]);
    if (kept[a] == trivial) out.iota = static_cast<Index>(a);
    for (std::size_t b = 0; b < kept.size(); ++b)
      out.matrix(static_cast<Index>(a), static_cast<Index>(b)) = full(kept[a], kept[b]);
  }
  return out;
}

Int invariant_dims(const CharacterTable& table, Index rep_index, int n, double tol) {
  require_valid(table);
  if (rep_index < 0 || rep_index >= table.irrep_count())
    throw std::invalid_argument("invariant_dims: rep index out of range");
  if (n < 0) throw std::invalid_argument("invariant_dims: n must be >= 0");

  const double order = static_cast<double>(table.group_order());
  Complex acc = 0;
  for (Index k = 0; k < table.class_count(); ++k) {
    Complex power(1, 0);
    for (int t = 0; t < n; ++t) power *= table.characters(rep_index, k);
    acc += static_cast<double>(table.class_sizes[static_cast<std::size_t>(k)]) * power;
  }
  acc /= order;
  std::ostringstream what;
  what << "invariant dimension of " << table.irrep_names[static_cast<std::size_t>(rep_index)]
       << "^(x)" << n;
  return Int(round_to_multiplicity(acc, tol, what.str()));
}

}  // namespace gca
