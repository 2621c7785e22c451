#pragma once

// Core scalar and dense-matrix aliases shared by all modules.
//
// Exact arithmetic uses boost::multiprecision scalars inside Eigen dense
// types. Boost 1.7x's cpp_int has a constructor SFINAE (is_byte_container)
// that hard-errors on Eigen 3.4 expression types, so the trait is disabled
// for anything derived from Eigen::EigenBase before cpp_int is included.
// Include this header instead of <boost/multiprecision/cpp_int.hpp>.

#include <Eigen/Dense>

#include <boost/multiprecision/traits/is_byte_container.hpp>
#include <type_traits>

namespace boost {
namespace multiprecision {
namespace detail {
template <class C>
  requires std::is_base_of_v<Eigen::EigenBase<C>, C>
struct is_byte_container<C> : public std::integral_constant<bool, false> {};
}  // namespace detail
}  // namespace multiprecision
}  // namespace boost

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>

namespace gca {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

}  // namespace gca

namespace Eigen {

template <>
struct NumTraits<gca::Int> : GenericNumTraits<gca::Int> {
  using Real = gca::Int;
  using NonInteger = gca::Int;
  using Nested = gca::Int;
  using Literal = long long;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16,
  };
};

}  // namespace Eigen

namespace gca {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using BigMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using BigVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline BigMatrix to_big(const IntMatrix& m) { return m.cast<Int>(); }

inline bool is_zero(const BigMatrix& m) {
  for (Index i = 0; i < m.size(); ++i)
    if (*(m.data() + i) != 0) return false;
  return true;
}

}  // namespace gca
