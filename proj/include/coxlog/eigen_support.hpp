#pragma once
#include <Eigen/Core>

#include "coxlog/ratfunc.hpp"

// Eigen is used as the dense container and expression layer for exact
// scalars.  The solvers that need magnitudes or square roots are off the
// table; everything decomposition-like lives in linalg.hpp as exact free
// functions.

namespace Eigen {

template <>
struct NumTraits<coxlog::QuadScalar> : GenericNumTraits<coxlog::QuadScalar> {
  typedef coxlog::QuadScalar Real;
  typedef coxlog::QuadScalar NonInteger;
  typedef coxlog::QuadScalar Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
};

template <>
struct NumTraits<coxlog::MultiPoly> : GenericNumTraits<coxlog::MultiPoly> {
  typedef coxlog::MultiPoly Real;
  typedef coxlog::MultiPoly NonInteger;
  typedef coxlog::MultiPoly Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 40,
    AddCost = 400,
    MulCost = 4000,
  };
};

template <>
struct NumTraits<coxlog::RatFunc> : GenericNumTraits<coxlog::RatFunc> {
  typedef coxlog::RatFunc Real;
  typedef coxlog::RatFunc NonInteger;
  typedef coxlog::RatFunc Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 80,
    AddCost = 8000,
    MulCost = 8000,
  };
};

}  // namespace Eigen

namespace coxlog {

template <typename T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

}  // namespace coxlog
