#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace specalt {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix zeros(int rows, int cols);
IntMatrix transpose(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
bool is_symmetric(const IntMatrix& m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature() const { return positive - negative; }
};

/// Exact inertia of a symmetric integer matrix by rational LDL^T with
/// symmetric pivoting.
Inertia inertia(const IntMatrix& sym);
/// Bareiss fraction-free elimination.
BigInt determinant(const IntMatrix& m);
/// All leading principal minors positive.
bool is_positive_definite(const IntMatrix& sym);

std::string to_string(const IntMatrix& m);

}  // namespace specalt
