#include "specalt/matrix.hpp"

#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "specalt/error.hpp"

namespace specalt {

using Rational = boost::multiprecision::cpp_rational;

IntMatrix zeros(int rows, int cols) { return IntMatrix(rows, std::vector<std::int64_t>(cols, 0)); }

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t = zeros(static_cast<int>(m[0].size()), static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = a[0].size();
  if (b.size() != inner) throw Error(ErrorKind::Internal, "matrix shape mismatch");
  const std::size_t cols = inner ? b[0].size() : 0;
  IntMatrix out = zeros(static_cast<int>(a.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

bool is_symmetric(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (m[i][j] != m[j][i]) return false;
  }
  return true;
}

Inertia inertia(const IntMatrix& sym) {
  if (!is_symmetric(sym)) throw Error(ErrorKind::PreconditionViolated, "inertia of a non-symmetric matrix");
  const int n = static_cast<int>(sym.size());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = sym[i][j];
  std::vector<char> live(n, 1);
  Inertia out;
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int i = 0; i < n && piv < 0; ++i)
      if (live[i] && a[i][i] != 0) piv = i;
    if (piv < 0) {
      // zero diagonal: add row/column j to i to create a pivot
      int pi = -1, pj = -1;
      for (int i = 0; i < n && pi < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (live[i] && live[j] && i != j && a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      for (int k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (int k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      piv = pi;
      if (a[piv][piv] == 0) throw Error(ErrorKind::Internal, "pivot creation failed");
    }
    const Rational p = a[piv][piv];
    (p > 0 ? out.positive : out.negative)++;
    live[piv] = 0;
    for (int i = 0; i < n; ++i) {
      if (!live[i] || a[i][piv] == 0) continue;
      const Rational f = a[i][piv] / p;
      for (int j = 0; j < n; ++j)
        if (live[j]) a[i][j] -= f * a[piv][j];
    }
  }
  out.zero = n - out.positive - out.negative;
  return out;
}

BigInt determinant(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) throw Error(ErrorKind::PreconditionViolated, "determinant of non-square");
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool is_positive_definite(const IntMatrix& sym) {
  if (!is_symmetric(sym)) return false;
  for (std::size_t k = 1; k <= sym.size(); ++k) {
    IntMatrix lead(k, std::vector<std::int64_t>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = sym[i][j];
    if (determinant(lead) <= 0) return false;
  }
  return true;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? "," : "") << m[i][j];
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace specalt
