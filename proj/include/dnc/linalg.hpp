#pragma once

#include <cstddef>
#include <vector>

namespace dnc {

using Vec64 = std::vector<double>;

// Dense row-major matrix of doubles.
struct Mat64 {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec64 values;

  Mat64() = default;
  Mat64(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), values(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double* row(std::size_t i) { return values.data() + i * cols; }
  const double* row(std::size_t i) const { return values.data() + i * cols; }
};

bool all_finite(const Vec64& v);
void require_finite(const Vec64& v, const char* what);
void require_finite(double x, const char* what);

double dot(const Vec64& a, const Vec64& b);
double l2_norm(const Vec64& v);
double l2_distance(const Vec64& a, const Vec64& b);
double squared_distance(const Vec64& a, const Vec64& b);

// Strict lexicographic order on equal-length vectors.
bool lex_less(const Vec64& a, const Vec64& b);

Vec64 matvec(const Mat64& m, const Vec64& x);

}  // namespace dnc
