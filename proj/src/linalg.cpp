#include "dnc/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dnc {

bool all_finite(const Vec64& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void require_finite(const Vec64& v, const char* what) {
  if (!all_finite(v)) {
    throw std::runtime_error(std::string(what) + ": non-finite entry");
  }
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::runtime_error(std::string(what) + ": non-finite value");
  }
}

double dot(const Vec64& a, const Vec64& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(const Vec64& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double squared_distance(const Vec64& a, const Vec64& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("squared_distance: size mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double l2_distance(const Vec64& a, const Vec64& b) {
  return std::sqrt(squared_distance(a, b));
}

bool lex_less(const Vec64& a, const Vec64& b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

Vec64 matvec(const Mat64& m, const Vec64& x) {
  if (m.cols != x.size()) throw std::invalid_argument("matvec: size mismatch");
  Vec64 y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double* row = m.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace dnc
