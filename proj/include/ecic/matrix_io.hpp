#pragma once

// Matrix text format:
//   q n N
//   n lines of N space-separated integers in 0..q-1
// Extension-field entries use the integer encoding of ecic::Field.

#include <istream>
#include <sstream>
#include <string>

#include "ecic/error.hpp"
#include "ecic/field.hpp"
#include "ecic/linalg.hpp"

namespace ecic {

struct MatrixDocument {
  unsigned q = 2;
  Matrix matrix;
};

inline MatrixDocument read_matrix(std::istream& in) {
  MatrixDocument doc;
  long long q = 0, n = 0, N = 0;
  if (!(in >> q >> n >> N) || q < 2 || n < 0 || N < 0)
    throw Error(ErrorKind::MalformedDocument, "matrix header must be \"q n N\"");
  doc.q = static_cast<unsigned>(q);
  doc.matrix = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(N));
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < N; ++c) {
      long long v = -1;
      if (!(in >> v))
        throw Error(ErrorKind::MalformedDocument,
                    "matrix ends early at row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1));
      if (v < 0 || v >= q) throw Error(ErrorKind::MalformedDocument, "entry " + std::to_string(v) + " outside 0..q-1");
      doc.matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = static_cast<Elem>(v);
    }
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::MalformedDocument, "trailing data after matrix");
  return doc;
}

inline MatrixDocument parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline std::string format_matrix(unsigned q, const Matrix& M) {
  std::ostringstream out;
  out << q << ' ' << M.rows() << ' ' << M.cols() << '\n';
  for (std::size_t r = 0; r < M.rows(); ++r) {
    for (std::size_t c = 0; c < M.cols(); ++c) out << (c ? " " : "") << M(r, c);
    out << '\n';
  }
  return out.str();
}

/// The 3x4 matrix of the all-side-information example (corrects one error).
inline Matrix example1_matrix() {
  return Matrix::from_rows({{1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}});
}

/// A 5x9 binary (2,H)-ECIC for the pentagon instance.
inline Matrix pentagon_matrix() {
  return Matrix::from_rows({
      {1, 1, 1, 1, 1, 0, 0, 0, 0},
      {0, 1, 0, 1, 1, 0, 1, 1, 0},
      {1, 1, 0, 0, 0, 1, 1, 1, 0},
      {0, 1, 1, 0, 0, 1, 0, 1, 1},
      {1, 0, 1, 0, 1, 0, 0, 1, 1},
  });
}

}  // namespace ecic
