// Isometric real coordinates for Hermitian matrices.
//
// A Hermitian n x n matrix A is represented by n^2 reals: the n diagonal
// entries first, then for each pair u < v (lexicographic) the pair
// (sqrt(2) Re A_uv, sqrt(2) Im A_uv). The map preserves the Frobenius inner
// product, so singular spectra computed in these coordinates match the
// complex flattened convention.
#pragma once

#include <span>
#include <vector>

#include "metatomo/matrix.hpp"

namespace metatomo {

struct HermCoord {
  enum class Kind { diag, re, im };
  Kind kind;
  std::size_t u, v;
};

// Coordinate layout for n x n Hermitian matrices (n^2 entries).
std::vector<HermCoord> hermitian_coord_layout(std::size_t n);

std::vector<double> theta_from_matrix(const CMatrix& a);
CMatrix matrix_from_theta(std::span<const double> theta, std::size_t n);

// Row-major complex flattening, vec(A)[u*n + v] = A(u, v), and its inverse.
std::vector<cd> vec_row_major(const CMatrix& a);
CMatrix unvec_row_major(std::span<const cd> v, std::size_t n);

}  // namespace metatomo
