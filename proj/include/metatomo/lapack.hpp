// Thin wrappers over LAPACKE for the dense decompositions the toolkit needs.
#pragma once

#include <vector>

#include "metatomo/matrix.hpp"

namespace metatomo {

struct SvdResult {
  std::vector<double> singular_values;  // descending
  RMatrix u;                            // rows x r (thin)
  RMatrix vt;                           // r x cols (thin)
};

// Thin SVD with vectors (dgesdd).
SvdResult svd(const RMatrix& a);

// Singular values only, descending (dgesdd, job 'N').
std::vector<double> singular_values(const RMatrix& a);

struct EighResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix vectors;                  // columns are eigenvectors
};

// Hermitian eigendecomposition (zheev). Input must be Hermitian; only the
// upper triangle is referenced.
EighResult eigh(const CMatrix& a);

// Eigenvalues of a real symmetric matrix, ascending (dsyev).
std::vector<double> eigvalsh(const RMatrix& a);

}  // namespace metatomo
