#pragma once

#include <complex>
#include <vector>

#include "seqbell/errors.hpp"

namespace seqbell {

using cplx = std::complex<double>;

// Absolute tolerance used for Hermiticity / positivity checks unless the
// caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

//=========================================================================
// Dense complex matrix, row-major. Everything in this project is 2x2,
// 4x4, 8x8 or 16x16, so no attempt is made to be clever about storage.
//=========================================================================

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const cplx& operator()(int r, int c) const { return data_[r * cols_ + c]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);  // throws DimensionMismatch
CMatrix operator*(cplx s, const CMatrix& m);
inline CMatrix operator*(double s, const CMatrix& m) { return cplx(s, 0) * m; }

// Kronecker product; dims multiply.
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix dagger(const CMatrix& m);
cplx trace(const CMatrix& m);

double max_abs(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tol = kDefaultTol);
bool is_psd(const CMatrix& m, double tol = kDefaultTol);

//=========================================================================
// Hermitian eigendecomposition and the PSD square root built on it
//=========================================================================

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // unitary; column i pairs with eigenvalues[i]
};

// 2x2 via the trace/determinant closed form, larger sizes via cyclic Jacobi
// sweeps (off-diagonal norm threshold 1e-13). Throws NotHermitian when the
// Hermiticity residual exceeds tol.
EigResult eig_hermitian(const CMatrix& m, double tol = kDefaultTol);

// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero;
// anything below -tol throws NotPsd.
CMatrix sqrt_psd(const CMatrix& m, double tol = kDefaultTol);

//=========================================================================
// Fixed operators
//=========================================================================

const CMatrix& identity2();
const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();

}  // namespace seqbell
