#include "seqbell/matlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace seqbell {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

static void require_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix shapes differ: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b);
  CMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b);
  CMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  CMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const cplx ark = a(r, k);
      for (int c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

CMatrix operator*(cplx s, const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = s * m(r, c);
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0, 0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CMatrix dagger(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
  return out;
}

cplx trace(const CMatrix& m) {
  cplx t = 0;
  for (int i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

double max_abs(const CMatrix& m) {
  double mx = 0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) mx = std::max(mx, std::abs(m(r, c)));
  return mx;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b);
  return max_abs(a - b);
}

static double hermiticity_residual(const CMatrix& m) {
  double res = 0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c <= r; ++c) res = std::max(res, std::abs(m(r, c) - std::conj(m(c, r))));
  return res;
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_residual(m) <= tol;
}

bool is_psd(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  EigResult eig = eig_hermitian(m, tol);
  return eig.eigenvalues.front() >= -tol;
}

//-------------------------------------------------------------------------
// eigendecomposition
//-------------------------------------------------------------------------

static EigResult eig2x2(const CMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const cplx b = m(0, 1);
  const double mean = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  const double lo = mean - disc, hi = mean + disc;

  CMatrix vecs(2, 2);
  if (std::abs(b) < 1e-300) {
    // already diagonal; order columns by eigenvalue
    if (a <= d) {
      vecs(0, 0) = 1;
      vecs(1, 1) = 1;
    } else {
      vecs(1, 0) = 1;
      vecs(0, 1) = 1;
    }
  } else {
    // (m - lambda) (b, lambda - a)^T = 0
    for (int i = 0; i < 2; ++i) {
      const double lambda = (i == 0) ? lo : hi;
      cplx v0 = b, v1 = cplx(lambda - a, 0);
      const double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
      vecs(0, i) = v0 / nrm;
      vecs(1, i) = v1 / nrm;
    }
  }
  return EigResult{{lo, hi}, vecs};
}

// One cyclic Jacobi pass for a Hermitian matrix held in a (updated in place);
// the accumulated rotations multiply into v.
static double jacobi_sweep(CMatrix& a, CMatrix& v) {
  const int n = a.rows();
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const cplx apq = a(p, q);
      const double mag = std::abs(apq);
      if (mag < 1e-300) continue;
      const cplx phase = apq / mag;  // a(p,q) = mag * phase
      const double app = a(p, p).real();
      const double aqq = a(q, q).real();
      const double tau = (aqq - app) / (2.0 * mag);
      const double t = (tau >= 0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      // unitary G: G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase), G(q,q)=c
      // apply a <- G^dagger a G on rows/columns p,q
      for (int k = 0; k < n; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * std::conj(phase) * akq;
        a(k, q) = s * phase * akp + c * akq;
      }
      for (int k = 0; k < n; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * phase * aqk;
        a(q, k) = s * std::conj(phase) * apk + c * aqk;
      }
      for (int k = 0; k < n; ++k) {
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * std::conj(phase) * vkq;
        v(k, q) = s * phase * vkp + c * vkq;
      }
    }
  }
  double off = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r != c) off += std::norm(a(r, c));
  return std::sqrt(off);
}

EigResult eig_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eig_hermitian: matrix not square");
  const double res = hermiticity_residual(m);
  if (res > tol)
    throw NotHermitian("eig_hermitian: Hermiticity residual " + std::to_string(res) +
                       " exceeds tolerance");
  if (m.rows() == 2) return eig2x2(m);

  const int n = m.rows();
  CMatrix a = m;
  // symmetrize away the sub-tol noise so diagonals are exactly real
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    a(r, r) = cplx(a(r, r).real(), 0);
  }
  CMatrix v = CMatrix::identity(n);
  constexpr double kOffDiagThreshold = 1e-13;
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (jacobi_sweep(a, v) < kOffDiagThreshold) break;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[i], order[i]).real();
    for (int r = 0; r < n; ++r) out.eigenvectors(r, i) = v(r, order[i]);
  }
  return out;
}

CMatrix sqrt_psd(const CMatrix& m, double tol) {
  EigResult eig = eig_hermitian(m, tol);
  const int n = m.rows();
  for (double& lambda : eig.eigenvalues) {
    if (lambda < -tol)
      throw NotPsd("sqrt_psd: eigenvalue " + std::to_string(lambda) + " below -tolerance");
    lambda = std::max(lambda, 0.0);
  }
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx sum = 0;
      for (int i = 0; i < n; ++i)
        sum += eig.eigenvectors(r, i) * std::sqrt(eig.eigenvalues[i]) *
               std::conj(eig.eigenvectors(c, i));
      out(r, c) = sum;
    }
  // round off the imaginary dust on the diagonal
  for (int r = 0; r < n; ++r) out(r, r) = cplx(out(r, r).real(), 0);
  return out;
}

//-------------------------------------------------------------------------
// fixed operators
//-------------------------------------------------------------------------

const CMatrix& identity2() {
  static const CMatrix m = CMatrix::identity(2);
  return m;
}

const CMatrix& pauli_x() {
  static const CMatrix m = [] {
    CMatrix x(2, 2);
    x(0, 1) = 1;
    x(1, 0) = 1;
    return x;
  }();
  return m;
}

const CMatrix& pauli_y() {
  static const CMatrix m = [] {
    CMatrix y(2, 2);
    y(0, 1) = cplx(0, -1);
    y(1, 0) = cplx(0, 1);
    return y;
  }();
  return m;
}

const CMatrix& pauli_z() {
  static const CMatrix m = [] {
    CMatrix z(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    return z;
  }();
  return m;
}

}  // namespace seqbell
