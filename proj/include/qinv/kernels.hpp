#pragma once

#include <cstddef>
#include <string_view>

// Vector kernels used by the eigensolvers and quadrature reductions.
// Each kernel has a scalar reference implementation and may have SIMD
// variants; the active variant is picked once at startup from CPU features.
// All variants must agree with the scalar reference to rounding accuracy
// (reduction order may differ); the kernel test suite enforces this.

namespace qinv::kern {

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, size_t n);

// x[i] *= alpha
void scal(double alpha, double* x, size_t n);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, size_t n);

// sum_i w[i] * x[i] * y[i]   (quadrature inner product)
double dot3(const double* w, const double* x, const double* y, size_t n);

// out[i] = diag[i]*x[i] + off[i-1]*x[i-1] + off[i]*x[i+1]   (symmetric tridiagonal)
void tridiag_apply(const double* diag, const double* off, const double* x, double* out, size_t n);

// 5-point stencil on an nx-by-ny grid (x fastest, Dirichlet outside):
// out[i,j] = diag[i,j]*x[i,j] - cx*(x[i-1,j]+x[i+1,j]) - cy*(x[i,j-1]+x[i,j+1])
void stencil5_apply(const double* diag, double cx, double cy, const double* x, double* out,
                    size_t nx, size_t ny);

/// Name of the selected variant ("scalar" or "avx2").
std::string_view active_variant();

/// Force a variant by name (used by the equivalence tests). Throws on unknown
/// or unsupported names.
void force_variant(std::string_view name);

namespace scalar {
void axpy(double alpha, const double* x, double* y, size_t n);
void scal(double alpha, double* x, size_t n);
double dot(const double* x, const double* y, size_t n);
double dot3(const double* w, const double* x, const double* y, size_t n);
void tridiag_apply(const double* diag, const double* off, const double* x, double* out, size_t n);
void stencil5_apply(const double* diag, double cx, double cy, const double* x, double* out,
                    size_t nx, size_t ny);
}  // namespace scalar

}  // namespace qinv::kern
