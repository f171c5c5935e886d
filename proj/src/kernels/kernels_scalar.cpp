#include "qinv/kernels.hpp"

namespace qinv::kern::scalar {

void axpy(double alpha, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double dot(const double* x, const double* y, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double dot3(const double* w, const double* x, const double* y, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

void tridiag_apply(const double* diag, const double* off, const double* x, double* out, size_t n) {
    if (n == 0) return;
    if (n == 1) {
        out[0] = diag[0] * x[0];
        return;
    }
    out[0] = diag[0] * x[0] + off[0] * x[1];
    for (size_t i = 1; i + 1 < n; ++i)
        out[i] = diag[i] * x[i] + off[i - 1] * x[i - 1] + off[i] * x[i + 1];
    out[n - 1] = diag[n - 1] * x[n - 1] + off[n - 2] * x[n - 2];
}

void stencil5_apply(const double* diag, double cx, double cy, const double* x, double* out,
                    size_t nx, size_t ny) {
    for (size_t j = 0; j < ny; ++j) {
        const size_t row = j * nx;
        for (size_t i = 0; i < nx; ++i) {
            const size_t k = row + i;
            double v = diag[k] * x[k];
            if (i > 0) v -= cx * x[k - 1];
            if (i + 1 < nx) v -= cx * x[k + 1];
            if (j > 0) v -= cy * x[k - nx];
            if (j + 1 < ny) v -= cy * x[k + nx];
            out[k] = v;
        }
    }
}

}  // namespace qinv::kern::scalar
