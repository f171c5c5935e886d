// AVX2+FMA variants of the vector kernels.  Compiled with per-function target
// attributes so the translation unit builds on any x86-64 toolchain; the
// dispatcher only installs these after checking CPU features at runtime.

#include "qinv/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace qinv::kern::avx2 {

#define QINV_AVX2 __attribute__((target("avx2,fma")))

QINV_AVX2 void axpy(double alpha, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

QINV_AVX2 void scal(double alpha, double* x, size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

QINV_AVX2 static inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

QINV_AVX2 double dot(const double* x, const double* y, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

QINV_AVX2 double dot3(const double* w, const double* x, const double* y, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wx = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i));
        acc = _mm256_fmadd_pd(wx, _mm256_loadu_pd(y + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

QINV_AVX2 void tridiag_apply(const double* diag, const double* off, const double* x, double* out,
                             size_t n) {
    if (n == 0) return;
    if (n == 1) {
        out[0] = diag[0] * x[0];
        return;
    }
    out[0] = diag[0] * x[0] + off[0] * x[1];
    size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(diag + i), _mm256_loadu_pd(x + i));
        v = _mm256_fmadd_pd(_mm256_loadu_pd(off + i - 1), _mm256_loadu_pd(x + i - 1), v);
        v = _mm256_fmadd_pd(_mm256_loadu_pd(off + i), _mm256_loadu_pd(x + i + 1), v);
        _mm256_storeu_pd(out + i, v);
    }
    for (; i + 1 < n; ++i)
        out[i] = diag[i] * x[i] + off[i - 1] * x[i - 1] + off[i] * x[i + 1];
    out[n - 1] = diag[n - 1] * x[n - 1] + off[n - 2] * x[n - 2];
}

QINV_AVX2 void stencil5_apply(const double* diag, double cx, double cy, const double* x,
                              double* out, size_t nx, size_t ny) {
    const __m256d vcx = _mm256_set1_pd(cx);
    const __m256d vcy = _mm256_set1_pd(cy);
    for (size_t j = 0; j < ny; ++j) {
        const size_t row = j * nx;
        const double* up = (j > 0) ? x + row - nx : nullptr;
        const double* dn = (j + 1 < ny) ? x + row + nx : nullptr;

        auto cell = [&](size_t i) {
            const size_t k = row + i;
            double v = diag[k] * x[k];
            if (i > 0) v -= cx * x[k - 1];
            if (i + 1 < nx) v -= cx * x[k + 1];
            if (up) v -= cy * up[i];
            if (dn) v -= cy * dn[i];
            out[k] = v;
        };

        cell(0);
        size_t i = 1;
        if (nx >= 2) {
            for (; i + 4 < nx; i += 4) {
                const size_t k = row + i;
                __m256d v = _mm256_mul_pd(_mm256_loadu_pd(diag + k), _mm256_loadu_pd(x + k));
                __m256d nb = _mm256_add_pd(_mm256_loadu_pd(x + k - 1), _mm256_loadu_pd(x + k + 1));
                v = _mm256_fnmadd_pd(vcx, nb, v);
                if (up && dn) {
                    nb = _mm256_add_pd(_mm256_loadu_pd(up + i), _mm256_loadu_pd(dn + i));
                    v = _mm256_fnmadd_pd(vcy, nb, v);
                } else if (up) {
                    v = _mm256_fnmadd_pd(vcy, _mm256_loadu_pd(up + i), v);
                } else if (dn) {
                    v = _mm256_fnmadd_pd(vcy, _mm256_loadu_pd(dn + i), v);
                }
                _mm256_storeu_pd(out + k, v);
            }
            for (; i < nx; ++i) cell(i);
        }
    }
}

#undef QINV_AVX2

}  // namespace qinv::kern::avx2

#endif  // x86-64
