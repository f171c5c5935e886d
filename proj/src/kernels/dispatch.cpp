#include "qinv/kernels.hpp"

#include <stdexcept>
#include <string>

namespace qinv::kern {

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void axpy(double alpha, const double* x, double* y, size_t n);
void scal(double alpha, double* x, size_t n);
double dot(const double* x, const double* y, size_t n);
double dot3(const double* w, const double* x, const double* y, size_t n);
void tridiag_apply(const double* diag, const double* off, const double* x, double* out, size_t n);
void stencil5_apply(const double* diag, double cx, double cy, const double* x, double* out,
                    size_t nx, size_t ny);
}  // namespace avx2
#endif

namespace {

struct KernelTable {
    void (*axpy)(double, const double*, double*, size_t);
    void (*scal)(double, double*, size_t);
    double (*dot)(const double*, const double*, size_t);
    double (*dot3)(const double*, const double*, const double*, size_t);
    void (*tridiag_apply)(const double*, const double*, const double*, double*, size_t);
    void (*stencil5_apply)(const double*, double, double, const double*, double*, size_t, size_t);
    std::string_view name;
};

constexpr KernelTable kScalarTable = {
    scalar::axpy, scalar::scal, scalar::dot, scalar::dot3,
    scalar::tridiag_apply, scalar::stencil5_apply, "scalar"};

#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2Table = {
    avx2::axpy, avx2::scal, avx2::dot, avx2::dot3,
    avx2::tridiag_apply, avx2::stencil5_apply, "avx2"};

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return kAvx2Table;
#endif
    return kScalarTable;
}

const KernelTable* g_active = &detect();

}  // namespace

std::string_view active_variant() { return g_active->name; }

void force_variant(std::string_view name) {
    if (name == "scalar") {
        g_active = &kScalarTable;
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!avx2_supported()) throw std::runtime_error("kernels: avx2 not supported on this CPU");
        g_active = &kAvx2Table;
        return;
    }
#endif
    throw std::runtime_error("kernels: unknown variant '" + std::string(name) + "'");
}

void axpy(double alpha, const double* x, double* y, size_t n) { g_active->axpy(alpha, x, y, n); }
void scal(double alpha, double* x, size_t n) { g_active->scal(alpha, x, n); }
double dot(const double* x, const double* y, size_t n) { return g_active->dot(x, y, n); }
double dot3(const double* w, const double* x, const double* y, size_t n) {
    return g_active->dot3(w, x, y, n);
}
void tridiag_apply(const double* diag, const double* off, const double* x, double* out, size_t n) {
    g_active->tridiag_apply(diag, off, x, out, n);
}
void stencil5_apply(const double* diag, double cx, double cy, const double* x, double* out,
                    size_t nx, size_t ny) {
    g_active->stencil5_apply(diag, cx, cy, x, out, nx, ny);
}

}  // namespace qinv::kern
