#include "lamfrac/simd/kernels.hpp"

#include <cstdlib>

namespace lamfrac::simd {

namespace {

IsaLevel detect() {
    if (const char* env = std::getenv("LAMFRAC_FORCE_SCALAR"); env && env[0] == '1')
        return IsaLevel::Scalar;
#if defined(LAMFRAC_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return IsaLevel::Avx2;
#endif
#if defined(LAMFRAC_HAVE_NEON_BUILD)
    return IsaLevel::Neon;
#endif
    return IsaLevel::Scalar;
}

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*xpby)(const double*, double, double*, std::size_t);
    void (*csr_spmv)(std::size_t, const int*, const int*, const double*, const double*, double*);
    IsaLevel level;
};

Table make_table() {
    const IsaLevel lvl = detect();
    switch (lvl) {
#if defined(LAMFRAC_HAVE_AVX2_BUILD)
    case IsaLevel::Avx2:
        return {&avx2::dot, &avx2::axpy, &avx2::xpby, &avx2::csr_spmv, lvl};
#endif
#if defined(LAMFRAC_HAVE_NEON_BUILD)
    case IsaLevel::Neon:
        return {&neon::dot, &neon::axpy, &neon::xpby, &neon::csr_spmv, lvl};
#endif
    default:
        return {&ref::dot, &ref::axpy, &ref::xpby, &ref::csr_spmv, IsaLevel::Scalar};
    }
}

const Table& table() {
    static const Table t = make_table();
    return t;
}

} // namespace

IsaLevel active_level() { return table().level; }

const char* level_name() {
    switch (active_level()) {
    case IsaLevel::Avx2: return "avx2";
    case IsaLevel::Neon: return "neon";
    default: return "scalar";
    }
}

double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
void xpby(const double* x, double b, double* y, std::size_t n) { table().xpby(x, b, y, n); }
void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col_idx,
              const double* val, const double* x, double* y) {
    table().csr_spmv(n_rows, row_ptr, col_idx, val, x, y);
}

} // namespace lamfrac::simd
