#include "lamfrac/simd/kernels.hpp"

#if defined(LAMFRAC_HAVE_NEON_BUILD)

#include <arm_neon.h>

// NEON is baseline on aarch64, no extra compile flags needed.

namespace lamfrac::simd::neon {

double dot(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    for (; i + 2 <= n; i += 2)
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
    const float64x2_t vb = vdupq_n_f64(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(x + i), vb, vld1q_f64(y + i)));
    for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col_idx,
              const double* val, const double* x, double* y) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        int k = row_ptr[r];
        const int end = row_ptr[r + 1];
        float64x2_t acc = vdupq_n_f64(0.0);
        for (; k + 2 <= end; k += 2) {
            float64x2_t vx = {x[col_idx[k]], x[col_idx[k + 1]]};
            acc = vfmaq_f64(acc, vld1q_f64(val + k), vx);
        }
        double s = vaddvq_f64(acc);
        for (; k < end; ++k) s += val[k] * x[col_idx[k]];
        y[r] = s;
    }
}

} // namespace lamfrac::simd::neon

#endif // LAMFRAC_HAVE_NEON_BUILD
