#include "lamfrac/simd/kernels.hpp"

namespace lamfrac::simd::ref {

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col_idx,
              const double* val, const double* x, double* y) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        double s = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += val[k] * x[col_idx[k]];
        y[r] = s;
    }
}

} // namespace lamfrac::simd::ref
