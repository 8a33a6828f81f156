#pragma once

// Vector kernels used by the sparse solver: dot, axpy-style updates and CSR
// mat-vec. Scalar reference implementations live in kernels::ref and are always
// compiled; AVX2 (x86-64) and NEON (aarch64) variants are selected once at
// runtime from CPU capabilities. Set LAMFRAC_FORCE_SCALAR=1 in the environment
// to pin the scalar path.

#include <cstddef>
#include <cstdint>

namespace lamfrac::simd {

enum class IsaLevel { Scalar, Avx2, Neon };

// Level picked for this process (detection happens once).
IsaLevel active_level();
const char* level_name();

// y . x
double dot(const double* x, const double* y, std::size_t n);
// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);
// y = x + b * y
void xpby(const double* x, double b, double* y, std::size_t n);
// y = A x, A in CSR with int row pointers/column indices
void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col_idx,
              const double* val, const double* x, double* y);

namespace ref {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col_idx,
              const double* val, const double* x, double* y);
} // namespace ref

#if defined(__x86_64__) || defined(_M_X64)
#define LAMFRAC_HAVE_AVX2_BUILD 1
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col_idx,
              const double* val, const double* x, double* y);
} // namespace avx2
#endif

#if defined(__aarch64__)
#define LAMFRAC_HAVE_NEON_BUILD 1
namespace neon {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col_idx,
              const double* val, const double* x, double* y);
} // namespace neon
#endif

} // namespace lamfrac::simd
