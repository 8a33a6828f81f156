#include "doctest.h"

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "lamfrac/simd/kernels.hpp"

using namespace lamfrac;

namespace {

std::vector<double> random_vec(testutil::Rng& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = scale * rng.uniform(-1.0, 1.0);
    return v;
}

const std::size_t kSizes[] = {0, 1, 3, 4, 7, 8, 9, 31, 32, 33, 100, 1000, 4097};

} // namespace

TEST_CASE("dispatched kernels match the scalar reference") {
    if (simd::active_level() == simd::IsaLevel::Scalar) {
        MESSAGE("no SIMD path on this host, dispatch equivalence is trivial");
    }
    testutil::Rng rng(42);
    for (std::size_t n : kSizes) {
        CAPTURE(n);
        auto x = random_vec(rng, n), y = random_vec(rng, n);

        const double d_ref = simd::ref::dot(x.data(), y.data(), n);
        const double d = simd::dot(x.data(), y.data(), n);
        CHECK(std::abs(d - d_ref) <= 1e-13 * (1.0 + double(n)));

        auto y1 = y, y2 = y;
        simd::ref::axpy(0.37, x.data(), y1.data(), n);
        simd::axpy(0.37, x.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * (std::abs(y1[i]) + 1.0));

        y1 = y;
        y2 = y;
        simd::ref::xpby(x.data(), -1.91, y1.data(), n);
        simd::xpby(x.data(), -1.91, y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * (std::abs(y1[i]) + 1.0));
    }
}

TEST_CASE("csr spmv equals a dense product, simd path included") {
    testutil::Rng rng(7);
    for (int rows : {1, 2, 5, 17, 64, 200}) {
        CAPTURE(rows);
        const int cols = rows;
        std::vector<int> ptr{0};
        std::vector<int> idx;
        std::vector<double> val;
        std::vector<std::vector<double>> dense(rows, std::vector<double>(cols, 0.0));
        for (int r = 0; r < rows; ++r) {
            const int nnz = rng.uniform_int(0, std::min(cols, 9));
            int c = rng.uniform_int(0, std::max(0, cols - nnz - 1));
            for (int k = 0; k < nnz; ++k, c += 1 + rng.uniform_int(0, 1)) {
                if (c >= cols) break;
                const double v = rng.uniform(-2.0, 2.0);
                idx.push_back(c);
                val.push_back(v);
                dense[r][c] = v;
            }
            ptr.push_back(int(idx.size()));
        }
        const auto x = random_vec(rng, cols);
        std::vector<double> y_simd(rows), y_ref(rows);
        simd::csr_spmv(rows, ptr.data(), idx.data(), val.data(), x.data(), y_simd.data());
        simd::ref::csr_spmv(rows, ptr.data(), idx.data(), val.data(), x.data(), y_ref.data());
        for (int r = 0; r < rows; ++r) {
            double want = 0.0;
            for (int c = 0; c < cols; ++c) want += dense[r][c] * x[c];
            CHECK(std::abs(y_ref[r] - want) <= 1e-12);
            CHECK(std::abs(y_simd[r] - want) <= 1e-12);
        }
    }
}

TEST_CASE("dot is bilinear") {
    testutil::Rng rng(11);
    const std::size_t n = 257;
    auto x = random_vec(rng, n), y = random_vec(rng, n), z = random_vec(rng, n);
    std::vector<double> xz(n);
    for (std::size_t i = 0; i < n; ++i) xz[i] = x[i] + 2.5 * z[i];
    const double lhs = simd::dot(xz.data(), y.data(), n);
    const double rhs = simd::dot(x.data(), y.data(), n) + 2.5 * simd::dot(z.data(), y.data(), n);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
}
