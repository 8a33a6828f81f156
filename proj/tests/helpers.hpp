#pragma once

// shared fixtures and independent oracles for the test suites

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lamfrac/evolution.hpp"

namespace testutil {

// REF-1 fixture: lambda = 1/2, A = (1,1,1), B = (4,1/4,1)
inline lamfrac::LaminateSpec ref1(lamfrac::Orientation o, int n) {
    lamfrac::LaminateSpec s;
    s.length = 1.0;
    s.height = 0.5;
    s.n_layers = n;
    s.lambda = 0.5;
    s.phase_a = {1.0, 1.0, 1.0};
    s.phase_b = {4.0, 0.25, 1.0};
    s.orientation = o;
    return s;
}

inline lamfrac::LaminateSpec homogeneous(double mu1 = 1.0, double mu2 = 1.0, double gc = 1.0,
                                         int n = 1) {
    lamfrac::LaminateSpec s;
    s.length = 1.0;
    s.height = 0.5;
    s.n_layers = n;
    s.lambda = 0.5;
    s.phase_a = {mu1, mu2, gc};
    s.phase_b = s.phase_a;
    return s;
}

// xorshift64*: deterministic generator for property tests
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return s * 0x2545f4914f6cdd1dull;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (double(next() >> 11) * 0x1.0p-53);
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + int(next() % std::uint64_t(hi - lo + 1));
    }
};

// Independent quasi-static driver: starting from the previous tip, advance
// cell by cell while the current lattice point is not strictly stable. This
// is the constructive characterization of the unique right-continuous
// evolution, without the representation formula.
inline std::vector<int> brute_force_trace(const lamfrac::ReleaseCurve& curve,
                                          const lamfrac::TipToughness& tough,
                                          const lamfrac::LoadProgram& load, double l0) {
    const int i0 = curve.index_of(l0);
    const int last = int(curve.tips.size()) - 1;
    std::vector<int> idx(load.f.size());
    int cur = i0;
    for (std::size_t k = 0; k < load.f.size(); ++k) {
        const double f2 = load.f[k] * load.f[k];
        while (cur < last && !lamfrac::strictly_below(f2 * curve.release[cur], tough.gc[cur]))
            ++cur;
        idx[k] = cur;
    }
    return idx;
}

} // namespace testutil
