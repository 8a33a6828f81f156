#pragma once

#include <span>
#include <vector>

#include "lamfrac/release.hpp"

namespace lamfrac {

// Load factor f sampled on a time grid; f(0) = 0.
struct LoadProgram {
    std::vector<double> times;
    std::vector<double> f;

    bool monotone() const;  // strictly increasing samples
    void validate() const;

    static LoadProgram linear(double t_end, int steps, double peak);
    static LoadProgram triangle(double t_end, int steps, double peak);
    static LoadProgram from_table(std::span<const double> t, std::span<const double> f,
                                  int steps);
};

// G^c on the tip lattice (right-continuous extension values).
struct TipToughness {
    std::vector<double> tips;
    std::vector<double> gc;
};
TipToughness lattice_toughness(const LaminateSpec& spec, std::span<const double> tips);

struct JumpRecord {
    int time_index = 0;
    double t = 0.0;
    double l_minus = 0.0;
    double l_plus = 0.0;
};

// Quasi-static trace with its energy ledger.
struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> f;
    std::vector<double> tip;
    std::vector<int> tip_index;       // index into the lattice
    std::vector<JumpRecord> jumps;
    // ledger, one entry per time sample
    std::vector<double> elastic;      // E(t, l(t)) = f^2 E(l)
    std::vector<double> dissipated;   // D(l(t)) = int_{L0}^{l} G^c
    std::vector<double> work;         // int_0^t 2 f f' E(l) dtau
    std::vector<double> jump_loss;    // sum of [[F]] over jumps up to t (<= 0)
    double initial_tip = 0.0;
};

// Strict comparison with ties (1e-14 relative) treated as equality, i.e. NOT
// strictly below; the evolution sits at equality points.
bool strictly_below(double lhs, double rhs);

// Representation formula l(t) = min{ l in lattice, l >= L0 : f^2(t) G(l) < G^c(l) },
// with G(L) = 0 guaranteeing a nonempty candidate set. Monotone loads only.
EvolutionTrace evolve(const ReleaseCurve& release, const TipToughness& tough,
                      const LoadProgram& load, double L0);

// Non-monotone loads: compose the monotone evolution with the running
// envelope fbar(t) = max_{tau<=t} |f(tau)|.
EvolutionTrace nonmonotone_wrap(const ReleaseCurve& release, const TipToughness& tough,
                                const LoadProgram& load, double L0);

struct GriffithViolation {
    int condition;  // 1, 2 or 3
    double t;
    double l;
    double lhs, rhs;
};
struct GriffithReport {
    bool pass = true;
    std::vector<GriffithViolation> violations;
};

// Checks i) f^2 G(l(t)) <= G^c + tol at all samples, ii) the tip never leaves
// a point that is still strictly stable at the later sample, iii) at every
// jump f^2 G >= G^c - tol across the traversed lattice points. tol is
// relative.
GriffithReport griffith_check(const EvolutionTrace& trace, const ReleaseCurve& release,
                              const TipToughness& tough, double tol);

// max_t |E + D - work - jump_loss| / max(1, peak elastic energy)
double energy_identity_residual(const EvolutionTrace& trace);

struct JumpCost {
    JumpRecord jump;
    double finsler_cost;  // sum over cells of [G^c + (f^2 G - G^c)_+] dl
    double energy_drop;   // -[[E]] >= 0
};
std::vector<JumpCost> jump_cost(const EvolutionTrace& trace, const ReleaseCurve& release,
                                const TipToughness& tough);

// time-average |a(t) - b(t)| skipping +-2 samples around each jump of b
double evolution_distance(const EvolutionTrace& a, const EvolutionTrace& b);

} // namespace lamfrac
