#include "lamfrac/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lamfrac {

namespace {

constexpr double kTie = 1e-14;

// dissipated energy cumulated over lattice cells from the initial tip; the
// right-continuous G^c makes the left endpoint the cell value
std::vector<double> cumulative_dissipation(const TipToughness& tough, int i0) {
    const std::size_t m = tough.tips.size();
    std::vector<double> d(m, 0.0);
    for (std::size_t i = i0 + 1; i < m; ++i)
        d[i] = d[i - 1] + tough.gc[i - 1] * (tough.tips[i] - tough.tips[i - 1]);
    for (int i = i0 - 1; i >= 0; --i)
        d[i] = d[i + 1] - tough.gc[i] * (tough.tips[i + 1] - tough.tips[i]);
    return d;
}

struct FormulaTrace {
    std::vector<int> idx;
    std::vector<JumpRecord> jumps;
};

// Representation formula driven by an arbitrary non-decreasing sequence of
// squared load factors.
FormulaTrace formula_trace(const ReleaseCurve& release, const TipToughness& tough,
                           std::span<const double> times, std::span<const double> f2,
                           int i0) {
    const std::size_t m = release.tips.size();
    FormulaTrace out;
    out.idx.resize(f2.size());
    int cur = i0;
    for (std::size_t k = 0; k < f2.size(); ++k) {
        int i = (k == 0) ? i0 : cur;
        while (i < static_cast<int>(m) - 1 &&
               !strictly_below(f2[k] * release.release[i], tough.gc[i]))
            ++i;
        // the candidate set is never empty: G(L) = 0 < G^c(L)
        if (k > 0 && i > cur) {
            const int adv = i - cur;
            // a single-cell advance is a jump only if the traversed point was
            // already strictly unstable at the previous sample; equality
            // tracking is quasi-continuous propagation
            bool unstable_before =
                f2[k - 1] * release.release[cur] > tough.gc[cur] * (1.0 + 1e-12);
            if (adv >= 2 || unstable_before)
                out.jumps.push_back({static_cast<int>(k), times[k], release.tips[cur],
                                     release.tips[i]});
        }
        cur = i;
        out.idx[k] = i;
    }
    return out;
}

EvolutionTrace assemble_trace(const ReleaseCurve& release, const TipToughness& tough,
                              std::span<const double> times, std::span<const double> f,
                              const FormulaTrace& ft, int i0) {
    EvolutionTrace tr;
    tr.times.assign(times.begin(), times.end());
    tr.f.assign(f.begin(), f.end());
    tr.tip_index = ft.idx;
    tr.jumps = ft.jumps;
    tr.initial_tip = release.tips[i0];
    const std::size_t nt = times.size();
    tr.tip.resize(nt);
    tr.elastic.resize(nt);
    tr.dissipated.resize(nt);
    tr.work.assign(nt, 0.0);
    tr.jump_loss.assign(nt, 0.0);

    const std::vector<double> dcum = cumulative_dissipation(tough, i0);

    std::vector<double> power(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        const int i = ft.idx[k];
        tr.tip[k] = release.tips[i];
        tr.elastic[k] = f[k] * f[k] * release.energy[i];
        tr.dissipated[k] = dcum[i];
        double fdot;
        if (k == 0)
            fdot = (f[1] - f[0]) / (times[1] - times[0]);
        else if (k + 1 == nt)
            fdot = (f[k] - f[k - 1]) / (times[k] - times[k - 1]);
        else
            fdot = (f[k + 1] - f[k - 1]) / (times[k + 1] - times[k - 1]);
        power[k] = 2.0 * f[k] * fdot * release.energy[i];
    }
    for (std::size_t k = 1; k < nt; ++k)
        tr.work[k] = tr.work[k - 1] +
                     0.5 * (power[k] + power[k - 1]) * (times[k] - times[k - 1]);

    double acc = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < nt; ++k) {
        while (j < tr.jumps.size() && tr.jumps[j].time_index <= static_cast<int>(k)) {
            const JumpRecord& jr = tr.jumps[j];
            const double f2 = f[jr.time_index] * f[jr.time_index];
            const int ia = release.index_of(jr.l_minus);
            const int ib = release.index_of(jr.l_plus);
            const double dE = f2 * (release.energy[ib] - release.energy[ia]);
            const double dD = dcum[ib] - dcum[ia];
            acc += dE + dD;  // [[F]] <= 0
            ++j;
        }
        tr.jump_loss[k] = acc;
    }
    return tr;
}

void check_coverage(const ReleaseCurve& release, const TipToughness& tough, double L0,
                    int& i0) {
    if (release.tips.size() != tough.tips.size())
        throw std::invalid_argument("release and toughness lattices differ");
    if (release.tips.empty()) throw std::invalid_argument("empty release curve");
    i0 = release.index_of(L0);
}

} // namespace

bool strictly_below(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return lhs < rhs - kTie * scale;
}

bool LoadProgram::monotone() const {
    for (std::size_t k = 1; k < f.size(); ++k)
        if (f[k] < f[k - 1]) return false;
    return true;
}

void LoadProgram::validate() const {
    if (times.size() != f.size() || times.size() < 2)
        throw std::invalid_argument("load program needs matching time/f grids, >= 2 samples");
    if (f[0] != 0.0) throw std::invalid_argument("load must start from f(0) = 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1]) throw std::invalid_argument("time grid must increase");
}

LoadProgram LoadProgram::linear(double t_end, int steps, double peak) {
    LoadProgram p;
    p.times.resize(steps + 1);
    p.f.resize(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        p.times[k] = t_end * k / steps;
        p.f[k] = peak * k / steps;
    }
    return p;
}

LoadProgram LoadProgram::triangle(double t_end, int steps, double peak) {
    LoadProgram p;
    p.times.resize(steps + 1);
    p.f.resize(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        p.times[k] = t_end * k / steps;
        const double s = double(k) / steps;
        p.f[k] = peak * (s <= 0.5 ? 2.0 * s : 2.0 * (1.0 - s));
    }
    return p;
}

LoadProgram LoadProgram::from_table(std::span<const double> t, std::span<const double> fv,
                                    int steps) {
    if (t.size() != fv.size() || t.size() < 2)
        throw std::invalid_argument("load table needs at least two samples");
    LoadProgram p;
    p.times.resize(steps + 1);
    p.f.resize(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        const double tk = t.front() + (t.back() - t.front()) * k / steps;
        auto it = std::upper_bound(t.begin(), t.end(), tk);
        std::size_t hi = std::min<std::size_t>(t.size() - 1,
                                               static_cast<std::size_t>(it - t.begin()));
        if (hi == 0) hi = 1;
        const double w = (tk - t[hi - 1]) / (t[hi] - t[hi - 1]);
        p.times[k] = tk;
        p.f[k] = (1.0 - w) * fv[hi - 1] + w * fv[hi];
    }
    return p;
}

TipToughness lattice_toughness(const LaminateSpec& spec, std::span<const double> tips) {
    TipToughness t;
    t.tips.assign(tips.begin(), tips.end());
    t.gc.resize(tips.size());
    for (std::size_t i = 0; i < tips.size(); ++i) t.gc[i] = toughness_at(spec, tips[i]);
    return t;
}

EvolutionTrace evolve(const ReleaseCurve& release, const TipToughness& tough,
                      const LoadProgram& load, double L0) {
    load.validate();
    if (!load.monotone()) throw std::invalid_argument("use nonmonotone_wrap");
    int i0 = 0;
    check_coverage(release, tough, L0, i0);
    std::vector<double> f2(load.f.size());
    for (std::size_t k = 0; k < load.f.size(); ++k) f2[k] = load.f[k] * load.f[k];
    FormulaTrace ft = formula_trace(release, tough, load.times, f2, i0);
    return assemble_trace(release, tough, load.times, load.f, ft, i0);
}

EvolutionTrace nonmonotone_wrap(const ReleaseCurve& release, const TipToughness& tough,
                                const LoadProgram& load, double L0) {
    load.validate();
    int i0 = 0;
    check_coverage(release, tough, L0, i0);
    std::vector<double> fbar2(load.f.size());
    double run = 0.0;
    for (std::size_t k = 0; k < load.f.size(); ++k) {
        run = std::max(run, std::abs(load.f[k]));
        fbar2[k] = run * run;
    }
    FormulaTrace ft = formula_trace(release, tough, load.times, fbar2, i0);
    return assemble_trace(release, tough, load.times, load.f, ft, i0);
}

GriffithReport griffith_check(const EvolutionTrace& trace, const ReleaseCurve& release,
                              const TipToughness& tough, double tol) {
    GriffithReport rep;
    auto scale = [](double a, double b) { return std::max({std::abs(a), std::abs(b), 1.0}); };
    const std::size_t nt = trace.times.size();
    for (std::size_t k = 0; k < nt; ++k) {
        const int i = trace.tip_index[k];
        const double f2 = trace.f[k] * trace.f[k];
        const double lhs = f2 * release.release[i];
        const double rhs = tough.gc[i];
        if (lhs > rhs + tol * scale(lhs, rhs))
            rep.violations.push_back({1, trace.times[k], trace.tip[k], lhs, rhs});
        if (k + 1 < nt && trace.tip_index[k + 1] > i) {
            // leaving a point that is strictly stable even at the later load
            // contradicts the vanishing right derivative
            const double f2n = trace.f[k + 1] * trace.f[k + 1];
            const double lhs_n = f2n * release.release[i];
            if (lhs_n < rhs - tol * scale(lhs_n, rhs))
                rep.violations.push_back({2, trace.times[k], trace.tip[k], lhs_n, rhs});
        }
    }
    for (const JumpRecord& j : trace.jumps) {
        const double f2 = trace.f[j.time_index] * trace.f[j.time_index];
        const int ia = release.index_of(j.l_minus);
        const int ib = release.index_of(j.l_plus);
        for (int i = ia; i < ib; ++i) {
            const double lhs = f2 * release.release[i];
            const double rhs = tough.gc[i];
            if (lhs < rhs - tol * scale(lhs, rhs))
                rep.violations.push_back({3, j.t, release.tips[i], lhs, rhs});
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

double energy_identity_residual(const EvolutionTrace& trace) {
    double peak = 1.0, worst = 0.0;
    for (double e : trace.elastic) peak = std::max(peak, std::abs(e));
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        const double r =
            trace.elastic[k] + trace.dissipated[k] - trace.work[k] - trace.jump_loss[k];
        worst = std::max(worst, std::abs(r));
    }
    return worst / peak;
}

std::vector<JumpCost> jump_cost(const EvolutionTrace& trace, const ReleaseCurve& release,
                                const TipToughness& tough) {
    std::vector<JumpCost> out;
    for (const JumpRecord& j : trace.jumps) {
        const double f2 = trace.f[j.time_index] * trace.f[j.time_index];
        const int ia = release.index_of(j.l_minus);
        const int ib = release.index_of(j.l_plus);
        double cost = 0.0;
        for (int i = ia; i < ib; ++i) {
            const double dl = release.tips[i + 1] - release.tips[i];
            const double excess = std::max(f2 * release.release[i] - tough.gc[i], 0.0);
            cost += (tough.gc[i] + excess) * dl;
        }
        const double drop = f2 * (release.energy[ia] - release.energy[ib]);
        out.push_back({j, cost, drop});
    }
    return out;
}

double evolution_distance(const EvolutionTrace& a, const EvolutionTrace& b) {
    if (a.times.size() != b.times.size())
        throw std::invalid_argument("traces must share the time grid");
    const std::size_t nt = a.times.size();
    std::vector<char> skip(nt, 0);
    for (const JumpRecord& j : b.jumps)
        for (int k = j.time_index - 2; k <= j.time_index + 2; ++k)
            if (k >= 0 && k < static_cast<int>(nt)) skip[k] = 1;
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < nt; ++k) {
        if (skip[k]) continue;
        acc += std::abs(a.tip[k] - b.tip[k]);
        ++cnt;
    }
    return cnt == 0 ? 0.0 : acc / double(cnt);
}

} // namespace lamfrac
