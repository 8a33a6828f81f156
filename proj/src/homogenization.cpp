#include "lamfrac/homogenization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lamfrac {

namespace {

double interp_clamped(std::span<const double> xs, std::span<const double> ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
    return (1.0 - w) * ys[hi - 1] + w * ys[hi];
}

// piecewise-linear layer rescaling phi_n: slope alpha in A layers, 1 in B
double phi_n_of(const LaminateSpec& spec, double alpha, double l) {
    const int n = spec.n_layers;
    const double ln = spec.length / n;
    const double la = spec.lambda * ln;
    const int k = std::min(n - 1, static_cast<int>(std::floor(l / ln)));
    const double base = k * ln;
    const double period_image = alpha * la + (ln - la);
    double v = k * period_image;
    const double r = l - base;
    if (r <= la)
        v += alpha * r;
    else
        v += alpha * la + (r - la);
    return v;
}

double phi_n_slope(const LaminateSpec& spec, double alpha, double l) {
    const SubLayer sl = sublayer_of(spec, l);
    return sl.phase == Phase::A ? alpha : 1.0;
}

} // namespace

void StudyConfig::validate() const {
    spec.validate();
    params.validate();
    load.validate();
    if (n_list.empty()) throw std::invalid_argument("n_list must not be empty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("n_list must be strictly increasing");
    if (!(l0 > 0.0 && l0 < spec.length))
        throw std::invalid_argument("initial tip must lie in (0, L)");
    for (double p : probes) {
        if (!(p > l0 && p < spec.length))
            throw std::invalid_argument("probe points must lie in (l0, L)");
        if (spec.orientation == Orientation::Vertical) {
            // probes sit off the interface set of the coarsest run
            LaminateSpec coarse = spec;
            coarse.n_layers = n_list.front();
            for (double a : interface_abscissae(coarse))
                if (std::abs(a - p) < 1e-9 * spec.length)
                    throw std::invalid_argument(
                        "probe points must lie off the coarsest interface set");
        }
    }
    if (!window_schedule.empty()) {
        if (window_schedule.size() != n_list.size())
            throw std::invalid_argument("window_schedule must match n_list");
        for (std::size_t i = 1; i < window_schedule.size(); ++i)
            if (window_schedule[i] > window_schedule[i - 1])
                throw std::invalid_argument("window_schedule must be non-increasing");
    }
}

double StudyConfig::window_for(std::size_t i) const {
    if (!window_schedule.empty()) return window_schedule[i];
    return spec.length / (2.0 * n_list[i]);
}

RatioEstimate gamma_liminf_ratio(std::span<const ReleaseCurve> curves,
                                 std::span<const TipToughness> toughs, double probe,
                                 std::span<const double> windows,
                                 const ReleaseCurve* hom) {
    if (curves.size() != toughs.size() || curves.size() != windows.size())
        throw std::invalid_argument("curves, toughness and windows must align");
    RatioEstimate est;
    est.probe = probe;
    const double g_ref = hom ? hom->release_at(probe) : 0.0;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const ReleaseCurve& cur = curves[c];
        const TipToughness& tough = toughs[c];
        const double delta = windows[c];
        double best = std::numeric_limits<double>::infinity();
        double best_raw = best;
        for (std::size_t i = 0; i < cur.tips.size(); ++i) {
            if (std::abs(cur.tips[i] - probe) > delta) continue;
            // interface-extended samples are window minima of the regular
            // samples to their right; the regular samples themselves already
            // dominate them in this min, without the extra rightward drift
            if (cur.flag[i] != ReleaseFlag::Regular) continue;
            const double raw = cur.release[i] / tough.gc[i];
            best_raw = std::min(best_raw, raw);
            double drift = 1.0;
            if (hom) {
                const double g_here = hom->release_at(cur.tips[i]);
                if (std::abs(g_here) > 1e-12 * std::abs(g_ref)) drift = g_ref / g_here;
            }
            best = std::min(best, raw * drift);
        }
        if (!std::isfinite(best))
            throw std::invalid_argument("window contains no lattice point");
        est.w_n.push_back(best);
        est.w_raw.push_back(best_raw);
    }
    return est;
}

LaminateSpec homogenized_spec(const LaminateSpec& spec, int lattice_layers) {
    const HomogenizedModel h = homogenized_model(spec);
    LaminateSpec out = spec;
    out.n_layers = lattice_layers;
    out.phase_a = {h.mu_hom1, h.mu_hom2, h.gc_hom};
    out.phase_b = out.phase_a;
    return out;
}

StudyResult run_study(const StudyConfig& cfg, const Datum& datum) {
    cfg.validate();
    StudyResult res;
    res.config = cfg;
    res.model = homogenized_model(cfg.spec);

    for (int n : cfg.n_list) {
        LaminateSpec sn = cfg.spec;
        sn.n_layers = n;
        res.curves.push_back(release_curve(sn, cfg.params, datum, cfg.tol, cfg.threads));
        res.toughs.push_back(lattice_toughness(sn, res.curves.back().tips));
        res.traces.push_back(evolve(res.curves.back(), res.toughs.back(), cfg.load, cfg.l0));
        res.identity_residual.push_back(energy_identity_residual(res.traces.back()));
    }

    const LaminateSpec hs = homogenized_spec(cfg.spec, cfg.n_list.back());
    res.hom_curve = release_curve(hs, cfg.params, datum, cfg.tol, cfg.threads);

    std::vector<double> windows;
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        windows.push_back(cfg.window_for(i));
        // the window must span at least two lattice cells
        const auto& tips = res.curves[i].tips;
        double max_cell = 0.0;
        for (std::size_t k = 1; k < tips.size(); ++k)
            max_cell = std::max(max_cell, tips[k] - tips[k - 1]);
        if (windows.back() < 2.0 * max_cell)
            throw std::invalid_argument("liminf window below two lattice cells");
    }
    for (double p : cfg.probes) {
        RatioEstimate r =
            gamma_liminf_ratio(res.curves, res.toughs, p, windows, &res.hom_curve);
        EffEstimate e;
        e.l = p;
        e.gamma_ratio = r.value();
        e.g_hom = res.hom_curve.release_at(p);
        e.w_n = r.w_n;
        if (std::abs(e.g_hom) < 1e-14 || e.gamma_ratio <= 0.0) {
            e.defined = false;  // release vanishes, the ratio carries no information
            e.gc_eff = std::numeric_limits<double>::quiet_NaN();
        } else {
            e.gc_eff = e.g_hom / e.gamma_ratio;
        }
        res.estimates.push_back(e);
    }

    // effective toughness for the homogenized evolution: closed form when it
    // exists, else the probe-interpolated estimate
    res.hom_tough.tips = res.hom_curve.tips;
    res.hom_tough.gc.resize(res.hom_curve.tips.size());
    if (cfg.spec.orientation == Orientation::Horizontal || closed_form_applicable(cfg.spec)) {
        res.gc_eff_from_closed_form = true;
        const double gce = effective_toughness_closed_form(cfg.spec);
        std::fill(res.hom_tough.gc.begin(), res.hom_tough.gc.end(), gce);
    } else {
        std::vector<double> pl, pv;
        for (const EffEstimate& e : res.estimates)
            if (e.defined) {
                pl.push_back(e.l);
                pv.push_back(e.gc_eff);
            }
        if (pl.empty())
            throw std::runtime_error("effective toughness unavailable");
        for (std::size_t i = 0; i < res.hom_tough.tips.size(); ++i)
            res.hom_tough.gc[i] = interp_clamped(pl, pv, res.hom_tough.tips[i]);
    }
    res.hom_trace = evolve(res.hom_curve, res.hom_tough, cfg.load, cfg.l0);

    for (const EvolutionTrace& tr : res.traces)
        res.d_n.push_back(evolution_distance(tr, res.hom_trace));

    // min_n G_n <= G_hom <= max_n G_n sampled at the hom lattice interior
    const double tol = 0.05;
    for (std::size_t i = 0; i < res.hom_curve.tips.size(); ++i) {
        const double l = res.hom_curve.tips[i];
        if (l < cfg.l0 || res.hom_curve.flag[i] != ReleaseFlag::Regular) continue;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const ReleaseCurve& c : res.curves) {
            const double g = c.release_at(l);
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        const double gh = res.hom_curve.release[i];
        ++res.sandwich_samples;
        if (lo > gh + tol * std::abs(gh) || hi < gh - tol * std::abs(gh))
            ++res.sandwich_violations;
    }
    return res;
}

RescaleReport rescale_verify(const LaminateSpec& spec, const MeshParams& params,
                             const Datum& datum, double tol, unsigned threads) {
    if (spec.orientation != Orientation::Vertical || !closed_form_applicable(spec))
        throw std::invalid_argument("rescaling inapplicable");
    RescaleReport rep;
    const double alpha = spec.phase_b.mu1 / spec.phase_a.mu1;
    const double alpha_hom = spec.lambda * alpha + (1.0 - spec.lambda);
    rep.alpha = alpha;
    rep.alpha_hom = alpha_hom;

    const ReleaseCurve base = release_curve(spec, params, datum, tol, threads);

    // constant-coefficient image problem on (0, alpha_hom L): the A layers are
    // stretched by alpha and the stiffness becomes diag(muB1, muB2) everywhere
    LaminateSpec hat = spec;
    hat.length = alpha_hom * spec.length;
    hat.phase_a = {spec.phase_b.mu1, spec.phase_b.mu2, spec.phase_a.gc};
    hat.phase_b = hat.phase_a;
    const ReleaseCurve ghat = release_curve(hat, params, datum, tol, threads);

    LaminateSpec hom = homogenized_spec(spec, spec.n_layers);
    const ReleaseCurve ghom = release_curve(hom, params, datum, tol, threads);

    // probes: the center lattice node of every sub-layer in the middle of the
    // domain (edges excluded to stay clear of boundary effects)
    const int epl = params.elems_per_layer_x;
    for (std::size_t i = 0; i < base.tips.size(); ++i) {
        const int cell = static_cast<int>(i) % epl;  // position within a sub-layer
        if (cell != epl / 2 - 1) continue;
        const double l = base.tips[i];
        if (l < spec.length / 8.0 || l > 7.0 * spec.length / 8.0) continue;
        rep.probes.push_back(l);
        const double g_n = base.release[i];
        const double mapped = ghat.release_at(phi_n_of(spec, alpha, l)) *
                              phi_n_slope(spec, alpha, l);
        rep.max_rel_layered =
            std::max(rep.max_rel_layered, std::abs(g_n - mapped) / std::abs(g_n));
        const double gh = ghom.release_at(l);
        const double mapped_hom = ghat.release_at(alpha_hom * l) * alpha_hom;
        rep.max_rel_hom =
            std::max(rep.max_rel_hom, std::abs(gh - mapped_hom) / std::abs(gh));
    }
    if (rep.probes.empty()) throw std::invalid_argument("no admissible rescaling probes");
    return rep;
}

TougheningReport toughening_report(const StudyResult& result, double probe_tol) {
    TougheningReport rep;
    const double gc_hom = result.model.gc_hom;
    const LoadProgram& load = result.config.load;
    const double f2T = load.f.back() * load.f.back();
    const double gmax = std::max(result.config.spec.phase_a.gc, result.config.spec.phase_b.gc);
    const double gmin = std::min(result.config.spec.phase_a.gc, result.config.spec.phase_b.gc);
    const double reach = *std::max_element(result.hom_trace.tip.begin(),
                                           result.hom_trace.tip.end());

    for (const EffEstimate& e : result.estimates) {
        if (!e.defined) continue;
        if (gc_hom > e.gc_eff * (1.0 + probe_tol)) rep.hom_le_eff = false;
        if (e.l <= reach) {
            const double bound = f2T * e.g_hom * gmax / gmin;
            if (e.gc_eff > bound * (1.0 + probe_tol)) rep.upper_bound_ok = false;
        }
    }

    // longest jump-free advancing stretch of the homogenized trace; advances
    // below 4 lattice cells are time-grid artifacts of a continuous limit
    // evolution, not instabilities, and do not cut the interval
    const EvolutionTrace& hom = result.hom_trace;
    const std::size_t nt = hom.times.size();
    std::vector<char> is_jump(nt, 0);
    for (const JumpRecord& j : hom.jumps) {
        const int ia = result.hom_curve.index_of(j.l_minus);
        const double cell = result.hom_curve.tips[ia + 1] - result.hom_curve.tips[ia];
        if (j.l_plus - j.l_minus >= 4.0 * cell) is_jump[j.time_index] = 1;
    }
    std::size_t best_a = 0, best_b = 0;
    std::size_t a = 0;
    for (std::size_t k = 1; k <= nt; ++k) {
        if (k == nt || is_jump[k]) {
            if (hom.tip[k - 1] - hom.tip[a] > hom.tip[best_b] - hom.tip[best_a]) {
                best_a = a;
                best_b = k - 1;
            }
            a = k;
        }
    }
    // trim the onset so the micro traces have locked onto the hom trace
    std::size_t k1 = best_a;
    while (k1 < best_b && hom.tip[k1] <= hom.tip[best_a]) ++k1;
    const std::size_t span = best_b - k1;
    k1 += span / 10;

    rep.t1 = hom.times[k1];
    rep.t2 = hom.times[best_b];
    const EvolutionTrace& fine = result.traces.back();
    rep.jump_dissipation = -(fine.jump_loss[best_b] - fine.jump_loss[k1]);
    const double gc_eff_mid =
        result.hom_tough.gc[(result.hom_tough.gc.size()) / 2];
    rep.predicted = (gc_eff_mid - gc_hom) * (hom.tip[best_b] - hom.tip[k1]);
    rep.rel_err = std::abs(rep.jump_dissipation - rep.predicted) /
                  std::max(std::abs(rep.predicted), 1e-30);
    return rep;
}

LocalEnergyReport local_energy_convergence(const LaminateSpec& spec, const MeshParams& params,
                                           std::span<const int> n_list, double win_lo,
                                           double win_hi, double l, const Datum& datum,
                                           double tol, unsigned threads) {
    (void)threads;
    if (spec.orientation != Orientation::Horizontal)
        throw std::invalid_argument("local energy convergence is a horizontal-layer check");
    if (!(0.0 < win_lo && win_lo < win_hi && win_hi < spec.length))
        throw std::invalid_argument("window must lie inside (0, L)");
    LocalEnergyReport rep;

    const LaminateSpec hs = homogenized_spec(spec, n_list.back());
    CrackedMesh hmesh = build_mesh(hs, params, l);
    DisplacementField hf = solve(hmesh, datum, tol);
    const GradientSplit hw = windowed_gradient_energy(hmesh, hf, win_lo, win_hi);
    rep.hom_total = hw.mu1_part + hw.mu2_part;
    rep.hom_mu1 = hw.mu1_part;
    rep.hom_energy = condensed_energy(hmesh, hf);

    for (int n : n_list) {
        LaminateSpec sn = spec;
        sn.n_layers = n;
        CrackedMesh mesh = build_mesh(sn, params, l);
        DisplacementField f = solve(mesh, datum, tol);
        const GradientSplit w = windowed_gradient_energy(mesh, f, win_lo, win_hi);
        rep.n_list.push_back(n);
        rep.gap_total.push_back(std::abs(w.mu1_part + w.mu2_part - rep.hom_total));
        rep.gap_mu1.push_back(std::abs(w.mu1_part - rep.hom_mu1));
        rep.gap_energy.push_back(std::abs(condensed_energy(mesh, f) - rep.hom_energy));
    }
    return rep;
}

} // namespace lamfrac
