#include "lamfrac/release.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lamfrac/parallel.hpp"

namespace lamfrac {

namespace {

constexpr int kRightLiminfWindow = 3;  // lattice samples for the interface extension

// phi rising 0 -> 1 on [a0, tip] and falling 1 -> 0 on [tip, b0].
ExtensionProfile hat(const CrackedMesh& m, int a0, int b0) {
    ExtensionProfile p;
    p.phi.assign(m.nx + 1, 0.0);
    const int t = m.tip_ix;
    for (int i = a0 + 1; i < t; ++i)
        p.phi[i] = (m.xs[i] - m.xs[a0]) / (m.xs[t] - m.xs[a0]);
    p.phi[t] = 1.0;
    for (int i = t + 1; i < b0; ++i)
        p.phi[i] = (m.xs[b0] - m.xs[i]) / (m.xs[b0] - m.xs[t]);
    return p;
}

int nearest_index(const std::vector<double>& xs, double x) {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return static_cast<int>(xs.size()) - 1;
    if (it == xs.begin()) return 0;
    const int hi = static_cast<int>(it - xs.begin());
    return (x - xs[hi - 1] <= xs[hi] - x) ? hi - 1 : hi;
}

// indices of the sub-layer edges around the tip (vertical orientation)
std::pair<int, int> sublayer_edge_indices(const CrackedMesh& m) {
    const SubLayer sl = sublayer_of(m.spec, m.crack_tip);
    const double tol = 1e-12 * m.spec.length;
    int ia = nearest_index(m.xs, sl.lo);
    int ib = nearest_index(m.xs, sl.hi);
    if (std::abs(m.xs[ia] - sl.lo) > tol || std::abs(m.xs[ib] - sl.hi) > tol)
        throw std::logic_error("misaligned mesh: sub-layer edge off the grid");
    return {ia, ib};
}

// Material interfaces exist only when the phases differ; for equal phases the
// release is continuous and needs neither the sub-layer profile restriction
// nor the right-liminf extension.
bool has_material_interfaces(const LaminateSpec& spec) {
    return spec.orientation == Orientation::Vertical && !spec.homogeneous();
}

bool is_interface_tip(const LaminateSpec& spec, double l) {
    if (!has_material_interfaces(spec)) return false;
    const double tol = 1e-12 * spec.length;
    for (double a : interface_abscissae(spec))
        if (std::abs(a - l) <= tol) return true;
    return false;
}

} // namespace

const char* to_string(ReleaseFlag f) {
    switch (f) {
    case ReleaseFlag::Regular: return "regular";
    case ReleaseFlag::InterfaceExtended: return "interface-extended";
    default: return "terminal";
    }
}

int ReleaseCurve::index_of(double l) const { return tip_index(tips, l, spec.length); }

namespace {
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const int hi = static_cast<int>(it - xs.begin());
    const double w = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
    return (1.0 - w) * ys[hi - 1] + w * ys[hi];
}
} // namespace

double ReleaseCurve::energy_at(double l) const { return interp(tips, energy, l); }
double ReleaseCurve::release_at(double l) const { return interp(tips, release, l); }

ExtensionProfile canonical_phi_vertical(const CrackedMesh& m) {
    auto [ia, ib] = sublayer_edge_indices(m);
    const int t = m.tip_ix;
    const int a0 = (t - ia >= 2) ? ia + 1 : ia;
    const int b0 = (ib - t >= 2) ? ib - 1 : ib;
    return hat(m, a0, b0);
}

ExtensionProfile canonical_phi_horizontal(const CrackedMesh& m) {
    const double L = m.spec.length;
    const int i1 = nearest_index(m.xs, L / 8.0);
    const int i2 = nearest_index(m.xs, L / 4.0);
    const int i3 = nearest_index(m.xs, 3.0 * L / 4.0);
    const int i4 = nearest_index(m.xs, 7.0 * L / 8.0);
    const int t = m.tip_ix;
    if (t < i2 || t > i3) {
        // off the plateau: any Lipschitz profile with phi(l)=1 and support in
        // (0,L) is admissible here
        return hat(m, t / 2, t + std::max(1, (m.nx - t) / 2));
    }
    ExtensionProfile p;
    p.phi.assign(m.nx + 1, 0.0);
    for (int i = i1 + 1; i < i2; ++i) p.phi[i] = (m.xs[i] - m.xs[i1]) / (m.xs[i2] - m.xs[i1]);
    for (int i = i2; i <= i3; ++i) p.phi[i] = 1.0;
    for (int i = i3 + 1; i < i4; ++i) p.phi[i] = (m.xs[i4] - m.xs[i]) / (m.xs[i4] - m.xs[i3]);
    return p;
}

ExtensionProfile canonical_phi(const CrackedMesh& m) {
    if (has_material_interfaces(m.spec)) return canonical_phi_vertical(m);
    if (m.spec.orientation == Orientation::Horizontal) return canonical_phi_horizontal(m);
    // homogeneous vertical: hat of lattice-proportional half-width
    const int t = m.tip_ix;
    const int hw = std::max(2, m.nx / 16);
    return hat(m, std::max(0, t - hw), std::min(m.nx, t + hw));
}

ExtensionProfile alternate_phi(const CrackedMesh& m) {
    const int t = m.tip_ix;
    if (has_material_interfaces(m.spec)) {
        auto [ia, ib] = sublayer_edge_indices(m);
        const int a0 = (t - ia >= 3) ? ia + 2 : (t - ia >= 2 ? ia + 1 : ia);
        const int b0 = (ib - t >= 3) ? ib - 2 : (ib - t >= 2 ? ib - 1 : ib);
        return hat(m, a0, b0);
    }
    return hat(m, t / 2, t + std::max(1, (m.nx - t) / 2));
}

double release_domain_integral(const CrackedMesh& mesh, const DisplacementField& field,
                               const ExtensionProfile& phi) {
    if (phi.phi.size() != static_cast<std::size_t>(mesh.nx + 1))
        throw std::invalid_argument("profile size must match the x grid");
    if (std::abs(phi.phi[mesh.tip_ix] - 1.0) > 1e-12)
        throw std::invalid_argument("virtual extension must equal 1 at the tip");
    if (has_material_interfaces(mesh.spec)) {
        auto [ia, ib] = sublayer_edge_indices(mesh);
        for (int i = 0; i <= mesh.nx; ++i)
            if (phi.phi[i] != 0.0 && (i <= ia || i >= ib))
                throw std::invalid_argument("invalid virtual extension");
    } else {
        if (phi.phi.front() != 0.0 || phi.phi.back() != 0.0)
            throw std::invalid_argument("invalid virtual extension");
    }
    std::vector<double> w(mesh.nx);
    for (int i = 0; i < mesh.nx; ++i)
        w[i] = (phi.phi[i + 1] - phi.phi[i]) / (mesh.xs[i + 1] - mesh.xs[i]);
    // G = -E'(l), E'(l) = 1/2 int grad(u) C E grad(u)^T phi', E = diag(-1,1)
    return weighted_eshelby_integral(mesh, field, w);
}

double release_fd_oracle(const LaminateSpec& spec, const MeshParams& params, double l, double h,
                         const Datum& datum, double tol) {
    if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
    const std::vector<double> tips = admissible_tips(spec, params);
    tip_index(tips, l, spec.length);
    tip_index(tips, l + h, spec.length);
    if (has_material_interfaces(spec)) {
        const SubLayer sl = sublayer_of(spec, l);
        const SubLayer sr = sublayer_of(spec, l + h);
        if (sl.lo != sr.lo) throw std::invalid_argument("straddles interface");
    } else {
        if (!(l > 0.0 && l + h < spec.length))
            throw std::invalid_argument("tips must lie inside (0, L)");
    }
    CrackedMesh m0 = build_mesh(spec, params, l);
    CrackedMesh m1 = build_mesh(spec, params, l + h);
    const double e0 = condensed_energy(m0, solve(m0, datum, tol));
    const double e1 = condensed_energy(m1, solve(m1, datum, tol));
    return (e0 - e1) / h;
}

ReleaseCurve release_curve(const LaminateSpec& spec, const MeshParams& params,
                           const Datum& datum, double tol, unsigned threads) {
    if (has_material_interfaces(spec) && params.elems_per_layer_x < 4)
        throw std::invalid_argument(
            "release curves need elems_per_layer_x >= 4 so interior columns carry phi'");
    ReleaseCurve c;
    c.spec = spec;
    c.params = params;
    c.datum_desc = datum.description;
    c.tips = admissible_tips(spec, params);
    const std::size_t m = c.tips.size();
    c.energy.assign(m, 0.0);
    c.release.assign(m, 0.0);
    c.flag.assign(m, ReleaseFlag::Regular);

    parallel_for(m, threads, [&](std::size_t i) {
        const double l = c.tips[i];
        CrackedMesh mesh = build_mesh(spec, params, l);
        DisplacementField f = solve(mesh, datum, tol);
        c.energy[i] = condensed_energy(mesh, f);
        if (i + 1 == m) {
            c.flag[i] = ReleaseFlag::Terminal;  // G(L) = 0 by convention
            c.release[i] = 0.0;
        } else if (is_interface_tip(spec, l)) {
            c.flag[i] = ReleaseFlag::InterfaceExtended;  // filled in the second pass
        } else {
            c.release[i] = release_domain_integral(mesh, f, canonical_phi(mesh));
        }
    });

    // numerical right-liminf at the interfaces: min over the next lattice
    // samples (never the terminal convention value)
    for (std::size_t i = 0; i < m; ++i) {
        if (c.flag[i] != ReleaseFlag::InterfaceExtended) continue;
        double v = std::numeric_limits<double>::infinity();
        int used = 0;
        for (std::size_t j = i + 1; j < m && used < kRightLiminfWindow; ++j) {
            if (c.flag[j] != ReleaseFlag::Regular) break;
            v = std::min(v, c.release[j]);
            ++used;
        }
        if (used == 0) throw std::logic_error("no regular sample right of an interface");
        c.release[i] = v;
    }
    return c;
}

double holder_modulus(const ReleaseCurve& curve, double lo, double hi) {
    if (!(0.0 < lo && lo < hi && hi < curve.spec.length))
        throw std::invalid_argument("window outside (0, L)");
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < curve.tips.size(); ++i)
        if (curve.tips[i] >= lo && curve.tips[i] <= hi && curve.flag[i] != ReleaseFlag::Terminal)
            sel.push_back(i);
    if (sel.size() < 2) throw std::invalid_argument("insufficient samples");
    double mod = 0.0;
    for (std::size_t a = 0; a < sel.size(); ++a)
        for (std::size_t b = a + 1; b < sel.size(); ++b) {
            const double dl = std::abs(curve.tips[sel[a]] - curve.tips[sel[b]]);
            mod = std::max(mod, std::abs(curve.release[sel[a]] - curve.release[sel[b]]) /
                                    std::sqrt(dl));
        }
    return mod;
}

} // namespace lamfrac
