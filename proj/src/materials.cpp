#include "lamfrac/materials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lamfrac {

namespace {

constexpr double kInterfaceSnap = 1e-12;   // relative snap for interface hits
constexpr double kClosedFormTol = 1e-12;   // relative tolerance on mu products

void check(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Position of x within one period scaled to [0,1); flags exact hits of the
// period start (0) and the A/B interface (lambda).
struct PeriodPos {
    double frac;
    bool on_period_start;
    bool on_ab_interface;
};

PeriodPos period_position(double x, double extent, int n, double lambda) {
    const double s = x * n / extent;  // in [0, n]
    double frac = s - std::floor(s);
    const double tol = kInterfaceSnap * n;
    if (frac > 1.0 - tol) frac = 0.0;  // rounded up against the next period
    return {frac, frac < tol, std::abs(frac - lambda) < tol};
}

} // namespace

void LaminateSpec::validate() const {
    check(length > 0.0, "length must be positive");
    check(height > 0.0, "height must be positive");
    check(n_layers >= 1, "n_layers must be >= 1");
    check(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0,1)");
    for (const auto* p : {&phase_a, &phase_b}) {
        check(p->mu1 > 0.0 && p->mu2 > 0.0, "shear moduli must be positive");
        check(p->gc > 0.0, "toughness must be positive");
    }
    if (orientation == Orientation::Horizontal)
        check(n_layers % 2 == 0, "horizontal orientation requires an even n_layers");
    if (interface_gc) check(*interface_gc > 0.0, "interface_gc must be positive");
}

Phase phase_at(const LaminateSpec& spec, double x1, double x2) {
    if (x1 <= 0.0 || x1 >= spec.length || x2 <= -spec.height || x2 >= spec.height)
        throw std::invalid_argument("outside domain");
    PeriodPos p = spec.orientation == Orientation::Vertical
                      ? period_position(x1, spec.length, spec.n_layers, spec.lambda)
                      : period_position(x2 + spec.height, spec.height,
                                        spec.n_layers, spec.lambda);
    if (p.on_period_start || p.on_ab_interface)
        throw std::invalid_argument("interface point");
    return p.frac < spec.lambda ? Phase::A : Phase::B;
}

DiagTensor stiffness_at(const LaminateSpec& spec, double x1, double x2) {
    const MaterialPhase& m = spec.phase(phase_at(spec, x1, x2));
    return {m.mu1, m.mu2};
}

double toughness_at(const LaminateSpec& spec, double l) {
    if (l < 0.0 || l > spec.length) throw std::domain_error("tip abscissa outside [0, L]");
    if (spec.orientation == Orientation::Horizontal) return spec.interface_toughness();
    if (l == spec.length) return spec.phase_a.gc;  // G^c_n(L) = G^c_A
    PeriodPos p = period_position(l, spec.length, spec.n_layers, spec.lambda);
    if (p.on_period_start) return spec.phase_a.gc;   // right limit enters an A layer
    if (p.on_ab_interface) return spec.phase_b.gc;   // right limit enters a B layer
    return p.frac < spec.lambda ? spec.phase_a.gc : spec.phase_b.gc;
}

HomogenizedModel homogenized_model(const LaminateSpec& spec) {
    const MaterialPhase& a = spec.phase_a;
    const MaterialPhase& b = spec.phase_b;
    const double la = spec.lambda;
    HomogenizedModel h;
    if (spec.orientation == Orientation::Vertical) {
        h.mu_hom1 = 1.0 / (la / a.mu1 + (1.0 - la) / b.mu1);  // harmonic across layers
        h.mu_hom2 = la * a.mu2 + (1.0 - la) * b.mu2;          // arithmetic along layers
    } else {
        h.mu_hom1 = la * a.mu1 + (1.0 - la) * b.mu1;
        h.mu_hom2 = 1.0 / (la / a.mu2 + (1.0 - la) / b.mu2);
    }
    h.gc_hom = la * a.gc + (1.0 - la) * b.gc;
    if (spec.orientation == Orientation::Horizontal || closed_form_applicable(spec))
        h.gc_eff_closed_form = effective_toughness_closed_form(spec);
    return h;
}

bool closed_form_applicable(const LaminateSpec& spec) {
    if (spec.orientation != Orientation::Vertical) return false;
    const double pa = spec.phase_a.mu1 * spec.phase_a.mu2;
    const double pb = spec.phase_b.mu1 * spec.phase_b.mu2;
    return std::abs(pa - pb) <= kClosedFormTol * std::max(pa, pb);
}

double effective_toughness_closed_form(const LaminateSpec& spec) {
    if (spec.orientation == Orientation::Horizontal) return spec.interface_toughness();
    if (!closed_form_applicable(spec))
        throw std::invalid_argument("closed form not applicable");
    const MaterialPhase& a = spec.phase_a;
    const MaterialPhase& b = spec.phase_b;
    const double la = spec.lambda;
    return la * std::max(a.gc, b.gc * b.mu1 / a.mu1) +
           (1.0 - la) * std::max(a.gc * a.mu1 / b.mu1, b.gc);
}

std::vector<double> interface_abscissae(const LaminateSpec& spec) {
    std::vector<double> out;
    const double ln = spec.length / spec.n_layers;
    for (int k = 0; k < spec.n_layers; ++k) {
        if (k > 0) out.push_back(k * ln);
        out.push_back((k + spec.lambda) * ln);
    }
    return out;
}

std::vector<double> interface_ordinates(const LaminateSpec& spec) {
    std::vector<double> out;
    const double hn = spec.height / spec.n_layers;
    const int periods = 2 * spec.n_layers;  // across (-H, H)
    for (int k = 0; k < periods; ++k) {
        const double base = -spec.height + k * hn;
        if (k > 0) out.push_back(base);
        out.push_back(base + spec.lambda * hn);
    }
    return out;
}

SubLayer sublayer_of(const LaminateSpec& spec, double l) {
    if (spec.orientation != Orientation::Vertical)
        throw std::invalid_argument("sublayer_of requires vertical layers");
    PeriodPos p = period_position(l, spec.length, spec.n_layers, spec.lambda);
    if (p.on_period_start || p.on_ab_interface)
        throw std::invalid_argument("interface point");
    const double ln = spec.length / spec.n_layers;
    const int k = static_cast<int>(std::floor(l / ln));
    const double base = k * ln;
    if (p.frac < spec.lambda) return {base, base + spec.lambda * ln, Phase::A};
    return {base + spec.lambda * ln, base + ln, Phase::B};
}

} // namespace lamfrac
