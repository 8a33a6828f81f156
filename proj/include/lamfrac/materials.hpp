#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lamfrac {

enum class Orientation { Vertical, Horizontal };
enum class Phase { A, B };

// Anti-plane shear phase: diagonal stiffness diag(mu1, mu2) and toughness gc.
struct MaterialPhase {
    double mu1 = 1.0;
    double mu2 = 1.0;
    double gc = 1.0;

    bool operator==(const MaterialPhase&) const = default;
};

// Diagonal 2x2 stiffness tensor.
struct DiagTensor {
    double mu1 = 0.0;
    double mu2 = 0.0;
};

// Periodic two-phase laminate on (0,L) x (-H,H). Vertical layers are crossed
// by the crack y=0; horizontal layers contain it in an interface (n even).
struct LaminateSpec {
    double length = 1.0;  // L
    double height = 0.5;  // H (half-height)
    int n_layers = 1;     // periods
    double lambda = 0.5;  // volume fraction of phase A
    MaterialPhase phase_a;
    MaterialPhase phase_b;
    Orientation orientation = Orientation::Vertical;
    // Toughness of the bonding interface carrying the crack (horizontal case
    // only). Not derivable from the phases; defaults to phase A.
    std::optional<double> interface_gc;

    void validate() const;  // throws std::invalid_argument listing the violation
    bool homogeneous() const { return phase_a == phase_b; }
    double interface_toughness() const { return interface_gc.value_or(phase_a.gc); }
    const MaterialPhase& phase(Phase p) const { return p == Phase::A ? phase_a : phase_b; }
};

struct HomogenizedModel {
    double mu_hom1 = 0.0;
    double mu_hom2 = 0.0;
    double gc_hom = 0.0;                          // weak* limit of the periodic toughness
    std::optional<double> gc_eff_closed_form;     // set when a closed form exists
};

// Phase of the layer containing (x1,x2); throws "interface point" when the
// point sits on an interface line and "outside domain" when off Omega.
Phase phase_at(const LaminateSpec& spec, double x1, double x2);

// diag(mu_{P,1}, mu_{P,2}) of the layer containing the point.
DiagTensor stiffness_at(const LaminateSpec& spec, double x1, double x2);

// Right-continuous toughness extension along the crack line: off the
// interface set it is the layer value, at an interface it is the value of the
// next layer, and at l = L it is G^c_A. Horizontal orientation returns the
// constant interface toughness.
double toughness_at(const LaminateSpec& spec, double l);

HomogenizedModel homogenized_model(const LaminateSpec& spec);

// True when the vertical closed form applies: mu_A1*mu_A2 == mu_B1*mu_B2 to
// 1e-12 relative.
bool closed_form_applicable(const LaminateSpec& spec);

// lambda*max{gcA, gcB*muB1/muA1} + (1-lambda)*max{gcA*muA1/muB1, gcB}.
// Horizontal orientation: the interface toughness. Throws
// "closed form not applicable" when the stiffness constraint fails.
double effective_toughness_closed_form(const LaminateSpec& spec);

// Interface abscissae in (0,L) for vertical layers (the set Lambda_n without
// the endpoints), sorted.
std::vector<double> interface_abscissae(const LaminateSpec& spec);

// Interface ordinates in (-H,H) for horizontal layers, sorted; contains 0.
std::vector<double> interface_ordinates(const LaminateSpec& spec);

// Sub-layer bounds [lo,hi] of the vertical sub-layer containing l (l strictly
// inside, not on an interface).
struct SubLayer {
    double lo, hi;
    Phase phase;
};
SubLayer sublayer_of(const LaminateSpec& spec, double l);

} // namespace lamfrac
