#pragma once

#include <span>
#include <string>
#include <vector>

#include "lamfrac/solver.hpp"

namespace lamfrac {

enum class ReleaseFlag { Regular, InterfaceExtended, Terminal };

const char* to_string(ReleaseFlag f);

// Sampled condensed energy and energy release over the admissible tip
// lattice. At interface abscissae the release carries the numerical
// right-liminf extension; at l = L it is 0 by convention.
struct ReleaseCurve {
    std::vector<double> tips;
    std::vector<double> energy;
    std::vector<double> release;
    std::vector<ReleaseFlag> flag;

    LaminateSpec spec;
    MeshParams params;
    std::string datum_desc;

    double energy_at(double l) const;   // linear interpolation on the lattice
    double release_at(double l) const;
    int index_of(double l) const;       // exact lattice member, throws otherwise
};

// Piecewise-linear virtual-extension profile given by nodal values on the
// mesh x grid.
struct ExtensionProfile {
    std::vector<double> phi;  // size nx+1
};

// Hat supported in the open sub-layer containing the tip: zero up to one cell
// past the left sub-layer edge, 1 at the tip, zero one cell before the right
// edge (margins shrink to zero for tips one cell from an edge).
ExtensionProfile canonical_phi_vertical(const CrackedMesh& mesh);

// Trapezoid with ramps on (r, 2r) and (L-2r, L-r), r = L/8, vertices snapped
// to the lattice; falls back to a hat for tips off the plateau.
ExtensionProfile canonical_phi_horizontal(const CrackedMesh& mesh);

// Profile used by release_curve: the sub-layer hat when material interfaces
// restrict the support, the horizontal trapezoid for horizontal layers, and a
// lattice-proportional hat for homogeneous vertical specs (n-independent and
// tight against the finite-difference oracle).
ExtensionProfile canonical_phi(const CrackedMesh& mesh);

// Alternate admissible profile, used for the phi-independence check.
ExtensionProfile alternate_phi(const CrackedMesh& mesh);

// G(l) = -E'(l) evaluated as -1/2 int grad(u) C E grad(u)^T phi' dx,
// E = diag(-1, 1). Validates phi(l) = 1 and, for vertical layers, that the
// support stays inside the sub-layer containing the tip.
double release_domain_integral(const CrackedMesh& mesh, const DisplacementField& field,
                               const ExtensionProfile& phi);

// Forward difference (E(l) - E(l+h))/h; first-order oracle for G(l).
double release_fd_oracle(const LaminateSpec& spec, const MeshParams& params, double l, double h,
                         const Datum& datum, double tol);

ReleaseCurve release_curve(const LaminateSpec& spec, const MeshParams& params,
                           const Datum& datum, double tol, unsigned threads = 0);

// max over sample pairs of |G(l1)-G(l2)| / |l1-l2|^(1/2) inside the window.
double holder_modulus(const ReleaseCurve& curve, double lo, double hi);

} // namespace lamfrac
