#pragma once

#include <span>
#include <vector>

#include "lamfrac/mesh.hpp"

namespace lamfrac {

struct DisplacementField {
    std::vector<double> u;  // nodal values, Dirichlet entries carry the datum
    double residual_rel = 0.0;
    int iterations = 0;
};

struct EnergySample {
    double l = 0.0;
    double energy = 0.0;
};

// Compressed sparse row matrix over the free dofs.
struct CsrMatrix {
    int n = 0;
    std::vector<int> ptr, idx;
    std::vector<double> val;
};

// 4x4 element stiffness of the axis-aligned bilinear quad [0,a]x[0,b] with
// stiffness diag(mu1, mu2), 2x2 Gauss (exact here).
std::array<std::array<double, 4>, 4> element_stiffness(double a, double b, double mu1, double mu2);

// Galerkin solution of div(C grad u) = 0 with u = f(t)=1 datum on the
// Dirichlet set and traction-free crack faces. Jacobi-preconditioned CG.
DisplacementField solve(const CrackedMesh& mesh, const Datum& datum, double tol);

// 1/2 int grad(u) C grad(u)^T by element-wise 2x2 Gauss quadrature.
double condensed_energy(const CrackedMesh& mesh, const DisplacementField& field);

// One EnergySample per tip, tips evaluated independently (possibly in
// parallel), output ordered by tip.
std::vector<EnergySample> energy_curve(const LaminateSpec& spec, const MeshParams& params,
                                       std::span<const double> tips, const Datum& datum,
                                       double tol, unsigned threads = 0);

// Elementwise integrals used by release / homogenization checks:
// sum over elements selected by `col_in_window` of
//   int w1*mu1*(du/dx)^2 + w2*mu2*(du/dy)^2 weighted per column.
struct GradientSplit {
    double mu1_part = 0.0;  // int mu1 (d1 u)^2
    double mu2_part = 0.0;  // int mu2 (d2 u)^2
};
GradientSplit windowed_gradient_energy(const CrackedMesh& mesh, const DisplacementField& field,
                                       double x_lo, double x_hi);

// int over elements of per-column weight * (mu1 (d1 u)^2 - mu2 (d2 u)^2) / 2;
// the release domain integral reduces to this with weight = phi'.
double weighted_eshelby_integral(const CrackedMesh& mesh, const DisplacementField& field,
                                 std::span<const double> col_weight);

} // namespace lamfrac
