#include "lamfrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lamfrac/parallel.hpp"
#include "lamfrac/simd/kernels.hpp"

namespace lamfrac {

namespace {

constexpr double kGauss = 0.57735026918962576451;  // 1/sqrt(3)

struct Triplet {
    int r, c;
    double v;
};

// Bilinear shape gradients on the reference square at (xi, eta).
void shape_grad(double xi, double eta, double dN_dxi[4], double dN_deta[4]) {
    dN_dxi[0] = -0.25 * (1 - eta);
    dN_dxi[1] = 0.25 * (1 - eta);
    dN_dxi[2] = 0.25 * (1 + eta);
    dN_dxi[3] = -0.25 * (1 + eta);
    dN_deta[0] = -0.25 * (1 - xi);
    dN_deta[1] = -0.25 * (1 + xi);
    dN_deta[2] = 0.25 * (1 + xi);
    dN_deta[3] = 0.25 * (1 - xi);
}

} // namespace

std::array<std::array<double, 4>, 4> element_stiffness(double a, double b, double mu1,
                                                       double mu2) {
    std::array<std::array<double, 4>, 4> ke{};
    const double detj = a * b / 4.0;
    for (double xi : {-kGauss, kGauss}) {
        for (double eta : {-kGauss, kGauss}) {
            double dxi[4], deta[4];
            shape_grad(xi, eta, dxi, deta);
            double dx[4], dy[4];
            for (int i = 0; i < 4; ++i) {
                dx[i] = dxi[i] * 2.0 / a;
                dy[i] = deta[i] * 2.0 / b;
            }
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    ke[i][j] += detj * (mu1 * dx[i] * dx[j] + mu2 * dy[i] * dy[j]);
        }
    }
    return ke;
}

DisplacementField solve(const CrackedMesh& mesh, const Datum& datum, double tol) {
    if (!(tol > 0.0 && tol <= 1e-4))
        throw std::invalid_argument("solver tolerance must lie in (0, 1e-4]");
    const LaminateSpec& spec = mesh.spec;

    // free-dof numbering
    std::vector<int> free_of(mesh.n_nodes, -1);
    int n_free = 0;
    for (int i = 0; i < mesh.n_nodes; ++i)
        if (!mesh.is_dirichlet(i)) free_of[i] = n_free++;

    std::vector<double> u(mesh.n_nodes, 0.0);
    for (int d : mesh.dirichlet)
        u[d] = boundary_datum(spec, datum, mesh.node_x[d], mesh.node_y[d]);

    // assemble reduced system (Dirichlet elimination keeps it SPD)
    std::vector<Triplet> trips;
    trips.reserve(mesh.elems.size() * 16);
    std::vector<double> b(n_free, 0.0);
    for (std::size_t e = 0; e < mesh.elems.size(); ++e) {
        const auto& conn = mesh.elems[e];
        const MaterialPhase& ph = spec.phase(mesh.elem_phase[e]);
        const auto ke = element_stiffness(mesh.col_width(mesh.elem_col[e]),
                                          mesh.row_height(mesh.elem_row[e]), ph.mu1, ph.mu2);
        for (int i = 0; i < 4; ++i) {
            const int fi = free_of[conn[i]];
            if (fi < 0) continue;
            for (int j = 0; j < 4; ++j) {
                const int fj = free_of[conn[j]];
                if (fj >= 0)
                    trips.push_back({fi, fj, ke[i][j]});
                else
                    b[fi] -= ke[i][j] * u[conn[j]];
            }
        }
    }
    std::sort(trips.begin(), trips.end(), [](const Triplet& l, const Triplet& r) {
        return l.r != r.r ? l.r < r.r : l.c < r.c;
    });

    CsrMatrix A;
    A.n = n_free;
    A.ptr.assign(n_free + 1, 0);
    for (std::size_t k = 0; k < trips.size();) {
        std::size_t j = k;
        double s = 0.0;
        while (j < trips.size() && trips[j].r == trips[k].r && trips[j].c == trips[k].c)
            s += trips[j++].v;
        A.idx.push_back(trips[k].c);
        A.val.push_back(s);
        ++A.ptr[trips[k].r + 1];
        k = j;
    }
    for (int r = 0; r < n_free; ++r) A.ptr[r + 1] += A.ptr[r];

    std::vector<double> diag(n_free, 0.0);
    for (int r = 0; r < n_free; ++r)
        for (int k = A.ptr[r]; k < A.ptr[r + 1]; ++k)
            if (A.idx[k] == r) diag[r] = A.val[k];
    for (int r = 0; r < n_free; ++r)
        if (!(diag[r] > 0.0)) throw std::runtime_error("assembly lost positive definiteness");

    // Jacobi-preconditioned CG
    namespace K = lamfrac::simd;
    const double bnorm = std::sqrt(K::dot(b.data(), b.data(), b.size()));
    DisplacementField out;
    out.u = std::move(u);
    if (bnorm == 0.0) {
        for (int i = 0; i < mesh.n_nodes; ++i)
            if (free_of[i] >= 0) out.u[i] = 0.0;
        return out;
    }

    std::vector<double> x(n_free, 0.0), r = b, z(n_free), p(n_free), q(n_free);
    for (int i = 0; i < n_free; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rz = K::dot(r.data(), z.data(), n_free);
    const int cap = 5000 + 60 * static_cast<int>(std::sqrt(double(n_free)));
    double rnorm = bnorm;
    int it = 0;
    for (; it < cap; ++it) {
        rnorm = std::sqrt(K::dot(r.data(), r.data(), n_free));
        if (rnorm <= tol * bnorm) break;
        K::csr_spmv(n_free, A.ptr.data(), A.idx.data(), A.val.data(), p.data(), q.data());
        const double pq = K::dot(p.data(), q.data(), n_free);
        if (!(pq > 0.0)) throw std::runtime_error("assembly lost positive definiteness");
        const double alpha = rz / pq;
        K::axpy(alpha, p.data(), x.data(), n_free);
        K::axpy(-alpha, q.data(), r.data(), n_free);
        for (int i = 0; i < n_free; ++i) z[i] = r[i] / diag[i];
        const double rz_new = K::dot(r.data(), z.data(), n_free);
        K::xpby(z.data(), rz_new / rz, p.data(), n_free);
        rz = rz_new;
    }
    if (rnorm > tol * bnorm)
        throw std::runtime_error("cg failed to converge: relative residual " +
                                 std::to_string(rnorm / bnorm) + " after " +
                                 std::to_string(it) + " iterations");

    for (int i = 0; i < mesh.n_nodes; ++i)
        if (free_of[i] >= 0) out.u[i] = x[free_of[i]];
    out.residual_rel = rnorm / bnorm;
    out.iterations = it;
    return out;
}

double condensed_energy(const CrackedMesh& mesh, const DisplacementField& field) {
    if (static_cast<int>(field.u.size()) != mesh.n_nodes)
        throw std::invalid_argument("field does not match mesh");
    GradientSplit g = windowed_gradient_energy(mesh, field, 0.0, mesh.spec.length);
    return 0.5 * (g.mu1_part + g.mu2_part);
}

std::vector<EnergySample> energy_curve(const LaminateSpec& spec, const MeshParams& params,
                                       std::span<const double> tips, const Datum& datum,
                                       double tol, unsigned threads) {
    std::vector<EnergySample> out(tips.size());
    parallel_for(tips.size(), threads, [&](std::size_t i) {
        CrackedMesh mesh = build_mesh(spec, params, tips[i]);
        DisplacementField f = solve(mesh, datum, tol);
        out[i] = {tips[i], condensed_energy(mesh, f)};
    });
    return out;
}

GradientSplit windowed_gradient_energy(const CrackedMesh& mesh, const DisplacementField& field,
                                       double x_lo, double x_hi) {
    GradientSplit acc;
    for (std::size_t e = 0; e < mesh.elems.size(); ++e) {
        const int col = mesh.elem_col[e];
        const double cx = 0.5 * (mesh.xs[col] + mesh.xs[col + 1]);
        if (cx <= x_lo || cx >= x_hi) continue;
        const auto& conn = mesh.elems[e];
        const MaterialPhase& ph = mesh.spec.phase(mesh.elem_phase[e]);
        const double a = mesh.col_width(col);
        const double b = mesh.row_height(mesh.elem_row[e]);
        const double detj = a * b / 4.0;
        double ue[4];
        for (int i = 0; i < 4; ++i) ue[i] = field.u[conn[i]];
        for (double xi : {-kGauss, kGauss}) {
            for (double eta : {-kGauss, kGauss}) {
                double dxi[4], deta[4];
                shape_grad(xi, eta, dxi, deta);
                double gx = 0.0, gy = 0.0;
                for (int i = 0; i < 4; ++i) {
                    gx += dxi[i] * 2.0 / a * ue[i];
                    gy += deta[i] * 2.0 / b * ue[i];
                }
                acc.mu1_part += detj * ph.mu1 * gx * gx;
                acc.mu2_part += detj * ph.mu2 * gy * gy;
            }
        }
    }
    return acc;
}

double weighted_eshelby_integral(const CrackedMesh& mesh, const DisplacementField& field,
                                 std::span<const double> col_weight) {
    if (col_weight.size() != static_cast<std::size_t>(mesh.nx))
        throw std::invalid_argument("column weight size must equal the column count");
    double acc = 0.0;
    for (std::size_t e = 0; e < mesh.elems.size(); ++e) {
        const double w = col_weight[mesh.elem_col[e]];
        if (w == 0.0) continue;
        const auto& conn = mesh.elems[e];
        const MaterialPhase& ph = mesh.spec.phase(mesh.elem_phase[e]);
        const double a = mesh.col_width(mesh.elem_col[e]);
        const double b = mesh.row_height(mesh.elem_row[e]);
        const double detj = a * b / 4.0;
        double ue[4];
        for (int i = 0; i < 4; ++i) ue[i] = field.u[conn[i]];
        double part = 0.0;
        for (double xi : {-kGauss, kGauss}) {
            for (double eta : {-kGauss, kGauss}) {
                double dxi[4], deta[4];
                shape_grad(xi, eta, dxi, deta);
                double gx = 0.0, gy = 0.0;
                for (int i = 0; i < 4; ++i) {
                    gx += dxi[i] * 2.0 / a * ue[i];
                    gy += deta[i] * 2.0 / b * ue[i];
                }
                part += detj * 0.5 * (ph.mu1 * gx * gx - ph.mu2 * gy * gy);
            }
        }
        acc += w * part;
    }
    return acc;
}

} // namespace lamfrac
