#include "lamfrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lamfrac {

namespace {

constexpr double kNodeSnap = 1e-12;  // relative coordinate identification

// Graded half-height grid: m cells on (0,H], sizes geometric toward y=0 with
// coarse/fine ratio R. Returns the m interior+top ordinates (exclusive of 0).
std::vector<double> graded_half(double H, int m, double R) {
    std::vector<double> cum(m);
    if (R <= 1.0) {
        for (int j = 0; j < m; ++j) cum[j] = double(j + 1);
    } else {
        const double g = std::pow(R, 1.0 / (m - 1));
        double h = 1.0, s = 0.0;
        for (int j = 0; j < m; ++j) {
            s += h;
            cum[j] = s;
            h *= g;
        }
    }
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) out[j] = H * (cum[j] / cum[m - 1]);
    out[m - 1] = H;
    return out;
}

// x grid for vertical layers: epl uniform cells per material sub-layer, with
// sub-layer edges computed in exact multiples of L/n.
std::vector<double> x_grid_vertical(const LaminateSpec& spec, int epl) {
    const int n = spec.n_layers;
    const double L = spec.length;
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(2 * n * epl + 1));
    xs.push_back(0.0);
    for (int k = 0; k < n; ++k) {
        const double a = L * k / n;
        const double m = L * (k + spec.lambda) / n;
        const double b = L * (k + 1) / n;
        for (int j = 1; j <= epl; ++j) xs.push_back(a + (m - a) * j / epl);
        for (int j = 1; j <= epl; ++j) xs.push_back(m + (b - m) * j / epl);
    }
    xs.back() = L;
    return xs;
}

std::vector<double> x_grid_horizontal(const LaminateSpec& spec, int epl) {
    const int cells = 2 * spec.n_layers * epl;
    std::vector<double> xs(cells + 1);
    for (int i = 0; i <= cells; ++i) xs[i] = spec.length * i / cells;
    return xs;
}

// y grid for horizontal layers: sub-layer edges exact, per-sub-layer uniform
// fill sized so a half-height carries about elems_y cells.
std::vector<double> y_grid_horizontal(const LaminateSpec& spec, int elems_y) {
    const int n = spec.n_layers;
    const double H = spec.height;
    const int ca = std::max(1, static_cast<int>(std::lround(double(elems_y) * spec.lambda / n)));
    const int cb = std::max(1, static_cast<int>(std::lround(double(elems_y) * (1.0 - spec.lambda) / n)));
    std::vector<double> ys;
    ys.push_back(-H);
    for (int k = 0; k < 2 * n; ++k) {
        const double a = H * double(k - n) / n;
        const double m = H * (double(k - n) + spec.lambda) / n;
        const double b = H * double(k + 1 - n) / n;
        for (int j = 1; j <= ca; ++j) ys.push_back(a + (m - a) * j / ca);
        for (int j = 1; j <= cb; ++j) ys.push_back(m + (b - m) * j / cb);
    }
    ys.back() = H;
    return ys;
}

std::vector<double> y_grid_vertical(const LaminateSpec& spec, const MeshParams& p) {
    std::vector<double> upper = graded_half(spec.height, p.elems_y, p.refine_near_crack);
    std::vector<double> ys;
    ys.reserve(2 * upper.size() + 1);
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) ys.push_back(-*it);
    ys.push_back(0.0);
    for (double y : upper) ys.push_back(y);
    return ys;
}

} // namespace

void MeshParams::validate() const {
    if (elems_per_layer_x < 2)
        throw std::invalid_argument("misaligned mesh: elems_per_layer_x must be >= 2");
    if (elems_y < 4) throw std::invalid_argument("misaligned mesh: elems_y must be >= 4");
    if (refine_near_crack < 1.0 || refine_near_crack > 4.0)
        throw std::invalid_argument("misaligned mesh: refine_near_crack must lie in [1, 4]");
}

Datum Datum::step() { return Datum{}; }

Datum Datum::custom(std::function<double(double, double)> f, std::string name) {
    Datum d;
    d.kind = Kind::Custom;
    d.profile = std::move(f);
    d.description = std::move(name);
    return d;
}

double boundary_datum(const LaminateSpec& spec, const Datum& datum, double x, double y) {
    const double tx = kNodeSnap * spec.length;
    const double ty = kNodeSnap * spec.height;
    const bool on_left = std::abs(x) <= tx && std::abs(y) > ty && std::abs(y) <= spec.height + ty;
    const bool on_right = std::abs(x - spec.length) <= tx && std::abs(y) <= spec.height + ty;
    if (!on_left && !on_right) throw std::invalid_argument("node not on Dirichlet boundary");
    if (datum.kind == Datum::Kind::Custom) return datum.profile(x, y);
    if (on_right) return 0.0;
    return y > 0.0 ? 1.0 : -1.0;
}

std::vector<double> admissible_tips(const LaminateSpec& spec, const MeshParams& params) {
    spec.validate();
    params.validate();
    std::vector<double> xs = spec.orientation == Orientation::Vertical
                                 ? x_grid_vertical(spec, params.elems_per_layer_x)
                                 : x_grid_horizontal(spec, params.elems_per_layer_x);
    return {xs.begin() + 1, xs.end()};
}

int tip_index(const std::vector<double>& tips, double tip, double extent) {
    const double tol = kNodeSnap * extent;
    auto it = std::lower_bound(tips.begin(), tips.end(), tip - tol);
    if (it == tips.end() || std::abs(*it - tip) > tol)
        throw std::invalid_argument("inadmissible tip");
    return static_cast<int>(it - tips.begin());
}

bool CrackedMesh::is_dirichlet(int node) const {
    return std::binary_search(dirichlet.begin(), dirichlet.end(), node);
}

CrackedMesh build_mesh(const LaminateSpec& spec, const MeshParams& params, double tip) {
    spec.validate();
    params.validate();

    CrackedMesh m;
    m.spec = spec;
    m.params = params;
    if (spec.orientation == Orientation::Vertical) {
        m.xs = x_grid_vertical(spec, params.elems_per_layer_x);
        m.ys = y_grid_vertical(spec, params);
    } else {
        m.xs = x_grid_horizontal(spec, params.elems_per_layer_x);
        m.ys = y_grid_horizontal(spec, params.elems_y);
    }
    m.nx = static_cast<int>(m.xs.size()) - 1;
    m.ny = static_cast<int>(m.ys.size()) - 1;
    m.iy0 = static_cast<int>(std::lower_bound(m.ys.begin(), m.ys.end(), 0.0) - m.ys.begin());
    if (m.ys[m.iy0] != 0.0) throw std::logic_error("misaligned mesh: y=0 is not a grid line");

    {
        std::vector<double> tips(m.xs.begin() + 1, m.xs.end());
        m.tip_ix = 1 + tip_index(tips, tip, spec.length);
    }
    m.crack_tip = m.xs[m.tip_ix];

    m.n_base = (m.nx + 1) * (m.ny + 1);
    m.lower_copy.resize(m.tip_ix);
    for (int ix = 0; ix < m.tip_ix; ++ix) m.lower_copy[ix] = m.n_base + ix;
    m.n_nodes = m.n_base + m.tip_ix;

    m.node_x.resize(m.n_nodes);
    m.node_y.resize(m.n_nodes);
    for (int iy = 0; iy <= m.ny; ++iy)
        for (int ix = 0; ix <= m.nx; ++ix) {
            const int id = m.base_id(ix, iy);
            m.node_x[id] = m.xs[ix];
            m.node_y[id] = m.ys[iy];
        }
    for (int ix = 0; ix < m.tip_ix; ++ix) {
        m.node_x[m.lower_copy[ix]] = m.xs[ix];
        m.node_y[m.lower_copy[ix]] = 0.0;
    }

    m.elems.reserve(static_cast<std::size_t>(m.nx) * m.ny);
    m.elem_phase.reserve(m.elems.capacity());
    m.elem_col.reserve(m.elems.capacity());
    m.elem_row.reserve(m.elems.capacity());
    for (int iy = 0; iy < m.ny; ++iy) {
        for (int ix = 0; ix < m.nx; ++ix) {
            std::array<int, 4> conn = {m.base_id(ix, iy), m.base_id(ix + 1, iy),
                                       m.base_id(ix + 1, iy + 1), m.base_id(ix, iy + 1)};
            if (iy + 1 == m.iy0) {
                // element just below the crack line: its top corners take the
                // lower-face copies where the node is duplicated
                if (ix < m.tip_ix) conn[3] = m.lower_copy[ix];
                if (ix + 1 < m.tip_ix) conn[2] = m.lower_copy[ix + 1];
            }
            m.elems.push_back(conn);
            const double cx = 0.5 * (m.xs[ix] + m.xs[ix + 1]);
            const double cy = 0.5 * (m.ys[iy] + m.ys[iy + 1]);
            m.elem_phase.push_back(phase_at(spec, cx, cy));
            m.elem_col.push_back(ix);
            m.elem_row.push_back(iy);
        }
    }

    for (int iy = 0; iy <= m.ny; ++iy) {
        if (iy != m.iy0) m.dirichlet.push_back(m.base_id(0, iy));
        m.dirichlet.push_back(m.base_id(m.nx, iy));
    }
    std::sort(m.dirichlet.begin(), m.dirichlet.end());
    return m;
}

void CrackedMesh::dump(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open mesh dump file: " + path);
    std::fprintf(f, "lamfrac-mesh nodes=%d elems=%zu tip=%.17g\n", n_nodes, elems.size(),
                 crack_tip);
    for (int i = 0; i < n_nodes; ++i)
        std::fprintf(f, "%d %.17g %.17g\n", i, node_x[i], node_y[i]);
    for (std::size_t e = 0; e < elems.size(); ++e)
        std::fprintf(f, "%zu %d %d %d %d %c\n", e, elems[e][0], elems[e][1], elems[e][2],
                     elems[e][3], elem_phase[e] == Phase::A ? 'A' : 'B');
    std::fclose(f);
}

} // namespace lamfrac
