#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lamfrac/materials.hpp"

namespace lamfrac {

struct MeshParams {
    int elems_per_layer_x = 8;      // cells per material sub-layer along x1 (>=2)
    int elems_y = 16;               // cells per half-height (>=4)
    double refine_near_crack = 2.0; // geometric grading toward y=0, in [1,4]

    void validate() const;
};

// Dirichlet boundary datum on ∂_D Ω = {0}x((-H,0)∪(0,H)) ∪ {L}x(-H,H).
struct Datum {
    enum class Kind { Step, Custom };
    Kind kind = Kind::Step;
    std::function<double(double, double)> profile;  // Custom only
    std::string description = "step";

    static Datum step();
    static Datum custom(std::function<double(double, double)> f, std::string name = "custom");
};

// The ±1/0 step (or a custom profile) evaluated at a boundary point; throws
// when (x,y) is not on ∂_D Ω.
double boundary_datum(const LaminateSpec& spec, const Datum& datum, double x, double y);

// Layer-aligned structured quad mesh of Ω \ K_l. Nodes on {y=0, 0 <= x < l}
// carry two ids (upper face keeps the base grid id, the lower face gets an
// appended duplicate); the tip node x = l stays bonded.
struct CrackedMesh {
    LaminateSpec spec;
    MeshParams params;

    std::vector<double> xs;  // x grid lines, size nx+1
    std::vector<double> ys;  // y grid lines, size ny+1, ys[iy0] == 0 exactly
    int nx = 0, ny = 0, iy0 = 0;

    double crack_tip = 0.0;
    int tip_ix = 0;

    int n_base = 0;   // (nx+1)*(ny+1)
    int n_nodes = 0;  // base + duplicated crack-face nodes

    // lower_copy[ix] = node id of the lower-face duplicate at (xs[ix], 0),
    // for ix in [0, tip_ix)
    std::vector<int> lower_copy;

    std::vector<std::array<int, 4>> elems;  // ccw: (x0y0, x1y0, x1y1, x0y1)
    std::vector<Phase> elem_phase;
    std::vector<int> elem_col;  // x column of each element
    std::vector<int> elem_row;  // y row of each element

    std::vector<double> node_x, node_y;
    std::vector<int> dirichlet;  // sorted node ids

    int base_id(int ix, int iy) const { return iy * (nx + 1) + ix; }
    bool is_dirichlet(int node) const;

    // Element geometry (axis-aligned rectangles).
    double col_width(int col) const { return xs[col + 1] - xs[col]; }
    double row_height(int row) const { return ys[row + 1] - ys[row]; }

    // Plain-text dump: header, then "id x y" per node, then
    // "id n1 n2 n3 n4 phase" per element.
    void dump(const std::string& path) const;
};

// The x grid nodes in (0, L]; contains every interface abscissa (Vertical).
std::vector<double> admissible_tips(const LaminateSpec& spec, const MeshParams& params);

CrackedMesh build_mesh(const LaminateSpec& spec, const MeshParams& params, double tip);

// Index of `tip` in the lattice `tips`; throws "inadmissible tip" if absent.
int tip_index(const std::vector<double>& tips, double tip, double extent);

} // namespace lamfrac
