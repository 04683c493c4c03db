#pragma once

// The d = 3 instance of the coloring framework: colors on triangles are
// 1-cocycles modulo omega_ij = z_i - z_j, the explicit 2x2 transfer matrix
// on a tetrahedron, and its normalized orthogonal form.

#include <array>
#include <cstdint>
#include <vector>

#include "hept/coloring.hpp"

namespace hept {

struct PentagonData {
    std::vector<felt> z;   // one value per vertex, pairwise distinct
    // omega on the edge (i,j), i < j: z_i - z_j
    felt omega(const Field& f, uint32_t i, uint32_t j) const;
};

// throws when two z values coincide (omega would vanish on an edge)
PentagonData make_pentagon_data(const Field& f, std::vector<felt> z);

// the matrix expressing (x_124, x_234) through (x_123, x_134) on the
// tetrahedron spanned by z_1..z_4
struct PentagonMatrix {
    std::array<std::array<felt, 2>, 2> m;
    // normalized (orthogonal-form) matrix, when the square roots exist
    bool normalized_available = false;
    std::array<std::array<felt, 2>, 2> normalized;
};

PentagonMatrix pentagon_matrix(const Field& f, const PentagonData& data);

// full polygon check at d = 3 on the boundary of the 4-simplex colored by
// omega from the five z values, over all splits
bool pentagon_relation_check(const Field& f, const std::vector<felt>& z5);

// 1-cocycle omega on a complex from vertex values (delta of the 0-cochain
// z, with the sign convention omega_ij = z_i - z_j)
Cochain omega_from_z(const Complex& c, const Field& f, const std::vector<felt>& z);

}  // namespace hept
