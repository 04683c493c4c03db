#pragma once

// Bistellar (Pachner) moves: replace the star of a simplex by the
// complementary star, the union forming the boundary of a simplex one
// dimension up.  The move machinery is generic in the dimension; the
// invariance harness drives it on 5-manifolds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hept/coloring.hpp"
#include "hept/complex.hpp"

namespace hept {

struct MoveDescriptor {
    uint32_t star_size = 1;  // m in an "m-n" move, n = dim + 2 - m
    Simplex location;        // the (dim - m + 1)-simplex whose star is replaced
                             // (for m = 1: a facet)
    std::string kind(uint32_t dim) const;  // e.g. "2-5" in dimension 5
};

struct MoveResult {
    Complex complex;
    std::optional<Vertex> new_vertex;  // set for m = 1
    // per dimension: old face id -> id in the new complex, or NO_FACE
    std::vector<std::vector<uint32_t>> old_to_new;
    // per dimension: ids of faces of the new complex that did not exist before
    std::vector<std::vector<uint32_t>> created;
    static constexpr uint32_t NO_FACE = UINT32_MAX;
};

// throws std::invalid_argument naming the failed applicability condition
MoveResult apply_move(const Complex& m, const MoveDescriptor& mv);

// all applicable moves with the given star size (used by tests and tools)
std::vector<MoveDescriptor> enumerate_moves(const Complex& m, uint32_t star_size);

// Carry a q-cocycle omega (and optionally global colorings) across a move:
// surviving faces keep their values, values on created simplices solve the
// cocycle conditions, with seeded retries until omega is nonzero on every
// created q-simplex.  Colorings are re-solved through the permitted-coloring
// system of the created facets.
struct ExtendResult {
    Cochain omega;  // on the new complex
    std::vector<GlobalColoring> colorings;
};
ExtendResult extend_data(const Complex& oldc, const MoveResult& mv, const Field& f,
                         const Cochain& old_omega, const std::vector<GlobalColoring>& colorings,
                         uint64_t seed, uint32_t retry_limit = 64);

// recompute (dim V_p/V_g, rank A) from scratch after every scripted move
struct HarnessStep {
    std::string kind;
    Simplex location;
    uint32_t facets = 0;
    uint32_t quotient_dim = 0;
    uint32_t rank_a = 0;
};
struct HarnessReport {
    std::vector<HarnessStep> steps;  // steps[0] is the starting triangulation
    bool constant = false;
};
HarnessReport invariance_harness(const Complex& m, const Cochain& rep_f2, uint32_t class_bits,
                                 const Field& f, uint64_t seed,
                                 const std::vector<MoveDescriptor>& script);

}  // namespace hept
