#pragma once

// The state sum over all 5-simplices of the characteristic-2 5-cocycle,
// the matrix A of the induced bilinear form in the squares of the
// quotient-space coordinates, and per-class tables.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hept/cohomology.hpp"
#include "hept/coloring.hpp"

namespace hept {

// sum over facets of the 5-cocycle on a pair of permitted colorings;
// throws on a coloring whose restriction to some facet is not permitted
felt state_sum(const ColoringSystem& sys, const GlobalColoring& rho, const GlobalColoring& sigma);

struct InvariantResult {
    uint32_t class_bits = 0;
    uint32_t quotient_dim = 0;  // dim V_p / V_g
    DenseMatrix a;              // quotient_dim x quotient_dim
    uint32_t rank_a = 0;
    uint64_t seed = 0;
    bool certificate_checked = false;
    bool cross_terms_vanish = true;
    bool a_symmetric = true;
    // populated instead of trusting `a` when the certificate fails: state
    // sums on all pairs of two-index combinations of basis vectors
    std::optional<DenseMatrix> raw_pair_table;

    bool certificate_ok() const { return cross_terms_vanish && a_symmetric; }
};

struct InvariantOptions {
    bool certificate = true;
    uint32_t class_cap = 12;
    uint32_t lift_retries = 64;
    GlobalSpaceOptions spaces;
    uint32_t threads = 0;  // 0: hardware concurrency
};

// A over the complement basis, with the bilinear-in-squares certificate
InvariantResult extract_matrix(const ColoringSystem& sys, const ColoringSpaces& spaces,
                               const InvariantOptions& opt = {});

// full pipeline for one cohomology class: lift omega, cut out the spaces,
// extract A; deterministic given (seed, class bits)
InvariantResult compute_class(const ColoringGeometry& geo, const Field& f, const Cochain& rep_f2,
                              uint32_t class_bits, uint64_t seed, const InvariantOptions& opt = {});

struct ClassTable {
    std::string manifold;
    uint32_t p = 0, k = 0;
    uint64_t seed = 0;
    std::vector<InvariantResult> classes;  // in class-bits order

    // multiset of (quotient_dim, rank A) with counts
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> summary() const;
};

ClassTable class_table(const Complex& m, const std::string& name, const Field& f, uint64_t seed,
                       const InvariantOptions& opt = {});

std::string to_json(const ClassTable& t);
std::string to_text_table(const ClassTable& t);

}  // namespace hept
