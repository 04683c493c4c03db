#pragma once

// Heptagon-specific cocycles: the bilinear 4-cocycle Q (the coboundary of
// mu = nu*eta/omega evaluated on a 4-simplex), its finite-characteristic
// descendants (the bipolynomial 5-cocycles, closed forms in characteristic
// 2 and 3), the generic raise/coboundary/divide/reduce construction as a
// universal polynomial in elementary symmetric functions, and coboundary
// evaluators over permitted double colorings.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hept/coloring.hpp"

namespace hept {

// Q on a single 4-simplex: values of nu, eta, omega on its five
// tetrahedra, indexed by the omitted vertex
felt q_value(const Field& f, std::span<const felt> nu, std::span<const felt> eta,
             std::span<const felt> omega);

// Q of one (d-1)-face of the system from a pair of color classes
felt q_on_face(const ColoringSystem& sys, uint32_t face_id, std::span<const felt> r1,
               std::span<const felt> r2);

// Q for all six faces of a 5-simplex (omission order) from cocycles on it
std::array<felt, 6> facet_q_values(const ColoringSystem& sys, uint32_t facet_id,
                                   std::span<const felt> nu, std::span<const felt> eta);

// closed-form 5-cocycle values from the six Q's; characteristic 2 uses the
// pair sum plus squares over even-position faces, characteristic 3 the
// sign-weighted triple products
felt c_value(const Field& f, std::span<const felt> q6, uint32_t characteristic);

// the 5-cocycle on one facet for a pair of local colorings
felt c_on_facet(const ColoringSystem& sys, uint32_t facet_id, std::span<const felt> colors1,
                std::span<const felt> colors2);

// (delta Q)(r) on a 5-simplex: alternating sum of per-face Q values, each
// face lifted independently from its color class
felt delta_q_on_5simplex(const ColoringSystem& sys, uint32_t facet_id,
                         std::span<const felt> colors1, std::span<const felt> colors2);

// (delta c)(r) on the top simplex of a solid (d+1)-simplex complex carrying
// the d = 5 coloring structure; r given as a pair of global colorings
felt delta_c_on_6simplex(const ColoringSystem& sys, std::span<const felt> global1,
                         std::span<const felt> global2, uint32_t characteristic);

// --------------------------------------------------------------- universal

// (1/p) (coboundary of Q^(p^k)) mod p, as a polynomial in the elementary
// symmetric functions e_2..e_6 of the signed face values t_v = eps_v Q_v
// (the first power sum vanishes), plus, in characteristic 2, a multiple of
// the power sum over the negative-incidence faces.
struct UniversalPolynomial {
    uint32_t p = 0, k = 0;
    uint64_t power = 0;  // p^k
    struct Mono {
        std::array<uint8_t, 5> e{};  // exponents of e_2..e_6
        uint32_t coef = 0;           // in F_p
    };
    std::vector<Mono> terms;
    uint32_t neg_power_sum_coef = 0;  // char 2 only

    // evaluate on the six Q values of a 5-simplex, faces in omission order
    felt evaluate(const Field& f, std::span<const felt> q6) const;
};

UniversalPolynomial universal_polynomial(uint32_t p, uint32_t k, uint64_t cap = 9);

}  // namespace hept
