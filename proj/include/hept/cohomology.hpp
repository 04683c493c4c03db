#pragma once

// Simplicial cohomology over F_p / GF(p^k): Betti numbers, representative
// cocycle bases, F_2 class enumeration, and lifting a class representative
// to a big-field cocycle that is nonzero on every q-simplex.

#include <cstdint>
#include <vector>

#include "hept/complex.hpp"

namespace hept {

// dim H^q for q = 0..dim, over the prime subfield of f
std::vector<uint32_t> betti_numbers(const Complex& c, const Field& f, EchelonOptions opt = {});

struct CohomologyBasis {
    uint32_t degree = 0;
    std::vector<Cochain> representatives;  // cocycles, independent mod coboundaries
    uint32_t dim() const { return (uint32_t)representatives.size(); }
};

CohomologyBasis cohomology_basis(const Complex& c, uint32_t q, const Field& f,
                                 EchelonOptions opt = {});

struct EnumeratedClass {
    uint32_t bits = 0;  // coordinates over the basis, bit i = representative i
    Cochain rep;        // its canonical F_2 representative
};

// all 2^dim classes, entry 0 the zero class; requires a field with p = 2
std::vector<EnumeratedClass> enumerate_classes(const Complex& c, const Field& f2,
                                               const CohomologyBasis& basis, uint32_t cap = 12);

struct OmegaCocycle {
    Cochain omega;  // degree-q cocycle over GF(p^k), nonzero on every q-simplex
    uint32_t class_bits = 0;
    uint64_t seed = 0;
};

// omega = embed(rep) + delta(beta) for a fresh random (q-1)-cochain beta per
// attempt; retries until omega is nonzero on all q-simplices of c.
OmegaCocycle lift_omega_nonzero(const Complex& c, const Cochain& rep, uint32_t class_bits,
                                const Field& f, uint64_t seed, uint32_t retry_limit = 64);

}  // namespace hept
