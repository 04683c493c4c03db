#pragma once

// Exact arithmetic in GF(p^k).
//
// An element is stored as a packed radix-p integer: the value
// sum_i c_i p^i encodes the polynomial sum_i c_i x^i in the polynomial
// basis of F_p[x]/(modulus).  0 encodes the zero element, 1 the unit.
//
// The modulus for each (p, k) is the canonical irreducible polynomial:
// the monic degree-k polynomial x^k + t whose tail t (encoded radix-p,
// as above) is the smallest admitting no nontrivial factor.  This
// reproduces the familiar low-weight table entries, e.g.
//   GF(2^15): x^15 + x + 1          (tail code 3)
//   GF(2^8) : x^8 + x^4 + x^3 + x + 1
//   GF(3^9) : x^9 + 2x^3 + x^2 + 1  (tail code 64)
// so element encodings are reproducible across builds and runs.
//
// Fields with p^k <= 2^16 (every field this project computes with)
// are backed by log/antilog tables; larger fields fall back to direct
// polynomial arithmetic.

#include <cstdint>
#include <string>
#include <vector>

namespace hept {

using felt = uint32_t;

class Field {
public:
    // Canonical modulus for (p, k); throws if p is not a small prime,
    // k < 1, or p^k exceeds 2^31.
    Field(uint32_t p, uint32_t k);

    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint64_t order() const { return q_; }
    // Tail code of the modulus (see file comment).
    uint64_t modulus_code() const { return mod_code_; }

    felt add(felt a, felt b) const;
    felt sub(felt a, felt b) const;
    felt neg(felt a) const;
    felt mul(felt a, felt b) const;
    felt inv(felt a) const;  // throws on 0: zero has no inverse
    felt div(felt a, felt b) const { return mul(a, inv(b)); }
    felt pow(felt a, uint64_t e) const;

    // a*b + c, the elimination workhorse.
    felt mul_add(felt a, felt b, felt c) const;

    // Integer reduced into the prime subfield.
    felt from_int(int64_t v) const;

    // Coefficient of x^i in the polynomial-basis representation.
    uint32_t coeff(felt a, uint32_t i) const;

    // Square root if one exists (always, in characteristic 2).
    bool sqrt(felt a, felt& out) const;

    bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_; }

    std::string describe() const;

private:
    uint32_t p_, k_;
    uint64_t q_;
    uint64_t mod_code_;               // tail of the modulus, packed radix p
    std::vector<uint32_t> mod_tail_;  // its k coefficients

    bool tabled_ = false;
    std::vector<uint32_t> log_, exp_;  // exp_ doubled to skip a mod

    felt add_raw(felt a, felt b) const;  // digitwise, no tables
    felt mul_raw(felt a, felt b) const;  // polynomial product mod modulus
    void build_tables();
};

// Smallest tail code making x^k + tail irreducible over F_p.
uint64_t canonical_modulus_code(uint32_t p, uint32_t k);

// Deterministic RNG: all randomized computations in this project draw
// from xoshiro256** (seeded via splitmix64) through these helpers only,
// so a (seed, tag) pair pins every result bit-for-bit.
class Rng {
public:
    explicit Rng(uint64_t seed);
    Rng(uint64_t seed, const std::string& tag);  // derived substream

    uint64_t next();
    uint64_t below(uint64_t n);  // uniform in [0, n), rejection sampled
    felt element(const Field& f);
    felt nonzero(const Field& f);

private:
    uint64_t s_[4];  // xoshiro256** state, seeded via splitmix64
};

}  // namespace hept
