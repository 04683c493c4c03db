#pragma once

// Independent exact-integer oracle for the raise/coboundary/divide/reduce
// construction of the bipolynomial 5-cocycles.  Works in the fraction field
// of Z[x] with bignum coefficients: random integer-polynomial 2-cochains on
// the 5-simplex give cocycles nu, eta, omega; the oracle raises the exact
// rational Q values to the p^k-th power, takes the alternating sum, divides
// by p using the Gauss valuation on contents, and finally maps x to the
// canonical generator of GF(p^m).  Shares no code with the library side.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <vector>

#include "hept/gf.hpp"

namespace oracle {

using Z = boost::multiprecision::cpp_int;

struct ZP {  // polynomial over Z, low-to-high
    std::vector<Z> c;
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool zero() const { return c.empty(); }
};

inline ZP zp_const(long v) {
    ZP r;
    if (v) r.c = {Z(v)};
    return r;
}

inline ZP add(const ZP& a, const ZP& b) {
    ZP r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

inline ZP neg(const ZP& a) {
    ZP r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

inline ZP mul(const ZP& a, const ZP& b) {
    ZP r;
    if (a.zero() || b.zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Z(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

struct Frac {  // num/den over Z[x], den nonzero
    ZP num, den;
};

inline Frac frac(const ZP& n) { return {n, zp_const(1)}; }

inline Frac add(const Frac& a, const Frac& b) {
    return {add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den)};
}

inline Frac mul(const Frac& a, const Frac& b) { return {mul(a.num, b.num), mul(a.den, b.den)}; }

inline Frac neg(const Frac& a) { return {neg(a.num), a.den}; }

inline Frac powi(Frac a, uint64_t e) {
    Frac r = frac(zp_const(1));
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

// Gauss valuation: highest power of p dividing every coefficient
inline int64_t valp(const ZP& a, uint32_t p) {
    if (a.zero()) throw std::logic_error("valuation of zero");
    int64_t best = INT64_MAX;
    for (const auto& c : a.c) {
        if (c == 0) continue;
        Z v = c < 0 ? Z(-c) : c;
        int64_t e = 0;
        while (v % p == 0 && e < best) {
            v /= p;
            ++e;
        }
        best = std::min(best, e);
    }
    return best;
}

inline ZP divide_out(const ZP& a, uint32_t p, int64_t e) {
    ZP r = a;
    for (auto& c : r.c)
        for (int64_t i = 0; i < e; ++i) c /= p;
    return r;
}

// evaluate (a mod p) at theta in GF(p^m)
inline hept::felt eval_mod(const ZP& a, const hept::Field& f, hept::felt theta) {
    hept::felt r = 0;
    for (size_t i = a.c.size(); i-- > 0;) {
        long digit = (long)(a.c[i] % (long)f.p());
        r = f.add(f.mul(r, theta), f.from_int(digit));
    }
    return r;
}

// the four steps applied to the six exact Q values (omission order), with
// incidence signs (-1)^k; returns the reduced value in GF(p^m)
inline hept::felt four_step_reduce(const std::vector<Frac>& q6, uint32_t p, uint64_t power,
                                   const hept::Field& f, hept::felt theta) {
    Frac s = frac(zp_const(0));
    for (size_t k = 0; k < q6.size(); ++k) {
        Frac t = powi(q6[k], power);
        s = add(s, (k % 2 == 0) ? t : neg(t));
    }
    if (s.num.zero()) return 0;
    int64_t l = valp(s.num, p) - valp(s.den, p);  // valuation of the sum
    if (l < 1) throw std::runtime_error("oracle: sum not divisible by p");
    if (l > 1) return 0;
    ZP n = divide_out(s.num, p, valp(s.num, p));
    ZP d = divide_out(s.den, p, valp(s.den, p));
    hept::felt dv = eval_mod(d, f, theta);
    if (!dv) throw std::runtime_error("oracle: denominator vanishes at theta; resample");
    return f.div(eval_mod(n, f, theta), dv);
}

}  // namespace oracle
