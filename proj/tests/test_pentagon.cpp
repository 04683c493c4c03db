#include <doctest.h>

#include "hept/pentagon.hpp"

using namespace hept;

namespace {

std::vector<felt> distinct_z(const Field& f, Rng& rng, size_t n) {
    std::vector<felt> z;
    while (z.size() < n) {
        felt v = rng.element(f);
        bool dup = false;
        for (auto w : z) dup |= (w == v);
        if (!dup) z.push_back(v);
    }
    return z;
}

// coordinate of a 1-cocycle on triangle (a,b,c) in the (1,1,0) basis mod omega
felt te_coord(const Field& f, felt vab, felt vac, felt vbc, felt oab, felt obc) {
    felt t = f.div(vbc, obc);
    return f.sub(vab, f.mul(t, oab));
}

}  // namespace

TEST_CASE("pentagon matrix entries and the cross-ratio identity") {
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}}) {
        Field f(pk.first, pk.second);
        Rng rng(19 + pk.first);
        for (int trial = 0; trial < 100; ++trial) {
            auto z = distinct_z(f, rng, 4);
            auto pm = pentagon_matrix(f, make_pentagon_data(f, z));
            // cross-ratio identity: the two matrix entries of the first row sum to 1
            CHECK(f.add(pm.m[0][0], pm.m[0][1]) == 1);
            if (pm.normalized_available) {
                felt a = pm.normalized[0][0], b = pm.normalized[0][1];
                CHECK(f.add(f.mul(a, a), f.mul(b, b)) == 1);  // a^2 + b^2 = 1
            }
            if (f.p() == 2) CHECK(pm.normalized_available);  // Frobenius roots always exist
        }
    }
}

TEST_CASE("cross-ratio identity holds symbolically") {
    // (z3-z2)(z4-z1) + (z2-z1)(z4-z3) = (z3-z1)(z4-z2) as integer polynomials:
    // expand over the 4! = 24 monomials z_i z_j with integer coefficients
    int coef[4][4] = {};
    auto addprod = [&](int a, int b, int c, int d, int sign) {
        // (z_a - z_b)(z_c - z_d)
        coef[a][c] += sign;
        coef[a][d] -= sign;
        coef[b][c] -= sign;
        coef[b][d] += sign;
    };
    addprod(2, 1, 3, 0, 1);
    addprod(1, 0, 3, 2, 1);
    addprod(2, 0, 3, 1, -1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(coef[i][j] + coef[j][i] == 0);  // symmetrized zero
}

TEST_CASE("pentagon matrix agrees with the basis cocycles of the framework") {
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}, {7, 2}}) {
        Field f(pk.first, pk.second);
        Rng rng(5 * pk.first + pk.second);
        for (int trial = 0; trial < 40; ++trial) {
            auto z = distinct_z(f, rng, 4);
            auto pm = pentagon_matrix(f, make_pentagon_data(f, z));
            auto om = [&](int i, int j) { return f.sub(z[i - 1], z[j - 1]); };
            // nu_1 and nu_2 on edges 12,13,14,23,24,34
            felt n1[6] = {1, 1, 1, 0, 0, 0};
            felt n2[6] = {f.neg(1), 0, 0, 1, 1, 0};
            for (auto* nu : {n1, n2}) {
                // coordinates on triangles 123, 124, 134, 234
                felt x123 = te_coord(f, nu[0], nu[1], nu[3], om(1, 2), om(2, 3));
                felt x124 = te_coord(f, nu[0], nu[2], nu[4], om(1, 2), om(2, 4));
                felt x134 = te_coord(f, nu[1], nu[2], nu[5], om(1, 3), om(3, 4));
                felt x234 = te_coord(f, nu[3], nu[4], nu[5], om(2, 3), om(3, 4));
                CHECK(f.add(f.mul(pm.m[0][0], x123), f.mul(pm.m[0][1], x134)) == x124);
                CHECK(f.add(f.mul(pm.m[1][0], x123), f.mul(pm.m[1][1], x134)) == x234);
            }
        }
    }
}

TEST_CASE("degenerate z values are rejected") {
    Field f(2, 15);
    CHECK_THROWS_AS(make_pentagon_data(f, {1, 1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(pentagon_relation_check(f, {1, 2, 3, 4, 4}), std::invalid_argument);
}

TEST_CASE("pentagon relation holds over both fields") {
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}}) {
        Field f(pk.first, pk.second);
        Rng rng(23 * pk.first);
        for (int trial = 0; trial < 10; ++trial) {
            auto z = distinct_z(f, rng, 5);
            CHECK(pentagon_relation_check(f, z));
        }
    }
}
