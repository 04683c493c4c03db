#include <doctest.h>

#include "hept/cohomology.hpp"
#include "hept/heptagon.hpp"
#include "support/pipeline_oracle.hpp"

using namespace hept;

namespace {

Complex solid_simplex(uint32_t n) {
    Simplex f(n + 1);
    for (uint32_t i = 0; i <= n + 1 - 1; ++i) f[i] = (Vertex)i;
    return build_complex(n + 1, {f});
}

// random cocycle on a solid simplex: coboundary of a random 2-cochain
Cochain random_cocycle3(const Complex& c, const Field& f, Rng& rng) {
    auto d2 = coboundary_matrix(c, 2, f);
    std::vector<felt> beta(c.count(2));
    for (auto& b : beta) b = rng.element(f);
    return Cochain{3, apply(f, d2, beta)};
}

Cochain random_omega3(const Complex& c, const Field& f, uint64_t seed) {
    Cochain zero{3, std::vector<felt>(c.count(3), 0)};
    return lift_omega_nonzero(c, zero, 0, f, seed).omega;
}

std::vector<felt> axpy(const Field& f, const std::vector<felt>& x, felt c,
                       const std::vector<felt>& y) {
    std::vector<felt> r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = f.mul_add(c, y[i], x[i]);
    return r;
}

}  // namespace

TEST_CASE("Q vanishes when an argument is proportional to omega") {
    Field f(2, 15);
    Rng rng(31);
    Complex d4 = solid_simplex(4);
    Cochain om = random_omega3(d4, f, 8);
    for (int trial = 0; trial < 20; ++trial) {
        auto eta = random_cocycle3(d4, f, rng);
        felt c = rng.element(f);
        std::vector<felt> nu(om.values);
        for (auto& v : nu) v = f.mul(v, c);
        CHECK(q_value(f, nu, eta.values, om.values) == 0);
    }
}

TEST_CASE("Q is symmetric, bilinear, and representative independent") {
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}}) {
        Field f(pk.first, pk.second);
        Rng rng(77 + pk.first);
        Complex d4 = solid_simplex(4);
        Cochain om = random_omega3(d4, f, 9);
        for (int trial = 0; trial < 30; ++trial) {
            auto nu = random_cocycle3(d4, f, rng).values;
            auto nu2 = random_cocycle3(d4, f, rng).values;
            auto eta = random_cocycle3(d4, f, rng).values;
            felt a = rng.element(f);
            CHECK(q_value(f, nu, eta, om.values) == q_value(f, eta, nu, om.values));
            // bilinear in the first slot
            felt lhs = q_value(f, axpy(f, nu, a, nu2), eta, om.values);
            felt rhs = f.add(q_value(f, nu, eta, om.values),
                             f.mul(a, q_value(f, nu2, eta, om.values)));
            CHECK(lhs == rhs);
            // adding multiples of omega changes nothing
            felt c = rng.element(f);
            CHECK(q_value(f, axpy(f, nu, c, om.values), eta, om.values) ==
                  q_value(f, nu, eta, om.values));
        }
    }
}

TEST_CASE("Q is a cocycle: incidence-weighted sum vanishes on a 5-simplex") {
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}}) {
        Field f(pk.first, pk.second);
        Rng rng(123);
        Complex d5 = solid_simplex(5);
        ColoringGeometry geo(d5);
        Cochain om = random_omega3(d5, f, 21);
        ColoringSystem sys(geo, f, om);
        for (int trial = 0; trial < 50; ++trial) {
            auto nu = random_cocycle3(d5, f, rng).values;
            auto eta = random_cocycle3(d5, f, rng).values;
            auto q6 = facet_q_values(sys, 0, nu, eta);
            felt s = 0;
            felt frob = 0;
            for (uint32_t k = 0; k < 6; ++k) {
                s = f.add(s, (k % 2 == 0) ? q6[k] : f.neg(q6[k]));
                frob = f.mul_add(q6[k], q6[k], frob);
            }
            CHECK(s == 0);
            if (f.p() == 2) CHECK(frob == 0);  // Frobenius of the cocycle relation
        }
    }
}

TEST_CASE("delta Q vanishes on permitted double colorings of a 5-simplex") {
    Field f(2, 15);
    Rng rng(5);
    Complex d5 = solid_simplex(5);
    ColoringGeometry geo(d5);
    ColoringSystem sys(geo, f, random_omega3(d5, f, 4));
    for (int trial = 0; trial < 100; ++trial) {
        auto r1 = sys.coloring_of_cocycle(random_cocycle3(d5, f, rng));
        auto r2 = sys.coloring_of_cocycle(random_cocycle3(d5, f, rng));
        std::vector<felt> l1(18), l2(18);
        sys.gather(0, r1, l1);
        sys.gather(0, r2, l2);
        CHECK(delta_q_on_5simplex(sys, 0, l1, l2) == 0);
    }
}

TEST_CASE("delta c vanishes on permitted double colorings of a 6-simplex") {
    Complex d6 = solid_simplex(6);
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}}) {
        Field f(pk.first, pk.second);
        Rng rng(6 + pk.first);
        ColoringGeometry geo(d6, 5);
        ColoringSystem sys(geo, f, random_omega3(d6, f, 14));
        for (int trial = 0; trial < 100; ++trial) {
            auto r1 = sys.coloring_of_cocycle(random_cocycle3(d6, f, rng));
            auto r2 = sys.coloring_of_cocycle(random_cocycle3(d6, f, rng));
            CHECK(delta_c_on_6simplex(sys, r1, r2, f.p()) == 0);
        }
    }
}

TEST_CASE("c is invariant under joint renumbering of faces and signs") {
    Field f(2, 15);
    Rng rng(44);
    Complex d5 = solid_simplex(5);
    ColoringGeometry geo(d5);
    ColoringSystem sys(geo, f, random_omega3(d5, f, 2));
    for (int trial = 0; trial < 20; ++trial) {
        auto nu = random_cocycle3(d5, f, rng).values;
        auto eta = random_cocycle3(d5, f, rng).values;
        auto q6 = facet_q_values(sys, 0, nu, eta);
        felt base = c_value(f, q6, 2);
        // epsilon-tilde can be swapped for its complement
        felt swapped = 0;
        for (uint32_t a = 0; a < 6; ++a)
            for (uint32_t b = a + 1; b < 6; ++b) swapped = f.mul_add(q6[a], q6[b], swapped);
        for (uint32_t a = 1; a < 6; a += 2) swapped = f.mul_add(q6[a], q6[a], swapped);
        CHECK(swapped == base);
        // renumbering faces permutes (Q, eps) pairs jointly: the pair sum is
        // symmetric and the eps-weighted square sum is permutation free
        std::array<felt, 6> perm = q6;
        std::array<uint32_t, 6> idx{3, 1, 4, 5, 0, 2};  // even->even/odd mix
        felt permuted = 0;
        for (uint32_t a = 0; a < 6; ++a)
            for (uint32_t b = a + 1; b < 6; ++b)
                permuted = f.mul_add(perm[idx[a]], perm[idx[b]], permuted);
        for (uint32_t a = 0; a < 6; ++a)
            if (idx[a] % 2 == 0) permuted = f.mul_add(perm[idx[a]], perm[idx[a]], permuted);
        CHECK(permuted == base);
    }
}

TEST_CASE("universal polynomial reproduces the closed forms") {
    auto u21 = universal_polynomial(2, 1);
    REQUIRE(u21.terms.size() == 1);
    CHECK(u21.terms[0].e == std::array<uint8_t, 5>{1, 0, 0, 0, 0});  // e_2
    CHECK(u21.terms[0].coef == 1);
    CHECK(u21.neg_power_sum_coef == 1);

    auto u31 = universal_polynomial(3, 1);
    REQUIRE(u31.terms.size() == 1);
    CHECK(u31.terms[0].e == std::array<uint8_t, 5>{0, 1, 0, 0, 0});  // e_3
    CHECK(u31.terms[0].coef == 1);
    CHECK(u31.neg_power_sum_coef == 0);

    CHECK_THROWS(universal_polynomial(2, 4));  // 16 over the default cap

    // on cocycle data the universal values agree with the closed forms
    Complex d5 = solid_simplex(5);
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}}) {
        Field f(pk.first, pk.second);
        Rng rng(3 * pk.first);
        ColoringGeometry geo(d5);
        ColoringSystem sys(geo, f, random_omega3(d5, f, 77));
        auto u = universal_polynomial(f.p(), 1);
        for (int trial = 0; trial < 30; ++trial) {
            auto nu = random_cocycle3(d5, f, rng).values;
            auto eta = random_cocycle3(d5, f, rng).values;
            auto q6 = facet_q_values(sys, 0, nu, eta);
            CHECK(u.evaluate(f, q6) == c_value(f, q6, f.p()));
        }
    }
}

TEST_CASE("universal (2,2) cochain is a cocycle on the 6-simplex") {
    Field f(2, 8);
    Rng rng(29);
    Complex d6 = solid_simplex(6);
    ColoringGeometry geo(d6, 5);
    ColoringSystem sys(geo, f, random_omega3(d6, f, 11));
    auto u = universal_polynomial(2, 2);
    auto faces5 = d6.boundary_ids(6, 0);
    for (int trial = 0; trial < 30; ++trial) {
        auto r1 = sys.coloring_of_cocycle(random_cocycle3(d6, f, rng));
        auto r2 = sys.coloring_of_cocycle(random_cocycle3(d6, f, rng));
        std::vector<felt> l1(18), l2(18);
        felt s = 0;
        for (uint32_t k = 0; k < faces5.size(); ++k) {
            sys.gather(faces5[k], r1, l1);
            sys.gather(faces5[k], r2, l2);
            auto nu = sys.lift(faces5[k], l1, false);
            auto eta = sys.lift(faces5[k], l2, false);
            auto q6 = facet_q_values(sys, faces5[k], nu, eta);
            felt cv = u.evaluate(f, q6);
            s = f.add(s, (k % 2 == 0) ? cv : f.neg(cv));
        }
        CHECK(s == 0);
    }
}

TEST_CASE("closed forms match the exact-integer four-step oracle") {
    // independent route: Z[x]-valued cochains on the 5-simplex, exact Q,
    // raise/coboundary/divide/reduce, then x -> canonical generator
    Complex d5 = solid_simplex(5);
    ColoringGeometry geo(d5);
    for (auto pk : {std::pair<uint32_t, uint32_t>{2, 15}, {3, 9}}) {
        Field f(pk.first, pk.second);
        uint32_t p = f.p();
        felt theta = p;  // the class of x
        Rng rng(1000 + p);
        int done = 0;
        while (done < 20) {
            // integer-polynomial 2-cochains, degree <= 1
            auto rand_zp = [&]() {
                oracle::ZP z;
                z.c = {oracle::Z((long)rng.below(7)) - 3, oracle::Z((long)rng.below(7)) - 3};
                z.trim();
                return z;
            };
            uint32_t n2 = d5.count(2), n3 = d5.count(3);
            std::vector<oracle::ZP> bnu(n2), beta(n2), bom(n2);
            for (uint32_t i = 0; i < n2; ++i) {
                bnu[i] = rand_zp();
                beta[i] = rand_zp();
                bom[i] = rand_zp();
            }
            // coboundaries on the 15 tetrahedra
            auto cob = [&](const std::vector<oracle::ZP>& b) {
                std::vector<oracle::ZP> out(n3);
                for (uint32_t t = 0; t < n3; ++t) {
                    auto ids = d5.boundary_ids(3, t);
                    oracle::ZP s;
                    for (uint32_t k = 0; k < ids.size(); ++k)
                        s = oracle::add(s, k % 2 == 0 ? b[ids[k]] : oracle::neg(b[ids[k]]));
                    out[t] = s;
                }
                return out;
            };
            auto znu = cob(bnu), zeta = cob(beta), zom = cob(bom);
            // omega must be nonzero mod p on every tetrahedron, at theta
            std::vector<felt> fom(n3), fnu(n3), feta(n3);
            bool ok = true;
            for (uint32_t t = 0; t < n3 && ok; ++t) {
                fom[t] = oracle::eval_mod(zom[t], f, theta);
                fnu[t] = oracle::eval_mod(znu[t], f, theta);
                feta[t] = oracle::eval_mod(zeta[t], f, theta);
                if (!fom[t]) ok = false;
            }
            if (!ok) continue;

            // oracle Q values per face (omission order), exact
            std::vector<oracle::Frac> q6;
            for (uint32_t k = 0; k < 6; ++k) {
                // tetrahedra of face k in omission order
                oracle::Frac q = oracle::frac(oracle::zp_const(0));
                // face k = vertices {0..5} minus k; its tetra omit one more
                std::vector<Vertex> fv;
                for (Vertex v = 0; v < 6; ++v)
                    if (v != (Vertex)k) fv.push_back(v);
                for (uint32_t j = 0; j < 5; ++j) {
                    Simplex tet;
                    for (uint32_t l = 0; l < 5; ++l)
                        if (l != j) tet.push_back(fv[l]);
                    uint32_t tid = d5.face_id(3, {tet.data(), tet.size()});
                    oracle::Frac mu{oracle::mul(znu[tid], zeta[tid]), zom[tid]};
                    q = oracle::add(q, j % 2 == 0 ? mu : oracle::neg(mu));
                }
                q6.push_back(q);
            }
            felt expect = 0;
            try {
                expect = oracle::four_step_reduce(q6, p, p, f, theta);
            } catch (const std::runtime_error&) {
                continue;  // degenerate draw, resample
            }

            // library route
            ColoringSystem sys(geo, f, Cochain{3, fom});
            auto lq6 = facet_q_values(sys, 0, fnu, feta);
            CHECK(c_value(f, lq6, p) == expect);
            ++done;
        }
    }
}
