#include "hept/heptagon.hpp"

#include <map>
#include <stdexcept>

namespace hept {

felt q_value(const Field& f, std::span<const felt> nu, std::span<const felt> eta,
             std::span<const felt> omega) {
    felt s = 0;
    for (uint32_t k = 0; k < nu.size(); ++k) {
        felt mu = f.div(f.mul(nu[k], eta[k]), omega[k]);
        s = f.add(s, (k % 2 == 0) ? mu : f.neg(mu));
    }
    return s;
}

namespace {

// gather values on one face of the facet template, omission order: the
// face-local q-simplices are lex-ordered subsets, and the tetrahedron of a
// 4-simplex omitting local vertex j sits at lex position (size-1-j)
void face_values_omission(const ColoringGeometry& g, uint32_t k, std::span<const felt> on_facet,
                          std::span<felt> out) {
    uint32_t n = (uint32_t)g.face_tpl.qsub.size();
    for (uint32_t j = 0; j < out.size(); ++j) out[j] = on_facet[g.face_embed[k][n - 1 - j]];
}

}  // namespace

felt q_on_face(const ColoringSystem& sys, uint32_t face_id, std::span<const felt> r1,
               std::span<const felt> r2) {
    const Field& f = sys.field();
    const ColoringGeometry& g = sys.geometry();
    if (g.q() != 3) throw std::invalid_argument("Q needs the heptagon structure (d = 5)");
    auto nu = sys.lift_on_face(face_id, r1);
    auto eta = sys.lift_on_face(face_id, r2);
    auto qid = g.face_qids(face_id);
    uint32_t n = (uint32_t)nu.size();
    // reorder from lex to omission: omit j <-> lex position n-1-j
    felt s = 0;
    for (uint32_t j = 0; j < n; ++j) {
        uint32_t lex = n - 1 - j;
        felt om = sys.omega().values[qid[lex]];
        felt mu = f.div(f.mul(nu[lex], eta[lex]), om);
        s = f.add(s, (j % 2 == 0) ? mu : f.neg(mu));
    }
    return s;
}

std::array<felt, 6> facet_q_values(const ColoringSystem& sys, uint32_t facet_id,
                                   std::span<const felt> nu, std::span<const felt> eta) {
    const Field& f = sys.field();
    const ColoringGeometry& g = sys.geometry();
    if (g.d() != 5) throw std::invalid_argument("facet_q_values needs d = 5");
    auto om = sys.omega_on_facet(facet_id);
    // mu on all 15 tetrahedra of the facet
    std::array<felt, 15> mu;
    for (uint32_t s = 0; s < 15; ++s) mu[s] = f.div(f.mul(nu[s], eta[s]), om[s]);
    std::array<felt, 6> q;
    std::array<felt, 5> vals;
    for (uint32_t k = 0; k < 6; ++k) {
        face_values_omission(g, k, mu, vals);
        felt s = 0;
        for (uint32_t j = 0; j < 5; ++j) s = f.add(s, (j % 2 == 0) ? vals[j] : f.neg(vals[j]));
        q[k] = s;
    }
    return q;
}

felt c_value(const Field& f, std::span<const felt> q6, uint32_t characteristic) {
    if (characteristic != f.p())
        throw std::invalid_argument("c_value: characteristic does not match the field");
    if (characteristic == 2) {
        felt s = 0;
        for (uint32_t a = 0; a < 6; ++a)
            for (uint32_t b = a + 1; b < 6; ++b) s = f.mul_add(q6[a], q6[b], s);
        for (uint32_t a = 0; a < 6; a += 2) s = f.mul_add(q6[a], q6[a], s);
        return s;
    }
    if (characteristic == 3) {
        felt s = 0;
        for (uint32_t a = 0; a < 6; ++a)
            for (uint32_t b = a + 1; b < 6; ++b)
                for (uint32_t c = b + 1; c < 6; ++c) {
                    felt t = f.mul(f.mul(q6[a], q6[b]), q6[c]);
                    // eps_a eps_b eps_c = (-1)^(a+b+c)
                    s = f.add(s, ((a + b + c) % 2 == 0) ? t : f.neg(t));
                }
        return s;
    }
    throw std::invalid_argument("c_value: closed forms exist for characteristics 2 and 3");
}

felt c_on_facet(const ColoringSystem& sys, uint32_t facet_id, std::span<const felt> colors1,
                std::span<const felt> colors2) {
    auto nu = sys.lift(facet_id, colors1, false);
    auto eta = sys.lift(facet_id, colors2, false);
    auto q6 = facet_q_values(sys, facet_id, nu, eta);
    return c_value(sys.field(), q6, sys.field().p());
}

felt delta_q_on_5simplex(const ColoringSystem& sys, uint32_t facet_id,
                         std::span<const felt> colors1, std::span<const felt> colors2) {
    const Field& f = sys.field();
    const ColoringGeometry& g = sys.geometry();
    auto faces = g.complex().boundary_ids(g.d(), facet_id);
    uint32_t cd = g.color_dim();
    felt s = 0;
    for (uint32_t k = 0; k < faces.size(); ++k) {
        felt qv = q_on_face(sys, faces[k], colors1.subspan((size_t)k * cd, cd),
                            colors2.subspan((size_t)k * cd, cd));
        s = f.add(s, (k % 2 == 0) ? qv : f.neg(qv));
    }
    return s;
}

felt delta_c_on_6simplex(const ColoringSystem& sys, std::span<const felt> global1,
                         std::span<const felt> global2, uint32_t characteristic) {
    const Field& f = sys.field();
    const ColoringGeometry& g = sys.geometry();
    const Complex& c = g.complex();
    if (g.d() != 5 || c.dim() != 6 || c.count(6) != 1)
        throw std::invalid_argument("delta_c needs the 5-coloring of one solid 6-simplex");
    auto faces5 = c.boundary_ids(6, 0);
    std::vector<felt> loc1(18), loc2(18);
    felt s = 0;
    for (uint32_t k = 0; k < faces5.size(); ++k) {
        sys.gather(faces5[k], global1, loc1);
        sys.gather(faces5[k], global2, loc2);
        felt cv = c_on_facet(sys, faces5[k], loc1, loc2);
        s = f.add(s, (k % 2 == 0) ? cv : f.neg(cv));
    }
    return s;
}

// --------------------------------------------------------------- universal

namespace {

using Exp = std::array<uint8_t, 5>;           // exponents of e_2..e_6
using ZPoly = std::map<Exp, int64_t>;         // integer polynomial

void add_term(ZPoly& p, const Exp& e, int64_t c) {
    if (!c) return;
    auto [it, fresh] = p.try_emplace(e, 0);
    it->second += c;
    if (!it->second) p.erase(it);
}

// p *= sign * e_i (i in 2..6)
ZPoly mul_by_e(const ZPoly& p, uint32_t i, int64_t sign) {
    ZPoly out;
    for (auto& [e, c] : p) {
        Exp ne = e;
        ne[i - 2] += 1;
        add_term(out, ne, sign * c);
    }
    return out;
}

}  // namespace

UniversalPolynomial universal_polynomial(uint32_t p, uint32_t k, uint64_t cap) {
    uint64_t n = 1;
    for (uint32_t i = 0; i < k; ++i) n *= p;
    if (n > cap)
        throw std::invalid_argument("universal_polynomial: p^k exceeds the cap " +
                                    std::to_string(cap));
    // Newton's identities with e_1 = 0 and six variables:
    //   p_m = sum_{i=2..min(m-1,6)} (-1)^(i-1) e_i p_{m-i} + [m<=6] (-1)^(m-1) m e_m
    std::vector<ZPoly> ps(n + 1);
    for (uint64_t m = 2; m <= n; ++m) {
        ZPoly pm;
        for (uint32_t i = 2; i <= 6 && i + 1 <= m; ++i) {
            ZPoly t = mul_by_e(ps[m - i], i, (i % 2 == 1) ? 1 : -1);
            for (auto& [e, c] : t) add_term(pm, e, c);
        }
        if (m <= 6) {
            Exp e{};
            e[m - 2] = 1;
            add_term(pm, e, (m % 2 == 1) ? (int64_t)m : -(int64_t)m);
        }
        ps[m] = std::move(pm);
    }

    UniversalPolynomial out;
    out.p = p;
    out.k = k;
    out.power = n;
    // divide the power sum by p exactly (the discrete-valuation step) and
    // reduce mod p
    for (auto& [e, c] : ps[n]) {
        if (c % (int64_t)p != 0)
            throw std::logic_error("universal polynomial: coefficient not divisible by p");
        int64_t red = (c / (int64_t)p) % (int64_t)p;
        if (red < 0) red += p;
        if (red) out.terms.push_back({e, (uint32_t)red});
    }
    if (p == 2) out.neg_power_sum_coef = 1;  // -sum_{eps=-1} t_v^n, mod 2
    return out;
}

felt UniversalPolynomial::evaluate(const Field& f, std::span<const felt> q6) const {
    if (f.p() != p) throw std::invalid_argument("universal polynomial: field mismatch");
    // signed values t_v
    std::array<felt, 6> t;
    for (uint32_t v = 0; v < 6; ++v) t[v] = (v % 2 == 0) ? q6[v] : f.neg(q6[v]);
    // elementary symmetric e_1..e_6 of t
    std::array<felt, 7> es{};
    es[0] = 1;
    for (uint32_t v = 0; v < 6; ++v)
        for (uint32_t i = std::min(v + 1, 6u); i >= 1; --i)
            es[i] = f.mul_add(es[i - 1], t[v], es[i]);
    felt s = 0;
    for (auto& m : terms) {
        felt prod = m.coef;
        for (uint32_t i = 0; i < 5; ++i)
            for (uint32_t rep = 0; rep < m.e[i]; ++rep) prod = f.mul(prod, es[i + 2]);
        s = f.add(s, prod);
    }
    if (neg_power_sum_coef) {
        felt ss = 0;
        for (uint32_t v = 1; v < 6; v += 2) ss = f.add(ss, f.pow(t[v], power));
        s = f.add(s, f.mul(neg_power_sum_coef, ss));
    }
    return s;
}

}  // namespace hept
