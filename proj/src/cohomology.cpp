#include "hept/cohomology.hpp"

#include <stdexcept>

namespace hept {

std::vector<uint32_t> betti_numbers(const Complex& c, const Field& f, EchelonOptions opt) {
    uint32_t d = c.dim();
    std::vector<uint32_t> rank_delta(d, 0);  // rank of delta^q, q = 0..d-1
    for (uint32_t q = 0; q < d; ++q) rank_delta[q] = sparse_rank(f, coboundary_matrix(c, q, f), opt);
    std::vector<uint32_t> b(d + 1);
    for (uint32_t q = 0; q <= d; ++q) {
        uint32_t ker = (q < d) ? c.count(q) - rank_delta[q] : c.count(d);
        uint32_t im = (q > 0) ? rank_delta[q - 1] : 0;
        b[q] = ker - im;
    }
    return b;
}

CohomologyBasis cohomology_basis(const Complex& c, uint32_t q, const Field& f,
                                 EchelonOptions opt) {
    if (q > c.dim()) throw std::invalid_argument("cohomology degree out of range");
    CohomologyBasis out;
    out.degree = q;
    SparseMatrix dq = (q < c.dim()) ? coboundary_matrix(c, q, f)
                                    : SparseMatrix(0, c.count(q));  // top degree: no conditions
    SparseMatrix dqm1 = (q > 0) ? coboundary_matrix(c, q - 1, f) : SparseMatrix(c.count(q), 0);
    auto km = kernel_mod_image(f, std::move(dq), dqm1, opt);
    for (uint32_t j = 0; j < km.quotient_dim; ++j) {
        Cochain rep{q, std::vector<felt>(c.count(q), 0)};
        for (uint32_t i = 0; i < c.count(q); ++i) rep.values[i] = km.vectors.at(i, j);
        out.representatives.push_back(std::move(rep));
    }
    return out;
}

std::vector<EnumeratedClass> enumerate_classes(const Complex& c, const Field& f2,
                                               const CohomologyBasis& basis, uint32_t cap) {
    if (f2.p() != 2 || f2.k() != 1)
        throw std::invalid_argument("class enumeration works over F_2");
    if (basis.dim() > cap)
        throw std::invalid_argument("H^" + std::to_string(basis.degree) + " dimension " +
                                    std::to_string(basis.dim()) + " exceeds class cap " +
                                    std::to_string(cap));
    uint32_t n = c.count(basis.degree);
    std::vector<EnumeratedClass> out;
    out.reserve(1u << basis.dim());
    for (uint32_t bits = 0; bits < (1u << basis.dim()); ++bits) {
        EnumeratedClass e;
        e.bits = bits;
        e.rep = Cochain{basis.degree, std::vector<felt>(n, 0)};
        for (uint32_t i = 0; i < basis.dim(); ++i)
            if (bits & (1u << i))
                for (uint32_t j = 0; j < n; ++j)
                    e.rep.values[j] ^= basis.representatives[i].values[j];
        out.push_back(std::move(e));
    }
    return out;
}

OmegaCocycle lift_omega_nonzero(const Complex& c, const Cochain& rep, uint32_t class_bits,
                                const Field& f, uint64_t seed, uint32_t retry_limit) {
    uint32_t q = rep.degree;
    if (q == 0 || q > c.dim()) throw std::invalid_argument("lift: bad cocycle degree");
    for (auto v : rep.values)
        if (v >= f.p()) throw std::invalid_argument("lift: representative not over the prime field");
    auto dq = coboundary_matrix(c, q - 1, f);
    Rng rng(seed, "omega-lift");
    uint32_t nq = c.count(q);
    std::vector<felt> beta(c.count(q - 1));
    for (uint32_t attempt = 0; attempt < retry_limit; ++attempt) {
        for (auto& b : beta) b = rng.element(f);
        // omega = rep + delta beta, checked for zeros on the fly
        OmegaCocycle out;
        out.omega = Cochain{q, std::vector<felt>(nq, 0)};
        bool ok = true;
        for (uint32_t i = 0; i < nq; ++i) {
            felt s = rep.values[i];
            for (auto& e : dq.rows[i])
                s = f.add(s, (/*sign already in matrix*/ f.mul(e.val, beta[e.col])));
            if (!s) {
                ok = false;
                break;
            }
            out.omega.values[i] = s;
        }
        if (ok) {
            out.class_bits = class_bits;
            out.seed = seed;
            return out;
        }
    }
    throw std::runtime_error(
        "lift_omega_nonzero: no everywhere-nonzero lift found in " + std::to_string(retry_limit) +
        " attempts; use a larger field extension (k >= 8 recommended)");
}

}  // namespace hept
