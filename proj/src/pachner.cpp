#include "hept/pachner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hept {

std::string MoveDescriptor::kind(uint32_t dim) const {
    return std::to_string(star_size) + "-" + std::to_string(dim + 2 - star_size);
}

namespace {

std::string tuple_str(std::span<const Vertex> s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

}  // namespace

namespace {
// applicability checks; fills the replaced and replacing facet lists
void plan_move(const Complex& m, const MoveDescriptor& mv, std::vector<Simplex>& removed,
               std::vector<Simplex>& added, std::optional<Vertex>& fresh) {
    uint32_t d = m.dim();
    uint32_t ms = mv.star_size;
    if (ms < 1 || ms > d + 1)
        throw std::invalid_argument("move star size " + std::to_string(ms) +
                                    " out of range for dimension " + std::to_string(d));
    const Simplex& tau = mv.location;
    if (tau.size() != d - ms + 2)
        throw std::invalid_argument("move " + mv.kind(d) + " needs a location with " +
                                    std::to_string(d - ms + 2) + " vertices, got " +
                                    tuple_str({tau.data(), tau.size()}));

    if (ms == 1) {
        if (!m.find_face(d, {tau.data(), tau.size()}))
            throw std::invalid_argument("move 1-" + std::to_string(d + 1) + ": location " +
                                        tuple_str({tau.data(), tau.size()}) + " is not a facet");
        fresh = (Vertex)m.n_vertices();
        removed.push_back(tau);
        for (size_t k = 0; k < tau.size(); ++k) {
            Simplex f;
            for (size_t j = 0; j < tau.size(); ++j)
                if (j != k) f.push_back(tau[j]);
            f.push_back(*fresh);  // fresh vertex has the largest id
            added.push_back(std::move(f));
        }
    } else {
        if (!m.find_face((uint32_t)tau.size() - 1, {tau.data(), tau.size()}))
            throw std::invalid_argument("move " + mv.kind(d) + ": location " +
                                        tuple_str({tau.data(), tau.size()}) +
                                        " is not a face of the complex");
        auto star = m.facets_containing({tau.data(), tau.size()});
        if (star.size() != ms)
            throw std::invalid_argument("move " + mv.kind(d) + ": star of " +
                                        tuple_str({tau.data(), tau.size()}) + " has " +
                                        std::to_string(star.size()) + " facets, need " +
                                        std::to_string(ms));
        std::set<Vertex> uni;
        for (auto fi : star) {
            auto f = m.face(d, fi);
            uni.insert(f.begin(), f.end());
        }
        if (uni.size() != d + 2)
            throw std::invalid_argument("move " + mv.kind(d) + ": star union has " +
                                        std::to_string(uni.size()) + " vertices, need " +
                                        std::to_string(d + 2));
        Simplex kappa;
        for (auto v : uni)
            if (!std::binary_search(tau.begin(), tau.end(), v)) kappa.push_back(v);
        if (kappa.size() != ms)
            throw std::invalid_argument("move " + mv.kind(d) + ": opposite simplex has wrong size");
        // the star must be exactly tau * boundary(kappa)
        std::set<Simplex> have;
        for (auto fi : star) {
            auto f = m.face(d, fi);
            have.insert(Simplex(f.begin(), f.end()));
        }
        for (size_t k = 0; k < kappa.size(); ++k) {
            Simplex f = tau;
            for (size_t j = 0; j < kappa.size(); ++j)
                if (j != k) f.push_back(kappa[j]);
            std::sort(f.begin(), f.end());
            if (!have.count(f))
                throw std::invalid_argument("move " + mv.kind(d) + ": star of " +
                                            tuple_str({tau.data(), tau.size()}) +
                                            " is not a join with a simplex boundary");
        }
        if (m.find_face((uint32_t)kappa.size() - 1, {kappa.data(), kappa.size()}))
            throw std::invalid_argument("move " + mv.kind(d) + ": opposite simplex " +
                                        tuple_str({kappa.data(), kappa.size()}) +
                                        " already present");
        for (auto& f : have) removed.push_back(f);
        for (size_t k = 0; k < tau.size(); ++k) {
            Simplex f = kappa;
            for (size_t j = 0; j < tau.size(); ++j)
                if (j != k) f.push_back(tau[j]);
            std::sort(f.begin(), f.end());
            added.push_back(std::move(f));
        }
    }
}
}  // namespace

MoveResult apply_move(const Complex& m, const MoveDescriptor& mv) {
    uint32_t d = m.dim();
    std::vector<Simplex> removed, added;
    std::optional<Vertex> fresh;
    plan_move(m, mv, removed, added, fresh);
    uint32_t new_n_vertices = m.n_vertices() + (fresh ? 1 : 0);

    std::vector<Simplex> old_facets = m.facet_list();
    std::set<Simplex> removed_set(removed.begin(), removed.end());
    std::vector<Simplex> facets;
    for (auto& f : old_facets)
        if (!removed_set.count(f)) facets.push_back(f);
    for (auto& f : added) facets.push_back(f);

    MoveResult out{build_complex(new_n_vertices, facets), fresh, {}, {}};
    out.old_to_new.resize(d + 1);
    out.created.resize(d + 1);
    for (uint32_t q = 0; q <= d; ++q) {
        out.old_to_new[q].assign(m.count(q), MoveResult::NO_FACE);
        std::vector<uint8_t> is_old(out.complex.count(q), 0);
        for (uint32_t i = 0; i < m.count(q); ++i) {
            auto id = out.complex.find_face(q, m.face(q, i));
            if (id) {
                out.old_to_new[q][i] = *id;
                is_old[*id] = 1;
            }
        }
        for (uint32_t i = 0; i < out.complex.count(q); ++i)
            if (!is_old[i]) out.created[q].push_back(i);
    }
    return out;
}

ExtendResult extend_data(const Complex& oldc, const MoveResult& mv, const Field& f,
                         const Cochain& old_omega, const std::vector<GlobalColoring>& colorings,
                         uint64_t seed, uint32_t retry_limit) {
    const Complex& nc = mv.complex;
    uint32_t q = old_omega.degree;
    ExtendResult out;
    out.omega = Cochain{q, std::vector<felt>(nc.count(q), 0)};

    // surviving q-simplices keep their values
    std::vector<uint8_t> known(nc.count(q), 0);
    for (uint32_t i = 0; i < oldc.count(q); ++i) {
        uint32_t ni = mv.old_to_new[q][i];
        if (ni != MoveResult::NO_FACE) {
            out.omega.values[ni] = old_omega.values[i];
            known[ni] = 1;
        }
    }
    const auto& created = mv.created[q];
    std::vector<uint32_t> unknown_of(nc.count(q), UINT32_MAX);
    for (uint32_t j = 0; j < created.size(); ++j) unknown_of[created[j]] = j;

    // cocycle conditions on every (q+1)-simplex touching a created q-simplex
    std::vector<uint32_t> eqs;
    for (uint32_t p = 0; p < nc.count(q + 1); ++p) {
        bool touches = false;
        for (auto id : nc.boundary_ids(q + 1, p)) touches |= !known[id];
        if (touches) eqs.push_back(p);
    }
    DenseMatrix A((uint32_t)eqs.size(), (uint32_t)created.size());
    std::vector<felt> b(eqs.size(), 0);
    for (uint32_t r = 0; r < eqs.size(); ++r) {
        auto ids = nc.boundary_ids(q + 1, eqs[r]);
        for (uint32_t k = 0; k < ids.size(); ++k) {
            felt sign = (k % 2 == 0) ? 1 : f.from_int(-1);
            if (known[ids[k]])
                b[r] = f.sub(b[r], f.mul(sign, out.omega.values[ids[k]]));
            else
                A.at(r, unknown_of[ids[k]]) = f.add(A.at(r, unknown_of[ids[k]]), sign);
        }
    }
    auto part = dense_solve(f, A, b);
    if (!part) throw std::logic_error("extend_data: cocycle extension system inconsistent");
    DenseMatrix hom = dense_nullspace(f, A);

    Rng rng(seed, "extend-omega");
    bool ok = false;
    for (uint32_t attempt = 0; attempt < retry_limit && !ok; ++attempt) {
        std::vector<felt> x = *part;
        for (uint32_t j = 0; j < hom.n_cols; ++j) {
            felt c = rng.element(f);
            if (!c) continue;
            for (uint32_t i = 0; i < hom.n_rows; ++i) x[i] = f.mul_add(c, hom.at(i, j), x[i]);
        }
        ok = true;
        for (auto v : x) ok &= (v != 0);
        if (ok)
            for (uint32_t j = 0; j < created.size(); ++j) out.omega.values[created[j]] = x[j];
    }
    if (!ok)
        throw std::runtime_error(
            "extend_data: no everywhere-nonzero omega extension found; use a larger field");

    // extended omega must be a cocycle on the whole new complex
    {
        auto dm = coboundary_matrix(nc, q, f);
        for (auto e : apply(f, dm, out.omega.values))
            if (e) throw std::logic_error("extend_data: extended omega is not a cocycle");
    }

    if (colorings.empty()) return out;

    // re-solve colors on created (d-1)-faces through the created facets
    uint32_t d = nc.dim();
    ColoringGeometry geo(nc);
    ColoringSystem sys(geo, f, out.omega);
    SparseMatrix C = sys.constraint_matrix();
    uint32_t per = C.n_rows / nc.count(d);
    uint32_t cd = geo.color_dim();
    const auto& newfaces = mv.created[d - 1];
    std::vector<uint32_t> col_unknown(sys.ambient(), UINT32_MAX);
    for (uint32_t j = 0; j < newfaces.size(); ++j)
        for (uint32_t l = 0; l < cd; ++l) col_unknown[geo.col(newfaces[j], l)] = j * cd + l;

    std::vector<uint32_t> rows;
    for (auto w : mv.created[d])
        for (uint32_t r = 0; r < per; ++r) rows.push_back(w * per + r);
    DenseMatrix As((uint32_t)rows.size(), (uint32_t)newfaces.size() * cd);

    for (auto& x : colorings) {
        // carry surviving coordinates over
        GlobalColoring nx(sys.ambient(), 0);
        for (uint32_t fi = 0; fi < oldc.count(d - 1); ++fi) {
            uint32_t ni = mv.old_to_new[d - 1][fi];
            if (ni == MoveResult::NO_FACE) continue;
            for (uint32_t l = 0; l < cd; ++l) nx[geo.col(ni, l)] = x[fi * cd + l];
        }
        std::vector<felt> rhs(rows.size(), 0);
        for (uint32_t r = 0; r < rows.size(); ++r) {
            for (auto& e : C.rows[rows[r]]) {
                if (col_unknown[e.col] != UINT32_MAX)
                    As.at(r, col_unknown[e.col]) = e.val;
                else
                    rhs[r] = f.sub(rhs[r], f.mul(e.val, nx[e.col]));
            }
        }
        auto sol = dense_solve(f, As, rhs);
        if (!sol) throw std::logic_error("extend_data: coloring extension system inconsistent");
        for (uint32_t j = 0; j < newfaces.size(); ++j)
            for (uint32_t l = 0; l < cd; ++l) nx[geo.col(newfaces[j], l)] = (*sol)[j * cd + l];
        for (auto e : apply(f, C, nx))
            if (e) throw std::logic_error("extend_data: extended coloring is not permitted");
        out.colorings.push_back(std::move(nx));
    }
    return out;
}

std::vector<MoveDescriptor> enumerate_moves(const Complex& m, uint32_t star_size) {
    uint32_t d = m.dim();
    std::vector<MoveDescriptor> out;
    if (star_size == 1) {
        for (uint32_t i = 0; i < m.count(d); ++i) {
            auto f = m.face(d, i);
            out.push_back({1, Simplex(f.begin(), f.end())});
        }
        return out;
    }
    uint32_t q = d - star_size + 1;  // dimension of the location
    std::vector<Simplex> removed, added;
    std::optional<Vertex> fresh;
    for (uint32_t i = 0; i < m.count(q); ++i) {
        auto s = m.face(q, i);
        MoveDescriptor mv{star_size, Simplex(s.begin(), s.end())};
        try {
            removed.clear();
            added.clear();
            plan_move(m, mv, removed, added, fresh);
            out.push_back(std::move(mv));
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

}  // namespace hept
