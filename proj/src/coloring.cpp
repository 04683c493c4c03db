#include "hept/coloring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hept {

namespace {

// lex enumeration of k-subsets of {0..n-1}
std::vector<std::vector<uint32_t>> subsets(uint32_t n, uint32_t k) {
    std::vector<std::vector<uint32_t>> out;
    if (k > n) return out;
    std::vector<uint32_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        out.push_back(pick);
        int i = (int)k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (uint32_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

uint32_t index_of(const std::vector<std::vector<uint32_t>>& lst, const std::vector<uint32_t>& v) {
    auto it = std::lower_bound(lst.begin(), lst.end(), v);
    return (uint32_t)(it - lst.begin());
}

// RREF basis (as rows) of degree-q cocycles on the full simplex whose
// q-simplices are listed in qsub
DenseMatrix local_cocycles(const Field& f, const std::vector<std::vector<uint32_t>>& qsub,
                           uint32_t n, uint32_t q, std::vector<uint32_t>& pivots) {
    auto cof = subsets(n, q + 2);
    DenseMatrix delta((uint32_t)cof.size(), (uint32_t)qsub.size());
    for (uint32_t r = 0; r < cof.size(); ++r) {
        std::vector<uint32_t> sub;
        for (uint32_t k = 0; k <= q + 1; ++k) {
            sub.clear();
            for (uint32_t j = 0; j <= q + 1; ++j)
                if (j != k) sub.push_back(cof[r][j]);
            delta.at(r, index_of(qsub, sub)) = (k % 2 == 0) ? 1 : f.from_int(-1);
        }
    }
    DenseMatrix ker = dense_nullspace(f, delta);
    DenseMatrix rows(ker.n_cols, ker.n_rows);
    for (uint32_t i = 0; i < ker.n_rows; ++i)
        for (uint32_t j = 0; j < ker.n_cols; ++j) rows.at(j, i) = ker.at(i, j);
    pivots = rref(f, rows);
    return rows;
}

}  // namespace

ColoringGeometry::ColoringGeometry(const Complex& c, uint32_t d) : c_(&c) {
    if (d == 0) d = c.dim();
    if (d < 3 || d > c.dim())
        throw std::invalid_argument("coloring framework needs 3 <= d <= dim");
    d_ = d;
    q_ = d - 2;
    color_dim_ = d - 2;

    face_tpl.n_verts = d;
    facet_tpl.n_verts = d + 1;
    face_tpl.qsub = subsets(d, q_ + 1);
    facet_tpl.qsub = subsets(d + 1, q_ + 1);

    // face k of the facet = vertices {0..d} minus k, order preserved
    face_embed.assign(d + 1, std::vector<uint32_t>(face_tpl.qsub.size()));
    for (uint32_t k = 0; k <= d; ++k) {
        std::vector<uint32_t> verts;
        for (uint32_t v = 0; v <= d; ++v)
            if (v != k) verts.push_back(v);
        for (uint32_t s = 0; s < face_tpl.qsub.size(); ++s) {
            std::vector<uint32_t> glob;
            for (auto li : face_tpl.qsub[s]) glob.push_back(verts[li]);
            face_embed[k][s] = index_of(facet_tpl.qsub, glob);
        }
    }

    // global q-simplex ids per (d-1)-face and per facet
    uint32_t nfq = (uint32_t)face_tpl.qsub.size(), nwq = (uint32_t)facet_tpl.qsub.size();
    face_qids_.resize((size_t)c.count(d - 1) * nfq);
    Simplex tup;
    for (uint32_t fi = 0; fi < c.count(d - 1); ++fi) {
        auto fv = c.face(d - 1, fi);
        for (uint32_t s = 0; s < nfq; ++s) {
            tup.clear();
            for (auto li : face_tpl.qsub[s]) tup.push_back(fv[li]);
            face_qids_[(size_t)fi * nfq + s] = c.face_id(q_, {tup.data(), tup.size()});
        }
    }
    facet_qids_.resize((size_t)c.count(d) * nwq);
    for (uint32_t wi = 0; wi < c.count(d); ++wi) {
        auto wv = c.face(d, wi);
        for (uint32_t s = 0; s < nwq; ++s) {
            tup.clear();
            for (auto li : facet_tpl.qsub[s]) tup.push_back(wv[li]);
            facet_qids_[(size_t)wi * nwq + s] = c.face_id(q_, {tup.data(), tup.size()});
        }
    }
}

ColoringSystem::ColoringSystem(const ColoringGeometry& g, const Field& f, Cochain omega)
    : g_(&g), f_(&f), omega_(std::move(omega)) {
    const Complex& c = g.complex();
    uint32_t d = g.d();
    if (omega_.degree != g.q()) throw std::invalid_argument("omega degree must be d - 2");
    if (omega_.values.size() != c.count(g.q()))
        throw std::invalid_argument("omega has wrong length");
    for (uint32_t i = 0; i < c.count(g.q()); ++i)
        if (!omega_.values[i])
            throw std::invalid_argument("omega vanishes on q-simplex " + std::to_string(i) +
                                        "; the nonzero condition fails");
    {  // cocycle check
        auto dm = coboundary_matrix(c, g.q(), f);
        auto y = apply(f, dm, omega_.values);
        for (auto e : y)
            if (e) throw std::invalid_argument("omega is not a cocycle");
    }

    // local cocycle bases over this field
    std::vector<uint32_t> wpiv;
    face_zbasis_ = local_cocycles(f, g.face_tpl.qsub, d, g.q(), face_zpivots_);
    facet_zbasis_ = local_cocycles(f, g.facet_tpl.qsub, d + 1, g.q(), wpiv);
    uint32_t z = face_zbasis_.n_rows;
    if (z != g.color_dim() + 1) throw std::logic_error("unexpected local cocycle dimension");

    // omega coordinates per (d-1)-face
    uint32_t nf = c.count(d - 1), nfq = (uint32_t)g.face_tpl.qsub.size();
    face_a_.resize((size_t)nf * z);
    face_istar_.resize(nf);
    face_inv_a_.resize(nf);
    for (uint32_t fi = 0; fi < nf; ++fi) {
        auto qid = g.face_qids(fi);
        uint32_t istar = UINT32_MAX;
        for (uint32_t i = 0; i < z; ++i) {
            felt a = omega_.values[qid[face_zpivots_[i]]];
            face_a_[(size_t)fi * z + i] = a;
            if (a && istar == UINT32_MAX) istar = i;
        }
        if (istar == UINT32_MAX) throw std::logic_error("omega restricts to zero on a face");
        face_istar_[fi] = istar;
        face_inv_a_[fi] = f.inv(face_a_[(size_t)fi * z + istar]);
        // consistency of the pivot reading: omega|face must be a cocycle,
        // which holds by restriction; nothing to recheck here
    }

    // omega on facets, lift data, and the per-facet permitted structure
    uint32_t nw = c.count(d), nwq = (uint32_t)g.facet_tpl.qsub.size();
    facet_omega_.resize((size_t)nw * nwq);
    for (uint32_t wi = 0; wi < nw; ++wi) {
        auto qid = g.facet_qids(wi);
        for (uint32_t s = 0; s < nwq; ++s) facet_omega_[(size_t)wi * nwq + s] = omega_.values[qid[s]];
    }

    uint32_t zw = facet_zbasis_.n_rows;
    lift_rows_ = zw - 1;
    lift_.assign((size_t)nw * lift_rows_ * nwq, 0);
    lift_piv_.assign((size_t)nw * lift_rows_, 0);
    uint32_t amb = (d + 1) * g.color_dim();
    for (uint32_t wi = 0; wi < nw; ++wi) {
        DenseMatrix ph = phi(wi);  // zw x amb
        // RREF with transform tracking: [phi | I]
        DenseMatrix aug(zw, amb + zw);
        for (uint32_t r = 0; r < zw; ++r) {
            for (uint32_t cc = 0; cc < amb; ++cc) aug.at(r, cc) = ph.at(r, cc);
            aug.at(r, amb + r) = 1;
        }
        // eliminate only over the first amb columns
        std::vector<uint32_t> piv;
        uint32_t row = 0;
        for (uint32_t col = 0; col < amb && row < zw; ++col) {
            uint32_t pr = row;
            while (pr < zw && aug.at(pr, col) == 0) ++pr;
            if (pr == zw) continue;
            if (pr != row)
                for (uint32_t cc = 0; cc < amb + zw; ++cc) std::swap(aug.at(pr, cc), aug.at(row, cc));
            felt inv = f.inv(aug.at(row, col));
            if (inv != 1)
                for (uint32_t cc = 0; cc < amb + zw; ++cc) aug.at(row, cc) = f.mul(aug.at(row, cc), inv);
            for (uint32_t r2 = 0; r2 < zw; ++r2) {
                if (r2 == row || !aug.at(r2, col)) continue;
                felt fac = f.neg(aug.at(r2, col));
                for (uint32_t cc = 0; cc < amb + zw; ++cc)
                    aug.at(r2, cc) = f.mul_add(fac, aug.at(row, cc), aug.at(r2, cc));
            }
            piv.push_back(col);
            ++row;
        }
        if (piv.size() != lift_rows_)
            throw std::logic_error("permitted subspace of a facet has unexpected dimension");
        // row r of the echelonized system: colors[piv[r]] determines the
        // z-basis combination via the tracked transform; lift row =
        // transform row * zbasis
        for (uint32_t r = 0; r < lift_rows_; ++r) {
            lift_piv_[(size_t)wi * lift_rows_ + r] = piv[r];
            felt* Lrow = lift_.data() + ((size_t)wi * lift_rows_ + r) * nwq;
            for (uint32_t b = 0; b < zw; ++b) {
                felt t = aug.at(r, amb + b);
                if (!t) continue;
                for (uint32_t s = 0; s < nwq; ++s)
                    Lrow[s] = f.mul_add(t, facet_zbasis_.at(b, s), Lrow[s]);
            }
        }
    }
}

void ColoringSystem::face_coords(uint32_t face_id, std::span<const felt> vals,
                                 std::span<felt> out) const {
    const Field& f = *f_;
    uint32_t z = face_zbasis_.n_rows;
    uint32_t istar = face_istar_[face_id];
    const felt* a = face_a_.data() + (size_t)face_id * z;
    felt t = f.mul(vals[face_zpivots_[istar]], face_inv_a_[face_id]);
    uint32_t j = 0;
    for (uint32_t i = 0; i < z; ++i) {
        if (i == istar) continue;
        felt ci = vals[face_zpivots_[i]];
        out[j++] = f.sub(ci, f.mul(t, a[i]));
    }
}

DenseMatrix ColoringSystem::face_color_basis(uint32_t face_id) const {
    uint32_t z = face_zbasis_.n_rows, n = face_zbasis_.n_cols;
    uint32_t istar = face_istar_[face_id];
    DenseMatrix out(z - 1, n);
    uint32_t j = 0;
    for (uint32_t i = 0; i < z; ++i) {
        if (i == istar) continue;
        for (uint32_t s = 0; s < n; ++s) out.at(j, s) = face_zbasis_.at(i, s);
        ++j;
    }
    return out;
}

DenseMatrix ColoringSystem::phi(uint32_t facet_id) const {
    const Field& f = *f_;
    const ColoringGeometry& g = *g_;
    uint32_t d = g.d();
    uint32_t zw = facet_zbasis_.n_rows;
    uint32_t nfq = (uint32_t)g.face_tpl.qsub.size();
    uint32_t amb = (d + 1) * g.color_dim();
    auto faces = g.complex().boundary_ids(d, facet_id);
    DenseMatrix out(zw, amb);
    std::vector<felt> vals(nfq);
    std::vector<felt> coords(g.color_dim());
    for (uint32_t b = 0; b < zw; ++b) {
        for (uint32_t k = 0; k <= d; ++k) {
            for (uint32_t s = 0; s < nfq; ++s)
                vals[s] = facet_zbasis_.at(b, g.face_embed[k][s]);
            face_coords(faces[k], vals, coords);
            for (uint32_t j = 0; j < g.color_dim(); ++j)
                out.at(b, k * g.color_dim() + j) = coords[j];
        }
    }
    return out;
}

SubspaceBasis ColoringSystem::permitted_subspace(uint32_t facet_id) const {
    DenseMatrix ph = phi(facet_id);
    // columns spanning the row space of phi
    DenseMatrix t(ph.n_cols, ph.n_rows);
    for (uint32_t r = 0; r < ph.n_rows; ++r)
        for (uint32_t c = 0; c < ph.n_cols; ++c) t.at(c, r) = ph.at(r, c);
    return column_space(*f_, to_sparse(*f_, t));
}

SparseMatrix ColoringSystem::constraint_matrix() const {
    const Field& f = *f_;
    const ColoringGeometry& g = *g_;
    const Complex& c = g.complex();
    uint32_t d = g.d();
    uint32_t amb = (d + 1) * g.color_dim();
    uint32_t per = amb - lift_rows_;  // conditions per facet
    SparseMatrix m(per * c.count(d), g.ambient());
    for (uint32_t wi = 0; wi < c.count(d); ++wi) {
        DenseMatrix ph = phi(wi);
        DenseMatrix ker = dense_nullspace(f, ph);  // amb x per
        if (ker.n_cols != per) throw std::logic_error("facet condition count mismatch");
        auto faces = c.boundary_ids(d, wi);
        for (uint32_t j = 0; j < per; ++j) {
            uint32_t row = wi * per + j;
            for (uint32_t k = 0; k <= d; ++k)
                for (uint32_t l = 0; l < g.color_dim(); ++l) {
                    felt v = ker.at(k * g.color_dim() + l, j);
                    if (v) m.add(row, g.col(faces[k], l), v);
                }
        }
    }
    m.canonicalize(f);
    return m;
}

SparseMatrix ColoringSystem::gcoloring_matrix() const {
    const Field& f = *f_;
    const ColoringGeometry& g = *g_;
    const Complex& c = g.complex();
    uint32_t d = g.d(), q = g.q();
    uint32_t nfq = (uint32_t)g.face_tpl.qsub.size();
    SparseMatrix m(g.ambient(), c.count(q - 1));
    std::vector<felt> coords(g.color_dim());
    // per face: local values of delta(e_t) for each touching (q-1)-face t
    std::map<uint32_t, std::vector<felt>> local;
    for (uint32_t fi = 0; fi < c.count(d - 1); ++fi) {
        local.clear();
        auto qid = g.face_qids(fi);
        for (uint32_t s = 0; s < nfq; ++s) {
            auto bd = c.boundary_ids(q, qid[s]);
            for (uint32_t k = 0; k < bd.size(); ++k) {
                auto& vec = local[bd[k]];
                if (vec.empty()) vec.assign(nfq, 0);
                vec[s] = (k % 2 == 0) ? 1 : f.from_int(-1);
            }
        }
        for (auto& [t, vals] : local) {
            face_coords(fi, vals, coords);
            for (uint32_t j = 0; j < g.color_dim(); ++j)
                if (coords[j]) m.add(g.col(fi, j), t, coords[j]);
        }
    }
    m.canonicalize(f);
    return m;
}

GlobalColoring ColoringSystem::coloring_of_cocycle(const Cochain& nu) const {
    const ColoringGeometry& g = *g_;
    const Complex& c = g.complex();
    if (nu.degree != g.q() || nu.values.size() != c.count(g.q()))
        throw std::invalid_argument("coloring_of_cocycle: wrong cochain shape");
    uint32_t nfq = (uint32_t)g.face_tpl.qsub.size();
    GlobalColoring out(ambient(), 0);
    std::vector<felt> vals(nfq);
    std::vector<felt> coords(g.color_dim());
    for (uint32_t fi = 0; fi < c.count(g.d() - 1); ++fi) {
        auto qid = g.face_qids(fi);
        for (uint32_t s = 0; s < nfq; ++s) vals[s] = nu.values[qid[s]];
        face_coords(fi, vals, coords);
        for (uint32_t j = 0; j < g.color_dim(); ++j) out[g.col(fi, j)] = coords[j];
    }
    return out;
}

void ColoringSystem::gather(uint32_t facet_id, std::span<const felt> global,
                            std::span<felt> out) const {
    const ColoringGeometry& g = *g_;
    uint32_t d = g.d();
    auto faces = g.complex().boundary_ids(d, facet_id);
    uint32_t j = 0;
    for (uint32_t k = 0; k <= d; ++k)
        for (uint32_t l = 0; l < g.color_dim(); ++l) out[j++] = global[g.col(faces[k], l)];
}

std::vector<felt> ColoringSystem::lift(uint32_t facet_id, std::span<const felt> local_colors,
                                       bool verify) const {
    const Field& f = *f_;
    const ColoringGeometry& g = *g_;
    uint32_t nwq = (uint32_t)g.facet_tpl.qsub.size();
    std::vector<felt> nu(nwq, 0);
    const uint32_t* piv = lift_piv_.data() + (size_t)facet_id * lift_rows_;
    const felt* L = lift_.data() + (size_t)facet_id * lift_rows_ * nwq;
    for (uint32_t r = 0; r < lift_rows_; ++r) {
        felt cval = local_colors[piv[r]];
        if (!cval) continue;
        const felt* Lrow = L + (size_t)r * nwq;
        for (uint32_t s = 0; s < nwq; ++s) nu[s] = f.mul_add(cval, Lrow[s], nu[s]);
    }
    if (verify) {
        // induced face classes must reproduce the requested colors exactly
        uint32_t d = g.d();
        uint32_t nfq = (uint32_t)g.face_tpl.qsub.size();
        auto faces = g.complex().boundary_ids(d, facet_id);
        std::vector<felt> vals(nfq), coords(g.color_dim());
        for (uint32_t k = 0; k <= d; ++k) {
            for (uint32_t s = 0; s < nfq; ++s) vals[s] = nu[g.face_embed[k][s]];
            face_coords(faces[k], vals, coords);
            for (uint32_t j = 0; j < g.color_dim(); ++j)
                if (coords[j] != local_colors[k * g.color_dim() + j])
                    throw std::invalid_argument("lift: colors are not a permitted coloring");
        }
    }
    return nu;
}

std::vector<felt> ColoringSystem::lift_on_face(uint32_t face_id,
                                               std::span<const felt> class_coords) const {
    const Field& f = *f_;
    uint32_t z = face_zbasis_.n_rows, n = face_zbasis_.n_cols;
    uint32_t istar = face_istar_[face_id];
    std::vector<felt> out(n, 0);
    uint32_t j = 0;
    for (uint32_t i = 0; i < z; ++i) {
        if (i == istar) continue;
        felt cv = class_coords[j++];
        if (cv)
            for (uint32_t s = 0; s < n; ++s) out[s] = f.mul_add(cv, face_zbasis_.at(i, s), out[s]);
    }
    return out;
}

ColoringSpaces global_spaces(const ColoringSystem& sys, const GlobalSpaceOptions& opt) {
    const Field& f = sys.field();
    ColoringSpaces out;
    out.ambient = sys.ambient();
    SparseMatrix C = sys.constraint_matrix();
    SparseMatrix G = sys.gcoloring_matrix();
    auto km = kernel_mod_image(f, std::move(C), G, opt.elim);
    out.dim_vp = km.kernel_dim;
    out.dim_vg = km.image_rank;
    out.quotient_dim = km.quotient_dim;
    out.complement.ambient = out.ambient;
    out.complement.cols = std::move(km.vectors);
    if (out.ambient <= opt.full_basis_max_ambient) {
        auto rn = rank_and_nullspace(f, sys.constraint_matrix(), opt.elim);
        if (rn.nullspace.dim() != out.dim_vp) throw std::logic_error("V_p dimension mismatch");
        out.vp = std::move(rn.nullspace);
        auto vg = column_space(f, G);
        if (vg.dim() != out.dim_vg) throw std::logic_error("V_g dimension mismatch");
        out.vg = std::move(vg);
    }
    return out;
}

SubspaceBasis cluster_boundary_space(const Complex& sphere, const Field& f, const Cochain& omega,
                                     const std::vector<uint32_t>& cluster_facets) {
    uint32_t d = sphere.dim();
    if (cluster_facets.empty() || cluster_facets.size() > sphere.count(d))
        throw std::invalid_argument("cluster must be a nonempty proper facet set");
    std::vector<Simplex> facets;
    for (auto fi : cluster_facets) {
        auto s = sphere.face(d, fi);
        facets.emplace_back(s.begin(), s.end());
    }
    Complex cl = build_complex(sphere.n_vertices(), facets);
    // omega restricted to the cluster
    Cochain om{omega.degree, std::vector<felt>(cl.count(omega.degree), 0)};
    for (uint32_t i = 0; i < cl.count(omega.degree); ++i)
        om.values[i] = omega.values[sphere.face_id(omega.degree, cl.face(omega.degree, i))];
    ColoringGeometry geo(cl);
    ColoringSystem sys(geo, f, std::move(om));

    auto rn = rank_and_nullspace(f, sys.constraint_matrix());
    // boundary faces: (d-1)-faces lying in exactly one cluster facet
    std::vector<uint32_t> use(cl.count(d - 1), 0);
    for (uint32_t wi = 0; wi < cl.count(d); ++wi)
        for (auto id : cl.boundary_ids(d, wi)) ++use[id];
    std::vector<uint32_t> bfaces;
    for (uint32_t i = 0; i < use.size(); ++i)
        if (use[i] == 1) bfaces.push_back(i);
    // cluster faces are already lex-sorted by vertex tuple, so this order is
    // identical for the complementary cluster
    uint32_t cdim = geo.color_dim();
    DenseMatrix proj((uint32_t)bfaces.size() * cdim, rn.nullspace.dim());
    for (uint32_t b = 0; b < bfaces.size(); ++b)
        for (uint32_t j = 0; j < cdim; ++j)
            for (uint32_t v = 0; v < rn.nullspace.dim(); ++v)
                proj.at(b * cdim + j, v) = rn.nullspace.cols.at(geo.col(bfaces[b], j), v);
    return column_space(f, to_sparse(f, proj));
}

bool check_full_polygon(const Complex& sphere, const Field& f, const Cochain& omega,
                        const std::vector<uint32_t>& cluster_facets) {
    uint32_t nf = sphere.count(sphere.dim());
    std::vector<uint8_t> in(nf, 0);
    for (auto i : cluster_facets) in.at(i) = 1;
    std::vector<uint32_t> rest;
    for (uint32_t i = 0; i < nf; ++i)
        if (!in[i]) rest.push_back(i);
    if (cluster_facets.empty() || rest.empty())
        throw std::invalid_argument("full polygon needs a proper split");
    auto lhs = cluster_boundary_space(sphere, f, omega, cluster_facets);
    auto rhs = cluster_boundary_space(sphere, f, omega, rest);
    return subspaces_equal(f, lhs, rhs);
}

}  // namespace hept
