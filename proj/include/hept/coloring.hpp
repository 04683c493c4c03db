#pragma once

// The polygon-coloring framework, generic in the manifold dimension d with
// cocycle degree q = d-2 (d = 5 heptagon, d = 4 hexagon, d = 3 pentagon).
//
// Colors of a (d-1)-face are degree-q cocycles on it taken modulo the
// restriction of a fixed q-cocycle omega that is nonzero on every
// q-simplex.  The canonical color basis of a face comes from the shared
// reduced-echelon basis e_1..e_z of the local cocycle space: with
// a = coordinates of omega on the face and i* the first index with
// a_i != 0, the basis classes are [e_i], i != i*, and the class
// coordinates of a cocycle x with coordinates c are d_i = c_i - t a_i,
// t = c_{i*} / a_{i*}.
//
// A d-simplex's permitted colorings are the restrictions of its own
// degree-q cocycles, again modulo omega; stacking the per-simplex linear
// conditions over all facets cuts the global space V_p out of the
// concatenated face-color coordinates.  g-colorings V_g are the colorings
// induced by global coboundaries of (q-1)-cochains.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hept/complex.hpp"

namespace hept {

// coordinates of a coloring of every (d-1)-face, color_dim entries per face
using GlobalColoring = std::vector<felt>;

// combinatorics shared by all classes on one complex; d defaults to the
// complex dimension but may be smaller (colorings of a solid simplex one
// dimension up use d = dim - 1 with its d-faces as the constraint simplices)
struct ColoringGeometry {
    explicit ColoringGeometry(const Complex& c, uint32_t d = 0);

    const Complex& complex() const { return *c_; }
    uint32_t d() const { return d_; }                  // constraint dimension
    uint32_t q() const { return q_; }                  // cocycle degree d-2
    uint32_t color_dim() const { return color_dim_; }  // d-2 colors per face
    uint32_t ambient() const { return color_dim_ * c_->count(d_ - 1); }
    uint32_t col(uint32_t face_id, uint32_t j) const { return face_id * color_dim_ + j; }

    // local combinatorics of the standard simplex with n_verts vertices
    struct Local {
        uint32_t n_verts = 0;
        std::vector<std::vector<uint32_t>> qsub;  // local q-simplices, lex, as vertex subsets
    };
    Local face_tpl, facet_tpl;

    // face restriction: local q-simplex index of face k of the facet template
    // into the facet template's q-simplex index
    std::vector<std::vector<uint32_t>> face_embed;  // [k][face-local index]

    // global q-simplex ids of each (d-1)-face / facet, local lex order
    std::span<const uint32_t> face_qids(uint32_t f) const {
        return {face_qids_.data() + (size_t)f * face_tpl.qsub.size(), face_tpl.qsub.size()};
    }
    std::span<const uint32_t> facet_qids(uint32_t w) const {
        return {facet_qids_.data() + (size_t)w * facet_tpl.qsub.size(), facet_tpl.qsub.size()};
    }

private:
    const Complex* c_;
    uint32_t d_, q_, color_dim_;
    std::vector<uint32_t> face_qids_, facet_qids_;
};

// everything depending on one omega
class ColoringSystem {
public:
    // omega: degree-q cocycle, nonzero on every q-simplex (checked)
    ColoringSystem(const ColoringGeometry& g, const Field& f, Cochain omega);

    const ColoringGeometry& geometry() const { return *g_; }
    const Field& field() const { return *f_; }
    const Cochain& omega() const { return omega_; }
    uint32_t ambient() const { return g_->ambient(); }

    // class coordinates of a local cocycle on a face (values in face-local
    // lex order of q-simplices)
    void face_coords(uint32_t face_id, std::span<const felt> vals, std::span<felt> out) const;

    // representative cocycles spanning the color space of a face, one row
    // per color coordinate
    DenseMatrix face_color_basis(uint32_t face_id) const;

    // permitted subspace of one facet inside its local coordinates
    SubspaceBasis permitted_subspace(uint32_t facet_id) const;

    // per-facet linear conditions stacked over all facets; V_p is its kernel
    SparseMatrix constraint_matrix() const;

    // columns = colorings induced by coboundaries of the (q-1)-cochain
    // basis; V_g is its column space
    SparseMatrix gcoloring_matrix() const;

    // coloring induced by a global degree-q cocycle
    GlobalColoring coloring_of_cocycle(const Cochain& nu) const;

    // restriction of a global coloring to one facet's local coordinates
    void gather(uint32_t facet_id, std::span<const felt> global, std::span<felt> out) const;

    // a cocycle on the facet inducing the given local colors; throws if the
    // colors are not permitted (verify skips the residual check)
    std::vector<felt> lift(uint32_t facet_id, std::span<const felt> local_colors,
                           bool verify = true) const;

    // canonical cocycle on one face representing a single color class
    std::vector<felt> lift_on_face(uint32_t face_id, std::span<const felt> class_coords) const;

    // omega gathered on a facet's q-simplices
    std::span<const felt> omega_on_facet(uint32_t w) const {
        return {facet_omega_.data() + (size_t)w * g_->facet_tpl.qsub.size(),
                g_->facet_tpl.qsub.size()};
    }

private:
    const ColoringGeometry* g_;
    const Field* f_;
    Cochain omega_;
    // RREF bases of the local cocycle spaces over this field
    DenseMatrix face_zbasis_, facet_zbasis_;
    std::vector<uint32_t> face_zpivots_;
    // per face: omega coordinates on the shared z-basis, first nonzero
    // index and its inverse
    std::vector<felt> face_a_;  // flat, z per face
    std::vector<uint32_t> face_istar_;
    std::vector<felt> face_inv_a_;
    std::vector<felt> facet_omega_;  // flat, per facet
    // per facet: lift matrix rows (one per permitted dimension) over the
    // facet's q-simplices, driven by pivot coordinates
    uint32_t lift_rows_ = 0;
    std::vector<felt> lift_;           // facet-major, lift_rows_ x n_qsub
    std::vector<uint32_t> lift_piv_;   // facet-major, lift_rows_ pivot columns
    DenseMatrix phi(uint32_t facet_id) const;  // rows: z-basis images in local colors
};

struct ColoringSpaces {
    uint32_t ambient = 0;
    uint32_t dim_vp = 0, dim_vg = 0;
    uint32_t quotient_dim = 0;
    SubspaceBasis complement;                    // of V_g inside V_p
    std::optional<SubspaceBasis> vp, vg;         // populated on the small path
};

struct GlobalSpaceOptions {
    uint32_t full_basis_max_ambient = 8000;  // compute explicit V_p, V_g below this
    EchelonOptions elim;
};

ColoringSpaces global_spaces(const ColoringSystem& sys, const GlobalSpaceOptions& opt = {});

// boundary-coloring space of a cluster of facets of a sphere complex:
// the projection of the cluster's permitted colorings onto the cluster's
// boundary (d-1)-faces, in the lex order of their vertex tuples
SubspaceBasis cluster_boundary_space(const Complex& sphere, const Field& f, const Cochain& omega,
                                     const std::vector<uint32_t>& cluster_facets);

// polygon relation for one split of the sphere's facets into a cluster and
// its complement: the two boundary spaces coincide
bool check_full_polygon(const Complex& sphere, const Field& f, const Cochain& omega,
                        const std::vector<uint32_t>& cluster_facets);

}  // namespace hept
