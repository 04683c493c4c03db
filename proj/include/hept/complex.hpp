#pragma once

// Simplicial complexes with fully materialized face tables per dimension.
//
// Vertices are natural numbers and every simplex is a strictly increasing
// vertex tuple; all orientation signs derive from this global order, so
// the incidence number between a face and the k-th of its cofaces is
// (-1)^k with k the omitted position.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hept/gf.hpp"
#include "hept/linalg.hpp"

namespace hept {

using Vertex = int32_t;
using Simplex = std::vector<Vertex>;  // strictly increasing

// All q-simplices of one dimension, lexicographically sorted, stored flat.
struct FaceSet {
    uint32_t arity = 0;  // q + 1
    std::vector<Vertex> flat;

    uint32_t count() const { return arity ? (uint32_t)(flat.size() / arity) : 0; }
    std::span<const Vertex> get(uint32_t i) const { return {flat.data() + (size_t)i * arity, arity}; }
    std::optional<uint32_t> find(std::span<const Vertex> s) const;
};

class Complex {
public:
    uint32_t n_vertices() const { return n_vertices_; }
    uint32_t dim() const { return dim_; }

    const FaceSet& faces(uint32_t q) const { return faces_[q]; }
    uint32_t count(uint32_t q) const { return faces_[q].count(); }
    std::span<const Vertex> face(uint32_t q, uint32_t id) const { return faces_[q].get(id); }
    std::optional<uint32_t> find_face(uint32_t q, std::span<const Vertex> s) const {
        return faces_[q].find(s);
    }
    uint32_t face_id(uint32_t q, std::span<const Vertex> s) const;

    // ids of the (q-1)-faces of a q-face, in vertex-omission order
    std::span<const uint32_t> boundary_ids(uint32_t q, uint32_t id) const {
        return {boundary_.at(q).data() + (size_t)id * (q + 1), q + 1};
    }

    // facets (top-dimensional faces) containing every vertex of s
    std::vector<uint32_t> facets_containing(std::span<const Vertex> s) const;

    std::vector<Simplex> facet_list() const;

    friend Complex build_complex(uint32_t n_vertices, const std::vector<Simplex>& facets);

private:
    uint32_t n_vertices_ = 0, dim_ = 0;
    std::vector<FaceSet> faces_;                     // 0..dim
    std::vector<std::vector<uint32_t>> boundary_;    // boundary_[q], flat stride q+1
};

Complex build_complex(uint32_t n_vertices, const std::vector<Simplex>& facets);

// degree-q field-valued cochain, indexed by faces(q) order
struct Cochain {
    uint32_t degree = 0;
    std::vector<felt> values;
};

// matrix of delta: C^q -> C^(q+1); entry ((q+1)-face, q-face) = (-1)^k
// when the q-face omits the k-th vertex
SparseMatrix coboundary_matrix(const Complex& c, uint32_t q, const Field& f);

// evaluate (delta x) on one (q+1)-face
felt coboundary_value(const Field& f, const Complex& c, uint32_t q, uint32_t coface_id,
                      const Cochain& x);

struct Subdivision {
    Complex complex;
    // new vertex assigned to each original face: vertex_of[q][face_id]
    std::vector<std::vector<Vertex>> vertex_of;
};
Subdivision barycentric_subdivision(const Complex& c);

struct PseudomanifoldReport {
    bool closed = false;     // every (d-1)-face in exactly two facets
    bool connected = false;  // facet adjacency graph connected
    std::vector<std::string> violations;
    bool pass() const { return closed && connected; }
};
PseudomanifoldReport validate_closed_pseudomanifold(const Complex& c);

// facet-sign 2-coloring test
bool orientable(const Complex& c);

int64_t euler_characteristic(const Complex& c);

// text format: "dim <d> vertices <n>", then one facet per line, strictly
// increasing 0-based indices; '#' starts a comment; facets sorted on write
Complex read_complex(std::istream& in);
Complex read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const Complex& c);

// "degree <q> field <p> <k>", then per q-face: the tuple, then k coefficients
Cochain read_cochain(std::istream& in, const Complex& c, const Field& f);
void write_cochain(std::ostream& out, const Complex& c, const Field& f, const Cochain& x);

}  // namespace hept
