#pragma once

// The triangulated manifolds used in the computations: a catalog of small
// building blocks, staircase products, and an antipodal-quotient RP^n
// generator.

#include <string>
#include <vector>

#include "hept/cohomology.hpp"
#include "hept/complex.hpp"

namespace hept {

struct CatalogEntry {
    std::string name;
    Complex complex;
    std::vector<uint32_t> expected_betti_f2;  // b_0..b_dim
    bool orientable = false;
    std::string provenance;
};

// name in {S1, S2, S3, RP2, RP3, RP4, Klein}; validated on load
CatalogEntry catalog_get(const std::string& name);
std::vector<std::string> catalog_names();

// directory the shipped facet files are read from (HEPTAGON_DATA_DIR
// overrides the build-time default)
std::string data_directory();

// staircase triangulation of |a| x |b|: vertices are pairs ordered
// lexicographically, facets are monotone lattice paths through each
// facet pair
Complex staircase_product(const Complex& a, const Complex& b);

// "AxBxC": x-separated catalog names, left-associated product
Complex resolve_manifold(const std::string& spec);

// RP^n as the antipodal quotient of the barycentrically subdivided
// boundary of the (n+1)-dimensional cross-polytope, 2 <= n <= 4
Complex antipodal_quotient_rp(uint32_t n);

}  // namespace hept
