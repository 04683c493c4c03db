#include "hept/manifolds.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <stdexcept>

#ifndef HEPT_DATA_DIR
#define HEPT_DATA_DIR "data"
#endif

namespace hept {

std::string data_directory() {
    if (const char* env = std::getenv("HEPTAGON_DATA_DIR")) return env;
    return HEPT_DATA_DIR;
}

namespace {

Complex sphere(uint32_t n) {  // boundary of the (n+1)-simplex
    std::vector<Simplex> facets;
    for (uint32_t omit = 0; omit <= n + 1; ++omit) {
        Simplex f;
        for (uint32_t i = 0; i <= n + 1; ++i)
            if (i != omit) f.push_back((Vertex)i);
        facets.push_back(std::move(f));
    }
    return build_complex(n + 2, facets);
}

Complex circle3() { return build_complex(3, {{0, 1}, {0, 2}, {1, 2}}); }

Complex load_data_complex(const std::string& file) {
    auto path = std::filesystem::path(data_directory()) / file;
    return read_complex_file(path.string());
}

CatalogEntry checked(CatalogEntry e) {
    auto rep = validate_closed_pseudomanifold(e.complex);
    if (!rep.pass())
        throw std::runtime_error("catalog entry " + e.name + " fails pseudomanifold validation" +
                                 (rep.violations.empty() ? "" : ": " + rep.violations.front()));
    Field f2(2, 1);
    auto b = betti_numbers(e.complex, f2);
    if (b != e.expected_betti_f2)
        throw std::runtime_error("catalog entry " + e.name + " has unexpected F2 cohomology");
    if (orientable(e.complex) != e.orientable)
        throw std::runtime_error("catalog entry " + e.name + " has unexpected orientability");
    return e;
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"S1", "S2", "S3", "RP2", "RP3", "RP4", "Klein"};
}

CatalogEntry catalog_get(const std::string& name) {
    if (name == "S1")
        return checked({"S1", circle3(), {1, 1}, true, "3-vertex circle"});
    if (name == "S2")
        return checked({"S2", sphere(2), {1, 0, 1}, true, "boundary of the 3-simplex"});
    if (name == "S3")
        return checked({"S3", sphere(3), {1, 0, 0, 1}, true, "boundary of the 4-simplex"});
    if (name == "RP2")
        return checked({"RP2", load_data_complex("rp2.cplx"), {1, 1, 1}, false,
                        "6-vertex projective plane, see data/rp2.cplx"});
    if (name == "RP3")
        return checked({"RP3", load_data_complex("rp3.cplx"), {1, 1, 1, 1}, true,
                        "see data/rp3.cplx"});
    if (name == "RP4")
        return checked({"RP4", load_data_complex("rp4.cplx"), {1, 1, 1, 1, 1}, false,
                        "see data/rp4.cplx"});
    if (name == "Klein")
        return checked({"Klein", load_data_complex("klein.cplx"), {1, 2, 1}, false,
                        "see data/klein.cplx"});
    throw std::invalid_argument("unknown catalog manifold: " + name);
}

Complex staircase_product(const Complex& a, const Complex& b) {
    uint32_t nb = b.n_vertices();
    auto vid = [nb](Vertex u, Vertex v) { return (Vertex)((uint32_t)u * nb + (uint32_t)v); };
    uint32_t p = a.dim(), q = b.dim();
    std::vector<Simplex> facets;
    // monotone paths: choose which of the p+q steps advance in a
    std::vector<uint32_t> pick(p);
    for (uint32_t fa = 0; fa < a.count(p); ++fa) {
        auto sa = a.face(p, fa);
        for (uint32_t fb = 0; fb < b.count(q); ++fb) {
            auto sb = b.face(q, fb);
            // lex enumeration of p-subsets of {0..p+q-1}
            if (p == 0) {
                Simplex fac;
                for (uint32_t j = 0; j <= q; ++j) fac.push_back(vid(sa[0], sb[j]));
                facets.push_back(std::move(fac));
                continue;
            }
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                Simplex fac;
                uint32_t ia = 0, ib = 0, pi = 0;
                fac.push_back(vid(sa[0], sb[0]));
                for (uint32_t step = 0; step < p + q; ++step) {
                    if (pi < p && pick[pi] == step) {
                        ++ia;
                        ++pi;
                    } else {
                        ++ib;
                    }
                    fac.push_back(vid(sa[ia], sb[ib]));
                }
                facets.push_back(std::move(fac));
                int i = (int)p - 1;
                while (i >= 0 && pick[i] == p + q - p + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (uint32_t j = i + 1; j < p; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return build_complex(a.n_vertices() * nb, facets);
}

Complex resolve_manifold(const std::string& spec) {
    if (spec.find('/') != std::string::npos || spec.find(".cplx") != std::string::npos)
        return read_complex_file(spec);
    std::vector<std::string> parts;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t nxt = spec.find('x', pos);
        if (nxt == std::string::npos) {
            parts.push_back(spec.substr(pos));
            break;
        }
        parts.push_back(spec.substr(pos, nxt - pos));
        pos = nxt + 1;
    }
    if (parts.empty()) throw std::invalid_argument("empty manifold spec");
    Complex cur = catalog_get(parts[0]).complex;
    for (size_t i = 1; i < parts.size(); ++i)
        cur = staircase_product(cur, catalog_get(parts[i]).complex);
    return cur;
}

Complex antipodal_quotient_rp(uint32_t n) {
    if (n < 2 || n > 4) throw std::invalid_argument("antipodal_quotient_rp: need 2 <= n <= 4");
    // boundary of the (n+1)-cross-polytope: vertex 2a+s is the s-signed
    // vertex of axis a; facets pick one sign per axis
    std::vector<Simplex> facets;
    for (uint32_t mask = 0; mask < (1u << (n + 1)); ++mask) {
        Simplex f;
        for (uint32_t a = 0; a < n + 1; ++a) f.push_back((Vertex)(2 * a + ((mask >> a) & 1)));
        facets.push_back(std::move(f));
    }
    Complex cross = build_complex(2 * (n + 1), facets);
    auto sd = barycentric_subdivision(cross);

    // involution on subdivision vertices: face -> antipodal face
    const Complex& K = sd.complex;
    std::vector<Vertex> partner(K.n_vertices());
    for (uint32_t q = 0; q <= cross.dim(); ++q) {
        for (uint32_t i = 0; i < cross.count(q); ++i) {
            auto s = cross.face(q, i);
            Simplex anti(s.begin(), s.end());
            for (auto& v : anti) v ^= 1;  // flip sign bit
            std::sort(anti.begin(), anti.end());
            partner[sd.vertex_of[q][i]] = sd.vertex_of[q][cross.face_id(q, anti)];
        }
    }
    // orbit representatives, relabeled in id order
    std::vector<Vertex> orbit(K.n_vertices(), -1);
    Vertex next = 0;
    for (uint32_t v = 0; v < K.n_vertices(); ++v) {
        if (orbit[v] >= 0) continue;
        orbit[v] = next;
        orbit[partner[v]] = next;
        ++next;
    }
    std::vector<Simplex> qfacets;
    for (auto& fac : K.facet_list()) {
        Simplex img;
        for (auto v : fac) img.push_back(orbit[v]);
        std::sort(img.begin(), img.end());
        for (size_t i = 1; i < img.size(); ++i)
            if (img[i - 1] == img[i])
                throw std::logic_error("antipodal quotient is not simplicial");
        qfacets.push_back(std::move(img));
    }
    std::sort(qfacets.begin(), qfacets.end());
    qfacets.erase(std::unique(qfacets.begin(), qfacets.end()), qfacets.end());
    return build_complex((uint32_t)next, qfacets);
}

}  // namespace hept
