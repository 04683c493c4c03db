#include "hept/pentagon.hpp"

#include <stdexcept>

namespace hept {

felt PentagonData::omega(const Field& f, uint32_t i, uint32_t j) const {
    return f.sub(z[i], z[j]);
}

PentagonData make_pentagon_data(const Field& f, std::vector<felt> z) {
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j)
            if (z[i] == z[j])
                throw std::invalid_argument("pentagon data needs pairwise distinct z values");
    return PentagonData{std::move(z)};
}

PentagonMatrix pentagon_matrix(const Field& f, const PentagonData& data) {
    if (data.z.size() < 4) throw std::invalid_argument("pentagon matrix needs four z values");
    auto d = [&](uint32_t i, uint32_t j) { return f.sub(data.z[i - 1], data.z[j - 1]); };
    felt den = f.mul(d(3, 1), d(4, 2));
    PentagonMatrix out;
    out.m[0][0] = f.div(f.mul(d(3, 2), d(4, 1)), den);
    out.m[0][1] = f.div(f.mul(d(2, 1), d(4, 3)), den);
    out.m[1][0] = f.neg(f.div(d(3, 2), d(3, 1)));
    out.m[1][1] = f.div(d(3, 2), d(3, 1));
    felt a2 = out.m[0][0];  // squared normalized entries are the matrix entries
    felt b2 = out.m[0][1];
    felt a, b;
    if (f.sqrt(a2, a) && f.sqrt(b2, b)) {
        out.normalized_available = true;
        out.normalized[0][0] = a;
        out.normalized[0][1] = b;
        out.normalized[1][0] = f.neg(b);
        out.normalized[1][1] = a;
    }
    return out;
}

Cochain omega_from_z(const Complex& c, const Field& f, const std::vector<felt>& z) {
    if (z.size() != c.n_vertices()) throw std::invalid_argument("one z value per vertex required");
    Cochain om{1, std::vector<felt>(c.count(1), 0)};
    for (uint32_t e = 0; e < c.count(1); ++e) {
        auto s = c.face(1, e);
        om.values[e] = f.sub(z[s[0]], z[s[1]]);
        if (!om.values[e])
            throw std::invalid_argument("equal z values on an edge make omega vanish");
    }
    return om;
}

bool pentagon_relation_check(const Field& f, const std::vector<felt>& z5) {
    if (z5.size() != 5) throw std::invalid_argument("pentagon relation check needs five z values");
    make_pentagon_data(f, z5);  // distinctness
    std::vector<Simplex> facets;
    for (uint32_t omit = 0; omit < 5; ++omit) {
        Simplex fc;
        for (uint32_t i = 0; i < 5; ++i)
            if (i != omit) fc.push_back((Vertex)i);
        facets.push_back(std::move(fc));
    }
    Complex sphere = build_complex(5, facets);
    Cochain om = omega_from_z(sphere, f, z5);
    uint32_t nf = sphere.count(3);
    for (uint32_t mask = 1; mask < (1u << (nf - 1)); ++mask) {
        std::vector<uint32_t> cluster;
        for (uint32_t i = 0; i < nf; ++i)
            if (mask & (1u << i)) cluster.push_back(i);
        if (!check_full_polygon(sphere, f, om, cluster)) return false;
    }
    return true;
}

}  // namespace hept
