#include "hept/invariant.hpp"

#include <array>
#include <atomic>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hept/heptagon.hpp"

namespace hept {

felt state_sum(const ColoringSystem& sys, const GlobalColoring& rho, const GlobalColoring& sigma) {
    const Field& f = sys.field();
    const ColoringGeometry& g = sys.geometry();
    if (f.p() != 2) throw std::invalid_argument("state_sum: the global invariant uses p = 2");
    if (g.d() != 5) throw std::invalid_argument("state_sum: needs the heptagon structure");
    if (rho.size() != sys.ambient() || sigma.size() != sys.ambient())
        throw std::invalid_argument("state_sum: coloring of wrong size");
    const Complex& c = g.complex();
    std::vector<felt> l1(18), l2(18);
    felt s = 0;
    for (uint32_t w = 0; w < c.count(g.d()); ++w) {
        sys.gather(w, rho, l1);
        sys.gather(w, sigma, l2);
        auto nu = sys.lift(w, l1, true);  // throws on non-permitted colorings
        auto eta = sys.lift(w, l2, true);
        auto q6 = facet_q_values(sys, w, nu, eta);
        s = f.add(s, c_value(f, q6, 2));
    }
    return s;
}

namespace {

// per-class evaluation cache: lifted cocycles of every basis vector on
// every facet, and inverted omega values
struct LiftCache {
    uint32_t n_facets = 0, n_q = 0, dim = 0;
    std::vector<felt> lifted;   // [facet][vec][tetra]
    std::vector<felt> inv_om;   // [facet][tetra]

    const felt* at(uint32_t w, uint32_t j) const {
        return lifted.data() + ((size_t)w * dim + j) * n_q;
    }
};

LiftCache build_cache(const ColoringSystem& sys, const SubspaceBasis& basis) {
    const ColoringGeometry& g = sys.geometry();
    const Field& f = sys.field();
    const Complex& c = g.complex();
    LiftCache out;
    out.n_facets = c.count(g.d());
    out.n_q = (uint32_t)g.facet_tpl.qsub.size();
    out.dim = basis.dim();
    out.lifted.resize((size_t)out.n_facets * out.dim * out.n_q);
    out.inv_om.resize((size_t)out.n_facets * out.n_q);
    std::vector<felt> global(sys.ambient());
    std::vector<felt> local(18);
    for (uint32_t j = 0; j < out.dim; ++j) {
        for (uint32_t r = 0; r < sys.ambient(); ++r) global[r] = basis.cols.at(r, j);
        for (uint32_t w = 0; w < out.n_facets; ++w) {
            sys.gather(w, global, local);
            auto nu = sys.lift(w, local, true);
            std::copy(nu.begin(), nu.end(), out.lifted.begin() + ((size_t)w * out.dim + j) * out.n_q);
        }
    }
    for (uint32_t w = 0; w < out.n_facets; ++w) {
        auto om = sys.omega_on_facet(w);
        for (uint32_t s = 0; s < out.n_q; ++s)
            out.inv_om[(size_t)w * out.n_q + s] = f.inv(om[s]);
    }
    return out;
}

// c summed over all facets for lift-cached arguments nu = sum of cached
// vectors in `is`, eta = sum over `js`
felt cached_sum(const ColoringSystem& sys, const LiftCache& cache,
                std::span<const uint32_t> is, std::span<const uint32_t> js) {
    const Field& f = sys.field();
    const ColoringGeometry& g = sys.geometry();
    uint32_t nq = cache.n_q;
    std::vector<felt> nu(nq), eta(nq), mu(nq);
    std::array<felt, 5> vals;
    std::array<felt, 6> q6;
    felt total = 0;
    for (uint32_t w = 0; w < cache.n_facets; ++w) {
        std::fill(nu.begin(), nu.end(), 0);
        std::fill(eta.begin(), eta.end(), 0);
        for (auto i : is) {
            const felt* src = cache.at(w, i);
            for (uint32_t s = 0; s < nq; ++s) nu[s] = f.add(nu[s], src[s]);
        }
        for (auto j : js) {
            const felt* src = cache.at(w, j);
            for (uint32_t s = 0; s < nq; ++s) eta[s] = f.add(eta[s], src[s]);
        }
        const felt* iw = cache.inv_om.data() + (size_t)w * nq;
        for (uint32_t s = 0; s < nq; ++s) mu[s] = f.mul(f.mul(nu[s], eta[s]), iw[s]);
        for (uint32_t k = 0; k < 6; ++k) {
            for (uint32_t j2 = 0; j2 < 5; ++j2)
                vals[j2] = mu[g.face_embed[k][(uint32_t)g.face_tpl.qsub.size() - 1 - j2]];
            felt s = 0;
            for (uint32_t j2 = 0; j2 < 5; ++j2)
                s = f.add(s, (j2 % 2 == 0) ? vals[j2] : f.neg(vals[j2]));
            q6[k] = s;
        }
        total = f.add(total, c_value(f, q6, 2));
    }
    return total;
}

}  // namespace

InvariantResult extract_matrix(const ColoringSystem& sys, const ColoringSpaces& spaces,
                               const InvariantOptions& opt) {
    const Field& f = sys.field();
    InvariantResult out;
    out.quotient_dim = spaces.quotient_dim;
    uint32_t q = spaces.quotient_dim;
    out.a = DenseMatrix(q, q);
    if (q == 0) {
        out.certificate_checked = opt.certificate;
        return out;
    }
    LiftCache cache = build_cache(sys, spaces.complement);
    for (uint32_t i = 0; i < q; ++i) {
        uint32_t ii[1] = {i};
        for (uint32_t j = 0; j < q; ++j) {
            uint32_t jj[1] = {j};
            out.a.at(i, j) = cached_sum(sys, cache, ii, jj);
        }
    }
    out.rank_a = dense_rank(f, out.a);
    if (opt.certificate) {
        out.certificate_checked = true;
        for (uint32_t i = 0; i < q && out.a_symmetric; ++i)
            for (uint32_t j = i + 1; j < q; ++j)
                if (out.a.at(i, j) != out.a.at(j, i)) {
                    out.a_symmetric = false;
                    break;
                }
        // cross terms: f(e_i + e_j, e_l) = f(e_i, e_l) + f(e_j, e_l), both slots
        for (uint32_t i = 0; i < q && out.cross_terms_vanish; ++i) {
            for (uint32_t j = i + 1; j < q && out.cross_terms_vanish; ++j) {
                uint32_t ij[2] = {i, j};
                for (uint32_t l = 0; l < q; ++l) {
                    uint32_t ll[1] = {l};
                    felt lhs = cached_sum(sys, cache, ij, ll);
                    if (lhs != f.add(out.a.at(i, l), out.a.at(j, l))) {
                        out.cross_terms_vanish = false;
                        break;
                    }
                    felt rhs = cached_sum(sys, cache, ll, ij);
                    if (rhs != f.add(out.a.at(l, i), out.a.at(l, j))) {
                        out.cross_terms_vanish = false;
                        break;
                    }
                }
            }
        }
        if (!out.certificate_ok()) {
            // fall back to reporting the raw quadratic-quadratic data over
            // all one- and two-index combinations
            std::vector<std::vector<uint32_t>> combos;
            for (uint32_t i = 0; i < q; ++i) combos.push_back({i});
            for (uint32_t i = 0; i < q; ++i)
                for (uint32_t j = i + 1; j < q; ++j) combos.push_back({i, j});
            DenseMatrix raw((uint32_t)combos.size(), (uint32_t)combos.size());
            for (uint32_t a2 = 0; a2 < combos.size(); ++a2)
                for (uint32_t b = 0; b < combos.size(); ++b)
                    raw.at(a2, b) = cached_sum(sys, cache, combos[a2], combos[b]);
            out.raw_pair_table = std::move(raw);
        }
    }
    return out;
}

InvariantResult compute_class(const ColoringGeometry& geo, const Field& f, const Cochain& rep_f2,
                              uint32_t class_bits, uint64_t seed, const InvariantOptions& opt) {
    Rng seeder(seed, "class-" + std::to_string(class_bits));
    uint64_t class_seed = seeder.next();
    auto om =
        lift_omega_nonzero(geo.complex(), rep_f2, class_bits, f, class_seed, opt.lift_retries);
    ColoringSystem sys(geo, f, om.omega);
    auto spaces = global_spaces(sys, opt.spaces);
    InvariantResult res = extract_matrix(sys, spaces, opt);
    res.class_bits = class_bits;
    res.seed = seed;
    return res;
}

std::map<std::pair<uint32_t, uint32_t>, uint32_t> ClassTable::summary() const {
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> out;
    for (auto& r : classes) ++out[{r.quotient_dim, r.rank_a}];
    return out;
}

ClassTable class_table(const Complex& m, const std::string& name, const Field& f, uint64_t seed,
                       const InvariantOptions& opt) {
    Field f2(2, 1);
    auto h3 = cohomology_basis(m, 3, f2, opt.spaces.elim);
    auto classes = enumerate_classes(m, f2, h3, opt.class_cap);
    ColoringGeometry geo(m);

    ClassTable out;
    out.manifold = name;
    out.p = f.p();
    out.k = f.k();
    out.seed = seed;
    out.classes.resize(classes.size());

    uint32_t nthreads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<uint32_t>(nthreads, (uint32_t)classes.size()));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= classes.size()) break;
            out.classes[i] =
                compute_class(geo, f, classes[i].rep, classes[i].bits, seed, opt);
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (uint32_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

std::string to_json(const ClassTable& t) {
    nlohmann::ordered_json j;
    j["manifold"] = t.manifold;
    j["field"] = {{"p", t.p}, {"k", t.k}};
    j["seed"] = t.seed;
    j["classes"] = nlohmann::ordered_json::array();
    for (auto& r : t.classes) {
        nlohmann::ordered_json c;
        c["class_id"] = r.class_bits;
        c["dim"] = r.quotient_dim;
        c["rank"] = r.rank_a;
        auto a = nlohmann::ordered_json::array();
        for (uint32_t i = 0; i < r.a.n_rows; ++i) {
            auto row = nlohmann::ordered_json::array();
            for (uint32_t jj = 0; jj < r.a.n_cols; ++jj) row.push_back(r.a.at(i, jj));
            a.push_back(row);
        }
        c["A"] = a;
        if (r.certificate_checked) {
            c["certificate"] = {{"cross_terms_vanish", r.cross_terms_vanish},
                                {"A_symmetric", r.a_symmetric}};
        }
        j["classes"].push_back(c);
    }
    return j.dump(2) + "\n";
}

std::string to_text_table(const ClassTable& t) {
    std::ostringstream os;
    os << "manifold " << t.manifold << ", field GF(" << t.p << "^" << t.k << "), seed " << t.seed
       << "\n";
    for (auto& r : t.classes)
        if (r.class_bits == 0)
            os << "zero class: dim V_p/V_g = " << r.quotient_dim << ", rank A = " << r.rank_a
               << "\n";
    os << "dim V_p/V_g | rank A | number of such cocycles\n";
    auto sum = t.summary();
    // the zero class is conventionally listed separately
    for (auto& r : t.classes)
        if (r.class_bits == 0) {
            auto it = sum.find({r.quotient_dim, r.rank_a});
            if (it != sum.end() && --(it->second) == 0) sum.erase(it);
        }
    for (auto& [key, count] : sum)
        os << std::setw(11) << key.first << " | " << std::setw(6) << key.second << " | "
           << count << "\n";
    return os.str();
}

}  // namespace hept
