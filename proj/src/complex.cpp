#include "hept/complex.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hept {

namespace {

int cmp_tuple(std::span<const Vertex> a, std::span<const Vertex> b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

std::string tuple_str(std::span<const Vertex> s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

}  // namespace

std::optional<uint32_t> FaceSet::find(std::span<const Vertex> s) const {
    if (s.size() != arity) return std::nullopt;
    uint32_t lo = 0, hi = count();
    while (lo < hi) {
        uint32_t mid = (lo + hi) / 2;
        if (cmp_tuple(get(mid), s) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count() && cmp_tuple(get(lo), s) == 0) return lo;
    return std::nullopt;
}

uint32_t Complex::face_id(uint32_t q, std::span<const Vertex> s) const {
    auto id = find_face(q, s);
    if (!id) throw std::out_of_range("no such " + std::to_string(q) + "-face " + tuple_str(s));
    return *id;
}

std::vector<uint32_t> Complex::facets_containing(std::span<const Vertex> s) const {
    std::vector<uint32_t> out;
    const FaceSet& top = faces_[dim_];
    for (uint32_t i = 0; i < top.count(); ++i) {
        auto fac = top.get(i);
        size_t j = 0;
        for (auto v : fac) {
            if (j < s.size() && s[j] == v) ++j;
        }
        if (j == s.size()) out.push_back(i);
    }
    return out;
}

std::vector<Simplex> Complex::facet_list() const {
    std::vector<Simplex> out;
    const FaceSet& top = faces_[dim_];
    out.reserve(top.count());
    for (uint32_t i = 0; i < top.count(); ++i) {
        auto s = top.get(i);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

Complex build_complex(uint32_t n_vertices, const std::vector<Simplex>& facets) {
    if (facets.empty()) throw std::invalid_argument("empty facet list");
    size_t arity = facets[0].size();
    if (arity == 0) throw std::invalid_argument("empty facet");
    for (auto& fac : facets) {
        if (fac.size() != arity)
            throw std::invalid_argument("facets of unequal dimension: " +
                                        tuple_str({fac.data(), fac.size()}));
        for (size_t i = 0; i < fac.size(); ++i) {
            if (fac[i] < 0 || (uint32_t)fac[i] >= n_vertices)
                throw std::invalid_argument("vertex out of range in facet " +
                                            tuple_str({fac.data(), fac.size()}));
            if (i && fac[i - 1] >= fac[i])
                throw std::invalid_argument("facet not strictly increasing: " +
                                            tuple_str({fac.data(), fac.size()}));
        }
    }

    Complex c;
    c.n_vertices_ = n_vertices;
    c.dim_ = (uint32_t)arity - 1;
    c.faces_.resize(c.dim_ + 1);

    // enumerate all q-subfaces of all facets, then sort and dedupe
    std::vector<Vertex> sub;
    for (uint32_t q = 0; q <= c.dim_; ++q) {
        uint32_t k = q + 1;
        std::vector<Vertex> buf;
        std::vector<uint32_t> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        for (auto& fac : facets) {
            // lex enumeration of k-subsets of {0..arity-1}
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                for (uint32_t i = 0; i < k; ++i) buf.push_back(fac[pick[i]]);
                int i = (int)k - 1;
                while (i >= 0 && pick[i] == arity - k + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (uint32_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        size_t n_blocks = buf.size() / k;
        std::vector<uint32_t> order(n_blocks);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            return cmp_tuple({buf.data() + (size_t)a * k, k}, {buf.data() + (size_t)b * k, k}) < 0;
        });
        FaceSet& fs = c.faces_[q];
        fs.arity = k;
        fs.flat.reserve(buf.size());
        for (size_t i = 0; i < n_blocks; ++i) {
            std::span<const Vertex> cur{buf.data() + (size_t)order[i] * k, k};
            if (!fs.flat.empty() &&
                cmp_tuple({fs.flat.data() + fs.flat.size() - k, k}, cur) == 0) {
                if (q == c.dim_)
                    throw std::invalid_argument("duplicate facet " + tuple_str(cur));
                continue;
            }
            fs.flat.insert(fs.flat.end(), cur.begin(), cur.end());
        }
        fs.flat.shrink_to_fit();
    }

    // boundary id tables
    c.boundary_.resize(c.dim_ + 1);
    for (uint32_t q = 1; q <= c.dim_; ++q) {
        const FaceSet& fs = c.faces_[q];
        auto& tbl = c.boundary_[q];
        tbl.resize((size_t)fs.count() * (q + 1));
        std::vector<Vertex> sub(q);
        for (uint32_t i = 0; i < fs.count(); ++i) {
            auto s = fs.get(i);
            for (uint32_t k = 0; k <= q; ++k) {
                sub.clear();
                for (uint32_t j = 0; j <= q; ++j)
                    if (j != k) sub.push_back(s[j]);
                tbl[(size_t)i * (q + 1) + k] = *c.faces_[q - 1].find({sub.data(), sub.size()});
            }
        }
    }
    return c;
}

SparseMatrix coboundary_matrix(const Complex& c, uint32_t q, const Field& f) {
    if (q >= c.dim()) throw std::invalid_argument("coboundary degree out of range");
    SparseMatrix m(c.count(q + 1), c.count(q));
    felt plus = 1, minus = f.from_int(-1);
    for (uint32_t s = 0; s < c.count(q + 1); ++s) {
        auto ids = c.boundary_ids(q + 1, s);
        for (uint32_t k = 0; k < ids.size(); ++k) m.add(s, ids[k], (k % 2 == 0) ? plus : minus);
    }
    m.canonicalize(f);
    return m;
}

felt coboundary_value(const Field& f, const Complex& c, uint32_t q, uint32_t coface_id,
                      const Cochain& x) {
    auto ids = c.boundary_ids(q + 1, coface_id);
    felt s = 0;
    for (uint32_t k = 0; k < ids.size(); ++k) {
        felt v = x.values[ids[k]];
        s = f.add(s, (k % 2 == 0) ? v : f.neg(v));
    }
    return s;
}

Subdivision barycentric_subdivision(const Complex& c) {
    Subdivision out;
    out.vertex_of.resize(c.dim() + 1);
    Vertex next = 0;
    for (uint32_t q = 0; q <= c.dim(); ++q) {
        out.vertex_of[q].resize(c.count(q));
        for (uint32_t i = 0; i < c.count(q); ++i) out.vertex_of[q][i] = next++;
    }
    // facets = flags of strictly nested faces, one per permutation of each facet
    std::vector<Simplex> newfacets;
    uint32_t d = c.dim();
    std::vector<uint32_t> perm(d + 1);
    for (uint32_t fi = 0; fi < c.count(d); ++fi) {
        auto fac = c.face(d, fi);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Simplex flag;
            Simplex cur;
            for (uint32_t i = 0; i <= d; ++i) {
                cur.push_back(fac[perm[i]]);
                std::sort(cur.begin(), cur.end());
                flag.push_back(out.vertex_of[i][c.face_id(i, {cur.data(), cur.size()})]);
            }
            newfacets.push_back(std::move(flag));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.complex = build_complex((uint32_t)next, newfacets);
    return out;
}

PseudomanifoldReport validate_closed_pseudomanifold(const Complex& c) {
    PseudomanifoldReport rep;
    uint32_t d = c.dim();
    if (d == 0) {
        rep.violations.push_back("dimension 0 complex");
        return rep;
    }
    uint32_t nf = c.count(d);
    std::vector<uint32_t> use(c.count(d - 1), 0);
    for (uint32_t i = 0; i < nf; ++i)
        for (auto id : c.boundary_ids(d, i)) ++use[id];
    rep.closed = true;
    for (uint32_t i = 0; i < use.size(); ++i) {
        if (use[i] != 2) {
            rep.closed = false;
            if (rep.violations.size() < 20)
                rep.violations.push_back("face " + tuple_str(c.face(d - 1, i)) + " lies in " +
                                         std::to_string(use[i]) + " facets (expected 2)");
        }
    }
    // facet adjacency BFS
    std::vector<std::vector<uint32_t>> at_face(c.count(d - 1));
    for (uint32_t i = 0; i < nf; ++i)
        for (auto id : c.boundary_ids(d, i)) at_face[id].push_back(i);
    std::vector<uint8_t> seen(nf, 0);
    std::vector<uint32_t> stack{0};
    seen[0] = 1;
    uint32_t reached = 1;
    while (!stack.empty()) {
        uint32_t cur = stack.back();
        stack.pop_back();
        for (auto id : c.boundary_ids(d, cur))
            for (auto nb : at_face[id])
                if (!seen[nb]) {
                    seen[nb] = 1;
                    ++reached;
                    stack.push_back(nb);
                }
    }
    rep.connected = reached == nf;
    if (!rep.connected)
        rep.violations.push_back("facet adjacency graph has " + std::to_string(nf - reached) +
                                 " unreachable facets");
    return rep;
}

bool orientable(const Complex& c) {
    uint32_t d = c.dim(), nf = c.count(d);
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> at_face(c.count(d - 1));
    for (uint32_t i = 0; i < nf; ++i) {
        auto ids = c.boundary_ids(d, i);
        for (uint32_t k = 0; k < ids.size(); ++k) at_face[ids[k]].push_back({i, k});
    }
    std::vector<int8_t> sign(nf, 0);
    for (uint32_t start = 0; start < nf; ++start) {
        if (sign[start]) continue;
        sign[start] = 1;
        std::vector<uint32_t> stack{start};
        while (!stack.empty()) {
            uint32_t cur = stack.back();
            stack.pop_back();
            auto ids = c.boundary_ids(d, cur);
            for (uint32_t k = 0; k < ids.size(); ++k) {
                for (auto [nb, kk] : at_face[ids[k]]) {
                    if (nb == cur) continue;
                    // consistent orientation: opposite induced signs on the shared face
                    int8_t want = (int8_t)(((k + kk) % 2 == 0) ? -sign[cur] : sign[cur]);
                    if (!sign[nb]) {
                        sign[nb] = want;
                        stack.push_back(nb);
                    } else if (sign[nb] != want) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

int64_t euler_characteristic(const Complex& c) {
    int64_t chi = 0;
    for (uint32_t q = 0; q <= c.dim(); ++q) chi += (q % 2 == 0) ? (int64_t)c.count(q) : -(int64_t)c.count(q);
    return chi;
}

Complex read_complex(std::istream& in) {
    std::string line;
    uint32_t lineno = 0;
    auto next_content = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_content()) throw std::runtime_error("complex file: missing header");
    std::istringstream hdr(line);
    std::string kw1, kw2;
    uint32_t d = 0, n = 0;
    hdr >> kw1 >> d >> kw2 >> n;
    if (kw1 != "dim" || kw2 != "vertices" || hdr.fail())
        throw std::runtime_error("complex file line " + std::to_string(lineno) +
                                 ": expected 'dim <d> vertices <n>'");
    std::vector<Simplex> facets;
    while (next_content()) {
        std::istringstream ls(line);
        Simplex fac;
        int64_t v;
        while (ls >> v) fac.push_back((Vertex)v);
        if (!ls.eof())
            throw std::runtime_error("complex file line " + std::to_string(lineno) +
                                     ": bad vertex index");
        if (fac.size() != d + 1)
            throw std::runtime_error("complex file line " + std::to_string(lineno) + ": facet has " +
                                     std::to_string(fac.size()) + " vertices, expected " +
                                     std::to_string(d + 1));
        for (size_t i = 1; i < fac.size(); ++i)
            if (fac[i - 1] >= fac[i])
                throw std::runtime_error("complex file line " + std::to_string(lineno) +
                                         ": facet not strictly increasing");
        facets.push_back(std::move(fac));
    }
    if (facets.empty()) throw std::runtime_error("complex file: no facets");
    try {
        return build_complex(n, facets);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("complex file: ") + e.what());
    }
}

Complex read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_complex(in);
}

void write_complex(std::ostream& out, const Complex& c) {
    out << "dim " << c.dim() << " vertices " << c.n_vertices() << "\n";
    const FaceSet& top = c.faces(c.dim());
    for (uint32_t i = 0; i < top.count(); ++i) {
        auto s = top.get(i);
        for (size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
        out << "\n";
    }
}

Cochain read_cochain(std::istream& in, const Complex& c, const Field& f) {
    std::string line;
    uint32_t lineno = 0;
    auto next_content = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_content()) throw std::runtime_error("cochain file: missing header");
    std::istringstream hdr(line);
    std::string kw1, kw2;
    uint32_t q = 0, p = 0, k = 0;
    hdr >> kw1 >> q >> kw2 >> p >> k;
    if (kw1 != "degree" || kw2 != "field" || hdr.fail())
        throw std::runtime_error("cochain file: expected 'degree <q> field <p> <k>'");
    if (p != f.p() || k != f.k()) throw std::runtime_error("cochain file: field mismatch");
    if (q > c.dim()) throw std::runtime_error("cochain file: degree exceeds complex dimension");
    Cochain x{q, std::vector<felt>(c.count(q), 0)};
    for (uint32_t i = 0; i < c.count(q); ++i) {
        if (!next_content())
            throw std::runtime_error("cochain file: expected " + std::to_string(c.count(q)) +
                                     " value lines");
        std::istringstream ls(line);
        Simplex tup(q + 1);
        for (auto& v : tup)
            if (!(ls >> v))
                throw std::runtime_error("cochain file line " + std::to_string(lineno) +
                                         ": bad face tuple");
        if (cmp_tuple({tup.data(), tup.size()}, c.face(q, i)) != 0)
            throw std::runtime_error("cochain file line " + std::to_string(lineno) +
                                     ": face out of canonical order");
        felt val = 0, mul = 1;
        for (uint32_t j = 0; j < f.k(); ++j) {
            uint32_t digit;
            if (!(ls >> digit) || digit >= f.p())
                throw std::runtime_error("cochain file line " + std::to_string(lineno) +
                                         ": bad coefficient");
            val += digit * mul;
            mul *= f.p();
        }
        x.values[i] = val;
    }
    return x;
}

void write_cochain(std::ostream& out, const Complex& c, const Field& f, const Cochain& x) {
    out << "degree " << x.degree << " field " << f.p() << " " << f.k() << "\n";
    for (uint32_t i = 0; i < c.count(x.degree); ++i) {
        auto s = c.face(x.degree, i);
        for (size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
        for (uint32_t j = 0; j < f.k(); ++j) out << " " << f.coeff(x.values[i], j);
        out << "\n";
    }
}

}  // namespace hept
