#include "hept/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <queue>
#include <stdexcept>

namespace hept {

void SparseMatrix::canonicalize(const Field& f) {
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
        SparseRow out;
        out.reserve(row.size());
        for (size_t i = 0; i < row.size();) {
            uint32_t c = row[i].col;
            if (c >= n_cols) throw std::out_of_range("sparse entry column out of range");
            felt v = 0;
            while (i < row.size() && row[i].col == c) v = f.add(v, row[i++].val);
            if (v) out.push_back({c, v});
        }
        row = std::move(out);
    }
}

size_t SparseMatrix::nnz() const {
    size_t n = 0;
    for (auto& r : rows) n += r.size();
    return n;
}

SparseMatrix transpose(const SparseMatrix& m) {
    SparseMatrix t(m.n_cols, m.n_rows);
    std::vector<uint32_t> cnt(m.n_cols, 0);
    for (auto& r : m.rows)
        for (auto& e : r) ++cnt[e.col];
    for (uint32_t c = 0; c < m.n_cols; ++c) t.rows[c].reserve(cnt[c]);
    for (uint32_t r = 0; r < m.n_rows; ++r)
        for (auto& e : m.rows[r]) t.rows[e.col].push_back({r, e.val});
    return t;  // rows sorted because source rows were scanned in order
}

DenseMatrix to_dense(const SparseMatrix& m) {
    DenseMatrix d(m.n_rows, m.n_cols);
    for (uint32_t r = 0; r < m.n_rows; ++r)
        for (auto& e : m.rows[r]) d.at(r, e.col) = e.val;
    return d;
}

SparseMatrix to_sparse(const Field& f, const DenseMatrix& m) {
    SparseMatrix s(m.n_rows, m.n_cols);
    for (uint32_t r = 0; r < m.n_rows; ++r)
        for (uint32_t c = 0; c < m.n_cols; ++c)
            if (m.at(r, c)) s.add(r, c, m.at(r, c));
    s.canonicalize(f);
    return s;
}

std::vector<felt> apply(const Field& f, const SparseMatrix& m, const std::vector<felt>& x) {
    if (x.size() != m.n_cols) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<felt> y(m.n_rows, 0);
    for (uint32_t r = 0; r < m.n_rows; ++r) {
        felt s = 0;
        for (auto& e : m.rows[r]) s = f.mul_add(e.val, x[e.col], s);
        y[r] = s;
    }
    return y;
}

// ------------------------------------------------------------- dense

std::vector<uint32_t> rref(const Field& f, DenseMatrix& m) {
    std::vector<uint32_t> pivots;
    uint32_t row = 0;
    for (uint32_t col = 0; col < m.n_cols && row < m.n_rows; ++col) {
        uint32_t pr = row;
        while (pr < m.n_rows && m.at(pr, col) == 0) ++pr;
        if (pr == m.n_rows) continue;
        if (pr != row)
            for (uint32_t c = col; c < m.n_cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
        felt inv = f.inv(m.at(row, col));
        if (inv != 1)
            for (uint32_t c = col; c < m.n_cols; ++c) m.at(row, c) = f.mul(m.at(row, c), inv);
        for (uint32_t r = 0; r < m.n_rows; ++r) {
            if (r == row) continue;
            felt v = m.at(r, col);
            if (!v) continue;
            felt nv = f.neg(v);
            for (uint32_t c = col; c < m.n_cols; ++c)
                m.at(r, c) = f.mul_add(nv, m.at(row, c), m.at(r, c));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

uint32_t dense_rank(const Field& f, DenseMatrix m) { return (uint32_t)rref(f, m).size(); }

DenseMatrix dense_nullspace(const Field& f, DenseMatrix m) {
    auto piv = rref(f, m);
    std::vector<uint8_t> is_piv(m.n_cols, 0);
    for (auto c : piv) is_piv[c] = 1;
    std::vector<uint32_t> free_cols;
    for (uint32_t c = 0; c < m.n_cols; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    DenseMatrix ker(m.n_cols, (uint32_t)free_cols.size());
    for (uint32_t j = 0; j < free_cols.size(); ++j) {
        uint32_t fcol = free_cols[j];
        ker.at(fcol, j) = 1;
        for (uint32_t i = 0; i < piv.size(); ++i) ker.at(piv[i], j) = f.neg(m.at(i, fcol));
    }
    return ker;
}

std::optional<std::vector<felt>> dense_solve(const Field& f, DenseMatrix m, std::vector<felt> b) {
    if (b.size() != m.n_rows) throw std::invalid_argument("dense_solve: dimension mismatch");
    DenseMatrix aug(m.n_rows, m.n_cols + 1);
    for (uint32_t r = 0; r < m.n_rows; ++r) {
        for (uint32_t c = 0; c < m.n_cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.n_cols) = b[r];
    }
    auto piv = rref(f, aug);
    if (!piv.empty() && piv.back() == m.n_cols) return std::nullopt;  // inconsistent
    std::vector<felt> x(m.n_cols, 0);
    for (uint32_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, m.n_cols);
    return x;
}

// ------------------------------------------------------------- spill store

// Retired pivot rows, normalized to unit pivot, in retirement order.
class RowStore {
public:
    explicit RowStore(size_t limit_bytes) : limit_(limit_bytes) {}
    ~RowStore() {
        if (file_) {
            std::fclose(file_);
            std::error_code ec;
            std::filesystem::remove(path_, ec);
        }
    }

    void push(uint32_t pivot_col, const SparseRow& row) {
        ram_.push_back({pivot_col, row});
        bytes_ += row.size() * sizeof(SparseEntry) + 32;
        if (bytes_ > limit_) spill();
    }

    size_t count() const { return spilled_offsets_.size() + ram_.size(); }

    template <class Fn>
    void for_each_reverse(Fn&& fn) {
        for (auto it = ram_.rbegin(); it != ram_.rend(); ++it) fn(it->first, it->second);
        if (!file_) return;
        std::fflush(file_);
        SparseRow buf;
        for (auto it = spilled_offsets_.rbegin(); it != spilled_offsets_.rend(); ++it) {
            if (std::fseek(file_, (long)*it, SEEK_SET) != 0)
                throw std::runtime_error("row spill: seek failed");
            uint32_t hdr[2];
            if (std::fread(hdr, sizeof(uint32_t), 2, file_) != 2)
                throw std::runtime_error("row spill: short read");
            buf.resize(hdr[1]);
            if (std::fread(buf.data(), sizeof(SparseEntry), hdr[1], file_) != hdr[1])
                throw std::runtime_error("row spill: short read");
            fn(hdr[0], buf);
        }
    }

private:
    void spill() {
        if (!file_) {
            path_ = std::filesystem::temp_directory_path() /
                    ("hept-rows-" + std::to_string((uintptr_t)this) + ".bin");
            file_ = std::fopen(path_.c_str(), "w+b");
            if (!file_) throw std::runtime_error("row spill: cannot open temp file");
        }
        std::fseek(file_, 0, SEEK_END);
        for (auto& [piv, row] : ram_) {
            spilled_offsets_.push_back((uint64_t)std::ftell(file_));
            uint32_t hdr[2] = {piv, (uint32_t)row.size()};
            std::fwrite(hdr, sizeof(uint32_t), 2, file_);
            std::fwrite(row.data(), sizeof(SparseEntry), row.size(), file_);
        }
        ram_.clear();
        bytes_ = 0;
    }

    size_t limit_, bytes_ = 0;
    std::vector<std::pair<uint32_t, SparseRow>> ram_;
    std::vector<uint64_t> spilled_offsets_;
    std::FILE* file_ = nullptr;
    std::filesystem::path path_;
};

// ------------------------------------------------------------- eliminator

SparseEliminator::SparseEliminator(const Field& f, SparseMatrix&& m, EchelonOptions opt)
    : f_(f), m_(std::move(m)), opt_(opt) {
    m_.canonicalize(f_);
    if (opt_.keep_rows) store_ = std::make_unique<RowStore>(opt_.spill_limit_bytes);
}

SparseEliminator::~SparseEliminator() = default;

namespace {

// dst += c * src, tracking structural changes
void axpy_merge(const Field& f, const SparseRow& dst, const SparseRow& src, felt c, SparseRow& out,
                std::vector<uint32_t>& added, std::vector<uint32_t>& removed) {
    out.clear();
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() && j < src.size()) {
        if (dst[i].col < src[j].col) {
            out.push_back(dst[i++]);
        } else if (dst[i].col > src[j].col) {
            out.push_back({src[j].col, f.mul(c, src[j].val)});
            added.push_back(src[j].col);
            ++j;
        } else {
            felt v = f.mul_add(c, src[j].val, dst[i].val);
            if (v)
                out.push_back({dst[i].col, v});
            else
                removed.push_back(dst[i].col);
            ++i;
            ++j;
        }
    }
    while (i < dst.size()) out.push_back(dst[i++]);
    while (j < src.size()) {
        out.push_back({src[j].col, f.mul(c, src[j].val)});
        added.push_back(src[j].col);
        ++j;
    }
}

felt row_value_at(const SparseRow& r, uint32_t col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const SparseEntry& e, uint32_t c) { return e.col < c; });
    return (it != r.end() && it->col == col) ? it->val : 0;
}

}  // namespace

void SparseEliminator::run_sparse() {
    const uint32_t NR = m_.n_rows, NC = m_.n_cols;
    std::vector<uint8_t> row_alive(NR, 1), col_done(NC, 0);
    std::vector<uint32_t> col_count(NC, 0);
    std::vector<std::vector<uint32_t>> col_rows(NC);  // may hold stale row ids
    size_t live_nnz = 0;
    uint32_t live_rows = 0;

    for (uint32_t r = 0; r < NR; ++r) {
        if (m_.rows[r].empty()) {
            row_alive[r] = 0;
            continue;
        }
        ++live_rows;
        live_nnz += m_.rows[r].size();
        for (auto& e : m_.rows[r]) {
            ++col_count[e.col];
            col_rows[e.col].push_back(r);
        }
    }

    // lazy min-heap over (count, col)
    using CC = std::pair<uint32_t, uint32_t>;
    std::priority_queue<CC, std::vector<CC>, std::greater<CC>> heap;
    for (uint32_t c = 0; c < NC; ++c)
        if (col_count[c]) heap.push({col_count[c], c});

    SparseRow scratch;
    std::vector<uint32_t> added, removed, holders;

    uint32_t steps_since_check = 0;
    while (live_rows > 0) {
        // eligible pivot column: smallest live count, ties to smaller id
        uint32_t pcol = UINT32_MAX;
        while (!heap.empty()) {
            auto [cnt, c] = heap.top();
            if (col_done[c] || col_count[c] == 0 || cnt != col_count[c]) {
                heap.pop();
                if (!col_done[c] && col_count[c]) heap.push({col_count[c], c});
                continue;
            }
            pcol = c;
            break;
        }
        if (pcol == UINT32_MAX) break;  // remaining rows are zero

        // live rows actually containing pcol
        holders.clear();
        auto& cand = col_rows[pcol];
        for (uint32_t r : cand)
            if (row_alive[r] && row_value_at(m_.rows[r], pcol)) holders.push_back(r);
        std::sort(holders.begin(), holders.end());
        holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
        cand.assign(holders.begin(), holders.end());
        if (holders.empty()) {
            col_count[pcol] = 0;
            continue;
        }

        uint32_t prow = holders[0];
        for (uint32_t r : holders)
            if (m_.rows[r].size() < m_.rows[prow].size()) prow = r;

        // normalize pivot row now so updates use factor -dst[pcol]
        {
            SparseRow& prowv = m_.rows[prow];
            felt pv = row_value_at(prowv, pcol);
            if (pv != 1) {
                felt inv = f_.inv(pv);
                for (auto& e : prowv) e.val = f_.mul(e.val, inv);
            }
        }

        for (uint32_t r : holders) {
            if (r == prow) continue;
            SparseRow& dst = m_.rows[r];
            felt c = f_.neg(row_value_at(dst, pcol));
            added.clear();
            removed.clear();
            axpy_merge(f_, dst, m_.rows[prow], c, scratch, added, removed);
            live_nnz += scratch.size();
            live_nnz -= dst.size();
            dst.swap(scratch);
            for (uint32_t ac : added) {
                ++col_count[ac];
                col_rows[ac].push_back(r);
                heap.push({col_count[ac], ac});
            }
            for (uint32_t rc : removed) {
                --col_count[rc];
                if (col_count[rc] && !col_done[rc]) heap.push({col_count[rc], rc});
            }
            if (dst.empty()) {
                row_alive[r] = 0;
                --live_rows;
            }
        }

        // retire pivot row
        {
            SparseRow& row = m_.rows[prow];
            for (auto& e : row) --col_count[e.col];
            live_nnz -= row.size();
            if (store_) store_->push(pcol, row);
            row_alive[prow] = 0;
            --live_rows;
            SparseRow().swap(row);
        }
        col_done[pcol] = 1;
        sum_.pivot_cols.push_back(pcol);
        std::vector<uint32_t>().swap(col_rows[pcol]);

        // dense endgame when the live block is saturated
        if (++steps_since_check >= 64) {
            steps_since_check = 0;
            uint32_t lc = 0;
            for (uint32_t c = 0; c < NC; ++c)
                if (!col_done[c] && col_count[c]) ++lc;
            double density = live_rows && lc ? (double)live_nnz / ((double)live_rows * lc) : 0.0;
            size_t bytes = (size_t)live_rows * lc * sizeof(felt);
            if (density > opt_.dense_density && bytes < opt_.dense_max_bytes && live_rows > 8) {
                // collect live cols and rows, eliminate densely
                std::vector<uint32_t> cols;
                cols.reserve(lc);
                for (uint32_t c = 0; c < NC; ++c)
                    if (!col_done[c] && col_count[c]) cols.push_back(c);
                std::vector<uint32_t> cmap(NC, UINT32_MAX);
                for (uint32_t i = 0; i < cols.size(); ++i) cmap[cols[i]] = i;
                std::vector<uint32_t> rids;
                rids.reserve(live_rows);
                for (uint32_t r = 0; r < NR; ++r)
                    if (row_alive[r]) rids.push_back(r);
                DenseMatrix d((uint32_t)rids.size(), (uint32_t)cols.size());
                for (uint32_t i = 0; i < rids.size(); ++i) {
                    for (auto& e : m_.rows[rids[i]]) d.at(i, cmap[e.col]) = e.val;
                    SparseRow().swap(m_.rows[rids[i]]);
                }
                std::vector<uint8_t> dalive(rids.size(), 1);
                for (uint32_t c = 0; c < d.n_cols; ++c) {
                    uint32_t pr = UINT32_MAX;
                    for (uint32_t r = 0; r < d.n_rows; ++r)
                        if (dalive[r] && d.at(r, c)) {
                            pr = r;
                            break;
                        }
                    if (pr == UINT32_MAX) continue;
                    felt inv = f_.inv(d.at(pr, c));
                    if (inv != 1)
                        for (uint32_t cc = c; cc < d.n_cols; ++cc)
                            d.at(pr, cc) = f_.mul(d.at(pr, cc), inv);
                    for (uint32_t r = 0; r < d.n_rows; ++r) {
                        if (r == pr || !dalive[r] || !d.at(r, c)) continue;
                        felt fac = f_.neg(d.at(r, c));
                        for (uint32_t cc = c; cc < d.n_cols; ++cc)
                            d.at(r, cc) = f_.mul_add(fac, d.at(pr, cc), d.at(r, cc));
                    }
                    if (store_) {
                        SparseRow out;
                        for (uint32_t cc = 0; cc < d.n_cols; ++cc)
                            if (d.at(pr, cc)) out.push_back({cols[cc], d.at(pr, cc)});
                        store_->push(cols[c], out);
                    }
                    dalive[pr] = 0;
                    sum_.pivot_cols.push_back(cols[c]);
                }
                live_rows = 0;
                break;
            }
        }
    }

    sum_.rank = (uint32_t)sum_.pivot_cols.size();
    std::vector<uint8_t> piv(NC, 0);
    for (auto c : sum_.pivot_cols) piv[c] = 1;
    for (uint32_t c = 0; c < NC; ++c)
        if (!piv[c]) sum_.free_cols.push_back(c);
}

const EchelonSummary& SparseEliminator::run() {
    if (!ran_) {
        run_sparse();
        ran_ = true;
    }
    return sum_;
}

std::vector<std::vector<felt>> SparseEliminator::kernel_vectors(
    const std::vector<uint32_t>& free_cols) {
    if (!ran_ || !store_) throw std::logic_error("kernel_vectors needs run() with keep_rows");
    size_t q = free_cols.size();
    std::vector<std::vector<felt>> x(q, std::vector<felt>(m_.n_cols, 0));
    for (size_t j = 0; j < q; ++j) x[j][free_cols[j]] = 1;
    store_->for_each_reverse([&](uint32_t pcol, const SparseRow& row) {
        for (size_t j = 0; j < q; ++j) {
            felt s = 0;
            auto& xj = x[j];
            for (auto& e : row)
                if (e.col != pcol) s = f_.mul_add(e.val, xj[e.col], s);
            xj[pcol] = f_.neg(s);
        }
    });
    return x;
}

uint32_t sparse_rank(const Field& f, SparseMatrix m, EchelonOptions opt) {
    opt.keep_rows = false;
    SparseEliminator e(f, std::move(m), opt);
    return e.run().rank;
}

RankNullspace rank_and_nullspace(const Field& f, SparseMatrix m, EchelonOptions opt) {
    uint32_t nc = m.n_cols;
    opt.keep_rows = true;
    SparseEliminator e(f, std::move(m), opt);
    auto& s = e.run();
    RankNullspace out;
    out.rank = s.rank;
    auto vecs = e.kernel_vectors(s.free_cols);
    out.nullspace.ambient = nc;
    out.nullspace.cols = DenseMatrix(nc, (uint32_t)vecs.size());
    for (uint32_t j = 0; j < vecs.size(); ++j)
        for (uint32_t i = 0; i < nc; ++i) out.nullspace.cols.at(i, j) = vecs[j][i];
    return out;
}

SubspaceBasis column_space(const Field& f, const SparseMatrix& m) {
    SparseMatrix copy = m;
    SparseEliminator e(f, std::move(copy), {});
    auto& s = e.run();
    std::vector<uint32_t> piv = s.pivot_cols;
    std::sort(piv.begin(), piv.end());
    std::vector<uint32_t> cmap(m.n_cols, UINT32_MAX);
    for (uint32_t j = 0; j < piv.size(); ++j) cmap[piv[j]] = j;
    SubspaceBasis out;
    out.ambient = m.n_rows;
    out.cols = DenseMatrix(m.n_rows, (uint32_t)piv.size());
    for (uint32_t r = 0; r < m.n_rows; ++r)
        for (auto& e2 : m.rows[r])
            if (cmap[e2.col] != UINT32_MAX) out.cols.at(r, cmap[e2.col]) = e2.val;
    return out;
}

// incremental echelon over a growing row list; returns whether v was independent
namespace {
struct IncrementalEchelon {
    const Field& f;
    uint32_t n;
    std::vector<std::vector<felt>> rows;  // reduced, unit leading entry
    std::vector<uint32_t> lead;

    IncrementalEchelon(const Field& f_, uint32_t n_) : f(f_), n(n_) {}

    // reduce v against rows; if nonzero remains, absorb and return true
    bool insert(std::vector<felt> v) {
        for (size_t i = 0; i < rows.size(); ++i) {
            felt c = v[lead[i]];
            if (!c) continue;
            felt nc = f.neg(c);
            auto& ri = rows[i];
            for (uint32_t j = lead[i]; j < n; ++j) v[j] = f.mul_add(nc, ri[j], v[j]);
        }
        uint32_t l = 0;
        while (l < n && !v[l]) ++l;
        if (l == n) return false;
        felt inv = f.inv(v[l]);
        if (inv != 1)
            for (uint32_t j = l; j < n; ++j) v[j] = f.mul(v[j], inv);
        rows.push_back(std::move(v));
        lead.push_back(l);
        return true;
    }
};
}  // namespace

SubspaceBasis complement_in(const Field& f, const SubspaceBasis& sub, const SubspaceBasis& sup) {
    if (sub.ambient != sup.ambient) throw std::invalid_argument("complement_in: ambient mismatch");
    IncrementalEchelon ech(f, sub.ambient);
    for (uint32_t j = 0; j < sub.dim(); ++j) {
        std::vector<felt> v(sub.ambient);
        for (uint32_t i = 0; i < sub.ambient; ++i) v[i] = sub.cols.at(i, j);
        if (!ech.insert(std::move(v)))
            throw std::invalid_argument("complement_in: sub columns not independent");
    }
    // sub must lie inside span(sup): rank check
    {
        IncrementalEchelon chk(f, sub.ambient);
        uint32_t rsup = 0;
        for (uint32_t j = 0; j < sup.dim(); ++j) {
            std::vector<felt> v(sup.ambient);
            for (uint32_t i = 0; i < sup.ambient; ++i) v[i] = sup.cols.at(i, j);
            if (chk.insert(std::move(v))) ++rsup;
        }
        for (uint32_t j = 0; j < sub.dim(); ++j) {
            std::vector<felt> v(sub.ambient);
            for (uint32_t i = 0; i < sub.ambient; ++i) v[i] = sub.cols.at(i, j);
            if (chk.insert(std::move(v)))
                throw std::invalid_argument("complement_in: sub is not contained in sup");
        }
    }
    std::vector<uint32_t> chosen;
    for (uint32_t j = 0; j < sup.dim(); ++j) {
        std::vector<felt> v(sup.ambient);
        for (uint32_t i = 0; i < sup.ambient; ++i) v[i] = sup.cols.at(i, j);
        if (ech.insert(std::move(v))) chosen.push_back(j);
    }
    SubspaceBasis out;
    out.ambient = sup.ambient;
    out.cols = DenseMatrix(sup.ambient, (uint32_t)chosen.size());
    for (uint32_t j = 0; j < chosen.size(); ++j)
        for (uint32_t i = 0; i < sup.ambient; ++i) out.cols.at(i, j) = sup.cols.at(i, chosen[j]);
    return out;
}

bool subspaces_equal(const Field& f, const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspaces_equal: ambient mismatch");
    IncrementalEchelon ea(f, a.ambient);
    uint32_t ra = 0;
    for (uint32_t j = 0; j < a.dim(); ++j) {
        std::vector<felt> v(a.ambient);
        for (uint32_t i = 0; i < a.ambient; ++i) v[i] = a.cols.at(i, j);
        if (ea.insert(std::move(v))) ++ra;
    }
    uint32_t rb = 0;
    {
        IncrementalEchelon eb(f, b.ambient);
        for (uint32_t j = 0; j < b.dim(); ++j) {
            std::vector<felt> v(b.ambient);
            for (uint32_t i = 0; i < b.ambient; ++i) v[i] = b.cols.at(i, j);
            if (eb.insert(std::move(v))) ++rb;
        }
    }
    if (ra != rb) return false;
    // b inside span(a)?
    for (uint32_t j = 0; j < b.dim(); ++j) {
        std::vector<felt> v(b.ambient);
        for (uint32_t i = 0; i < b.ambient; ++i) v[i] = b.cols.at(i, j);
        if (ea.insert(std::move(v))) return false;
    }
    return true;
}

bool in_span(const Field& f, const SubspaceBasis& basis, const std::vector<felt>& v) {
    if (v.size() != basis.ambient) throw std::invalid_argument("in_span: dimension mismatch");
    IncrementalEchelon e(f, basis.ambient);
    for (uint32_t j = 0; j < basis.dim(); ++j) {
        std::vector<felt> col(basis.ambient);
        for (uint32_t i = 0; i < basis.ambient; ++i) col[i] = basis.cols.at(i, j);
        e.insert(std::move(col));
    }
    return !e.insert(v);
}

KernelModImage kernel_mod_image(const Field& f, SparseMatrix C, const SparseMatrix& G,
                                EchelonOptions opt) {
    if (C.n_cols != G.n_rows) throw std::invalid_argument("kernel_mod_image: shape mismatch");
    const uint32_t N = C.n_cols;

    // pivot rows of G = pivot columns when eliminating G^T
    std::vector<uint32_t> gpiv;
    {
        EchelonOptions o = opt;
        o.keep_rows = false;
        SparseEliminator eg(f, transpose(G), o);
        gpiv = eg.run().pivot_cols;
    }
    std::sort(gpiv.begin(), gpiv.end());
    std::vector<uint8_t> dropped(N, 0);
    for (auto c : gpiv) dropped[c] = 1;

    // delete those coordinates from C
    std::vector<uint32_t> keep_of(N, UINT32_MAX), orig_of;
    orig_of.reserve(N - gpiv.size());
    for (uint32_t c = 0; c < N; ++c)
        if (!dropped[c]) {
            keep_of[c] = (uint32_t)orig_of.size();
            orig_of.push_back(c);
        }
    SparseMatrix Cdel(C.n_rows, (uint32_t)orig_of.size());
    for (uint32_t r = 0; r < C.n_rows; ++r) {
        SparseRow out;
        out.reserve(C.rows[r].size());
        for (auto& e : C.rows[r])
            if (!dropped[e.col]) out.push_back({keep_of[e.col], e.val});
        Cdel.rows[r] = std::move(out);
        SparseRow().swap(C.rows[r]);
    }

    EchelonOptions o = opt;
    o.keep_rows = true;
    SparseEliminator ec(f, std::move(Cdel), o);
    auto& s = ec.run();

    KernelModImage out;
    out.image_rank = (uint32_t)gpiv.size();
    // deleting the G-pivot coordinates removes exactly im G from ker C,
    // and no rank: rank Cdel = rank C
    out.kernel_dim = N - s.rank;
    out.quotient_dim = (uint32_t)s.free_cols.size();
    if (out.quotient_dim != out.kernel_dim - out.image_rank)
        throw std::logic_error("kernel_mod_image: rank bookkeeping violated");

    auto vecs = ec.kernel_vectors(s.free_cols);
    out.vectors = DenseMatrix(N, out.quotient_dim);
    for (uint32_t j = 0; j < vecs.size(); ++j)
        for (uint32_t i = 0; i < orig_of.size(); ++i) out.vectors.at(orig_of[i], j) = vecs[j][i];
    return out;
}

}  // namespace hept
