#pragma once

// Dense and sparse exact linear algebra over GF(p^k): echelon forms,
// rank, nullspace, column space, complements, subspace comparison, and
// kernel-modulo-image bases for large cochain systems.
//
// The sparse eliminator retires each pivot row once its column has been
// cleared from every live row; retired rows are only needed again for
// back-substitution, so they can be streamed to a spill file when the
// resident set grows past a limit.  Pivoting is deterministic: the
// column with the fewest live entries first (ties: smallest column id),
// then the shortest row in it (ties: smallest row id).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hept/gf.hpp"

namespace hept {

struct DenseMatrix {
    uint32_t n_rows = 0, n_cols = 0;
    std::vector<felt> a;  // row-major

    DenseMatrix() = default;
    DenseMatrix(uint32_t r, uint32_t c) : n_rows(r), n_cols(c), a((size_t)r * c, 0) {}

    felt& at(uint32_t r, uint32_t c) { return a[(size_t)r * n_cols + c]; }
    felt at(uint32_t r, uint32_t c) const { return a[(size_t)r * n_cols + c]; }
    bool operator==(const DenseMatrix& o) const = default;
};

struct SparseEntry {
    uint32_t col;
    felt val;
    bool operator==(const SparseEntry& o) const = default;
};
using SparseRow = std::vector<SparseEntry>;  // sorted by col, no zeros

struct SparseMatrix {
    uint32_t n_rows = 0, n_cols = 0;
    std::vector<SparseRow> rows;

    SparseMatrix() = default;
    SparseMatrix(uint32_t r, uint32_t c) : n_rows(r), n_cols(c), rows(r) {}

    // accumulate an entry (duplicates allowed until canonicalize)
    void add(uint32_t r, uint32_t c, felt v) { rows[r].push_back({c, v}); }
    // sort, merge duplicates in the field, drop zeros
    void canonicalize(const Field& f);
    size_t nnz() const;
    bool operator==(const SparseMatrix& o) const = default;
};

SparseMatrix transpose(const SparseMatrix& m);
DenseMatrix to_dense(const SparseMatrix& m);
SparseMatrix to_sparse(const Field& f, const DenseMatrix& m);

// y = M x
std::vector<felt> apply(const Field& f, const SparseMatrix& m, const std::vector<felt>& x);

// Columns of `cols` are a basis of a subspace of F^ambient.
struct SubspaceBasis {
    uint32_t ambient = 0;
    DenseMatrix cols;  // ambient x dim
    uint32_t dim() const { return cols.n_cols; }
};

// ------------------------------------------------------------- dense

// Reduced row echelon in place; returns pivot columns in order.
std::vector<uint32_t> rref(const Field& f, DenseMatrix& m);
uint32_t dense_rank(const Field& f, DenseMatrix m);
// Basis of {x : m x = 0}, canonical per-free-column vectors.
DenseMatrix dense_nullspace(const Field& f, DenseMatrix m);
// One solution of m x = b with free variables set to 0, if consistent.
std::optional<std::vector<felt>> dense_solve(const Field& f, DenseMatrix m, std::vector<felt> b);

// ------------------------------------------------------------- sparse

struct EchelonOptions {
    bool keep_rows = false;              // retain retired rows for back-substitution
    size_t spill_limit_bytes = 6ull << 30;
    double dense_density = 0.20;         // fallback trigger on the live block
    size_t dense_max_bytes = 1ull << 30;
    bool verbose = false;
};

struct EchelonSummary {
    uint32_t rank = 0;
    std::vector<uint32_t> pivot_cols;  // in elimination order
    std::vector<uint32_t> free_cols;   // ascending
};

class RowStore;  // retired-row storage, possibly file-backed

class SparseEliminator {
public:
    SparseEliminator(const Field& f, SparseMatrix&& m, EchelonOptions opt = {});
    ~SparseEliminator();

    const EchelonSummary& run();

    // Solve m x = 0 for the canonical kernel vector of each requested
    // free column (value 1 there, 0 at other free columns).  Only valid
    // after run() with keep_rows.
    std::vector<std::vector<felt>> kernel_vectors(const std::vector<uint32_t>& free_cols);

private:
    const Field& f_;
    SparseMatrix m_;
    EchelonOptions opt_;
    EchelonSummary sum_;
    std::unique_ptr<RowStore> store_;
    bool ran_ = false;
    void run_sparse();
};

uint32_t sparse_rank(const Field& f, SparseMatrix m, EchelonOptions opt = {});

struct RankNullspace {
    uint32_t rank = 0;
    SubspaceBasis nullspace;
};
RankNullspace rank_and_nullspace(const Field& f, SparseMatrix m, EchelonOptions opt = {});

// Basis of the column space: the pivot columns of m, verbatim.
SubspaceBasis column_space(const Field& f, const SparseMatrix& m);

// Basis completing span(sub) to span(sup); columns taken greedily from
// sup.  Throws if some sub column is outside span(sup).
SubspaceBasis complement_in(const Field& f, const SubspaceBasis& sub, const SubspaceBasis& sup);

// span(a) == span(b), via ranks of a, b and [a|b].
bool subspaces_equal(const Field& f, const SubspaceBasis& a, const SubspaceBasis& b);

bool in_span(const Field& f, const SubspaceBasis& basis, const std::vector<felt>& v);

// ------------------------------------------- kernel modulo image
//
// For C G = 0, computes a basis of ker C / im G embedded back into
// F^n_cols: representatives vanishing on the pivot rows of G, so they
// are independent modulo im G and unique per coset.  Never materializes
// a full kernel basis, which keeps 10^5-column cochain systems feasible.

struct KernelModImage {
    uint32_t image_rank = 0;    // dim im G
    uint32_t kernel_dim = 0;    // dim ker C
    uint32_t quotient_dim = 0;  // kernel_dim - image_rank
    DenseMatrix vectors;        // n_cols x quotient_dim
};

KernelModImage kernel_mod_image(const Field& f, SparseMatrix C, const SparseMatrix& G,
                                EchelonOptions opt = {});

}  // namespace hept
