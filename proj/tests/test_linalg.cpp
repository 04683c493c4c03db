#include <doctest.h>

#include <set>

#include "hept/linalg.hpp"

using namespace hept;

namespace {

SparseMatrix random_sparse(const Field& f, Rng& rng, uint32_t nr, uint32_t nc, double fill) {
    SparseMatrix m(nr, nc);
    uint64_t want = (uint64_t)(fill * nr * nc);
    for (uint64_t i = 0; i < want; ++i)
        m.add((uint32_t)rng.below(nr), (uint32_t)rng.below(nc), rng.nonzero(f));
    m.canonicalize(f);
    return m;
}

// brute-force GF(2) rank: the row space of an r-row matrix has 2^rank vectors
uint32_t gf2_rank_bruteforce(const DenseMatrix& m) {
    REQUIRE(m.n_rows <= 14);
    std::set<std::vector<felt>> span;
    for (uint32_t mask = 0; mask < (1u << m.n_rows); ++mask) {
        std::vector<felt> v(m.n_cols, 0);
        for (uint32_t r = 0; r < m.n_rows; ++r)
            if (mask & (1u << r))
                for (uint32_t c = 0; c < m.n_cols; ++c) v[c] ^= m.at(r, c);
        span.insert(v);
    }
    uint32_t rank = 0;
    while ((1ull << rank) < span.size()) ++rank;
    return rank;
}

}  // namespace

TEST_CASE("identity and zero matrices") {
    Field f(2, 15);
    SparseMatrix id(7, 7);
    for (uint32_t i = 0; i < 7; ++i) id.add(i, i, 1);
    id.canonicalize(f);
    auto rn = rank_and_nullspace(f, id);
    CHECK(rn.rank == 7);
    CHECK(rn.nullspace.dim() == 0);

    SparseMatrix z(3, 5);
    z.canonicalize(f);
    auto rz = rank_and_nullspace(f, z);
    CHECK(rz.rank == 0);
    CHECK(rz.nullspace.dim() == 5);
}

TEST_CASE("sparse rank agrees with the dense oracle") {
    Field f(2, 15);
    Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        auto m = random_sparse(f, rng, 50, 80, 0.06);
        uint32_t rs = sparse_rank(f, m);
        uint32_t rd = dense_rank(f, to_dense(m));
        CHECK(rs == rd);
        CHECK(sparse_rank(f, transpose(m)) == rs);
    }
}

TEST_CASE("GF(2) rank against row-combination enumeration") {
    Field f(2, 1);
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_sparse(f, rng, 8 + trial % 5, 12, 0.3);
        CHECK(sparse_rank(f, m) == gf2_rank_bruteforce(to_dense(m)));
    }
}

TEST_CASE("nullspace vectors are in the kernel and independent") {
    Field f(2, 15);
    Rng rng(77);
    auto m = random_sparse(f, rng, 40, 60, 0.08);
    auto rn = rank_and_nullspace(f, m);
    CHECK(rn.rank + rn.nullspace.dim() == 60);
    for (uint32_t j = 0; j < rn.nullspace.dim(); ++j) {
        std::vector<felt> v(60);
        for (uint32_t i = 0; i < 60; ++i) v[i] = rn.nullspace.cols.at(i, j);
        auto y = apply(f, m, v);
        for (auto e : y) CHECK(e == 0);
    }
    CHECK(dense_rank(f, rn.nullspace.cols) == rn.nullspace.dim());
}

TEST_CASE("spill and dense-fallback paths agree with the default") {
    Field f(2, 15);
    Rng rng(99);
    auto m = random_sparse(f, rng, 70, 90, 0.10);
    auto base = rank_and_nullspace(f, m);
    EchelonOptions spill;
    spill.spill_limit_bytes = 512;
    auto with_spill = rank_and_nullspace(f, m, spill);
    CHECK(with_spill.rank == base.rank);
    CHECK(with_spill.nullspace.cols == base.nullspace.cols);
    EchelonOptions dense;
    dense.dense_density = 0.0;  // force the dense endgame
    auto with_dense = rank_and_nullspace(f, m, dense);
    CHECK(with_dense.rank == base.rank);
    CHECK(with_dense.nullspace.dim() == base.nullspace.dim());
    for (uint32_t j = 0; j < with_dense.nullspace.dim(); ++j) {
        std::vector<felt> v(90);
        for (uint32_t i = 0; i < 90; ++i) v[i] = with_dense.nullspace.cols.at(i, j);
        for (auto e : apply(f, m, v)) CHECK(e == 0);
    }
}

TEST_CASE("column space") {
    Field f(3, 1);
    SparseMatrix id(4, 4);
    for (uint32_t i = 0; i < 4; ++i) id.add(i, i, 1);
    id.canonicalize(f);
    auto cs = column_space(f, id);
    CHECK(cs.dim() == 4);
    for (uint32_t i = 0; i < 4; ++i)
        for (uint32_t j = 0; j < 4; ++j) CHECK(cs.cols.at(i, j) == (i == j ? 1u : 0u));

    SparseMatrix twice(3, 2);
    twice.add(0, 0, 1);
    twice.add(2, 0, 2);
    twice.add(0, 1, 1);
    twice.add(2, 1, 2);
    twice.canonicalize(f);
    auto c2 = column_space(f, twice);
    CHECK(c2.dim() == 1);
    CHECK(c2.cols.at(0, 0) == 1);
    CHECK(c2.cols.at(2, 0) == 2);

    Field big(2, 15);
    Rng rng(3);
    auto m = random_sparse(big, rng, 30, 50, 0.1);
    CHECK(column_space(big, m).dim() == sparse_rank(big, m));
}

TEST_CASE("complement_in") {
    Field f(2, 15);
    Rng rng(123);

    SubspaceBasis std3;
    std3.ambient = 3;
    std3.cols = DenseMatrix(3, 3);
    for (uint32_t i = 0; i < 3; ++i) std3.cols.at(i, i) = 1;
    SubspaceBasis zero;
    zero.ambient = 3;
    zero.cols = DenseMatrix(3, 0);
    auto c = complement_in(f, zero, std3);
    CHECK(c.dim() == 3);
    auto none = complement_in(f, std3, std3);
    CHECK(none.dim() == 0);

    // random nested pair: dims 4 inside 9 in ambient 20
    DenseMatrix big(20, 9);
    for (uint32_t i = 0; i < 20; ++i)
        for (uint32_t j = 0; j < 9; ++j) big.at(i, j) = rng.element(f);
    SubspaceBasis sup{20, big};
    REQUIRE(dense_rank(f, big) == 9);
    DenseMatrix smallm(20, 4);
    for (uint32_t j = 0; j < 4; ++j) {
        // random combination of sup columns
        std::vector<felt> coef(9);
        for (auto& x : coef) x = rng.element(f);
        for (uint32_t i = 0; i < 20; ++i) {
            felt s = 0;
            for (uint32_t l = 0; l < 9; ++l) s = f.mul_add(big.at(i, l), coef[l], s);
            smallm.at(i, j) = s;
        }
    }
    SubspaceBasis sub{20, smallm};
    REQUIRE(dense_rank(f, smallm) == 4);
    auto comp = complement_in(f, sub, sup);
    CHECK(comp.dim() == 5);
    DenseMatrix uni(20, 9);
    for (uint32_t i = 0; i < 20; ++i) {
        for (uint32_t j = 0; j < 4; ++j) uni.at(i, j) = smallm.at(i, j);
        for (uint32_t j = 0; j < 5; ++j) uni.at(i, 4 + j) = comp.cols.at(i, j);
    }
    CHECK(dense_rank(f, uni) == 9);

    // a vector outside span(sup) must be rejected
    SubspaceBasis outside{20, DenseMatrix(20, 1)};
    DenseMatrix full(20, 10);
    for (uint32_t i = 0; i < 20; ++i)
        for (uint32_t j = 0; j < 9; ++j) full.at(i, j) = big.at(i, j);
    bool found = false;
    for (int attempt = 0; attempt < 50 && !found; ++attempt) {
        for (uint32_t i = 0; i < 20; ++i) {
            outside.cols.at(i, 0) = rng.element(f);
            full.at(i, 9) = outside.cols.at(i, 0);
        }
        found = dense_rank(f, full) == 10;
    }
    REQUIRE(found);
    CHECK_THROWS(complement_in(f, outside, sup));
}

TEST_CASE("subspaces_equal") {
    Field f3(3, 1);
    SubspaceBasis a{2, DenseMatrix(2, 1)}, b{2, DenseMatrix(2, 1)}, c{2, DenseMatrix(2, 1)};
    a.cols.at(0, 0) = 1;
    b.cols.at(0, 0) = 2;  // scalar multiple
    c.cols.at(1, 0) = 1;
    CHECK(subspaces_equal(f3, a, a));
    CHECK(subspaces_equal(f3, a, b));
    CHECK(!subspaces_equal(f3, a, c));
    SubspaceBasis wrong{3, DenseMatrix(3, 1)};
    CHECK_THROWS(subspaces_equal(f3, a, wrong));
}

TEST_CASE("kernel_mod_image") {
    Field f(2, 15);
    Rng rng(2024);
    // G: random tall matrix; C: part of the left kernel of G^T, with a few
    // rows removed so the quotient is nonempty
    uint32_t n = 40;
    DenseMatrix g(n, 12);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < 12; ++j) g.at(i, j) = rng.element(f);
    auto gs = to_sparse(f, g);
    // rows of C = kernel of G^T viewed as matrix acting on F^n
    auto ker = dense_nullspace(f, to_dense(transpose(gs)));  // n x (n - rank)
    uint32_t total = ker.n_cols;
    REQUIRE(total > 6);
    uint32_t drop = 3;
    SparseMatrix C(total - drop, n);
    for (uint32_t j = 0; j + drop < total; ++j)
        for (uint32_t i = 0; i < n; ++i)
            if (ker.at(i, j)) C.add(j, i, ker.at(i, j));
    C.canonicalize(f);

    auto km = kernel_mod_image(f, C, gs);
    uint32_t rg = sparse_rank(f, gs);
    CHECK(km.image_rank == rg);
    CHECK(km.kernel_dim == n - sparse_rank(f, C));
    CHECK(km.quotient_dim == km.kernel_dim - km.image_rank);
    CHECK(km.quotient_dim >= drop);  // dropped constraints widen the kernel

    // representatives: in ker C and independent modulo im G
    DenseMatrix both(n, rg + km.quotient_dim);
    auto gb = column_space(f, gs);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < rg; ++j) both.at(i, j) = gb.cols.at(i, j);
    for (uint32_t j = 0; j < km.quotient_dim; ++j) {
        std::vector<felt> v(n);
        for (uint32_t i = 0; i < n; ++i) {
            v[i] = km.vectors.at(i, j);
            both.at(i, rg + j) = v[i];
        }
        for (auto e : apply(f, C, v)) CHECK(e == 0);
    }
    CHECK(dense_rank(f, both) == rg + km.quotient_dim);
}
