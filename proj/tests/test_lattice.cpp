#include <doctest.h>

#include <algorithm>
#include <random>

#include "bnsfp/lattice.hpp"

using namespace bnsfp::lattice;

namespace {

QMat qmat(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    QMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

ZMat zmat(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    ZMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

ZVec zv(const std::vector<long>& v) { return ZVec(v.begin(), v.end()); }

Subspace span_z(std::size_t n, const std::vector<std::vector<long>>& rows) {
    std::vector<ZVec> vs;
    for (const auto& r : rows) vs.push_back(zv(r));
    return span_of_int(n, vs);
}

ZMat random_zmat(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound = 9) {
    std::uniform_int_distribution<int> d(-bound, bound);
    ZMat m(r, c);
    for (auto& x : m.a) x = d(rng);
    return m;
}

QMat random_qmat(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 3);
    QMat m(r, c);
    for (auto& x : m.a) {
        x = Rat(num(rng), den(rng));
        x.canonicalize();
    }
    return m;
}

ZMat diag_of(const std::vector<Int>& d, std::size_t rows, std::size_t cols) {
    ZMat m(rows, cols);
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

}  // namespace

TEST_CASE("rref: canonical row space") {
    CHECK(rref(qmat({{2, 0}, {0, 3}}, 2)) == full_subspace(2));
    Subspace dep = rref(qmat({{1, 1, 0}, {2, 2, 0}}, 3));
    CHECK(dep.dim() == 1);
    CHECK(dep == span_z(3, {{1, 1, 0}}));
    Subspace empty = rref(QMat(0, 3));
    CHECK(empty.dim() == 0);
    CHECK(empty == zero_subspace(3));
}

TEST_CASE("rref: idempotent and row-order independent") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t r = 1 + iter % 5, c = 1 + (iter / 5) % 5;
        QMat m = random_qmat(rng, r, c);
        Subspace s = rref(m);
        CHECK(rref(s.basis) == s);
        // shuffle rows
        std::vector<std::size_t> perm(r);
        for (std::size_t i = 0; i < r; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        QMat shuffled(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) shuffled.at(i, j) = m.at(perm[i], j);
        CHECK(rref(shuffled) == s);
    }
}

TEST_CASE("intersect: examples") {
    Subspace a = span_z(3, {{1, 0, 0}, {0, 1, 0}});
    Subspace b = span_z(3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(intersect(a, b) == span_z(3, {{0, 1, 0}}));
    CHECK(intersect(a, a) == a);
    // solved by hand: a(e1+e3) + b(e2+e4) has zero third and fourth
    // coordinates only when a = b = 0
    Subspace u = span_z(4, {{1, 0, 1, 0}, {0, 1, 0, 1}});
    Subspace v = span_z(4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(intersect(u, v) == zero_subspace(4));
}

TEST_CASE("intersect: dimension bound on random pairs") {
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 5;
        Subspace a = rref(random_qmat(rng, 1 + iter % 3, n));
        Subspace b = rref(random_qmat(rng, 1 + (iter / 3) % 3, n));
        Subspace c = intersect(a, b);
        CHECK(a.contains_subspace(c));
        CHECK(b.contains_subspace(c));
        long lower = static_cast<long>(a.dim() + b.dim()) - static_cast<long>(n);
        CHECK(static_cast<long>(c.dim()) >= std::max(0L, lower));
    }
}

TEST_CASE("snf: examples") {
    SnfResult s = snf(zmat({{2, 0}, {0, 3}}, 2));
    CHECK(s.d == std::vector<Int>{1, 6});
    SnfResult id = snf(ZMat::identity(3));
    CHECK(id.d == std::vector<Int>{1, 1, 1});
    SnfResult zero = snf(ZMat(1, 1));
    CHECK(zero.d == std::vector<Int>{0});
}

TEST_CASE("snf: reconstruction, unimodularity, divisibility on random matrices") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 500; ++iter) {
        std::size_t r = 1 + iter % 4, c = 1 + (iter / 4) % 4;
        ZMat a = random_zmat(rng, r, c);
        SnfResult s = snf(a);
        Int dl = det(s.left), dr = det(s.right);
        CHECK((dl == 1 || dl == -1));
        CHECK((dr == 1 || dr == -1));
        CHECK(mul(mul(s.left, a), s.right) == diag_of(s.d, r, c));
        CHECK(mul(s.left, s.left_inv) == ZMat::identity(r));
        CHECK(mul(s.right, s.right_inv) == ZMat::identity(c));
        // left^-1 diag right^-1 reconstructs a exactly
        CHECK(mul(mul(s.left_inv, diag_of(s.d, r, c)), s.right_inv) == a);
        for (std::size_t i = 0; i + 1 < s.d.size(); ++i) {
            CHECK(s.d[i] >= 0);
            if (s.d[i] != 0) CHECK(s.d[i + 1] % s.d[i] == 0);
            if (s.d[i] == 0) CHECK(s.d[i + 1] == 0);
        }
    }
}

TEST_CASE("rational_kernel: examples") {
    CHECK(rational_kernel({zv({1, 1, 0})}, 3) == span_z(3, {{1, -1, 0}, {0, 0, 1}}));
    CHECK(rational_kernel({}, 4) == full_subspace(4));
    CHECK(rational_kernel({zv({1, 0}), zv({0, 1})}, 2) == zero_subspace(2));
}

TEST_CASE("hnf and saturate") {
    // saturation of the index-2 sublattice spanned by (2,4)
    CHECK(saturate(zmat({{2, 4}}, 2)) == zmat({{1, 2}}, 2));
    CHECK(hnf(zmat({{0, 1}, {1, 0}}, 2)) == ZMat::identity(2));
    std::mt19937_64 rng(14);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t r = 1 + iter % 3, c = 1 + (iter / 3) % 4;
        ZMat a = random_zmat(rng, r, c);
        ZMat h = hnf(a);
        // row-permuting the input does not change the HNF
        ZMat p(a.rows, c);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t j = 0; j < c; ++j) p.at(i, j) = a.at(a.rows - 1 - i, j);
        CHECK(hnf(p) == h);
        // same rational row space
        CHECK(rref(to_rational(a)) == rref(to_rational(h)));
    }
}

TEST_CASE("kernel_lattice") {
    // x + y = 0 over Z^2
    CHECK(kernel_lattice(zmat({{1, 1}}, 2)) == zmat({{1, -1}}, 2));
    // empty generator list: the full lattice
    CHECK(kernel_lattice(ZMat(0, 3)) == ZMat::identity(3));
    std::mt19937_64 rng(15);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t r = 1 + iter % 3, c = 2 + (iter / 3) % 3;
        ZMat a = random_zmat(rng, r, c);
        ZMat k = kernel_lattice(a);
        for (std::size_t i = 0; i < k.rows; ++i)
            CHECK(is_zero(mul_vec(a, k.row(i))));
        Subspace expected = kernel(to_rational(a));
        CHECK(k.rows == expected.dim());
        CHECK(rref(to_rational(k)) == expected);
    }
}

TEST_CASE("complete_to_unimodular: examples") {
    // v = span{e2} in R^2: a permutation works
    {
        ZMat a = complete_to_unimodular(span_z(2, {{0, 1}}));
        Int d = det(a);
        CHECK((d == 1 || d == -1));
        ZVec img = mul_vec(a, zv({0, 1}));
        CHECK(img[1] == 0);
        CHECK((img[0] == 1 || img[0] == -1));
    }
    // v = span{(2,4)}: saturation makes the basis primitive
    {
        ZMat a = complete_to_unimodular(span_z(2, {{2, 4}}));
        Int d = det(a);
        CHECK((d == 1 || d == -1));
        ZVec img = mul_vec(a, zv({1, 2}));
        CHECK(img[1] == 0);
        CHECK((img[0] == 1 || img[0] == -1));
    }
    CHECK(complete_to_unimodular(zero_subspace(3)) == ZMat::identity(3));
    // coordinate subspaces complete to the identity
    CHECK(complete_to_unimodular(span_z(2, {{1, 0}})) == ZMat::identity(2));
    CHECK(complete_to_unimodular(span_z(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})) ==
          ZMat::identity(4));
}

TEST_CASE("complete_to_unimodular: A v = span{e_1..e_dim} on random subspaces") {
    std::mt19937_64 rng(16);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 5;
        Subspace v = rref(random_qmat(rng, 1 + iter % n, n));
        Completion comp = complete_to_unimodular_with_inverse(v);
        Int d = det(comp.a);
        CHECK((d == 1 || d == -1));
        CHECK(mul(comp.a, comp.a_inv) == ZMat::identity(n));
        // image of v is exactly the first-dim(v) coordinate subspace
        Subspace img = rref(mul(v.basis, to_rational(transpose(comp.a))));
        Subspace coord = zero_subspace(n);
        if (v.dim() > 0) {
            QMat c(v.dim(), n);
            for (std::size_t i = 0; i < v.dim(); ++i) c.at(i, i) = 1;
            coord = rref(c);
        }
        CHECK(img == coord);
        // equivalently: A^-1 e_i spans v
        std::vector<QVec> pre;
        for (std::size_t i = 0; i < v.dim(); ++i) {
            QVec e(n, Rat(0));
            e[i] = 1;
            pre.push_back(mul_vec(to_rational(comp.a_inv), e));
        }
        CHECK(span_of(n, pre) == v);
    }
}

TEST_CASE("vector_avoiding: examples") {
    // pieces {x=0},{y=0} in R^2
    ZVec v = vector_avoiding(2, {span_z(2, {{0, 1}}), span_z(2, {{1, 0}})});
    CHECK(v == zv({1, 1}));
    CHECK(vector_avoiding(4, {}) == zv({1, 0, 0, 0}));
    // two generic 2-dim subspaces of R^4, membership checked via rref
    std::vector<Subspace> pieces = {span_z(4, {{1, 2, 0, 0}, {0, 0, 1, 1}}),
                                    span_z(4, {{1, 0, 1, 0}, {0, 1, 0, 1}})};
    ZVec w = vector_avoiding(4, pieces);
    for (const auto& p : pieces) CHECK(!p.contains(w));
}

TEST_CASE("subspace_avoiding: examples") {
    // two complementary 2-planes in R^4: a 2-dim transversal exists
    std::vector<Subspace> pieces = {span_z(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}),
                                    span_z(4, {{0, 0, 1, 0}, {0, 0, 0, 1}})};
    Subspace v = subspace_avoiding(4, pieces, {});
    CHECK(v.dim() == 2);
    for (const auto& p : pieces) CHECK(intersect(v, p) == zero_subspace(4));

    CHECK(subspace_avoiding(3, {}, {}) == full_subspace(3));

    // the two rays of the one-relator example: a line avoiding both
    Subspace line = subspace_avoiding(2, {}, {zv({-1, 2}), zv({1, -2})});
    CHECK(line.dim() == 1);
    CHECK(!line.contains(zv({-1, 2})));
    CHECK(!line.contains(zv({1, -2})));
}

TEST_CASE("subspace_avoiding: dimension is maximal on random instances") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 6;
        std::size_t npieces = iter % 3;
        std::size_t nrays = (iter / 3) % 3;
        std::vector<Subspace> pieces;
        std::size_t maxdim = 0;
        for (std::size_t i = 0; i < npieces; ++i) {
            Subspace p = rref(random_qmat(rng, 1 + iter % n, n));
            if (p.dim() == n) continue;  // proper pieces only in this suite
            maxdim = std::max(maxdim, p.dim());
            pieces.push_back(std::move(p));
        }
        std::vector<ZVec> rays;
        for (std::size_t i = 0; i < nrays; ++i) {
            ZMat r = random_zmat(rng, 1, n);
            if (is_zero(r.row(0))) continue;
            rays.push_back(primitive(r.row(0)));
        }
        if (!rays.empty()) maxdim = std::max<std::size_t>(maxdim, 1);
        Subspace v = subspace_avoiding(n, pieces, rays);
        // no subspace of larger dimension can avoid a piece of dimension d
        CHECK(v.dim() == n - maxdim);
        for (const auto& p : pieces) CHECK(intersect(v, p) == zero_subspace(n));
        for (const auto& r : rays) CHECK(!v.contains(r));
    }
}

TEST_CASE("det and unimodular_inverse") {
    CHECK(det(zmat({{1, 5}, {0, 1}}, 2)) == 1);
    CHECK(det(zmat({{2, 0}, {0, 3}}, 2)) == 6);
    CHECK(det(ZMat(0, 0)) == 1);
    ZMat u = zmat({{2, 3}, {1, 2}}, 2);
    CHECK(det(u) == 1);
    CHECK(mul(u, unimodular_inverse(u)) == ZMat::identity(2));
}
