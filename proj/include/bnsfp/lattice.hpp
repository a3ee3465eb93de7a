#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bnsfp::lattice {

using Int = mpz_class;
using Rat = mpq_class;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

struct LatticeError : std::runtime_error {
    explicit LatticeError(const std::string& what) : std::runtime_error(what) {}
};

// Dense row-major rational matrix.
struct QMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const QMat& o) const;
};

// Dense row-major integer matrix.
struct ZMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

    static ZMat identity(std::size_t n);
    static ZMat from_rows(const std::vector<ZVec>& rows_in, std::size_t cols);

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    ZVec row(std::size_t i) const;
    bool operator==(const ZMat& o) const;
};

QMat to_rational(const ZMat& m);
ZMat mul(const ZMat& x, const ZMat& y);
QMat mul(const QMat& x, const QMat& y);
ZMat transpose(const ZMat& m);
QMat transpose(const QMat& m);
QVec mul_vec(const QMat& m, const QVec& v);
ZVec mul_vec(const ZMat& m, const ZVec& v);

// Exact determinant (fraction-free Bareiss).
Int det(const ZMat& m);
Rat det(const QMat& m);

// Gauss-Jordan inverse; throws on singular input.
QMat inverse(const QMat& m);
// Inverse of a unimodular integer matrix, which is again integral.
ZMat unimodular_inverse(const ZMat& m);

// Scale a rational vector to a primitive integer vector (gcd 1), keeping sign.
// Throws on the zero vector.
ZVec primitive(const QVec& v);
ZVec primitive(const ZVec& v);
QVec to_rational(const ZVec& v);
bool is_zero(const QVec& v);
bool is_zero(const ZVec& v);

// A rational linear subspace of Q^n in canonical form: the basis rows are in
// reduced row echelon form, so two Subspace values are equal as sets iff they
// are equal as data.
struct Subspace {
    std::size_t ambient = 0;
    QMat basis;  // RREF, no zero rows

    std::size_t dim() const { return basis.rows; }
    bool contains(const QVec& v) const;
    bool contains(const ZVec& v) const;
    bool contains_subspace(const Subspace& o) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }
};

Subspace zero_subspace(std::size_t n);
Subspace full_subspace(std::size_t n);
Subspace span_of(std::size_t n, const std::vector<QVec>& vecs);
Subspace span_of_int(std::size_t n, const std::vector<ZVec>& vecs);

// Row space of m in canonical RREF form.
Subspace rref(const QMat& m);

// Exact intersection of two subspaces of the same ambient space.
Subspace intersect(const Subspace& a, const Subspace& b);

// Sum a + b.
Subspace sum(const Subspace& a, const Subspace& b);

// {x in Q^n : m x = 0}.
Subspace kernel(const QMat& m);

// {x in Q^n : <x, g> = 0 for all g in gens}.
Subspace rational_kernel(const std::vector<ZVec>& gens, std::size_t n);

// Smith normal form: left * a * right = diag(d), transforms unimodular,
// d[i] >= 0 and d[i] | d[i+1].  d has min(rows, cols) entries.
struct SnfResult {
    std::vector<Int> d;
    ZMat left, right;
    ZMat left_inv, right_inv;
};
SnfResult snf(const ZMat& a);

// Canonical row Hermite normal form of the lattice spanned by the rows of a:
// echelon shape, positive pivots, entries above a pivot reduced mod the
// pivot.  Zero rows are dropped.
ZMat hnf(const ZMat& a);

// Basis (HNF rows) of {x in Z^n : a x = 0}.
ZMat kernel_lattice(const ZMat& a);

// Basis (HNF rows) of the saturation of the row lattice of a in Z^n.
ZMat saturate(const ZMat& a);

// Unimodular n x n integer matrix A with A v = span{e_1, ..., e_dim(v)}.
// Built from a primitive integer basis of v (cap) Z^n extended via SNF.
ZMat complete_to_unimodular(const Subspace& v);
// Same, returning the inverse as well.
struct Completion {
    ZMat a, a_inv;
};
Completion complete_to_unimodular_with_inverse(const Subspace& v);

// A rational vector outside the union of the given proper subspaces.
// Deterministic Vandermonde scan over (1, t, t^2, ...), t = 0, 1, 2, ...
ZVec vector_avoiding(std::size_t n, const std::vector<Subspace>& pieces);

// A rationally defined subspace of the largest possible dimension meeting
// every listed piece in {0} and containing none of the listed rays.  The
// dimension achieved is n - max(max piece dim, 1 if rays nonempty, 0).
Subspace subspace_avoiding(std::size_t n, const std::vector<Subspace>& pieces,
                           const std::vector<ZVec>& rays);

}  // namespace bnsfp::lattice
