#include "bnsfp/lattice.hpp"

#include <algorithm>
#include <cassert>

namespace bnsfp::lattice {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw LatticeError(what);
}

}  // namespace

bool QMat::operator==(const QMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
}

bool ZMat::operator==(const ZMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
}

ZMat ZMat::identity(std::size_t n) {
    ZMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZMat ZMat::from_rows(const std::vector<ZVec>& rows_in, std::size_t cols) {
    ZMat m(rows_in.size(), cols);
    for (std::size_t i = 0; i < rows_in.size(); ++i) {
        require(rows_in[i].size() == cols, "row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
}

ZVec ZMat::row(std::size_t i) const {
    return ZVec(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

QMat to_rational(const ZMat& m) {
    QMat r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
    return r;
}

ZMat mul(const ZMat& x, const ZMat& y) {
    require(x.cols == y.rows, "matrix product shape mismatch");
    ZMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

QMat mul(const QMat& x, const QMat& y) {
    require(x.cols == y.rows, "matrix product shape mismatch");
    QMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

ZMat transpose(const ZMat& m) {
    ZMat r(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

QMat transpose(const QMat& m) {
    QMat r(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

QVec mul_vec(const QMat& m, const QVec& v) {
    require(m.cols == v.size(), "matrix-vector shape mismatch");
    QVec r(m.rows, Rat(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

ZVec mul_vec(const ZMat& m, const ZVec& v) {
    require(m.cols == v.size(), "matrix-vector shape mismatch");
    ZVec r(m.rows, Int(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

Int det(const ZMat& m) {
    require(m.rows == m.cols, "determinant of non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    ZMat w = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

Rat det(const QMat& m) {
    require(m.rows == m.cols, "determinant of non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    QMat w = m;
    Rat d(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && w.at(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            d = -d;
        }
        d *= w.at(k, k);
        Rat inv = 1 / w.at(k, k);
        for (std::size_t j = k; j < n; ++j) w.at(k, j) *= inv;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (w.at(i, k) == 0) continue;
            Rat f = w.at(i, k);
            for (std::size_t j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    return d;
}

QMat inverse(const QMat& m) {
    require(m.rows == m.cols, "inverse of non-square matrix");
    std::size_t n = m.rows;
    QMat w = m;
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && w.at(p, k) == 0) ++p;
        require(p < n, "singular matrix");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        Rat piv = 1 / w.at(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            w.at(k, j) *= piv;
            inv.at(k, j) *= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || w.at(i, k) == 0) continue;
            Rat f = w.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

ZMat unimodular_inverse(const ZMat& m) {
    QMat qi = inverse(to_rational(m));
    ZMat r(m.rows, m.cols);
    for (std::size_t i = 0; i < qi.a.size(); ++i) {
        require(qi.a[i].get_den() == 1, "matrix is not unimodular");
        r.a[i] = qi.a[i].get_num();
    }
    return r;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const ZVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

QVec to_rational(const ZVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

ZVec primitive(const QVec& v) {
    require(!is_zero(v), "primitive direction of zero vector");
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    ZVec w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i].get_num() * (l / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    }
    for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return w;
}

ZVec primitive(const ZVec& v) {
    require(!is_zero(v), "primitive direction of zero vector");
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    ZVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        mpz_divexact(w[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
    return w;
}

bool Subspace::contains(const QVec& v) const {
    require(v.size() == ambient, "ambient mismatch");
    QVec w = v;
    for (std::size_t i = 0; i < basis.rows; ++i) {
        std::size_t p = 0;
        while (p < ambient && basis.at(i, p) == 0) ++p;
        if (p == ambient) continue;
        if (w[p] == 0) continue;
        Rat f = w[p];  // pivot entry is 1
        for (std::size_t j = p; j < ambient; ++j) w[j] -= f * basis.at(i, j);
    }
    return is_zero(w);
}

bool Subspace::contains(const ZVec& v) const { return contains(to_rational(v)); }

bool Subspace::contains_subspace(const Subspace& o) const {
    require(o.ambient == ambient, "ambient mismatch");
    for (std::size_t i = 0; i < o.basis.rows; ++i) {
        QVec r(o.basis.a.begin() + i * ambient, o.basis.a.begin() + (i + 1) * ambient);
        if (!contains(r)) return false;
    }
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient == o.ambient && basis == o.basis;
}

Subspace zero_subspace(std::size_t n) {
    Subspace s;
    s.ambient = n;
    s.basis = QMat(0, n);
    return s;
}

Subspace full_subspace(std::size_t n) {
    Subspace s;
    s.ambient = n;
    s.basis = QMat(n, n);
    for (std::size_t i = 0; i < n; ++i) s.basis.at(i, i) = 1;
    return s;
}

Subspace rref(const QMat& m) {
    QMat w = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
        std::size_t p = r;
        while (p < w.rows && w.at(p, c) == 0) ++p;
        if (p == w.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < w.cols; ++j) std::swap(w.at(r, j), w.at(p, j));
        Rat piv = 1 / w.at(r, c);
        for (std::size_t j = c; j < w.cols; ++j) w.at(r, j) *= piv;
        for (std::size_t i = 0; i < w.rows; ++i) {
            if (i == r || w.at(i, c) == 0) continue;
            Rat f = w.at(i, c);
            for (std::size_t j = c; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    Subspace s;
    s.ambient = w.cols;
    s.basis = QMat(r, w.cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < w.cols; ++j) s.basis.at(i, j) = w.at(i, j);
    return s;
}

Subspace span_of(std::size_t n, const std::vector<QVec>& vecs) {
    QMat m(vecs.size(), n);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        require(vecs[i].size() == n, "ambient mismatch");
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = vecs[i][j];
    }
    return rref(m);
}

Subspace span_of_int(std::size_t n, const std::vector<ZVec>& vecs) {
    std::vector<QVec> q;
    q.reserve(vecs.size());
    for (const auto& v : vecs) q.push_back(to_rational(v));
    return span_of(n, q);
}

Subspace sum(const Subspace& a, const Subspace& b) {
    require(a.ambient == b.ambient, "ambient mismatch");
    QMat m(a.basis.rows + b.basis.rows, a.ambient);
    for (std::size_t i = 0; i < a.basis.rows; ++i)
        for (std::size_t j = 0; j < a.ambient; ++j) m.at(i, j) = a.basis.at(i, j);
    for (std::size_t i = 0; i < b.basis.rows; ++i)
        for (std::size_t j = 0; j < a.ambient; ++j)
            m.at(a.basis.rows + i, j) = b.basis.at(i, j);
    return rref(m);
}

Subspace kernel(const QMat& m) {
    Subspace row_space = rref(m);
    const QMat& r = row_space.basis;
    std::size_t n = m.cols;
    // pivot columns of the RREF
    std::vector<std::size_t> pivot(r.rows);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < r.rows; ++i) {
        std::size_t p = 0;
        while (p < n && r.at(i, p) == 0) ++p;
        pivot[i] = p;
        is_pivot[p] = true;
    }
    std::vector<QVec> gens;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        QVec v(n, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r.rows; ++i) v[pivot[i]] = -r.at(i, f);
        gens.push_back(std::move(v));
    }
    return span_of(n, gens);
}

Subspace rational_kernel(const std::vector<ZVec>& gens, std::size_t n) {
    QMat m(gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        require(gens[i].size() == n, "generator length mismatch");
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rat(gens[i][j]);
    }
    return kernel(m);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require(a.ambient == b.ambient, "ambient mismatch");
    // x in a  <=>  K_a x = 0  where the rows of K_a span the orthogonal
    // complement of a; stack the equations of both sides.
    Subspace ka = kernel(a.basis);
    Subspace kb = kernel(b.basis);
    QMat eq(ka.basis.rows + kb.basis.rows, a.ambient);
    for (std::size_t i = 0; i < ka.basis.rows; ++i)
        for (std::size_t j = 0; j < a.ambient; ++j) eq.at(i, j) = ka.basis.at(i, j);
    for (std::size_t i = 0; i < kb.basis.rows; ++i)
        for (std::size_t j = 0; j < a.ambient; ++j)
            eq.at(ka.basis.rows + i, j) = kb.basis.at(i, j);
    return kernel(eq);
}

namespace {

struct SnfWork {
    ZMat w;
    ZMat u, ui, v, vi;  // invariants: u * a * v = w, ui = u^-1, vi = v^-1

    explicit SnfWork(const ZMat& a)
        : w(a),
          u(ZMat::identity(a.rows)),
          ui(ZMat::identity(a.rows)),
          v(ZMat::identity(a.cols)),
          vi(ZMat::identity(a.cols)) {}

    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < w.cols; ++k) std::swap(w.at(i, k), w.at(j, k));
        for (std::size_t k = 0; k < u.cols; ++k) std::swap(u.at(i, k), u.at(j, k));
        for (std::size_t k = 0; k < ui.rows; ++k) std::swap(ui.at(k, i), ui.at(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < w.rows; ++k) std::swap(w.at(k, i), w.at(k, j));
        for (std::size_t k = 0; k < v.rows; ++k) std::swap(v.at(k, i), v.at(k, j));
        for (std::size_t k = 0; k < vi.cols; ++k) std::swap(vi.at(i, k), vi.at(j, k));
    }
    // row_i -= q * row_t
    void row_sub(std::size_t i, std::size_t t, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < w.cols; ++k) w.at(i, k) -= q * w.at(t, k);
        for (std::size_t k = 0; k < u.cols; ++k) u.at(i, k) -= q * u.at(t, k);
        for (std::size_t k = 0; k < ui.rows; ++k) ui.at(k, t) += q * ui.at(k, i);
    }
    // col_j -= q * col_t
    void col_sub(std::size_t j, std::size_t t, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < w.rows; ++k) w.at(k, j) -= q * w.at(k, t);
        for (std::size_t k = 0; k < v.rows; ++k) v.at(k, j) -= q * v.at(k, t);
        for (std::size_t k = 0; k < vi.cols; ++k) vi.at(t, k) += q * vi.at(j, k);
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < w.cols; ++k) w.at(i, k) = -w.at(i, k);
        for (std::size_t k = 0; k < u.cols; ++k) u.at(i, k) = -u.at(i, k);
        for (std::size_t k = 0; k < ui.rows; ++k) ui.at(k, i) = -ui.at(k, i);
    }
};

Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SnfResult snf(const ZMat& a) {
    SnfWork s(a);
    std::size_t m = a.rows, n = a.cols;
    std::size_t lim = std::min(m, n);
    for (std::size_t t = 0; t < lim; ++t) {
        // find a pivot in the submatrix, preferring the diagonal entry
        std::size_t pi = t, pj = t;
        bool found = s.w.at(t, t) != 0;
        for (std::size_t i = t; i < m && !found; ++i)
            for (std::size_t j = t; j < n && !found; ++j)
                if (s.w.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        s.row_swap(t, pi);
        s.col_swap(t, pj);

        for (;;) {
            // clear column t
            for (std::size_t i = t + 1; i < m; ++i) {
                while (s.w.at(i, t) != 0) {
                    Int q = s.w.at(i, t) / s.w.at(t, t);
                    s.row_sub(i, t, q);
                    if (s.w.at(i, t) != 0) s.row_swap(t, i);
                }
            }
            // clear row t
            bool col_dirty = false;
            for (std::size_t j = t + 1; j < n; ++j) {
                while (s.w.at(t, j) != 0) {
                    Int q = s.w.at(t, j) / s.w.at(t, t);
                    s.col_sub(j, t, q);
                    if (s.w.at(t, j) != 0) {
                        s.col_swap(t, j);
                        col_dirty = true;
                    }
                }
            }
            if (col_dirty) continue;  // column t may have been repopulated
            // enforce divisibility of the remaining submatrix by the pivot
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (s.w.at(i, j) % s.w.at(t, t) != 0) {
                        s.row_sub(t, i, Int(-1));  // row_t += row_i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s.w.at(t, t) < 0) s.row_negate(t);
    }

    SnfResult r;
    r.d.resize(lim);
    for (std::size_t t = 0; t < lim; ++t) r.d[t] = s.w.at(t, t);
    r.left = std::move(s.u);
    r.right = std::move(s.v);
    r.left_inv = std::move(s.ui);
    r.right_inv = std::move(s.vi);
    return r;
}

ZMat hnf(const ZMat& a) {
    ZMat w = a;
    std::size_t m = w.rows, n = w.cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // reduce rows r..m-1 to a single nonzero entry in column c
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i) {
                if (w.at(i, c) == 0) continue;
                if (best == m ||
                    mpz_cmpabs(w.at(i, c).get_mpz_t(), w.at(best, c).get_mpz_t()) < 0)
                    best = i;
            }
            if (best == m) break;
            if (best != r)
                for (std::size_t j = 0; j < n; ++j) std::swap(w.at(r, j), w.at(best, j));
            bool others = false;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (w.at(i, c) == 0) continue;
                Int q = fdiv_q(w.at(i, c), w.at(r, c));
                for (std::size_t j = 0; j < n; ++j) w.at(i, j) -= q * w.at(r, j);
                if (w.at(i, c) != 0) others = true;
            }
            if (!others) break;
        }
        if (w.at(r, c) == 0) continue;
        if (w.at(r, c) < 0)
            for (std::size_t j = 0; j < n; ++j) w.at(r, j) = -w.at(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = fdiv_q(w.at(i, c), w.at(r, c));
            if (q == 0) continue;
            for (std::size_t j = 0; j < n; ++j) w.at(i, j) -= q * w.at(r, j);
        }
        ++r;
    }
    ZMat out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = w.at(i, j);
    return out;
}

ZMat kernel_lattice(const ZMat& a) {
    SnfResult s = snf(a);
    std::size_t rank = 0;
    for (const auto& d : s.d)
        if (d != 0) ++rank;
    std::size_t n = a.cols, c = n - rank;
    // kernel basis: the last c columns of right
    ZMat b(c, n);
    for (std::size_t k = 0; k < c; ++k)
        for (std::size_t i = 0; i < n; ++i) b.at(k, i) = s.right.at(i, rank + k);
    return hnf(b);
}

ZMat saturate(const ZMat& a) {
    SnfResult s = snf(a);
    std::size_t rank = 0;
    for (const auto& d : s.d)
        if (d != 0) ++rank;
    // saturation basis: the first rank rows of right^-1
    ZMat b(rank, a.cols);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) b.at(i, j) = s.right_inv.at(i, j);
    return hnf(b);
}

Completion complete_to_unimodular_with_inverse(const Subspace& v) {
    std::size_t n = v.ambient, c = v.dim();
    if (c == 0) return {ZMat::identity(n), ZMat::identity(n)};
    ZMat b(c, n);
    for (std::size_t i = 0; i < c; ++i) {
        QVec row(v.basis.a.begin() + i * n, v.basis.a.begin() + (i + 1) * n);
        ZVec p = primitive(row);
        for (std::size_t j = 0; j < n; ++j) b.at(i, j) = p[j];
    }
    ZMat sat = saturate(b);
    require(sat.rows == c, "saturation rank mismatch");
    // columns of p form a saturated basis of v; SNF aligns them with e_1..e_c
    ZMat p = transpose(sat);
    SnfResult s = snf(p);
    for (const auto& d : s.d) require(d == 1, "saturated basis with nontrivial factor");
    return {std::move(s.left), std::move(s.left_inv)};
}

ZMat complete_to_unimodular(const Subspace& v) {
    return complete_to_unimodular_with_inverse(v).a;
}

ZVec vector_avoiding(std::size_t n, const std::vector<Subspace>& pieces) {
    require(n >= 1, "avoidance in dimension zero");
    std::size_t budget = 1;
    for (const auto& p : pieces) {
        require(p.ambient == n, "ambient mismatch");
        require(p.dim() < n, "avoidance target is the whole space");
        budget += n - 1;
    }
    Int t = 0;
    for (std::size_t iter = 0; iter <= budget; ++iter, ++t) {
        QVec v(n);
        Rat pw(1);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = pw;
            pw *= Rat(t);
        }
        bool inside = false;
        for (const auto& p : pieces)
            if (p.contains(v)) {
                inside = true;
                break;
            }
        if (!inside) return primitive(v);
    }
    // a Vandermonde point escapes within (n-1)*|pieces| trials
    throw LatticeError("vector_avoiding scan exhausted");
}

Subspace subspace_avoiding(std::size_t n, const std::vector<Subspace>& pieces,
                           const std::vector<ZVec>& rays) {
    std::size_t max_dim = 0;
    for (const auto& p : pieces) {
        require(p.ambient == n, "ambient mismatch");
        max_dim = std::max(max_dim, p.dim());
    }
    if (!rays.empty()) max_dim = std::max<std::size_t>(max_dim, 1);
    std::size_t target = n - max_dim;

    Subspace v = zero_subspace(n);
    while (v.dim() < target) {
        std::vector<Subspace> avoid;
        avoid.reserve(pieces.size() + rays.size() + 1);
        for (const auto& p : pieces) avoid.push_back(sum(p, v));
        for (const auto& r : rays) avoid.push_back(sum(span_of_int(n, {r}), v));
        avoid.push_back(v);
        ZVec w = vector_avoiding(n, avoid);
        v = sum(v, span_of_int(n, {w}));
    }
    return v;
}

}  // namespace bnsfp::lattice
