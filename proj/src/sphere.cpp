#include "bnsfp/sphere.hpp"

#include <algorithm>
#include <cassert>

namespace bnsfp::sphere {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw SphereError(what);
}

int half(const ZVec& v) {
    // upper half: y > 0, or y == 0 and x > 0
    if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
    return 1;
}

ZVec rot90(const ZVec& v) { return {-v[1], v[0]}; }

ZVec neg(const ZVec& v) {
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

bool lex_less(const ZVec& a, const ZVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

bool basis_less(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (std::size_t i = 0; i < a.basis.a.size(); ++i) {
        int c = cmp(a.basis.a[i], b.basis.a[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace

Ray make_ray(const ZVec& v) { return Ray{lattice::primitive(v)}; }
Ray make_ray(const QVec& v) { return Ray{lattice::primitive(v)}; }
Ray negate(const Ray& r) { return Ray{neg(r.dir)}; }

Int cross(const ZVec& a, const ZVec& b) { return a[0] * b[1] - a[1] * b[0]; }

bool circ_less(const Ray& a, const Ray& b) {
    int ha = half(a.dir), hb = half(b.dir);
    if (ha != hb) return ha < hb;
    return cross(a.dir, b.dir) > 0;
}

Arc make_arc(const Ray& a, const Ray& b) {
    require(a.ambient() == 2 && b.ambient() == 2, "arcs live on S^1");
    Int c = cross(a.dir, b.dir);
    require(c != 0, "arc endpoints equal or antipodal");
    if (c > 0) return Arc{a, b};
    return Arc{b, a};
}

bool arc_contains(const Arc& arc, const Ray& r) {
    if (r == arc.start || r == arc.end) return true;
    return cross(arc.start.dir, r.dir) > 0 && cross(r.dir, arc.end.dir) > 0;
}

bool SphereSet::operator==(const SphereSet& o) const {
    return rank == o.rank && subspaces == o.subspaces && rays == o.rays && arcs == o.arcs;
}

SphereSet empty_sphere_set(std::size_t rank) {
    SphereSet s;
    s.rank = rank;
    return s;
}

SphereSet whole_sphere(std::size_t rank) {
    SphereSet s;
    s.rank = rank;
    if (rank >= 1) s.subspaces.push_back(lattice::full_subspace(rank));
    return s;
}

bool is_empty(const SphereSet& s) {
    return s.subspaces.empty() && s.rays.empty() && s.arcs.empty();
}

bool is_whole(const SphereSet& s) {
    if (s.rank == 0) return true;  // S^{-1} is empty and whole at once
    for (const auto& p : s.subspaces)
        if (p.dim() == s.rank) return true;
    return false;
}

std::vector<Piece> pieces(const SphereSet& s) {
    std::vector<Piece> out;
    for (const auto& p : s.subspaces) out.emplace_back(p);
    for (const auto& r : s.rays) out.emplace_back(r);
    for (const auto& a : s.arcs) out.emplace_back(a);
    return out;
}

namespace {

// Union of closed arcs on S^1: either the whole circle or the unique list of
// maximal disjoint closed arcs, each re-split to subtend less than pi.
struct MergedArcs {
    bool full = false;
    std::vector<Arc> arcs;
};

MergedArcs merge_arcs(const std::vector<Arc>& arcs) {
    MergedArcs out;
    if (arcs.empty()) return out;

    std::vector<Ray> ends;
    for (const auto& a : arcs) {
        ends.push_back(a.start);
        ends.push_back(a.end);
    }
    std::sort(ends.begin(), ends.end(), circ_less);
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::size_t m = ends.size();

    auto index_of = [&](const Ray& r) {
        auto it = std::lower_bound(ends.begin(), ends.end(), r, circ_less);
        return static_cast<std::size_t>(it - ends.begin());
    };

    // gap k is the open interval between ends[k] and ends[(k+1) % m]
    std::vector<bool> covered(m, false);
    for (const auto& a : arcs) {
        std::size_t i = index_of(a.start), j = index_of(a.end);
        for (std::size_t k = i; k != j; k = (k + 1) % m) covered[k] = true;
    }
    if (std::find(covered.begin(), covered.end(), false) == covered.end()) {
        out.full = true;
        return out;
    }

    std::size_t g0 = 0;
    while (covered[g0]) ++g0;
    auto emit = [&](const Ray& s, const Ray& e) {
        Int c = cross(s.dir, e.dir);
        if (c > 0) {
            out.arcs.push_back(Arc{s, e});
            return;
        }
        Ray p{rot90(s.dir)};
        out.arcs.push_back(Arc{s, p});
        if (c == 0) {  // e is the antipode of s
            out.arcs.push_back(Arc{p, e});
        } else {
            Ray anti{neg(s.dir)};
            out.arcs.push_back(Arc{p, anti});
            out.arcs.push_back(Arc{anti, e});
        }
    };
    // walk the circle from the uncovered gap, emitting maximal covered runs
    std::size_t idx = g0, processed = 0;
    while (processed < m) {
        if (!covered[idx]) {
            idx = (idx + 1) % m;
            ++processed;
            continue;
        }
        std::size_t run_start = idx, run_len = 0;
        while (processed < m && covered[idx]) {
            idx = (idx + 1) % m;
            ++processed;
            ++run_len;
        }
        emit(ends[run_start], ends[(run_start + run_len) % m]);
    }
    std::sort(out.arcs.begin(), out.arcs.end(),
              [](const Arc& a, const Arc& b) { return circ_less(a.start, b.start); });
    return out;
}

}  // namespace

SphereSet make_sphere_set(std::size_t rank, std::vector<Subspace> subspaces,
                          std::vector<Ray> rays, std::vector<Arc> arcs) {
    if (rank == 0) {
        require(rays.empty() && arcs.empty(), "nonempty piece on the empty sphere");
        return empty_sphere_set(0);
    }
    require(arcs.empty() || rank == 2, "arcs need rank 2");

    std::vector<Subspace> subs;
    for (auto& p : subspaces) {
        require(p.ambient == rank, "ambient mismatch");
        if (p.dim() == rank) return whole_sphere(rank);
        if (p.dim() >= 1) subs.push_back(std::move(p));
    }
    for (const auto& r : rays) require(r.ambient() == rank, "ambient mismatch");

    MergedArcs merged = merge_arcs(arcs);
    if (merged.full) return whole_sphere(rank);

    std::sort(subs.begin(), subs.end(), basis_less);
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    std::vector<Subspace> kept;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < subs.size() && !redundant; ++j)
            if (i != j && subs[j].dim() > subs[i].dim() &&
                subs[j].contains_subspace(subs[i]))
                redundant = true;
        if (!redundant) kept.push_back(subs[i]);
    }

    std::vector<Ray> kept_rays;
    for (const auto& r : rays) {
        bool inside = false;
        for (const auto& p : kept)
            if (p.contains(r.dir)) {
                inside = true;
                break;
            }
        for (const auto& a : merged.arcs)
            if (!inside && arc_contains(a, r)) inside = true;
        if (!inside) kept_rays.push_back(r);
    }
    if (rank == 2)
        std::sort(kept_rays.begin(), kept_rays.end(), circ_less);
    else
        std::sort(kept_rays.begin(), kept_rays.end(),
                  [](const Ray& a, const Ray& b) { return lex_less(a.dir, b.dir); });
    kept_rays.erase(std::unique(kept_rays.begin(), kept_rays.end()), kept_rays.end());

    SphereSet s;
    s.rank = rank;
    s.subspaces = std::move(kept);
    s.rays = std::move(kept_rays);
    s.arcs = std::move(merged.arcs);
    return s;
}

SphereSet negate(const SphereSet& s) {
    std::vector<Ray> rays;
    for (const auto& r : s.rays) rays.push_back(negate(r));
    std::vector<Arc> arcs;
    for (const auto& a : s.arcs) arcs.push_back(Arc{negate(a.start), negate(a.end)});
    return make_sphere_set(s.rank, s.subspaces, std::move(rays), std::move(arcs));
}

SphereSet map(const SphereSet& s, const QMat& m) {
    require(m.rows == s.rank && m.cols == s.rank, "map shape mismatch");
    Rat d = s.rank ? lattice::det(m) : Rat(1);
    require(s.rank == 0 || d != 0, "singular matrix");

    std::vector<Subspace> subs;
    for (const auto& p : s.subspaces)
        subs.push_back(lattice::rref(lattice::mul(p.basis, lattice::transpose(m))));
    std::vector<Ray> rays;
    for (const auto& r : s.rays)
        rays.push_back(make_ray(lattice::mul_vec(m, lattice::to_rational(r.dir))));
    std::vector<Arc> arcs;
    for (const auto& a : s.arcs) {
        Ray ms = make_ray(lattice::mul_vec(m, lattice::to_rational(a.start.dir)));
        Ray me = make_ray(lattice::mul_vec(m, lattice::to_rational(a.end.dir)));
        arcs.push_back(d > 0 ? Arc{ms, me} : Arc{me, ms});
    }
    return make_sphere_set(s.rank, std::move(subs), std::move(rays), std::move(arcs));
}

SphereSet map(const SphereSet& s, const ZMat& m) { return map(s, lattice::to_rational(m)); }

namespace {

std::size_t piece_ambient(const Piece& p) {
    if (std::holds_alternative<Subspace>(p)) return std::get<Subspace>(p).ambient;
    if (std::holds_alternative<Ray>(p)) return std::get<Ray>(p).ambient();
    return 2;
}

bool disjoint_sub_sub(const Subspace& a, const Subspace& b) {
    return lattice::intersect(a, b).dim() == 0;
}

bool disjoint_sub_ray(const Subspace& a, const Ray& r) { return !a.contains(r.dir); }

bool disjoint_sub_arc(const Subspace& a, const Arc& arc) {
    if (a.dim() >= 2) return false;  // the whole circle meets every arc
    Ray d = make_ray(QVec(a.basis.a.begin(), a.basis.a.begin() + 2));
    return !arc_contains(arc, d) && !arc_contains(arc, negate(d));
}

bool disjoint_arc_arc(const Arc& a, const Arc& b) {
    return !arc_contains(a, b.start) && !arc_contains(a, b.end) &&
           !arc_contains(b, a.start) && !arc_contains(b, a.end);
}

}  // namespace

bool disjoint_pieces(const Piece& p, const Piece& q) {
    require(piece_ambient(p) == piece_ambient(q), "ambient mismatch");
    return std::visit(
        [](const auto& x, const auto& y) -> bool {
            using X = std::decay_t<decltype(x)>;
            using Y = std::decay_t<decltype(y)>;
            if constexpr (std::is_same_v<X, Subspace> && std::is_same_v<Y, Subspace>)
                return disjoint_sub_sub(x, y);
            else if constexpr (std::is_same_v<X, Subspace> && std::is_same_v<Y, Ray>)
                return disjoint_sub_ray(x, y);
            else if constexpr (std::is_same_v<X, Ray> && std::is_same_v<Y, Subspace>)
                return disjoint_sub_ray(y, x);
            else if constexpr (std::is_same_v<X, Subspace> && std::is_same_v<Y, Arc>)
                return disjoint_sub_arc(x, y);
            else if constexpr (std::is_same_v<X, Arc> && std::is_same_v<Y, Subspace>)
                return disjoint_sub_arc(y, x);
            else if constexpr (std::is_same_v<X, Ray> && std::is_same_v<Y, Ray>)
                return !(x == y);
            else if constexpr (std::is_same_v<X, Ray> && std::is_same_v<Y, Arc>)
                return !arc_contains(y, x);
            else if constexpr (std::is_same_v<X, Arc> && std::is_same_v<Y, Ray>)
                return !arc_contains(x, y);
            else
                return disjoint_arc_arc(x, y);
        },
        p, q);
}

bool contains_ray(const SphereSet& s, const Ray& r) {
    require(r.ambient() == s.rank, "ambient mismatch");
    for (const auto& p : s.subspaces)
        if (p.contains(r.dir)) return true;
    for (const auto& x : s.rays)
        if (x == r) return true;
    for (const auto& a : s.arcs)
        if (arc_contains(a, r)) return true;
    return false;
}

bool sets_disjoint(const SphereSet& a, const SphereSet& b) {
    require(a.rank == b.rank, "ambient mismatch");
    for (const auto& p : pieces(a))
        for (const auto& q : pieces(b))
            if (!disjoint_pieces(p, q)) return false;
    return true;
}

SphereSet set_union(const SphereSet& a, const SphereSet& b) {
    require(a.rank == b.rank, "ambient mismatch");
    std::vector<Subspace> subs = a.subspaces;
    subs.insert(subs.end(), b.subspaces.begin(), b.subspaces.end());
    std::vector<Ray> rays = a.rays;
    rays.insert(rays.end(), b.rays.begin(), b.rays.end());
    std::vector<Arc> arcs = a.arcs;
    arcs.insert(arcs.end(), b.arcs.begin(), b.arcs.end());
    return make_sphere_set(a.rank, std::move(subs), std::move(rays), std::move(arcs));
}

namespace {

// Unique solution y of iota y = b, if consistent (iota has full column rank).
std::optional<QVec> solve_full_rank(const QMat& iota, const QVec& b) {
    std::size_t n = iota.rows, c = iota.cols;
    QMat aug(n, c + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < c; ++j) aug.at(i, j) = iota.at(i, j);
        aug.at(i, c) = b[i];
    }
    Subspace r = lattice::rref(aug);
    QVec y(c, Rat(0));
    for (std::size_t i = 0; i < r.basis.rows; ++i) {
        std::size_t p = 0;
        while (p < c + 1 && r.basis.at(i, p) == 0) ++p;
        if (p == c + 1) continue;
        if (p == c) return std::nullopt;  // pivot in the augmented column
        y[p] = r.basis.at(i, c);
    }
    return y;
}

}  // namespace

std::optional<Ray> restrict_ray(const Ray& r, const ZMat& iota) {
    auto y = solve_full_rank(lattice::to_rational(iota), lattice::to_rational(r.dir));
    if (!y) return std::nullopt;
    return make_ray(*y);
}

SphereSet restrict_to_subsphere(const SphereSet& s, const ZMat& iota) {
    require(iota.rows == s.rank, "ambient mismatch");
    std::size_t c = iota.cols;
    if (c == 0) return empty_sphere_set(0);
    QMat iq = lattice::to_rational(iota);

    std::vector<Subspace> subs;
    for (const auto& p : s.subspaces) {
        // equations of p composed with iota
        Subspace perp = lattice::kernel(p.basis);
        Subspace piece = lattice::kernel(lattice::mul(perp.basis, iq));
        if (piece.dim() >= 1) subs.push_back(std::move(piece));
    }
    std::vector<Ray> rays;
    for (const auto& r : s.rays)
        if (auto y = restrict_ray(r, iota)) rays.push_back(*y);
    std::vector<Arc> arcs;
    if (!s.arcs.empty()) {
        if (c == 2) {
            // iota is then an invertible 2x2 change of coordinates
            QMat inv = lattice::inverse(iq);
            Rat d = lattice::det(inv);
            for (const auto& a : s.arcs) {
                Ray ms = make_ray(lattice::mul_vec(inv, lattice::to_rational(a.start.dir)));
                Ray me = make_ray(lattice::mul_vec(inv, lattice::to_rational(a.end.dir)));
                arcs.push_back(d > 0 ? Arc{ms, me} : Arc{me, ms});
            }
        } else {  // c == 1: keep the rays of the line that lie inside arcs
            ZVec w(2);
            w[0] = iota.at(0, 0);
            w[1] = iota.at(1, 0);
            Ray wr = make_ray(w);
            for (const auto& a : s.arcs) {
                if (arc_contains(a, wr)) rays.push_back(Ray{ZVec{Int(1)}});
                if (arc_contains(a, negate(wr))) rays.push_back(Ray{ZVec{Int(-1)}});
            }
        }
    }
    return make_sphere_set(c, std::move(subs), std::move(rays), std::move(arcs));
}

std::optional<Ray> find_ray_outside(const SphereSet& s, bool symmetric) {
    if (s.rank == 0 || is_whole(s)) return std::nullopt;

    auto ok = [&](const Ray& r) {
        if (contains_ray(s, r)) return false;
        if (symmetric && contains_ray(s, negate(r))) return false;
        return true;
    };

    if (s.rank == 1) {
        Ray plus{ZVec{Int(1)}}, minus{ZVec{Int(-1)}};
        if (ok(plus)) return plus;
        if (ok(minus)) return minus;
        return std::nullopt;
    }

    if (s.rank == 2) {
        // sector scan over the arrangement of all piece boundary rays
        std::vector<Ray> bounds;
        auto push_pm = [&](const Ray& r) {
            bounds.push_back(r);
            bounds.push_back(negate(r));
        };
        push_pm(Ray{ZVec{Int(1), Int(0)}});
        push_pm(Ray{ZVec{Int(0), Int(1)}});
        for (const auto& p : s.subspaces)
            push_pm(make_ray(QVec(p.basis.a.begin(), p.basis.a.begin() + 2)));
        for (const auto& r : s.rays) push_pm(r);
        for (const auto& a : s.arcs) {
            push_pm(a.start);
            push_pm(a.end);
        }
        std::sort(bounds.begin(), bounds.end(), circ_less);
        bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
        std::size_t m = bounds.size();
        for (std::size_t i = 0; i < m; ++i) {
            if (ok(bounds[i])) return bounds[i];
            ZVec mid(2);
            const ZVec& a = bounds[i].dir;
            const ZVec& b = bounds[(i + 1) % m].dir;
            mid[0] = a[0] + b[0];
            mid[1] = a[1] + b[1];
            Ray sample = make_ray(mid);
            if (ok(sample)) return sample;
        }
        return std::nullopt;
    }

    // rank >= 3: only subspace and ray pieces exist
    std::vector<Subspace> avoid = s.subspaces;
    for (const auto& r : s.rays)
        avoid.push_back(lattice::span_of_int(s.rank, {r.dir}));
    ZVec v = lattice::vector_avoiding(s.rank, avoid);
    return make_ray(v);
}

}  // namespace bnsfp::sphere
