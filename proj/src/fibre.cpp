#include "bnsfp/fibre.hpp"

#include <algorithm>

namespace bnsfp::fibre {

using json = nlohmann::json;
using lattice::QMat;
using lattice::QVec;
using sphere::Arc;
using sphere::Piece;

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw FibreError(what);
}

json zvec_json(const ZVec& v) {
    json a = json::array();
    for (const auto& x : v) {
        if (x.fits_slong_p())
            a.push_back(x.get_si());
        else
            a.push_back(x.get_str());
    }
    return a;
}

json warnings_json(const std::vector<Ray>* w1, const std::vector<Ray>* w2) {
    json out = json::object();
    if (w1) {
        json a = json::array();
        for (const auto& r : *w1) a.push_back(ray_json(r));
        out["factor1"] = a;
    }
    if (w2) {
        json a = json::array();
        for (const auto& r : *w2) a.push_back(ray_json(r));
        out["factor2"] = a;
    }
    return out;
}

SphereSet with_warned(const SphereSet& s, const std::vector<Ray>& warned) {
    if (warned.empty()) return s;
    return sphere::set_union(s, sphere::make_sphere_set(s.rank, {}, warned, {}));
}

std::vector<ZVec> ray_dirs(const std::vector<Ray>& rays) {
    std::vector<ZVec> out;
    out.reserve(rays.size());
    for (const auto& r : rays) out.push_back(r.dir);
    return out;
}

}  // namespace

json ray_json(const Ray& r) { return zvec_json(r.dir); }

json subspace_json(const Subspace& s) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.basis.rows; ++i) {
        QVec row(s.basis.a.begin() + i * s.ambient,
                 s.basis.a.begin() + (i + 1) * s.ambient);
        rows.push_back(zvec_json(lattice::primitive(row)));
    }
    return rows;
}

json piece_json(const Piece& p) {
    if (std::holds_alternative<Subspace>(p))
        return json{{"subspace", subspace_json(std::get<Subspace>(p))}};
    if (std::holds_alternative<Ray>(p)) return json{{"ray", ray_json(std::get<Ray>(p))}};
    const Arc& a = std::get<Arc>(p);
    return json{{"arc", json::array({ray_json(a.start), ray_json(a.end)})}};
}

QuotientDatum make_quotient(std::size_t n, std::vector<ZVec> gens) {
    for (const auto& g : gens)
        require(g.size() == n, "N generator length does not match the ambient rank");
    QuotientDatum q;
    q.ambient_rank = n;
    q.n_gens = std::move(gens);
    ZMat a = ZMat::from_rows(q.n_gens, n);
    lattice::SnfResult s = lattice::snf(a);
    for (const auto& d : s.d)
        if (d > 1) q.torsion.push_back(d);
    q.projection = lattice::kernel_lattice(a);
    q.corank = q.projection.rows;
    q.param = lattice::transpose(q.projection);
    return q;
}

QuotientDatum trivial_quotient(std::size_t n) { return make_quotient(n, {}); }

TwistMatrix twist_from_b(ZMat b) {
    require(b.rows == b.cols, "twist matrix must be square");
    Int d = lattice::det(b);
    require(d == 1 || d == -1, "twist matrix must be unimodular");
    return TwistMatrix{std::move(b)};
}

TwistMatrix twist_from_mu_star(ZMat ms) { return twist_from_b(lattice::transpose(ms)); }

TwistMatrix identity_twist(std::size_t c) { return TwistMatrix{ZMat::identity(c)}; }

TwistMatrix twist_inverse(const TwistMatrix& t) {
    return TwistMatrix{lattice::unimodular_inverse(t.b)};
}

ZMat mu_star(const TwistMatrix& t) { return lattice::transpose(t.b); }

std::string answer_name(Answer a) {
    switch (a) {
        case Answer::FP: return "FP";
        case Answer::NOT_FP: return "NOT_FP";
        case Answer::EXISTS: return "EXISTS";
        case Answer::NOT_EXISTS: return "NOT_EXISTS";
        case Answer::UNKNOWN: return "UNKNOWN";
    }
    return "UNKNOWN";
}

RestrictedInput restrict_input(const SigmaResult& c, const QuotientDatum& q) {
    require(c.complement.rank == q.ambient_rank,
            "complement rank does not match the quotient ambient rank");
    RestrictedInput r;
    r.complement = sphere::restrict_to_subsphere(c.complement, q.param);
    for (const auto& w : c.warnings)
        if (auto y = sphere::restrict_ray(w, q.param))
            if (!sphere::contains_ray(r.complement, *y)) r.warned.push_back(*y);
    std::sort(r.warned.begin(), r.warned.end(),
              [](const Ray& a, const Ray& b) { return a.dir < b.dir; });
    r.warned.erase(std::unique(r.warned.begin(), r.warned.end()), r.warned.end());
    return r;
}

namespace {

// all-pairs disjointness; returns the first violating pair
std::optional<std::pair<Piece, Piece>> meeting_pair(const SphereSet& x,
                                                    const SphereSet& y) {
    for (const auto& px : pieces(x))
        for (const auto& py : pieces(y))
            if (!sphere::disjoint_pieces(px, py)) return std::make_pair(px, py);
    return std::nullopt;
}

Verdict fp_core(const RestrictedInput& r1, const RestrictedInput& r2, const ZMat& ms,
                json warnings) {
    SphereSet x = sphere::map(r2.complement, ms);
    SphereSet y = sphere::negate(r1.complement);
    if (auto hit = meeting_pair(x, y)) {
        return Verdict{Answer::NOT_FP,
                       json{{"type", "violating_pair"},
                            {"mapped_piece", piece_json(hit->first)},
                            {"negated_piece", piece_json(hit->second)}},
                       std::move(warnings)};
    }
    // a warned ray inside the tested region decides the verdict
    QMat msq = lattice::to_rational(ms);
    for (const auto& w : r2.warned) {
        Ray wm = sphere::make_ray(lattice::mul_vec(msq, lattice::to_rational(w.dir)));
        if (sphere::contains_ray(y, wm))
            return Verdict{Answer::UNKNOWN,
                           json{{"type", "warned_ray_decisive"},
                                {"factor", 2},
                                {"ray", ray_json(w)}},
                           std::move(warnings)};
    }
    for (const auto& w : r1.warned) {
        if (sphere::contains_ray(x, sphere::negate(w)))
            return Verdict{Answer::UNKNOWN,
                           json{{"type", "warned_ray_decisive"},
                                {"factor", 1},
                                {"ray", ray_json(w)}},
                           std::move(warnings)};
    }
    std::size_t pairs = pieces(x).size() * pieces(y).size();
    return Verdict{Answer::FP, json{{"type", "disjoint"}, {"pairs_checked", pairs}},
                   std::move(warnings)};
}

}  // namespace

Verdict fp_check(const SigmaResult& c1, const QuotientDatum& q1, const SigmaResult& c2,
                 const QuotientDatum& q2, const TwistMatrix& mu) {
    require(q1.corank == q2.corank, "co-rank mismatch between the factors");
    require(mu.b.rows == q1.corank, "twist matrix size does not match the co-rank");
    Int d = lattice::det(mu.b);
    require(d == 1 || d == -1, "twist matrix must be unimodular");
    RestrictedInput r1 = restrict_input(c1, q1);
    RestrictedInput r2 = restrict_input(c2, q2);
    return fp_core(r1, r2, mu_star(mu), warnings_json(&c1.warnings, &c2.warnings));
}

Verdict untwisted_check(const SigmaResult& c, const QuotientDatum& q) {
    RestrictedInput r = restrict_input(c, q);
    json warnings = warnings_json(&c.warnings, nullptr);
    SphereSet neg = sphere::negate(r.complement);
    if (auto hit = meeting_pair(r.complement, neg)) {
        return Verdict{Answer::NOT_FP,
                       json{{"type", "not_2_tame"},
                            {"piece", piece_json(hit->first)},
                            {"negated_piece", piece_json(hit->second)}},
                       std::move(warnings)};
    }
    for (const auto& w : r.warned)
        if (sphere::contains_ray(neg, w))
            return Verdict{Answer::UNKNOWN,
                           json{{"type", "warned_ray_decisive"},
                                {"factor", 1},
                                {"ray", ray_json(w)}},
                           std::move(warnings)};
    return Verdict{Answer::FP, json{{"type", "2_tame"}}, std::move(warnings)};
}

Verdict minus_id_check(const SigmaResult& c, const QuotientDatum& q) {
    RestrictedInput r = restrict_input(c, q);
    json warnings = warnings_json(&c.warnings, nullptr);
    if (!sphere::is_empty(r.complement)) {
        return Verdict{Answer::NOT_FP,
                       json{{"type", "nonempty_restriction"},
                            {"piece", piece_json(pieces(r.complement).front())}},
                       std::move(warnings)};
    }
    // the test is emptiness of the whole restricted sphere, so every
    // surviving warned ray is decisive
    if (!r.warned.empty())
        return Verdict{Answer::UNKNOWN,
                       json{{"type", "warned_ray_decisive"},
                            {"factor", 1},
                            {"ray", ray_json(r.warned.front())}},
                       std::move(warnings)};
    return Verdict{Answer::FP, json{{"type", "empty_restriction"}}, std::move(warnings)};
}

CorankResult max_fg_corank(const SigmaResult& c, const QuotientDatum& q) {
    RestrictedInput r = restrict_input(c, q);
    std::size_t n = q.corank;
    if (sphere::is_whole(r.complement)) return {0, lattice::zero_subspace(n)};
    if (!r.complement.arcs.empty()) {
        // n == 2 with arcs: only a line or nothing can avoid the set
        SphereSet aug = with_warned(r.complement, r.warned);
        if (auto ray = sphere::find_ray_outside(aug, true))
            return {1, lattice::span_of_int(2, {ray->dir})};
        return {0, lattice::zero_subspace(2)};
    }
    std::size_t maxdim = 0;
    for (const auto& p : r.complement.subspaces) maxdim = std::max(maxdim, p.dim());
    std::vector<ZVec> dirs = ray_dirs(r.complement.rays);
    for (const auto& w : r.warned) dirs.push_back(w.dir);
    Subspace cert = lattice::subspace_avoiding(n, r.complement.subspaces, dirs);
    return {cert.dim(), cert};
}

namespace {

enum class Tri { Yes, No, Maybe };

struct CaseStatus {
    Tri tri;
    std::optional<Ray> witness;
};

// a rational line avoiding the whole complement (case i / ii)
CaseStatus symmetric_avoid_status(const SigmaResult& c) {
    SphereSet aug = with_warned(c.complement, c.warnings);
    if (auto r = sphere::find_ray_outside(aug, true)) return {Tri::Yes, r};
    if (sphere::find_ray_outside(c.complement, true)) return {Tri::Maybe, std::nullopt};
    return {Tri::No, std::nullopt};
}

// is the complement exactly one rational ray?
Tri singleton_status(const SigmaResult& c) {
    if (!c.complement.subspaces.empty() || !c.complement.arcs.empty()) return Tri::No;
    std::size_t nr = c.complement.rays.size();
    if (nr >= 2) return Tri::No;
    if (nr == 1) return c.warnings.empty() ? Tri::Yes : Tri::Maybe;
    return c.warnings.empty() ? Tri::No : Tri::Maybe;
}

}  // namespace

Verdict corank1_existence(const SigmaResult& c1, const SigmaResult& c2) {
    json warnings = warnings_json(&c1.warnings, &c2.warnings);
    CaseStatus s1 = symmetric_avoid_status(c1);
    if (s1.tri == Tri::Yes)
        return Verdict{Answer::EXISTS,
                       json{{"type", "corank1"},
                            {"case", "i"},
                            {"witness_ray", ray_json(*s1.witness)}},
                       std::move(warnings)};
    CaseStatus s2 = symmetric_avoid_status(c2);
    if (s2.tri == Tri::Yes)
        return Verdict{Answer::EXISTS,
                       json{{"type", "corank1"},
                            {"case", "ii"},
                            {"witness_ray", ray_json(*s2.witness)}},
                       std::move(warnings)};
    Tri g1 = singleton_status(c1), g2 = singleton_status(c2);
    Tri g = (g1 == Tri::No || g2 == Tri::No)
                ? Tri::No
                : ((g1 == Tri::Yes && g2 == Tri::Yes) ? Tri::Yes : Tri::Maybe);
    if (g == Tri::Yes) {
        const Ray& r1 = c1.complement.rays.front();
        const Ray& r2 = c2.complement.rays.front();
        json cert{{"type", "corank1"},
                  {"case", "iii"},
                  {"complement1", ray_json(r1)},
                  {"complement2", ray_json(r2)}};
        if (r1.ambient() == 1 && r2.ambient() == 1)
            cert["mu_sends_t1_to"] =
                (r1.dir[0] > 0) == (r2.dir[0] > 0) ? "t2" : "t2^-1";
        return Verdict{Answer::EXISTS, std::move(cert), std::move(warnings)};
    }
    if (s1.tri == Tri::No && s2.tri == Tri::No && g == Tri::No)
        return Verdict{Answer::NOT_EXISTS, json{{"type", "no_case"}},
                       std::move(warnings)};
    return Verdict{Answer::UNKNOWN, json{{"type", "warned_ray_decisive"}},
                   std::move(warnings)};
}

Verdict corank2_existence(const SigmaResult& c, const QuotientDatum& q) {
    require(q.corank == 2, "corank2_existence needs a co-rank 2 quotient");
    RestrictedInput r = restrict_input(c, q);
    json warnings = warnings_json(&c.warnings, nullptr);
    SphereSet base = sphere::set_union(r.complement, sphere::negate(r.complement));
    SphereSet aug = with_warned(base, r.warned);
    aug = sphere::set_union(aug, sphere::negate(aug));
    if (auto ray = sphere::find_ray_outside(aug, true))
        return Verdict{Answer::EXISTS,
                       json{{"type", "witness_ray"}, {"ray", ray_json(*ray)}},
                       std::move(warnings)};
    if (sphere::find_ray_outside(base, true))
        return Verdict{Answer::UNKNOWN, json{{"type", "warned_ray_decisive"}},
                       std::move(warnings)};
    return Verdict{Answer::NOT_EXISTS, json{{"type", "covered"}}, std::move(warnings)};
}

Verdict greatsph_existence(const SigmaResult& c) {
    std::size_t n = c.complement.rank;
    require(c.complement.rays.empty() && c.complement.arcs.empty(),
            "non-subspace piece present");
    json warnings = warnings_json(&c.warnings, nullptr);
    for (const auto& p : c.complement.subspaces)
        if (2 * p.dim() > n)
            return Verdict{Answer::NOT_EXISTS,
                           json{{"type", "violating_piece"},
                                {"piece", piece_json(Piece(p))},
                                {"rank", n}},
                           std::move(warnings)};
    Subspace cert =
        lattice::subspace_avoiding(n, c.complement.subspaces, ray_dirs(c.warnings));
    if (2 * cert.dim() >= n)
        return Verdict{Answer::EXISTS,
                       json{{"type", "avoiding_subspace"},
                            {"basis", subspace_json(cert)},
                            {"dimension", cert.dim()}},
                       std::move(warnings)};
    return Verdict{Answer::UNKNOWN, json{{"type", "warned_ray_decisive"}},
                   std::move(warnings)};
}

ArtinResult artin_check(const grouplang::SimplicialGraph& g) {
    std::size_t n = g.size();
    ArtinResult out;
    out.separators = grouplang::minimal_separators(g);
    out.direct_product = grouplang::is_direct_product(g);

    std::optional<std::pair<std::size_t, std::size_t>> missing;
    for (std::size_t i = 0; i < n && !missing; ++i)
        for (std::size_t j = i + 1; j < n && !missing; ++j)
            if (!g.adjacent(i, j)) missing = {i, j};
    if (!missing)
        out.untwisted = Verdict{Answer::FP, json{{"type", "complete_graph"}}};
    else
        out.untwisted = Verdict{
            Answer::NOT_FP,
            json{{"type", "missing_edge"},
                 {"pair", json::array({g.vertices[missing->first],
                                       g.vertices[missing->second]})}}};

    std::optional<std::size_t> violating;
    std::size_t min_size = n;
    for (std::size_t i = 0; i < out.separators.size(); ++i) {
        min_size = std::min(min_size, out.separators[i].size());
        if (n > 2 * out.separators[i].size() && !violating) violating = i;
    }
    if (violating) {
        json sep = json::array();
        for (std::size_t v : out.separators[*violating]) sep.push_back(g.vertices[v]);
        out.twisted = Verdict{Answer::NOT_EXISTS,
                              json{{"type", "violating_separator"},
                                   {"separator", sep},
                                   {"rank", n}}};
    } else {
        out.twisted = Verdict{
            Answer::EXISTS,
            json{{"type", "separator_bound"},
                 {"min_separator_size",
                  out.separators.empty() ? json() : json(min_size)},
                 {"rank", n}}};
    }

    // the geometric route must agree
    Verdict geo = greatsph_existence(sigma::raag_sigma_complement(g));
    require(geo.answer == out.twisted.answer,
            "internal error: greatsph route disagrees with the separator bound");
    return out;
}

namespace {

// characters of the quotient vanishing on the subgroup generated by gens
Subspace subspace_in_quotient(const std::vector<ZVec>& gens, const QuotientDatum& q) {
    Subspace ambient_space = lattice::rational_kernel(gens, q.ambient_rank);
    Subspace perp = lattice::kernel(ambient_space.basis);
    return lattice::kernel(
        lattice::mul(perp.basis, lattice::to_rational(q.param)));
}

void check_hypothesis(const Subspace& v, const SphereSet& s, const std::string& side) {
    if (v.dim() == 0) return;  // an empty sphere meets nothing
    Piece vp(v);
    for (const auto& p : pieces(s))
        if (!sphere::disjoint_pieces(vp, p))
            throw HypothesisError("cook_mu hypothesis violation: [" + side +
                                  "] meets the complement");
}

}  // namespace

CookResult cook_mu(const SigmaResult& c1, const QuotientDatum& q1,
                   const std::vector<ZVec>& k1_gens, const SigmaResult& c2,
                   const QuotientDatum& q2, const std::vector<ZVec>& k2_gens) {
    require(q1.corank == q2.corank, "co-rank mismatch between the factors");
    std::size_t c = q1.corank;

    // K_i must lie over N_i: its character space sits inside W_i
    Subspace w_amb = lattice::rational_kernel(k1_gens, q1.ambient_rank);
    Subspace w_host = lattice::span_of_int(
        q1.ambient_rank, [&] {
            std::vector<ZVec> cols;
            for (std::size_t j = 0; j < q1.param.cols; ++j) {
                ZVec col(q1.param.rows);
                for (std::size_t i = 0; i < q1.param.rows; ++i) col[i] = q1.param.at(i, j);
                cols.push_back(std::move(col));
            }
            return cols;
        }());
    require(w_host.contains_subspace(w_amb), "K1 does not lie over N1");
    Subspace u_amb = lattice::rational_kernel(k2_gens, q2.ambient_rank);
    Subspace u_host = lattice::span_of_int(
        q2.ambient_rank, [&] {
            std::vector<ZVec> cols;
            for (std::size_t j = 0; j < q2.param.cols; ++j) {
                ZVec col(q2.param.rows);
                for (std::size_t i = 0; i < q2.param.rows; ++i) col[i] = q2.param.at(i, j);
                cols.push_back(std::move(col));
            }
            return cols;
        }());
    require(u_host.contains_subspace(u_amb), "K2 does not lie over N2");

    RestrictedInput r1 = restrict_input(c1, q1);
    RestrictedInput r2 = restrict_input(c2, q2);
    // warned rays are folded into the complements: the synthesized twist is
    // then valid regardless of their true status
    SphereSet s1 = with_warned(r1.complement, r1.warned);
    SphereSet s2 = with_warned(r2.complement, r2.warned);

    Subspace w = subspace_in_quotient(k1_gens, q1);
    Subspace u = subspace_in_quotient(k2_gens, q2);
    std::size_t m = w.dim(), k = u.dim();
    check_hypothesis(w, s1, "W");
    check_hypothesis(u, s2, "U");

    if (k > m) {
        CookResult swapped = cook_mu(c2, q2, k2_gens, c1, q1, k1_gens);
        return {twist_inverse(swapped.twist), swapped.alpha};
    }
    // K1 of full quotient co-rank: the hypothesis already forced the
    // restricted complement of factor 1 empty, any twist works
    if (m == c) return {identity_twist(c), Int(0)};
    require(k + m == c, "co-ranks of K1 and K2 must sum to the quotient co-rank (k+m=c)");

    lattice::Completion a1 = lattice::complete_to_unimodular_with_inverse(w);
    ZMat a2 = lattice::complete_to_unimodular(u);

    Int alpha = 1;
    for (int iter = 0; iter < 64; ++iter, alpha *= 2) {
        ZMat phi = ZMat::identity(c);
        for (std::size_t i = 0; i < k; ++i) phi.at(i, m + i) = alpha;
        ZMat big_phi = lattice::mul(lattice::mul(a1.a_inv, phi), a2);
        SphereSet x = sphere::map(s2, big_phi);
        SphereSet y = sphere::negate(s1);
        if (sphere::sets_disjoint(x, y)) return {twist_from_mu_star(big_phi), alpha};
    }
    throw FibreError("internal error: cook_mu doubling search exceeded 64 iterations");
}

PlanResult plan_max_corank(const SigmaResult& c1, const SigmaResult& c2) {
    std::size_t n1 = c1.complement.rank, n2 = c2.complement.rank;
    QuotientDatum t1 = trivial_quotient(n1), t2 = trivial_quotient(n2);
    CorankResult m = max_fg_corank(c1, t1);
    CorankResult k = max_fg_corank(c2, t2);
    std::size_t n = std::min({m.k + k.k, n1, n2});
    std::size_t m_used = std::min(m.k, n);
    std::size_t k_used = n - m_used;

    auto prefix = [](const Subspace& v, std::size_t rows) {
        Subspace s;
        s.ambient = v.ambient;
        s.basis = QMat(rows, v.ambient);
        for (std::size_t i = 0; i < rows * v.ambient; ++i) s.basis.a[i] = v.basis.a[i];
        return s;
    };
    auto extend_to = [](Subspace v, std::size_t dim) {
        while (v.dim() < dim) {
            ZVec w = lattice::vector_avoiding(v.ambient, {v});
            v = lattice::sum(v, lattice::span_of_int(v.ambient, {w}));
        }
        return v;
    };
    auto lattice_gens = [](const Subspace& v) {
        std::vector<QVec> rows;
        for (std::size_t i = 0; i < v.basis.rows; ++i)
            rows.emplace_back(v.basis.a.begin() + i * v.ambient,
                              v.basis.a.begin() + (i + 1) * v.ambient);
        ZMat b(rows.size(), v.ambient);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ZVec p = lattice::primitive(rows[i]);
            for (std::size_t j = 0; j < v.ambient; ++j) b.at(i, j) = p[j];
        }
        ZMat kl = lattice::kernel_lattice(b);
        std::vector<ZVec> out;
        for (std::size_t i = 0; i < kl.rows; ++i) out.push_back(kl.row(i));
        return out;
    };

    Subspace u1 = prefix(m.certificate, m_used);
    Subspace u2 = prefix(k.certificate, k_used);
    Subspace vn1 = extend_to(u1, n);
    Subspace vn2 = extend_to(u2, n);

    PlanResult out;
    out.n = n;
    out.n1_gens = lattice_gens(vn1);
    out.k1_gens = lattice_gens(u1);
    out.n2_gens = lattice_gens(vn2);
    out.k2_gens = lattice_gens(u2);

    QuotientDatum q1 = make_quotient(n1, out.n1_gens);
    QuotientDatum q2 = make_quotient(n2, out.n2_gens);
    require(q1.corank == n && q2.corank == n, "internal error: plan co-rank mismatch");
    CookResult cook = cook_mu(c1, q1, out.k1_gens, c2, q2, out.k2_gens);
    out.twist = cook.twist;
    out.alpha = cook.alpha;
    out.check = fp_check(c1, q1, c2, q2, out.twist);
    require(out.check.answer == Answer::FP,
            "internal error: plan verification did not return FP");
    return out;
}

}  // namespace bnsfp::fibre
