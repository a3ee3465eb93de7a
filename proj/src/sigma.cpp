#include "bnsfp/sigma.hpp"

#include <algorithm>

namespace bnsfp::sigma {

using lattice::Int;
using lattice::ZVec;
using sphere::Arc;
using sphere::circ_less;
using sphere::make_ray;

namespace {

bool degenerate(const Ray& r) { return r.dir[0] == 0 || r.dir[1] == 0; }

// number of indices of the cyclic walk attaining the minimum of <chi, P_i>
std::size_t argmin_count(const ZVec& chi,
                         const std::vector<std::array<Int, 2>>& pts) {
    Int best;
    std::size_t count = 0;
    for (const auto& p : pts) {
        Int v = chi[0] * p[0] + chi[1] * p[1];
        if (count == 0 || v < best) {
            best = v;
            count = 1;
        } else if (v == best) {
            ++count;
        }
    }
    return count;
}

SigmaResult assemble(std::vector<Ray> comp_rays, std::vector<Arc> comp_arcs,
                     std::vector<Ray> degenerate_rays, DegenerateMode mode) {
    SigmaResult out;
    if (mode == DegenerateMode::Include) {
        comp_rays.insert(comp_rays.end(), degenerate_rays.begin(), degenerate_rays.end());
        out.complement =
            sphere::make_sphere_set(2, {}, std::move(comp_rays), std::move(comp_arcs));
        return out;
    }
    out.complement =
        sphere::make_sphere_set(2, {}, std::move(comp_rays), std::move(comp_arcs));
    if (mode == DegenerateMode::Warn) {
        // a degenerate ray forced in by the closure of failing sectors is
        // decided, not warned
        for (const auto& r : degenerate_rays)
            if (!sphere::contains_ray(out.complement, r)) out.warnings.push_back(r);
    }
    return out;
}

}  // namespace

SigmaResult brown_sigma_complement(const grouplang::OneRelatorPresentation& p,
                                   DegenerateMode mode) {
    grouplang::PrefixWalk walk = grouplang::prefix_walk(p);
    const auto& pts = walk.points;

    std::vector<Ray> comp_rays;
    std::vector<Arc> comp_arcs;
    std::vector<Ray> degen;

    if (walk.total[0] != 0 || walk.total[1] != 0) {
        // rk G/G' = 1: the character sphere is S^0 = {±chi0}, chi0 _|_ total
        Ray chi0 = make_ray(ZVec{-walk.total[1], walk.total[0]});
        for (const Ray& cand : {chi0, sphere::negate(chi0)}) {
            if (degenerate(cand))
                degen.push_back(cand);
            else if (argmin_count(cand.dir, pts) >= 2)
                comp_rays.push_back(cand);
        }
        return assemble(std::move(comp_rays), std::move(comp_arcs), std::move(degen),
                        mode);
    }

    // rk G/G' = 2: rational lines <chi, P_i - P_j> = 0 partition S^1 into
    // sectors with constant argmin index set; the axes are added so that
    // sector interiors contain no degenerate ray.
    std::vector<Ray> bounds;
    auto push_pm = [&](const ZVec& v) {
        Ray r = make_ray(v);
        bounds.push_back(r);
        bounds.push_back(sphere::negate(r));
    };
    push_pm(ZVec{Int(1), Int(0)});
    push_pm(ZVec{Int(0), Int(1)});
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Int d0 = pts[i][0] - pts[j][0], d1 = pts[i][1] - pts[j][1];
            if (d0 == 0 && d1 == 0) continue;
            push_pm(ZVec{-d1, d0});
        }
    std::sort(bounds.begin(), bounds.end(), circ_less);
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    std::size_t m = bounds.size();

    for (std::size_t k = 0; k < m; ++k) {
        const Ray& a = bounds[k];
        const Ray& b = bounds[(k + 1) % m];
        // boundary ray
        if (degenerate(a))
            degen.push_back(a);
        else if (argmin_count(a.dir, pts) >= 2)
            comp_rays.push_back(a);
        // open sector, sampled at the mediant
        ZVec mid{a.dir[0] + b.dir[0], a.dir[1] + b.dir[1]};
        if (argmin_count(mid, pts) >= 2) comp_arcs.push_back(Arc{a, b});
    }
    return assemble(std::move(comp_rays), std::move(comp_arcs), std::move(degen), mode);
}

SigmaResult raag_sigma_complement(const grouplang::SimplicialGraph& g) {
    std::size_t n = g.size();
    auto seps = grouplang::minimal_separators(g);
    std::vector<lattice::Subspace> pieces;
    for (const auto& s : seps) {
        std::vector<bool> removed(n, false);
        for (std::size_t v : s) removed[v] = true;
        lattice::Subspace piece;
        piece.ambient = n;
        piece.basis = lattice::QMat(n - s.size(), n);
        std::size_t row = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (!removed[v]) piece.basis.at(row++, v) = 1;
        pieces.push_back(std::move(piece));
    }
    SigmaResult out;
    out.complement = sphere::make_sphere_set(n, std::move(pieces), {}, {});
    return out;
}

}  // namespace bnsfp::sigma
