#pragma once

// Shared test helpers: independent brute-force oracles and seeded random
// generators.  Everything here stays independent of the implementation paths
// it is used to check.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "bnsfp/fibre.hpp"
#include "bnsfp/grouplang.hpp"
#include "bnsfp/sigma.hpp"
#include "bnsfp/sphere.hpp"

namespace testsupport {

using bnsfp::grouplang::SimplicialGraph;
using bnsfp::lattice::Int;
using bnsfp::lattice::Subspace;
using bnsfp::lattice::ZMat;
using bnsfp::lattice::ZVec;
using bnsfp::sigma::SigmaResult;
using bnsfp::sphere::Arc;
using bnsfp::sphere::Ray;
using bnsfp::sphere::SphereSet;

inline ZVec zv(const std::vector<long>& v) { return ZVec(v.begin(), v.end()); }

inline Ray ray(const std::vector<long>& v) { return bnsfp::sphere::make_ray(zv(v)); }

inline ZMat zmat(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    ZMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

inline Subspace span_z(std::size_t n, const std::vector<std::vector<long>>& rows) {
    std::vector<ZVec> vs;
    for (const auto& r : rows) vs.push_back(zv(r));
    return bnsfp::lattice::span_of_int(n, vs);
}

inline SigmaResult sigma_of(SphereSet s, std::vector<Ray> warned = {}) {
    SigmaResult r;
    r.complement = std::move(s);
    r.warnings = std::move(warned);
    return r;
}

// ---- graph fixtures ----

// a 6-vertex graph whose minimal separators all have size 3
inline SimplicialGraph dense6_graph() {
    return bnsfp::grouplang::make_graph({"A", "B", "C", "D", "E", "F"},
                                        {{"D", "E"},
                                         {"E", "F"},
                                         {"F", "C"},
                                         {"C", "B"},
                                         {"B", "A"},
                                         {"A", "C"},
                                         {"C", "D"},
                                         {"A", "D"},
                                         {"A", "E"},
                                         {"B", "F"}});
}

inline SimplicialGraph complete_graph(std::size_t n) {
    std::vector<std::string> vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) es.emplace_back(vs[i], vs[j]);
    return bnsfp::grouplang::make_graph(vs, es);
}

inline SimplicialGraph path3() {
    return bnsfp::grouplang::make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
}

inline SimplicialGraph cycle(std::size_t n) {
    std::vector<std::string> vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) es.emplace_back(vs[i], vs[(i + 1) % n]);
    return bnsfp::grouplang::make_graph(vs, es);
}

inline SimplicialGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    std::uniform_real_distribution<double> d(0, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d(rng) < p) es.emplace_back(vs[i], vs[j]);
    return bnsfp::grouplang::make_graph(vs, es);
}

// Oracle: unpruned enumeration of all vertex subsets, then an explicit
// inclusion-minimality filter.
inline std::vector<std::vector<std::size_t>> separators_brute(const SimplicialGraph& g) {
    std::size_t n = g.size();
    auto connected_without = [&](std::uint32_t removed) {
        std::vector<bool> in(n), seen(n, false);
        std::size_t total = 0;
        for (std::size_t v = 0; v < n; ++v) {
            in[v] = !((removed >> v) & 1u);
            if (in[v]) ++total;
        }
        if (total <= 1) return true;
        std::size_t start = 0;
        while (!in[start]) ++start;
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w)
                if (in[w] && !seen[w] && g.adjacent(v, w)) {
                    seen[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
        }
        return reached == total;
    };
    std::vector<std::uint32_t> separating;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        if (!connected_without(s)) separating.push_back(s);
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t s : separating) {
        bool minimal = true;
        for (std::uint32_t t : separating)
            if (t != s && (s & t) == t) {
                minimal = false;
                break;
            }
        if (!minimal) continue;
        std::vector<std::size_t> set;
        for (std::size_t v = 0; v < n; ++v)
            if ((s >> v) & 1u) set.push_back(v);
        out.push_back(set);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// ---- random algebraic/geometric inputs ----

inline ZMat random_unimodular(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> coef(-2, 2);
    ZMat u = ZMat::identity(n);
    for (int ops = 0; ops < 6; ++ops) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        Int q = coef(rng);
        for (std::size_t k = 0; k < n; ++k) u.at(i, k) += q * u.at(j, k);
    }
    if (rng() % 2)
        for (std::size_t k = 0; k < n; ++k) u.at(0, k) = -u.at(0, k);
    return u;
}

inline SphereSet random_set(std::mt19937_64& rng, std::size_t rank, bool allow_arcs) {
    std::uniform_int_distribution<int> entry(-4, 4);
    std::uniform_int_distribution<int> count(0, 2);
    auto rand_vec = [&]() {
        ZVec v(rank);
        bool nz = false;
        while (!nz)
            for (auto& x : v) {
                x = entry(rng);
                if (x != 0) nz = true;
            }
        return v;
    };
    std::vector<Subspace> subs;
    for (int i = count(rng); i > 0; --i) {
        std::vector<ZVec> rows;
        for (int r = 1 + static_cast<int>(rng() % 2); r > 0; --r)
            rows.push_back(rand_vec());
        Subspace s = bnsfp::lattice::span_of_int(rank, rows);
        if (s.dim() >= 1 && s.dim() < rank) subs.push_back(std::move(s));
    }
    std::vector<Ray> rays;
    for (int i = count(rng); i > 0; --i)
        rays.push_back(bnsfp::sphere::make_ray(rand_vec()));
    std::vector<Arc> arcs;
    if (allow_arcs && rank == 2)
        for (int i = count(rng) / 2; i > 0; --i) {
            ZVec a = rand_vec(), b = rand_vec();
            if (bnsfp::sphere::cross(a, b) != 0)
                arcs.push_back(bnsfp::sphere::make_arc(bnsfp::sphere::make_ray(a),
                                                       bnsfp::sphere::make_ray(b)));
        }
    return bnsfp::sphere::make_sphere_set(rank, std::move(subs), std::move(rays),
                                          std::move(arcs));
}

// Generators whose quotient has exactly co-rank c inside Z^n.
inline std::vector<ZVec> random_gens_of_corank(std::mt19937_64& rng, std::size_t n,
                                               std::size_t c) {
    std::uniform_int_distribution<int> entry(-3, 3);
    for (;;) {
        std::vector<ZVec> gens;
        for (std::size_t i = 0; i + c < n; ++i) {
            ZVec g(n);
            for (auto& x : g) x = entry(rng);
            gens.push_back(std::move(g));
        }
        bnsfp::fibre::QuotientDatum q = bnsfp::fibre::make_quotient(n, gens);
        if (q.corank == c) return gens;
    }
}

}  // namespace testsupport
