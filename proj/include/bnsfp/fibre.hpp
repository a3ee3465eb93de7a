#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnsfp/sigma.hpp"
#include "bnsfp/sphere.hpp"

#include <json.hpp>

namespace bnsfp::fibre {

using lattice::Int;
using lattice::Subspace;
using lattice::ZMat;
using lattice::ZVec;
using sigma::SigmaResult;
using sphere::Ray;
using sphere::SphereSet;

struct FibreError : std::runtime_error {
    explicit FibreError(const std::string& what) : std::runtime_error(what) {}
};
// A cook hypothesis failure: [U] or [W] meets a complement piece.
struct HypothesisError : FibreError {
    explicit HypothesisError(const std::string& what) : FibreError(what) {}
};

// A normal subgroup N >= G' described by integer generators of its image in
// Z^n = G/G' mod torsion.  The projection rows form the canonical (HNF)
// basis of the saturated character lattice W (cap) Z^n, so the induced map
// Z^n -> Z^c is onto with kernel the saturation of the generators.
struct QuotientDatum {
    std::size_t ambient_rank = 0;  // n
    std::vector<ZVec> n_gens;
    std::size_t corank = 0;        // c = n - rank(n_gens)
    ZMat projection;               // c x n, rows span W = rational_kernel(n_gens)
    ZMat param;                    // n x c, transpose of projection
    std::vector<Int> torsion;      // invariant factors > 1 of Z^n / <n_gens>
};

QuotientDatum make_quotient(std::size_t n, std::vector<ZVec> gens);
// N = G': corank n, identity coordinates.
QuotientDatum trivial_quotient(std::size_t n);

// mu as a unimodular matrix on the quotient lattices (column convention);
// mu* acts on quotient character coordinates as the transpose.
struct TwistMatrix {
    ZMat b;
};

TwistMatrix twist_from_b(ZMat b);
TwistMatrix twist_from_mu_star(ZMat mu_star);
TwistMatrix identity_twist(std::size_t c);
TwistMatrix twist_inverse(const TwistMatrix& t);
ZMat mu_star(const TwistMatrix& t);

enum class Answer { FP, NOT_FP, EXISTS, NOT_EXISTS, UNKNOWN };
std::string answer_name(Answer a);

struct Verdict {
    Answer answer;
    nlohmann::json certificate;
    nlohmann::json warnings = nlohmann::json::object();
};

// A factor after restriction to S(G,N) in quotient coordinates: the
// asserted complement plus the surviving warned rays (those not already
// inside the asserted part).
struct RestrictedInput {
    SphereSet complement;
    std::vector<Ray> warned;
};
RestrictedInput restrict_input(const SigmaResult& c, const QuotientDatum& q);

// H_mu is finitely presented iff the mu*-image of the restricted complement
// of factor 2 misses the negated restricted complement of factor 1.
// UNKNOWN when a warned degenerate ray lies in the tested region.
Verdict fp_check(const SigmaResult& c1, const QuotientDatum& q1, const SigmaResult& c2,
                 const QuotientDatum& q2, const TwistMatrix& mu);

// Untwisted specialization: the restricted complement is 2-tame.
Verdict untwisted_check(const SigmaResult& c, const QuotientDatum& q);

// mu = -id: finitely presented iff the restricted complement is empty.
Verdict minus_id_check(const SigmaResult& c, const QuotientDatum& q);

// Largest dimension of a rationally defined subspace whose sphere avoids the
// restricted complement (warned rays avoided as well, so the certificate is
// valid regardless of their status).
struct CorankResult {
    std::size_t k;
    Subspace certificate;
};
CorankResult max_fg_corank(const SigmaResult& c, const QuotientDatum& q);

// Existence of a finitely presented normal fibre product of co-rank 1.
Verdict corank1_existence(const SigmaResult& c1, const SigmaResult& c2);

// Co-rank 2 criterion: a discrete character with both antipodes outside the
// restricted complement.
Verdict corank2_existence(const SigmaResult& c, const QuotientDatum& q);

// Great-subsphere criterion: every piece P satisfies 2 dim P <= n.
Verdict greatsph_existence(const SigmaResult& c);

struct ArtinResult {
    Verdict untwisted, twisted;
    std::vector<std::vector<std::size_t>> separators;
    bool direct_product;
};
ArtinResult artin_check(const grouplang::SimplicialGraph& g);

// Constructive mu synthesis: doubling search over shear maps, each candidate
// verified exactly.  alpha is 0 on the full-co-rank shortcut.
struct CookResult {
    TwistMatrix twist;
    Int alpha;
};
CookResult cook_mu(const SigmaResult& c1, const QuotientDatum& q1,
                   const std::vector<ZVec>& k1_gens, const SigmaResult& c2,
                   const QuotientDatum& q2, const std::vector<ZVec>& k2_gens);

// Maximal co-rank plan: n = min{m + k, n1, n2} with sublattice choices that
// realize it, validated end-to-end by fp_check.
struct PlanResult {
    std::size_t n;
    std::vector<ZVec> n1_gens, k1_gens, n2_gens, k2_gens;
    TwistMatrix twist;
    Int alpha;
    Verdict check;
};
PlanResult plan_max_corank(const SigmaResult& c1, const SigmaResult& c2);

// JSON fragments shared by certificates and reports.
nlohmann::json ray_json(const Ray& r);
nlohmann::json piece_json(const sphere::Piece& p);
nlohmann::json subspace_json(const Subspace& s);

}  // namespace bnsfp::fibre
