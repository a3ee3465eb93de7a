#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bnsfp/lattice.hpp"

namespace bnsfp::sphere {

using lattice::Int;
using lattice::QMat;
using lattice::QVec;
using lattice::Rat;
using lattice::Subspace;
using lattice::ZMat;
using lattice::ZVec;

struct SphereError : std::runtime_error {
    explicit SphereError(const std::string& what) : std::runtime_error(what) {}
};

// An oriented point of the sphere: a primitive integer direction, sign
// significant.
struct Ray {
    ZVec dir;

    std::size_t ambient() const { return dir.size(); }
    bool operator==(const Ray& o) const { return dir == o.dir; }
    bool operator!=(const Ray& o) const { return !(*this == o); }
};

Ray make_ray(const ZVec& v);
Ray make_ray(const QVec& v);
Ray negate(const Ray& r);

// 2x2 determinant |a b|; positive iff b lies counterclockwise of a within
// a half turn.
Int cross(const ZVec& a, const ZVec& b);

// Total counterclockwise order on rays of S^1 starting at (1,0).
bool circ_less(const Ray& a, const Ray& b);

// Closed arc of S^1 traversed counterclockwise from start to end, subtending
// an angle strictly less than pi (so cross(start, end) > 0).
struct Arc {
    Ray start, end;

    bool operator==(const Arc& o) const { return start == o.start && end == o.end; }
};

// Arc with the given endpoints; the pair is unordered, the short side is
// taken.  Throws if the endpoints are equal or antipodal.
Arc make_arc(const Ray& a, const Ray& b);
bool arc_contains(const Arc& arc, const Ray& r);

using Piece = std::variant<Subspace, Ray, Arc>;

// A closed subset of the sphere S^{rank-1}: a finite union of great
// subspheres (each subspace contributes its full unit subsphere), rays, and
// (rank 2 only) closed arcs.  Always normalized: a full-dimensional subspace
// collapses the value to the whole sphere, rays inside other pieces are
// pruned, overlapping arcs are merged and re-split below pi.
struct SphereSet {
    std::size_t rank = 0;
    std::vector<Subspace> subspaces;
    std::vector<Ray> rays;
    std::vector<Arc> arcs;

    bool operator==(const SphereSet& o) const;
    bool operator!=(const SphereSet& o) const { return !(*this == o); }
};

SphereSet make_sphere_set(std::size_t rank, std::vector<Subspace> subspaces,
                          std::vector<Ray> rays, std::vector<Arc> arcs);
SphereSet empty_sphere_set(std::size_t rank);
SphereSet whole_sphere(std::size_t rank);

bool is_empty(const SphereSet& s);
bool is_whole(const SphereSet& s);
std::vector<Piece> pieces(const SphereSet& s);

// Pointwise antipodal image.
SphereSet negate(const SphereSet& s);

// Image under an invertible rational linear map.
SphereSet map(const SphereSet& s, const QMat& a);
SphereSet map(const SphereSet& s, const ZMat& a);

// True iff the two pieces share no point of the sphere.
bool disjoint_pieces(const Piece& p, const Piece& q);

bool contains_ray(const SphereSet& s, const Ray& r);
bool sets_disjoint(const SphereSet& a, const SphereSet& b);
SphereSet set_union(const SphereSet& a, const SphereSet& b);

// Intersection with the subsphere spanned by the columns of iota (an n x c
// integer matrix of full column rank), re-expressed in the coordinates of
// Q^c: each piece is replaced by its preimage under y -> iota y.
SphereSet restrict_to_subsphere(const SphereSet& s, const ZMat& iota);
// Preimage of a single ray, if it lies on the subsphere.
std::optional<Ray> restrict_ray(const Ray& r, const ZMat& iota);

// A rational ray outside s (and with its antipode outside s when symmetric),
// or nullopt if none exists.  Rank 2 runs a sector scan over the arrangement
// of all piece boundary rays; higher ranks reduce to vector_avoiding.
std::optional<Ray> find_ray_outside(const SphereSet& s, bool symmetric);

}  // namespace bnsfp::sphere
