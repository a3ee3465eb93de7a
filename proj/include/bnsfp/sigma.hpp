#pragma once

#include <vector>

#include "bnsfp/grouplang.hpp"
#include "bnsfp/sphere.hpp"

#include <json.hpp>

namespace bnsfp::sigma {

using sphere::Ray;
using sphere::SphereSet;

// How to treat degenerate rays (a vanishing coordinate) in the one-relator
// front end, where the walk criterion is not asserted.
enum class DegenerateMode { Warn, Exclude, Include };

struct SigmaResult {
    SphereSet complement;            // Sigma^1(G)^c
    std::vector<Ray> warnings;       // flagged degenerate rays, not in complement

    bool operator==(const SigmaResult& o) const {
        return complement == o.complement && warnings == o.warnings;
    }
};

// Brown's criterion for 2-generator one-relator groups, evaluated exactly
// over the sector arrangement of the cyclic prefix walk.  A ray with both
// coordinates nonzero is in Sigma^1 iff the walk minimum is attained at
// exactly one index; degenerate rays are handled per `mode`.
SigmaResult brown_sigma_complement(const grouplang::OneRelatorPresentation& p,
                                   DegenerateMode mode = DegenerateMode::Warn);

// Meier-VanWyk: one coordinate subsphere piece per minimal vertex separator.
SigmaResult raag_sigma_complement(const grouplang::SimplicialGraph& g);

// Validated SphereSet (or SigmaResult) document.  Implemented in jsonio.cpp.
SigmaResult load_sigma(const nlohmann::json& doc);

}  // namespace bnsfp::sigma
