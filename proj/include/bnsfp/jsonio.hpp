#pragma once

#include <string>
#include <vector>

#include "bnsfp/fibre.hpp"
#include "bnsfp/grouplang.hpp"
#include "bnsfp/sigma.hpp"
#include "bnsfp/sphere.hpp"

#include <json.hpp>

namespace bnsfp::jsonio {

using nlohmann::json;

// Validation failure, carrying the JSON path of the offending value.
struct JsonError : std::runtime_error {
    std::string path;
    JsonError(const std::string& what, const std::string& at)
        : std::runtime_error(what + " (at " + at + ")"), path(at) {}
};

json load_file(const std::string& filename);
json parse_text(const std::string& text);

lattice::Int int_from_json(const json& j, const std::string& at);
lattice::ZVec zvec_from_json(const json& j, const std::string& at);
lattice::ZMat zmat_from_json(const json& j, const std::string& at);
json zmat_to_json(const lattice::ZMat& m);
std::vector<lattice::ZVec> zvec_list_from_json(const json& j, const std::string& at);

sphere::SphereSet sphere_set_from_json(const json& j, const std::string& at);
json sphere_set_to_json(const sphere::SphereSet& s);

sigma::SigmaResult sigma_result_from_json(const json& j, const std::string& at);
json sigma_result_to_json(const sigma::SigmaResult& r);

grouplang::OneRelatorPresentation presentation_from_json(const json& j,
                                                         const std::string& at);
grouplang::SimplicialGraph graph_from_json(const json& j, const std::string& at);

// Any sigma-producing document: one_relator, graph, sigma_complement,
// a bare SphereSet, or a string naming a file with one of those.
sigma::SigmaResult sigma_from_document(const json& doc, sigma::DegenerateMode mode,
                                       const std::string& at,
                                       const std::string& base_dir);

json verdict_to_json(const fibre::Verdict& v);

}  // namespace bnsfp::jsonio
