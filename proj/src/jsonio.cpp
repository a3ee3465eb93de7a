#include "bnsfp/jsonio.hpp"

#include <fstream>
#include <set>

namespace bnsfp::jsonio {

using lattice::Int;
using lattice::ZMat;
using lattice::ZVec;
using sphere::Arc;
using sphere::Ray;
using sphere::SphereSet;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& at) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw JsonError("unknown key '" + it.key() + "'", at);
}

json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return json(x.get_si());
    return json(x.get_str());
}

json zvec_to_json(const ZVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(int_to_json(x));
    return a;
}

}  // namespace

json load_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw JsonError("cannot open file '" + filename + "'", "$");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw JsonError(std::string("invalid JSON in '") + filename + "': " + e.what(),
                        "$");
    }
    return j;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw JsonError(std::string("invalid JSON: ") + e.what(), "$");
    }
}

Int int_from_json(const json& j, const std::string& at) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw JsonError("invalid integer literal '" + j.get<std::string>() + "'", at);
        }
    }
    throw JsonError("expected an integer", at);
}

ZVec zvec_from_json(const json& j, const std::string& at) {
    if (!j.is_array()) throw JsonError("expected an integer vector", at);
    ZVec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(int_from_json(j[i], at + "[" + std::to_string(i) + "]"));
    return v;
}

ZMat zmat_from_json(const json& j, const std::string& at) {
    if (!j.is_array()) throw JsonError("expected a matrix (array of rows)", at);
    std::vector<ZVec> rows;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(zvec_from_json(j[i], at + "[" + std::to_string(i) + "]"));
        if (i == 0)
            cols = rows[0].size();
        else if (rows[i].size() != cols)
            throw JsonError("ragged matrix", at + "[" + std::to_string(i) + "]");
    }
    return ZMat::from_rows(rows, cols);
}

json zmat_to_json(const ZMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) rows.push_back(zvec_to_json(m.row(i)));
    return rows;
}

std::vector<ZVec> zvec_list_from_json(const json& j, const std::string& at) {
    if (!j.is_array()) throw JsonError("expected an array of integer vectors", at);
    std::vector<ZVec> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(zvec_from_json(j[i], at + "[" + std::to_string(i) + "]"));
    return out;
}

SphereSet sphere_set_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw JsonError("expected a sphere-set object", at);
    check_keys(j, {"rank", "subspaces", "rays", "arcs"}, at);
    if (!j.contains("rank") || !j["rank"].is_number_integer() ||
        j["rank"].get<std::int64_t>() < 0)
        throw JsonError("expected a nonnegative integer 'rank'", at + ".rank");
    auto rank = j["rank"].get<std::size_t>();

    std::vector<lattice::Subspace> subspaces;
    if (j.contains("subspaces")) {
        const json& arr = j["subspaces"];
        if (!arr.is_array()) throw JsonError("expected an array", at + ".subspaces");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string here = at + ".subspaces[" + std::to_string(i) + "]";
            auto gens = zvec_list_from_json(arr[i], here);
            for (const auto& g : gens)
                if (g.size() != rank)
                    throw JsonError("vector length does not match rank", here);
            lattice::Subspace s = lattice::span_of_int(rank, gens);
            if (s.dim() == 0) throw JsonError("subspace piece must have dim >= 1", here);
            subspaces.push_back(std::move(s));
        }
    }
    std::vector<Ray> rays;
    if (j.contains("rays")) {
        const json& arr = j["rays"];
        if (!arr.is_array()) throw JsonError("expected an array", at + ".rays");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string here = at + ".rays[" + std::to_string(i) + "]";
            ZVec v = zvec_from_json(arr[i], here);
            if (v.size() != rank) throw JsonError("vector length does not match rank", here);
            if (lattice::is_zero(v)) throw JsonError("ray direction must be nonzero", here);
            rays.push_back(sphere::make_ray(v));
        }
    }
    std::vector<Arc> arcs;
    if (j.contains("arcs")) {
        const json& arr = j["arcs"];
        if (!arr.is_array()) throw JsonError("expected an array", at + ".arcs");
        if (!arr.empty() && rank != 2)
            throw JsonError("arcs need rank 2", at + ".arcs");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string here = at + ".arcs[" + std::to_string(i) + "]";
            if (!arr[i].is_array() || arr[i].size() != 2)
                throw JsonError("expected an endpoint pair", here);
            ZVec a = zvec_from_json(arr[i][0], here + "[0]");
            ZVec b = zvec_from_json(arr[i][1], here + "[1]");
            if (a.size() != 2 || b.size() != 2)
                throw JsonError("arc endpoints must have length 2", here);
            if (lattice::is_zero(a) || lattice::is_zero(b))
                throw JsonError("arc endpoint must be nonzero", here);
            try {
                arcs.push_back(sphere::make_arc(sphere::make_ray(a), sphere::make_ray(b)));
            } catch (const sphere::SphereError& e) {
                throw JsonError(e.what(), here);
            }
        }
    }
    try {
        return sphere::make_sphere_set(rank, std::move(subspaces), std::move(rays),
                                       std::move(arcs));
    } catch (const sphere::SphereError& e) {
        throw JsonError(e.what(), at);
    }
}

json sphere_set_to_json(const SphereSet& s) {
    json j;
    j["rank"] = s.rank;
    json subs = json::array();
    for (const auto& p : s.subspaces) subs.push_back(fibre::subspace_json(p));
    j["subspaces"] = subs;
    json rays = json::array();
    for (const auto& r : s.rays) rays.push_back(zvec_to_json(r.dir));
    j["rays"] = rays;
    json arcs = json::array();
    for (const auto& a : s.arcs)
        arcs.push_back(json::array({zvec_to_json(a.start.dir), zvec_to_json(a.end.dir)}));
    j["arcs"] = arcs;
    return j;
}

sigma::SigmaResult sigma_result_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw JsonError("expected a sigma-result object", at);
    sigma::SigmaResult r;
    if (j.contains("complement")) {
        check_keys(j, {"kind", "complement", "warnings"}, at);
        r.complement = sphere_set_from_json(j["complement"], at + ".complement");
        if (j.contains("warnings")) {
            auto list = zvec_list_from_json(j["warnings"], at + ".warnings");
            for (std::size_t i = 0; i < list.size(); ++i) {
                std::string here = at + ".warnings[" + std::to_string(i) + "]";
                if (list[i].size() != r.complement.rank)
                    throw JsonError("vector length does not match rank", here);
                if (lattice::is_zero(list[i]))
                    throw JsonError("warned ray must be nonzero", here);
                bool degenerate = false;
                for (const auto& x : list[i])
                    if (x == 0) degenerate = true;
                if (!degenerate)
                    throw JsonError("warned rays are degenerate directions and need "
                                    "a zero coordinate",
                                    here);
                Ray w = sphere::make_ray(list[i]);
                if (sphere::contains_ray(r.complement, w))
                    throw JsonError("warned ray already lies in the complement", here);
                r.warnings.push_back(w);
            }
        }
    } else {
        r.complement = sphere_set_from_json(j, at);
    }
    return r;
}

json sigma_result_to_json(const sigma::SigmaResult& r) {
    json j;
    j["complement"] = sphere_set_to_json(r.complement);
    json w = json::array();
    for (const auto& ray : r.warnings) w.push_back(zvec_to_json(ray.dir));
    j["warnings"] = w;
    return j;
}

grouplang::OneRelatorPresentation presentation_from_json(const json& j,
                                                         const std::string& at) {
    if (!j.is_object()) throw JsonError("expected a presentation object", at);
    check_keys(j, {"kind", "generators", "relator"}, at);
    if (!j.contains("generators") || !j["generators"].is_array())
        throw JsonError("expected an array 'generators'", at + ".generators");
    std::vector<std::string> gens;
    for (std::size_t i = 0; i < j["generators"].size(); ++i) {
        const json& g = j["generators"][i];
        if (!g.is_string())
            throw JsonError("generator name must be a string",
                            at + ".generators[" + std::to_string(i) + "]");
        gens.push_back(g.get<std::string>());
    }
    if (!j.contains("relator") || !j["relator"].is_string())
        throw JsonError("expected a string 'relator'", at + ".relator");
    try {
        return grouplang::make_presentation(gens, j["relator"].get<std::string>());
    } catch (const grouplang::ParseError& e) {
        throw JsonError(e.what(), at + ".relator");
    }
}

grouplang::SimplicialGraph graph_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw JsonError("expected a graph object", at);
    check_keys(j, {"kind", "vertices", "edges"}, at);
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw JsonError("expected an array 'vertices'", at + ".vertices");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        const json& v = j["vertices"][i];
        if (!v.is_string())
            throw JsonError("vertex name must be a string",
                            at + ".vertices[" + std::to_string(i) + "]");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw JsonError("expected an array", at + ".edges");
        for (std::size_t i = 0; i < j["edges"].size(); ++i) {
            const json& e = j["edges"][i];
            std::string here = at + ".edges[" + std::to_string(i) + "]";
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                throw JsonError("edge must be a pair of vertex names", here);
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    try {
        return grouplang::make_graph(vertices, edges);
    } catch (const grouplang::GraphError& e) {
        throw JsonError(e.what(), at);
    }
}

sigma::SigmaResult sigma_from_document(const json& doc, sigma::DegenerateMode mode,
                                       const std::string& at,
                                       const std::string& base_dir) {
    if (doc.is_string()) {
        std::string name = doc.get<std::string>();
        std::string path =
            (!base_dir.empty() && !name.empty() && name[0] != '/') ? base_dir + "/" + name
                                                                   : name;
        return sigma_from_document(load_file(path), mode, "$", "");
    }
    if (!doc.is_object()) throw JsonError("expected a sigma document", at);
    std::string kind = doc.contains("kind") && doc["kind"].is_string()
                           ? doc["kind"].get<std::string>()
                           : "";
    if (kind == "one_relator")
        return sigma::brown_sigma_complement(presentation_from_json(doc, at), mode);
    if (kind == "graph") return sigma::raag_sigma_complement(graph_from_json(doc, at));
    if (kind == "sigma_complement" || kind.empty())
        return sigma_result_from_json(doc, at);
    throw JsonError("unknown document kind '" + kind + "'", at + ".kind");
}

json verdict_to_json(const fibre::Verdict& v) {
    json j;
    j["answer"] = fibre::answer_name(v.answer);
    j["certificate"] = v.certificate;
    j["warnings"] = v.warnings;
    return j;
}

}  // namespace bnsfp::jsonio

namespace bnsfp::sigma {

SigmaResult load_sigma(const nlohmann::json& doc) {
    return jsonio::sigma_result_from_json(doc, "$");
}

}  // namespace bnsfp::sigma
