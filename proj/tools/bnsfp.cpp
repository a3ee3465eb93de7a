#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bnsfp/fibre.hpp"
#include "bnsfp/jsonio.hpp"

using bnsfp::fibre::Answer;
using bnsfp::fibre::Verdict;
using bnsfp::jsonio::json;
using bnsfp::jsonio::JsonError;

namespace {

struct Options {
    std::string input;
    std::string format = "json";
    std::string degenerate = "warn";
    std::string assertion;
};

bnsfp::sigma::DegenerateMode mode_of(const Options& opt) {
    if (opt.degenerate == "warn") return bnsfp::sigma::DegenerateMode::Warn;
    if (opt.degenerate == "exclude") return bnsfp::sigma::DegenerateMode::Exclude;
    return bnsfp::sigma::DegenerateMode::Include;
}

std::string dirname_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    if (pos == std::string::npos) return ".";
    return path.substr(0, pos);
}

// The input is either a path or inline JSON (starts with '{').
json load_input(const Options& opt, std::string& base_dir) {
    if (!opt.input.empty() && opt.input[0] == '{') {
        base_dir = ".";
        return bnsfp::jsonio::parse_text(opt.input);
    }
    base_dir = dirname_of(opt.input);
    return bnsfp::jsonio::load_file(opt.input);
}

const json& field(const json& doc, const std::string& key, const std::string& at) {
    if (!doc.is_object() || !doc.contains(key))
        throw JsonError("missing required key '" + key + "'", at);
    return doc[key];
}

// a task factor: {"sigma": ..., "n_gens": [...], "k_gens": [...]}
struct Factor {
    bnsfp::sigma::SigmaResult sigma;
    std::vector<bnsfp::lattice::ZVec> n_gens;
    std::vector<bnsfp::lattice::ZVec> k_gens;
    bool has_n_gens = false;
};

Factor parse_factor(const json& doc, const Options& opt, const std::string& at,
                    const std::string& base_dir, bool need_n_gens, bool need_k_gens) {
    if (!doc.is_object()) throw JsonError("expected a factor object", at);
    Factor f;
    f.sigma = bnsfp::jsonio::sigma_from_document(field(doc, "sigma", at), mode_of(opt),
                                                 at + ".sigma", base_dir);
    if (doc.contains("n_gens")) {
        f.n_gens = bnsfp::jsonio::zvec_list_from_json(doc["n_gens"], at + ".n_gens");
        f.has_n_gens = true;
    } else if (need_n_gens) {
        throw JsonError("missing required key 'n_gens'", at);
    }
    if (doc.contains("k_gens"))
        f.k_gens = bnsfp::jsonio::zvec_list_from_json(doc["k_gens"], at + ".k_gens");
    else if (need_k_gens)
        throw JsonError("missing required key 'k_gens'", at);
    return f;
}

bnsfp::fibre::QuotientDatum quotient_of(const Factor& f) {
    return bnsfp::fibre::make_quotient(f.sigma.complement.rank, f.n_gens);
}

bnsfp::fibre::TwistMatrix parse_twist(const json& doc, const std::string& at) {
    bool has_mu = doc.contains("mu"), has_ms = doc.contains("mu_star");
    if (has_mu == has_ms)
        throw JsonError("expected exactly one of 'mu' (lattice matrix) or 'mu_star'", at);
    if (has_mu)
        return bnsfp::fibre::twist_from_b(
            bnsfp::jsonio::zmat_from_json(doc["mu"], at + ".mu"));
    return bnsfp::fibre::twist_from_mu_star(
        bnsfp::jsonio::zmat_from_json(doc["mu_star"], at + ".mu_star"));
}

void render(const json& report, const Options& opt) {
    if (opt.format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    // text mode: a flat, byte-stable rendering of the same structure
    std::function<void(const json&, const std::string&)> walk =
        [&](const json& j, const std::string& prefix) {
            if (j.is_object()) {
                for (auto it = j.begin(); it != j.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
            } else if (j.is_array() && !j.empty() &&
                       (j[0].is_object() || j[0].is_array())) {
                for (std::size_t i = 0; i < j.size(); ++i)
                    walk(j[i], prefix + "[" + std::to_string(i) + "]");
            } else {
                std::cout << prefix << " = " << j.dump() << "\n";
            }
        };
    walk(report, "");
}

int finish(const json& report, std::optional<Answer> verdict, const Options& opt) {
    render(report, opt);
    if (verdict && *verdict == Answer::UNKNOWN) return 3;
    if (!opt.assertion.empty()) {
        if (!verdict) {
            std::cerr << "error: --assert is not meaningful for this command\n";
            return 2;
        }
        Answer want = Answer::FP;
        if (opt.assertion == "fp") want = Answer::FP;
        else if (opt.assertion == "not-fp") want = Answer::NOT_FP;
        else if (opt.assertion == "exists") want = Answer::EXISTS;
        else want = Answer::NOT_EXISTS;
        return *verdict == want ? 0 : 1;
    }
    return 0;
}

int run_sigma(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    auto result = bnsfp::jsonio::sigma_from_document(doc, mode_of(opt), "$", base);
    return finish(bnsfp::jsonio::sigma_result_to_json(result), std::nullopt, opt);
}

int run_separators(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    auto g = bnsfp::jsonio::graph_from_json(doc, "$");
    auto seps = bnsfp::grouplang::minimal_separators(g);
    json out;
    json list = json::array();
    for (const auto& s : seps) {
        json names = json::array();
        for (std::size_t v : s) names.push_back(g.vertices[v]);
        list.push_back(names);
    }
    out["separators"] = list;
    out["count"] = seps.size();
    return finish(out, std::nullopt, opt);
}

int run_artin(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    auto g = bnsfp::jsonio::graph_from_json(doc, "$");
    auto res = bnsfp::fibre::artin_check(g);
    json out;
    out["untwisted"] = bnsfp::jsonio::verdict_to_json(res.untwisted);
    out["twisted"] = bnsfp::jsonio::verdict_to_json(res.twisted);
    json seps = json::array();
    for (const auto& s : res.separators) {
        json names = json::array();
        for (std::size_t v : s) names.push_back(g.vertices[v]);
        seps.push_back(names);
    }
    out["separators"] = seps;
    out["is_direct_product"] = res.direct_product;
    std::optional<Answer> verdict;
    if (opt.assertion == "fp" || opt.assertion == "not-fp")
        verdict = res.untwisted.answer;
    else
        verdict = res.twisted.answer;
    return finish(out, verdict, opt);
}

int run_fp_check(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    Factor f1 = parse_factor(field(doc, "factor1", "$"), opt, "$.factor1", base, true, false);
    Factor f2 = parse_factor(field(doc, "factor2", "$"), opt, "$.factor2", base, true, false);
    auto mu = parse_twist(doc, "$");
    Verdict v = bnsfp::fibre::fp_check(f1.sigma, quotient_of(f1), f2.sigma,
                                       quotient_of(f2), mu);
    return finish(bnsfp::jsonio::verdict_to_json(v), v.answer, opt);
}

int run_single_factor(const Options& opt,
                      Verdict (*op)(const bnsfp::sigma::SigmaResult&,
                                    const bnsfp::fibre::QuotientDatum&)) {
    std::string base;
    json doc = load_input(opt, base);
    const json& fdoc = doc.contains("factor") ? doc["factor"] : field(doc, "factor1", "$");
    Factor f = parse_factor(fdoc, opt, "$.factor", base, true, false);
    Verdict v = op(f.sigma, quotient_of(f));
    return finish(bnsfp::jsonio::verdict_to_json(v), v.answer, opt);
}

int run_corank1(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    Factor f1 = parse_factor(field(doc, "factor1", "$"), opt, "$.factor1", base, false, false);
    Factor f2 = parse_factor(field(doc, "factor2", "$"), opt, "$.factor2", base, false, false);
    Verdict v = bnsfp::fibre::corank1_existence(f1.sigma, f2.sigma);
    return finish(bnsfp::jsonio::verdict_to_json(v), v.answer, opt);
}

int run_greatsph(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    json fdoc;
    if (doc.contains("sigma"))
        fdoc = doc;
    else if (doc.contains("factor"))
        fdoc = doc["factor"];
    else
        fdoc = field(doc, "factor1", "$");
    Factor f = parse_factor(fdoc, opt, "$", base, false, false);
    Verdict v = bnsfp::fibre::greatsph_existence(f.sigma);
    return finish(bnsfp::jsonio::verdict_to_json(v), v.answer, opt);
}

int run_cook(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    Factor f1 = parse_factor(field(doc, "factor1", "$"), opt, "$.factor1", base, true, true);
    Factor f2 = parse_factor(field(doc, "factor2", "$"), opt, "$.factor2", base, true, true);
    auto q1 = quotient_of(f1), q2 = quotient_of(f2);
    auto res = bnsfp::fibre::cook_mu(f1.sigma, q1, f1.k_gens, f2.sigma, q2, f2.k_gens);
    Verdict check = bnsfp::fibre::fp_check(f1.sigma, q1, f2.sigma, q2, res.twist);
    json out;
    out["mu_star"] = bnsfp::jsonio::zmat_to_json(bnsfp::fibre::mu_star(res.twist));
    out["b"] = bnsfp::jsonio::zmat_to_json(res.twist.b);
    out["alpha"] = res.alpha.get_si();
    out["check"] = bnsfp::jsonio::verdict_to_json(check);
    return finish(out, check.answer, opt);
}

int run_plan(const Options& opt) {
    std::string base;
    json doc = load_input(opt, base);
    Factor f1 = parse_factor(field(doc, "factor1", "$"), opt, "$.factor1", base, false, false);
    Factor f2 = parse_factor(field(doc, "factor2", "$"), opt, "$.factor2", base, false, false);
    auto res = bnsfp::fibre::plan_max_corank(f1.sigma, f2.sigma);
    auto gens_json = [](const std::vector<bnsfp::lattice::ZVec>& gens) {
        json a = json::array();
        for (const auto& g : gens)
            a.push_back(bnsfp::fibre::ray_json(bnsfp::sphere::Ray{g}));
        return a;
    };
    json out;
    out["n"] = res.n;
    out["factor1"] = json{{"n_gens", gens_json(res.n1_gens)},
                          {"k_gens", gens_json(res.k1_gens)}};
    out["factor2"] = json{{"n_gens", gens_json(res.n2_gens)},
                          {"k_gens", gens_json(res.k2_gens)}};
    out["mu_star"] = bnsfp::jsonio::zmat_to_json(bnsfp::fibre::mu_star(res.twist));
    out["alpha"] = res.alpha.get_si();
    out["check"] = bnsfp::jsonio::verdict_to_json(res.check);
    return finish(out, res.check.answer, opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision procedures for finite presentability of normal fibre "
                 "products via BNS invariant complements"};
    app.require_subcommand(1);

    Options opt;
    bool seed_free = true;
    auto add_common = [&](CLI::App* sub, bool with_assert) {
        sub->add_option("input", opt.input, "task file path or inline JSON")->required();
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        sub->add_option("--degenerate", opt.degenerate,
                        "treatment of degenerate one-relator rays")
            ->check(CLI::IsMember({"warn", "exclude", "include"}))
            ->capture_default_str();
        sub->add_flag("--seed-free", seed_free,
                      "deterministic mode (always on; flag reserved)");
        if (with_assert)
            sub->add_option("--assert", opt.assertion, "exit 1 unless the verdict matches")
                ->check(CLI::IsMember({"fp", "not-fp", "exists", "not-exists"}));
    };

    auto* c_sigma = app.add_subcommand("sigma", "compute or load a Sigma^1 complement");
    add_common(c_sigma, false);
    auto* c_sep = app.add_subcommand("separators", "minimal vertex separators of a graph");
    add_common(c_sep, false);
    auto* c_artin = app.add_subcommand("artin", "RAAG fibre-product criteria");
    add_common(c_artin, true);
    auto* c_fp = app.add_subcommand("fp-check", "finite presentability of a twisted fibre product");
    add_common(c_fp, true);
    auto* c_un = app.add_subcommand("untwisted", "untwisted fibre product check");
    add_common(c_un, true);
    auto* c_mi = app.add_subcommand("minus-id", "-id twisted fibre product check");
    add_common(c_mi, true);
    auto* c_c1 = app.add_subcommand("corank1", "co-rank 1 existence");
    add_common(c_c1, true);
    auto* c_c2 = app.add_subcommand("corank2", "co-rank 2 existence");
    add_common(c_c2, true);
    auto* c_gs = app.add_subcommand("greatsph", "great-subsphere criterion");
    add_common(c_gs, true);
    auto* c_cook = app.add_subcommand("cook", "synthesize a twisting automorphism");
    add_common(c_cook, false);
    auto* c_plan = app.add_subcommand("plan", "maximal co-rank plan");
    add_common(c_plan, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_sigma->parsed()) return run_sigma(opt);
        if (c_sep->parsed()) return run_separators(opt);
        if (c_artin->parsed()) return run_artin(opt);
        if (c_fp->parsed()) return run_fp_check(opt);
        if (c_un->parsed()) return run_single_factor(opt, &bnsfp::fibre::untwisted_check);
        if (c_mi->parsed()) return run_single_factor(opt, &bnsfp::fibre::minus_id_check);
        if (c_c1->parsed()) return run_corank1(opt);
        if (c_c2->parsed())
            return run_single_factor(opt, &bnsfp::fibre::corank2_existence);
        if (c_gs->parsed()) return run_greatsph(opt);
        if (c_cook->parsed()) return run_cook(opt);
        if (c_plan->parsed()) return run_plan(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
