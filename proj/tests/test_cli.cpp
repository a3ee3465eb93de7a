#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

// run the CLI and capture stdout (stderr goes to /dev/null)
CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(BNSFP_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string fx(const std::string& name) {
    return std::string(BNSFP_FIXTURE_DIR) + "/" + name;
}

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("cli: sigma on the one-relator example") {
    auto r = run_cli("sigma " + fx("one_relator_first.json"));
    CHECK(r.exit_code == 0);
    auto j = parse(r.out);
    CHECK(j["complement"]["rays"] == parse("[[-1,2],[1,-2]]"));
    CHECK(j["complement"]["subspaces"].empty());
    CHECK(j["complement"]["arcs"].empty());
    CHECK(j["warnings"].size() == 4);
}

TEST_CASE("cli: sigma degenerate modes") {
    auto warn = run_cli("sigma " + fx("one_relator_z2.json"));
    CHECK(warn.exit_code == 0);
    CHECK(parse(warn.out)["warnings"].size() == 4);
    auto excl = run_cli("sigma " + fx("one_relator_z2.json") + " --degenerate exclude");
    CHECK(parse(excl.out)["warnings"].empty());
    CHECK(parse(excl.out)["complement"]["rays"].empty());
    auto incl = run_cli("sigma " + fx("one_relator_z2.json") + " --degenerate include");
    CHECK(parse(incl.out)["warnings"].empty());
    CHECK(parse(incl.out)["complement"]["rays"].size() == 4);
}

TEST_CASE("cli: byte-stable output and round trip") {
    auto a = run_cli("sigma " + fx("one_relator_first.json"));
    auto b = run_cli("sigma " + fx("one_relator_first.json"));
    CHECK(a.out == b.out);
    // feeding the emitted document back reproduces it byte for byte
    std::string inline_doc = parse(a.out).dump();
    auto c = run_cli("sigma '" + inline_doc + "'");
    CHECK(c.exit_code == 0);
    CHECK(c.out == a.out);
}

TEST_CASE("cli: separators and artin on the dense 6-vertex graph") {
    auto seps = run_cli("separators " + fx("graph_dense6.json"));
    CHECK(seps.exit_code == 0);
    auto j = parse(seps.out);
    CHECK(j["count"].get<int>() >= 1);
    for (const auto& s : j["separators"]) CHECK(s.size() >= 3);

    auto artin = run_cli("artin " + fx("graph_dense6.json") + " --assert exists");
    CHECK(artin.exit_code == 0);
    auto aj = parse(artin.out);
    CHECK(aj["twisted"]["answer"] == "EXISTS");
    CHECK(aj["untwisted"]["answer"] == "NOT_FP");
    CHECK(aj["is_direct_product"] == false);

    // asserting the wrong way exits 1
    CHECK(run_cli("artin " + fx("graph_dense6.json") + " --assert not-exists").exit_code == 1);
    CHECK(run_cli("artin " + fx("graph_k3.json") + " --assert fp").exit_code == 0);
    CHECK(run_cli("artin " + fx("graph_p3.json") + " --assert fp").exit_code == 1);
}

TEST_CASE("cli: fp-check exit codes on the one-relator example") {
    // untwisted is not finitely presented: --assert fp exits 1
    CHECK(run_cli("fp-check " + fx("task_fp_first_id.json") + " --assert fp").exit_code == 1);
    CHECK(run_cli("fp-check " + fx("task_fp_first_id.json") + " --assert not-fp").exit_code == 0);
    // the swap twist is finitely presented
    auto r = run_cli("fp-check " + fx("task_fp_first_swap.json") + " --assert fp");
    CHECK(r.exit_code == 0);
    CHECK(parse(r.out)["answer"] == "FP");
}

TEST_CASE("cli: untwisted, minus-id, corank2 on files") {
    CHECK(run_cli("untwisted " + fx("task_untwisted_first.json") + " --assert not-fp")
              .exit_code == 0);
    CHECK(run_cli("minus-id " + fx("task_minus_id_first.json") + " --assert not-fp")
              .exit_code == 0);
    auto c2 = run_cli("corank2 " + fx("task_corank2_first.json") + " --assert exists");
    CHECK(c2.exit_code == 0);
}

TEST_CASE("cli: UNKNOWN maps to exit 3") {
    auto r = run_cli("minus-id " + fx("task_minus_id_z2.json"));
    CHECK(r.exit_code == 3);
    CHECK(parse(r.out)["answer"] == "UNKNOWN");
    // exit 3 wins even under --assert
    CHECK(run_cli("minus-id " + fx("task_minus_id_z2.json") + " --assert fp").exit_code == 3);
}

TEST_CASE("cli: shear containment and cook") {
    CHECK(run_cli("fp-check " + fx("task_shear5.json") + " --assert fp").exit_code == 0);
    CHECK(run_cli("fp-check " + fx("task_shear4.json") + " --assert fp").exit_code == 1);
    // the "mu" key carries the lattice matrix, the transpose of mu_star
    std::string mu_task = "{\"factor1\":{\"sigma\":\"" + fx("sigma_shear.json") +
                          "\",\"n_gens\":[]},\"factor2\":{\"sigma\":\"" +
                          fx("sigma_shear.json") +
                          "\",\"n_gens\":[]},\"mu\":[[1,0],[5,1]]}";
    CHECK(run_cli("fp-check '" + mu_task + "' --assert fp").exit_code == 0);
    // giving both keys is rejected
    std::string both = "{\"factor1\":{\"sigma\":\"" + fx("sigma_shear.json") +
                       "\",\"n_gens\":[]},\"factor2\":{\"sigma\":\"" +
                       fx("sigma_shear.json") +
                       "\",\"n_gens\":[]},\"mu\":[[1,0],[5,1]],\"mu_star\":[[1,5],[0,1]]}";
    CHECK(run_cli("fp-check '" + both + "'").exit_code == 2);
    auto cook = run_cli("cook " + fx("task_cook_shear.json"));
    CHECK(cook.exit_code == 0);
    auto j = parse(cook.out);
    CHECK(j["alpha"] == 8);
    CHECK(j["mu_star"] == parse("[[1,8],[0,1]]"));
    CHECK(j["check"]["answer"] == "FP");
}

TEST_CASE("cli: corank1, greatsph, plan") {
    auto c1 = run_cli("corank1 " + fx("task_corank1_limit.json"));
    CHECK(c1.exit_code == 0);
    CHECK(parse(c1.out)["answer"] == "NOT_EXISTS");
    CHECK(run_cli("corank1 " + fx("task_corank1_limit.json") + " --assert not-exists")
              .exit_code == 0);

    CHECK(run_cli("greatsph " + fx("task_greatsph_f2xf2.json") + " --assert exists")
              .exit_code == 0);

    auto plan = run_cli("plan " + fx("task_plan_f2xf2.json"));
    CHECK(plan.exit_code == 0);
    auto pj = parse(plan.out);
    CHECK(pj["n"] == 4);
    CHECK(pj["check"]["answer"] == "FP");
}

TEST_CASE("cli: parse and validation errors exit 2") {
    CHECK(run_cli("sigma /nonexistent.json").exit_code == 2);
    CHECK(run_cli("sigma '{\"rank\":3,\"arcs\":[[[1,0,0],[0,1,0]]]}'").exit_code == 2);
    CHECK(run_cli("sigma '{\"kind\":\"one_relator\",\"generators\":[\"a\",\"b\",\"c\"],\"relator\":\"abc\"}'")
              .exit_code == 2);
    CHECK(run_cli("fp-check '{\"factor1\":{\"sigma\":{\"rank\":2},\"n_gens\":[]}}'")
              .exit_code == 2);
    CHECK(run_cli("nosuchcommand x").exit_code == 2);
    CHECK(run_cli("sigma").exit_code == 2);
}

TEST_CASE("cli: text format is a stable flat rendering") {
    auto r = run_cli("untwisted " + fx("task_untwisted_first.json") + " --format text");
    CHECK(r.out.find("answer = \"NOT_FP\"") != std::string::npos);
    auto again = run_cli("untwisted " + fx("task_untwisted_first.json") + " --format text");
    CHECK(r.out == again.out);
}
