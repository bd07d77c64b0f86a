#include "doctest.h"

#include "g2fm/suites.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace g2fm;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " \"" G2FM_CLI_PATH "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return "\"" G2FM_DATA_DIR "/" + name + "\""; }

fs::path scratch() {
    fs::path d = fs::temp_directory_path() / ("g2fm_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

std::string write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return "\"" + p.string() + "\"";
}

json read_report(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

// JSON after the first line that starts with '{'.
json json_tail(const std::string& out) {
    auto pos = out.find("\n{");
    return json::parse(out.front() == '{' ? out : out.substr(pos + 1));
}

json strip_timing(json r) {
    for (auto& c : r["checks"]) c.erase("runtime_ms");
    return r;
}

}  // namespace

TEST_CASE("verify: every suite but moduli-flat passes") {
    auto r = run("verify --suite g2-identities,spin7-identities,decompositions,yukawa,fourier,sections,chern-simons");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify: moduli-flat fails only on the coassociative scale") {
    auto path = scratch() / "moduli.json";
    auto r = run("verify --suite moduli-flat --report \"" + path.string() + "\"");
    CHECK(r.code == 1);
    json rep = read_report(path);
    std::vector<std::string> failed;
    for (const auto& c : rep["checks"])
        if (c["status"] == "fail") failed.push_back(c["id"]);
    REQUIRE(failed.size() == 1);
    CHECK(failed[0] == "moduli-flat/moduli.coa-T3xT4.theta");
    CHECK(rep["summary"]["pass"] == false);
}

TEST_CASE("verify: flipping a sign in Omega breaks hodge(Omega) = Theta") {
    auto cfg = write_file("fault.json", R"({"suites": ["g2-identities"], "fault.flip_omega_term": 0})");
    auto path = scratch() / "fault_report.json";
    auto r = run("verify --config " + cfg + " --report \"" + path.string() + "\"");
    CHECK(r.code == 1);
    bool hodge_failed = false;
    json rep = read_report(path);
    for (const auto& c : rep["checks"])
        if (c["id"] == "g2-identities/g2.hodge-omega") hodge_failed = c["status"] == "fail";
    CHECK(hodge_failed);
}

TEST_CASE("verify: empty suite list") {
    auto r = run("verify --suite none --report -");
    CHECK(r.code == 0);
    json rep = json_tail(r.out);
    CHECK(rep["checks"].empty());
    CHECK(rep["summary"]["total"] == 0);
    CHECK(rep["summary"]["pass"] == true);
}

TEST_CASE("verify: reports are deterministic apart from timing") {
    auto a = scratch() / "det_a.json", b = scratch() / "det_b.json";
    const std::string suites = "--suite yukawa,sections,fourier,chern-simons --seed 7 ";
    REQUIRE(run("verify " + suites + "--report \"" + a.string() + "\"").code == 0);
    REQUIRE(run("verify " + suites + "--report \"" + b.string() + "\"").code == 0);
    CHECK(strip_timing(read_report(a)).dump() == strip_timing(read_report(b)).dump());
    json rep = read_report(a);
    for (const auto& c : rep["checks"])
        if (c["id"] == "yukawa/yukawa.ratio") CHECK(c["seed"] == check_seed(7, "yukawa.ratio"));
}

TEST_CASE("merge_reports does not depend on suite order") {
    SuiteConfig c = default_config();
    auto x = run_suite("fourier", c), y = run_suite("decompositions", c), z = run_suite("moduli-flat", c);
    auto r1 = merge_reports(c, {x, y, z}), r2 = merge_reports(c, {z, x, y});
    CHECK(report_to_json(r1, false).dump() == report_to_json(r2, false).dump());
    CHECK(std::is_sorted(r1.checks.begin(), r1.checks.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
}

TEST_CASE("verify: invalid configuration exits 2") {
    CHECK(run("verify --tol-abs 0").code == 2);
    CHECK(run("verify --tol-rel -1").code == 2);
    CHECK(run("verify --grid 4").code == 2);
    CHECK(run("verify --suite bogus").code == 2);
    CHECK(run("verify --config " + write_file("unknown.json", R"({"sutes": []})")).code == 2);
    CHECK(run("verify --config " + write_file("badtype.json", R"({"grid": "many"})")).code == 2);
    CHECK(run("verify --config " + data("malformed.json")).code == 2);
    CHECK(run("verify --config /nonexistent/g2fm.json").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("verify: config path from the environment, flags take precedence") {
    auto cfg = write_file("env.json", R"({"suites": ["decompositions"], "seed": 11})");
    auto r = run("verify --report -", "G2FM_CONFIG=" + cfg);
    REQUIRE(r.code == 0);
    json rep = json_tail(r.out);
    CHECK(rep["config"]["suites"] == json::array({"decompositions"}));
    CHECK(rep["config"]["seed"] == 11);

    r = run("verify --suite none --report -", "G2FM_CONFIG=" + cfg);
    CHECK(json_tail(r.out)["checks"].empty());

    CHECK(run("verify", "G2FM_CONFIG=/nonexistent/g2fm.json").code == 2);
}

TEST_CASE("transform: semi-flat coassociative cycle moves to the dual side") {
    auto r = run("transform --fibration coassociative-t4 --input " + data("coassoc_semiflat.json"));
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["output"]["kind"] == "coassoc-semiflat");
    CHECK(j["output"]["side"] == "W");
    CHECK(j["input_residual"]["vanishes"] == true);
    CHECK(j["output_residual"]["vanishes"] == true);

    // The output is itself a valid input.
    auto w = write_file("w_side.json", j["output"].dump());
    CHECK(run("residual --kind coassoc-semiflat --input " + w).code == 0);
}

TEST_CASE("transform: output file") {
    auto out = scratch() / "out.json";
    REQUIRE(run("transform --fibration associative-t3 --input " + data("flat_torus_point.json") + " --output \"" + out.string() + "\"").code == 0);
    CHECK(read_report(out)["output"]["kind"] == "flat-torus-connection");
}

TEST_CASE("transform: flat-torus point goes to a flat connection and back") {
    auto r = run("transform --fibration coassociative-t4 --input " + data("flat_torus_point.json"));
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["output"]["kind"] == "flat-torus-connection");
    auto back = run("transform --fibration coassociative-t4 --input " + write_file("conn.json", j["output"].dump()));
    REQUIRE(back.code == 0);
    std::ifstream in(G2FM_DATA_DIR "/flat_torus_point.json");
    json orig = json::parse(in);
    json again = json::parse(back.out)["output"];
    CHECK(again["kind"] == "flat-torus-point");
    CHECK(again["coords"].size() == orig["coords"].size());
}

TEST_CASE("transform: associative sections") {
    auto good = json::parse(run("transform --fibration coassociative-t4 --input " + data("assoc_section_constant.json")).out);
    CHECK(good["output"]["kind"] == "connection-on-w");
    for (const auto& p : good["output_residual"]) CHECK(p["deformed_dt"] == true);

    auto bad = json::parse(run("transform --fibration coassociative-t4 --input " + data("assoc_section.json")).out);
    for (const auto& p : bad["output_residual"]) CHECK(p["deformed_dt"] == false);
}

TEST_CASE("transform: errors") {
    CHECK(run("transform --fibration associative-t3 --input " + data("assoc_section.json")).code == 2);
    CHECK(run("transform --fibration associative-t3 --input " + data("coassoc_semiflat.json")).code == 2);
    CHECK(run("transform --fibration coassociative-t4 --input " + data("malformed.json")).code == 2);
    CHECK(run("transform --fibration coassociative-t4 --input " + data("theta_g2.json")).code == 2);
    CHECK(run("transform --fibration sideways --input " + data("assoc_section.json")).code == 2);
    CHECK(run("transform --fibration coassociative-t4 --input /nonexistent.json").code == 2);
    CHECK(run("transform --fibration coassociative-t4 --input " + write_file("nokind.json", R"({"fiber": []})")).code == 2);
}

TEST_CASE("residual: exit code follows vanishing") {
    CHECK(run("residual --kind coassoc-semiflat --input " + data("coassoc_semiflat.json")).code == 0);
    CHECK(run("residual --kind assoc-section --input " + data("assoc_section_constant.json")).code == 0);
    auto r = run("residual --kind assoc-section --input " + data("assoc_section.json"));
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["sup"].get<double>() == doctest::Approx(9.0 / 8));

    CHECK(run("residual --kind assoc-semiflat --input " + data("coassoc_semiflat.json")).code == 2);
    CHECK(run("residual --kind coassoc-semiflat --input " + data("flat_torus_point.json")).code == 2);
    CHECK(run("residual --kind nonsense --input " + data("coassoc_semiflat.json")).code == 2);
}

TEST_CASE("decompose") {
    auto r = run("decompose --space g2 --degree 3 --input " + data("dx123_g2.json"));
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["sums_to_input"] == true);
    REQUIRE(j["components"].size() == 3);
    CHECK(j["components"][0]["label"] == "1");
    CHECK(j["components"][0]["norm2"] == "1/7");
    CHECK(j["components"][1]["norm2"] == "0");
    CHECK(j["components"][2]["norm2"] == "6/7");

    r = run("decompose --space spin7 --degree 4 --input " + data("z_four_form.json"));
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["sums_to_input"] == true);
    std::vector<std::string> labels;
    for (const auto& c : j["components"]) labels.push_back(c["label"]);
    CHECK(labels == std::vector<std::string>{"1", "7", "27", "35"});

    CHECK(run("decompose --space g2 --degree 3 --input " + data("theta_g2.json")).code == 2);
    CHECK(run("decompose --space g2 --degree 2 --input " + data("dx123_g2.json")).code == 2);
    CHECK(run("decompose --space spin7 --degree 3 --input " + data("dx123_g2.json")).code == 2);
    CHECK(run("decompose --space g2 --degree 4 --input " +
              write_file("deg4.json", R"({"frame": "g2", "degree": 4, "terms": [{"idx": [0, 1, 2, 3], "coeff": "1"}]})"))
              .code == 2);
}
