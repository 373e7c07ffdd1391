#include <cstdio>
#include <fstream>
#include <sstream>

#include "ncgcurv/cli.hpp"
#include "ncgcurv/report.hpp"
#include "support.hpp"

using namespace ncgcurv;

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "ncgcurv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expect) {
    args.push_back("--json");
    args.push_back("-");
    Run r = run(args);
    CAPTURE(r.err);
    CHECK(r.code == expect);
    return Json::parse(r.out);
}

std::string fixture(const std::string& name) { return std::string(NCGCURV_FIXTURES) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
    std::string p = "/tmp/ncgcurv_test_" + name;
    std::ofstream(p) << text;
    return p;
}

const Json* find_check(const Json& rep, const std::string& name) {
    for (const auto& c : rep["checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}
}  // namespace

TEST_CASE("list") {
    Run r = run({"list"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sphere3") != std::string::npos);
    Json j = run_json({"list"}, 0);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["objects"]["geometries"].size() == builtin_names().size());
}

TEST_CASE("check-all on the torus") {
    Json j = run_json({"check-all", "--geometry", "torus", "--symbolic"}, 0);
    CHECK(j["status"] == "pass");
    CHECK(j["objects"]["r"] == "0");
    CHECK(j["objects"]["residue"] == "0");
    CHECK(j["objects"]["A"]["terms"].empty());
    CHECK(j["theta"] == "symbolic");
    CHECK_FALSE(j.contains("timing_seconds"));
}

TEST_CASE("scalar curvature of the sphere") {
    Json j = run_json({"scalar", "--geometry", "sphere3", "--symbolic"}, 0);
    CHECK(j["objects"]["r"] == "6");
    Run t = run({"scalar", "--geometry", "sphere3"});
    CHECK(t.out.find("r = 6") != std::string::npos);
    Json c = run_json({"curvature", "-g", "sphere3", "--classical"}, 0);
    CHECK(find_check(c, "constant_curvature_table")->at("status") == "pass");
    CHECK(c["objects"]["riemann_real_frame"].size() == 12);
}

TEST_CASE("numeric deformation suite") {
    Json j = run_json({"deform-verify", "--geometry", "sphere3", "--theta", "1/5"}, 0);
    CHECK(j["theta"] == "1/5");
    CHECK(j["checks"].size() >= 20);
}

TEST_CASE("reports are reproducible") {
    Run a = run({"check-all", "-g", "sphere3", "--seed", "11", "--json", "-"});
    Run b = run({"check-all", "-g", "sphere3", "--seed", "11", "--json", "-"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json j = run_json({"weitzenbock", "-g", "sphere3", "--timing"}, 0);
    CHECK(j["objects"]["residue"] == "3/2");
    CHECK(j.contains("timing_seconds"));
}

TEST_CASE("input errors exit 2") {
    CHECK(run({"scalar", "--geometry", "no_such_thing"}).code == 2);
    CHECK(run({"scalar", "--theta", "abc"}).code == 2);
    CHECK(run({"scalar", "--theta", "1/5", "--classical"}).code == 2);
    CHECK(run({"scalar", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"deform-verify", "--classical"}).code == 2);
    CHECK(run({"connection", "--pi-component", "1+"}).code == 2);
    Run p = run({"validate", "--geometry", temp_file("broken.geom", "meta: {name: x\n  dimension: [\n")});
    CHECK(p.code == 2);
    CHECK(p.err.find("line 2") != std::string::npos);
    auto g = builtin_torus();
    g.dirac = {};
    CHECK(run({"weitzenbock", "--geometry", temp_file("nospin.geom", serialize_geometry(g))}).code == 2);
    CHECK(run({"check-all", "--geometry", temp_file("nospin.geom", serialize_geometry(g))}).code == 0);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("validation failures exit 1 with the named invariant") {
    Json j = run_json({"validate", "--geometry", fixture("bad_gram.geom")}, 1);
    const Json* c = find_check(j, "orthonormal_frame");
    REQUIRE(c);
    CHECK((*c)["status"] == "fail");
    Json d = run_json({"scalar", "--geometry", fixture("bad_degree.geom")}, 1);
    CHECK(find_check(d, "frame_differential_degrees")->at("witness").get<std::string>().find("frame index 2") == 0);
}

TEST_CASE("every sabotage fixture fails a named check with a witness") {
    for (const char* f : {"sabotage_spin_scaled.geom", "sabotage_flipped_braiding.geom", "sabotage_derivation.geom",
                          "sabotage_star.geom", "sabotage_connection.geom"}) {
        CAPTURE(f);
        Json j = run_json({"check-all", "--geometry", fixture(f)}, 1);
        bool witnessed = false;
        for (const auto& c : j["checks"])
            if (c["status"] == "fail" && c.contains("witness")) witnessed = true;
        CHECK(witnessed);
    }
}

TEST_CASE("an extra Im(Pi) component breaks the connection checks") {
    Json j = run_json({"connection", "-g", "torus", "--pi-component", "1/3"}, 1);
    CHECK_FALSE(j["objects"]["A"]["terms"].empty());
}
