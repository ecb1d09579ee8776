#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "straticoh/fixtures.hpp"
#include "straticoh/json_io.hpp"
#include "straticoh/selftest.hpp"

using namespace straticoh;
namespace fx = straticoh::fixtures;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const Json& j) {
    fs::path dir = fs::temp_directory_path() / "straticoh_tests";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream out(p);
    out << j.dump(2);
    return p;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(STRATICOH_BIN) + " " + args + " > /dev/null 2> /dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string run_cli_stdout(const std::string& args) {
    fs::path out = fs::temp_directory_path() / "straticoh_tests" / "out.txt";
    fs::create_directories(out.parent_path());
    std::string cmd =
        std::string(STRATICOH_BIN) + " " + args + " > " + out.string() + " 2>/dev/null";
    if (std::system(cmd.c_str()) == -1) return {};
    std::ifstream in(out);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

Json circle_complex_json() {
    Json j;
    j["vertices"] = {0, 1, 2};
    j["simplices"] = Json::array({{0, 1}, {1, 2}, {0, 2}});
    return j;
}

Json solid_torus_space_json() {
    IsolatedSingularitySpace sp = fx::coned_solid_torus_space();
    Json j;
    j["M"] = complex_to_json(*sp.exterior.complex);
    Json links = Json::array();
    links.push_back(complex_to_json(*sp.links[0]));
    j["boundary_links"] = std::move(links);
    j["perversity"] = "lower-middle";
    return j;
}

Json klein_bundle_json() {
    Json j;
    j["base"] = circle_complex_json();
    Json fiber;
    fiber["vertices"] = {0, 1, 2, 3, 4, 5};
    fiber["simplices"] =
        Json::array({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    j["fiber"] = std::move(fiber);
    Json refl;
    for (int v = 0; v < 6; ++v) refl[std::to_string(v)] = (6 - v) % 6;
    j["monodromy"] = Json{{"[0,2]", refl}};
    return j;
}

}  // namespace

TEST_CASE("complex JSON round trip") {
    ComplexHandle k = complex_from_json(circle_complex_json());
    CHECK(k->count(0) == 3);
    CHECK(k->count(1) == 3);
    Json back = complex_to_json(*k);
    ComplexHandle k2 = complex_from_json(back);
    CHECK(k2->count(1) == 3);
    CHECK_THROWS(complex_from_json(Json::array()));
}

TEST_CASE("bundle JSON parses into a valid Klein system") {
    FlatBundleSystem sys = bundle_from_json(klein_bundle_json());
    CHECK(total_cohomology_betti(sys, Selector::Full) ==
          std::map<int, int>{{0, 1}, {1, 1}, {2, 0}});
}

TEST_CASE("space JSON: isolated with vertex-subset links") {
    IsolatedSingularitySpace sp = fx::suspension_of_torus_space();
    Json j;
    j["M"] = complex_to_json(*sp.exterior.complex);
    Json links = Json::array();
    for (const auto& l : sp.links) {
        Json sel;
        sel["vertex_subset"] = l->vertices();
        links.push_back(std::move(sel));
    }
    j["boundary_links"] = std::move(links);
    SpaceInput in = space_from_json(j);
    REQUIRE(!in.depth1);
    HIResult hi = hi_groups(*in.isolated, Perversity::lower_middle(3));
    CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 1}, {2, 3}, {3, 0}});
}

TEST_CASE("space JSON: depth-1 bundle with identification") {
    DepthOneSpace sp = fx::sphere_times_circle_space();
    Json j;
    j["M"] = complex_to_json(*sp.exterior.complex);
    Json bundle;
    bundle["base"] = complex_to_json(*sp.bundle.base);
    bundle["fiber"] = complex_to_json(*sp.bundle.fiber);
    bundle["realization"] = "product";
    Json ident = Json::object();
    for (const auto& [a, b] : sp.identification) ident[std::to_string(a)] = b;
    bundle["identification"] = std::move(ident);
    j["bundle"] = std::move(bundle);
    SpaceInput in = space_from_json(j);
    REQUIRE(in.depth1);
    HIResult hi = hi_groups_depth1(*in.depth_one, Perversity::lower_middle(3));
    CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
}

TEST_CASE("weights JSON validates positivity") {
    ComplexPtr c = fx::circle(3)->cochain_complex();
    Json w;
    w["1"] = Json::array({"1/2", "2", "3"});
    InnerProduct ip = weights_from_json(w, *c);
    CHECK(ip.weights.at(1)[0] == make_rational(1, 2));
    Json bad;
    bad["0"] = Json::array({"0", "1", "1"});
    CHECK_THROWS(weights_from_json(bad, *c));
}

TEST_CASE("cli: hi on the coned solid torus") {
    fs::path space = write_temp("solid_torus_space.json", solid_torus_space_json());
    std::string out = run_cli_stdout("hi " + space.string());
    Json rep = Json::parse(out);
    CHECK(rep["schema_version"] == 1);
    CHECK(rep["hi_betti"]["2"] == 1);
    CHECK(rep["hi_betti"]["1"] == 0);
    CHECK(run_cli("hi " + space.string()) == 0);
}

TEST_CASE("cli: collapse-check on the Klein bundle exits 0") {
    fs::path bundle = write_temp("klein_bundle.json", klein_bundle_json());
    CHECK(run_cli("collapse-check " + bundle.string()) == 0);
    std::string out = run_cli_stdout("collapse-check " + bundle.string());
    Json rep = Json::parse(out);
    CHECK(rep["collapses"] == true);
}

TEST_CASE("cli: pairing with non-complementary perversities fails validation") {
    fs::path space = write_temp("solid_torus_space.json", solid_torus_space_json());
    CHECK(run_cli("pairing " + space.string()) == 0);
    CHECK(run_cli("pairing --perversity lower-middle --perversity-q lower-middle " +
                  space.string()) == 2);
}

TEST_CASE("cli: --output writes the same report to a file") {
    fs::path cx = write_temp("circle.json", circle_complex_json());
    fs::path dst = fs::temp_directory_path() / "straticoh_tests" / "report.json";
    CHECK(run_cli("cohomology --output " + dst.string() + " " + cx.string()) == 0);
    std::ifstream in(dst);
    Json rep = Json::parse(in);
    CHECK(rep["betti"]["1"] == 1);
}

TEST_CASE("cli: parse errors give exit 2 and name the file") {
    fs::path bad = fs::temp_directory_path() / "straticoh_tests" / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run_cli("cohomology " + bad.string()) == 2);
    CHECK(run_cli("cohomology /nonexistent/file.json") == 2);
}

TEST_CASE("cli: byte-identical reports and table/json number agreement") {
    fs::path space = write_temp("solid_torus_space.json", solid_torus_space_json());
    std::string a = run_cli_stdout("hi " + space.string());
    std::string b = run_cli_stdout("hi " + space.string());
    CHECK(a == b);
    std::string table = run_cli_stdout("hi --format table " + space.string());
    Json rep = Json::parse(a);
    // every betti value printed in the table matches the JSON value
    for (auto it = rep["hi_betti"].begin(); it != rep["hi_betti"].end(); ++it) {
        std::string line = it.key() + ": " + it.value().dump();
        CHECK(table.find(line) != std::string::npos);
    }
}

TEST_CASE("cli: cup products on the suspension space") {
    IsolatedSingularitySpace sp = fx::suspension_of_torus_space();
    Json j;
    j["M"] = complex_to_json(*sp.exterior.complex);
    Json links = Json::array();
    for (const auto& l : sp.links) links.push_back(complex_to_json(*l));
    j["boundary_links"] = std::move(links);
    fs::path space = write_temp("suspension_space.json", j);
    std::string out = run_cli_stdout("cup --perversity lower-middle " + space.string());
    Json rep = Json::parse(out);
    CHECK(rep["cup_products"].size() > 0);  // HI^1 x HI^1 and HI^1 x HI^2 products
    for (const auto& prod : rep["cup_products"])
        CHECK(prod.contains("coordinates"));
}

TEST_CASE("cli: cohomology of a complex file") {
    fs::path cx = write_temp("circle.json", circle_complex_json());
    std::string out = run_cli_stdout("cohomology " + cx.string());
    Json rep = Json::parse(out);
    CHECK(rep["betti"]["0"] == 1);
    CHECK(rep["betti"]["1"] == 1);
}

TEST_CASE("cli: derham-check and duality-check succeed on fixtures") {
    fs::path space = write_temp("solid_torus_space.json", solid_torus_space_json());
    CHECK(run_cli("derham-check " + space.string()) == 0);
    Json trivial;
    trivial["base"] = circle_complex_json();
    trivial["fiber"] = circle_complex_json();
    fs::path bundle = write_temp("trivial_bundle.json", trivial);
    CHECK(run_cli("duality-check --cutoff 1 " + bundle.string()) == 0);
}

TEST_CASE("thread-count env var keeps reports identical") {
    // collapse-check drives the per-degree parallel path
    fs::path bundle = write_temp("klein_bundle.json", klein_bundle_json());
    std::string serial = run_cli_stdout("collapse-check " + bundle.string());
    fs::path out = fs::temp_directory_path() / "straticoh_tests" / "out.txt";
    std::string cmd = std::string("STRATICOH_THREADS=4 ") + STRATICOH_BIN + " collapse-check " +
                      bundle.string() + " > " + out.string() + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) != -1);
    std::ifstream in(out);
    std::string parallel(std::istreambuf_iterator<char>(in), {});
    CHECK(serial == parallel);
    std::string bad = std::string("STRATICOH_THREADS=0 ") + STRATICOH_BIN + " collapse-check " +
                      bundle.string() + " > /dev/null 2>/dev/null";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);
}

TEST_CASE("selftest report is stable across runs") {
    SelfTestReport a = run_selftest();
    SelfTestReport b = run_selftest();
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.failed() == 0);
}
