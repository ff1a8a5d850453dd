// End-to-end checks of the perplex binary: exit codes, file formats,
// deterministic demo reports. Each case shells out to the real CLI.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "perplex/serialize.hpp"
#include "test_support.hpp"

using namespace perplex;
using namespace testsupport;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string tmp_path(const std::string& name) {
    return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/perplex_test_" +
           name;
}

RunResult run_cli(const std::string& args) {
    const std::string out_file = tmp_path("stdout.txt");
    const std::string cmd = std::string(PERPLEX_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, buf.str()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("gen fn produces the documented shape") {
    const std::string path = tmp_path("f3.json");
    const RunResult r = run_cli("gen fn --n 3 --ring q-local:2 --out " + path);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(path);
    const Json j = Json::parse(in);
    const ChainComplex c = complex_from_json(j);
    CHECK(c.min_deg() == -3);
    CHECK(c.max_deg() == 0);
    CHECK(c.rank_vector() == std::vector<int>{2, 2, 2, 1});
}

TEST_CASE("gen koszul defaults the ring from --n") {
    const RunResult r = run_cli("gen koszul --n 2");
    REQUIRE(r.exit_code == 0);
    const ChainComplex c = complex_from_json(Json::parse(r.out));
    CHECK(c.rank_vector() == std::vector<int>{1, 2, 1});
}

TEST_CASE("gen scrambled writes plan and complex") {
    const std::string path = tmp_path("scrambled.json");
    const RunResult r =
        run_cli("gen scrambled --ring int --plan \"(0,c2),(0,c3)\" --seed 7 --out " + path);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(path);
    const PlantedDecomposition p = planted_from_json(Json::parse(in));
    CHECK(p.seed == 7);
    REQUIRE(p.summands.size() == 2);
    CHECK(p.summands[0].d == RElem::from_int(zz(), 2));
    CHECK(p.summands[1].d == RElem::from_int(zz(), 3));
    CHECK(validate(p.complex).ok);

    // analyze accepts the planted file directly
    const RunResult d = run_cli("analyze decompose " + path);
    CHECK(d.exit_code == 0);
    CHECK(d.out.find("cyclic, 6") != std::string::npos);
    const RunResult refined = run_cli("analyze decompose " + path + " --refine primary");
    CHECK(refined.exit_code == 0);
    CHECK(refined.out.find("cyclic, 2") != std::string::npos);
    CHECK(refined.out.find("cyclic, 3") != std::string::npos);
}

TEST_CASE("analyze certify certifies the F-family") {
    const std::string path = tmp_path("f5.json");
    REQUIRE(run_cli("gen fn --n 5 --out " + path).exit_code == 0);
    const RunResult r = run_cli("analyze certify " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("certified") != std::string::npos);

    const RunResult j = run_cli("analyze certify " + path + " --json");
    CHECK(j.exit_code == 0);
    const Json cert = Json::parse(j.out);
    CHECK(cert["verdict"] == "certified");
}

TEST_CASE("analyze validate flags a sign-tampered complex with exit 1") {
    ChainComplex f3 = f_n(qloc(2), 3);
    Json j = complex_to_json(f3);
    // flip one interior sign: entry (0,0) of the differential at degree -2
    const RElem good = f3.diff_at(-2).at(0, 0);
    j["diffs"]["-2"][0][0] = print_element(-good);
    const std::string path = tmp_path("tampered.json");
    write_file(path, j.dump(2));
    const RunResult r = run_cli("analyze validate " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("violation") != std::string::npos);
    // --no-check parses it without complaint
    CHECK(run_cli("analyze validate " + path + " --no-check").exit_code == 0);
    // the strict parser inside other subcommands reports the violation too
    CHECK(run_cli("analyze minimize " + path).exit_code == 1);
}

TEST_CASE("analyze reports minimize, width, and cohomology") {
    const std::string path = tmp_path("k2.json");
    REQUIRE(run_cli("gen koszul --n 2 --out " + path).exit_code == 0);
    const RunResult w = run_cli("analyze width " + path);
    CHECK(w.exit_code == 0);
    CHECK(w.out == "width: 2\n");
    const RunResult m = run_cli("analyze minimize " + path);
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("split-off steps: 0") != std::string::npos);

    Matrix d23(zz(), 2, 2);
    d23.at(0, 0) = RElem::from_int(zz(), 2);
    d23.at(1, 1) = RElem::from_int(zz(), 3);
    const std::string zpath = tmp_path("d23.json");
    write_file(zpath, complex_to_json(ChainComplex::build(zz(), -1, {2, 2}, {d23})).dump());
    const RunResult h = run_cli("analyze cohomology " + zpath);
    CHECK(h.exit_code == 0);
    CHECK(h.out.find("H^0") != std::string::npos);
    CHECK(h.out.find("[6]") != std::string::npos);
}

TEST_CASE("capability and usage errors exit 2") {
    CHECK(run_cli("analyze cohomology /nonexistent.json").exit_code == 2);
    CHECK(run_cli("gen koszul --ring nonsense").exit_code == 2);
    CHECK(run_cli("gen fn").exit_code == 2);         // missing --n
    CHECK(run_cli("analyze decompose").exit_code == 2); // missing input
    CHECK(run_cli("bogus").exit_code == 2);

    // cohomology over a 2-variable localized ring is a capability refusal
    const std::string path = tmp_path("f2.json");
    REQUIRE(run_cli("gen fn --n 2 --out " + path).exit_code == 0);
    const RunResult r = run_cli("analyze cohomology " + path);
    CHECK(r.exit_code == 2);

    // refused certificate is a mathematical outcome: exit 1
    const ChainComplex sum = direct_sum(f_n(qloc(2), 2), f_n(qloc(2), 2));
    const std::string spath = tmp_path("sum.json");
    write_file(spath, complex_to_json(sum).dump());
    CHECK(run_cli("analyze certify " + spath).exit_code == 1);
}

TEST_CASE("demo reports are reproducible byte for byte") {
    const RunResult a = run_cli("demo dedekind --trials 20 --seed 5");
    const RunResult b = run_cli("demo dedekind --trials 20 --seed 5");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const RunResult c = run_cli("demo dedekind --trials 20 --seed 6");
    CHECK(c.exit_code == 0);
    CHECK(a.out != c.out);

    const RunResult l1 = run_cli("demo local --max-n 4 --seed 1");
    const RunResult l2 = run_cli("demo local --max-n 4 --seed 1");
    CHECK(l1.exit_code == 0);
    CHECK(l1.out == l2.out);
    CHECK(l1.out.find("certified lengths: 1 2 3 4") != std::string::npos);

    const RunResult j1 = run_cli("demo dedekind --trials 5 --seed 2 --json");
    const RunResult j2 = run_cli("demo dedekind --trials 5 --seed 2 --json");
    CHECK(j1.out == j2.out);
    CHECK(Json::parse(j1.out)["failures"].empty());
}

TEST_CASE("demo with zero trials is a vacuous pass") {
    const RunResult r = run_cli("demo dedekind --trials 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("failures: 0") != std::string::npos);
}
