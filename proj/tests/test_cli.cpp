#include "bsat/cli/arrangement_io.hpp"
#include "bsat/cli/commands.hpp"
#include "bsat/cli/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace bsat;
using namespace bsat::cli;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
    json parsed() const { return json::parse(out); }
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "bsat-arr");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

bool has_float(const json& j)
{
    if (j.is_number_float())
        return true;
    if (j.is_structured())
        for (const auto& child : j)
            if (has_float(child))
                return true;
    return false;
}

std::string data(const std::string& name)
{
    return std::string(BSAT_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("grid and index parsing")
{
    using Grid = std::vector<std::pair<std::size_t, std::size_t>>;
    CHECK(parse_grid("n=2..3,k=n..4") == Grid{{2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}});
    CHECK(parse_grid("n=2,k=n+1..n+2") == Grid{{2, 3}, {2, 4}});
    CHECK(parse_grid("k=3..4, n=3") == Grid{{3, 3}, {3, 4}});
    CHECK_THROWS_AS(parse_grid("n=2..3"), InputError);
    CHECK_THROWS_AS(parse_grid("n=n..3,k=3"), InputError);
    CHECK_THROWS_AS(parse_grid("n=3,k=1..2"), InputError);
    CHECK_THROWS_AS(parse_grid("garbage"), InputError);
    CHECK(parse_index_list("1,2,2", 3) == std::vector<std::size_t>{0, 1, 1});
    CHECK_THROWS_AS(parse_index_list("0,1", 3), InputError);
    CHECK_THROWS_AS(parse_index_list("1,4", 3), InputError);
    CHECK_THROWS_AS(parse_index_list("1,,2", 3), InputError);
}

TEST_CASE("arrangement input")
{
    const auto a = arrangement_from_text(R"({"n": 2, "hyperplanes": [["2","0"], [0, "1/2"], ["1","1"]]})");
    CHECK(a.k() == 3);
    CHECK(arrangement_to_json(a).dump() == R"({"hyperplanes":[["1","0"],["0","1"],["1","1"]],"n":2})");
    CHECK_THROWS_AS(arrangement_from_text(R"({"n": 2, "hyperplanes": [[1.5, 0]]})"), InputError);
    CHECK_THROWS_AS(arrangement_from_text(R"({"n": 2, "hyperplanes": [["1"]]})"), InputError);
    CHECK_THROWS_AS(arrangement_from_text(R"({"n": 2})"), InputError);
    CHECK_THROWS_AS(arrangement_from_text("not json"), InputError);
    CHECK_THROWS_AS(arrangement_from_text(R"({"n": 2, "hyperplanes": [["0","0"]]})"), InputError);
    CHECK_THROWS_AS(read_arrangement_file(data("missing.json")), InputError);
}

TEST_CASE("bfunction subcommand")
{
    const auto g = invoke({"bfunction", "--generic", "--n", "2", "--k", "3"});
    REQUIRE(g.code == Ok);
    const auto gj = g.parsed();
    CHECK(gj["results"]["candidates"][0]["r"] == 1);
    CHECK(gj["results"]["candidates"][0]["roots"] == json{{"1", 2}, {"2/3", 1}, {"4/3", 1}});
    CHECK(gj["results"]["candidates"][1]["roots"] == json{{"1", 1}, {"2/3", 1}, {"4/3", 1}});
    CHECK(gj["results"]["u_q"] == 2);

    const auto iso = invoke({"bfunction", "--isolated", "--input", data("three_lines.json")});
    REQUIRE(iso.code == Ok);
    CHECK(iso.parsed()["results"]["roots"] == gj["results"]["candidates"][0]["roots"]);

    CHECK(invoke({"bfunction", "--generic", "--n", "1", "--k", "2"}).code == Precondition);
    CHECK(invoke({"bfunction", "--isolated", "--input", data("nongeneric_3_4.json")}).code == Precondition);
    CHECK(invoke({"bfunction", "--generic", "--n", "2"}).code == Usage);
    CHECK(invoke({"bfunction", "--generic", "--isolated", "--n", "2", "--k", "3"}).code == Usage);
}

TEST_CASE("milnor subcommand")
{
    const auto m = invoke({"milnor", "--input", data("generic_3_4.json")});
    REQUIRE(m.code == Ok);
    const auto j = m.parsed();
    CHECK(j["results"]["u"] == json{1, 3, 1, 1, 0, 0});
    CHECK(j["results"]["total"] == 6);
    for (const auto& row : j["results"]["comparison"])
        CHECK(row["status"] == "match");
    const auto m23 = invoke({"milnor", "--input", data("three_lines.json"), "--max-degree", "2"});
    CHECK(m23.parsed()["results"]["u"] == json{1, 2, 1});
    const auto bad = invoke({"milnor", "--input", data("nongeneric_3_4.json")});
    CHECK(bad.code == Precondition);
    CHECK(bad.err.find("{1,2,3}") != std::string::npos);
}

TEST_CASE("length subcommand")
{
    CHECK(invoke({"length", "--input", data("point.json")}).parsed()["results"]["length"] == 2);
    CHECK(invoke({"length", "--input", data("two_lines.json")}).parsed()["results"]["length"] == 4);
    const auto three = invoke({"length", "--input", data("three_lines.json")}).parsed();
    CHECK(three["results"]["length"] == 7);
    CHECK(three["results"]["table"].size() == 3);
}

TEST_CASE("rewrite subcommand")
{
    const auto r = invoke({"rewrite", "--input", data("generic_3_4.json"), "--product", "1,2", "--degree", "2"});
    REQUIRE(r.code == Ok);
    const auto j = r.parsed();
    for (const auto& c : j["checks"])
        CHECK(c["status"] == "pass");
    CHECK(j["results"]["product"] == "H1*H2");
    CHECK(invoke({"rewrite", "--input", data("generic_3_4.json"), "--product", "1,2", "--degree", "3"}).code == Usage);
    CHECK(invoke({"rewrite", "--input", data("generic_3_4.json"), "--product", "1,9"}).code == Usage);
}

TEST_CASE("verify subcommand")
{
    const auto v = invoke({"verify", "--grid", "n=2..3,k=n..4"});
    CHECK(v.code == Ok);
    const auto j = v.parsed();
    bool has_unverified = false, has_refuted = false;
    for (const auto& c : j["checks"]) {
        CHECK(c["status"] != "fail");
        has_unverified |= c["status"] == "unverified";
        has_refuted |= c["status"] == "refuted";
    }
    CHECK(has_unverified);
    CHECK(has_refuted);
    CHECK(j["results"]["failed"] == 0);
    CHECK(invoke({"verify", "--input", data("generic_3_4.json")}).code == Ok);
    CHECK(invoke({"verify", "--grid", "n=9"}).code == Usage);
}

TEST_CASE("usage errors")
{
    CHECK(invoke({}).code == Usage);
    CHECK(invoke({"frobnicate"}).code == Usage);
    CHECK(invoke({"--format", "xml", "length", "--input", data("point.json")}).code == Usage);
    CHECK(invoke({"length", "--input", data("missing.json")}).code == Usage);
    CHECK(invoke({"length", "--input", data("float_coefficients.json")}).code == Usage);
    CHECK(invoke({"--help"}).code == Ok);
}

TEST_CASE("reports round-trip byte for byte")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"bfunction", "--generic", "--n", "3", "--k", "5"},
             {"milnor", "--input", data("generic_3_4.json")},
             {"length", "--input", data("three_lines.json")},
             {"rewrite", "--input", data("generic_3_4.json"), "--product", "1,1,2"},
             {"verify", "--grid", "n=2,k=2..3"},
         }) {
        const auto o = invoke(args);
        REQUIRE(o.code == Ok);
        CHECK(serialize(report_from_json(json::parse(o.out))) == o.out);
        CHECK_FALSE(has_float(json::parse(o.out)));
    }
}

TEST_CASE("outputs are deterministic, including under parallel verification")
{
    const auto a = invoke({"verify", "--grid", "n=2..3,k=n..4"});
    setenv("BSAT_ARR_THREADS", "3", 1);
    const auto b = invoke({"verify", "--grid", "n=2..3,k=n..4"});
    setenv("BSAT_ARR_THREADS", "1", 1);
    const auto c = invoke({"verify", "--grid", "n=2..3,k=n..4"});
    unsetenv("BSAT_ARR_THREADS");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(invoke({"milnor", "--input", data("generic_3_4.json")}).out
          == invoke({"milnor", "--input", data("generic_3_4.json")}).out);
}

TEST_CASE("timing is opt-in and the digest ignores formatting")
{
    const auto plain = invoke({"length", "--input", data("three_lines.json")}).parsed();
    CHECK_FALSE(plain.contains("wall_time_ms"));
    const auto timed = invoke({"--timing", "length", "--input", data("three_lines.json")}).parsed();
    CHECK(timed.contains("wall_time_ms"));
    const auto spaced = invoke({"length", "--input", data("three_lines_spaced.json")}).parsed();
    CHECK(spaced["input_digest"] == plain["input_digest"]);
}

TEST_CASE("table output")
{
    const auto t = invoke({"--format", "table", "bfunction", "--generic", "--n", "2", "--k", "3"});
    CHECK(t.code == Ok);
    CHECK(t.out.find("pass") != std::string::npos);
    CHECK(t.out.find("input sha256:") != std::string::npos);
}

TEST_CASE("report statuses")
{
    for (auto s : {Status::Pass, Status::Fail, Status::Unverified, Status::Consistent, Status::Refuted})
        CHECK(status_from_string(to_string(s)) == s);
    CHECK_THROWS(status_from_string("maybe"));
    RunReport r;
    r.checks.push_back({"a", "b", Status::Refuted, ""});
    r.checks.push_back({"c", "d", Status::Unverified, ""});
    CHECK_FALSE(r.failed());
    r.checks.push_back({"e", "f", Status::Fail, ""});
    CHECK(r.failed());
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
