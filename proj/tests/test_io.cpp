#include "sparsens/errors.hpp"
#include "sparsens/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace sparsens;

namespace {

const ConstructionState& default_state()
{
    static const ConstructionState s = build_construction(ConstructionConfig{});
    return s;
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "sparsens_test_io";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("wide reals round-trip exactly", "[wide]")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> ex(-4000, 4000);
    for (int i = 0; i < 200; ++i) {
        WideReal x = ldexp(WideReal(u(rng)), ex(rng));
        if (i % 2)
            x = x / WideReal(3);  // mantissa no longer fits a double
        WideReal y = wide_from_json(to_json(x));
        CHECK(y.raw() == x.raw());
        CHECK(to_json(x).contains("mx") == !x.mantissa_fits_double());
    }
    CHECK(wide_from_json(to_json(WideReal())).is_zero());
    CHECK(to_json(WideReal(0.75)).dump() == R"({"sign":1,"m":1.5,"e":-1})");
    CHECK_THROWS_AS(wide_from_json(Json::parse(R"({"sign":2,"m":1.5,"e":0})")), FormatError);
    CHECK_THROWS_AS(wide_from_json(Json::parse(R"({"sign":1,"m":2.5,"e":0})")), FormatError);
    CHECK_THROWS_AS(wide_from_json(Json::parse(R"({"sign":1,"e":0})")), FormatError);
}

TEST_CASE("scalars", "[scalars]")
{
    Frequency k(parse_bigint("123456789012345678901234567890"), -7);
    CHECK(frequency_from_json(to_json(k)) == k);
    CHECK(to_json(k).dump() == R"(["123456789012345678901234567890","-7"])");
    CHECK_THROWS_AS(frequency_from_json(Json::parse("[1,2]")), FormatError);
    Phase p(3, 4);
    CHECK(phase_from_json(to_json(p)) == p);
    CHECK(to_json(p).dump() == R"({"num":"3","den":"4"})");
    CHECK_THROWS_AS(phase_from_json(Json::parse(R"({"num":"1","den":"0"})")), FormatError);
    CHECK(rational_from_json(to_json(Rational(1, 2))) == Rational(1, 2));
}

TEST_CASE("fields round-trip", "[field]")
{
    SolenoidalField f;
    f.add(Frequency(1, 1), Phasor{WideReal(0.5), WideReal(-0.25)});
    f.add(Frequency(-3, 2), Phasor{ldexp(WideReal(1), -900) / WideReal(7), WideReal(0)});
    Json j = to_json(f);
    CHECK(j["schema"] == field_schema);
    SolenoidalField g = field_from_json(j);
    CHECK(to_json(g).dump() == j.dump());

    Json bad = j;
    bad["modes"][0]["k"] = Json::array({"-1", "0"});
    CHECK_THROWS_AS(field_from_json(bad), FormatError);
    bad = j;
    bad["modes"][1]["k"] = bad["modes"][0]["k"];
    CHECK_THROWS_AS(field_from_json(bad), FormatError);
    bad = j;
    bad["schema"] = "other";
    CHECK_THROWS_AS(field_from_json(bad), FormatError);
    bad = j;
    bad["modes"][0]["k"] = Json::array({"0", "0"});
    CHECK_THROWS_AS(field_from_json(bad), FormatError);
}

TEST_CASE("construction state round-trips", "[state]")
{
    const auto& s = default_state();
    Json j = to_json(s);
    ConstructionState t = state_from_json(j);
    CHECK(to_json(t).dump() == j.dump());
    CHECK(t.ledger.size() == s.ledger.size());
    CHECK(t.stages.back().N == s.stages.back().N);

    // a second build serializes to the same bytes
    CHECK(to_json(build_construction(ConstructionConfig{})).dump() == j.dump());

    // and re-verifying the loaded state reproduces the report
    Json r1 = to_json(verify_construction(s));
    Json r2 = to_json(verify_construction(t));
    CHECK(compare_json(r1, r2, 1e-12).empty());
    CHECK(r1.dump() == r2.dump());
}

TEST_CASE("state validation", "[state]")
{
    Json j = to_json(build_construction(toy_config(2)));
    auto rejects = [&](auto mutate) {
        Json bad = j;
        mutate(bad);
        CHECK_THROWS_AS(state_from_json(bad), FormatError);
    };
    rejects([](Json& b) { b["ledger"].erase(b["ledger"].size() - 1); });
    rejects([](Json& b) { b["stages"][1]["first"] = 3; });
    rejects([](Json& b) { b["ledger"][0]["rule"] = "nonsense"; });
    rejects([](Json& b) { b["ledger"][4]["gamma"] = Json::array({"-5", "1"}); });
    rejects([](Json& b) { b["config"]["rho0"] = "3/2"; });
    rejects([](Json& b) { b["stages"][2]["omega"] = nullptr; });
    rejects([](Json& b) { b["stages"][1]["N"] = 9; });
    rejects([](Json& b) { b.erase("schema"); });
    rejects([](Json& b) { b["ledger"][2]["lambda"]["sign"] = -1; });
}

TEST_CASE("perturbed ledger fails verification", "[state]")
{
    ConstructionState s = build_construction(toy_config(3));
    Json j = to_json(s);
    auto& lam = j["ledger"][5]["lambda"];
    WideReal v = wide_from_json(lam) * WideReal(1 + 1e-3);
    lam = to_json(v);
    VerificationReport r = verify_construction(state_from_json(j));
    CHECK_FALSE(r.passed());
    REQUIRE(r.find("telescoping"));
    CHECK(r.find("telescoping")->status == CheckStatus::fail);

    auto diff = compare_json(to_json(verify_construction(s)), to_json(r), 1e-12);
    CHECK_FALSE(diff.empty());
}

TEST_CASE("json comparison", "[compare]")
{
    Json a{{"x", 1.0}, {"w", to_json(WideReal(2.0))}, {"s", "abc"}, {"v", Json::array({1, 2})}};
    CHECK(compare_json(a, a, 0).empty());
    Json b = a;
    b["x"] = 1.0 + 1e-14;
    CHECK(compare_json(a, b, 1e-12).empty());
    CHECK(compare_json(a, b, 1e-16).size() == 1);
    b = a;
    b["w"] = to_json(WideReal(2.0) * WideReal(1 + 1e-9));
    auto d = compare_json(a, b, 1e-12);
    REQUIRE(d.size() == 1);
    CHECK(d[0].path == "/w");
    b = a;
    b["s"] = "abd";
    b["v"].push_back(3);
    b["extra"] = 1;
    CHECK(compare_json(a, b, 1e-12).size() == 3);
}

TEST_CASE("family reports serialize", "[family]")
{
    LacunarySpec spec;
    spec.count = 3;
    Json j = to_json(family_conditions_report(spec));
    CHECK(j["schema"] == family_schema);
    CHECK(j["all_pass"] == true);
    CHECK(j["levels"].size() == 3);
    CHECK(j["levels"][2]["gap_ratio"].is_null());
}

TEST_CASE("trajectory csv", "[csv]")
{
    SolenoidalField f;
    f.add(Frequency(1, 1), Phasor{WideReal(1), WideReal(0)});
    auto tr = evolve(galerkin_truncate(f, 4, 0.25), 1.0);
    std::ostringstream os;
    write_trajectory_csv(os, tr, Json{{"M", 4}, {"dt", 0.25}});
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == R"(# {"M":4,"dt":0.25})");
    std::getline(in, line);
    CHECK(line == "t,energy,enstrophy,hm1,distance,sup_bound");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 5);
}

TEST_CASE("files", "[files]")
{
    auto p = scratch("field.json");
    SolenoidalField f;
    f.add(Frequency(2, 1), Phasor{WideReal(0.1), WideReal(0.2)});
    write_json_file(p.string(), to_json(f));
    CHECK(to_json(field_from_json(read_json_file(p.string()))).dump() == to_json(f).dump());
    CHECK_THROWS_AS(read_json_file((p.parent_path() / "missing.json").string()), FormatError);
    auto q = scratch("broken.json");
    std::ofstream(q) << "{\"schema\": ";
    CHECK_THROWS_AS(read_json_file(q.string()), FormatError);
}
