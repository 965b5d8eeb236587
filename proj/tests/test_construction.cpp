#include "sparsens/construction.hpp"
#include "sparsens/errors.hpp"
#include "sparsens/norms.hpp"
#include "sparsens/verification.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace sparsens;
using Catch::Approx;

namespace {

ConstructionConfig default_config()
{
    ConstructionConfig c;
    c.max_stage = 8;
    return c;
}

WideReal decimal(const char* s) { return WideReal(WideReal::Float(s)); }

}  // namespace

TEST_CASE("ledger layout", "[layout]")
{
    CHECK(ledger_layout(0) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(ledger_layout(1) == std::pair<std::size_t, std::size_t>{2, 8});
    CHECK(ledger_layout(2) == std::pair<std::size_t, std::size_t>{9, 23});
    for (int n = 1; n < 50; ++n) {
        auto [f, l] = ledger_layout(n);
        CHECK(l - f + 1 == static_cast<std::size_t>(8 * n - 1));
        CHECK(f == ledger_layout(n - 1).second + 1);
        CHECK(static_cast<std::size_t>(n) < f);
    }
    CHECK(stage_of_index(1) == 0);
    CHECK(stage_of_index(8) == 1);
    CHECK(stage_of_index(9) == 2);
    CHECK_THROWS(ledger_layout(-1));
}

TEST_CASE("init_construction", "[init]")
{
    ConstructionState s = init_construction(default_config());
    REQUIRE(s.ledger.size() == 1);
    CHECK(s.entry(1).gamma == Frequency(1, 1));
    CHECK(s.entry(1).lambda_abs == WideReal(1));
    CHECK(s.entry(1).beta == Phase::pi());

    ConstructionConfig bad = default_config();
    bad.rho0 = 1;
    CHECK_THROWS_AS(init_construction(bad), ConfigError);
    CHECK_THROWS_WITH(init_construction(bad), "rho0 must lie in (0,1)");

    ConstructionConfig flipped = toy_config(1);
    flipped.k0 = Frequency(-1, 2);
    ConstructionState f = init_construction(flipped);
    CHECK(f.entry(1).gamma == Frequency(1, -2));
    CHECK(f.entry(1).beta == Phase());
    CHECK(f.entry(1).lambda_abs == WideReal(2.5));
}

TEST_CASE("choose_N", "[schedule]")
{
    SECTION("default configuration")
    {
        ConstructionState s = init_construction(default_config());
        CHECK(choose_N(s, 1) == BigInt("13841287201"));
    }
    SECTION("toy schedule")
    {
        ConstructionState s = init_construction(toy_config(3));
        CHECK(choose_N(s, 1) == 9);
        advance_stage(s);
        CHECK(choose_N(s, 2) == 9);
        advance_stage(s);
        CHECK(choose_N(s, 3) == 72);
    }
    SECTION("overrides")
    {
        ConstructionConfig c = default_config();
        c.N_overrides[1] = 10;
        ConstructionState s = init_construction(c);
        CHECK(choose_N(s, 1) == 10);
        c.N_overrides[1] = 8;
        CHECK_THROWS_AS(choose_N(init_construction(c), 1), ScheduleError);
    }
}

TEST_CASE("toy stage 1", "[stage]")
{
    ConstructionState s = init_construction(toy_config(1));
    advance_stage(s);
    const StageRecord& r = s.stages.at(1);
    CHECK(*r.omega == Frequency(1, 1));
    CHECK(r.k == Frequency(9, -9));
    CHECK(relative_difference(r.rho, WideReal(1) / WideReal(3)) < 1e-55);
    CHECK(r.eta == Phase::quarter(1));
    REQUIRE(s.ledger.size() == 8);
    CHECK(s.entry(2).gamma == Frequency(9, -9));
    CHECK(relative_difference(s.entry(2).lambda_abs, WideReal(54)) < 1e-55);
    CHECK(s.entry(2).beta == Phase::pi());
    CHECK(s.entry(4).gamma == Frequency(19, -17));
    CHECK(relative_difference(s.entry(4).lambda_abs, WideReal(2) / WideReal(650)) < 1e-55);
    CHECK(to_string(s.entry(4).rule) == "resonant_sum");

    SECTION("materialized fields")
    {
        SolenoidalField u0 = materialize_partial(s, 0);
        REQUIRE(u0.size() == 1);
        CHECK(u0.find(Frequency(1, 1))->a == WideReal(0.5));
        SolenoidalField U1 = materialize_partial(s, 1);
        CHECK(U1.size() == 3);
        CHECK(U1.find(Frequency(10, -8)) != nullptr);
    }
    SECTION("ledger residuals")
    {
        SolenoidalField r0 = residual_from_ledger(s, 0);
        SolenoidalField lap = laplacian(materialize_partial(s, 0));
        CHECK(telescoping_error(r0, lap) == 0.0);
        CHECK(telescoping_error(residual_brute(s, 0), lap) == 0.0);
        // (10,-8) and (9,-9) each collect two nominal entries
        CHECK(residual_from_ledger(s, 1).size() == 5);
    }
}

TEST_CASE("telescoping identity", "[telescoping]")
{
    SECTION("toy schedule")
    {
        ConstructionState s = build_construction(toy_config(3));
        for (int n = 0; n <= 3; ++n) {
            auto gross = gross_amplitudes(s, ledger_layout(n).second);
            CHECK(telescoping_error(residual_brute(s, n), residual_from_ledger(s, n), &gross) <= 1e-9);
        }
    }
    SECTION("default schedule")
    {
        ConstructionState s = build_construction(default_config());
        CHECK(s.ledger.size() == 281);
        for (int n = 0; n <= 8; ++n) {
            auto gross = gross_amplitudes(s, ledger_layout(n).second);
            CHECK(telescoping_error(residual_brute(s, n), residual_from_ledger(s, n), &gross) <= 1e-9);
        }
    }
}

TEST_CASE("null stages keep the layout", "[null]")
{
    ConstructionState s = init_construction(toy_config(2));
    advance_stage(s);
    s.ledger[1].lambda_abs = WideReal();
    SolenoidalField before = residual_from_ledger(s, 1);
    advance_stage(s);
    const StageRecord& r = s.stages.at(2);
    CHECK(r.null_stage);
    CHECK(r.rho.is_zero());
    CHECK(s.ledger.size() == 23);
    for (std::size_t p = 9; p <= 23; ++p)
        CHECK(s.entry(p).lambda_abs.is_zero());
    // stage 2 drops only the entry it consumes, which is already zero
    CHECK(telescoping_error(residual_from_ledger(s, 2), before) == 0.0);
}

TEST_CASE("schedule goldens from the independent oracle", "[golden]")
{
    // tests/oracles/construction_oracle.py, 70 significant digits
    ConstructionState s = build_construction(default_config());
    const char* N[] = {"1", "13841287201", "129746337890625", "21914624432020321", "787662783788549761",
                       "12602604540616796176", "116191483108948578241", "929531864871588625921",
                       "7436254918972709007446"};
    const char* rho[] = {"0.5",
                         "8.4998597523140868176e-6",
                         "3.6197062149067208614e-10",
                         "2.7851838079732048836e-11",
                         "1.4703369974209017355e-30",
                         "4.9359697299798962561e-18",
                         "1.6256067518666539789e-18",
                         "5.7473877889377417572e-19",
                         "2.0320084398333174736e-19"};
    for (int n = 0; n <= 8; ++n) {
        CHECK(s.stages[n].N == BigInt(N[n]));
        CHECK(relative_difference(s.stages[n].rho, decimal(rho[n])) < 1e-18);
    }
    CHECK(s.stages[2].k == Frequency(BigInt("-1795856326022129150390625"), BigInt("-1795856326022129150390625")));
    CHECK(relative_difference(tail_majorant(s, 1), decimal("0.000012021168232645650254")) < 1e-18);
    CHECK(relative_difference(tail_majorant(s, 8), decimal("5.5129221962174626771e-10")) < 1e-18);
    CHECK(relative_difference(tail_majorant(s, 8) / tail_majorant(s, 1), decimal("0.000045860120160752165863")) < 1e-18);

    ConstructionState toy = build_construction(toy_config(3));
    CHECK(relative_difference(toy.stages[2].rho, decimal("0.27216552697590867758")) < 1e-18);
    CHECK(relative_difference(toy.stages[3].rho, decimal("0.096225044864937627418")) < 1e-18);
    CHECK(toy.stages[3].k == Frequency(-576, -720));
    CHECK(relative_difference(tail_majorant(toy, 3) / tail_majorant(toy, 1), decimal("0.54974371133350292004")) < 1e-18);
}

TEST_CASE("verification report", "[verify]")
{
    SECTION("default configuration passes every check")
    {
        VerificationReport r = verify_construction(build_construction(default_config()));
        for (const auto& c : r.checks) {
            INFO(c.name << ": " << c.detail);
            CHECK(c.status == CheckStatus::pass);
        }
        REQUIRE(r.tail_ratio);
        CHECK(r.tail_ratio->to_double() < 1e-3);
        CHECK(r.c0_witness <= WideReal(4));
        CHECK(relative_difference(r.c0_witness, decimal("1.00000000000000000000521971799")) < 1e-25);
        for (int n = 1; n <= 8; ++n) {
            CHECK(r.stages[n].rho <= r.stages[n].rho_bound);
            CHECK(r.stages[n].summability <= r.stages[n].summability_majorant);
            CHECK(r.stages[n].entries == static_cast<std::size_t>(8 * n - 1));
        }
    }
    SECTION("toy schedule marks schedule checks not applicable")
    {
        VerificationReport r = verify_construction(build_construction(toy_config(3)));
        CHECK(r.passed());
        for (const char* name : {"rho_bound", "c0", "summability"})
            CHECK(r.find(name)->status == CheckStatus::not_applicable);
        for (const char* name : {"telescoping", "counts", "separation", "quarter_turn"})
            CHECK(r.find(name)->status == CheckStatus::pass);
        CHECK(relative_difference(r.c0_witness, WideReal(82) / WideReal(81)) < 1e-50);
    }
    SECTION("C0 = 1 raises the flag")
    {
        ConstructionConfig c = default_config();
        c.C0 = 1;
        VerificationReport r = verify_construction(build_construction(c));
        CHECK(r.find("c0")->status == CheckStatus::fail);
        CHECK(r.c0_witness > WideReal(1));
        CHECK_FALSE(r.passed());
    }
    SECTION("a perturbed ledger fails telescoping")
    {
        ConstructionState s = build_construction(toy_config(2));
        s.ledger[12].lambda_abs = s.ledger[12].lambda_abs * WideReal(1.001);
        VerificationReport r = verify_construction(s);
        CHECK(r.find("telescoping")->status == CheckStatus::fail);
    }
    SECTION("H^-1 closed form")
    {
        ConstructionState s = build_construction(toy_config(3));
        WideReal sum = WideReal(0.25);
        for (int j = 1; j <= 3; ++j)
            sum += WideReal(2) * s.stages[j].rho * s.stages[j].rho;
        WideReal closed = sqrt(sum / WideReal(2));
        CHECK(relative_difference(sobolev_norm(materialize_partial(s, 3), -1), closed) <= 1e-12);
    }
}
