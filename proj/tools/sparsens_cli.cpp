// sparsens: build, verify, generate and evolve sparse steady fields.
#include "sparsens/errors.hpp"
#include "sparsens/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace sparsens;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : Error {
    using Error::Error;
};

const char* schedule_note =
    "note: the full series is only checked through partial sums and tail majorants; "
    "default-schedule frequencies (|k_1| ~ 1e10) are far beyond any Galerkin evolution.";

Rational rational_arg(const std::string& flag, const std::string& s)
{
    try {
        return parse_rational(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

Frequency frequency_arg(const std::string& flag, const std::string& s)
{
    try {
        return parse_frequency(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

class Run {
public:
    Run(std::string command, std::string out) : command_(std::move(command)), out_(std::move(out))
    {
        fs::create_directories(out_);
        start_ = std::chrono::steady_clock::now();
    }

    std::string path(const std::string& name)
    {
        outputs_.push_back(name);
        return (fs::path(out_) / name).string();
    }
    void input(const std::string& p) { inputs_.push_back(p); }

    void finish(const Json& config, bool passed, const Json& summary = nullptr)
    {
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::string mpath = path("manifest.json");
        Json m{{"schema", manifest_schema}, {"command", command_}, {"version", tool_version},
               {"config", config},          {"inputs", inputs_},   {"outputs", outputs_},
               {"passed", passed}};
        if (!summary.is_null())
            m["summary"] = summary;
        m["wall_time_s"] = wall;
        write_json_file(mpath, m);
    }

private:
    std::string command_;
    std::string out_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::chrono::steady_clock::time_point start_;
};

void print_checks(const VerificationReport& r)
{
    for (const auto& c : r.checks)
        std::cout << "  " << to_string(c.status) << "  " << c.name << ": " << c.detail << "\n";
    if (r.tail_ratio)
        std::cout << "  tail majorant ratio (last/first): " << r.tail_ratio->str(6) << "\n";
}

// construct

struct ConstructArgs {
    std::string rho0 = "1/2";
    std::string k0 = "1,1";
    std::string c0 = "4";
    int exponent = 12;
    int stages = 8;
    bool unsafe = false;
    std::vector<std::string> overrides;
    std::string out;
};

int cmd_construct(const ConstructArgs& a)
{
    ConstructionConfig c;
    c.rho0 = rational_arg("--rho0", a.rho0);
    c.k0 = frequency_arg("--k0", a.k0);
    c.C0 = rational_arg("--c0", a.c0);
    c.exponent = a.exponent;
    c.max_stage = a.stages;
    c.unsafe_schedule = a.unsafe;
    for (const auto& o : a.overrides) {
        auto parts = split(o, '=');
        if (parts.size() != 2)
            throw UsageError("--N expects stage=value, got '" + o + "'");
        try {
            c.N_overrides[std::stoi(parts[0])] = parse_bigint(parts[1]);
        } catch (const std::logic_error&) {
            throw UsageError("--N expects stage=value, got '" + o + "'");
        }
    }
    validate(c);

    ConstructionState s = build_construction(c);
    VerificationReport r = verify_construction(s);
    Json report = to_json(r);
    Json state = to_json(s);
    state["report"] = report;

    Run run("construct", a.out);
    write_json_file(run.path("state.json"), state);
    write_json_file(run.path("report.json"), report);
    run.finish(to_json(c), r.passed());

    std::cout << "construct: " << s.completed() << " stages, " << s.ledger.size() << " ledger entries\n";
    print_checks(r);
    std::cout << schedule_note << "\n";
    return r.passed() ? exit_pass : exit_fail;
}

// verify

int cmd_verify(const std::string& in, const std::string& out, double tol)
{
    if (!fs::exists(in))
        throw UsageError("no such file: " + in);
    Json j = read_json_file(in);
    ConstructionState s = state_from_json(j);
    VerificationReport r = verify_construction(s);
    Json report = to_json(r);

    bool ok = r.passed();
    std::cout << "verify: " << in << "\n";
    print_checks(r);
    if (j.contains("report")) {
        auto diff = compare_json(j["report"], report, tol);
        for (const auto& d : diff)
            std::cout << "  mismatch " << d.path << ": " << d.detail << "\n";
        if (!diff.empty()) {
            std::cout << "embedded report differs in " << diff.size() << " place(s)\n";
            ok = false;
        }
    }
    for (const auto& c : r.checks)
        if (c.status == CheckStatus::fail)
            std::cout << "FAILED check: " << c.name << "\n";

    if (!out.empty()) {
        Run run("verify", out);
        run.input(in);
        write_json_file(run.path("report.json"), report);
        run.finish(Json{{"in", in}, {"tolerance", tol}}, ok);
    }
    return ok ? exit_pass : exit_fail;
}

// generate

struct GenerateArgs {
    std::string base = "1,1";
    std::string ratio = "9";
    std::size_t count = 4;
    std::string rule = "scaled";
    std::string amp = "geometric:1/4";
    std::string phases;
    std::string omega_rule = "primitive";
    std::string omega_base = "1,0";
    int sobolev = 1;
    std::uint64_t seed = 1;
    int radius = 16;
    double decay = 1.0;
    std::string out;
};

LacunarySpec lacunary_spec(const GenerateArgs& a)
{
    LacunarySpec s;
    s.base = frequency_arg("--base", a.base);
    try {
        s.gap_ratio = parse_bigint(a.ratio);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--ratio: ") + e.what());
    }
    if (s.gap_ratio <= 8)
        throw SpecError("gap condition requires ratio > 8");
    s.count = a.count;
    if (a.rule == "scaled")
        s.frequency_rule = FrequencyRule::scaled;
    else if (a.rule == "rotated")
        s.frequency_rule = FrequencyRule::rotated;
    else
        throw UsageError("--rule must be scaled or rotated");

    auto parts = split(a.amp, ':');
    if (parts[0] == "geometric" && (parts.size() == 2 || parts.size() == 3)) {
        s.amplitude_rule = AmplitudeRule::geometric;
        s.rho_first = rational_arg("--amp", parts[1]);
        s.rho_ratio = parts.size() == 3 ? rational_arg("--amp", parts[2]) : s.rho_first;
    } else if (parts[0] == "list" && parts.size() == 2) {
        s.amplitude_rule = AmplitudeRule::explicit_list;
        for (const auto& v : split(parts[1], ','))
            s.amplitudes.push_back(rational_arg("--amp", v));
    } else {
        throw UsageError("--amp must be geometric:r, geometric:first:ratio or list:a,b,...");
    }
    if (!a.phases.empty())
        for (const auto& v : split(a.phases, ',')) {
            Rational q = rational_arg("--phases", v);
            s.phases.emplace_back(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
        }
    return s;
}

int write_family(const std::string& kind, const GenerateArgs& a, const SolenoidalField& f, const FamilyReport* rep,
                 Json config)
{
    Run run("generate " + kind, a.out);
    write_json_file(run.path("field.json"), to_json(f));
    bool ok = true;
    if (rep) {
        write_json_file(run.path("family_report.json"), to_json(*rep));
        ok = rep->all_pass();
        for (const auto& flag : rep->flags)
            std::cout << "  flag: " << flag << "\n";
    }
    run.finish(config, ok);
    std::cout << "generate " << kind << ": " << f.size() << " modes" << (ok ? "" : ", conditions fail") << "\n";
    return ok ? exit_pass : exit_fail;
}

Json generate_config(const GenerateArgs& a)
{
    return Json{{"base", a.base},   {"ratio", a.ratio},     {"count", a.count},
                {"rule", a.rule},   {"amp", a.amp},         {"phases", a.phases},
                {"sobolev", a.sobolev}};
}

int cmd_lacunary(const GenerateArgs& a)
{
    LacunarySpec s = lacunary_spec(a);
    SolenoidalField f = lacunary_field(s);
    FamilyReport rep = family_conditions_report(s, a.sobolev);
    return write_family("lacunary", a, f, &rep, generate_config(a));
}

int cmd_resonant(const GenerateArgs& a)
{
    ResonantSpec s;
    s.levels = lacunary_spec(a);
    if (a.omega_rule == "primitive")
        s.omega_rule = OmegaRule::primitive_perp;
    else if (a.omega_rule == "follow")
        s.omega_rule = OmegaRule::follow_levels;
    else
        throw UsageError("--omega-rule must be primitive or follow");
    s.omega_base = frequency_arg("--omega-base", a.omega_base);
    SolenoidalField f = resonant_field(s);
    FamilyReport rep = family_conditions_report(s, a.sobolev);
    Json config = generate_config(a);
    config["omega_rule"] = a.omega_rule;
    config["omega_base"] = a.omega_base;
    return write_family("resonant", a, f, &rep, config);
}

int cmd_random(const GenerateArgs& a)
{
    if (a.radius < 1)
        throw UsageError("--radius must be at least 1");
    SolenoidalField f = random_solenoidal({.seed = a.seed, .count = a.count, .radius = a.radius, .decay = a.decay});
    Json config{{"seed", a.seed}, {"count", a.count}, {"radius", a.radius}, {"decay", a.decay}};
    return write_family("random", a, f, nullptr, config);
}

// evolve

struct EvolveArgs {
    std::string in;
    int M = 64;
    double T = 1.0;
    double dt = 1e-3;
    int observe_every = 1;
    std::string kernel = "parallel";
    double prune = 0;
    std::string out;
};

int cmd_evolve(const EvolveArgs& a)
{
    if (!fs::exists(a.in))
        throw UsageError("no such file: " + a.in);
    if (a.M < 1 || a.M > 4096)
        throw UsageError("--M must lie in [1, 4096]");
    if (!(a.T > 0) || !(a.dt > 0))
        throw UsageError("--T and --dt must be positive");
    SolenoidalField f = field_from_json(read_json_file(a.in));
    SpectralState s = galerkin_truncate(f, a.M, a.dt);
    if (a.kernel == "serial")
        s.kernel = KernelKind::serial;
    else if (a.kernel != "parallel")
        throw UsageError("--kernel must be serial or parallel");
    s.prune = a.prune;

    Json config{{"in", a.in},
                {"M", a.M},
                {"T", a.T},
                {"dt", a.dt},
                {"observe_every", a.observe_every},
                {"kernel", a.kernel},
                {"prune", a.prune}};
    Run run("evolve", a.out);
    run.input(a.in);

    EvolveOptions opts;
    opts.observe_every = a.observe_every;
    Trajectory tr;
    try {
        tr = evolve(s, a.T, opts);
    } catch (const DivergenceError& e) {
        std::cerr << "evolve: " << e.what() << "\n";
        run.finish(config, false);
        return exit_fail;
    }

    Json header{{"schema", "sparsens.trajectory/1"}, {"config", config}, {"truncation", to_json(s.truncation)},
                {"steps", tr.steps},                 {"step_size", tr.step_size}};
    {
        std::ofstream csv(run.path("trajectory.csv"));
        write_trajectory_csv(csv, tr, header);
    }
    SteadyComparison cmp = compare_steady(f, tr);
    Json summary{{"truncation", to_json(s.truncation)}, {"comparison", to_json(cmp)}};
    if (a.observe_every == 1)
        summary["energy_audit"] = energy_audit(tr);
    run.finish(config, true, summary);

    std::cout << "evolve: " << tr.steps << " steps of " << tr.step_size << ", " << s.truncation.kept
              << " modes kept, " << s.truncation.dropped << " dropped (H^-1 mass "
              << s.truncation.dropped_hm1 << ")\n";
    std::cout << "  decay ratio " << cmp.decay_ratio << ", distance to initial data in [" << cmp.min_distance
              << ", " << cmp.max_distance << "]\n";
    if (s.truncation.dropped > 0)
        std::cout << schedule_note << "\n";
    return exit_pass;
}

}  // namespace

int main(int argc, char** argv)
{
    if (const char* t = std::getenv("SPARSENS_THREADS"))
        set_kernel_threads(std::atoi(t));

    CLI::App app{"Sparse spectral steady Navier-Stokes constructions"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build a staged construction and verify it");
    construct->add_option("--rho0", ca.rho0, "initial amplitude, rational in (0,1)");
    construct->add_option("--k0", ca.k0, "initial frequency k1,k2");
    construct->add_option("--c0", ca.c0, "schedule constant C0");
    construct->add_option("--exponent", ca.exponent, "exponent e of the (8n-1)^e floor");
    construct->add_option("--stages", ca.stages, "number of stages")->check(CLI::Range(0, 64));
    construct->add_flag("--unsafe-schedule", ca.unsafe, "drop the C0 and (8n-1)^e floors on N_n");
    construct->add_option("--N", ca.overrides, "override N for a stage, as stage=value");
    construct->add_option("--out", ca.out, "output directory")->required();

    std::string verify_in, verify_out;
    double verify_tol = 1e-12;
    auto* verify = app.add_subcommand("verify", "re-verify a saved construction state");
    verify->add_option("--in", verify_in, "state.json")->required();
    verify->add_option("--out", verify_out, "output directory for the fresh report");
    verify->add_option("--tolerance", verify_tol, "relative tolerance against the embedded report");

    GenerateArgs ga;
    auto* generate = app.add_subcommand("generate", "write a lacunary, resonant or random field");
    generate->require_subcommand(1);
    auto add_level_flags = [&](CLI::App* c) {
        c->add_option("--base", ga.base, "first frequency k1,k2");
        c->add_option("--ratio", ga.ratio, "integer gap ratio (> 8)");
        c->add_option("--count", ga.count, "number of levels");
        c->add_option("--rule", ga.rule, "scaled or rotated");
        c->add_option("--amp", ga.amp, "geometric:r, geometric:first:ratio or list:a,b,...");
        c->add_option("--phases", ga.phases, "phases as multiples of pi, comma separated");
        c->add_option("--sobolev", ga.sobolev, "index N of the decay sum");
        c->add_option("--out", ga.out, "output directory")->required();
    };
    auto* lac = generate->add_subcommand("lacunary", "sum of rho_j cos(k_j.x + theta_j) k_j^perp");
    add_level_flags(lac);
    auto* res = generate->add_subcommand("resonant", "lacunary levels each paired with k_j + omega_j");
    add_level_flags(res);
    res->add_option("--omega-rule", ga.omega_rule, "primitive or follow");
    res->add_option("--omega-base", ga.omega_base, "omega_0 for the follow rule");
    auto* rnd = generate->add_subcommand("random", "seeded random solenoidal field");
    rnd->add_option("--seed", ga.seed);
    rnd->add_option("--count", ga.count);
    rnd->add_option("--radius", ga.radius);
    rnd->add_option("--decay", ga.decay);
    rnd->add_option("--out", ga.out, "output directory")->required();

    EvolveArgs ea;
    auto* ev = app.add_subcommand("evolve", "Galerkin evolution of a field");
    ev->add_option("--in", ea.in, "field.json")->required();
    ev->add_option("--M", ea.M, "truncation radius");
    ev->add_option("--T", ea.T, "final time");
    ev->add_option("--dt", ea.dt, "time step");
    ev->add_option("--observe-every", ea.observe_every, "record every n-th step");
    ev->add_option("--kernel", ea.kernel, "serial or parallel");
    ev->add_option("--prune", ea.prune, "skip modes with |a|+|b| below this");
    ev->add_option("--out", ea.out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (*construct)
            return cmd_construct(ca);
        if (*verify)
            return cmd_verify(verify_in, verify_out, verify_tol);
        if (*lac)
            return cmd_lacunary(ga);
        if (*res)
            return cmd_resonant(ga);
        if (*rnd)
            return cmd_random(ga);
        if (*ev)
            return cmd_evolve(ea);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const ScheduleError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return exit_usage;
}
