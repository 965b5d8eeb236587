#include "sparsens/io.hpp"

#include "sparsens/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sparsens {

namespace {

const Json& need(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing key '") + key + "'");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key)
{
    try {
        return need(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad value for '") + key + "': " + e.what());
    }
}

BigInt bigint_from_json(const Json& j)
{
    if (!j.is_string())
        throw FormatError("big integers are stored as decimal strings");
    try {
        return parse_bigint(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

void check_schema(const Json& j, const char* schema)
{
    if (get<std::string>(j, "schema") != schema)
        throw FormatError(std::string("expected schema ") + schema);
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Json to_json(const WideReal& x)
{
    Json j;
    j["sign"] = x.sign();
    j["m"] = x.mantissa();
    j["e"] = x.is_zero() ? 0 : x.exponent();
    if (!x.is_zero() && !x.mantissa_fits_double())
        j["mx"] = x.mantissa_digits();
    return j;
}

WideReal wide_from_json(const Json& j)
{
    const int sign = get<int>(j, "sign");
    if (sign < -1 || sign > 1)
        throw FormatError("sign must be -1, 0 or 1");
    if (sign == 0)
        return WideReal();
    const auto e = get<std::int64_t>(j, "e");
    if (j.contains("mx"))
        return WideReal::from_parts(sign, get<std::string>(j, "mx"), e);
    const double m = get<double>(j, "m");
    if (!(m >= 1 && m < 2))
        throw FormatError("mantissa must lie in [1,2)");
    return WideReal::from_parts(sign, m, e);
}

Json to_json(const Frequency& k) { return Json::array({k.k1.str(), k.k2.str()}); }

Frequency frequency_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw FormatError("frequency must be a pair of decimal strings");
    return {bigint_from_json(j[0]), bigint_from_json(j[1])};
}

Json to_json(const Phase& p) { return Json{{"num", p.num().str()}, {"den", p.den().str()}}; }

Phase phase_from_json(const Json& j)
{
    BigInt den = bigint_from_json(need(j, "den"));
    if (den <= 0)
        throw FormatError("phase denominator must be positive");
    return Phase(bigint_from_json(need(j, "num")), den);
}

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j)
{
    if (!j.is_string())
        throw FormatError("rationals are stored as strings");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

Json to_json(const SolenoidalField& f)
{
    Json modes = Json::array();
    for (const auto& [k, p] : f.map())
        modes.push_back(Json{{"k", to_json(k)}, {"a", to_json(p.a)}, {"b", to_json(p.b)}});
    return Json{{"schema", field_schema}, {"modes", modes}};
}

SolenoidalField field_from_json(const Json& j)
{
    check_schema(j, field_schema);
    SolenoidalField f;
    for (const auto& m : need(j, "modes")) {
        Frequency k = frequency_from_json(need(m, "k"));
        if (k.is_zero())
            throw FormatError("zero frequency in field");
        if (!k.is_canonical())
            throw FormatError("field frequencies must be canonical: " + k.str());
        if (f.find(k))
            throw FormatError("duplicate frequency " + k.str());
        f.add(k, Phasor{wide_from_json(need(m, "a")), wide_from_json(need(m, "b"))});
    }
    return f;
}

Json to_json(const ConstructionConfig& c)
{
    Json overrides = Json::object();
    for (const auto& [n, N] : c.N_overrides)
        overrides[std::to_string(n)] = N.str();
    return Json{{"rho0", to_json(c.rho0)},          {"k0", to_json(c.k0)},
                {"C0", to_json(c.C0)},              {"exponent", c.exponent},
                {"unsafe_schedule", c.unsafe_schedule}, {"N_overrides", overrides},
                {"max_stage", c.max_stage}};
}

ConstructionConfig config_from_json(const Json& j)
{
    ConstructionConfig c;
    c.rho0 = rational_from_json(need(j, "rho0"));
    c.k0 = frequency_from_json(need(j, "k0"));
    c.C0 = rational_from_json(need(j, "C0"));
    c.exponent = get<int>(j, "exponent");
    c.unsafe_schedule = get<bool>(j, "unsafe_schedule");
    c.max_stage = get<int>(j, "max_stage");
    for (const auto& [key, value] : need(j, "N_overrides").items()) {
        try {
            c.N_overrides[std::stoi(key)] = bigint_from_json(value);
        } catch (const std::logic_error&) {
            throw FormatError("bad stage index '" + key + "' in N_overrides");
        }
    }
    try {
        validate(c);
    } catch (const ConfigError& e) {
        throw FormatError(e.what());
    }
    return c;
}

Json to_json(const ConstructionState& s)
{
    Json stages = Json::array();
    for (const auto& r : s.stages) {
        Json js{{"n", r.n}};
        js["omega"] = r.omega ? to_json(*r.omega) : Json(nullptr);
        js["N"] = r.N.str();
        js["k"] = to_json(r.k);
        js["rho"] = to_json(r.rho);
        js["eta"] = to_json(r.eta);
        js["first"] = r.first;
        js["last"] = r.last;
        js["null_stage"] = r.null_stage;
        stages.push_back(js);
    }
    Json ledger = Json::array();
    for (const auto& e : s.ledger)
        ledger.push_back(Json{{"p", e.p},
                              {"gamma", to_json(e.gamma)},
                              {"lambda", to_json(e.lambda_abs)},
                              {"beta", to_json(e.beta)},
                              {"stage", e.stage},
                              {"rule", to_string(e.rule)},
                              {"partner", e.partner}});
    return Json{{"schema", state_schema}, {"config", to_json(s.config)}, {"stages", stages}, {"ledger", ledger}};
}

ConstructionState state_from_json(const Json& j)
{
    check_schema(j, state_schema);
    ConstructionState s;
    s.config = config_from_json(need(j, "config"));
    for (const auto& js : need(j, "stages")) {
        StageRecord r;
        r.n = get<int>(js, "n");
        if (r.n != static_cast<int>(s.stages.size()))
            throw FormatError("stages out of order");
        if (!need(js, "omega").is_null())
            r.omega = frequency_from_json(js["omega"]);
        else if (r.n > 0)
            throw FormatError("stage " + std::to_string(r.n) + " lacks omega");
        r.N = bigint_from_json(need(js, "N"));
        r.k = frequency_from_json(need(js, "k"));
        r.rho = wide_from_json(need(js, "rho"));
        r.eta = phase_from_json(need(js, "eta"));
        r.first = get<std::size_t>(js, "first");
        r.last = get<std::size_t>(js, "last");
        r.null_stage = get<bool>(js, "null_stage");
        if (std::pair(r.first, r.last) != ledger_layout(r.n))
            throw FormatError("stage " + std::to_string(r.n) + " has an inconsistent ledger range");
        s.stages.push_back(std::move(r));
    }
    if (s.stages.empty())
        throw FormatError("state has no stages");
    for (const auto& je : need(j, "ledger")) {
        LedgerEntry e;
        e.p = get<std::size_t>(je, "p");
        if (e.p != s.ledger.size() + 1)
            throw FormatError("ledger entries out of order");
        e.gamma = frequency_from_json(need(je, "gamma"));
        if (!e.gamma.is_canonical())
            throw FormatError("ledger frequency " + e.gamma.str() + " is not canonical");
        e.lambda_abs = wide_from_json(need(je, "lambda"));
        if (e.lambda_abs.sign() < 0)
            throw FormatError("ledger amplitude must be non-negative");
        e.beta = phase_from_json(need(je, "beta"));
        e.stage = get<int>(je, "stage");
        try {
            e.rule = parse_entry_rule(get<std::string>(je, "rule"));
        } catch (const std::invalid_argument& ex) {
            throw FormatError(ex.what());
        }
        e.partner = get<int>(je, "partner");
        s.ledger.push_back(std::move(e));
    }
    if (s.ledger.size() != s.stages.back().last)
        throw FormatError("ledger length does not match the last stage");
    return s;
}

Json to_json(const VerificationReport& r)
{
    auto opt = [](const auto& o) { return o ? to_json(*o) : Json(nullptr); };
    Json stages = Json::array();
    for (const auto& s : r.stages) {
        Json js{{"n", s.n}, {"entries", s.entries}, {"telescoping_error", s.telescoping_error}};
        js["residual_hm3"] = to_json(s.residual_hm3);
        js["tail_majorant"] = to_json(s.tail_majorant);
        js["a_min_norm2"] = s.a_min_norm2.str();
        js["a_max_norm2"] = s.a_max_norm2.str();
        js["window_min"] = s.window_min;
        js["window_max"] = s.window_max;
        js["separated_from_next"] = s.separated_from_next ? Json(*s.separated_from_next) : Json(nullptr);
        js["geometry_ok"] = s.geometry_ok;
        js["rho"] = to_json(s.rho);
        js["rho_bound"] = to_json(s.rho_bound);
        js["c0_omega_witness"] = to_json(s.c0_omega_witness);
        js["c0_lambda_witness"] = to_json(s.c0_lambda_witness);
        js["summability"] = to_json(s.summability);
        js["summability_majorant"] = to_json(s.summability_majorant);
        js["hm1"] = to_json(s.hm1);
        js["hm1_closed"] = opt(s.hm1_closed);
        js["besov"] = to_json(s.besov);
        js["bmo"] = to_json(s.bmo);
        js["admissibility"] = Json{{"pairs", s.admissibility.pairs},
                                   {"total", to_json(s.admissibility.total)},
                                   {"leading", to_json(s.admissibility.leading)},
                                   {"final_quarter_tail", to_json(s.admissibility.final_quarter_tail)},
                                   {"monotone", s.admissibility.monotone}};
        stages.push_back(js);
    }
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    return Json{{"schema", report_schema},
                {"passed", r.passed()},
                {"unsafe_schedule", r.unsafe_schedule},
                {"c0_witness", to_json(r.c0_witness)},
                {"tail_ratio", opt(r.tail_ratio)},
                {"checks", checks},
                {"stages", stages}};
}

Json to_json(const FamilyReport& r)
{
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json jl{{"j", l.j}, {"k", to_json(l.k)}};
        jl["omega"] = l.omega ? to_json(*l.omega) : Json(nullptr);
        jl["gap_ratio"] = l.gap_ratio ? Json(*l.gap_ratio) : Json(nullptr);
        jl["gap_ok"] = l.gap_ok;
        jl["orthogonal"] = l.orthogonal;
        jl["separated"] = l.separated;
        levels.push_back(jl);
    }
    auto opt = [](const auto& o) { return o ? to_json(*o) : Json(nullptr); };
    return Json{{"schema", family_schema},
                {"all_pass", r.all_pass()},
                {"sobolev_index", r.sobolev_index},
                {"decay_sum", to_json(r.decay_sum)},
                {"decay_tail", to_json(r.decay_tail)},
                {"summability_sum", opt(r.summability_sum)},
                {"summability_tail", opt(r.summability_tail)},
                {"flags", r.flags},
                {"levels", levels}};
}

Json to_json(const SteadyComparison& c)
{
    return Json{{"max_distance", c.max_distance}, {"min_distance", c.min_distance}, {"decay_ratio", c.decay_ratio}};
}

Json to_json(const TruncationInfo& t)
{
    return Json{{"kept", t.kept}, {"dropped", t.dropped}, {"dropped_hm1", t.dropped_hm1}};
}

namespace {

bool is_wide(const Json& j) { return j.is_object() && j.contains("sign") && j.contains("m") && j.contains("e"); }

double rel(double a, double b)
{
    if (a == b)
        return 0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

void walk(const Json& x, const Json& y, const std::string& path, double tol, std::vector<JsonMismatch>& out)
{
    if (is_wide(x) && is_wide(y)) {
        double d = relative_difference(wide_from_json(x), wide_from_json(y));
        if (!(d <= tol))
            out.push_back({path, "relative difference " + fmt(d)});
        return;
    }
    if (x.is_number() && y.is_number()) {
        double d = rel(x.get<double>(), y.get<double>());
        if (!(d <= tol))
            out.push_back({path, fmt(x.get<double>()) + " vs " + fmt(y.get<double>())});
        return;
    }
    if (x.type() != y.type()) {
        out.push_back({path, "type differs"});
        return;
    }
    if (x.is_object()) {
        for (const auto& [key, value] : x.items()) {
            if (!y.contains(key))
                out.push_back({path + "/" + key, "missing"});
            else
                walk(value, y.at(key), path + "/" + key, tol, out);
        }
        for (const auto& [key, value] : y.items())
            if (!x.contains(key))
                out.push_back({path + "/" + key, "unexpected"});
        return;
    }
    if (x.is_array()) {
        if (x.size() != y.size()) {
            out.push_back({path, "length " + std::to_string(x.size()) + " vs " + std::to_string(y.size())});
            return;
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            walk(x[i], y[i], path + "/" + std::to_string(i), tol, out);
        return;
    }
    if (x != y)
        out.push_back({path, x.dump() + " vs " + y.dump()});
}

}  // namespace

std::vector<JsonMismatch> compare_json(const Json& expected, const Json& actual, double rel_tol)
{
    std::vector<JsonMismatch> out;
    walk(expected, actual, "", rel_tol, out);
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr, const Json& header)
{
    os << "# " << header.dump() << "\n";
    os << "t,energy,enstrophy,hm1,distance,sup_bound\n";
    for (const auto& s : tr.samples)
        os << fmt(s.t) << ',' << fmt(s.energy) << ',' << fmt(s.enstrophy) << ',' << fmt(s.hm1) << ','
           << fmt(s.distance) << ',' << fmt(s.sup_bound) << '\n';
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace sparsens
