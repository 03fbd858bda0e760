#include "regfm/driver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "regfm/errors.hpp"
#include "regfm/eventual.hpp"
#include "regfm/fmanifold.hpp"
#include "regfm/fn_calculus.hpp"
#include "regfm/gtsystem.hpp"
#include "regfm/hydrosim.hpp"
#include "regfm/pavlov.hpp"
#include "regfm/rng.hpp"

using nlohmann::json;

namespace regfm {

namespace {

JordanSpec spec_from(const json& cfg) {
    if (!cfg.contains("spec")) throw ConfigError("missing field 'spec'");
    return JordanSpec::parse(cfg.at("spec").get<std::string>());
}

std::uint64_t seed_from(const json& cfg) {
    if (!cfg.contains("seed")) throw ConfigError("missing field 'seed' (mandatory for randomized suites)");
    return cfg.at("seed").get<std::uint64_t>();
}

VField<Poly> field_from(const json& cfg, const std::string& key, const JordanSpec& spec) {
    if (!cfg.contains(key)) throw ConfigError("missing field '" + key + "'");
    const json& f = cfg.at(key);
    if (f.is_string()) {
        std::string s = f.get<std::string>();
        if (s == "E") return euler_field(spec);
        if (s == "e") return unit_field(spec);
        throw ConfigError("field '" + key + "': expected \"E\", \"e\" or an array of literals");
    }
    if (!f.is_array() || (int)f.size() != spec.n())
        throw ConfigError("field '" + key + "': need " + std::to_string(spec.n()) + " literals");
    std::vector<std::string> lines;
    for (const auto& s : f) lines.push_back(s.get<std::string>());
    return parse_vfield(lines, spec.n());
}

Poly scalar_from(const json& cfg, const std::string& key, const JordanSpec& spec) {
    if (!cfg.contains(key)) throw ConfigError("missing field '" + key + "'");
    return Poly::parse(cfg.at(key).get<std::string>(), spec.n());
}

std::vector<Rational> base_from(const json& cfg, const JordanSpec& spec,
                                bool default_zero = true) {
    if (!cfg.contains("base")) {
        if (default_zero) return std::vector<Rational>(spec.n(), Rational(0));
        throw ConfigError("missing field 'base'");
    }
    const json& b = cfg.at("base");
    if (!b.is_array() || (int)b.size() != spec.n())
        throw ConfigError("'base' must list " + std::to_string(spec.n()) + " rationals");
    std::vector<Rational> pt;
    for (const auto& s : b) pt.push_back(parse_rational(s.get<std::string>()));
    return pt;
}

CheckResult check(const std::string& name, bool pass, std::string detail = "",
                  std::optional<bool> exact = std::nullopt,
                  std::optional<double> norm = std::nullopt) {
    CheckResult c;
    c.name = name;
    c.pass = pass;
    c.detail = std::move(detail);
    c.exact_zero = exact;
    c.norm = norm;
    return c;
}

FunctionFamily family_from(const json& cfg, const JordanSpec& spec) {
    FunctionFamily fam;
    if (cfg.contains("family")) {
        const json& F = cfg.at("family");
        if (!F.is_array() || (int)F.size() != spec.blocks())
            throw ConfigError("'family' must list one array of univariate literals per block");
        for (int a = 0; a < spec.blocks(); ++a) {
            if ((int)F[a].size() != spec.sizes[a])
                throw ConfigError("'family' block " + std::to_string(a + 1) + " needs " +
                                  std::to_string(spec.sizes[a]) + " functions");
            std::vector<Poly> fs;
            for (const auto& s : F[a]) fs.push_back(Poly::parse(s.get<std::string>(), 1));
            fam.F.push_back(std::move(fs));
        }
        return fam;
    }
    int deg = cfg.value("degrees", 4);
    Rng rng(seed_from(cfg));
    for (int a = 0; a < spec.blocks(); ++a) {
        std::vector<Poly> fs;
        for (int i = 0; i < spec.sizes[a]; ++i) fs.push_back(random_univariate(rng, deg));
        fam.F.push_back(std::move(fs));
    }
    return fam;
}

json family_to_json(const FunctionFamily& fam) {
    json out = json::array();
    for (const auto& block : fam.F) {
        json b = json::array();
        for (const auto& f : block) b.push_back(f.to_string());
        out.push_back(b);
    }
    return out;
}

ChainFamily chain_from_config(const json& cfg) {
    if (!cfg.contains("chain")) throw ConfigError("missing field 'chain'");
    const json& c = cfg.at("chain");
    if (c.is_string()) {
        std::ifstream in(c.get<std::string>());
        if (!in) throw ConfigError("cannot open chain file: " + c.get<std::string>());
        json j;
        in >> j;
        return chain_from_json(j);
    }
    return chain_from_json(c);
}

// ---- task handlers ------------------------------------------------------

void task_check_nijenhuis(const json& cfg, json&, std::vector<CheckResult>& out) {
    JordanSpec spec = spec_from(cfg);
    VField<Poly> f = field_from(cfg, "field", spec);
    Torsion<Poly> N = nijenhuis(mult_operator(spec, f));
    int nonzero = 0;
    for (const auto& c : N.t)
        if (!c.is_zero()) ++nonzero;
    out.push_back(check("nijenhuis-zero", N.is_zero(),
                        nonzero ? std::to_string(nonzero) + " nonzero components" : "", N.is_zero()));
}

void task_check_eventual(const json& cfg, json&, std::vector<CheckResult>& out) {
    JordanSpec spec = spec_from(cfg);
    VField<Poly> f = field_from(cfg, "field", spec);
    std::vector<Rational> base = base_from(cfg, spec);
    EvIdReport rep = is_eventual_identity(spec, f, base);
    TorsionEquivalence eq = torsion_equivalence_check(spec, f);
    out.push_back(check("is-eventual-identity", rep.isEventual,
                        rep.assumptionChecklist.detail +
                            (rep.invertible_at_base ? "" : "not invertible at base; "),
                        rep.kTensor.is_zero()));
    out.push_back(check("bridge-identity", eq.bridge_zero, "", eq.bridge_zero));
    std::string eqd = std::string("kZero=") + (eq.kZero ? "1" : "0") + " nZero=" +
                      (eq.nZero ? "1" : "0") +
                      (eq.assumption_met ? "" : " (regularity unmet: one-way check)");
    out.push_back(check("torsion-equivalence", eq.equivalence_holds, eqd));
}

void task_gt_residual(const json& cfg, json&, std::vector<CheckResult>& out) {
    JordanSpec spec = spec_from(cfg);
    VField<Poly> mu = field_from(cfg, "mu", spec);
    Poly V = scalar_from(cfg, "v", spec);
    GTResiduals<Poly> res = generalized_gt_residual(spec, mu, V);
    int nz2 = 0;
    for (const auto& p : res.r2)
        if (!p.is_zero()) ++nz2;
    int nz1 = 0;
    for (const auto& p : res.r1.upper)
        if (!p.is_zero()) ++nz1;
    out.push_back(check("ggt-first-order", nz2 == 0,
                        nz2 ? std::to_string(nz2) + " nonzero components" : "", nz2 == 0));
    out.push_back(check("ggt-second-order", nz1 == 0,
                        nz1 ? std::to_string(nz1) + " nonzero components" : "", nz1 == 0));
    if (spec.semisimple()) {
        try {
            ClassicalResiduals cl = classical_gt_residual(mu.comps, V);
            out.push_back(check("classical-gt", cl.all_zero(), "", cl.all_zero()));
        } catch (const DegenerateVelocitiesError& e) {
            out.push_back(check("classical-gt", false, e.what()));
        }
    }
}

void task_nonexistence(const json& cfg, json&, std::vector<CheckResult>& out) {
    JordanSpec spec = spec_from(cfg);
    VField<Poly> mu = field_from(cfg, "mu", spec);
    Poly V = scalar_from(cfg, "v", spec);
    std::vector<std::vector<Rational>> samples;
    if (cfg.contains("samples"))
        for (const auto& pt : cfg.at("samples")) {
            std::vector<Rational> p;
            for (const auto& s : pt) p.push_back(parse_rational(s.get<std::string>()));
            samples.push_back(std::move(p));
        }
    try {
        NonexistenceReport rep = nonexistence_report(spec, mu, V, samples);
        std::string detail;
        for (const auto& d : rep.detail) detail += d + " | ";
        out.push_back(check("nonexistence-(i)-higher-V", rep.i_higher_v_zero, detail));
        out.push_back(check("nonexistence-(ii)-higher-mu", rep.ii_higher_mu_zero));
        out.push_back(check("nonexistence-(iii)-leading-classical", rep.iii_leading_classical));
        out.push_back(check("nonexistence-(iv)-leading-V", rep.iv_leading_v_zero));
    } catch (const PreconditionFailedError& e) {
        out.push_back(check("nonexistence-precondition", false, e.what()));
    }
}

void task_gen_v(const json& cfg, json& extra, std::vector<CheckResult>& out) {
    JordanSpec spec = spec_from(cfg);
    FunctionFamily fam = family_from(cfg, spec);
    Poly V = generate_V(spec, fam);
    OpMatrix<Poly> L = mult_operator(spec, euler_field(spec));
    bool flat = dd_L_function(L, V).is_zero();
    extra["family"] = family_to_json(fam);
    extra["v"] = V.to_string();
    out.push_back(check("dd_L-V-zero", flat, V.to_string(), flat));
}

void task_build_chain(const json& cfg, json& extra, std::vector<CheckResult>& out) {
    JordanSpec spec = spec_from(cfg);
    FunctionFamily fam = family_from(cfg, spec);
    VField<Poly> mu = cfg.contains("mu") ? field_from(cfg, "mu", spec) : euler_field(spec);
    std::vector<Rational> base = base_from(cfg, spec);
    int lo = cfg.value("range_lo", 0), hi = cfg.value("range_hi", 2);
    int order = cfg.value("order", 10);
    try {
        ChainFamily chain = build_chain(spec, fam, mu, base, lo, hi, order);
        json cj = chain_to_json(chain);
        extra["chain"] = cj;
        extra["family"] = family_to_json(fam);
        if (cfg.contains("out")) {
            std::ofstream f(cfg.at("out").get<std::string>());
            f << cj.dump(1) << "\n";
        }
        out.push_back(check("chain-built", true,
                            "range " + std::to_string(lo) + ".." + std::to_string(hi)));
        out.push_back(check("chain-verified", true, "", true));
    } catch (const MathError& e) {
        out.push_back(check("chain-built", false, e.what()));
    }
}

void task_verify_chain(const json& cfg, json&, std::vector<CheckResult>& out) {
    try {
        ChainFamily chain = chain_from_config(cfg);
        verify_chain(chain);
        out.push_back(check("chain-verified", true, "", true));
    } catch (const MathError& e) {
        out.push_back(check("chain-verified", false, e.what()));
    }
}

std::vector<double> initial_data(const JordanSpec& spec, const json& cfg, Grid1D grid) {
    int n = spec.n();
    std::vector<double> bs(n, 1.0);
    if (cfg.contains("base_state")) {
        const json& b = cfg.at("base_state");
        if ((int)b.size() != n) throw ConfigError("'base_state' must list n values");
        for (int i = 0; i < n; ++i)
            bs[i] = b[i].is_string() ? parse_rational(b[i].get<std::string>()).get_d()
                                     : b[i].get<double>();
    }
    double amp = cfg.value("amplitude", 0.05);
    std::vector<double> r0(n * grid.M);
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < grid.M; ++i) r0[c * grid.M + i] = bs[c] + amp * std::sin(grid.x(i) + c);
    return r0;
}

void task_simulate(const json& cfg, json& extra, std::vector<CheckResult>& out) {
    ChainFamily chain = chain_from_config(cfg);
    const JordanSpec& spec = chain.spec;
    Grid1D grid{cfg.value("grid", 256)};
    EvolveOptions opts;
    opts.T = cfg.value("T", 0.25);
    opts.cfl = cfg.value("cfl", 0.4);
    opts.snap_stride = cfg.value("snap_stride", 1);

    const Poly& V = std::get<Poly>(chain.at(0));
    OpMatrix<Poly> W = reduction_operator(spec, chain.mu, V);
    CompiledMatrix Wc = compile_matrix(W);
    std::vector<double> r0 = initial_data(spec, cfg, grid);
    try {
        Trajectory traj = evolve(Wc, r0, grid, opts);
        out.push_back(check("simulate-stable", true,
                            std::to_string(traj.states.size()) + " snapshots, dt=" +
                                std::to_string(traj.dt)));
        int hi = cfg.value("alpha_hi", std::min(chain.hi(), 2));
        int lo = cfg.value("alpha_lo", 1);
        std::map<int, CompiledScalar> cc;
        for (int a = lo - 1; a <= hi; ++a) {
            const ChainEntry& e = chain.at(a);
            cc[a] = std::holds_alternative<Poly>(e) ? compile_scalar(std::get<Poly>(e))
                                                    : compile_scalar(std::get<TruncSeries>(e));
        }
        auto recs = pavlov_pde_residual(traj, cc, lo, hi);
        json rj = json::array();
        for (const auto& r : recs) {
            rj.push_back({{"alpha", r.alpha},
                          {"M", r.M},
                          {"dt", r.dt},
                          {"maxNorm", r.maxNorm},
                          {"l2Norm", r.l2Norm}});
            out.push_back(check("pavlov-residual-alpha-" + std::to_string(r.alpha), true, "",
                                std::nullopt, r.maxNorm));
        }
        extra["residuals"] = rj;
        if (cfg.contains("out")) {
            std::ofstream f(cfg.at("out").get<std::string>());
            f << trajectory_to_json(traj).dump() << "\n";
        }
    } catch (const MathError& e) {
        out.push_back(check("simulate-stable", false, e.what()));
    }
}

void task_dkp_verify(const json& cfg, json& extra, std::vector<CheckResult>& out) {
    // n = 1 reduction of potential dKP: mu = r, V = r, W = r^2/2, lambda = r^2 + r.
    Poly r = Poly::variable(1, 0);
    Poly V = r, Wfun = Rational(1, 2) * r * r;
    JordanSpec spec({1});
    VField<Poly> mu(std::vector<Poly>{r});
    VField<Poly> lam = lambda_field(spec, mu, V);
    CompiledMatrix Wy = compile_matrix(mult_operator(spec, mu));
    CompiledMatrix Wt = compile_matrix(mult_operator(spec, lam));
    CompiledScalar Vc = compile_scalar(V), Wc = compile_scalar(Wfun);

    std::vector<int> grids = {128, 256, 512};
    if (cfg.contains("grids")) grids = cfg.at("grids").get<std::vector<int>>();
    double delta0 = cfg.value("delta", 0.02);
    double amp = cfg.value("amplitude", 0.05);

    std::vector<double> r1norm, r2norm;
    json levels = json::array();
    for (std::size_t g = 0; g < grids.size(); ++g) {
        Grid1D grid{grids[g]};
        double delta = delta0 * grids[0] / grids[g];
        std::vector<double> r0(grid.M);
        for (int i = 0; i < grid.M; ++i) r0[i] = 1.0 + amp * std::sin(grid.x(i));
        DkpResidual res = dkp_residual(Wy, Wt, Vc, Wc, r0, grid, delta, 4);
        r1norm.push_back(res.res1_max);
        r2norm.push_back(res.res2_max);
        levels.push_back({{"M", grid.M},
                          {"delta", delta},
                          {"res1_max", res.res1_max},
                          {"res2_max", res.res2_max}});
    }
    extra["levels"] = levels;
    bool ok = true;
    for (std::size_t g = 0; g + 1 < grids.size(); ++g) {
        double ratio1 = r1norm[g] / std::max(r1norm[g + 1], 1e-300);
        double ratio2 = r2norm[g] / std::max(r2norm[g + 1], 1e-300);
        if (ratio1 < 3.2 || ratio2 < 3.2) ok = false;
    }
    out.push_back(check("dkp-convergence-order>=2", ok, levels.dump(), std::nullopt,
                        r2norm.back()));
}

void task_identity_suite(const json& cfg, json&, std::vector<CheckResult>& out) {
    JordanSpec spec = spec_from(cfg);
    int n = spec.n();
    auto ctx = std::make_shared<const JetContext>(n, 2);
    for (int a = 0; a < spec.blocks(); ++a) {
        for (int j = 2; j <= spec.sizes[a]; ++j) {
            JetExpr got = step1_identity_check(spec, a, j, ctx);
            std::vector<int> K(n, 0);
            K[spec.flat(a, j)] = 1;
            JetExpr expect = JetExpr::v(ctx, K);
            bool ok = got == expect;
            out.push_back(check("step1-block" + std::to_string(a + 1) + "-j" + std::to_string(j),
                                ok, got.to_string(), ok));
        }
    }
    if (spec.blocks() == 1 && n >= 2) {
        OneBlockIdentities ids = oneblock_identity_check(n, ctx);
        std::vector<int> K0(n, 0), K1(n, 0), K2(n, 0);
        K1[0] = 1;
        K2[1] = 1;
        JetExpr mu2 = JetExpr::mu(ctx, 1, K0);
        JetExpr d2mu1 = JetExpr::mu(ctx, 0, K2);
        JetExpr d1V = JetExpr::v(ctx, K1);
        JetExpr expectI = Rational(n) * mu2 * d2mu1 - Rational(n - 1) * d1V;
        bool okI = ids.diagonal_sum == expectI;
        bool okII = ids.r1_component == d2mu1 * d1V;
        out.push_back(check("oneblock-identity-I", okI, ids.diagonal_sum.to_string(), okI));
        out.push_back(check("oneblock-identity-II", okII, ids.r1_component.to_string(), okII));
    }
}

void task_emit_fixtures(const json& cfg, json&, std::vector<CheckResult>& out) {
    if (!cfg.contains("out")) throw ConfigError("emit-fixtures: missing 'out' directory");
    emit_fixtures(cfg.at("out").get<std::string>());
    out.push_back(check("fixtures-emitted", true, cfg.at("out").get<std::string>()));
}

json run_single(const json& cfg) {
    if (!cfg.contains("task")) throw ConfigError("missing field 'task'");
    std::string task = cfg.at("task").get<std::string>();
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> checks;
    json extra = json::object();
    try {
        if (task == "check-nijenhuis")
            task_check_nijenhuis(cfg, extra, checks);
        else if (task == "check-eventual-identity")
            task_check_eventual(cfg, extra, checks);
        else if (task == "gt-residual")
            task_gt_residual(cfg, extra, checks);
        else if (task == "nonexistence")
            task_nonexistence(cfg, extra, checks);
        else if (task == "gen-v")
            task_gen_v(cfg, extra, checks);
        else if (task == "build-chain")
            task_build_chain(cfg, extra, checks);
        else if (task == "verify-chain")
            task_verify_chain(cfg, extra, checks);
        else if (task == "simulate")
            task_simulate(cfg, extra, checks);
        else if (task == "dkp-verify")
            task_dkp_verify(cfg, extra, checks);
        else if (task == "identity-suite")
            task_identity_suite(cfg, extra, checks);
        else if (task == "emit-fixtures")
            task_emit_fixtures(cfg, extra, checks);
        else
            throw ConfigError("unknown task: '" + task + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config field: ") + e.what());
    } catch (const std::exception& e) {
        // any module error not handled inside a task becomes a failed check
        CheckResult c;
        c.name = "task-error";
        c.pass = false;
        c.detail = e.what();
        checks.push_back(std::move(c));
    }
    auto t1 = std::chrono::steady_clock::now();

    json jc = json::array();
    bool pass = true;
    for (const auto& c : checks) {
        json e = {{"name", c.name}, {"pass", c.pass}};
        if (c.exact_zero) e["exactZero"] = *c.exact_zero;
        if (c.norm) e["norm"] = *c.norm;
        if (!c.detail.empty()) e["detail"] = c.detail;
        jc.push_back(e);
        pass = pass && c.pass;
    }
    json rep;
    rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    rep["config"] = cfg;
    rep["checks"] = jc;
    rep["outputs"] = extra;
    rep["pass"] = pass;
    rep["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

}  // namespace

json run(const json& config) {
    if (config.is_array()) {
        json out = json::array();
        bool pass = true;
        for (const auto& job : config) {
            json r = run_single(job);
            pass = pass && r.at("pass").get<bool>();
            out.push_back(std::move(r));
        }
        return json{{"jobs", out}, {"pass", pass}};
    }
    return run_single(config);
}

namespace {

struct GoldenSpec {
    const char* id;
    const char* formula;
};

// The display formulas for the thirteen canonical Jordan structures; the
// concrete instances are produced by generate_V from a fixed seed.
const GoldenSpec kGoldenSpecs[] = {
    {"2", "F1(r1)*r2 + F2(r1)"},
    {"3", "F1(r1)*r3 + 1/2*F1'(r1)*r2^2 + F2(r1)*r2 + F3(r1)"},
    {"2,1", "F1(r1)*r2 + F2(r1) + F3(r3)"},
    {"4",
     "(F1'(r1)*r2 + F2(r1))*r3 + F1(r1)*r4 + 1/6*F1''(r1)*r2^3 + 1/2*F2'(r1)*r2^2 + F3(r1)*r2 + "
     "F4(r1)"},
    {"3,1", "F1(r1)*r3 + 1/2*F1'(r1)*r2^2 + F2(r1)*r2 + F3(r1) + F4(r4)"},
    {"2,2", "F1(r1)*r2 + F2(r1) + F3(r3)*r4 + F4(r3)"},
    {"2,1,1", "F1(r1)*r2 + F2(r1) + F3(r3) + F4(r4)"},
    {"5",
     "(F1'(r1)*r2 + F2(r1))*r4 + F1(r1)*r5 + 1/2*F1'(r1)*r3^2 + (1/2*F1''(r1)*r2^2 + F2'(r1)*r2 "
     "+ F3(r1))*r3 + 1/24*F1'''(r1)*r2^4 + 1/6*F2''(r1)*r2^3 + 1/2*F3'(r1)*r2^2 + F4(r1)*r2 + "
     "F5(r1)"},
    {"4,1",
     "(F1'(r1)*r2 + F2(r1))*r3 + F1(r1)*r4 + 1/6*F1''(r1)*r2^3 + 1/2*F2'(r1)*r2^2 + F3(r1)*r2 + "
     "F4(r1) + F5(r5)"},
    {"3,2", "F1(r1)*r3 + 1/2*F1'(r1)*r2^2 + F2(r1)*r2 + F3(r1) + F4(r4)*r5 + F5(r4)"},
    {"3,1,1", "F1(r1)*r3 + 1/2*F1'(r1)*r2^2 + F2(r1)*r2 + F3(r1) + F4(r4) + F5(r5)"},
    {"2,2,1", "F1(r1)*r2 + F2(r1) + F3(r3)*r4 + F4(r3) + F5(r5)"},
    {"2,1,1,1", "F1(r1)*r2 + F2(r1) + F3(r3) + F4(r4) + F5(r5)"},
};

}  // namespace

void emit_fixtures(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "golden_v");
    fs::create_directories(fs::path(dir) / "l_matrix");
    fs::create_directories(fs::path(dir) / "chains");

    for (const auto& g : kGoldenSpecs) {
        JordanSpec spec = JordanSpec::parse(g.id);
        std::string fname(g.id);
        for (auto& c : fname)
            if (c == ',') c = '_';

        Rng rng(20240u + spec.n());
        FunctionFamily fam;
        for (int a = 0; a < spec.blocks(); ++a) {
            std::vector<Poly> fs;
            for (int i = 0; i < spec.sizes[a]; ++i) fs.push_back(random_univariate(rng, 4));
            fam.F.push_back(std::move(fs));
        }
        json fx;
        fx["spec"] = g.id;
        fx["formula"] = g.formula;
        fx["instance"] = {{"family", family_to_json(fam)},
                          {"v", generate_V(spec, fam).to_string()}};
        std::ofstream((fs::path(dir) / "golden_v" / ("spec_" + fname + ".json")).string())
            << fx.dump(1) << "\n";

        OpMatrix<Poly> L = mult_operator(spec, euler_field(spec));
        json rows = json::array();
        for (int i = 0; i < L.n; ++i) {
            json row = json::array();
            for (int j = 0; j < L.n; ++j) row.push_back(L.at(i, j).to_string());
            rows.push_back(row);
        }
        std::ofstream((fs::path(dir) / "l_matrix" / ("spec_" + fname + ".json")).string())
            << json{{"spec", g.id}, {"L", rows}}.dump(1) << "\n";
    }

    {
        JordanSpec spec({2});
        FunctionFamily fam;
        fam.F.push_back({Poly::constant(1, 1), Rational(1, 2) * Poly::variable(1, 0) *
                                                   Poly::variable(1, 0)});
        ChainFamily chain = build_chain(spec, fam, euler_field(spec),
                                        {Rational(0), Rational(0)}, 0, 2, 10);
        std::ofstream((fs::path(dir) / "chains" / "spec_2.json").string())
            << chain_to_json(chain).dump(1) << "\n";
    }
    {
        JordanSpec spec({3});
        FunctionFamily fam;
        fam.F.push_back({Poly::constant(1, 1), Poly::variable(1, 0),
                         Rational(1, 2) * Poly::variable(1, 0) * Poly::variable(1, 0)});
        ChainFamily chain = build_chain(spec, fam, euler_field(spec),
                                        {Rational(0), Rational(0), Rational(0)}, 0, 2, 10);
        std::ofstream((fs::path(dir) / "chains" / "spec_3.json").string())
            << chain_to_json(chain).dump(1) << "\n";
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"regfm: exact verification and construction toolkit for regular F-manifold "
                 "reductions"};
    std::string config_path, task, spec, out;
    std::int64_t seed = -1;
    int order = -1, grid = -1;
    double cfl = -1.0;
    app.add_option("--config", config_path, "JSON job config (object or array of jobs)");
    app.add_option("--task", task,
                   "task name: check-nijenhuis check-eventual-identity gt-residual nonexistence "
                   "gen-v build-chain verify-chain simulate dkp-verify identity-suite "
                   "emit-fixtures");
    app.add_option("--spec", spec, "Jordan block sizes, e.g. \"3,1,1\"");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--out", out, "output path (artifact for build-chain/simulate/emit-fixtures, "
                                 "report otherwise)");
    app.add_option("--order", order, "series truncation order");
    app.add_option("--grid", grid, "grid size M");
    app.add_option("--cfl", cfl, "CFL number");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    json cfg = json::object();
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config: " + config_path);
            in >> cfg;
        }
        auto apply = [&](json& job, bool with_out) {
            if (!task.empty()) job["task"] = task;
            if (!spec.empty()) job["spec"] = spec;
            if (seed >= 0) job["seed"] = (std::uint64_t)seed;
            if (with_out && !out.empty()) job["out"] = out;
            if (order >= 0) job["order"] = order;
            if (grid >= 0) job["grid"] = grid;
            if (cfl >= 0) job["cfl"] = cfl;
        };
        // In batch mode --out names the report file; single jobs may consume
        // it as their artifact path instead.
        if (cfg.is_array())
            for (auto& job : cfg) apply(job, false);
        else
            apply(cfg, true);

        json report = run(cfg);
        std::cout << report.dump(1) << "\n";
        bool pass = report.at("pass").get<bool>();
        std::string t = cfg.is_object() ? cfg.value("task", "") : "";
        bool artifact_out = (t == "build-chain" || t == "simulate" || t == "emit-fixtures");
        if (!out.empty() && !artifact_out) {
            std::ofstream f(out);
            f << report.dump(1) << "\n";
        }
        return pass ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace regfm
