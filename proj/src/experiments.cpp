#include "fplab/experiments.hpp"

#include "fplab/absorption.hpp"
#include "fplab/capacity.hpp"
#include "fplab/conditions.hpp"
#include "fplab/domain.hpp"
#include "fplab/kernel.hpp"
#include "fplab/measure.hpp"
#include "fplab/nonlinearity.hpp"
#include "fplab/norms.hpp"
#include "fplab/solver.hpp"
#include "fplab/source.hpp"
#include "fplab/wolff.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

namespace fplab {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

const json& require(const json& j, const std::string& field) {
    if (!j.contains(field)) schema_error(field, "missing");
    return j.at(field);
}

double num(const json& j, const std::string& field) {
    const json& v = require(j, field);
    if (!v.is_number()) schema_error(field, "must be a number");
    return v.get<double>();
}

double num_or(const json& j, const std::string& field, double dflt) {
    if (!j.contains(field)) return dflt;
    if (!j.at(field).is_number()) schema_error(field, "must be a number");
    return j.at(field).get<double>();
}

std::string str(const json& j, const std::string& field) {
    const json& v = require(j, field);
    if (!v.is_string()) schema_error(field, "must be a string");
    return v.get<std::string>();
}

Eigen::VectorXd vec(const json& j, const std::string& field, int dim) {
    const json& v = require(j, field);
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
        schema_error(field, "must be an array of length " + std::to_string(dim));
    Eigen::VectorXd out(dim);
    for (int k = 0; k < dim; ++k) out(k) = v.at(k).get<double>();
    return out;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

DiscreteDomain parse_domain(const json& j) {
    std::string type = str(j, "type");
    double collar = num_or(j, "collar_factor", 4.0);
    if (type == "interval")
        return make_interval_domain(num(j, "a"), num(j, "b"), num(j, "h"), collar);
    if (type == "disk") return make_disk_domain(num(j, "radius"), num(j, "h"), collar);
    schema_error("domain.type", "unknown type '" + type + "'");
}

KernelSpec parse_kernel(const json& j, int dim) {
    KernelSpec spec;
    spec.s = num(j, "s");
    spec.p = num(j, "p");
    spec.lambda_k = num_or(j, "lambda_k", 1.0);
    if (j.contains("profile")) {
        std::string prof = str(j, "profile");
        if (prof == "pure-power")
            spec.profile = KernelProfile::PurePower;
        else if (prof == "cosine")
            spec.profile = KernelProfile::CosineModulated;
        else
            schema_error("kernel.profile", "unknown profile '" + prof + "'");
    }
    if (j.contains("c_ns")) {
        const json& c = j.at("c_ns");
        if (c.is_string() && c.get<std::string>() == "fractional-laplacian")
            spec.c_ns = fractional_laplacian_constant(dim, spec.s);
        else if (c.is_number())
            spec.c_ns = c.get<double>();
        else
            schema_error("kernel.c_ns", "must be a number or 'fractional-laplacian'");
    }
    spec.validate(dim);
    return spec;
}

Nonlinearity parse_nonlinearity(const json& j) {
    std::string type = str(j, "type");
    if (type == "zero") return Nonlinearity::zero();
    if (type == "power") return Nonlinearity::power(num(j, "kappa"), num_or(j, "coeff", 1.0));
    if (type == "truncated-power")
        return Nonlinearity::truncated(
            Nonlinearity::power(num(j, "kappa"), num_or(j, "coeff", 1.0)), num(j, "level"));
    schema_error("nonlinearity.type", "unknown type '" + type + "'");
}

MeasureData parse_measure(const json& j, const DiscreteDomain& d) {
    std::string type = str(j, "type");
    if (type == "zero") return MeasureData::zero(d);
    if (type == "dirac") return MeasureData::dirac(d, vec(j, "x", d.dim), num(j, "mass"));
    if (type == "uniform-ball")
        return MeasureData::uniform_ball(d, vec(j, "center", d.dim), num(j, "radius"),
                                         num(j, "mass"));
    if (type == "constant-density")
        return MeasureData::from_density(
            d, Eigen::VectorXd::Constant(d.n_interior, num(j, "value")));
    if (type == "sum") {
        const json& terms = require(j, "terms");
        if (!terms.is_array() || terms.empty()) schema_error("measure.terms", "nonempty array");
        MeasureData acc = MeasureData::zero(d);
        for (const json& t : terms) {
            MeasureData part = parse_measure(t, d);
            for (const auto& a : part.atoms) acc.atoms.push_back(a);
            if (part.density.size() > 0) {
                if (acc.density.size() == 0) acc.density = Eigen::VectorXd::Zero(d.n_interior);
                acc.density += part.density;
            }
        }
        return acc;
    }
    schema_error("measure.type", "unknown type '" + type + "'");
}

WolffQuery parse_wolff(const json& cfg, const KernelSpec& spec, const DiscreteDomain& d) {
    WolffQuery q;
    q.alpha = spec.s;
    q.p = spec.p;
    q.R = 2.0 * d.diam;
    if (cfg.contains("wolff")) {
        const json& j = cfg.at("wolff");
        q.R = num_or(j, "R", q.R);
        q.radial_grid = static_cast<int>(num_or(j, "radial_grid", 512));
    }
    q.validate(d.dim);
    return q;
}

SeminormSpec parse_seminorm(const json& cfg, const KernelSpec& spec, int dim) {
    SeminormSpec sn{0.5 * spec.s, 0.5 * dim * (spec.p - 1.0) / (dim - spec.s)};
    if (cfg.contains("seminorm")) {
        const json& j = cfg.at("seminorm");
        sn.h = num(j, "h");
        sn.q = num(j, "q");
    }
    sn.validate(spec.s, spec.p, dim);
    return sn;
}

struct Checks {
    json list = json::array();
    int total = 0, passed = 0;

    void add(const std::string& name, bool pass) {
        list.push_back(json{{"name", name}, {"pass", pass}});
        ++total;
        if (pass) ++passed;
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_node_csv(const fs::path& path, const DiscreteDomain& d,
                    const std::vector<std::pair<std::string, Eigen::VectorXd>>& columns) {
    std::ostringstream out;
    out << "index,";
    for (int k = 0; k < d.dim; ++k) out << "x" << k << ",";
    out << "weight,interior";
    for (const auto& [name, _] : columns) out << "," << name;
    out << "\n";
    for (Eigen::Index i = 0; i < d.n_total(); ++i) {
        out << i;
        for (int k = 0; k < d.dim; ++k) out << "," << fmt17(d.points(i, k));
        out << "," << fmt17(d.weights(i)) << "," << (d.is_interior(i) ? 1 : 0);
        for (const auto& [_, col] : columns) out << "," << fmt17(col(i));
        out << "\n";
    }
    write_text(path, out.str());
}

void write_rows_csv(const fs::path& path, const std::string& header,
                    const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    out << header << "\n";
    for (const auto& row : rows) {
        for (size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << fmt17(row[k]);
        out << "\n";
    }
    write_text(path, out.str());
}

json solve_report_json(const SolveReport& rep) {
    json j;
    j["converged"] = rep.converged;
    j["iterations"] = rep.iterations;
    j["residual_norm"] = rep.residual_norm;
    j["objective"] = rep.objective;
    j["g_l1"] = rep.g_l1;
    json te = json::array();
    for (const auto& [k, v] : rep.truncation_energies)
        te.push_back(json{{"k", k}, {"energy", v}});
    j["truncation_energies"] = te;
    j["weak_star_up"] = rep.weak_star_up;
    return j;
}

// residual allowance in the weak-identity-derived bounds
double residual_slack(const DiscreteDomain& d, double tol) {
    return static_cast<double>(d.n_interior) * tol;
}

void check_solver_invariants(Checks& checks, const DiscreteDomain& d, const KernelTable& table,
                             const SolveReport& rep, const Nonlinearity& g,
                             const MeasureData& mu, double tol) {
    checks.add("solver-converged", rep.converged);
    double tv = mu.total_variation(d);
    double slack = residual_slack(d, tol);
    bool trunc_ok = true;
    for (double k : {1.0, 2.0, 4.0, 8.0}) {
        double e = truncation_energy(d, rep.u, k, table.spec);
        if (e > k * table.spec.lambda_k * (tv + slack)) trunc_ok = false;
    }
    checks.add("truncation-energy-bound", trunc_ok);
    if (!g.is_zero()) {
        double gl1 = 0.0;
        for (Eigen::Index i = 0; i < d.n_interior; ++i)
            gl1 += std::abs(g.g(rep.u(i))) * d.weights(i);
        checks.add("absorption-l1-bound", gl1 <= tv + slack);
    }
}

struct Context {
    const json& cfg;
    fs::path out;
    std::uint64_t seed;
    bool verbose;
    json results;
    Checks checks;
};

void kind_linear_solve(Context& ctx) {
    DiscreteDomain d = parse_domain(require(ctx.cfg, "domain"));
    KernelSpec spec = parse_kernel(require(ctx.cfg, "kernel"), d.dim);
    KernelTable table = assemble_kernel(d, spec);
    MeasureData mu = parse_measure(require(ctx.cfg, "measure"), d);
    SolveOptions opts;
    opts.tol = num_or(ctx.cfg, "tol", 1e-8);
    SolveReport rep = minimize_J(d, table, Nonlinearity::zero(), mu, opts);
    WolffQuery q = parse_wolff(ctx.cfg, spec, d);
    Eigen::VectorXd W = wolff_field(d, mu.absolute(d), q);

    check_solver_invariants(ctx.checks, d, table, rep, Nonlinearity::zero(), mu, opts.tol);
    ctx.results["solve"] = solve_report_json(rep);
    ctx.results["mu_total_variation"] = mu.total_variation(d);
    write_node_csv(ctx.out / "fields.csv", d, {{"u", rep.u}, {"wolff_abs", W}});
}

void kind_absorption(Context& ctx) {
    DiscreteDomain d = parse_domain(require(ctx.cfg, "domain"));
    KernelSpec spec = parse_kernel(require(ctx.cfg, "kernel"), d.dim);
    KernelTable table = assemble_kernel(d, spec);
    MeasureData mu = parse_measure(require(ctx.cfg, "measure"), d);
    Nonlinearity g = parse_nonlinearity(require(ctx.cfg, "nonlinearity"));
    WolffQuery q = parse_wolff(ctx.cfg, spec, d);
    SeminormSpec sn = parse_seminorm(ctx.cfg, spec, d.dim);
    SolveOptions opts;
    opts.tol = num_or(ctx.cfg, "tol", 1e-8);

    AbsorptionResult res = run_absorption(d, table, g, mu, q, sn, opts);
    check_solver_invariants(ctx.checks, d, table, res.report, g, mu, opts.tol);
    if (mu.is_nonnegative(d))
        ctx.checks.add("sign-consistency", res.report.u.minCoeff() >= -1e-6);

    ctx.results["solve"] = solve_report_json(res.report);
    ctx.results["verdict"] =
        res.verdict.verdict == Criticality::Subcritical ? "subcritical" : "supercritical";
    ctx.results["lambda_g"] = std::isfinite(res.verdict.lambda_g) ? json(res.verdict.lambda_g)
                                                                  : json("infinite");
    ctx.results["c_plus"] = res.c_plus;
    ctx.results["c_minus"] = res.c_minus;
    ctx.results["g_l1_power"] = res.g_l1_power;
    ctx.results["seminorm"] = res.seminorm;
    ctx.results["mu_tv_power"] = res.mu_tv_power;
    write_node_csv(ctx.out / "fields.csv", d,
                   {{"u", res.report.u},
                    {"wolff_plus", res.wolff_plus},
                    {"wolff_minus", res.wolff_minus}});
}

void kind_power_absorption(Context& ctx) {
    DiscreteDomain d = parse_domain(require(ctx.cfg, "domain"));
    KernelSpec spec = parse_kernel(require(ctx.cfg, "kernel"), d.dim);
    KernelTable table = assemble_kernel(d, spec);
    MeasureData mu = parse_measure(require(ctx.cfg, "measure"), d);
    double kappa = num(require(ctx.cfg, "nonlinearity"), "kappa");
    WolffQuery q = parse_wolff(ctx.cfg, spec, d);
    SeminormSpec sn = parse_seminorm(ctx.cfg, spec, d.dim);
    SolveOptions opts;
    opts.tol = num_or(ctx.cfg, "tol", 1e-8);
    int levels = static_cast<int>(num_or(ctx.cfg, "max_levels", 10));

    PowerAbsorptionResult res = run_power_absorption(d, table, kappa, mu, q, sn, opts, levels);
    // the reported solve is the final level iterate, which satisfies the weak
    // identity and the L1 bound for the level-truncated nonlinearity
    check_solver_invariants(ctx.checks, d, table, res.base.report,
                            Nonlinearity::truncated(Nonlinearity::power(kappa),
                                                    res.final_level),
                            mu, opts.tol);
    bool expect_div = ctx.cfg.value("expect_divergence", false);
    ctx.checks.add(expect_div ? "divergence-detected" : "levels-stabilized",
                   res.diverged == expect_div);

    ctx.results["solve"] = solve_report_json(res.base.report);
    ctx.results["verdict"] = res.base.verdict.verdict == Criticality::Subcritical
                                 ? "subcritical"
                                 : "supercritical";
    ctx.results["diverged"] = res.diverged;
    ctx.results["final_level"] = res.final_level;
    ctx.results["u_kappa_l1"] = res.u_kappa_l1;
    ctx.results["level_l1"] = res.level_l1;
    ctx.results["c_plus"] = res.base.c_plus;
    ctx.results["c_minus"] = res.base.c_minus;
    write_node_csv(ctx.out / "fields.csv", d,
                   {{"u", res.base.report.u},
                    {"wolff_plus", res.base.wolff_plus},
                    {"wolff_minus", res.base.wolff_minus}});
}

void kind_source_fixed_point(Context& ctx) {
    DiscreteDomain d = parse_domain(require(ctx.cfg, "domain"));
    KernelSpec spec = parse_kernel(require(ctx.cfg, "kernel"), d.dim);
    KernelTable table = assemble_kernel(d, spec);
    MeasureData tau = parse_measure(require(ctx.cfg, "measure"), d);
    Nonlinearity g = parse_nonlinearity(require(ctx.cfg, "nonlinearity"));
    const json& fp = require(ctx.cfg, "fixed_point");
    SolveOptions opts;
    opts.tol = num_or(ctx.cfg, "tol", 1e-8);

    // probe family: the data itself (normalized) plus seeded interior Diracs
    std::vector<MeasureData> probes;
    double tv = tau.total_variation(d);
    if (tv > 0.0) probes.push_back(tau.scaled(1.0 / tv));
    std::mt19937_64 rng(ctx.seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, d.n_interior - 1);
    int n_probes = static_cast<int>(num_or(fp, "probes", 3));
    for (int k = 0; k < n_probes; ++k) {
        MeasureData p;
        p.atoms.emplace_back(pick(rng), 1.0);
        probes.push_back(std::move(p));
    }
    double C = measure_ball_constant(d, table, probes, opts);

    double kappa = num_or(fp, "kappa", g.is_power() ? g.power_exponent() : 2.0);
    double a = d.dim / (d.dim - spec.s * spec.p);
    BallConstants bc = solve_ball_constants(C, a, kappa);
    if (!bc.feasible) throw std::runtime_error("fixed point: no feasible (t0, rho0)");

    FixedPointConfig conf;
    conf.C = C;
    conf.a = a;
    conf.kappa = kappa;
    conf.t0 = bc.t0;
    conf.rho = num_or(fp, "rho_factor", 0.5) * bc.rho0;
    conf.max_iter = static_cast<int>(num_or(fp, "max_iter", 200));
    FixedPointResult res = fixed_point_iterate(d, table, g, tau, conf, opts);

    bool certificate =
        C * (std::pow(bc.t0, a) + std::pow(bc.t0, kappa) + bc.rho0) <= bc.t0;
    ctx.checks.add("ball-certificate", certificate);
    bool expect_escape = ctx.cfg.value("expect_escape", false);
    if (expect_escape) {
        ctx.checks.add("escape-fired", res.escaped);
    } else {
        ctx.checks.add("orbit-in-ball", !res.escaped);
        ctx.checks.add("orbit-converged", res.converged);
    }

    ctx.results["C"] = C;
    ctx.results["t0"] = bc.t0;
    ctx.results["rho0"] = bc.rho0;
    ctx.results["rho"] = conf.rho;
    ctx.results["converged"] = res.converged;
    ctx.results["escaped"] = res.escaped;
    ctx.results["residual_l1"] = res.residual_l1;
    ctx.results["steps"] = static_cast<int>(res.orbit.size());
    std::vector<std::vector<double>> rows;
    for (size_t k = 0; k < res.orbit.size(); ++k)
        rows.push_back({static_cast<double>(k), res.orbit[k].weak_norm,
                        res.orbit[k].l1_increment});
    write_rows_csv(ctx.out / "orbit.csv", "step,weak_norm,l1_increment", rows);
    write_node_csv(ctx.out / "fields.csv", d, {{"u", res.u}, {"v", res.v}});
}

void kind_source_monotone(Context& ctx) {
    DiscreteDomain d = parse_domain(require(ctx.cfg, "domain"));
    KernelSpec spec = parse_kernel(require(ctx.cfg, "kernel"), d.dim);
    KernelTable table = assemble_kernel(d, spec);
    MeasureData tau = parse_measure(require(ctx.cfg, "measure"), d);
    const json& mc = require(ctx.cfg, "monotone");
    double kappa = num(mc, "kappa");
    double rho = num(mc, "rho");
    WolffQuery q = parse_wolff(ctx.cfg, spec, d);
    SolveOptions opts;
    opts.tol = num_or(ctx.cfg, "tol", 1e-8);

    double M = num_or(mc, "M", 0.0);
    if (M <= 0.0) M = check_wolff_composition(d, tau, kappa, q);
    int max_iter = static_cast<int>(num_or(mc, "max_iter", 50));
    MonotoneSourceResult res =
        monotone_source_iterate(d, table, kappa, tau, rho, q, M, max_iter, opts);

    bool expect_abort = ctx.cfg.value("expect_barrier_abort", false);
    if (expect_abort) {
        ctx.checks.add("barrier-abort-fired", res.aborted_barrier);
    } else {
        ctx.checks.add("monotone-iterates", !res.aborted_monotone);
        ctx.checks.add("barrier-maintained", !res.aborted_barrier);
        ctx.checks.add("stabilized", res.stabilized);
    }

    ctx.results["A"] = res.A;
    ctx.results["C"] = res.C;
    ctx.results["M"] = M;
    ctx.results["admissible"] = res.admissible;
    ctx.results["iterations"] = res.iterations;
    ctx.results["stabilized"] = res.stabilized;
    ctx.results["aborted_monotone"] = res.aborted_monotone;
    ctx.results["aborted_barrier"] = res.aborted_barrier;
    ctx.results["upper_fit"] = res.upper_fit;
    ctx.results["lower_fit"] = res.lower_fit;
    std::vector<std::vector<double>> rows;
    for (size_t k = 0; k < res.increments.size(); ++k)
        rows.push_back({static_cast<double>(k + 1), res.increments[k]});
    write_rows_csv(ctx.out / "iterates.csv", "step,sup_increment", rows);
    write_node_csv(ctx.out / "fields.csv", d, {{"u", res.u}, {"barrier", res.barrier}});
}

void kind_potential_suite(Context& ctx) {
    DiscreteDomain d = parse_domain(require(ctx.cfg, "domain"));
    KernelSpec spec = parse_kernel(require(ctx.cfg, "kernel"), d.dim);
    MeasureData tau = parse_measure(require(ctx.cfg, "measure"), d);
    WolffQuery q = parse_wolff(ctx.cfg, spec, d);
    const json pot = ctx.cfg.value("potential", json::object());
    double kappa = num_or(pot, "kappa", 3.0);

    Eigen::VectorXd W = wolff_field(d, tau, q);
    Eigen::VectorXd W2 = wolff_field(d, tau.scaled(2.0), q);
    double hom = std::pow(2.0, 1.0 / (spec.p - 1.0));
    bool hom_ok = true;
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        if (std::abs(W2(i) - hom * W(i)) > 1e-9 * (1.0 + W2(i))) hom_ok = false;
    ctx.checks.add("wolff-mass-homogeneity", hom_ok);

    std::vector<Ball> balls;
    if (pot.contains("balls")) {
        for (const json& b : pot.at("balls"))
            balls.push_back({vec(b, "center", d.dim), num(b, "radius")});
    } else {
        for (double r : {0.25, 0.5, 1.0})
            balls.push_back({Eigen::VectorXd::Zero(d.dim), r});
    }
    BallExponent variant = pot.value("exponent_variant", std::string("kappa")) == "kappa"
                               ? BallExponent::Kappa
                               : BallExponent::KappaOverPm1;
    BallConditionResult bc = check_ball_condition(d, tau, kappa, q, balls, variant);
    ctx.checks.add("ball-condition-finite", !bc.any || std::isfinite(bc.max_ratio));

    double comp = check_wolff_composition(d, tau, kappa, q);
    std::vector<Eigen::VectorXd> centers{Eigen::VectorXd::Zero(d.dim)};
    if (pot.contains("centers")) {
        centers.clear();
        for (const json& c : pot.at("centers")) {
            Eigen::VectorXd x(d.dim);
            for (int k = 0; k < d.dim; ++k) x(k) = c.at(k).get<double>();
            centers.push_back(x);
        }
    }
    GrowthResult gr = measure_growth_exponent(d, tau, kappa, spec, centers);
    bool expect_growth = pot.value("expect_growth_pass", true);
    ctx.checks.add("growth-exponent", gr.passes == expect_growth);

    ctx.results["ball_ratios"] = bc.ratios;
    ctx.results["ball_max_ratio"] = bc.any ? json(bc.max_ratio) : json();
    ctx.results["composition_ratio"] = comp;
    ctx.results["growth_fitted"] = gr.fitted;
    ctx.results["growth_threshold"] = gr.threshold;
    ctx.results["growth_passes"] = gr.passes;
    write_node_csv(ctx.out / "fields.csv", d, {{"wolff", W}});
}

void kind_capacity_suite(Context& ctx) {
    const json& cc = require(ctx.cfg, "capacity");
    double alpha = num(cc, "alpha");
    double beta = num(cc, "beta");
    int dim = static_cast<int>(num_or(cc, "dim", 2));
    double extent = num_or(cc, "extent", 1.0);
    int n_side = static_cast<int>(num_or(cc, "grid_n", 11));
    double tol = num_or(ctx.cfg, "tol", 1e-4);

    CapacityProblem prob;
    prob.alpha = alpha;
    prob.beta = beta;
    long n = 1;
    for (int k = 0; k < dim; ++k) n *= n_side;
    prob.points.resize(n, dim);
    double h = 2.0 * extent / n_side;
    for (long i = 0; i < n; ++i) {
        long rem = i;
        for (int k = 0; k < dim; ++k) {
            long idx = rem % n_side;
            rem /= n_side;
            prob.points(i, k) = -extent + (idx + 0.5) * h;
        }
    }
    prob.weights = Eigen::VectorXd::Constant(n, std::pow(h, dim));

    CapacityRegime regime = point_capacity_regime(alpha, beta, dim);
    ctx.results["regime"] = regime == CapacityRegime::Positive ? "positive" : "null";

    std::vector<std::vector<double>> rows;
    std::vector<double> caps;
    std::vector<double> radii;
    if (cc.contains("ball_radii"))
        for (const json& r : cc.at("ball_radii")) radii.push_back(r.get<double>());
    else
        radii = {0.05, 0.15, 0.5};
    for (double r : radii) {
        prob.target.clear();
        for (long i = 0; i < n; ++i)
            if (prob.points.row(i).norm() <= r) prob.target.push_back(i);
        double cap = prob.target.empty() ? 0.0 : capacity(prob, tol);
        caps.push_back(cap);
        rows.push_back({r, cap});
    }
    write_rows_csv(ctx.out / "capacity.csv", "radius,capacity", rows);
    ctx.results["radii"] = radii;
    ctx.results["capacities"] = caps;

    bool mono = true;
    for (size_t k = 1; k < caps.size(); ++k)
        if (caps[k] < caps[k - 1] * (1.0 - 1e-6)) mono = false;
    ctx.checks.add("capacity-monotone-in-radius", mono);

    if (caps.size() >= 2 && caps.back() > 0.0 && radii.back() > radii.front()) {
        double ratio = caps.front() / caps.back();
        double decades = std::log10(radii.back() / radii.front());
        bool trend = regime == CapacityRegime::Positive
                         ? ratio >= 0.2
                         : ratio <= std::pow(10.0, -decades);
        ctx.checks.add("regime-trend", trend);
    }
}

}  // namespace

RunOutcome run_config_text(const std::string& config_text, const std::string& out_dir,
                           std::uint64_t seed, bool verbose) {
    json cfg;
    try {
        cfg = json::parse(config_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config root must be an object");
    std::string kind = str(cfg, "kind");

    fs::create_directories(out_dir);
    Context ctx{cfg, fs::path(out_dir), seed, verbose, json::object(), {}};

    if (kind == "linear-solve")
        kind_linear_solve(ctx);
    else if (kind == "absorption")
        kind_absorption(ctx);
    else if (kind == "power-absorption")
        kind_power_absorption(ctx);
    else if (kind == "source-fixed-point")
        kind_source_fixed_point(ctx);
    else if (kind == "source-monotone")
        kind_source_monotone(ctx);
    else if (kind == "potential-suite")
        kind_potential_suite(ctx);
    else if (kind == "capacity-suite")
        kind_capacity_suite(ctx);
    else
        schema_error("kind", "unknown kind '" + kind + "'");

    json summary;
    summary["kind"] = kind;
    summary["seed"] = seed;
    summary["results"] = ctx.results;
    summary["checks"] = ctx.checks.list;
    summary["checks_passed"] = ctx.checks.passed;
    summary["checks_total"] = ctx.checks.total;
    fs::path summary_path = ctx.out / "summary.json";
    write_text(summary_path, summary.dump(2) + "\n");
    write_text(ctx.out / "checks.json", ctx.checks.list.dump(2) + "\n");

    RunOutcome out;
    out.kind = kind;
    out.checks_total = ctx.checks.total;
    out.checks_passed = ctx.checks.passed;
    out.ok = ctx.checks.passed == ctx.checks.total;
    out.summary_path = summary_path.string();
    if (verbose)
        std::cerr << kind << ": " << out.checks_passed << "/" << out.checks_total
                  << " checks passed\n";
    return out;
}

RunOutcome run_config(const std::string& config_path, const std::string& out_dir,
                      std::uint64_t seed, bool verbose) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_config_text(buf.str(), out_dir, seed, verbose);
}

SuiteOutcome run_suite(const std::string& dir, const std::string& out_dir, std::uint64_t seed,
                       bool verbose) {
    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            configs.push_back(entry.path());
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) throw ConfigError("suite directory holds no .json configs");

    SuiteOutcome suite;
    json agg = json::array();
    for (const fs::path& c : configs) {
        RunOutcome r = run_config(c.string(), (fs::path(out_dir) / c.stem()).string(), seed,
                                  verbose);
        ++suite.total;
        if (r.ok) ++suite.passed;
        agg.push_back(json{{"config", c.filename().string()},
                           {"kind", r.kind},
                           {"checks_passed", r.checks_passed},
                           {"checks_total", r.checks_total},
                           {"ok", r.ok}});
    }
    suite.ok = suite.passed == suite.total;
    fs::create_directories(out_dir);
    json doc;
    doc["runs"] = agg;
    doc["passed"] = suite.passed;
    doc["total"] = suite.total;
    write_text(fs::path(out_dir) / "aggregate.json", doc.dump(2) + "\n");
    return suite;
}

}  // namespace fplab
