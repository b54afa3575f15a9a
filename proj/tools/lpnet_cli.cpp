// Command-line front end: sampling, coefficients, fitting, poles, grids and
// the PDE singularity experiment.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpnet/laurent.hpp"
#include "lpnet/model_io.hpp"
#include "lpnet/pdelab.hpp"
#include "lpnet/pipeline.hpp"
#include "lpnet/test_functions.hpp"

using namespace lpnet;
using nlohmann::json;

namespace
{

constexpr int exit_validation = 2;
constexpr int exit_numerical = 3;

Rect parse_rect(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size())
            {
                throw std::invalid_argument(item);
            }
        }
        catch (const std::exception&)
        {
            throw ValidationError("--rect: cannot parse '" + item + "' as a number");
        }
    }
    if (v.size() != 4)
    {
        throw ValidationError("--rect: expected four numbers a,b,c,d");
    }
    Rect r{v[0], v[1], v[2], v[3]};
    validate(r);
    return r;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw ValidationError("cannot open '" + path + "' for writing");
    }
    out.precision(17);
    return out;
}

std::string trace_text(const std::vector<int>& trace)
{
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i)
    {
        out += (i ? " -> " : "") + std::to_string(trace[i]);
    }
    return out;
}

void print_component(const NetworkComponent& c)
{
    std::printf("%s side: N = %d, M = %d, SVD reductions %d (M1 trace %s), LS relative residual %.3g%s%s\n",
                to_string(c.sign).c_str(), c.degrees.n_deg, c.degrees.m_deg, c.degrees.svd_iterations,
                trace_text(c.degrees.m_trace).c_str(), c.ls_relative_residual,
                c.representation_warning ? " [representation warning]" : "",
                c.degrees.relation_warning ? " [relation warning]" : "");
}

void print_model_summary(const Model& m)
{
    for (const NetworkComponent* c : {m.plus_ptr(), m.minus_ptr()})
    {
        if (c != nullptr)
        {
            print_component(*c);
        }
    }
    if (m.remainder.size() > 0)
    {
        std::printf("analytic %s side kept as a polynomial remainder of degree %d\n",
                    to_string(m.remainder_sign).c_str(), static_cast<int>(m.remainder.size()) - 1);
    }
}

void write_pole_table(const Model& m, double radius, std::ostream& out)
{
    const std::vector<PoleCluster> clusters = cluster_poles(m.pole_report, radius);
    std::vector<int> multiplicity(m.pole_report.size(), 0);
    for (const PoleCluster& c : clusters)
    {
        for (int i : c.members)
        {
            multiplicity[i] = c.multiplicity;
        }
    }
    out << "sign,neuron,re,im,multiplicity\n";
    for (std::size_t i = 0; i < m.pole_report.size(); ++i)
    {
        const PoleEstimate& e = m.pole_report[i];
        out << to_string(e.component_sign) << ',' << e.neuron_index + 1 << ',';
        if (e.at_infinity)
        {
            out << "inf,inf,0\n";
        }
        else
        {
            out << e.location.real() << ',' << e.location.imag() << ',' << multiplicity[i] << '\n';
        }
    }
}

std::function<cplx(cplx)> generator(const std::string& name, double time)
{
    if (name == "burgers")
    {
        const PdeConfig cfg;
        // Series in w = e^{ix}, so x = -i log w.
        return [cfg, time](cplx w) { return exact_solution(cfg, cplx(0.0, -1.0) * std::log(w), time); };
    }
    return testfn::lookup(name);
}

struct SourceOptions
{
    std::string samples;
    std::string function;
    double rho = 0.0;
    int n = 0;
    double time = 0.0;
};

void add_source_options(CLI::App* cmd, SourceOptions& o)
{
    cmd->add_option("--samples", o.samples, "sample file {rho, values}");
    cmd->add_option("--function", o.function,
                    "built-in generator: exfun, inv2, inv05, two_poles, exp15, burgers");
    cmd->add_option("--rho", o.rho, "contour radius");
    cmd->add_option("--n", o.n, "half the number of samples (generators only)");
    cmd->add_option("--time", o.time, "time for the burgers generator");
}

ContourSamples resolve_samples(const SourceOptions& o, int factor = 1)
{
    if (!o.samples.empty() && !o.function.empty())
    {
        throw ValidationError("give either --samples or --function, not both");
    }
    if (!o.samples.empty())
    {
        ContourSamples s = load_samples(o.samples);
        if (o.rho != 0.0 && o.rho != s.rho)
        {
            throw ValidationError("--rho " + std::to_string(o.rho) + " disagrees with the sample file radius " +
                                  std::to_string(s.rho));
        }
        return s;
    }
    if (o.function.empty())
    {
        throw ValidationError("one of --samples or --function is required");
    }
    if (!(o.rho > 0.0))
    {
        throw ValidationError("--rho is required and must be positive");
    }
    if (o.n < 1)
    {
        throw ValidationError("--n is required with --function");
    }
    return sample_contour(generator(o.function, o.time), o.rho, factor * o.n);
}

// ---------------------------------------------------------------------------

int run_sample(const SourceOptions& o, const std::string& out)
{
    const ContourSamples s = resolve_samples(o);
    save_samples(s, out);
    std::printf("wrote %d samples on radius %.15g to %s\n", static_cast<int>(s.values.size()), s.rho,
                out.c_str());
    return 0;
}

int run_coeffs(const SourceOptions& o, const std::string& out, bool check, const std::string& check_samples)
{
    const ContourSamples s = resolve_samples(o);
    const LaurentWindow w = compute_coefficients(s);
    json j = to_json(w);
    if (check)
    {
        ContourSamples doubled;
        if (!check_samples.empty())
        {
            doubled = load_samples(check_samples);
        }
        else if (!o.function.empty())
        {
            doubled = resolve_samples(o, 2);
        }
        else
        {
            throw ValidationError("--check needs --check-samples (twice as many values) or --function");
        }
        const RVector err = estimate_error(s, doubled);
        json est = json::array();
        for (int k = -w.n; k <= w.n; ++k)
        {
            est.push_back({{"k", k}, {"error", err(k + w.n)}});
        }
        j["error_estimate"] = est;
        std::printf("largest estimated coefficient error %.3g\n", err.maxCoeff());
    }
    write_json(j, out);
    std::printf("wrote coefficients c_{-%d}..c_{%d} to %s\n", w.n, w.n, out.c_str());
    return 0;
}

struct FitOptions
{
    SourceOptions source;
    int n1 = 10;
    int m1 = 10;
    int n1_minus = -1;
    int m1_minus = -1;
    double tol = 1e-14;
    std::uint64_t seed = 0;
    std::string rect = "-1,-0.5,0.5,1";
    std::string phi = "cos";
    std::string z0 = "-1.2";
    int activation_samples = 64;
    bool separate_activations = false;
    std::string out;
};

FitConfig to_config(const FitOptions& o)
{
    FitConfig cfg;
    cfg.n1_plus = o.n1;
    cfg.m1_plus = o.m1;
    cfg.n1_minus = o.n1_minus >= 0 ? o.n1_minus : o.n1;
    cfg.m1_minus = o.m1_minus >= 0 ? o.m1_minus : o.m1;
    cfg.tol = o.tol;
    cfg.seed = o.seed;
    cfg.rect = parse_rect(o.rect);
    cfg.phi = o.phi;
    cfg.z0 = parse_complex(o.z0);
    cfg.activation_samples = o.activation_samples;
    cfg.shared_activation = !o.separate_activations;
    return cfg;
}

void add_fit_options(CLI::App* cmd, FitOptions& o)
{
    cmd->add_option("--n1", o.n1, "numerator degree bound (plus side, and minus unless overridden)");
    cmd->add_option("--m1", o.m1, "denominator degree bound");
    cmd->add_option("--n1-minus", o.n1_minus, "numerator degree bound on the minus side");
    cmd->add_option("--m1-minus", o.m1_minus, "denominator degree bound on the minus side");
    cmd->add_option("--tol", o.tol, "relative singular value threshold");
    cmd->add_option("--seed", o.seed, "seed for the random factor constants");
    cmd->add_option("--rect", o.rect, "a,b,c,d: real parts of C_k0 from [a,b], imaginary from [c,d]");
    cmd->add_option("--phi", o.phi, "activation seed function: cos or one");
    cmd->add_option("--z0", o.z0, "activation pole, e.g. \"-1.2+0i\"");
    cmd->add_option("--activation-samples", o.activation_samples, "points used for the activation series");
    cmd->add_flag("--separate-activations", o.separate_activations, "build one activation per side");
}

int run_fit(const FitOptions& o)
{
    const ContourSamples s = resolve_samples(o.source);
    const auto start = std::chrono::steady_clock::now();
    const Model m = fit(s, to_config(o));
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print_model_summary(m);
    std::printf("%d pole estimates; fit took %.3f s\n", static_cast<int>(m.pole_report.size()), elapsed);
    if (!o.out.empty())
    {
        save_model(m, o.out);
        std::printf("wrote model to %s\n", o.out.c_str());
    }
    return 0;
}

int run_poles(const std::string& model_path, double radius, const std::string& out)
{
    const Model m = load_model(model_path);
    if (out.empty())
    {
        std::cout.precision(17);
        write_pole_table(m, radius, std::cout);
    }
    else
    {
        std::ofstream f = open_out(out);
        write_pole_table(m, radius, f);
    }
    const std::vector<PoleCluster> clusters = cluster_poles(m.pole_report, radius);
    std::fprintf(stderr, "%d estimates in %d clusters (radius %.3g)\n", static_cast<int>(m.pole_report.size()),
                 static_cast<int>(clusters.size()), radius);
    return 0;
}

int run_eval(const std::string& model_path, const std::string& re, const std::string& im, const std::string& out)
{
    const Model m = load_model(model_path);
    const std::vector<GridPoint> grid = eval_grid(m, parse_range(re), parse_range(im));
    std::ofstream f = open_out(out);
    write_grid_csv(grid, f);
    std::printf("wrote %d grid points to %s\n", static_cast<int>(grid.size()), out.c_str());
    return 0;
}

int run_demo(const std::string& name, const std::string& dir, const std::string& z0, std::uint64_t seed,
             double radius, const std::string& re, const std::string& im)
{
    if (name != "exfun")
    {
        throw ValidationError("unknown demo '" + name + "'; available: exfun");
    }
    std::filesystem::create_directories(dir);
    FitConfig cfg;
    cfg.n1_plus = cfg.m1_plus = cfg.n1_minus = cfg.m1_minus = 70;
    cfg.tol = 1e-14;
    cfg.seed = seed;
    cfg.z0 = parse_complex(z0);
    const auto start = std::chrono::steady_clock::now();
    const ContourSamples s = sample_contour(testfn::exfun, 0.99, 150);
    const Model m = fit(s, cfg);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    print_model_summary(m);
    const std::vector<PoleCluster> clusters = cluster_poles(m.pole_report, radius);
    int doubles = 0;
    double worst = 0.0;
    for (const PoleCluster& c : clusters)
    {
        doubles += c.multiplicity > 1;
        double nearest = INFINITY;
        for (const testfn::Pole& p : testfn::exfun_poles())
        {
            nearest = std::min(nearest, std::abs(c.location - p.location));
        }
        worst = std::max(worst, nearest);
    }
    std::printf("%d estimates, %d clusters at radius %.3g (%d repeated), farthest cluster from a true pole %.3g\n",
                static_cast<int>(m.pole_report.size()), static_cast<int>(clusters.size()), radius, doubles, worst);
    std::printf("sample + fit time %.3f s\n", elapsed);

    const std::string model_path = (std::filesystem::path(dir) / "model.json").string();
    const std::string poles_path = (std::filesystem::path(dir) / "poles.csv").string();
    const std::string grid_path = (std::filesystem::path(dir) / "grid.csv").string();
    save_model(m, model_path);
    {
        std::ofstream f = open_out(poles_path);
        write_pole_table(m, radius, f);
    }
    {
        std::ofstream f = open_out(grid_path);
        write_grid_csv(eval_grid(m, parse_range(re), parse_range(im)), f);
    }
    std::printf("wrote %s, %s, %s\n", model_path.c_str(), poles_path.c_str(), grid_path.c_str());
    return 0;
}

struct PdeOptions
{
    double eta = 1.0;
    double nu = 0.1;
    double beta_exp = -0.25;
    int n = 40;
    double dt = 1e-3;
    std::string times = "0:0.1:1";
    double tol = 1e-3;
    std::string z0 = "-1.2";
    std::uint64_t seed = 0;
    std::string source = "auto";
    bool include_states = false;
    std::string out;
    std::string grid_dir;
    std::string grid_re = "-3.141592653589793:3.141592653589793:129";
    std::string grid_im = "-1:1:65";
};

json track_to_json(const SingularityTrack& track)
{
    json est = json::array();
    for (const SingularityEstimate& e : track.estimates)
    {
        est.push_back({{"sign", to_string(e.sign)},
                       {"neuron", e.neuron + 1},
                       {"s", is_finite(e.s) ? complex_to_json(e.s) : json(nullptr)},
                       {"nearest_truth", complex_to_json(e.nearest_truth)},
                       {"error", std::isfinite(e.error) ? json(e.error) : json(nullptr)},
                       {"flagged", e.flagged}});
    }
    json truth = json::array();
    for (const cplx& z : track.truth)
    {
        truth.push_back(complex_to_json(z));
    }
    return json{{"time", track.time}, {"truth", truth}, {"estimates", est}};
}

void write_pde_grid(const TrajectoryRow& row, const AxisRange& re, const AxisRange& im, const std::string& path)
{
    std::vector<GridPoint> grid;
    for (int j = 0; j < im.count; ++j)
    {
        for (int i = 0; i < re.count; ++i)
        {
            GridPoint g;
            g.re = re.lo + (re.hi - re.lo) * i / (re.count - 1);
            g.im = im.lo + (im.hi - im.lo) * j / (im.count - 1);
            const cplx z(g.re, g.im);
            g.value = eval_model(row.model, std::exp(cplx(0.0, 1.0) * z));
            g.at_pole = !is_finite(g.value);
            for (const SingularityEstimate& e : row.track.estimates)
            {
                g.at_pole = g.at_pole || std::abs(z - e.s) <= 1e-12;
            }
            grid.push_back(g);
        }
    }
    std::ofstream f = open_out(path);
    write_grid_csv(grid, f);
}

int run_pde(const PdeOptions& o)
{
    PdeConfig cfg;
    cfg.eta = o.eta;
    cfg.nu = o.nu;
    cfg.beta = std::exp(o.beta_exp);
    cfg.n = o.n;
    cfg.dt = o.dt;
    cfg.source = state_source_from_string(o.source);
    const std::vector<double> times = parse_times(o.times);
    cfg.times = times;
    validate(cfg);

    FitConfig fit_cfg = default_pde_fit_config(cfg.n);
    fit_cfg.tol = o.tol;
    fit_cfg.z0 = parse_complex(o.z0);
    fit_cfg.seed = o.seed;

    const TrajectoryReport report = trajectory_report(cfg, fit_cfg, times);

    std::printf("blow-up time %.6g\n", report.blowup_time);
    std::printf("%6s %6s %5s %5s %14s %14s %14s %14s %11s\n", "t", "source", "N+/M+", "N-/M-", "w11+",
                "b11+", "w11-", "b11-", "max error");
    json rows = json::array();
    for (const TrajectoryRow& row : report.rows)
    {
        double worst = 0.0;
        for (const SingularityEstimate& e : row.track.estimates)
        {
            worst = std::max(worst, e.error);
        }
        auto degrees = [](const std::optional<NetworkComponent>& c) {
            return c ? std::to_string(c->degrees.n_deg) + "/" + std::to_string(c->degrees.m_deg) : std::string("-");
        };
        std::printf("%6.3f %6s %5s %5s %14.6g %14.6g %14.6g %14.6g %11.3g%s\n", row.t, row.source.c_str(),
                    degrees(row.model.plus).c_str(), degrees(row.model.minus).c_str(), row.w_plus.real(),
                    row.b_plus.real(), row.w_minus.real(), row.b_minus.real(), worst,
                    row.near_blowup ? "  (near blow-up)" : "");

        json r{{"t", row.t},
               {"source", row.source},
               {"near_blowup", row.near_blowup},
               {"w11_plus", complex_to_json(row.w_plus)},
               {"b11_plus", complex_to_json(row.b_plus)},
               {"w11_minus", complex_to_json(row.w_minus)},
               {"b11_minus", complex_to_json(row.b_minus)},
               {"track", track_to_json(row.track)},
               {"model", to_json(row.model)}};
        if (o.include_states)
        {
            r["a"] = vector_to_json(row.state.a);
        }
        rows.push_back(r);

        if (!o.grid_dir.empty())
        {
            std::filesystem::create_directories(o.grid_dir);
            char name[64];
            std::snprintf(name, sizeof name, "grid_t%.4f.csv", row.t);
            write_pde_grid(row, parse_range(o.grid_re), parse_range(o.grid_im),
                           (std::filesystem::path(o.grid_dir) / name).string());
        }
    }
    if (!o.out.empty())
    {
        json doc{{"config",
                  {{"eta", cfg.eta},
                   {"nu", cfg.nu},
                   {"beta", cfg.beta},
                   {"n", cfg.n},
                   {"dt", cfg.dt},
                   {"source", to_string(cfg.source)},
                   {"tol", fit_cfg.tol},
                   {"z0", complex_to_json(fit_cfg.z0)},
                   {"seed", fit_cfg.seed}}},
                 {"blowup_time", report.blowup_time},
                 {"rows", rows}};
        write_json(doc, o.out);
        std::printf("wrote report to %s\n", o.out.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Shallow rational networks built from Laurent coefficients; pole detection and PDE singularity tracking"};
    app.require_subcommand(1);

    SourceOptions sample_opts;
    std::string sample_out;
    CLI::App* sample = app.add_subcommand("sample", "sample a built-in function on a circle");
    add_source_options(sample, sample_opts);
    sample->add_option("--out", sample_out, "output sample file")->required();

    SourceOptions coeff_opts;
    std::string coeff_out;
    bool coeff_check = false;
    std::string coeff_check_samples;
    CLI::App* coeffs = app.add_subcommand("coeffs", "Laurent coefficients from contour samples");
    add_source_options(coeffs, coeff_opts);
    coeffs->add_option("--out", coeff_out, "output JSON")->required();
    coeffs->add_flag("--check", coeff_check, "estimate aliasing errors from doubled samples");
    coeffs->add_option("--check-samples", coeff_check_samples, "sample file with twice as many values");

    FitOptions fit_opts;
    CLI::App* fit_cmd = app.add_subcommand("fit", "build the network from samples");
    add_source_options(fit_cmd, fit_opts.source);
    add_fit_options(fit_cmd, fit_opts);
    fit_cmd->add_option("--out", fit_opts.out, "output model JSON");

    std::string poles_model;
    double poles_radius = 1e-6;
    std::string poles_out;
    CLI::App* poles = app.add_subcommand("poles", "list pole estimates with cluster multiplicities");
    poles->add_option("--model", poles_model, "model JSON")->required();
    poles->add_option("--cluster-radius", poles_radius, "single-linkage radius");
    poles->add_option("--out", poles_out, "CSV file instead of stdout");

    std::string eval_model_path;
    std::string eval_re = "-2:2:101";
    std::string eval_im = "-2:2:101";
    std::string eval_out;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a model on a rectangular grid");
    eval->add_option("--model", eval_model_path, "model JSON")->required();
    eval->add_option("--re", eval_re, "lo:hi:count");
    eval->add_option("--im", eval_im, "lo:hi:count");
    eval->add_option("--out", eval_out, "output CSV")->required();

    std::string demo_name;
    std::string demo_dir = "demo_out";
    std::string demo_z0 = "-0.3+1.1666666666666667i";
    std::uint64_t demo_seed = 0;
    double demo_radius = 1e-4;
    std::string demo_re = "-1.5:1.5:301";
    std::string demo_im = "-1.5:1.5:301";
    CLI::App* demo = app.add_subcommand("demo", "rerun a built-in experiment");
    demo->add_option("name", demo_name, "experiment name (exfun)")->required();
    demo->add_option("--out-dir", demo_dir, "directory for model.json, poles.csv, grid.csv");
    demo->add_option("--z0", demo_z0, "activation pole");
    demo->add_option("--seed", demo_seed, "seed for the random factor constants");
    demo->add_option("--cluster-radius", demo_radius, "single-linkage radius");
    demo->add_option("--re", demo_re, "grid lo:hi:count");
    demo->add_option("--im", demo_im, "grid lo:hi:count");

    PdeOptions pde_opts;
    CLI::App* pde = app.add_subcommand("pde", "track singularities of the Burgers-type solution in time");
    pde->add_option("--eta", pde_opts.eta, "eta");
    pde->add_option("--nu", pde_opts.nu, "nu");
    pde->add_option("--beta-exp", pde_opts.beta_exp, "beta = exp(value)");
    pde->add_option("--n", pde_opts.n, "spectral cutoff");
    pde->add_option("--dt", pde_opts.dt, "RK4 step");
    pde->add_option("--times", pde_opts.times, "lo:step:hi or a comma list");
    pde->add_option("--tol", pde_opts.tol, "singular value threshold");
    pde->add_option("--z0", pde_opts.z0, "activation pole");
    pde->add_option("--seed", pde_opts.seed, "seed for the random factor constants");
    pde->add_option("--source", pde_opts.source, "coefficient source: ode, exact or auto");
    pde->add_flag("--include-states", pde_opts.include_states, "store a_k for every time");
    pde->add_option("--out", pde_opts.out, "report JSON");
    pde->add_option("--grid-dir", pde_opts.grid_dir, "write grid_t<time>.csv per time");
    pde->add_option("--grid-re", pde_opts.grid_re, "lo:hi:count for Re z");
    pde->add_option("--grid-im", pde_opts.grid_im, "lo:hi:count for Im z");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_validation;
    }

    try
    {
        if (*sample)
        {
            return run_sample(sample_opts, sample_out);
        }
        if (*coeffs)
        {
            return run_coeffs(coeff_opts, coeff_out, coeff_check, coeff_check_samples);
        }
        if (*fit_cmd)
        {
            return run_fit(fit_opts);
        }
        if (*poles)
        {
            return run_poles(poles_model, poles_radius, poles_out);
        }
        if (*eval)
        {
            return run_eval(eval_model_path, eval_re, eval_im, eval_out);
        }
        if (*demo)
        {
            return run_demo(demo_name, demo_dir, demo_z0, demo_seed, demo_radius, demo_re, demo_im);
        }
        if (*pde)
        {
            return run_pde(pde_opts);
        }
    }
    catch (const ValidationError& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_validation;
    }
    catch (const NumericalError& e)
    {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return exit_numerical;
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return exit_numerical;
    }
    return 0;
}
