// SPDX-License-Identifier: Apache-2.0
//! \file tools/nsdi.cc
//! Command-line front end for the correlated-escape simulations.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsdi/Analysis.hh"
#include "nsdi/Config.hh"
#include "nsdi/Ensemble.hh"
#include "nsdi/Errors.hh"
#include "nsdi/Full3d.hh"
#include "nsdi/Integrator.hh"
#include "nsdi/NGon.hh"
#include "nsdi/Output.hh"
#include "nsdi/Saddle.hh"
#include "nsdi/SaddlePerturbation.hh"
#include "nsdi/Sym2e.hh"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nsdi;

namespace
{
constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;
constexpr int exit_other = 1;

int report_error(int code, std::string const& kind, std::string const& what)
{
    std::cerr << json{{"error", what}, {"kind", kind}, {"exit_code", code}}.dump()
              << '\n';
    return code;
}

//---------------------------------------------------------------------------//
// Options shared by the physics commands; unset values keep config values
struct FieldFlags
{
    std::optional<double> field_strength;
    std::optional<double> omega;
    std::optional<double> phase;
    std::optional<int> cycles;

    void add_to(CLI::App* app)
    {
        app->add_option("--field-strength,-F", field_strength,
                        "Peak field strength (a.u.)");
        app->add_option("--omega", omega, "Angular frequency (a.u.)");
        app->add_option("--phase", phase, "Carrier phase (rad)");
        app->add_option("--cycles", cycles, "Pulse length in optical cycles");
    }

    void apply(FieldParams& field) const
    {
        if (field_strength)
            field.peak_field = *field_strength;
        if (omega)
        {
            // Keep the number of cycles fixed when only omega changes
            double const n_cycles = field.duration * field.omega
                                    / (2 * std::numbers::pi);
            field.omega = *omega;
            field.duration = 2 * std::numbers::pi * n_cycles / *omega;
        }
        if (cycles)
            field.duration = 2 * std::numbers::pi * *cycles / field.omega;
        if (phase)
            field.phase = *phase;
    }
};

struct IntegratorFlags
{
    std::optional<double> tol;
    std::optional<double> r_min;
    std::optional<double> dt_max;
    std::optional<double> t_end;

    void add_to(CLI::App* app)
    {
        app->add_option("--tol", tol, "Relative and absolute tolerance");
        app->add_option("--r-min", r_min, "Deep-encounter radius (a.u.)");
        app->add_option("--dt-max", dt_max, "Largest step (a.u.)");
        app->add_option("--t-end", t_end, "Final time (a.u.)");
    }

    void apply(IntegratorConfig& c) const
    {
        if (tol)
            c.rel_tol = c.abs_tol = *tol;
        if (r_min)
            c.r_min = *r_min;
        if (dt_max)
            c.dt_max = *dt_max;
        if (t_end)
            c.t_end = *t_end;
    }
};

void write_text(fs::path const& path, std::string const& text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void persist_config(RunConfig const& config, fs::path const& path)
{
    write_text(path, json(config).dump(2) + '\n');
}

//---------------------------------------------------------------------------//
int run_saddle(RunConfig& config, std::optional<double> phase_frozen)
{
    double eps = config.field.peak_field;
    if (phase_frozen)
        eps *= std::cos(*phase_frozen);
    std::cout << to_json(saddle_sym2e(eps)).dump(2) << '\n';
    return 0;
}

int run_convert(std::optional<double> intensity, std::optional<double> field)
{
    if (intensity.has_value() == field.has_value())
        throw InvalidArgument("give exactly one of --intensity or --field");
    json j;
    if (intensity)
    {
        j = {{"intensity_w_cm2", *intensity},
             {"field_au", intensity_to_field(*intensity)}};
    }
    else
    {
        j = {{"field_au", *field},
             {"intensity_w_cm2", field_to_intensity(*field)}};
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_stability(RunConfig& config, bool strict)
{
    double const eps = config.field.peak_field;
    auto const saddle = saddle_sym2e(eps);
    auto const [r1, r2] = saddle_configuration(saddle);
    // The pair can rotate rigidly about the field axis at zero cost
    std::vector<Eigen::VectorXd> modes;
    if (!strict)
        modes.push_back(field_axis_rotation(r1, r2));
    auto const analytic = classify_stability(hessian_full3d(r1, r2, eps), modes);
    auto const numeric = classify_stability(hessian_full3d_fd(r1, r2, eps), modes);
    double max_rel = 0;
    for (std::size_t i = 0; i < analytic.eigenvalues.size(); ++i)
    {
        if (analytic.eigenvalues[i] == 0)
            continue;
        max_rel = std::max(max_rel,
                           std::fabs(analytic.eigenvalues[i]
                                     - numeric.eigenvalues[i])
                               / std::fabs(analytic.eigenvalues[i]));
    }
    json j = to_json(analytic);
    j["saddle"] = to_json(saddle);
    j["finite_difference_eigenvalues"] = numeric.eigenvalues;
    j["max_relative_difference"] = max_rel;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_ngon_scan(RunConfig& config, int n_min, int n_max, bool with_criterion)
{
    if (n_min < 2 || n_max < n_min)
        throw InvalidArgument("require 2 <= n-min <= n-max");
    double const eps = config.field.peak_field;
    std::cout << ngon_scan_csv_header << (with_criterion ? ",criterion" : "")
              << '\n';
    for (int n = n_min; n <= n_max; ++n)
    {
        std::optional<bool> criterion;
        if (with_criterion)
            criterion = ngon_saddle_criterion(n);
        write_ngon_scan_row(std::cout, n, eps, ngon_saddle_scan(n, eps),
                            criterion);
    }
    return 0;
}

//---------------------------------------------------------------------------//
struct TrajectoryFlags
{
    std::string model{"sym2e"};
    int n_electrons{2};
    std::optional<double> x, y, px, py;
    bool from_saddle{false};
    double offset{0.1};
    double energy{-0.58};
    double displacement{0};
    double tilt{0};
    std::optional<double> t0;
    bool zero_field{false};
    std::optional<double> frozen;
    std::string out;
};

template<class System>
int emit_trajectory(System const& system,
                    typename System::Vector const& initial,
                    double t0,
                    RunConfig const& config,
                    std::string const& out)
{
    auto const record = integrate(system, initial, t0, config.integrator);
    std::ostringstream csv;
    write_trajectory_csv(csv, record);
    if (out.empty())
    {
        std::cout << csv.str();
    }
    else
    {
        write_text(out, csv.str());
        persist_config(config, fs::path(out).string() + ".config.json");
    }
    std::cerr << json{{"termination", to_cstring(record.termination)},
                      {"n_accepted", record.n_accepted},
                      {"n_rejected", record.n_rejected}}
                     .dump()
              << '\n';
    return record.termination == Termination::completed ? 0 : exit_numerical;
}

int run_trajectory(RunConfig& config, TrajectoryFlags const& flags)
{
    Drive drive = flags.zero_field ? Drive::none()
                  : flags.frozen   ? Drive::frozen(*flags.frozen)
                                   : Drive{config.field};
    double const t_mid = config.field.duration / 2;
    config.options["model"] = flags.model;

    if (flags.model == "full3d")
    {
        auto launched = launch_from_saddle(
            {config.field, flags.energy, {flags.displacement, flags.tilt}});
        config.field = launched.field;
        config.options["displacement"] = flags.displacement;
        config.options["momentum_tilt"] = flags.tilt;
        config.options["energy"] = flags.energy;
        return emit_trajectory(Full3dSystem{Drive{launched.field}},
                               launched.state.as_array(),
                               launched.t0,
                               config,
                               flags.out);
    }

    // Reduced models share (position, position, momentum, momentum)
    std::array<double, 4> initial{};
    double t0 = flags.t0.value_or(0.0);
    if (flags.from_saddle)
    {
        // Start just outside the saddle at the central field maximum,
        // moving radially outward with the requested total energy
        t0 = flags.t0.value_or(t_mid);
        config.field.phase = std::remainder(-config.field.omega * t0,
                                            2 * std::numbers::pi);
        drive = Drive{config.field};
        double const eps = drive(t0);
        auto const s = saddle_sym2e(eps);
        double const r = s.r_s + flags.offset;
        double const x = r * std::cos(s.theta);
        double const y = r * std::sin(s.theta);
        if (flags.model == "ngon")
        {
            // Relabel (x, y) -> (z, rho) with the n-gon saddle direction
            double const rs = ngon_saddle_radius(flags.n_electrons, eps);
            auto const sad = ngon_saddle_scan(flags.n_electrons, eps);
            if (!sad)
                throw NoSolution("no n-gon saddle at this field");
            double const scale = (rs + flags.offset) / rs;
            double const rho = sad->rho * scale;
            double const z = sad->z * scale;
            double const kin = flags.energy
                               - potential_ngon(rho, z, flags.n_electrons, eps);
            if (kin < 0)
                throw NoSolution("energy below the potential at launch");
            double const p = std::sqrt(2 * kin / flags.n_electrons);
            double const norm = std::hypot(rho, z);
            initial = {rho, z, p * rho / norm, p * z / norm};
        }
        else
        {
            double const kin = flags.energy - potential_sym2e(x, y, eps);
            if (kin < 0)
                throw NoSolution("energy below the potential at launch");
            double const p = std::sqrt(kin);
            initial = {x, y, p * std::cos(s.theta), p * std::sin(s.theta)};
        }
    }
    else
    {
        if (!flags.x || !flags.y || !flags.px || !flags.py)
            throw InvalidArgument(
                "give --x --y --px --py or use --from-saddle");
        initial = {*flags.x, *flags.y, *flags.px, *flags.py};
    }
    config.options["initial"] = initial;
    config.options["t0"] = t0;

    if (flags.model == "sym2e")
        return emit_trajectory(
            Sym2eSystem{drive}, initial, t0, config, flags.out);
    if (flags.model == "ngon")
        return emit_trajectory(NGonSystem{flags.n_electrons, drive},
                               initial, t0, config, flags.out);
    throw InvalidArgument("unknown model '" + flags.model + "'");
}

//---------------------------------------------------------------------------//
int run_ensemble_cmd(RunConfig& config, bool progress, bool write_outcomes)
{
    config.ensemble.validate();
    fs::path const dir = config.output_dir;
    fs::create_directories(dir);
    persist_config(config, dir / "config.json");
    write_text(dir / "manifest.json",
               manifest_json(config.ensemble).dump(2) + '\n');

    EnsembleRunConfig run;
    run.field = config.field;
    run.ensemble = config.ensemble;
    run.integrator = config.integrator;
    run.threads = config.threads;

    auto const n = config.ensemble.n_samples;
    ProgressCallback report;
    if (progress)
    {
        auto const every = std::max<std::uint64_t>(1, n / 100);
        report = [n, every](std::uint64_t done) {
            if (done % every == 0 || done == n)
                std::cerr << "progress " << done << '/' << n << '\n';
        };
    }
    auto const result = run_ensemble(run, report);
    auto const outcomes = result.outcomes();

    std::optional<HumpMetric> metric;
    if (result.n_double > 0)
    {
        auto const parallel = ion_parallel_histogram(outcomes);
        auto const perp = perp_electron_histogram(outcomes);
        metric = hump_metric(parallel);
        std::ostringstream a, b;
        write_histogram_csv(a, parallel);
        write_histogram_csv(b, perp);
        write_text(dir / "ion_parallel.csv", a.str());
        write_text(dir / "electron_perp.csv", b.str());
    }
    write_text(dir / "summary.json",
               summary_json(result, metric).dump(2) + '\n');

    if (write_outcomes)
    {
        std::ostringstream os;
        os << "index,tag,phase,p_parallel_ion,p_perp_electron,final_H,"
              "crossing_time,nearest_extremum\n";
        for (std::size_t i = 0; i < result.trajectories.size(); ++i)
        {
            auto const& t = result.trajectories[i];
            os << i << ',' << to_cstring(t.outcome.tag) << ','
               << format_double(t.phase) << ','
               << format_double(t.outcome.p_parallel_ion) << ','
               << format_double(t.outcome.p_perp_electron) << ','
               << format_double(t.outcome.final_energy) << ','
               << format_double(t.crossing_time) << ','
               << format_double(t.nearest_extremum) << '\n';
        }
        write_text(dir / "outcomes.csv", os.str());
    }
    if (result.n_double == 0)
    {
        throw NoSolution("ensemble produced no double-ionized trajectories");
    }
    return 0;
}

int run_fig4(RunConfig& config,
             std::vector<SaddlePerturbation> perturbations,
             double energy,
             bool dump_tracks)
{
    if (perturbations.empty())
        perturbations = default_perturbation_grid();
    json listed = json::array();
    for (auto const& p : perturbations)
        listed.push_back({p.displacement, p.momentum_tilt});
    config.options["perturbations"] = listed;
    config.options["energy"] = energy;
    auto integrator = config.integrator;
    integrator.record_samples = dump_tracks;
    auto const runs = perturbed_saddle_trajectories(
        config.field, energy, perturbations, integrator);

    fs::path const dir = config.output_dir;
    if (dump_tracks)
    {
        fs::create_directories(dir);
        persist_config(config, dir / "config.json");
    }
    std::cout << "displacement,momentum_tilt,outcome,energy_1,energy_2,"
                 "p_parallel_1,p_parallel_2\n";
    for (std::size_t i = 0; i < runs.size(); ++i)
    {
        auto const& r = runs[i];
        std::cout << format_double(r.perturbation.displacement) << ','
                  << format_double(r.perturbation.momentum_tilt) << ','
                  << to_cstring(r.outcome) << ','
                  << format_double(r.fates[0].energy) << ','
                  << format_double(r.fates[1].energy) << ','
                  << format_double(r.fates[0].p_parallel) << ','
                  << format_double(r.fates[1].p_parallel) << '\n';
        if (dump_tracks)
        {
            std::ostringstream os;
            write_trajectory_csv(os, r.record);
            write_text(dir / ("fig4_" + std::to_string(i) + ".csv"), os.str());
        }
    }
    return 0;
}

}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"Classical correlated multiple-ionization simulations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", config_schema_version);

    std::string config_path;
    std::optional<int> threads;
    std::optional<std::string> output_dir;
    app.add_option("--config", config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    app.add_option("--threads", threads, "Worker threads (env NSDI_THREADS)");
    app.add_option("--output,-o", output_dir, "Output directory");

    FieldFlags field_flags;
    IntegratorFlags integ_flags;

    auto* saddle = app.add_subcommand("saddle", "Stark saddle of the 2e model");
    std::optional<double> phase_frozen;
    field_flags.add_to(saddle);
    saddle->add_option("--phase-frozen", phase_frozen,
                       "Carrier phase at the envelope peak (rad)");

    auto* convert = app.add_subcommand("convert", "Intensity <-> field");
    std::optional<double> intensity, field_au;
    convert->add_option("--intensity", intensity, "Intensity (W/cm^2)");
    convert->add_option("--field", field_au, "Field amplitude (a.u.)");

    auto* stability = app.add_subcommand("stability",
                                         "Frozen-field 3-D saddle spectrum");
    bool strict = false;
    field_flags.add_to(stability);
    stability->add_flag("--strict", strict,
                        "Do not factor out the rotation about the field axis");

    auto* ngon = app.add_subcommand("ngon-scan", "N-electron saddle existence");
    int n_min = 2;
    int n_max = 20;
    bool with_criterion = false;
    field_flags.add_to(ngon);
    ngon->add_option("--n-min", n_min);
    ngon->add_option("--n-max", n_max);
    ngon->add_flag("--with-criterion", with_criterion,
                   "Append the algebraic existence criterion");

    auto* traj = app.add_subcommand("trajectory", "Single trajectory as CSV");
    TrajectoryFlags tflags;
    field_flags.add_to(traj);
    integ_flags.add_to(traj);
    traj->add_option("--model", tflags.model, "sym2e, ngon or full3d")
        ->check(CLI::IsMember({"sym2e", "ngon", "full3d"}));
    traj->add_option("--n-electrons", tflags.n_electrons);
    traj->add_option("--x", tflags.x);
    traj->add_option("--y", tflags.y);
    traj->add_option("--px", tflags.px);
    traj->add_option("--py", tflags.py);
    traj->add_flag("--from-saddle", tflags.from_saddle,
                   "Launch just outside the saddle at the central maximum");
    traj->add_option("--offset", tflags.offset, "Radial offset from saddle");
    traj->add_option("--energy", tflags.energy, "Total launch energy (a.u.)");
    traj->add_option("--displacement", tflags.displacement,
                     "Symmetry-breaking displacement (full3d)");
    traj->add_option("--tilt", tflags.tilt,
                     "Momentum tilt toward the symmetry-breaking mode (full3d)");
    traj->add_option("--t0", tflags.t0, "Start time (a.u.)");
    traj->add_flag("--zero-field", tflags.zero_field);
    traj->add_option("--frozen-field", tflags.frozen, "Constant field value");
    traj->add_option("--out", tflags.out, "CSV path (default stdout)");

    auto* ens = app.add_subcommand("ensemble", "Momentum distributions");
    std::optional<std::uint64_t> n_samples, seed;
    std::optional<double> energy;
    bool progress = false;
    bool write_outcomes = false;
    field_flags.add_to(ens);
    integ_flags.add_to(ens);
    ens->add_option("--n", n_samples, "Number of trajectories");
    ens->add_option("--energy", energy, "Energy of the complex (a.u.)");
    ens->add_option("--seed", seed, "Master seed");
    ens->add_flag("--progress", progress, "Line-based progress on stderr");
    ens->add_flag("--outcomes", write_outcomes, "Also write outcomes.csv");

    auto* fig4 = app.add_subcommand("fig4", "Perturbed 3-D saddle trajectories");
    std::vector<double> displacements;
    std::vector<double> tilts;
    double fig4_energy = -0.58;
    bool scan = false;
    bool dump_tracks = false;
    field_flags.add_to(fig4);
    integ_flags.add_to(fig4);
    fig4->add_flag("--scan", scan, "Use the default displacement grid");
    fig4->add_option("--displacement", displacements, "Displacements (a.u.)");
    fig4->add_option("--tilt", tilts, "Momentum tilts (rad)");
    fig4->add_option("--energy", fig4_energy);
    fig4->add_flag("--tracks", dump_tracks, "Write per-trajectory CSVs");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::Success const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        return report_error(exit_usage, "usage", e.what());
    }

    try
    {
        RunConfig config;
        config.field = FieldParams::n_cycle(0.137, 0.057, 0);
        config.ensemble.n_samples = 100000;
        config.integrator = default_integrator_config(config.field);
        config.threads = default_thread_count();
        bool t_end_given = integ_flags.t_end.has_value();
        if (!config_path.empty())
        {
            std::ifstream in(config_path);
            auto const j = json::parse(in);
            j.get_to(config);
            t_end_given |= j.contains("integrator")
                           && j["integrator"].contains("t_end");
        }
        field_flags.apply(config.field);
        integ_flags.apply(config.integrator);
        // Default window: the pulse plus a field-free coda of 2 T_d
        if (!t_end_given)
            config.integrator.t_end = 3 * config.field.duration;
        if (threads)
            config.threads = *threads;
        if (output_dir)
            config.output_dir = *output_dir;
        config.field.validate();
        config.integrator.validate();

        auto* sub = app.get_subcommands().front();
        config.command = sub->get_name();
        if (sub == saddle)
            return run_saddle(config, phase_frozen);
        if (sub == convert)
            return run_convert(intensity, field_au);
        if (sub == stability)
            return run_stability(config, strict);
        if (sub == ngon)
            return run_ngon_scan(config, n_min, n_max, with_criterion);
        if (sub == traj)
            return run_trajectory(config, tflags);
        if (sub == ens)
        {
            if (n_samples)
                config.ensemble.n_samples = *n_samples;
            if (energy)
                config.ensemble.energy = *energy;
            if (seed)
                config.ensemble.master_seed = *seed;
            config.integrator.record_samples = false;
            config.integrator.stop_when_bound_after_pulse = true;
            return run_ensemble_cmd(config, progress, write_outcomes);
        }
        if (sub == fig4)
        {
            // Explicit lists form a grid; a missing list means {0}
            std::vector<SaddlePerturbation> grid;
            if (!scan)
            {
                if (displacements.empty() && tilts.empty())
                    throw InvalidArgument("give --scan, --displacement or --tilt");
                if (displacements.empty())
                    displacements = {0.0};
                if (tilts.empty())
                    tilts = {0.0};
                for (double t : tilts)
                    for (double d : displacements)
                        grid.push_back({d, t});
            }
            return run_fig4(config, grid, fig4_energy, dump_tracks);
        }
    }
    catch (InvalidArgument const& e)
    {
        return report_error(exit_usage, "invalid_argument", e.what());
    }
    catch (json::exception const& e)
    {
        return report_error(exit_usage, "config", e.what());
    }
    catch (SingularEvaluation const& e)
    {
        return report_error(exit_numerical, "singular_evaluation", e.what());
    }
    catch (NoSolution const& e)
    {
        return report_error(exit_numerical, "no_solution", e.what());
    }
    catch (RejectionOverflow const& e)
    {
        return report_error(exit_numerical, "rejection_overflow", e.what());
    }
    catch (DegenerateSpectrum const& e)
    {
        return report_error(exit_numerical, "degenerate_spectrum", e.what());
    }
    catch (NoCrossing const& e)
    {
        return report_error(exit_numerical, "no_crossing", e.what());
    }
    catch (std::exception const& e)
    {
        return report_error(exit_other, "error", e.what());
    }
    return exit_other;
}
