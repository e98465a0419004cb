// Command-line front end: reproducible design/simulation runs driven by
// sectioned config files, emitting CSV/PGM outputs plus a JSON manifest.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "npc/config.hpp"
#include "npc/dispersion.hpp"
#include "npc/errors.hpp"
#include "npc/io.hpp"
#include "npc/lattice.hpp"
#include "npc/phasematch.hpp"
#include "npc/quantum.hpp"
#include "npc/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace
{
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

struct RunOptions
{
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    bool budget = false;
};

npc::ConfigFile load_run_config(const RunOptions &opt)
{
    npc::ConfigFile cfg = npc::ConfigFile::parse_file(opt.config_path);
    for (const std::string &assignment : opt.overrides)
    {
        cfg.apply_override(assignment);
    }
    return cfg;
}

// The run config either points at a dispersion file (path relative to the
// run config) or embeds a [dispersion] section directly.
npc::DispersionModel load_dispersion(const npc::ConfigFile &cfg, const RunOptions &opt,
                                     ordered_json &echo)
{
    if (cfg.has("dispersion_file"))
    {
        const std::string given = cfg.get_string("dispersion_file");
        fs::path ref(given);
        if (ref.is_relative())
        {
            ref = fs::path(opt.config_path).parent_path() / ref;
        }
        npc::DispersionModel model = npc::DispersionModel::load(ref.string());
        echo["dispersion_file"] = given;
        echo["dispersion_hash_fnv1a"] = npc::fnv1a_file_hex(ref.string());
        echo["dispersion_name"] = model.name();
        return model;
    }
    if (cfg.has("dispersion.form"))
    {
        npc::DispersionModel model = npc::DispersionModel::from_config(cfg);
        echo["dispersion_file"] = "(inline)";
        echo["dispersion_name"] = model.name();
        return model;
    }
    throw npc::ConfigError(cfg.origin() +
                           ": expected a dispersion_file entry or an inline [dispersion] section");
}

npc::PhaseMatchProblem build_problem(const npc::ConfigFile &cfg, const npc::DispersionModel &model,
                                     ordered_json &echo)
{
    const double pump = cfg.get_number("problem.pump_wavelength_um");
    const double temp = cfg.get_number("problem.temperature_c");
    const double tilt_deg = cfg.get_number("problem.internal_angle_deg");
    const double length_mm = cfg.get_number("problem.crystal_length_mm");
    const bool has_s = cfg.has("problem.signal_wavelength_um");
    const bool has_i = cfg.has("problem.idler_wavelength_um");
    if (has_s != has_i)
    {
        throw npc::ConfigError(cfg.origin() +
                               ": signal and idler wavelengths must be given together");
    }
    echo["pump_wavelength_um"] = pump;
    echo["temperature_c"] = temp;
    echo["internal_angle_deg"] = tilt_deg;
    echo["crystal_length_mm"] = length_mm;
    if (has_s)
    {
        const double sig = cfg.get_number("problem.signal_wavelength_um");
        const double idl = cfg.get_number("problem.idler_wavelength_um");
        echo["signal_wavelength_um"] = sig;
        echo["idler_wavelength_um"] = idl;
        return npc::PhaseMatchProblem(model, pump, sig, idl, temp, tilt_deg * kDegToRad,
                                      length_mm * 1000.0);
    }
    echo["signal_wavelength_um"] = 2.0 * pump;
    echo["idler_wavelength_um"] = 2.0 * pump;
    return npc::PhaseMatchProblem::degenerate(model, pump, temp, tilt_deg * kDegToRad,
                                              length_mm * 1000.0);
}

npc::MotifShape motif_from(const npc::ConfigFile &cfg, const std::string &section,
                           ordered_json &echo)
{
    if (cfg.has(section + ".motif_half_x_um"))
    {
        const double hx = cfg.get_number(section + ".motif_half_x_um");
        const double hy = cfg.get_number(section + ".motif_half_y_um");
        echo["motif"] = "rectangle";
        echo["motif_half_x_um"] = hx;
        echo["motif_half_y_um"] = hy;
        return npc::MotifShape::rectangle(hx, hy);
    }
    const double radius = cfg.get_number(section + ".motif_radius_um");
    echo["motif"] = "circle";
    echo["motif_radius_um"] = radius;
    return npc::MotifShape::circle(radius);
}

npc::ImperfectionModel imperfections_from(const npc::ConfigFile &cfg, ordered_json &echo)
{
    npc::ImperfectionModel imp;
    imp.coupler_transmittance =
        cfg.get_number_or("imperfections.coupler_transmittance", imp.coupler_transmittance);
    const double rot_deg = cfg.get_number_or("imperfections.polarization_rotation_deg", 0.0);
    imp.polarization_rotation_rad = rot_deg * kDegToRad;
    imp.residual_ellipticity =
        cfg.get_number_or("imperfections.residual_ellipticity", imp.residual_ellipticity);
    imp.multipair_fraction =
        cfg.get_number_or("imperfections.multipair_fraction", imp.multipair_fraction);
    imp.background_pair_ratio =
        cfg.get_number_or("imperfections.background_pair_ratio", imp.background_pair_ratio);
    imp.validate();
    echo["coupler_transmittance"] = imp.coupler_transmittance;
    echo["polarization_rotation_deg"] = rot_deg;
    echo["residual_ellipticity"] = imp.residual_ellipticity;
    echo["multipair_fraction"] = imp.multipair_fraction;
    echo["background_pair_ratio"] = imp.background_pair_ratio;
    return imp;
}

int require_int(double value, const std::string &what)
{
    const double rounded = std::nearbyint(value);
    if (std::fabs(value - rounded) > 1e-9)
    {
        throw npc::ConfigError(what + " must be an integer, got " + npc::format_double(value));
    }
    return static_cast<int>(rounded);
}

std::string iso_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return std::string(buf);
}

void write_manifest(const fs::path &path, const std::string &command, const RunOptions &opt,
                    const ordered_json &parameters, const std::vector<std::string> &outputs)
{
    ordered_json m;
    m["command"] = command;
    m["tool"] = npc::kToolName;
    m["version"] = npc::kToolVersion;
    m["config"] = opt.config_path;
    m["config_hash_fnv1a"] = npc::fnv1a_file_hex(opt.config_path);
    m["overrides"] = opt.overrides;
    m["parameters"] = parameters;
    m["outputs"] = outputs;
    m["generated_at"] = iso_timestamp();
    std::ofstream out(path, std::ios::binary);
    out << m.dump(2) << '\n';
    if (!out)
    {
        throw std::runtime_error("cannot write manifest: " + path.string());
    }
}

std::vector<std::uint8_t> grayscale_from_intensity(const npc::PatternGrid &grid)
{
    // Top image row = largest vertical angle.
    std::vector<std::uint8_t> gray;
    gray.reserve(static_cast<std::size_t>(grid.pixels) * grid.pixels);
    for (int iy = grid.pixels - 1; iy >= 0; --iy)
    {
        for (int ix = 0; ix < grid.pixels; ++ix)
        {
            const double v = std::clamp(grid.at(ix, iy), 0.0, 1.0);
            gray.push_back(static_cast<std::uint8_t>(std::lround(255.0 * v)));
        }
    }
    return gray;
}

int run_design(const RunOptions &opt)
{
    const npc::ConfigFile cfg = load_run_config(opt);
    ordered_json params;
    const npc::DispersionModel model = load_dispersion(cfg, opt, params);
    const npc::PhaseMatchProblem problem = build_problem(cfg, model, params);

    const std::vector<std::vector<double>> orders = cfg.get_nested_array("design.orders");
    const double radius = cfg.get_number("design.motif_radius_um");
    const int grid = require_int(cfg.get_number_or("design.numeric_check_grid", 512),
                                 "design.numeric_check_grid");
    params["motif_radius_um"] = radius;
    params["numeric_check_grid"] = grid;

    std::vector<std::vector<std::string>> rows;
    ordered_json order_echo = ordered_json::array();
    for (const std::vector<double> &order : orders)
    {
        if (order.size() != 2)
        {
            throw npc::ConfigError(cfg.origin() + ": design.orders entries must be [m, n] pairs");
        }
        const int m = require_int(order[0], "design.orders m");
        const int n = require_int(order[1], "design.orders n");
        order_echo.push_back({m, n});
        const npc::QpmPeriods periods = npc::solve_periods(problem, m, n);

        std::vector<std::string> row;
        row.push_back(std::to_string(m));
        row.push_back(std::to_string(n));
        row.push_back(npc::format_double(periods.period_x_um));
        row.push_back(npc::format_double(periods.period_y_um));
        if (std::isfinite(periods.period_y_um))
        {
            // The configured disk may not fit finer-period orders (poling
            // resolution is the reason higher orders exist); report the
            // feasibility and fill the motif columns only when it does.
            const double min_spacing = std::min(periods.period_x_um, periods.period_y_um);
            const bool fits = 2.0 * radius < min_spacing;
            const npc::NpcLattice lattice = npc::NpcLattice::rectangular(
                periods.period_x_um, periods.period_y_um,
                npc::MotifShape::circle(fits ? radius : 0.2 * min_spacing));
            const npc::Mismatch rem = npc::mismatch(problem, lattice, m, n);
            row.push_back(npc::format_double(rem.dkx));
            row.push_back(npc::format_double(rem.dky));
            row.push_back(fits ? "1" : "0");
            if (fits)
            {
                const double analytic = npc::fourier_coefficient_analytic(lattice, m, n);
                const double numeric = npc::fourier_coefficient_numeric(lattice, m, n, grid);
                row.push_back(npc::format_double(npc::fill_factor(lattice)));
                row.push_back(npc::format_double(analytic));
                row.push_back(
                    npc::format_double(npc::fourier_coefficient_analytic_swapped(lattice, m, n)));
                row.push_back(npc::format_double(numeric));
                row.push_back(npc::format_double(std::fabs(std::fabs(analytic) - numeric)));
            }
            else
            {
                for (int k = 0; k < 5; ++k)
                {
                    row.push_back("nan");
                }
            }
        }
        else
        {
            // Collinear order: no finite transverse cell to build a motif in.
            for (int k = 0; k < 8; ++k)
            {
                row.push_back("nan");
            }
        }
        rows.push_back(std::move(row));
    }
    params["orders"] = order_echo;

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    npc::write_csv_text(
        (out / "design.csv").string(),
        {"order_m_index", "order_n_index", "period_x_um", "period_y_um",
         "residual_dkx_rad_per_um", "residual_dky_rad_per_um", "motif_fits_flag",
         "fill_factor_ratio", "coef_analytic_ratio", "coef_transposed_ratio",
         "coef_numeric_ratio", "coef_abs_error_ratio"},
        rows);
    std::vector<std::string> outputs{"design.csv"};

    if (cfg.has("design.optimize_order"))
    {
        const std::vector<double> oo = cfg.get_array("design.optimize_order");
        if (oo.size() != 2)
        {
            throw npc::ConfigError(cfg.origin() + ": design.optimize_order must be [m, n]");
        }
        const int m = require_int(oo[0], "design.optimize_order m");
        const int n = require_int(oo[1], "design.optimize_order n");
        const npc::QpmPeriods periods = npc::solve_periods(problem, m, n);
        if (!std::isfinite(periods.period_y_um))
        {
            throw npc::NoSolutionError("cannot optimize a motif on a collinear order");
        }
        const double min_spacing = std::min(periods.period_x_um, periods.period_y_um);
        const bool fits = 2.0 * radius < min_spacing;
        const npc::NpcLattice lattice = npc::NpcLattice::rectangular(
            periods.period_x_um, periods.period_y_um,
            npc::MotifShape::circle(fits ? radius : 0.2 * min_spacing));
        const npc::RadiusOptimum best = npc::optimize_motif_radius(lattice, m, n);
        npc::write_csv_text(
            (out / "motif_optimum.csv").string(),
            {"order_m_index", "order_n_index", "radius_opt_um", "coef_opt_ratio",
             "radius_configured_um", "coef_configured_ratio"},
            {{std::to_string(m), std::to_string(n), npc::format_double(best.radius_um),
              npc::format_double(best.coefficient), npc::format_double(radius),
              fits ? npc::format_double(npc::fourier_coefficient_analytic(lattice, m, n))
                   : "nan"}});
        outputs.push_back("motif_optimum.csv");
        params["optimize_order"] = {m, n};
    }

    write_manifest(out / "design_manifest.json", "design", opt, params, outputs);
    return 0;
}

int run_pattern(const RunOptions &opt)
{
    const npc::ConfigFile cfg = load_run_config(opt);
    ordered_json params;
    const npc::DispersionModel model = load_dispersion(cfg, opt, params);
    const npc::PhaseMatchProblem problem = build_problem(cfg, model, params);

    npc::MotifShape motif = motif_from(cfg, "lattice", params);
    double period_x = 0.0;
    double period_y = 0.0;
    if (cfg.has("lattice.period_x_um"))
    {
        period_x = cfg.get_number("lattice.period_x_um");
        period_y = cfg.get_number("lattice.period_y_um");
    }
    else
    {
        // Freeze the lattice at its design point, then scan at the problem's
        // own (possibly detuned) temperature.
        const std::vector<double> order = cfg.get_array("lattice.design_order");
        if (order.size() != 2)
        {
            throw npc::ConfigError(cfg.origin() + ": lattice.design_order must be [m, n]");
        }
        const int m = require_int(order[0], "lattice.design_order m");
        const int n = require_int(order[1], "lattice.design_order n");
        const double design_temp =
            cfg.get_number_or("lattice.design_temperature_c", problem.temperature_c);
        const npc::PhaseMatchProblem at_design(model, problem.lambda_p_um, problem.lambda_s_um,
                                               problem.lambda_i_um, design_temp,
                                               problem.emission_angle_rad,
                                               problem.crystal_length_um);
        const npc::QpmPeriods periods = npc::solve_periods(at_design, m, n);
        if (!std::isfinite(periods.period_y_um))
        {
            throw npc::NoSolutionError("pattern needs a finite transverse period; "
                                       "pick a non-collinear design order");
        }
        period_x = periods.period_x_um;
        period_y = periods.period_y_um;
        params["design_order"] = {m, n};
        params["design_temperature_c"] = design_temp;
    }
    params["period_x_um"] = period_x;
    params["period_y_um"] = period_y;
    const npc::NpcLattice lattice = npc::NpcLattice::rectangular(period_x, period_y, motif);

    const int max_m = require_int(cfg.get_number_or("pattern.max_order_m", 2), "pattern.max_order_m");
    const int max_n = require_int(cfg.get_number_or("pattern.max_order_n", 1), "pattern.max_order_n");
    const double half_deg = cfg.get_number("pattern.half_angle_ext_deg");
    const int pixels = require_int(cfg.get_number("pattern.pixels"), "pattern.pixels");
    params["max_order_m"] = max_m;
    params["max_order_n"] = max_n;
    params["half_angle_ext_deg"] = half_deg;
    params["pixels"] = pixels;

    const npc::PatternGrid grid =
        npc::pattern_scan(problem, lattice, max_m, max_n, half_deg * kDegToRad, pixels);

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(pixels) * pixels);
    for (int iy = 0; iy < pixels; ++iy)
    {
        for (int ix = 0; ix < pixels; ++ix)
        {
            rows.push_back({grid.angle_at(ix) / kDegToRad, grid.angle_at(iy) / kDegToRad,
                            grid.at(ix, iy)});
        }
    }
    npc::write_csv((out / "pattern.csv").string(),
                   {"angle_x_ext_deg", "angle_y_ext_deg", "intensity_ratio"}, rows);
    npc::write_pgm((out / "pattern.pgm").string(), pixels, pixels,
                   grayscale_from_intensity(grid));

    write_manifest(out / "pattern_manifest.json", "pattern", opt, params,
                   {"pattern.csv", "pattern.pgm"});
    return 0;
}

int run_fringe(const RunOptions &opt)
{
    const npc::ConfigFile cfg = load_run_config(opt);
    ordered_json params;
    const double lambda = cfg.get_number("fringe.wavelength_um");
    const double delay_min = cfg.get_number("fringe.delay_min_um");
    const double delay_max = cfg.get_number("fringe.delay_max_um");
    const int steps = require_int(cfg.get_number("fringe.steps"), "fringe.steps");
    params["wavelength_um"] = lambda;
    params["delay_min_um"] = delay_min;
    params["delay_max_um"] = delay_max;
    params["steps"] = steps;
    ordered_json imp_echo;
    const npc::ImperfectionModel imp = imperfections_from(cfg, imp_echo);
    params["imperfections"] = imp_echo;

    const npc::FringeScan scan = npc::fringe_scan(lambda, delay_min, delay_max, steps, imp);

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    std::vector<std::vector<double>> rows;
    rows.reserve(scan.delay_um.size());
    for (std::size_t i = 0; i < scan.delay_um.size(); ++i)
    {
        rows.push_back({scan.delay_um[i], scan.singles_port1[i], scan.singles_port2[i],
                        scan.coincidence[i]});
    }
    npc::write_csv((out / "fringe.csv").string(),
                   {"delay_um", "singles1", "singles2", "coincidence_prob"}, rows);
    std::vector<std::string> outputs{"fringe.csv"};

    ordered_json results;
    results["visibility"] = scan.visibility;
    results["period_um"] = scan.period_um;
    if (opt.budget)
    {
        const npc::VisibilityBudget budget = npc::visibility_budget(imp);
        std::vector<std::vector<std::string>> brows;
        for (const npc::BudgetRow &row : budget.rows)
        {
            brows.push_back({row.cause, npc::format_double(row.visibility_alone), row.note});
        }
        npc::write_csv_text((out / "budget.csv").string(),
                            {"cause", "visibility_alone", "note"}, brows);
        outputs.push_back("budget.csv");
        results["composite_visibility"] = budget.composite;
    }
    params["results"] = results;

    write_manifest(out / "fringe_manifest.json", "fringe", opt, params, outputs);
    return 0;
}

int run_polscan(const RunOptions &opt)
{
    const npc::ConfigFile cfg = load_run_config(opt);
    ordered_json params;
    const double rot_min = cfg.get_number("polscan.rotation_min_deg");
    const double rot_max = cfg.get_number_or("polscan.rotation_max_deg", rot_min);
    const int steps = require_int(cfg.get_number_or("polscan.steps", 1), "polscan.steps");
    if (steps < 1)
    {
        throw npc::ConfigError(cfg.origin() + ": polscan.steps must be >= 1");
    }
    params["rotation_min_deg"] = rot_min;
    params["rotation_max_deg"] = rot_max;
    params["steps"] = steps;
    ordered_json imp_echo;
    const npc::ImperfectionModel imp = imperfections_from(cfg, imp_echo);
    params["imperfections"] = imp_echo;

    std::vector<double> rotations;
    rotations.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
    {
        const double t = (steps == 1) ? 0.0 : static_cast<double>(i) / (steps - 1);
        rotations.push_back((rot_min + (rot_max - rot_min) * t) * kDegToRad);
    }
    const std::vector<npc::PolarizationPoint> curve =
        npc::polarization_visibility_curve(rotations, imp);

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    std::vector<std::vector<double>> rows;
    rows.reserve(curve.size());
    for (const npc::PolarizationPoint &point : curve)
    {
        rows.push_back({point.rotation_rad / kDegToRad, point.visibility});
    }
    npc::write_csv((out / "polscan.csv").string(), {"rotation_deg", "visibility_ratio"}, rows);

    write_manifest(out / "polscan_manifest.json", "polscan", opt, params, {"polscan.csv"});
    return 0;
}

int run_lattice_check(const RunOptions &opt)
{
    const npc::ConfigFile cfg = load_run_config(opt);
    ordered_json params;
    npc::MotifShape motif = motif_from(cfg, "lattice", params);
    npc::NpcLattice lattice = [&]()
    {
        if (cfg.has("lattice.period_x_um"))
        {
            const double px = cfg.get_number("lattice.period_x_um");
            const double py = cfg.get_number("lattice.period_y_um");
            params["period_x_um"] = px;
            params["period_y_um"] = py;
            return npc::NpcLattice::rectangular(px, py, motif);
        }
        const std::vector<double> pa = cfg.get_array("lattice.primitive_a_um");
        const std::vector<double> pb = cfg.get_array("lattice.primitive_b_um");
        if (pa.size() != 2 || pb.size() != 2)
        {
            throw npc::ConfigError(cfg.origin() +
                                   ": lattice primitives must be [x, y] pairs in micrometers");
        }
        params["primitive_a_um"] = pa;
        params["primitive_b_um"] = pb;
        return npc::NpcLattice::from_primitives({pa[0], pa[1]}, {pb[0], pb[1]}, motif);
    }();

    const double tol = cfg.get_number_or("lattice_check.tolerance_rad_per_um", 1e-3);
    const std::vector<std::vector<double>> queries =
        cfg.get_nested_array("lattice_check.queries_rad_per_um");
    params["tolerance_rad_per_um"] = tol;
    params["query_count"] = queries.size();

    std::vector<std::vector<std::string>> rows;
    for (const std::vector<double> &query : queries)
    {
        if (query.size() != 2)
        {
            throw npc::ConfigError(cfg.origin() +
                                   ": lattice_check queries must be [gx, gy] pairs");
        }
        int m = 0;
        int n = 0;
        const bool found = npc::has_lattice_point_at(lattice, query[0], query[1], tol, &m, &n);
        rows.push_back({npc::format_double(query[0]), npc::format_double(query[1]),
                        found ? "1" : "0", found ? std::to_string(m) : "nan",
                        found ? std::to_string(n) : "nan"});
    }

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    npc::write_csv_text((out / "lattice_check.csv").string(),
                        {"query_gx_rad_per_um", "query_gy_rad_per_um", "found_flag",
                         "order_m_index", "order_n_index"},
                        rows);
    std::vector<std::string> outputs{"lattice_check.csv"};

    if (cfg.has("domain_map.window_w_um"))
    {
        const double w = cfg.get_number("domain_map.window_w_um");
        const double h = cfg.get_number("domain_map.window_h_um");
        const double res = cfg.get_number("domain_map.resolution_px_per_um");
        const npc::DomainMap map = npc::render_domain_map(lattice, w, h, res);
        std::vector<std::uint8_t> gray;
        gray.reserve(static_cast<std::size_t>(map.width) * map.height);
        for (int iy = map.height - 1; iy >= 0; --iy)
        {
            for (int ix = 0; ix < map.width; ++ix)
            {
                gray.push_back(map.at(ix, iy) > 0 ? 255 : 0);
            }
        }
        npc::write_pgm((out / "domain_map.pgm").string(), map.width, map.height, gray);
        std::vector<std::vector<double>> sign_rows;
        sign_rows.reserve(static_cast<std::size_t>(map.width) * map.height);
        for (int iy = 0; iy < map.height; ++iy)
        {
            for (int ix = 0; ix < map.width; ++ix)
            {
                sign_rows.push_back({map.origin_x_um + ix * map.step_um,
                                     map.origin_y_um + iy * map.step_um,
                                     static_cast<double>(map.at(ix, iy))});
            }
        }
        npc::write_csv((out / "domain_map.csv").string(), {"x_um", "y_um", "sign_pm1"},
                       sign_rows);
        outputs.push_back("domain_map.pgm");
        outputs.push_back("domain_map.csv");
        params["domain_map_window_um"] = {w, h};
        params["domain_map_resolution_px_per_um"] = res;
        params["domain_map_inverted_fraction"] = map.inverted_fraction();
        params["domain_map_undersampled_motif"] = map.undersampled_motif;
    }

    write_manifest(out / "lattice_check_manifest.json", "lattice-check", opt, params, outputs);
    return 0;
}
}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"2D nonlinear-photonic-crystal pair-source design toolkit"};
    app.require_subcommand(1);

    RunOptions opt;
    int rc = 0;
    const auto add_common = [&opt](CLI::App *cmd)
    {
        cmd->add_option("--config", opt.config_path, "Run configuration file")->required();
        cmd->add_option("--out", opt.out_dir, "Output directory, created if missing");
        cmd->add_option("--override", opt.overrides,
                        "section.key=value config override (repeatable)");
    };

    CLI::App *design =
        app.add_subcommand("design", "Solve poling periods and motif Fourier coefficients");
    add_common(design);
    design->callback([&]() { rc = run_design(opt); });

    CLI::App *pattern =
        app.add_subcommand("pattern", "Far-field intensity map of a fixed lattice");
    add_common(pattern);
    pattern->callback([&]() { rc = run_pattern(opt); });

    CLI::App *fringe =
        app.add_subcommand("fringe", "Coincidence fringe over a path-delay scan");
    add_common(fringe);
    fringe->add_flag("--budget", opt.budget, "Also write the per-cause visibility budget");
    fringe->callback([&]() { rc = run_fringe(opt); });

    CLI::App *polscan =
        app.add_subcommand("polscan", "Visibility versus relative polarization rotation");
    add_common(polscan);
    polscan->callback([&]() { rc = run_polscan(opt); });

    CLI::App *lattice_check = app.add_subcommand(
        "lattice-check", "Membership test of reciprocal-space vectors on a lattice");
    add_common(lattice_check);
    lattice_check->callback([&]() { rc = run_lattice_check(opt); });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }
    catch (const npc::ConfigError &e)
    {
        std::fprintf(stderr, "%s: config error: %s\n", npc::kToolName, e.what());
        return 2;
    }
    catch (const npc::DispersionRangeError &e)
    {
        std::fprintf(stderr, "%s: config error: %s\n", npc::kToolName, e.what());
        return 2;
    }
    catch (const std::invalid_argument &e)
    {
        std::fprintf(stderr, "%s: config error: %s\n", npc::kToolName, e.what());
        return 2;
    }
    catch (const npc::NoSolutionError &e)
    {
        std::fprintf(stderr, "%s: no physical solution: %s\n", npc::kToolName, e.what());
        return 3;
    }
    catch (const npc::NumericError &e)
    {
        std::fprintf(stderr, "%s: numeric failure: %s\n", npc::kToolName, e.what());
        return 4;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "%s: error: %s\n", npc::kToolName, e.what());
        return 4;
    }
    return rc;
}
