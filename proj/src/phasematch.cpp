#include "npc/phasematch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "npc/bessel.hpp"
#include "npc/errors.hpp"

namespace npc
{
namespace
{
constexpr double kPi = 3.14159265358979323846;
constexpr double kMaxTiltRad = 5.0 * kPi / 180.0;

double sinc(double x)
{
    if (std::fabs(x) < 1e-8)
    {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}
}

PhaseMatchProblem::PhaseMatchProblem(DispersionModel dispersion_in, double lambda_p,
                                     double lambda_s, double lambda_i, double temperature,
                                     double tilt_rad, double length_um)
    : dispersion(std::move(dispersion_in)),
      lambda_p_um(lambda_p),
      lambda_s_um(lambda_s),
      lambda_i_um(lambda_i),
      temperature_c(temperature),
      emission_angle_rad(tilt_rad),
      crystal_length_um(length_um)
{
    if (!(lambda_p > 0.0) || !(lambda_s > 0.0) || !(lambda_i > 0.0))
    {
        throw std::invalid_argument("wavelengths must be positive");
    }
    const double lhs = 1.0 / lambda_p;
    const double rhs = 1.0 / lambda_s + 1.0 / lambda_i;
    if (std::fabs(lhs - rhs) > 1e-9 * lhs)
    {
        throw std::invalid_argument(
            "energy conservation violated: 1/lambda_p must equal 1/lambda_s + 1/lambda_i");
    }
    if (!(tilt_rad >= 0.0) || tilt_rad > kMaxTiltRad)
    {
        throw std::invalid_argument("emission angle must lie in [0, 5] degrees (internal)");
    }
    if (!(length_um > 0.0))
    {
        throw std::invalid_argument("crystal length must be positive");
    }
}

PhaseMatchProblem PhaseMatchProblem::degenerate(DispersionModel dispersion, double lambda_p_um,
                                                double temperature_c, double emission_angle_rad,
                                                double crystal_length_um)
{
    return PhaseMatchProblem(std::move(dispersion), lambda_p_um, 2.0 * lambda_p_um,
                             2.0 * lambda_p_um, temperature_c, emission_angle_rad,
                             crystal_length_um);
}

double PhaseMatchProblem::pump_wavevector() const
{
    return dispersion.wavevector_magnitude(lambda_p_um, temperature_c);
}

double PhaseMatchProblem::pair_wavevector_sum() const
{
    return dispersion.wavevector_magnitude(lambda_s_um, temperature_c) +
           dispersion.wavevector_magnitude(lambda_i_um, temperature_c);
}

QpmPeriods solve_periods(const PhaseMatchProblem &problem, int m, int n)
{
    if (m < 1)
    {
        throw std::invalid_argument("longitudinal order m must be >= 1");
    }
    if (n < 0)
    {
        throw std::invalid_argument("transverse order n must be >= 0");
    }
    const double kp = problem.pump_wavevector();
    const double ksum = problem.pair_wavevector_sum();
    const double theta = problem.emission_angle_rad;

    const double denom_x = kp - ksum * std::cos(theta);
    if (!(denom_x > 0.0))
    {
        throw NoSolutionError(
            "longitudinal mismatch is not positive: this geometry needs no forward poling "
            "and the requested order has no positive period");
    }

    QpmPeriods periods;
    periods.period_x_um = 2.0 * kPi * m / denom_x;

    const double denom_y = ksum * std::sin(theta);
    if (n == 0)
    {
        if (theta > 0.0)
        {
            throw NoSolutionError(
                "a tilted pair beam leaves transverse momentum unbalanced: order n = 0 "
                "cannot close it at any period");
        }
        periods.period_y_um = std::numeric_limits<double>::infinity();
    }
    else
    {
        if (!(denom_y > 0.0))
        {
            throw NoSolutionError(
                "collinear emission has no transverse mismatch: order n >= 1 would need an "
                "infinite transverse period");
        }
        periods.period_y_um = 2.0 * kPi * n / denom_y;
    }
    if (!std::isfinite(periods.period_x_um) || periods.period_x_um <= 0.0)
    {
        throw NumericError("longitudinal period did not evaluate to a positive finite value");
    }
    return periods;
}

Mismatch mismatch(const PhaseMatchProblem &problem, const NpcLattice &lattice, int m, int n)
{
    const double kp = problem.pump_wavevector();
    const double ksum = problem.pair_wavevector_sum();
    const double theta = problem.emission_angle_rad;
    const ReciprocalVector g = reciprocal_vector(lattice, m, n);
    Mismatch d;
    d.dkx = kp - ksum * std::cos(theta) - g.gx;
    d.dky = ksum * std::sin(theta) - g.gy;
    return d;
}

EmissionSolution emission_angle(const PhaseMatchProblem &problem, const NpcLattice &lattice,
                                int m, int n)
{
    const double kp = problem.pump_wavevector();
    const double ksum = problem.pair_wavevector_sum();
    const ReciprocalVector g = reciprocal_vector(lattice, m, n);

    // Pair center-of-mass wavevector once the grating has taken its share.
    const double qx = kp - g.gx;
    const double qy = g.gy;
    const double q = std::hypot(qx, qy);
    const double acceptance = 2.0 * kPi / problem.crystal_length_um;

    EmissionSolution sol;
    sol.residual_rad_per_um = q - ksum;
    sol.axis_angle_rad = std::fabs(std::atan2(qy, qx));

    // |Q| <= k_s + k_i always has exact solutions: the pair splits around the
    // axis on a cone with cos(half-angle) = |Q| / (k_s + k_i). A positive
    // residual leaves no exact direction; the order still radiates through
    // the longitudinal acceptance until the residual exceeds it.
    if (sol.residual_rad_per_um >= acceptance || sol.axis_angle_rad > kMaxTiltRad)
    {
        sol.kind = EmissionSolution::Kind::none;
        return sol;
    }
    if (std::fabs(sol.residual_rad_per_um) < 1e-9)
    {
        sol.kind = EmissionSolution::Kind::beamlike;
        return sol;
    }
    sol.kind = EmissionSolution::Kind::cone;
    if (q < ksum)
    {
        sol.cone_half_angle_rad = std::acos(std::min(1.0, q / ksum));
    }
    return sol;
}

std::vector<TuningPoint> temperature_tuning_curve(const PhaseMatchProblem &problem,
                                                  const NpcLattice &lattice, int m, int n,
                                                  double t_min_c, double t_max_c, int samples)
{
    if (samples < 2)
    {
        throw std::invalid_argument("temperature curve needs at least 2 samples");
    }
    if (!(t_max_c > t_min_c))
    {
        throw std::invalid_argument("temperature range must be increasing");
    }
    std::vector<TuningPoint> curve;
    curve.reserve(static_cast<std::size_t>(samples));
    PhaseMatchProblem probe = problem;
    for (int i = 0; i < samples; ++i)
    {
        probe.temperature_c = t_min_c + (t_max_c - t_min_c) * i / (samples - 1);
        const EmissionSolution sol = emission_angle(probe, lattice, m, n);
        TuningPoint point;
        point.temperature_c = probe.temperature_c;
        point.residual_rad_per_um = sol.residual_rad_per_um;
        point.kind = sol.kind;
        point.axis_angle_rad = sol.axis_angle_rad;
        point.cone_half_angle_rad = sol.cone_half_angle_rad;
        curve.push_back(point);
    }
    return curve;
}

double threshold_temperature(const PhaseMatchProblem &problem, const NpcLattice &lattice,
                             int m, int n, double t_lo_c, double t_hi_c)
{
    if (!(t_hi_c > t_lo_c))
    {
        throw std::invalid_argument("threshold search range must be increasing");
    }
    PhaseMatchProblem probe = problem;
    auto residual = [&](double t)
    {
        probe.temperature_c = t;
        return emission_angle(probe, lattice, m, n).residual_rad_per_um;
    };
    const double f_lo = residual(t_lo_c);
    const double f_hi = residual(t_hi_c);
    if (f_lo == 0.0)
    {
        return t_lo_c;
    }
    if (f_hi == 0.0)
    {
        return t_hi_c;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0))
    {
        throw NoSolutionError(
            "order does not cross between dark and emitting inside the temperature range");
    }
    return bisect_root(t_lo_c, t_hi_c, f_lo, residual, 1e-12);
}

double PatternGrid::angle_at(int index) const
{
    const double step = 2.0 * half_angle_ext_rad / pixels;
    return -half_angle_ext_rad + (index + 0.5) * step;
}

PatternGrid pattern_scan(const PhaseMatchProblem &problem, const NpcLattice &lattice,
                         int max_m, int max_n, double half_angle_ext_rad, int pixels)
{
    if (max_m < 1 || max_n < 0)
    {
        throw std::invalid_argument("pattern orders must satisfy max_m >= 1, max_n >= 0");
    }
    if (pixels < 3)
    {
        throw std::invalid_argument("pattern grid needs at least 3 pixels");
    }
    if (!(half_angle_ext_rad > 0.0))
    {
        throw std::invalid_argument("pattern window half-angle must be positive");
    }

    const double kp = problem.pump_wavevector();
    const double ks = problem.dispersion.wavevector_magnitude(problem.lambda_s_um, problem.temperature_c);
    const double ki = problem.dispersion.wavevector_magnitude(problem.lambda_i_um, problem.temperature_c);
    const double k_vac_s = 2.0 * kPi / problem.lambda_s_um;
    const double half_l = 0.5 * problem.crystal_length_um;

    struct OrderTerm
    {
        double q_long = 0.0;    // k_p - G_x
        double q_perp = 0.0;    // G_y, transverse kick shared by the pair
        double weight = 0.0;    // |Fourier coefficient|^2
    };
    std::vector<OrderTerm> orders;
    for (int m = 1; m <= max_m; ++m)
    {
        for (int n = -max_n; n <= max_n; ++n)
        {
            const ReciprocalVector g = reciprocal_vector(lattice, m, n);
            double kappa = 0.0;
            if (lattice.is_rectangular())
            {
                kappa = fourier_coefficient_analytic(lattice, m, n);
            }
            else
            {
                kappa = fourier_coefficient_numeric(lattice, m, n, 256);
            }
            OrderTerm term;
            term.q_long = kp - g.gx;
            term.q_perp = g.gy;
            term.weight = kappa * kappa;
            if (term.weight > 0.0)
            {
                orders.push_back(term);
            }
        }
    }

    PatternGrid grid;
    grid.pixels = pixels;
    grid.half_angle_ext_rad = half_angle_ext_rad;
    grid.intensity.assign(static_cast<std::size_t>(pixels) * static_cast<std::size_t>(pixels), 0.0);

    // The transverse wavevector is continuous across the exit face, so an
    // external direction (ax, ay) maps to kperp = (2 pi / lambda) sin(a).
    // The poling-plane transverse axis (the beam-splitting direction) is the
    // image x axis; y is out of plane.
    double peak = 0.0;
    for (int iy = 0; iy < pixels; ++iy)
    {
        const double k_out = k_vac_s * std::sin(grid.angle_at(iy));
        for (int ix = 0; ix < pixels; ++ix)
        {
            const double k_in = k_vac_s * std::sin(grid.angle_at(ix));
            double value = 0.0;
            for (const OrderTerm &term : orders)
            {
                const double s_long_sq = ks * ks - k_in * k_in - k_out * k_out;
                const double rem_in = term.q_perp - k_in;
                const double i_long_sq = ki * ki - rem_in * rem_in - k_out * k_out;
                if (s_long_sq <= 0.0 || i_long_sq <= 0.0)
                {
                    continue;  // evanescent on either photon
                }
                const double dk_long = term.q_long - std::sqrt(s_long_sq) - std::sqrt(i_long_sq);
                const double amp = sinc(half_l * dk_long);
                value += term.weight * amp * amp;
            }
            grid.intensity[static_cast<std::size_t>(iy) * pixels + ix] = value;
            peak = std::max(peak, value);
        }
    }
    if (peak > 0.0)
    {
        for (double &v : grid.intensity)
        {
            v /= peak;
        }
    }
    return grid;
}
}
