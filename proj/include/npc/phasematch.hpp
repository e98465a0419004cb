#ifndef NPC_PHASEMATCH_HPP
#define NPC_PHASEMATCH_HPP

#include <vector>

#include "npc/dispersion.hpp"
#include "npc/lattice.hpp"

namespace npc
{
// One pump -> signal + idler down-conversion geometry in the poling plane.
// The pump travels along +x; the pair is emitted together into a beam tilted
// by emission_angle_rad (internal, measured from the pump axis). Energy
// conservation 1/lambda_p = 1/lambda_s + 1/lambda_i is enforced on
// construction to one part in 1e9.
struct PhaseMatchProblem
{
    DispersionModel dispersion;
    double lambda_p_um = 0.0;
    double lambda_s_um = 0.0;
    double lambda_i_um = 0.0;
    double temperature_c = 0.0;
    double emission_angle_rad = 0.0;  // internal pair-beam tilt, [0, 5 deg]
    double crystal_length_um = 0.0;

    PhaseMatchProblem(DispersionModel dispersion, double lambda_p_um, double lambda_s_um,
                      double lambda_i_um, double temperature_c, double emission_angle_rad,
                      double crystal_length_um);

    // lambda_s = lambda_i = 2 lambda_p.
    static PhaseMatchProblem degenerate(DispersionModel dispersion, double lambda_p_um,
                                        double temperature_c, double emission_angle_rad,
                                        double crystal_length_um);

    double pump_wavevector() const;    // rad/um at temperature_c
    double pair_wavevector_sum() const;  // k_s + k_i at temperature_c
};

struct QpmPeriods
{
    double period_x_um = 0.0;  // longitudinal poling period
    double period_y_um = 0.0;  // transverse; +inf when no y modulation is needed
};

// Poling periods that zero both mismatch components for order (m, n):
//   period_x = 2 pi m / (k_p - (k_s + k_i) cos theta)
//   period_y = 2 pi n / ((k_s + k_i) sin theta)
// m must be >= 1 and n >= 0. The collinear case (n = 0, theta = 0) returns
// period_y = +inf. A geometry whose transverse balance cannot be closed at
// any finite period (n = 0 with theta > 0, or n > 0 with theta = 0) raises
// NoSolutionError.
QpmPeriods solve_periods(const PhaseMatchProblem &problem, int m, int n);

struct Mismatch
{
    double dkx = 0.0;  // rad/um, longitudinal
    double dky = 0.0;  // rad/um, transverse
};

// Residual wavevector mismatch of order (m, n) on a concrete lattice:
//   dkx = k_p - (k_s + k_i) cos theta - G_x(m, n)
//   dky = (k_s + k_i) sin theta - G_y(m, n)
// following the convention that a positive-n order feeds the +theta beam.
Mismatch mismatch(const PhaseMatchProblem &problem, const NpcLattice &lattice, int m, int n);

// What a fixed lattice emits at order (m, n) once the design knobs move
// (temperature, wavelength): the pair's center-of-mass wavevector is
// Q = (k_p - G_x, G_y), its tilt from the pump axis is the emission axis,
// and the residual mismatch minimized over pair directions in the paraxial
// window (0, 5 deg] is | |Q| - (k_s + k_i) |.
//
//   beamlike : the residual vanishes (< 1e-9 rad/um): an exact solution, a
//              single pair beam along the Q direction.
//   cone     : no exact direction, but the residual sits inside the
//              longitudinal acceptance 2 pi / L, or |Q| < k_s + k_i so the
//              transverse excess opens a cone of half-angle
//              acos(|Q| / (k_s+k_i)) about the axis (0 when the order is
//              merely tuned off through the acceptance).
//   none     : the residual exceeds the acceptance with |Q| > k_s + k_i;
//              momentum conservation cannot be closed and the order is dark.
struct EmissionSolution
{
    enum class Kind
    {
        beamlike,
        cone,
        none
    };

    Kind kind = Kind::none;
    double axis_angle_rad = 0.0;       // internal |tilt| of Q from the pump axis
    double cone_half_angle_rad = 0.0;  // 0 for beamlike / tuned-off
    double residual_rad_per_um = 0.0;  // |Q| - (k_s + k_i)
};

EmissionSolution emission_angle(const PhaseMatchProblem &problem, const NpcLattice &lattice,
                                int m, int n);

struct TuningPoint
{
    double temperature_c = 0.0;
    double residual_rad_per_um = 0.0;
    EmissionSolution::Kind kind = EmissionSolution::Kind::none;
    double axis_angle_rad = 0.0;
    double cone_half_angle_rad = 0.0;
};

std::vector<TuningPoint> temperature_tuning_curve(const PhaseMatchProblem &problem,
                                                  const NpcLattice &lattice, int m, int n,
                                                  double t_min_c, double t_max_c, int samples);

// Temperature at which order (m, n) crosses between dark (|Q| > k_s + k_i)
// and emitting, located by bisection on the residual. Requires a sign change
// across [t_lo_c, t_hi_c]; raises NoSolutionError otherwise.
double threshold_temperature(const PhaseMatchProblem &problem, const NpcLattice &lattice,
                             int m, int n, double t_lo_c, double t_hi_c);

// Far-field intensity map over external emission angles (pump axis at the
// center). Each contributing order (m = 1..max_m, |n| <= max_n) adds
//   |kappa_mn|^2 * sinc^2(L/2 * dK_long(kperp))
// where the pair splits a transverse kick Q_perp between its two photons:
//   dK_long = (k_p - G_x) - sqrt(k_s^2 - |kperp|^2) - sqrt(k_i^2 - |Q_perp - kperp|^2).
// External angles map to internal transverse wavevectors through Snell's law
// at the exit face; directions that would be evanescent contribute nothing.
// The map is normalized to a peak of 1.
struct PatternGrid
{
    int pixels = 0;                   // square: pixels x pixels
    double half_angle_ext_rad = 0.0;  // window is [-half, +half] on both axes
    std::vector<double> intensity;    // row-major, normalized
    double at(int ix, int iy) const { return intensity[static_cast<std::size_t>(iy) * pixels + ix]; }
    double angle_at(int index) const;  // pixel center -> external angle
};

PatternGrid pattern_scan(const PhaseMatchProblem &problem, const NpcLattice &lattice,
                         int max_m, int max_n, double half_angle_ext_rad, int pixels);
}

#endif
