#ifndef NPC_QUANTUM_HPP
#define NPC_QUANTUM_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace npc
{
// Two-mode Fock state truncated at a total photon number: complex amplitudes
// over |a, b> with a + b <= n_max. Basis order groups states by total t and
// runs a = 0..t inside each group.
struct TwoModeState
{
    int n_max = 0;
    std::vector<std::complex<double>> amplitudes;

    explicit TwoModeState(int n_max_in);
    static TwoModeState fock(int n_max, int a, int b);

    static int basis_size(int n_max) { return (n_max + 1) * (n_max + 2) / 2; }
    static int index_of(int a, int b) { return (a + b) * (a + b + 1) / 2 + a; }

    std::complex<double> amplitude(int a, int b) const;
    void set_amplitude(int a, int b, std::complex<double> value);
    double norm_squared() const;
    void normalize();
};

// (|2,0> + e^{2 i phi} |0,2>) / sqrt(2): the path-entangled pair state whose
// doubled phase gives the half-wavelength fringe.
TwoModeState make_path_entangled_state(double phi_rad);

// Lossless two-port mixing a -> sqrt(T) c + i sqrt(1-T) d,
//                          b -> i sqrt(1-T) c + sqrt(T) d
// applied to every Fock component by multinomial expansion. The symmetric
// i-phase convention makes the balanced-coupler |1,1> weight come out as
// |(1 + e^{2 i phi}) / 2|^2; any other lossless convention differs only by
// phases absorbable into phi.
TwoModeState beamsplitter(const TwoModeState &state, double transmittance);

// Probability that threshold detectors on both output ports click:
// sum of |amplitude|^2 over components with a >= 1 and b >= 1.
double coincidence_probability(const TwoModeState &state);

// Expected photon number per port.
std::pair<double, double> singles_expectation(const TwoModeState &state);

// Delay-independent coincidence probability of a double-pair event averaged
// over the relative fringe phase: 1 - (3/4) [ (T^2+R^2)^2 + 2 T^2 R^2 ].
// Equals 23/32 at T = 1/2; cross-validated against the four-photon state
// machinery in the tests.
double accidental_coincidence_floor(double transmittance);

// Experiment imperfections entering the fringe model.
struct ImperfectionModel
{
    double coupler_transmittance = 0.5;    // T in (0,1), R = 1 - T
    double polarization_rotation_rad = 0.0;  // relative rotation between paths
    double residual_ellipticity = 0.0;     // [0,1): overlap floor at 90 deg
    double multipair_fraction = 0.0;       // [0,1): double-pair share of events
    double background_pair_ratio = 0.0;    // >= 0: anti-bunched |1,1> pairs vs desired

    void validate() const;

    // Fraction of the pair amplitude that still interferes after the
    // polarization rotation: (1-eps) cos^2(theta) + eps sin^2(theta).
    // At theta = 90 deg the fringe floor equals the ellipticity.
    double interfering_overlap() const;

    double background_weight() const;  // beta / (1 + beta)
    double ideal_weight() const;       // 1 - p4 - background_weight
};

struct FringeScan
{
    std::vector<double> delay_um;
    std::vector<double> singles_port1;
    std::vector<double> singles_port2;
    std::vector<double> coincidence;
    double visibility = 0.0;
    double period_um = 0.0;  // NaN when the trace is flat
};

// Coincidence fringe over a path-delay scan. Per delay d the single-photon
// phase is phi = 2 pi d / lambda; the detected mixture combines
//   ideal_weight * path-entangled pairs,
//   background_weight * anti-bunched |1,1> pairs,
//   multipair_fraction * the accidental floor,
// with the interfering overlap splitting the first two into a coherent part
// (run through the state machinery) and an incoherent remainder. Requires
// steps >= 16 and a delay range covering at least two fringe periods
// (one wavelength).
FringeScan fringe_scan(double lambda_um, double delay_min_um, double delay_max_um, int steps,
                       const ImperfectionModel &imperfections);

// Closed-form visibility of the same composite model; fringe_scan extraction
// and this expression agree to solver tolerance.
double composite_visibility(const ImperfectionModel &imperfections);

struct BudgetRow
{
    std::string cause;
    double visibility_alone = 1.0;
    std::string note;
};

struct VisibilityBudget
{
    std::vector<BudgetRow> rows;
    double composite = 1.0;
};

// Per-cause visibility with every other cause switched off (coupler at 0.5,
// no rotation/ellipticity, no multi-pair, no background), plus the composite
// of the full model.
VisibilityBudget visibility_budget(const ImperfectionModel &imperfections);

struct PolarizationPoint
{
    double rotation_rad = 0.0;
    double visibility = 0.0;
};

// Visibility versus polarization rotation with the remaining imperfections
// taken from the base model (its own rotation is overridden per point).
std::vector<PolarizationPoint> polarization_visibility_curve(
    const std::vector<double> &rotations_rad, const ImperfectionModel &base);

// (max - min) / (max + min) of a sampled trace.
double fringe_visibility(const std::vector<double> &trace);

// Least-squares period of a sampled sinusoid a0 + a1 cos + a2 sin, located by
// scanning candidate periods and refining the best bracket. Returns NaN for a
// flat trace.
double fit_period(const std::vector<double> &x, const std::vector<double> &y);
}

#endif
