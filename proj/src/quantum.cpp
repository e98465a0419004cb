#include "npc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "npc/errors.hpp"

namespace npc
{
namespace
{
constexpr double kPi = 3.14159265358979323846;

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
    {
        f *= i;
    }
    return f;
}

double binomial(int n, int k)
{
    double c = 1.0;
    for (int i = 1; i <= k; ++i)
    {
        c *= static_cast<double>(n - k + i) / i;
    }
    return c;
}

std::complex<double> i_power(int k)
{
    switch (((k % 4) + 4) % 4)
    {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

void require_transmittance(double t)
{
    if (!(t > 0.0) || !(t < 1.0))
    {
        throw std::invalid_argument("transmittance must lie strictly between 0 and 1");
    }
}
}

TwoModeState::TwoModeState(int n_max_in) : n_max(n_max_in)
{
    if (n_max < 0)
    {
        throw std::invalid_argument("photon-number truncation must be non-negative");
    }
    amplitudes.assign(static_cast<std::size_t>(basis_size(n_max)), {0.0, 0.0});
}

TwoModeState TwoModeState::fock(int n_max, int a, int b)
{
    if (a < 0 || b < 0 || a + b > n_max)
    {
        throw std::invalid_argument("Fock occupation outside the truncated basis");
    }
    TwoModeState state(n_max);
    state.amplitudes[static_cast<std::size_t>(index_of(a, b))] = {1.0, 0.0};
    return state;
}

std::complex<double> TwoModeState::amplitude(int a, int b) const
{
    if (a < 0 || b < 0 || a + b > n_max)
    {
        return {0.0, 0.0};
    }
    return amplitudes[static_cast<std::size_t>(index_of(a, b))];
}

void TwoModeState::set_amplitude(int a, int b, std::complex<double> value)
{
    if (a < 0 || b < 0 || a + b > n_max)
    {
        throw std::invalid_argument("Fock occupation outside the truncated basis");
    }
    amplitudes[static_cast<std::size_t>(index_of(a, b))] = value;
}

double TwoModeState::norm_squared() const
{
    double total = 0.0;
    for (const std::complex<double> &amp : amplitudes)
    {
        total += std::norm(amp);
    }
    return total;
}

void TwoModeState::normalize()
{
    const double n2 = norm_squared();
    if (n2 <= 0.0)
    {
        throw NumericError("cannot normalize a zero state");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (std::complex<double> &amp : amplitudes)
    {
        amp *= inv;
    }
}

TwoModeState make_path_entangled_state(double phi_rad)
{
    TwoModeState state(2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    state.set_amplitude(2, 0, {inv_sqrt2, 0.0});
    state.set_amplitude(0, 2, std::polar(inv_sqrt2, 2.0 * phi_rad));
    return state;
}

TwoModeState beamsplitter(const TwoModeState &state, double transmittance)
{
    require_transmittance(transmittance);
    const double rt = std::sqrt(transmittance);
    const double rr = std::sqrt(1.0 - transmittance);

    TwoModeState out(state.n_max);
    for (int a = 0; a <= state.n_max; ++a)
    {
        for (int b = 0; a + b <= state.n_max; ++b)
        {
            const std::complex<double> amp = state.amplitude(a, b);
            if (amp == std::complex<double>(0.0, 0.0))
            {
                continue;
            }
            // (a^dag)^a (b^dag)^b expands term by term; j transmitted from
            // mode a, l cross-coupled from mode b land together in port c.
            const double in_norm = std::sqrt(factorial(a) * factorial(b));
            for (int j = 0; j <= a; ++j)
            {
                for (int l = 0; l <= b; ++l)
                {
                    const int p = j + l;
                    const int q = (a - j) + (b - l);
                    const int reflected = (a - j) + l;
                    const double magnitude = binomial(a, j) * binomial(b, l) *
                                             std::pow(rt, j + (b - l)) * std::pow(rr, reflected);
                    const std::complex<double> coeff = i_power(reflected) * magnitude;
                    const double out_norm = std::sqrt(factorial(p) * factorial(q));
                    const std::complex<double> add = amp * coeff * (out_norm / in_norm);
                    const int idx = TwoModeState::index_of(p, q);
                    out.amplitudes[static_cast<std::size_t>(idx)] += add;
                }
            }
        }
    }
    return out;
}

double coincidence_probability(const TwoModeState &state)
{
    double total = 0.0;
    for (int a = 1; a <= state.n_max; ++a)
    {
        for (int b = 1; a + b <= state.n_max; ++b)
        {
            total += std::norm(state.amplitude(a, b));
        }
    }
    return total;
}

std::pair<double, double> singles_expectation(const TwoModeState &state)
{
    double n1 = 0.0;
    double n2 = 0.0;
    for (int a = 0; a <= state.n_max; ++a)
    {
        for (int b = 0; a + b <= state.n_max; ++b)
        {
            const double w = std::norm(state.amplitude(a, b));
            n1 += a * w;
            n2 += b * w;
        }
    }
    return {n1, n2};
}

double accidental_coincidence_floor(double transmittance)
{
    require_transmittance(transmittance);
    const double t2 = transmittance * transmittance;
    const double r2 = (1.0 - transmittance) * (1.0 - transmittance);
    const double s = t2 + r2;
    return 1.0 - 0.75 * (s * s + 2.0 * t2 * r2);
}

void ImperfectionModel::validate() const
{
    if (!(coupler_transmittance > 0.0) || !(coupler_transmittance < 1.0))
    {
        throw std::invalid_argument("coupler transmittance must lie strictly between 0 and 1");
    }
    if (!std::isfinite(polarization_rotation_rad))
    {
        throw std::invalid_argument("polarization rotation must be finite");
    }
    if (!(residual_ellipticity >= 0.0) || !(residual_ellipticity < 1.0))
    {
        throw std::invalid_argument("residual ellipticity must lie in [0, 1)");
    }
    if (!(multipair_fraction >= 0.0) || !(multipair_fraction < 1.0))
    {
        throw std::invalid_argument("multi-pair fraction must lie in [0, 1)");
    }
    if (!(background_pair_ratio >= 0.0) || !std::isfinite(background_pair_ratio))
    {
        throw std::invalid_argument("background pair ratio must be non-negative and finite");
    }
    if (!(ideal_weight() > 0.0))
    {
        throw std::invalid_argument(
            "imperfections leave no weight for the desired pairs (multi-pair fraction plus "
            "background weight reaches 1)");
    }
}

double ImperfectionModel::interfering_overlap() const
{
    const double c = std::cos(polarization_rotation_rad);
    const double s = std::sin(polarization_rotation_rad);
    return (1.0 - residual_ellipticity) * c * c + residual_ellipticity * s * s;
}

double ImperfectionModel::background_weight() const
{
    return background_pair_ratio / (1.0 + background_pair_ratio);
}

double ImperfectionModel::ideal_weight() const
{
    return 1.0 - multipair_fraction - background_weight();
}

double fringe_visibility(const std::vector<double> &trace)
{
    if (trace.empty())
    {
        throw std::invalid_argument("visibility of an empty trace is undefined");
    }
    const auto [lo, hi] = std::minmax_element(trace.begin(), trace.end());
    const double sum = *hi + *lo;
    if (sum <= 0.0)
    {
        return 0.0;
    }
    return (*hi - *lo) / sum;
}

namespace
{
// Residual sum of squares of the best fit a0 + a1 cos(w x) + a2 sin(w x).
double sinusoid_rss(const std::vector<double> &x, const std::vector<double> &y, double omega)
{
    double s1 = 0.0, sc = 0.0, ss = 0.0, scc = 0.0, scs = 0.0, sss = 0.0;
    double sy = 0.0, syc = 0.0, sys = 0.0, syy = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const double c = std::cos(omega * x[i]);
        const double s = std::sin(omega * x[i]);
        s1 += 1.0;
        sc += c;
        ss += s;
        scc += c * c;
        scs += c * s;
        sss += s * s;
        sy += y[i];
        syc += y[i] * c;
        sys += y[i] * s;
        syy += y[i] * y[i];
    }
    // Solve the 3x3 normal equations by Cramer's rule.
    const double det = s1 * (scc * sss - scs * scs) - sc * (sc * sss - scs * ss) +
                       ss * (sc * scs - scc * ss);
    if (std::fabs(det) < 1e-30)
    {
        return std::numeric_limits<double>::infinity();
    }
    const double a0 = (sy * (scc * sss - scs * scs) - sc * (syc * sss - scs * sys) +
                       ss * (syc * scs - scc * sys)) /
                      det;
    const double a1 = (s1 * (syc * sss - sys * scs) - sy * (sc * sss - scs * ss) +
                       ss * (sc * sys - syc * ss)) /
                      det;
    const double a2 = (s1 * (scc * sys - scs * syc) - sc * (sc * sys - syc * ss) +
                       sy * (sc * scs - scc * ss)) /
                      det;
    return syy - (a0 * sy + a1 * syc + a2 * sys);
}
}

double fit_period(const std::vector<double> &x, const std::vector<double> &y)
{
    if (x.size() != y.size() || x.size() < 4)
    {
        throw std::invalid_argument("period fit needs matching arrays with at least 4 samples");
    }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (*hi - *lo <= 1e-13 * (std::fabs(*hi) + std::fabs(*lo) + 1e-300))
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto [x_lo, x_hi] = std::minmax_element(x.begin(), x.end());
    const double range = *x_hi - *x_lo;
    if (!(range > 0.0))
    {
        throw std::invalid_argument("period fit needs a spread of sample positions");
    }

    // Scan frequencies from one cycle per range up to the two-samples-per-cycle
    // limit, oversampled well past the Rayleigh resolution, then refine by
    // golden-section around the best candidate.
    const double mean_dx = range / (static_cast<double>(x.size()) - 1.0);
    const double f_min = 0.5 / range;
    const double f_max = 0.5 / mean_dx;
    const int steps = std::max(64, static_cast<int>(std::ceil((f_max - f_min) * range * 16.0)));
    double best_f = f_min;
    double best_rss = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i)
    {
        const double f = f_min + (f_max - f_min) * i / steps;
        const double rss = sinusoid_rss(x, y, 2.0 * kPi * f);
        if (rss < best_rss)
        {
            best_rss = rss;
            best_f = f;
        }
    }
    double a = std::max(f_min, best_f - (f_max - f_min) / steps);
    double b = std::min(f_max, best_f + (f_max - f_min) / steps);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = sinusoid_rss(x, y, 2.0 * kPi * c);
    double fd = sinusoid_rss(x, y, 2.0 * kPi * d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-14 * best_f; ++iter)
    {
        if (fc < fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = sinusoid_rss(x, y, 2.0 * kPi * c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = sinusoid_rss(x, y, 2.0 * kPi * d);
        }
    }
    return 1.0 / (0.5 * (a + b));
}

FringeScan fringe_scan(double lambda_um, double delay_min_um, double delay_max_um, int steps,
                       const ImperfectionModel &imperfections)
{
    imperfections.validate();
    if (!(lambda_um > 0.0))
    {
        throw std::invalid_argument("wavelength must be positive");
    }
    if (steps < 16)
    {
        throw std::invalid_argument("fringe scan needs at least 16 delay steps");
    }
    const double range = delay_max_um - delay_min_um;
    if (!(range >= lambda_um))
    {
        throw std::invalid_argument(
            "delay range must cover at least two fringe periods (one wavelength)");
    }

    const double t = imperfections.coupler_transmittance;
    const double r = 1.0 - t;
    const double xi = imperfections.interfering_overlap();
    const double w_bg = imperfections.background_weight();
    const double w_ideal = imperfections.ideal_weight();
    const double p4 = imperfections.multipair_fraction;
    const double floor = p4 > 0.0 ? accidental_coincidence_floor(t) : 0.0;

    // Delay-independent pieces once: the pair confined to a single path
    // (incoherent remainder of the ideal branch) and the anti-bunched
    // background. The remainder of the background branch is a pair of
    // distinguishable photons, one per path: both transmitted or both
    // reflected gives the coincidence T^2 + R^2.
    const TwoModeState split_a = beamsplitter(TwoModeState::fock(2, 2, 0), t);
    const TwoModeState split_b = beamsplitter(TwoModeState::fock(2, 0, 2), t);
    const TwoModeState bunched = beamsplitter(TwoModeState::fock(2, 1, 1), t);
    const double c_split = 0.5 * (coincidence_probability(split_a) + coincidence_probability(split_b));
    const double c_bg_coherent = coincidence_probability(bunched);
    const double c_bg_plain = t * t + r * r;
    const auto singles_split_a = singles_expectation(split_a);
    const auto singles_split_b = singles_expectation(split_b);
    const auto singles_bunched = singles_expectation(bunched);

    FringeScan scan;
    scan.delay_um.reserve(static_cast<std::size_t>(steps));
    scan.singles_port1.reserve(static_cast<std::size_t>(steps));
    scan.singles_port2.reserve(static_cast<std::size_t>(steps));
    scan.coincidence.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
    {
        const double d = delay_min_um + range * i / (steps - 1);
        const double phi = 2.0 * kPi * d / lambda_um;
        const TwoModeState out = beamsplitter(make_path_entangled_state(phi), t);
        const double c_coherent = coincidence_probability(out);
        const auto singles_coherent = singles_expectation(out);

        const double coincidence =
            w_ideal * (xi * c_coherent + (1.0 - xi) * c_split) +
            w_bg * (xi * c_bg_coherent + (1.0 - xi) * c_bg_plain) + p4 * floor;
        const double s1 =
            w_ideal * (xi * singles_coherent.first +
                       (1.0 - xi) * 0.5 * (singles_split_a.first + singles_split_b.first)) +
            w_bg * (xi * singles_bunched.first + (1.0 - xi) * 1.0) + p4 * 2.0;
        const double s2 =
            w_ideal * (xi * singles_coherent.second +
                       (1.0 - xi) * 0.5 * (singles_split_a.second + singles_split_b.second)) +
            w_bg * (xi * singles_bunched.second + (1.0 - xi) * 1.0) + p4 * 2.0;

        scan.delay_um.push_back(d);
        scan.coincidence.push_back(coincidence);
        scan.singles_port1.push_back(s1);
        scan.singles_port2.push_back(s2);
    }
    scan.visibility = fringe_visibility(scan.coincidence);
    scan.period_um = fit_period(scan.delay_um, scan.coincidence);
    return scan;
}

double composite_visibility(const ImperfectionModel &imperfections)
{
    imperfections.validate();
    const double t = imperfections.coupler_transmittance;
    const double r = 1.0 - t;
    const double xi = imperfections.interfering_overlap();
    const double w_bg = imperfections.background_weight();
    const double w_ideal = imperfections.ideal_weight();
    const double p4 = imperfections.multipair_fraction;

    // Coincidence(phi) = w_ideal 2TR (1 + xi cos 2phi)
    //                  + w_bg [xi (T-R)^2 + (1-xi)(T^2+R^2)] + p4 floor.
    const double amplitude = w_ideal * 2.0 * t * r * xi;
    const double dc = w_ideal * 2.0 * t * r +
                      w_bg * (xi * (t - r) * (t - r) + (1.0 - xi) * (t * t + r * r)) +
                      (p4 > 0.0 ? p4 * accidental_coincidence_floor(t) : 0.0);
    if (!(dc > 0.0))
    {
        return 0.0;
    }
    return amplitude / dc;
}

VisibilityBudget visibility_budget(const ImperfectionModel &imperfections)
{
    imperfections.validate();

    ImperfectionModel coupler_only;
    coupler_only.coupler_transmittance = imperfections.coupler_transmittance;

    ImperfectionModel polarization_only;
    polarization_only.polarization_rotation_rad = imperfections.polarization_rotation_rad;
    polarization_only.residual_ellipticity = imperfections.residual_ellipticity;

    ImperfectionModel multipair_only;
    multipair_only.multipair_fraction = imperfections.multipair_fraction;

    ImperfectionModel background_only;
    background_only.background_pair_ratio = imperfections.background_pair_ratio;

    // The background cause shows its effect only together with an imbalanced
    // coupler, so its note carries the value at the configured split ratio.
    ImperfectionModel background_at_coupler = background_only;
    background_at_coupler.coupler_transmittance = imperfections.coupler_transmittance;
    char note[160];
    std::snprintf(note, sizeof(note),
                  "anti-bunched pairs cancel at a balanced coupler; with the configured split "
                  "ratio the pair gives V = %.4f",
                  composite_visibility(background_at_coupler));

    VisibilityBudget budget;
    budget.rows.push_back({"coupler imbalance", composite_visibility(coupler_only),
                           "two-photon fringe contrast is invariant to the split ratio alone"});
    budget.rows.push_back({"polarization mismatch", composite_visibility(polarization_only),
                           "fringe amplitude scales with the interfering overlap"});
    budget.rows.push_back({"multi-pair events", composite_visibility(multipair_only),
                           "delay-independent accidental floor from double-pair events"});
    budget.rows.push_back({"background pairs", composite_visibility(background_only), note});
    budget.composite = composite_visibility(imperfections);
    return budget;
}

std::vector<PolarizationPoint> polarization_visibility_curve(
    const std::vector<double> &rotations_rad, const ImperfectionModel &base)
{
    std::vector<PolarizationPoint> curve;
    curve.reserve(rotations_rad.size());
    ImperfectionModel model = base;
    for (double rotation : rotations_rad)
    {
        model.polarization_rotation_rad = rotation;
        curve.push_back({rotation, composite_visibility(model)});
    }
    return curve;
}
}
