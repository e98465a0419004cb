#include "npc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "npc/bessel.hpp"
#include "npc/errors.hpp"

namespace npc
{
namespace
{
constexpr double kPi = 3.14159265358979323846;
constexpr double kRectTol = 1e-12;  // relative tolerance for axis alignment

double cross(const Vec2 &a, const Vec2 &b)
{
    return a.x * b.y - a.y * b.x;
}
}

double norm(const Vec2 &v)
{
    return std::hypot(v.x, v.y);
}

MotifShape MotifShape::circle(double radius_um)
{
    if (!(radius_um > 0.0) || !std::isfinite(radius_um))
    {
        throw std::invalid_argument("motif radius must be positive and finite");
    }
    MotifShape s;
    s.kind = Kind::circle;
    s.radius_um = radius_um;
    return s;
}

MotifShape MotifShape::rectangle(double half_x_um, double half_y_um)
{
    if (!(half_x_um > 0.0) || !(half_y_um > 0.0) || !std::isfinite(half_x_um) || !std::isfinite(half_y_um))
    {
        throw std::invalid_argument("motif half-widths must be positive and finite");
    }
    MotifShape s;
    s.kind = Kind::rectangle;
    s.half_x_um = half_x_um;
    s.half_y_um = half_y_um;
    return s;
}

double MotifShape::bounding_radius() const
{
    if (kind == Kind::circle)
    {
        return radius_um;
    }
    return std::hypot(half_x_um, half_y_um);
}

double MotifShape::area() const
{
    if (kind == Kind::circle)
    {
        return kPi * radius_um * radius_um;
    }
    return 4.0 * half_x_um * half_y_um;
}

NpcLattice NpcLattice::rectangular(double period_x_um, double period_y_um, const MotifShape &motif)
{
    if (!(period_x_um > 0.0) || !(period_y_um > 0.0))
    {
        throw std::invalid_argument("lattice periods must be positive");
    }
    return from_primitives(Vec2{period_x_um, 0.0}, Vec2{0.0, period_y_um}, motif);
}

NpcLattice NpcLattice::from_primitives(const Vec2 &a, const Vec2 &b, const MotifShape &motif)
{
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) || !std::isfinite(b.y))
    {
        throw std::invalid_argument("lattice vectors must be finite");
    }
    NpcLattice lat;
    lat.a = a;
    lat.b = b;
    lat.motif = motif;
    const double area = std::fabs(cross(a, b));
    const double scale = std::max(norm(a), norm(b));
    if (area <= 1e-12 * scale * scale)
    {
        throw std::invalid_argument("lattice vectors are collinear or zero");
    }
    // A rectangle on a rectangular lattice tiles cleanly when it fits the
    // cell per axis (edge-touching allowed: a full-cell motif is the uniform
    // inverted sheet). Everywhere else the bounding circle is the guard.
    const bool rect_on_rect = motif.kind == MotifShape::Kind::rectangle && lat.is_rectangular();
    if (rect_on_rect)
    {
        if (2.0 * motif.half_x_um > std::fabs(a.x) + std::fabs(b.x) ||
            2.0 * motif.half_y_um > std::fabs(a.y) + std::fabs(b.y))
        {
            throw std::invalid_argument(
                "motif too large: the rectangle must fit inside one unit cell per axis");
        }
        return lat;
    }
    const double spacing = lat.min_lattice_spacing();
    if (!(2.0 * motif.bounding_radius() < spacing))
    {
        throw std::invalid_argument(
            "motif too large: inverted domains on neighboring lattice points would overlap "
            "(bounding diameter must stay below the shortest lattice vector)");
    }
    return lat;
}

double NpcLattice::cell_area() const
{
    return std::fabs(cross(a, b));
}

double NpcLattice::min_lattice_spacing() const
{
    const Vec2 diff{a.x - b.x, a.y - b.y};
    const Vec2 sum{a.x + b.x, a.y + b.y};
    return std::min(std::min(norm(a), norm(b)), std::min(norm(diff), norm(sum)));
}

bool NpcLattice::is_rectangular() const
{
    const double sa = norm(a);
    const double sb = norm(b);
    return std::fabs(a.y) <= kRectTol * sa && std::fabs(b.x) <= kRectTol * sb && a.x > 0.0 && b.y > 0.0;
}

ReciprocalVector reciprocal_vector(const NpcLattice &lattice, int m, int n)
{
    const double det = cross(lattice.a, lattice.b);
    const double f = 2.0 * kPi / det;
    // b1 = f*(b.y, -b.x), b2 = f*(-a.y, a.x) so that a_i . b_j = 2 pi delta_ij.
    ReciprocalVector g;
    g.m = m;
    g.n = n;
    g.gx = f * (m * lattice.b.y - n * lattice.a.y);
    g.gy = f * (-m * lattice.b.x + n * lattice.a.x);
    return g;
}

namespace
{
void require_rectangular(const NpcLattice &lattice, const char *what)
{
    if (!lattice.is_rectangular())
    {
        throw std::invalid_argument(std::string(what) +
                                    " requires a rectangular lattice; use fourier_coefficient_numeric "
                                    "for general primitive vectors");
    }
}

double circle_coefficient(double radius, double lx, double ly, int m, int n, bool swap_pairing)
{
    const double pm = swap_pairing ? (m * lx) : (n * lx);
    const double pn = swap_pairing ? (n * ly) : (m * ly);
    const double denom = std::hypot(pm, pn);
    const double arg = 2.0 * kPi * radius * std::hypot(m / lx, n / ly);
    return 2.0 * radius / denom * bessel_j1(arg);
}

// sin(g*h)/g with the g -> 0 limit.
double half_width_factor(double g, double h)
{
    if (std::fabs(g * h) < 1e-9)
    {
        return h * (1.0 - (g * h) * (g * h) / 6.0);
    }
    return std::sin(g * h) / g;
}
}

double fourier_coefficient_analytic(const NpcLattice &lattice, int m, int n)
{
    require_rectangular(lattice, "closed-form Fourier coefficient");
    if (m == 0 && n == 0)
    {
        return 1.0 - 2.0 * fill_factor(lattice);
    }
    const double lx = lattice.a.x;
    const double ly = lattice.b.y;
    if (lattice.motif.kind == MotifShape::Kind::circle)
    {
        return circle_coefficient(lattice.motif.radius_um, lx, ly, m, n, false);
    }
    const double gx = 2.0 * kPi * m / lx;
    const double gy = 2.0 * kPi * n / ly;
    return 2.0 / (lx * ly) * (2.0 * half_width_factor(gx, lattice.motif.half_x_um)) *
           (2.0 * half_width_factor(gy, lattice.motif.half_y_um));
}

double fourier_coefficient_analytic_swapped(const NpcLattice &lattice, int m, int n)
{
    require_rectangular(lattice, "closed-form Fourier coefficient");
    if (lattice.motif.kind != MotifShape::Kind::circle)
    {
        throw std::invalid_argument("pairing-transposed form is defined for circle motifs only");
    }
    if (m == 0 && n == 0)
    {
        return 1.0 - 2.0 * fill_factor(lattice);
    }
    return circle_coefficient(lattice.motif.radius_um, lattice.a.x, lattice.b.y, m, n, true);
}

namespace
{
bool inside_motif(const MotifShape &motif, double dx, double dy)
{
    if (motif.kind == MotifShape::Kind::circle)
    {
        return dx * dx + dy * dy <= motif.radius_um * motif.radius_um;
    }
    return std::fabs(dx) <= motif.half_x_um && std::fabs(dy) <= motif.half_y_um;
}
}

double fourier_coefficient_numeric(const NpcLattice &lattice, int m, int n, int grid)
{
    if (grid < 256)
    {
        throw std::invalid_argument("numeric Fourier grid too coarse: need at least 256 samples per axis");
    }
    const int N = grid;
    const bool rect = lattice.is_rectangular();
    const double lx = lattice.a.x;
    const double ly = lattice.b.y;

    // Phase factors are separable in the fractional coordinates (u, v):
    // exp(-2 pi i (m u + n v)).
    std::vector<std::complex<double>> col_phase(static_cast<std::size_t>(N));
    std::vector<std::complex<double>> row_phase(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j)
    {
        const double t = (j + 0.5) / N;
        col_phase[static_cast<std::size_t>(j)] = std::polar(1.0, -2.0 * kPi * n * t);
        row_phase[static_cast<std::size_t>(j)] = std::polar(1.0, -2.0 * kPi * m * t);
    }

    std::complex<double> total(0.0, 0.0);
    for (int j = 0; j < N; ++j)
    {
        const double u = (j + 0.5) / N;
        std::complex<double> row(0.0, 0.0);
        for (int k = 0; k < N; ++k)
        {
            const double v = (k + 0.5) / N;
            bool inverted = false;
            if (rect)
            {
                // Nearest lattice point via wrap of the fractional parts.
                const double du = (u - std::round(u)) * lx;
                const double dv = (v - std::round(v)) * ly;
                inverted = inside_motif(lattice.motif, du, dv);
            }
            else
            {
                const double px = u * lattice.a.x + v * lattice.b.x;
                const double py = u * lattice.a.y + v * lattice.b.y;
                for (int i = -1; i <= 2 && !inverted; ++i)
                {
                    for (int l = -1; l <= 2 && !inverted; ++l)
                    {
                        const double cx = i * lattice.a.x + l * lattice.b.x;
                        const double cy = i * lattice.a.y + l * lattice.b.y;
                        inverted = inside_motif(lattice.motif, px - cx, py - cy);
                    }
                }
            }
            row += inverted ? -col_phase[static_cast<std::size_t>(k)] : col_phase[static_cast<std::size_t>(k)];
        }
        total += row * row_phase[static_cast<std::size_t>(j)];
    }
    return std::abs(total) / (static_cast<double>(N) * static_cast<double>(N));
}

double fill_factor(const NpcLattice &lattice)
{
    return lattice.motif.area() / lattice.cell_area();
}

RadiusOptimum optimize_motif_radius(const NpcLattice &lattice, int m, int n)
{
    require_rectangular(lattice, "motif radius optimization");
    if (m == 0 && n == 0)
    {
        throw std::invalid_argument("motif radius optimization needs a nonzero order (m, n)");
    }
    const double g_mag = 2.0 * kPi * std::hypot(m / lattice.a.x, n / lattice.b.y);
    // Strictly inside the non-overlap bound so the optimum stays constructible.
    const double r_max = 0.5 * lattice.min_lattice_spacing() * (1.0 - 1e-12);
    const double x_max = r_max * g_mag;

    // |coefficient| is proportional to |x J1(x)| with x = R |G|; its interior
    // stationary points are the zeros of J0 because d/dx [x J1(x)] = x J0(x).
    std::vector<double> candidates = bessel_j0_zeros_up_to(x_max);
    candidates.push_back(x_max);

    auto score = [&](double x) { return std::fabs(x * bessel_j1(x)); };
    double best_x = candidates.front();
    double best_score = score(best_x);
    for (double x : candidates)
    {
        const double s = score(x);
        if (s > best_score + 1e-15 * best_score)
        {
            best_score = s;
            best_x = x;
        }
    }

    NpcLattice probe = lattice;
    probe.motif = MotifShape::circle(best_x / g_mag);
    RadiusOptimum opt;
    opt.radius_um = probe.motif.radius_um;
    opt.coefficient = fourier_coefficient_analytic(probe, m, n);
    return opt;
}

double DomainMap::inverted_fraction() const
{
    if (sign.empty())
    {
        return 0.0;
    }
    std::size_t inverted = 0;
    for (std::int8_t s : sign)
    {
        if (s < 0)
        {
            ++inverted;
        }
    }
    return static_cast<double>(inverted) / static_cast<double>(sign.size());
}

DomainMap render_domain_map(const NpcLattice &lattice, double window_w_um,
                            double window_h_um, double resolution_px_per_um)
{
    if (!(resolution_px_per_um > 0.0))
    {
        throw std::invalid_argument("domain map resolution must be positive");
    }
    // The window must show at least one full unit cell.
    const double cell_w = std::fabs(lattice.a.x) + std::fabs(lattice.b.x);
    const double cell_h = std::fabs(lattice.a.y) + std::fabs(lattice.b.y);
    if (window_w_um < cell_w || window_h_um < cell_h)
    {
        throw std::invalid_argument("domain map window smaller than one unit cell");
    }

    DomainMap map;
    map.width = std::max(1, static_cast<int>(std::lround(window_w_um * resolution_px_per_um)));
    map.height = std::max(1, static_cast<int>(std::lround(window_h_um * resolution_px_per_um)));
    map.step_um = 1.0 / resolution_px_per_um;
    map.origin_x_um = -0.5 * window_w_um + 0.5 * map.step_um;
    map.origin_y_um = -0.5 * window_h_um + 0.5 * map.step_um;
    map.sign.assign(static_cast<std::size_t>(map.width) * static_cast<std::size_t>(map.height), 1);

    const double feature = (lattice.motif.kind == MotifShape::Kind::circle)
                               ? 2.0 * lattice.motif.radius_um
                               : 2.0 * std::min(lattice.motif.half_x_um, lattice.motif.half_y_um);
    map.undersampled_motif = feature * resolution_px_per_um < 4.0;

    // Fractional coordinates from the inverse primitive matrix.
    const double det = cross(lattice.a, lattice.b);
    const bool rect = lattice.is_rectangular();
    for (int iy = 0; iy < map.height; ++iy)
    {
        const double py = map.origin_y_um + iy * map.step_um;
        for (int ix = 0; ix < map.width; ++ix)
        {
            const double px = map.origin_x_um + ix * map.step_um;
            bool inverted = false;
            if (rect)
            {
                const double du = px - std::round(px / lattice.a.x) * lattice.a.x;
                const double dv = py - std::round(py / lattice.b.y) * lattice.b.y;
                inverted = inside_motif(lattice.motif, du, dv);
            }
            else
            {
                const double u = (px * lattice.b.y - py * lattice.b.x) / det;
                const double v = (-px * lattice.a.y + py * lattice.a.x) / det;
                const double fu = std::floor(u);
                const double fv = std::floor(v);
                for (int i = -1; i <= 2 && !inverted; ++i)
                {
                    for (int l = -1; l <= 2 && !inverted; ++l)
                    {
                        const double cx = (fu + i) * lattice.a.x + (fv + l) * lattice.b.x;
                        const double cy = (fu + i) * lattice.a.y + (fv + l) * lattice.b.y;
                        inverted = inside_motif(lattice.motif, px - cx, py - cy);
                    }
                }
            }
            if (inverted)
            {
                map.sign[static_cast<std::size_t>(iy) * map.width + ix] = -1;
            }
        }
    }
    return map;
}

bool has_lattice_point_at(const NpcLattice &lattice, double gx, double gy,
                          double tol_rad_per_um, int *m_out, int *n_out)
{
    if (!(tol_rad_per_um >= 0.0))
    {
        throw std::invalid_argument("reciprocal-point tolerance must be non-negative");
    }
    for (int m = -64; m <= 64; ++m)
    {
        for (int n = -64; n <= 64; ++n)
        {
            const ReciprocalVector g = reciprocal_vector(lattice, m, n);
            if (std::hypot(g.gx - gx, g.gy - gy) <= tol_rad_per_um)
            {
                if (m_out != nullptr)
                {
                    *m_out = m;
                }
                if (n_out != nullptr)
                {
                    *n_out = n;
                }
                return true;
            }
        }
    }
    return false;
}
}
