#ifndef NPC_LATTICE_HPP
#define NPC_LATTICE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace npc
{
struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

double norm(const Vec2 &v);

// Inverted-domain motif repeated on the lattice. Rectangles are axis-aligned
// and described by half-widths.
struct MotifShape
{
    enum class Kind
    {
        circle,
        rectangle
    };

    Kind kind = Kind::circle;
    double radius_um = 0.0;  // circle
    double half_x_um = 0.0;  // rectangle
    double half_y_um = 0.0;

    static MotifShape circle(double radius_um);
    static MotifShape rectangle(double half_x_um, double half_y_um);

    // Radius of the smallest disc containing the motif; used for the
    // non-overlap validation.
    double bounding_radius() const;
    double area() const;
};

// Two-dimensional poling lattice: primitive vectors in um plus the motif.
// Construction validates non-collinearity and that motifs on neighboring
// lattice points cannot overlap (bounding diameter below the shortest
// lattice vector).
struct NpcLattice
{
    Vec2 a;
    Vec2 b;
    MotifShape motif;

    static NpcLattice rectangular(double period_x_um, double period_y_um,
                                  const MotifShape &motif);
    static NpcLattice from_primitives(const Vec2 &a, const Vec2 &b,
                                      const MotifShape &motif);

    double cell_area() const;
    // Length of the shortest nonzero lattice vector among a, b, a±b.
    double min_lattice_spacing() const;
    bool is_rectangular() const;
};

// Reciprocal-lattice vector m*b1 + n*b2 with a_i . b_j = 2*pi*delta_ij.
struct ReciprocalVector
{
    int m = 0;
    int n = 0;
    double gx = 0.0;  // rad/um
    double gy = 0.0;
};

ReciprocalVector reciprocal_vector(const NpcLattice &lattice, int m, int n);

// Closed-form Fourier coefficient of the two-level (+1 background, -1 motif)
// poling pattern. Circle motifs use the first-order Bessel form
//   2R / sqrt((n Lx)^2 + (m Ly)^2) * J1(2 pi R sqrt((m/Lx)^2 + (n/Ly)^2));
// rectangle motifs use the separable product of sin(G h)/G factors. Both
// require a rectangular lattice; other cases raise std::invalid_argument
// pointing to the numeric path. (m, n) = (0, 0) returns the two-level DC
// term 1 - 2*fill_factor. Sign convention: positive for a small motif.
double fourier_coefficient_analytic(const NpcLattice &lattice, int m, int n);

// The same circle formula with the prefactor's (n Lx)/(m Ly) pairing
// transposed. Published design tables disagree about this pairing, so both
// variants are computed and reported; the numeric transform adjudicates.
double fourier_coefficient_analytic_swapped(const NpcLattice &lattice, int m, int n);

// |(m, n)| Fourier-series coefficient magnitude from direct summation over a
// rasterized unit cell (grid x grid cell-centered samples in fractional
// coordinates). Valid for any lattice and motif; error shrinks as the grid
// refines. This is the independent oracle for the closed forms.
double fourier_coefficient_numeric(const NpcLattice &lattice, int m, int n, int grid);

// Motif area / unit-cell area.
double fill_factor(const NpcLattice &lattice);

struct RadiusOptimum
{
    double radius_um = 0.0;
    double coefficient = 0.0;  // fourier_coefficient_analytic at the optimum
};

// Radius maximizing |fourier_coefficient_analytic| for a circle motif on a
// rectangular lattice at fixed (m, n). Stationary points of x*J1(x) sit at
// zeros of J0 (found by bracketed bisection); those candidates plus the
// feasibility boundary R < min_spacing/2 are compared directly.
RadiusOptimum optimize_motif_radius(const NpcLattice &lattice, int m, int n);

// Rasterized +-1 map of the poling pattern over a centered window.
struct DomainMap
{
    int width = 0;
    int height = 0;
    double step_um = 0.0;      // pixel pitch
    double origin_x_um = 0.0;  // center of pixel (0, 0)
    double origin_y_um = 0.0;
    std::vector<std::int8_t> sign;  // row-major, +1 or -1
    bool undersampled_motif = false;  // motif spans < 4 px at this resolution

    std::int8_t at(int ix, int iy) const { return sign[static_cast<std::size_t>(iy) * width + ix]; }
    double inverted_fraction() const;
};

// Window (um) must cover at least one unit cell in each direction.
DomainMap render_domain_map(const NpcLattice &lattice, double window_w_um,
                            double window_h_um, double resolution_px_per_um);

// True when some |m|, |n| <= 64 reciprocal vector lies within tol of the
// query; the matching indices are written through when provided.
bool has_lattice_point_at(const NpcLattice &lattice, double gx, double gy,
                          double tol_rad_per_um, int *m_out = nullptr, int *n_out = nullptr);
}

#endif
