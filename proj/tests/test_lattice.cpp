#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "npc/lattice.hpp"

using namespace npc;

namespace
{
constexpr double kPi = 3.14159265358979323846;

// exact solved periods of the second-order beamlike design at 61 C
constexpr double kDesignLx = 6.4228930783098761;
constexpr double kDesignLy = 13.4547186518601887;

// rounded periods quoted in published design tables
constexpr double kTableLx = 6.4;
constexpr double kTableLy = 13.46;

NpcLattice design_lattice()
{
    return NpcLattice::rectangular(kDesignLx, kDesignLy, MotifShape::circle(2.7));
}

NpcLattice table_lattice()
{
    return NpcLattice::rectangular(kTableLx, kTableLy, MotifShape::circle(2.7));
}

NpcLattice beam_split_oblique()
{
    // direct-lattice primitives whose reciprocal lattice contains the two
    // beam vectors (+-) but not their midpoint
    const Vec2 a{1.605723269577469, 6.727359325930093};
    const Vec2 b{1.605723269577469, -6.727359325930093};
    return NpcLattice::from_primitives(a, b, MotifShape::circle(0.8));
}

// independent evaluation of the circle closed form using the standard
// library's Bessel function
double circle_reference(double radius, double lx, double ly, int m, int n, bool swapped)
{
    const double denom = swapped ? std::hypot(m * lx, n * ly) : std::hypot(n * lx, m * ly);
    const double arg = 2.0 * kPi * radius * std::hypot(m / lx, n / ly);
    return 2.0 * radius / denom * std::cyl_bessel_j(1, arg);
}
}

TEST_CASE("reciprocal vectors satisfy the defining duality relations")
{
    const NpcLattice rect = table_lattice();
    const ReciprocalVector g = reciprocal_vector(rect, 2, 1);
    CHECK(g.gx == doctest::Approx(2.0 * kPi * 2.0 / kTableLx).epsilon(1e-14));
    CHECK(g.gy == doctest::Approx(2.0 * kPi * 1.0 / kTableLy).epsilon(1e-14));
    CHECK(g.m == 2);
    CHECK(g.n == 1);

    const ReciprocalVector zero = reciprocal_vector(rect, 0, 0);
    CHECK(zero.gx == 0.0);
    CHECK(zero.gy == 0.0);

    const ReciprocalVector neg = reciprocal_vector(rect, -2, -1);
    CHECK(neg.gx == -g.gx);
    CHECK(neg.gy == -g.gy);

    // a_i . b_j = 2 pi delta_ij holds for oblique primitives too
    const NpcLattice obl = beam_split_oblique();
    for (auto [m, n] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, -3}})
    {
        const ReciprocalVector go = reciprocal_vector(obl, m, n);
        CHECK(go.gx * obl.a.x + go.gy * obl.a.y == doctest::Approx(2.0 * kPi * m).epsilon(1e-12));
        CHECK(go.gx * obl.b.x + go.gy * obl.b.y == doctest::Approx(2.0 * kPi * n).epsilon(1e-12));
    }
}

TEST_CASE("circle coefficient matches an independent Bessel evaluation")
{
    const NpcLattice table = table_lattice();
    const double ana = fourier_coefficient_analytic(table, 2, 1);
    const double swp = fourier_coefficient_analytic_swapped(table, 2, 1);
    CHECK(std::fabs(ana - circle_reference(2.7, kTableLx, kTableLy, 2, 1, false)) < 1e-9);
    CHECK(std::fabs(swp - circle_reference(2.7, kTableLx, kTableLy, 2, 1, true)) < 1e-9);
    // published second-order design point
    CHECK(std::fabs(ana - (-0.067100)) < 1.5e-6);
    CHECK(std::fabs(swp - (-0.099958)) < 1.5e-6);

    // exact-period variant, pinned
    const NpcLattice design = design_lattice();
    CHECK(fourier_coefficient_analytic(design, 2, 1) ==
          doctest::Approx(-0.0672398758664).epsilon(1e-10));
    CHECK(fourier_coefficient_analytic_swapped(design, 2, 1) ==
          doctest::Approx(-0.0999994361797).epsilon(1e-10));
}

TEST_CASE("circle coefficient is even under order negation")
{
    const NpcLattice table = table_lattice();
    const double ana = fourier_coefficient_analytic(table, 2, 1);
    CHECK(fourier_coefficient_analytic(table, -2, -1) == ana);
    CHECK(fourier_coefficient_analytic(table, 2, -1) == ana);
    CHECK(fourier_coefficient_analytic(table, -2, 1) == ana);
}

TEST_CASE("coefficient vanishes with the motif and at Bessel zeros")
{
    const NpcLattice tiny = NpcLattice::rectangular(kTableLx, kTableLy, MotifShape::circle(1e-4));
    CHECK(std::fabs(fourier_coefficient_analytic(tiny, 2, 1)) < 1e-8);

    // radius placing the Bessel argument at the first zero of J1
    const double r_zero = 3.8317059702075123 * 10.0 / (4.0 * kPi);
    const NpcLattice zl = NpcLattice::rectangular(10.0, 10.0, MotifShape::circle(r_zero));
    CHECK(std::fabs(fourier_coefficient_analytic(zl, 2, 0)) < 1e-6);
}

TEST_CASE("rectangle coefficient matches the separable sinc product")
{
    const NpcLattice rect = NpcLattice::rectangular(kTableLx, kTableLy, MotifShape::rectangle(1.2, 1.2));
    const double gx = 2.0 * kPi * 2.0 / kTableLx;
    const double gy = 2.0 * kPi * 1.0 / kTableLy;
    const double expected =
        2.0 / (kTableLx * kTableLy) * (2.0 * std::sin(gx * 1.2) / gx) * (2.0 * std::sin(gy * 1.2) / gy);
    const double ana = fourier_coefficient_analytic(rect, 2, 1);
    CHECK(ana == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ana == doctest::Approx(0.0380668017759).epsilon(1e-10));
    // adjudicated by the direct transform
    CHECK(std::fabs(std::fabs(ana) - fourier_coefficient_numeric(rect, 2, 1, 1024)) < 5e-4);
    // parity for the separable form
    CHECK(fourier_coefficient_analytic(rect, -2, -1) == doctest::Approx(ana).epsilon(1e-12));
}

TEST_CASE("fill factor examples")
{
    // circle sized for precisely half the cell area
    const double r_half = std::sqrt(0.5 / kPi) * 10.0;
    const NpcLattice half = NpcLattice::rectangular(10.0, 10.0, MotifShape::circle(r_half));
    CHECK(fill_factor(half) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(fill_factor(design_lattice()) == doctest::Approx(0.26501599582).epsilon(1e-9));

    // a motif covering the whole cell is the uniform inverted sheet
    const NpcLattice sheet =
        NpcLattice::rectangular(kTableLx, kTableLy, MotifShape::rectangle(kTableLx / 2.0, kTableLy / 2.0));
    CHECK(fill_factor(sheet) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fourier_coefficient_numeric(sheet, 1, 0, 512) < 1e-12);
    CHECK(fourier_coefficient_numeric(sheet, 0, 1, 512) < 1e-12);
    CHECK(fourier_coefficient_numeric(sheet, 1, 1, 512) < 1e-12);
    CHECK(fourier_coefficient_analytic(sheet, 0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("numeric transform agrees with the closed form and converges")
{
    const NpcLattice design = design_lattice();
    const double ana = std::fabs(fourier_coefficient_analytic(design, 2, 1));

    const double e256 = std::fabs(fourier_coefficient_numeric(design, 2, 1, 256) - ana);
    const double e512 = std::fabs(fourier_coefficient_numeric(design, 2, 1, 512) - ana);
    const double e2048 = std::fabs(fourier_coefficient_numeric(design, 2, 1, 2048) - ana);
    CHECK(e256 < 2e-4);
    CHECK(e512 < 5e-5);
    CHECK(e2048 < 1e-5);
    // quadrupling the resolution shrinks the discrepancy decisively (the
    // rasterization error oscillates, so adjacent grids are not compared)
    CHECK(e2048 < e256 / 10.0);

    CHECK(fourier_coefficient_numeric(design, 2, 1, 512) ==
          doctest::Approx(0.0672171095257).epsilon(1e-10));

    // DC term of the two-level pattern
    const double dc = std::fabs(1.0 - 2.0 * fill_factor(design));
    CHECK(std::fabs(fourier_coefficient_numeric(design, 0, 0, 512) - dc) < 1e-5);
}

TEST_CASE("numeric transform handles oblique lattices")
{
    const NpcLattice obl = beam_split_oblique();
    const double dc = std::fabs(1.0 - 2.0 * fill_factor(obl));
    CHECK(std::fabs(fourier_coefficient_numeric(obl, 0, 0, 512) - dc) < 1e-3);

    // circle motif on any lattice: |c| = 4 pi R J1(|G| R) / (A |G|)
    const ReciprocalVector g = reciprocal_vector(obl, 1, 0);
    const double gmag = std::hypot(g.gx, g.gy);
    const double expected =
        4.0 * kPi * 0.8 * std::cyl_bessel_j(1, gmag * 0.8) / (obl.cell_area() * gmag);
    CHECK(std::fabs(fourier_coefficient_numeric(obl, 1, 0, 512) - std::fabs(expected)) < 1e-3);
}

TEST_CASE("randomized closed form versus direct transform")
{
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> order(-3, 3);
    for (int trial = 0; trial < 10; ++trial)
    {
        const double lx = 4.0 + 5.0 * uni(rng);
        const double ly = 4.0 + 10.0 * uni(rng);
        int m = 0;
        int n = 0;
        while (m == 0 && n == 0)
        {
            m = order(rng);
            n = order(rng);
        }
        MotifShape motif = MotifShape::circle(1.0);
        if (trial % 2 == 0)
        {
            motif = MotifShape::circle((0.05 + 0.40 * uni(rng)) * std::min(lx, ly));
        }
        else
        {
            motif = MotifShape::rectangle((0.05 + 0.40 * uni(rng)) * lx, (0.05 + 0.40 * uni(rng)) * ly);
        }
        const NpcLattice lat = NpcLattice::from_primitives(Vec2{lx, 0.0}, Vec2{0.0, ly}, motif);
        const double ana = std::fabs(fourier_coefficient_analytic(lat, m, n));
        const double num = fourier_coefficient_numeric(lat, m, n, 1024);
        CAPTURE(trial);
        CAPTURE(m);
        CAPTURE(n);
        CHECK(std::fabs(ana - num) < 1e-3);
    }
}

TEST_CASE("motif radius optimization lands on the Bessel stationary points")
{
    // published design point: optimum slightly above the configured 2.7 um
    const RadiusOptimum popt = optimize_motif_radius(table_lattice(), 2, 1);
    CHECK(std::fabs(popt.radius_um - 2.735119) < 1e-5);
    CHECK(std::fabs(popt.coefficient - (-0.067268)) < 1e-5);

    const RadiusOptimum dopt = optimize_motif_radius(design_lattice(), 2, 1);
    CHECK(dopt.radius_um == doctest::Approx(2.74431880257).epsilon(1e-9));
    CHECK(dopt.coefficient == doctest::Approx(-0.0675064830313).epsilon(1e-9));

    // the optimum is feasible and reproducible through a fresh lattice
    CHECK(2.0 * popt.radius_um < table_lattice().min_lattice_spacing());
    const NpcLattice rebuilt =
        NpcLattice::rectangular(kTableLx, kTableLy, MotifShape::circle(popt.radius_um));
    CHECK(fourier_coefficient_analytic(rebuilt, 2, 1) == popt.coefficient);

    // no sampled feasible radius beats it
    for (double r = 0.3; r < 3.19; r += 0.15)
    {
        const NpcLattice probe = NpcLattice::rectangular(kTableLx, kTableLy, MotifShape::circle(r));
        CHECK(std::fabs(fourier_coefficient_analytic(probe, 2, 1)) <=
              std::fabs(popt.coefficient) + 1e-12);
    }
}

TEST_CASE("optimizer interior optimum sits at a zero of J0")
{
    const NpcLattice sq = NpcLattice::rectangular(10.0, 10.0, MotifShape::circle(1.0));
    const RadiusOptimum opt = optimize_motif_radius(sq, 1, 1);
    const double x = 2.0 * kPi * opt.radius_um * std::sqrt(2.0) / 10.0;
    CHECK(std::fabs(x - 2.404825557695773) < 1e-9);
    CHECK(opt.coefficient > 0.0);
    CHECK(2.0 * opt.radius_um < 10.0);
}

TEST_CASE("optimizer clamps to the non-overlap boundary when J0 has no zero in range")
{
    const NpcLattice thin = NpcLattice::rectangular(20.0, 2.0, MotifShape::circle(0.3));
    const RadiusOptimum opt = optimize_motif_radius(thin, 1, 0);
    CHECK(std::fabs(opt.radius_um - 1.0) < 1e-9);
    CHECK(2.0 * opt.radius_um < thin.min_lattice_spacing());
    const NpcLattice rebuilt = NpcLattice::rectangular(20.0, 2.0, MotifShape::circle(opt.radius_um));
    CHECK(fourier_coefficient_analytic(rebuilt, 1, 0) == opt.coefficient);
}

TEST_CASE("domain map reproduces the fill fraction when well resolved")
{
    const NpcLattice lat = NpcLattice::rectangular(6.4, 12.8, MotifShape::circle(2.7));
    const DomainMap dm = render_domain_map(lat, 6.4, 12.8, 10.0);
    CHECK(dm.width == 64);
    CHECK(dm.height == 128);
    CHECK(dm.step_um == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_FALSE(dm.undersampled_motif);
    const double n_px = static_cast<double>(dm.width) * dm.height;
    CHECK(std::fabs(dm.inverted_fraction() - fill_factor(lat)) < 2.0 / std::sqrt(n_px));
}

TEST_CASE("domain map is periodic under lattice translations")
{
    const NpcLattice rect = NpcLattice::rectangular(6.4, 12.8, MotifShape::circle(2.7));
    const DomainMap rm = render_domain_map(rect, 12.8, 25.6, 2.5);
    REQUIRE(rm.width == 32);
    REQUIRE(rm.height == 64);
    for (int iy = 0; iy + 32 < rm.height; ++iy)
    {
        for (int ix = 0; ix + 16 < rm.width; ++ix)
        {
            REQUIRE(rm.at(ix + 16, iy + 32) == rm.at(ix, iy));  // shift by one cell
        }
    }

    // oblique: translating by the primitive vector a = (4, 2) um is a
    // (+8, +4) pixel shift at 2 px/um
    const NpcLattice obl =
        NpcLattice::from_primitives(Vec2{4.0, 2.0}, Vec2{4.0, -2.0}, MotifShape::circle(0.8));
    const DomainMap om = render_domain_map(obl, 16.0, 8.0, 2.0);
    REQUIRE(om.width == 32);
    REQUIRE(om.height == 16);
    CHECK(om.undersampled_motif);  // 1.6 um feature at 2 px/um spans 3.2 px
    for (int iy = 0; iy + 4 < om.height; ++iy)
    {
        for (int ix = 0; ix + 8 < om.width; ++ix)
        {
            REQUIRE(om.at(ix + 8, iy + 4) == om.at(ix, iy));
        }
    }
}

TEST_CASE("domain map rejects bad windows and resolutions")
{
    const NpcLattice lat = NpcLattice::rectangular(6.4, 12.8, MotifShape::circle(2.7));
    CHECK_THROWS_WITH_AS(render_domain_map(lat, 5.0, 25.6, 2.0), doctest::Contains("unit cell"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(render_domain_map(lat, 12.8, 5.0, 2.0), doctest::Contains("unit cell"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(render_domain_map(lat, 12.8, 25.6, 0.0), doctest::Contains("resolution"),
                         std::invalid_argument);
}

TEST_CASE("reciprocal-point lookup distinguishes the beam pair from its midpoint")
{
    // second-order rectangular design: the midpoint kick is the (2, 0) point
    const NpcLattice rect = design_lattice();
    int m = 0;
    int n = 0;
    CHECK(has_lattice_point_at(rect, 1.956496933881063, 0.0, 1e-3, &m, &n));
    CHECK(m == 2);
    CHECK(n == 0);

    // beam-splitting oblique lattice: both beams present, midpoint absent
    const NpcLattice obl = beam_split_oblique();
    CHECK(has_lattice_point_at(obl, 1.956496933881063, 0.466987491136494, 1e-3, &m, &n));
    CHECK(m == 1);
    CHECK(n == 0);
    CHECK(has_lattice_point_at(obl, 1.956496933881063, -0.466987491136494, 1e-3, &m, &n));
    CHECK(m == 0);
    CHECK(n == 1);
    CHECK_FALSE(has_lattice_point_at(obl, 1.956496933881063, 0.0, 1e-3));
    CHECK(has_lattice_point_at(obl, 3.912993867762125, 0.0, 1e-3, &m, &n));
    CHECK(m == 1);
    CHECK(n == 1);
    CHECK(has_lattice_point_at(obl, 0.0, 0.0, 1e-3, &m, &n));
    CHECK(m == 0);
    CHECK(n == 0);
}

TEST_CASE("reciprocal-point lookup respects the tolerance")
{
    const NpcLattice rect = table_lattice();
    const ReciprocalVector g = reciprocal_vector(rect, 2, 1);
    CHECK_FALSE(has_lattice_point_at(rect, g.gx + 2e-3, g.gy, 1e-3));
    int m = 0;
    int n = 0;
    CHECK(has_lattice_point_at(rect, g.gx + 2e-3, g.gy, 5e-3, &m, &n));
    CHECK(m == 2);
    CHECK(n == 1);
    CHECK_THROWS_AS(has_lattice_point_at(rect, 0.0, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("construction rejects degenerate and overlapping geometries")
{
    CHECK_THROWS_WITH_AS(
        NpcLattice::from_primitives(Vec2{1.0, 0.0}, Vec2{2.0, 0.0}, MotifShape::circle(0.1)),
        doctest::Contains("collinear"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        NpcLattice::from_primitives(Vec2{1.0, 0.0}, Vec2{0.0, 0.0}, MotifShape::circle(0.1)),
        doctest::Contains("collinear"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(NpcLattice::rectangular(4.0, 4.0, MotifShape::circle(2.1)),
                         doctest::Contains("overlap"), std::invalid_argument);
    // oblique lattices guard rectangles by their bounding circle
    CHECK_THROWS_WITH_AS(
        NpcLattice::from_primitives(Vec2{4.0, 2.0}, Vec2{4.0, -2.0}, MotifShape::rectangle(1.9, 1.9)),
        doctest::Contains("overlap"), std::invalid_argument);
    // rectangles on rectangular lattices fit per axis, edge contact allowed
    CHECK_NOTHROW(NpcLattice::rectangular(6.4, 13.46, MotifShape::rectangle(3.2, 6.73)));
    CHECK_THROWS_WITH_AS(NpcLattice::rectangular(6.4, 13.46, MotifShape::rectangle(3.3, 6.73)),
                         doctest::Contains("unit cell"), std::invalid_argument);
    CHECK_THROWS_AS(NpcLattice::rectangular(-1.0, 5.0, MotifShape::circle(0.1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(MotifShape::circle(0.0), std::invalid_argument);
    CHECK_THROWS_AS(MotifShape::circle(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(MotifShape::circle(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(MotifShape::rectangle(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("analytic paths reject what only the numeric transform can do")
{
    const NpcLattice obl = beam_split_oblique();
    CHECK_THROWS_WITH_AS(fourier_coefficient_analytic(obl, 1, 0), doctest::Contains("rectangular"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(optimize_motif_radius(obl, 1, 0), doctest::Contains("rectangular"),
                         std::invalid_argument);
    const NpcLattice rect = NpcLattice::rectangular(6.4, 13.46, MotifShape::rectangle(1.2, 1.2));
    CHECK_THROWS_WITH_AS(fourier_coefficient_analytic_swapped(rect, 2, 1),
                         doctest::Contains("circle"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(optimize_motif_radius(table_lattice(), 0, 0), doctest::Contains("nonzero"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(fourier_coefficient_numeric(table_lattice(), 2, 1, 255),
                         doctest::Contains("256"), std::invalid_argument);
}
