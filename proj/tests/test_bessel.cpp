#include <doctest.h>

#include <cmath>
#include <vector>

#include "npc/bessel.hpp"

// Oracle: the independent library implementation of the Bessel functions.
// The in-house series/integral evaluation must track it to 1e-10.

TEST_CASE("J0 and J1 match the library oracle across the working range")
{
    for (double x = 0.0; x <= 60.0; x += 0.173)
    {
        CHECK(std::fabs(npc::bessel_j0(x) - std::cyl_bessel_j(0, x)) < 1e-10);
        CHECK(std::fabs(npc::bessel_j1(x) - std::cyl_bessel_j(1, x)) < 1e-10);
    }
}

TEST_CASE("special values")
{
    CHECK(npc::bessel_j0(0.0) == 1.0);
    CHECK(npc::bessel_j1(0.0) == 0.0);
    // parity: J0 even, J1 odd
    CHECK(npc::bessel_j0(-2.5) == doctest::Approx(npc::bessel_j0(2.5)).epsilon(1e-14));
    CHECK(npc::bessel_j1(-2.5) == doctest::Approx(-npc::bessel_j1(2.5)).epsilon(1e-14));
}

TEST_CASE("series/integral crossover region is seamless")
{
    for (double x = 8.5; x <= 9.5; x += 0.01)
    {
        CHECK(std::fabs(npc::bessel_j0(x) - std::cyl_bessel_j(0, x)) < 1e-10);
        CHECK(std::fabs(npc::bessel_j1(x) - std::cyl_bessel_j(1, x)) < 1e-10);
    }
}

TEST_CASE("J0 zeros: count, accuracy, ordering")
{
    const std::vector<double> reference = {2.404825557695773, 5.520078110286311,
                                           8.653727912911013, 11.791534439014282,
                                           14.930917708487786};
    const std::vector<double> zeros = npc::bessel_j0_zeros_up_to(16.0);
    REQUIRE(zeros.size() == reference.size());
    for (std::size_t i = 0; i < zeros.size(); ++i)
    {
        CHECK(std::fabs(zeros[i] - reference[i]) < 1e-10);
        CHECK(std::fabs(npc::bessel_j0(zeros[i])) < 1e-10);
    }
    CHECK(npc::bessel_j0_zeros_up_to(2.0).empty());
    CHECK(npc::bessel_j0_zeros_up_to(2.5).size() == 1);
}

TEST_CASE("bisection root finder")
{
    const auto f = [](double x) { return std::cos(x); };
    const double root = npc::bisect_root(0.0, 2.0, f(0.0), f, 1e-14);
    CHECK(std::fabs(root - std::acos(0.0)) < 1e-12);

    // decreasing-through-zero bracket oriented the other way
    const auto g = [](double x) { return 2.0 - x * x; };
    const double r2 = npc::bisect_root(0.0, 3.0, g(0.0), g, 1e-14);
    CHECK(std::fabs(r2 - std::sqrt(2.0)) < 1e-12);
}
