#include "npc/bessel.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace npc
{
namespace
{
constexpr double kSeriesCutoff = 9.0;

// Ascending series: J_n(x) = sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!).
// At x = 9 the largest term is ~2e3, so cancellation costs ~3 digits;
// absolute error stays below ~1e-12.
double j_series(int n, double x)
{
    const double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= n; ++i)
        term *= half / static_cast<double>(i);  // (x/2)^n / n!
    double sum = term;
    const double x2 = -half * half;
    for (int k = 1; k <= 64; ++k)
    {
        term *= x2 / (static_cast<double>(k) * static_cast<double>(k + n));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30))
            break;
    }
    return sum;
}

// Trapezoid sum for (1/pi) int_0^pi cos(n t - x sin t) dt. Evenness and
// periodicity make the uniform sum spectrally accurate; M ~ 4|x| + 40
// points keep the truncation far below 1e-13 for the |x| range used here.
double j_integral(int n, double x)
{
    const std::size_t m = static_cast<std::size_t>(4.0 * std::abs(x)) + 40;
    const double h = std::numbers::pi / static_cast<double>(m);
    // Endpoints t=0 and t=pi enter with weight 1/2.
    double sum = 0.5 * (std::cos(0.0) + std::cos(n * std::numbers::pi));
    for (std::size_t j = 1; j < m; ++j)
    {
        const double t = h * static_cast<double>(j);
        sum += std::cos(n * t - x * std::sin(t));
    }
    return sum * h / std::numbers::pi;
}

double j_eval(int n, double x)
{
    return std::abs(x) <= kSeriesCutoff ? j_series(n, x) : j_integral(n, x);
}
}

double bessel_j0(double x)
{
    return j_eval(0, std::abs(x));  // J0 is even
}

double bessel_j1(double x)
{
    const double v = j_eval(1, std::abs(x));
    return x < 0.0 ? -v : v;  // J1 is odd
}

double bisect_root(double lo, double hi, double f_lo,
                   const std::function<double(double)> &f,
                   double x_tol_rel)
{
    double a = lo;
    double b = hi;
    double fa = f_lo;
    for (int iter = 0; iter < 200; ++iter)
    {
        const double mid = 0.5 * (a + b);
        if ((b - a) <= x_tol_rel * (std::abs(mid) + 1.0))
            return mid;
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fa < 0.0) != (fm < 0.0))
            b = mid;
        else
        {
            a = mid;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> bessel_j0_zeros_up_to(double x_max)
{
    std::vector<double> zeros;
    if (!(x_max > 0.0))
        return zeros;
    const double step = 0.5 * std::numbers::pi;  // zero spacing is ~pi
    double a = 1e-9;
    double fa = bessel_j0(a);
    while (a < x_max)
    {
        const double b = std::min(a + step, x_max);
        const double fb = bessel_j0(b);
        if ((fa < 0.0) != (fb < 0.0))
            zeros.push_back(bisect_root(a, b, fa,
                                        [](double x) { return bessel_j0(x); },
                                        1e-14));
        a = b;
        fa = fb;
        if (b >= x_max)
            break;
    }
    return zeros;
}
}
