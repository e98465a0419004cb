#include "npc/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "npc/errors.hpp"

namespace npc
{
namespace
{
constexpr double kKelvinOffset = 273.15;

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}
}

DispersionModel DispersionModel::from_config(const ConfigFile &cfg, const std::string &section)
{
    DispersionModel m;
    m.name_ = cfg.get_string(section + ".name");
    m.form_ = cfg.get_string(section + ".form");
    if (m.form_ != "sellmeier_t2_v1")
        throw ConfigError(cfg.origin() + ": unknown dispersion form '" + m.form_ +
                          "' (supported: sellmeier_t2_v1)");

    const std::string coef = section + ".coefficients.";
    const std::string temp = section + ".temperature_terms.";

    m.a0_ = cfg.get_number(coef + "a0");
    m.d_lambda2_ = cfg.get_number_or(coef + "d_lambda2", 0.0);

    // Poles are named b1/c1, b2/c2, ... with consecutive indices.
    for (int i = 1;; ++i)
    {
        const std::string bi = coef + "b" + std::to_string(i);
        const std::string ci = coef + "c" + std::to_string(i);
        if (!cfg.has(bi) && !cfg.has(ci))
            break;
        SellmeierPole pole;
        pole.b = cfg.get_number(bi);
        pole.c = cfg.get_number(ci);
        pole.db = cfg.get_number_or(temp + "db" + std::to_string(i), 0.0);
        pole.dc = cfg.get_number_or(temp + "dc" + std::to_string(i), 0.0);
        m.poles_.push_back(pole);
    }
    if (m.poles_.empty())
        throw ConfigError(cfg.origin() + ": dispersion config has no Sellmeier poles (b1/c1 ...)");
    m.da0_ = cfg.get_number_or(temp + "da0", 0.0);

    // Reject unknown coefficient names so typos cannot silently become zeros.
    std::set<std::string> known{coef + "a0", coef + "d_lambda2"};
    std::set<std::string> known_temp{temp + "da0"};
    for (std::size_t i = 1; i <= m.poles_.size(); ++i)
    {
        known.insert(coef + "b" + std::to_string(i));
        known.insert(coef + "c" + std::to_string(i));
        known_temp.insert(temp + "db" + std::to_string(i));
        known_temp.insert(temp + "dc" + std::to_string(i));
    }
    for (const std::string &k : cfg.keys_with_prefix(coef))
        if (known.count(k) == 0)
            throw ConfigError(cfg.origin() + ":" + std::to_string(cfg.line_of(k)) +
                              ": unknown coefficient '" + k + "'");
    for (const std::string &k : cfg.keys_with_prefix(temp))
        if (known_temp.count(k) == 0)
            throw ConfigError(cfg.origin() + ":" + std::to_string(cfg.line_of(k)) +
                              ": unknown temperature term '" + k + "'");

    const std::vector<double> lam = cfg.get_array(section + ".validity.wavelength_um");
    const std::vector<double> tc = cfg.get_array(section + ".validity.temperature_c");
    if (lam.size() != 2 || !(lam[0] < lam[1]) || !(lam[0] > 0.0))
        throw ConfigError(cfg.origin() + ": validity.wavelength_um must be [min, max] with 0 < min < max");
    if (tc.size() != 2 || !(tc[0] < tc[1]))
        throw ConfigError(cfg.origin() + ": validity.temperature_c must be [min, max] with min < max");
    m.lam_min_ = lam[0];
    m.lam_max_ = lam[1];
    m.t_min_ = tc[0];
    m.t_max_ = tc[1];
    return m;
}

DispersionModel DispersionModel::load(const std::string &path)
{
    return from_config(ConfigFile::parse_file(path));
}

bool DispersionModel::temperature_independent() const
{
    if (da0_ != 0.0)
        return false;
    for (const SellmeierPole &p : poles_)
        if (p.db != 0.0 || p.dc != 0.0)
            return false;
    return true;
}

double DispersionModel::refractive_index(double wavelength_um, double temperature_c) const
{
    if (!(wavelength_um >= lam_min_ && wavelength_um <= lam_max_))
        throw DispersionRangeError("wavelength " + fmt(wavelength_um) +
                                   " um outside validity range [" + fmt(lam_min_) + ", " +
                                   fmt(lam_max_) + "] um of '" + name_ + "'");
    if (!(temperature_c >= t_min_ && temperature_c <= t_max_))
        throw DispersionRangeError("temperature " + fmt(temperature_c) +
                                   " C outside validity range [" + fmt(t_min_) + ", " +
                                   fmt(t_max_) + "] C of '" + name_ + "'");

    const double lam2 = wavelength_um * wavelength_um;
    // Temperature enters only through Tk^2-proportional terms, so a model
    // with all of them zero is exactly temperature-independent.
    double n2 = a0_ + d_lambda2_ * lam2;
    if (da0_ != 0.0)
    {
        const double tk = temperature_c + kKelvinOffset;
        n2 += da0_ * tk * tk;
    }
    for (const SellmeierPole &p : poles_)
    {
        double b = p.b;
        double c = p.c;
        if (p.db != 0.0 || p.dc != 0.0)
        {
            const double tk = temperature_c + kKelvinOffset;
            b += p.db * tk * tk;
            c += p.dc * tk * tk;
        }
        n2 += b / (lam2 - c * c);
    }
    if (!std::isfinite(n2) || n2 <= 1.0 || n2 >= 16.0)
        throw NumericError("n^2 = " + fmt(n2) + " at " + fmt(wavelength_um) + " um, " +
                           fmt(temperature_c) + " C from '" + name_ +
                           "' is outside the physical window — bad dispersion config");
    const double n = std::sqrt(n2);
    if (n <= 1.0 || n >= 4.0)
        throw NumericError("refractive index " + fmt(n) + " outside (1, 4) — bad dispersion config");
    return n;
}

double DispersionModel::wavevector_magnitude(double wavelength_um, double temperature_c) const
{
    return 2.0 * std::numbers::pi * refractive_index(wavelength_um, temperature_c) / wavelength_um;
}
}
