#ifndef NPC_DISPERSION_HPP
#define NPC_DISPERSION_HPP

#include <string>
#include <vector>

#include "npc/config.hpp"

namespace npc
{
// Raised when a query leaves the config's stated validity ranges; the
// message names the violated bound.
struct DispersionRangeError : std::runtime_error
{
    explicit DispersionRangeError(const std::string &what_arg) : std::runtime_error(what_arg) {}
};

// One Sellmeier pole: (b + db*Tk^2) / (lam^2 - (c + dc*Tk^2)^2),
// Tk in kelvin, lam and c in micrometers.
struct SellmeierPole
{
    double b = 0.0;
    double c = 0.0;
    double db = 0.0;  // per K^2
    double dc = 0.0;  // per K^2
};

// Temperature-dependent Sellmeier model, form "sellmeier_t2_v1":
//
//   n^2(lam, T) = a0 + da0*Tk^2
//               + sum_i (b_i + db_i*Tk^2) / (lam^2 - (c_i + dc_i*Tk^2)^2)
//               + d * lam^2,          Tk = T_C + 273.15
//
// Coefficients come from a config file carrying name, form identifier,
// named coefficients, named temperature terms, and validity ranges.
// Unknown form identifiers and unknown coefficient names are rejected.
class DispersionModel
{
public:
    static DispersionModel from_config(const ConfigFile &cfg,
                                       const std::string &section = "dispersion");
    static DispersionModel load(const std::string &path);

    // Refractive index at lam (um) and temperature (deg C); range-checked.
    double refractive_index(double wavelength_um, double temperature_c) const;

    // 2*pi*n/lam in rad/um.
    double wavevector_magnitude(double wavelength_um, double temperature_c) const;

    const std::string &name() const { return name_; }
    const std::string &form() const { return form_; }
    double wavelength_min_um() const { return lam_min_; }
    double wavelength_max_um() const { return lam_max_; }
    double temperature_min_c() const { return t_min_; }
    double temperature_max_c() const { return t_max_; }

    // True when every temperature term is exactly zero.
    bool temperature_independent() const;

private:
    std::string name_;
    std::string form_;
    double a0_ = 0.0;
    double da0_ = 0.0;
    double d_lambda2_ = 0.0;
    std::vector<SellmeierPole> poles_;
    double lam_min_ = 0.0;
    double lam_max_ = 0.0;
    double t_min_ = 0.0;
    double t_max_ = 0.0;
};
}

#endif
