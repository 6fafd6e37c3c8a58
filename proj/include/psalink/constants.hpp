#ifndef PSALINK_CONSTANTS_HPP
#define PSALINK_CONSTANTS_HPP

#include <cmath>
#include <stdexcept>

namespace psalink {

inline constexpr double kPlanck = 6.62607015e-34;     // J s
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Carrier-wave constants derived from one optical wavelength.
struct OpticalConstants {
  double wavelength_nm;
  double carrier_frequency_hz;  // c / lambda
  double photon_energy_j;       // h * nu

  static OpticalConstants at_wavelength_nm(double nm) {
    if (!(nm > 0.0)) {
      throw std::invalid_argument("OpticalConstants: wavelength must be > 0 nm");
    }
    const double nu = kSpeedOfLight / (nm * 1e-9);
    return OpticalConstants{nm, nu, kPlanck * nu};
  }
};

}  // namespace psalink

#endif
