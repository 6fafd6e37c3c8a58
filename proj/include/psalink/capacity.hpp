#ifndef PSALINK_CAPACITY_HPP
#define PSALINK_CAPACITY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psalink {

/// One point of a sensitivity curve: spectral efficiency (bits/s/Hz),
/// photons per information bit, and the parameter that generated the point
/// (photons/symbol, or photons/pulse for PPM).
struct CurvePoint {
  double se = 0.0;
  double ppb = 0.0;
  double n_s = 0.0;
};

enum class CapacityKind {
  Preamp,          // generic pre-amplified dual-quadrature receiver, nf_db parameter
  Psa,             // phase-sensitive pre-amp, signal+idler occupy the bandwidth
  PsaRxBandwidth,  // same sensitivity, spectral efficiency per receiver bandwidth
  Edfa,
  SingleQuadrature,
  Ppm,             // M-ary pulse-position modulation, photon counting
  PpmEnvelope,     // lower envelope over all M
  Gordon,          // quantum capacity limit
};

struct CapacityModel {
  CapacityKind kind = CapacityKind::Psa;
  double nf_db = 0.0;       // Preamp only
  unsigned ppm_order = 64;  // Ppm only; power of two >= 2

  static CapacityModel preamp(double nf_db);
  static CapacityModel psa() { return {CapacityKind::Psa, 0.0, 0}; }
  static CapacityModel psa_rx_bandwidth() { return {CapacityKind::PsaRxBandwidth, 0.0, 0}; }
  static CapacityModel edfa() { return {CapacityKind::Edfa, 0.0, 0}; }
  static CapacityModel single_quadrature() { return {CapacityKind::SingleQuadrature, 0.0, 0}; }
  static CapacityModel ppm(unsigned order);  // validates power of two >= 2
  static CapacityModel ppm_envelope() { return {CapacityKind::PpmEnvelope, 0.0, 0}; }
  static CapacityModel gordon() { return {CapacityKind::Gordon, 0.0, 0}; }

  std::string name() const;
};

/// Capacity of a pre-amplified dual-quadrature receiver in bits per symbol
/// bandwidth: log2(1 + 2 n_s / F).
double cap_preamp(double n_s, double nf_db);

/// PSA capacity per unit occupied bandwidth (signal + idler):
/// 0.5 log2(1 + 4 n_s); n_s counts signal-wave photons only.
double cap_psa(double n_s);

/// Photons per information bit of a model at the given curve parameter.
/// For PSA the black-box count includes the idler's photons (2 n_s).
double ppb_of(const CapacityModel& model, double n_s);

/// Spectral efficiency of a model at the given curve parameter.
double se_of(const CapacityModel& model, double n_s);

/// Analytic n_s -> 0 limit of ppb_of. Defined for Psa, SingleQuadrature,
/// Edfa, and Preamp; other kinds throw (their limits are exposed through
/// curve sampling instead).
double low_snr_limit(const CapacityModel& model);

/// Samples (se, ppb) along a photon grid; rx_bandwidth_view doubles the
/// spectral efficiency at equal ppb (idler bandwidth ignored).
std::vector<CurvePoint> psa_curve(std::span<const double> n_s_grid, bool rx_bandwidth_view);

/// Samples any non-envelope model along its parameter grid.
std::vector<CurvePoint> sample_curve(const CapacityModel& model,
                                     std::span<const double> param_grid);

/// M-slot PPM over the noiseless Poisson erasure channel, sampled over
/// photons-per-pulse K: se = (1-e^-K) log2(M)/M, ppb = K/((1-e^-K) log2(M)).
std::vector<CurvePoint> ppm_curve(unsigned order, std::span<const double> k_grid);

/// Lower envelope of all M-ary PPM curves (M = 2..2^20) on an se grid.
/// Unattainable se values are omitted; `diagnostics`, when given, receives
/// one message per omitted point.
std::vector<CurvePoint> ppm_envelope(std::span<const double> se_grid,
                                     std::vector<std::string>* diagnostics = nullptr);

/// Quantum capacity boundary: se = log2(1+n) + n log2(1+1/n), ppb = n/se.
std::vector<CurvePoint> gordon_curve(std::span<const double> n_grid);

/// Spectral efficiency at which two sampled curves have equal ppb, located by
/// bisection on the interpolated difference to |dse| < 1e-4. Returns nullopt
/// when the difference never changes sign over the common se range.
std::optional<double> find_crossover(std::span<const CurvePoint> curve_a,
                                     std::span<const CurvePoint> curve_b);

/// Photons per bit of a model at a requested spectral efficiency, through
/// numeric inversion of the monotone se(n_s). Unattainable se throws
/// std::domain_error naming the model's supremum when one exists.
double sensitivity_at(const CapacityModel& model, double se);

/// Logarithmically spaced grid, endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace psalink

#endif
