#include "psalink/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace psalink {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr unsigned kMaxPpmExponent = 20;  // envelope search capped at M = 2^20

double log2_1p(double x) { return std::log1p(x) / kLn2; }
}  // namespace

CapacityModel CapacityModel::preamp(double nf_db) {
  if (!(nf_db >= 0.0)) {
    throw std::invalid_argument("CapacityModel: preamp noise figure must be >= 0 dB");
  }
  return {CapacityKind::Preamp, nf_db, 0};
}

CapacityModel CapacityModel::ppm(unsigned order) {
  if (order < 2 || (order & (order - 1)) != 0) {
    throw std::invalid_argument("CapacityModel: PPM order must be a power of two >= 2");
  }
  return {CapacityKind::Ppm, 0.0, order};
}

std::string CapacityModel::name() const {
  switch (kind) {
    case CapacityKind::Preamp: {
      std::ostringstream s;
      s << "preamp" << nf_db << "dB";
      return s.str();
    }
    case CapacityKind::Psa: return "psa";
    case CapacityKind::PsaRxBandwidth: return "psa-rx";
    case CapacityKind::Edfa: return "edfa";
    case CapacityKind::SingleQuadrature: return "sq";
    case CapacityKind::Ppm: return "ppm" + std::to_string(ppm_order);
    case CapacityKind::PpmEnvelope: return "ppm-envelope";
    case CapacityKind::Gordon: return "gordon";
  }
  return "?";
}

double cap_preamp(double n_s, double nf_db) {
  if (!(n_s >= 0.0)) throw std::invalid_argument("cap_preamp: n_s must be >= 0");
  return log2_1p(2.0 * n_s / std::pow(10.0, nf_db / 10.0));
}

double cap_psa(double n_s) {
  if (!(n_s >= 0.0)) throw std::invalid_argument("cap_psa: n_s must be >= 0");
  return 0.5 * log2_1p(4.0 * n_s);
}

double se_of(const CapacityModel& model, double n_s) {
  switch (model.kind) {
    case CapacityKind::Preamp:
      return cap_preamp(n_s, model.nf_db);
    case CapacityKind::Psa:
    case CapacityKind::SingleQuadrature:
      return cap_psa(n_s);
    case CapacityKind::PsaRxBandwidth:
      return 2.0 * cap_psa(n_s);
    case CapacityKind::Edfa:
      return log2_1p(n_s);
    case CapacityKind::Gordon:
      return log2_1p(n_s) + n_s * log2_1p(1.0 / n_s);
    case CapacityKind::Ppm: {
      // parameter is photons per pulse
      const double m = model.ppm_order;
      return -std::expm1(-n_s) * std::log2(m) / m;
    }
    case CapacityKind::PpmEnvelope:
      throw std::invalid_argument("se_of: envelope has no single-parameter form");
  }
  throw std::logic_error("se_of: unhandled kind");
}

double ppb_of(const CapacityModel& model, double n_s) {
  if (!(n_s > 0.0)) throw std::invalid_argument("ppb_of: parameter must be > 0");
  switch (model.kind) {
    case CapacityKind::Preamp:
      return n_s / cap_preamp(n_s, model.nf_db);
    case CapacityKind::Psa:
    case CapacityKind::PsaRxBandwidth:
    case CapacityKind::SingleQuadrature:
      // Both waves' photons count toward the black-box budget.
      return 2.0 * n_s / (2.0 * cap_psa(n_s));
    case CapacityKind::Edfa:
      return n_s / log2_1p(n_s);
    case CapacityKind::Gordon:
      return n_s / se_of(model, n_s);
    case CapacityKind::Ppm: {
      const double m = model.ppm_order;
      return n_s / (-std::expm1(-n_s) * std::log2(m));
    }
    case CapacityKind::PpmEnvelope:
      throw std::invalid_argument("ppb_of: envelope has no single-parameter form");
  }
  throw std::logic_error("ppb_of: unhandled kind");
}

double low_snr_limit(const CapacityModel& model) {
  switch (model.kind) {
    case CapacityKind::Psa:
    case CapacityKind::SingleQuadrature:
    case CapacityKind::PsaRxBandwidth:
      return kLn2 / 2.0;
    case CapacityKind::Edfa:
      return kLn2;
    case CapacityKind::Preamp:
      return std::pow(10.0, model.nf_db / 10.0) * kLn2 / 2.0;
    default:
      throw std::invalid_argument("low_snr_limit: unsupported for " + model.name() +
                                  "; sample its curve instead");
  }
}

std::vector<CurvePoint> sample_curve(const CapacityModel& model,
                                     std::span<const double> param_grid) {
  if (model.kind == CapacityKind::PpmEnvelope) {
    return ppm_envelope(param_grid);
  }
  std::vector<CurvePoint> out;
  out.reserve(param_grid.size());
  for (double p : param_grid) {
    out.push_back(CurvePoint{se_of(model, p), ppb_of(model, p), p});
  }
  return out;
}

std::vector<CurvePoint> psa_curve(std::span<const double> n_s_grid,
                                  bool rx_bandwidth_view) {
  return sample_curve(rx_bandwidth_view ? CapacityModel::psa_rx_bandwidth()
                                        : CapacityModel::psa(),
                      n_s_grid);
}

std::vector<CurvePoint> ppm_curve(unsigned order, std::span<const double> k_grid) {
  return sample_curve(CapacityModel::ppm(order), k_grid);
}

namespace {

/// Minimum ppb over all M achieving spectral efficiency se, or nullopt when
/// no M reaches it. For fixed M the photon load solves
/// (1 - e^-K) = se*M/log2(M) exactly.
std::optional<CurvePoint> envelope_point(double se) {
  std::optional<CurvePoint> best;
  for (unsigned e = 1; e <= kMaxPpmExponent; ++e) {
    const double m = static_cast<double>(1u << e);
    const double bits = e;  // log2(M)
    const double fill = se * m / bits;  // required detection probability
    if (fill >= 1.0) continue;          // se beyond this M's supremum
    const double k = -std::log1p(-fill);
    const double ppb = k / (se * m);
    if (!best || ppb < best->ppb) {
      best = CurvePoint{se, ppb, k};
    }
  }
  return best;
}

}  // namespace

std::vector<CurvePoint> ppm_envelope(std::span<const double> se_grid,
                                     std::vector<std::string>* diagnostics) {
  std::vector<CurvePoint> out;
  out.reserve(se_grid.size());
  for (double se : se_grid) {
    if (!(se > 0.0)) throw std::invalid_argument("ppm_envelope: se must be > 0");
    if (auto p = envelope_point(se)) {
      out.push_back(*p);
    } else if (diagnostics) {
      std::ostringstream msg;
      msg << "ppm_envelope: se " << se << " above every PPM curve (supremum 0.5); "
          << "point omitted";
      diagnostics->push_back(msg.str());
    }
  }
  return out;
}

std::vector<CurvePoint> gordon_curve(std::span<const double> n_grid) {
  return sample_curve(CapacityModel::gordon(), n_grid);
}

namespace {

/// Linear interpolation of ppb(se) on a curve sampled with increasing se.
double interp_ppb(std::span<const CurvePoint> curve, double se) {
  auto it = std::lower_bound(curve.begin(), curve.end(), se,
                             [](const CurvePoint& p, double v) { return p.se < v; });
  if (it == curve.begin()) return it->ppb;
  if (it == curve.end()) return (it - 1)->ppb;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (se - lo.se) / (hi.se - lo.se);
  return lo.ppb + w * (hi.ppb - lo.ppb);
}

}  // namespace

std::optional<double> find_crossover(std::span<const CurvePoint> curve_a,
                                     std::span<const CurvePoint> curve_b) {
  if (curve_a.empty() || curve_b.empty()) return std::nullopt;
  const double lo = std::max(curve_a.front().se, curve_b.front().se);
  const double hi = std::min(curve_a.back().se, curve_b.back().se);
  if (!(hi > lo)) return std::nullopt;

  const auto diff = [&](double se) {
    return interp_ppb(curve_a, se) - interp_ppb(curve_b, se);
  };

  // Scan for the first sign change, then bisect inside it.
  constexpr int kScanSteps = 512;
  double prev_se = lo;
  double prev_d = diff(lo);
  for (int i = 1; i <= kScanSteps; ++i) {
    const double se = lo + (hi - lo) * i / kScanSteps;
    const double d = diff(se);
    if (prev_d == 0.0) return prev_se;
    if ((prev_d < 0.0) != (d < 0.0)) {
      double a = prev_se, b = se;
      double da = prev_d;
      while (b - a > 1e-4) {
        const double mid = 0.5 * (a + b);
        const double dm = diff(mid);
        if (dm == 0.0) return mid;
        if ((da < 0.0) != (dm < 0.0)) {
          b = mid;
        } else {
          a = mid;
          da = dm;
        }
      }
      return 0.5 * (a + b);
    }
    prev_se = se;
    prev_d = d;
  }
  return std::nullopt;
}

double sensitivity_at(const CapacityModel& model, double se) {
  if (!(se > 0.0)) throw std::invalid_argument("sensitivity_at: se must be > 0");

  if (model.kind == CapacityKind::PpmEnvelope) {
    const auto p = envelope_point(se);
    if (!p) {
      throw std::domain_error("sensitivity_at: se " + std::to_string(se) +
                              " unattainable for ppm-envelope (supremum 0.5)");
    }
    return p->ppb;
  }

  // Finite-supremum models reject out-of-range requests up front.
  if (model.kind == CapacityKind::Ppm) {
    const double sup = std::log2(double(model.ppm_order)) / model.ppm_order;
    if (se >= sup) {
      std::ostringstream msg;
      msg << "sensitivity_at: se " << se << " unattainable for " << model.name()
          << " (supremum " << sup << ")";
      throw std::domain_error(msg.str());
    }
  }

  // se(n) is strictly increasing for every remaining model; bracket then bisect.
  double lo = 1e-12;
  double hi = 1.0;
  if (se_of(model, lo) > se) {
    throw std::domain_error("sensitivity_at: se below the sampled range");
  }
  int guard = 0;
  while (se_of(model, hi) < se) {
    hi *= 2.0;
    if (++guard > 400) {
      throw std::domain_error("sensitivity_at: se " + std::to_string(se) +
                              " unattainable for " + model.name());
    }
  }
  while ((hi - lo) / hi > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (se_of(model, mid) < se) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return ppb_of(model, 0.5 * (lo + hi));
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) {
    throw std::invalid_argument("log_grid: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo * std::exp(step * static_cast<double>(i));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace psalink
