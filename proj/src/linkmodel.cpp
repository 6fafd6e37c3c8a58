#include "psalink/linkmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "psalink/errors.hpp"

namespace psalink {

ReceiverModel ReceiverModel::psa(double nf_db) {
  if (!(nf_db >= 0.0)) {
    throw std::invalid_argument("ReceiverModel: PSA noise figure must be >= 0 dB");
  }
  return ReceiverModel{ReceiverKind::Psa, nf_db};
}

ReceiverModel ReceiverModel::edfa(double nf_db) {
  if (!(nf_db >= 3.0)) {
    throw std::invalid_argument("ReceiverModel: EDFA noise figure must be >= 3 dB");
  }
  return ReceiverModel{ReceiverKind::Edfa, nf_db};
}

ReceiverModel ReceiverModel::ideal_sq() {
  return ReceiverModel{ReceiverKind::IdealSq, 0.0};
}

void PenaltyLedger::add(const std::string& label, double penalty_db) {
  if (!(penalty_db >= 0.0)) {
    throw std::invalid_argument("PenaltyLedger: penalty must be >= 0 dB: " + label);
  }
  if (contains(label)) {
    throw std::invalid_argument("PenaltyLedger: duplicate label: " + label);
  }
  entries_.emplace_back(label, penalty_db);
}

bool PenaltyLedger::contains(const std::string& label) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == label; });
}

double PenaltyLedger::entry_db(const std::string& label) const {
  for (const auto& [name, db] : entries_) {
    if (name == label) return db;
  }
  throw ConfigError("PenaltyLedger: unknown label: " + label);
}

double PenaltyLedger::total_db() const {
  double sum = 0.0;
  for (const auto& [name, db] : entries_) sum += db;
  return sum;
}

PenaltyLedger measured_system_ledger() {
  PenaltyLedger ledger;
  ledger.add("nf_excess", 1.2);
  ledger.add("impl", 0.4);
  ledger.add("dvbs2", 0.7);
  ledger.add("wdm", 0.2);
  ledger.add("pump", 0.26);
  ledger.add("pll", 0.3);
  return ledger;
}

std::vector<std::string> residual_penalty_labels() {
  return {"impl", "wdm", "pll"};
}

double photons_to_dbm(double n, double symbol_rate_hz, const OpticalConstants& constants) {
  if (!(n >= 0.0)) throw std::invalid_argument("photons_to_dbm: n must be >= 0");
  if (!(symbol_rate_hz > 0.0)) {
    throw std::invalid_argument("photons_to_dbm: symbol rate must be > 0");
  }
  if (n == 0.0) return -std::numeric_limits<double>::infinity();
  const double watts = n * constants.photon_energy_j * symbol_rate_hz;
  return 10.0 * std::log10(watts * 1e3);
}

double dbm_to_photons(double dbm, double symbol_rate_hz, const OpticalConstants& constants) {
  if (!(symbol_rate_hz > 0.0)) {
    throw std::invalid_argument("dbm_to_photons: symbol rate must be > 0");
  }
  if (dbm == -std::numeric_limits<double>::infinity()) return 0.0;
  const double watts = std::pow(10.0, dbm / 10.0) * 1e-3;
  return watts / (constants.photon_energy_j * symbol_rate_hz);
}

double vacuum_noise_dbm(double resolution_bandwidth_nm, const OpticalConstants& constants) {
  if (!(resolution_bandwidth_nm > 0.0)) {
    throw std::invalid_argument("vacuum_noise_dbm: resolution bandwidth must be > 0");
  }
  const double lambda_m = constants.wavelength_nm * 1e-9;
  const double delta_nu =
      kSpeedOfLight * resolution_bandwidth_nm * 1e-9 / (lambda_m * lambda_m);
  const double watts = constants.photon_energy_j * delta_nu / 2.0;
  return 10.0 * std::log10(watts * 1e3);
}

PowerBudget split_budget(double total_photons, double pump_suppression_db) {
  if (!(total_photons >= 0.0)) {
    throw std::invalid_argument("split_budget: total must be >= 0");
  }
  if (std::isnan(pump_suppression_db)) {
    throw std::invalid_argument("split_budget: suppression must not be NaN");
  }
  const double ratio = std::pow(10.0, -pump_suppression_db / 10.0);  // 0 at +inf
  const double signal = total_photons / (2.0 * (1.0 + ratio));
  // Pump as the exact complement keeps the budget conserved to the last ulp.
  const double pump = total_photons - 2.0 * signal;
  return PowerBudget{signal, signal, pump, pump_suppression_db};
}

double pump_overhead_db(double pump_suppression_db) {
  if (std::isnan(pump_suppression_db)) {
    throw std::invalid_argument("pump_overhead_db: suppression must not be NaN");
  }
  return 10.0 * std::log10(1.0 + std::pow(10.0, -pump_suppression_db / 10.0));
}

PowerBudget receiver_budget(ReceiverKind kind, double total_photons,
                            double pump_suppression_db) {
  if (kind == ReceiverKind::Psa) {
    return split_budget(total_photons, pump_suppression_db);
  }
  if (!(total_photons >= 0.0)) {
    throw std::invalid_argument("receiver_budget: total must be >= 0");
  }
  return PowerBudget{total_photons, 0.0, 0.0,
                     std::numeric_limits<double>::infinity()};
}

double symbol_snr(const PowerBudget& budget, const ReceiverModel& receiver) {
  const double f_lin = db_to_linear(receiver.nf_db);
  switch (receiver.kind) {
    case ReceiverKind::Edfa:
      return 2.0 * budget.signal_photons / f_lin;
    case ReceiverKind::Psa:
      return 4.0 * budget.signal_photons / f_lin;
    case ReceiverKind::IdealSq:
      return 4.0 * budget.signal_photons;
  }
  throw std::logic_error("symbol_snr: unhandled receiver kind");
}

double apply_penalties(double snr, const PenaltyLedger& ledger,
                       std::span<const std::string> subset) {
  double total_db = 0.0;
  for (const auto& label : subset) {
    total_db += ledger.entry_db(label);  // throws ConfigError on unknown label
  }
  return snr * std::pow(10.0, -total_db / 10.0);
}

double apply_all_penalties(double snr, const PenaltyLedger& ledger) {
  return snr * std::pow(10.0, -ledger.total_db() / 10.0);
}

}  // namespace psalink
