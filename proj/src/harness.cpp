#include "psalink/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "psalink/errors.hpp"
#include "psalink/modem.hpp"

namespace psalink {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    const auto end = item.find_last_not_of(" \t");
    if (begin != std::string::npos) out.push_back(item.substr(begin, end - begin + 1));
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
  if (used != value.size()) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v < 0 || v != std::floor(v)) {
    throw ConfigError("config: '" + key + "' must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: '" + key + "' must be a boolean, got: " + value);
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    std::vector<double> grid;
    for (const auto& item : split_list(text)) {
      grid.push_back(parse_double("grid", item));
    }
    return grid;
  }
  const auto colon2 = text.find(':', colon + 1);
  if (colon2 == std::string::npos) {
    throw ConfigError("config: grid ranges are start:step:stop, got: " + text);
  }
  const double start = parse_double("grid", text.substr(0, colon));
  const double step = parse_double("grid", text.substr(colon + 1, colon2 - colon - 1));
  const double stop = parse_double("grid", text.substr(colon2 + 1));
  if (!(step > 0.0) || stop < start) {
    throw ConfigError("config: grid range must have step > 0 and stop >= start");
  }
  std::vector<double> grid;
  const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
  return grid;
}

ReceiverModel ExperimentConfig::receiver_model() const {
  if (receiver == "psa") return ReceiverModel::psa(nf_psa_db);
  if (receiver == "edfa") return ReceiverModel::edfa(nf_edfa_db);
  if (receiver == "ideal-sq") return ReceiverModel::ideal_sq();
  throw ConfigError("config: unknown receiver '" + receiver +
                    "' (expected psa, edfa, or ideal-sq)");
}

CodeSpec ExperimentConfig::code_spec() const {
  CodeSpec spec;
  spec.frame = frame == 16200 ? LdpcFrame::Short16200 : LdpcFrame::Normal64800;
  spec.ldpc_only = ldpc_only;
  spec.max_iter = max_iter;
  if (decoder == "sum-product") {
    spec.rule = CheckRule::SumProduct;
  } else if (decoder == "min-sum") {
    spec.rule = CheckRule::NormalizedMinSum;
  } else {
    throw ConfigError("config: unknown decoder '" + decoder +
                      "' (expected sum-product or min-sum)");
  }
  return spec;
}

unsigned ExperimentConfig::effective_workers() const {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

double ExperimentConfig::snr_per_ppb() const {
  const FecChain chain(code_spec());
  const double photons_per_ppb = chain.net_bits_per_symbol();
  const PowerBudget budget =
      receiver_budget(receiver_model().kind, photons_per_ppb, pump_suppression_db);
  double snr = symbol_snr(budget, receiver_model());
  return apply_penalties(snr, ledger, penalties);
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  if (name == "fig2-psa") {
    cfg.receiver = "psa";
    cfg.ppb_grid = parse_grid("0.8:0.05:2.0");
  } else if (name == "fig2-edfa") {
    cfg.receiver = "edfa";
    cfg.ppb_grid = parse_grid("0.8:0.05:2.0");
  } else if (name == "fig3") {
    cfg.curve_points = 240;
  } else if (name == "gmi") {
    cfg.receiver = "psa";
    cfg.ppb_grid = parse_grid("0.6:0.05:1.3");
  } else if (name == "budget") {
    ;  // defaults are the measured system
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += " " + n;
    throw ConfigError("config: unknown preset '" + name + "'; available:" + known);
  }
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"fig2-psa", "fig2-edfa", "fig3", "gmi", "budget"};
}

void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value) {
  if (key == "receiver") {
    cfg.receiver = value;
  } else if (key == "nf_psa_db") {
    cfg.nf_psa_db = parse_double(key, value);
  } else if (key == "nf_edfa_db") {
    cfg.nf_edfa_db = parse_double(key, value);
  } else if (key == "pump_suppression_db") {
    cfg.pump_suppression_db =
        value == "inf" ? std::numeric_limits<double>::infinity()
                       : parse_double(key, value);
  } else if (key == "wavelength_nm") {
    cfg.wavelength_nm = parse_double(key, value);
  } else if (key == "symbol_rate_baud") {
    cfg.symbol_rate_baud = parse_double(key, value);
  } else if (key.rfind("ledger.", 0) == 0) {
    const std::string label = key.substr(7);
    PenaltyLedger updated;
    bool replaced = false;
    for (const auto& [name, db] : cfg.ledger.entries()) {
      if (name == label) {
        updated.add(name, parse_double(key, value));
        replaced = true;
      } else {
        updated.add(name, db);
      }
    }
    if (!replaced) updated.add(label, parse_double(key, value));
    cfg.ledger = updated;
  } else if (key == "ledger") {
    if (value != "none") throw ConfigError("config: 'ledger' accepts only 'none'");
    cfg.ledger = PenaltyLedger{};
    cfg.penalties.clear();
  } else if (key == "penalties") {
    cfg.penalties = value == "none" ? std::vector<std::string>{} : split_list(value);
  } else if (key == "frame") {
    cfg.frame = static_cast<int>(parse_u64(key, value));
  } else if (key == "ldpc_only") {
    cfg.ldpc_only = parse_bool(key, value);
  } else if (key == "max_iter") {
    cfg.max_iter = static_cast<int>(parse_u64(key, value));
  } else if (key == "decoder") {
    cfg.decoder = value;
  } else if (key == "ppb_grid") {
    cfg.ppb_grid = parse_grid(value);
  } else if (key == "esn0_db_grid") {
    cfg.es_n0_db_grid = parse_grid(value);
  } else if (key == "stop_min_errors") {
    cfg.stop.min_errors = parse_u64(key, value);
  } else if (key == "stop_max_bits") {
    cfg.stop.max_bits = parse_u64(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(parse_u64(key, value));
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "models") {
    cfg.models = split_list(value);
  } else if (key == "curve_points") {
    cfg.curve_points = parse_u64(key, value);
  } else if (key == "curve_n_lo") {
    cfg.curve_n_lo = parse_double(key, value);
  } else if (key == "curve_n_hi") {
    cfg.curve_n_hi = parse_double(key, value);
  } else if (key == "gmi_target_rate") {
    cfg.gmi_target_rate = parse_double(key, value);
  } else if (key == "gmi_symbols") {
    cfg.gmi_symbols = parse_u64(key, value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw ConfigError("config: " + path + ":" + std::to_string(line_no) +
                          ": expected 'key = value'");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: " + path + ":" + std::to_string(line_no) +
                        ": empty key");
    }
    apply_key_value(cfg, key, value);
  }
}

namespace {

CapacityModel model_by_name(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "psa") return CapacityModel::psa();
  if (name == "psa-rx") return CapacityModel::psa_rx_bandwidth();
  if (name == "edfa") return CapacityModel::edfa();
  if (name == "sq") return CapacityModel::single_quadrature();
  if (name == "ppm-envelope") return CapacityModel::ppm_envelope();
  if (name == "gordon") return CapacityModel::gordon();
  if (name == "preamp") return CapacityModel::preamp(cfg.nf_psa_db);
  if (name.rfind("ppm", 0) == 0) {
    try {
      const unsigned order = static_cast<unsigned>(std::stoul(name.substr(3)));
      return CapacityModel::ppm(order);
    } catch (const std::exception&) {
      // falls through to the usage error below
    }
  }
  throw ConfigError(
      "config: unknown capacity model '" + name +
      "' (expected psa, psa-rx, edfa, sq, gordon, preamp, ppm-envelope, or ppm<M>)");
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  std::vector<std::string> problems;
  const auto check = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };

  try {
    cfg.receiver_model();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  try {
    cfg.code_spec();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  check(cfg.frame == 64800 || cfg.frame == 16200,
        "config: frame must be 64800 or 16200");
  check(cfg.max_iter >= 1, "config: max_iter must be >= 1");
  check(!(cfg.wavelength_nm <= 0), "config: wavelength_nm must be > 0");
  check(!(cfg.symbol_rate_baud <= 0), "config: symbol_rate_baud must be > 0");
  check(!std::isnan(cfg.pump_suppression_db),
        "config: pump_suppression_db must not be NaN");
  check(cfg.stop.max_bits > 0, "config: stop_max_bits must be > 0");
  check(!cfg.ppb_grid.empty(), "config: ppb_grid must be nonempty");
  check(std::is_sorted(cfg.ppb_grid.begin(), cfg.ppb_grid.end(),
                       [](double a, double b) { return a <= b; }),
        "config: ppb_grid must be strictly increasing");
  for (double p : cfg.ppb_grid) {
    check(p > 0, "config: ppb_grid values must be > 0");
  }
  check(!cfg.es_n0_db_grid.empty(), "config: esn0_db_grid must be nonempty");
  check(std::is_sorted(cfg.es_n0_db_grid.begin(), cfg.es_n0_db_grid.end(),
                       [](double a, double b) { return a <= b; }),
        "config: esn0_db_grid must be strictly increasing");
  for (const auto& label : cfg.penalties) {
    if (!cfg.ledger.contains(label)) {
      problems.push_back("config: penalty label '" + label + "' not in the ledger");
    }
  }
  check(!cfg.models.empty(), "config: models must be nonempty");
  for (const auto& name : cfg.models) {
    try {
      model_by_name(name, cfg);
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  check(cfg.curve_points >= 2, "config: curve_points must be >= 2");
  check(cfg.curve_n_lo > 0 && cfg.curve_n_hi > cfg.curve_n_lo,
        "config: curve grid needs 0 < curve_n_lo < curve_n_hi");
  check(cfg.gmi_target_rate > 0 && cfg.gmi_target_rate < 2,
        "config: gmi_target_rate must be in (0, 2)");
  check(cfg.gmi_symbols >= 1024, "config: gmi_symbols must be >= 1024");

  if (!problems.empty()) {
    std::string all = problems.front();
    for (std::size_t i = 1; i < problems.size(); ++i) all += "\n" + problems[i];
    throw ConfigError(all);
  }
}

namespace {

class CsvFile {
 public:
  CsvFile(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
  }
  void meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << " " << value << "\n";
  }
  void meta(const std::string& key, double value) { meta(key, format_number(value)); }
  void header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out_ << (i ? "," : "") << columns[i];
    }
    out_ << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << (i ? "," : "") << cells[i];
    }
    out_ << "\n";
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_common_meta(CsvFile& csv, const ExperimentConfig& cfg) {
  csv.meta("receiver", cfg.receiver);
  csv.meta("nf_psa_db", cfg.nf_psa_db);
  csv.meta("nf_edfa_db", cfg.nf_edfa_db);
  csv.meta("pump_suppression_db", cfg.pump_suppression_db);
  csv.meta("wavelength_nm", cfg.wavelength_nm);
  csv.meta("symbol_rate_baud", cfg.symbol_rate_baud);
  std::string pen;
  for (const auto& p : cfg.penalties) pen += (pen.empty() ? "" : ",") + p;
  csv.meta("penalties", pen.empty() ? "none" : pen);
  csv.meta("seed", static_cast<double>(cfg.seed));
}

}  // namespace

std::vector<std::string> cmd_capacity_curves(const ExperimentConfig& cfg) {
  validate(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  std::vector<std::string> written;

  struct NamedCurve {
    std::string name;
    std::vector<CurvePoint> points;
  };
  std::vector<NamedCurve> curves;

  for (const auto& name : cfg.models) {
    const CapacityModel model = model_by_name(name, cfg);
    std::vector<CurvePoint> points;
    std::vector<std::string> diagnostics;
    if (model.kind == CapacityKind::PpmEnvelope) {
      const auto se_grid = log_grid(1e-3, 0.4999, cfg.curve_points);
      points = ppm_envelope(se_grid, &diagnostics);
    } else {
      const auto grid = log_grid(cfg.curve_n_lo, cfg.curve_n_hi, cfg.curve_points);
      points = sample_curve(model, grid);
    }

    CsvFile csv(join_path(cfg.out_dir, "curve_" + model.name() + ".csv"));
    csv.meta("model", model.name());
    for (const auto& d : diagnostics) csv.meta("note", d);
    csv.header({"model", "n_s", "se", "ppb"});
    for (const auto& p : points) {
      csv.row({model.name(), format_number(p.n_s), format_number(p.se),
               format_number(p.ppb)});
    }
    written.push_back(csv.path());
    curves.push_back({model.name(), std::move(points)});
  }

  CsvFile crossings(join_path(cfg.out_dir, "crossings.csv"));
  crossings.header({"model_a", "model_b", "se_star"});
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      const auto se = find_crossover(curves[a].points, curves[b].points);
      if (se) {
        crossings.row({curves[a].name, curves[b].name, format_number(*se)});
      }
    }
  }
  written.push_back(crossings.path());
  return written;
}

std::vector<std::string> cmd_ber_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  std::filesystem::create_directories(cfg.out_dir);

  const CodeSpec code = cfg.code_spec();
  const FecChain chain(code);
  const auto constants = OpticalConstants::at_wavelength_nm(cfg.wavelength_nm);
  const double snr_per_ppb = cfg.snr_per_ppb();
  const unsigned workers = cfg.effective_workers();

  CsvFile csv(join_path(cfg.out_dir, "ber_sweep.csv"));
  write_common_meta(csv, cfg);
  csv.meta("frame", static_cast<double>(cfg.frame));
  csv.meta("ldpc_only", cfg.ldpc_only ? "true" : "false");
  csv.meta("decoder", cfg.decoder);
  csv.meta("max_iter", static_cast<double>(cfg.max_iter));
  csv.meta("ldpc_table_crc32", [&] {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", chain.ldpc().table_crc32());
    return std::string(buf);
  }());
  csv.meta("net_bits_per_symbol", chain.net_bits_per_symbol());
  csv.header({"ppb_total", "dbm", "es_n0_db", "prefec_theory", "prefec_ber",
              "prefec_ci_lo", "prefec_ci_hi", "prefec_errors", "prefec_bits",
              "postfec_ber", "postfec_ci_lo", "postfec_ci_hi", "postfec_errors",
              "postfec_bits", "fer", "frame_errors", "frames", "avg_iterations"});

  // Es/N0 per grid point; the coded engine also counts pre-FEC errors on the
  // same frames.
  std::vector<double> es_grid;
  es_grid.reserve(cfg.ppb_grid.size());
  for (double ppb : cfg.ppb_grid) es_grid.push_back(ppb * snr_per_ppb);
  const auto points = waterfall(es_grid, code, cfg.stop, cfg.seed, workers);

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    const double ppb = cfg.ppb_grid[i];
    const double n_s = ppb * chain.net_bits_per_symbol();
    const auto pre = ber_with_ci(pt.prefec_errors, pt.prefec_bits);
    const auto post = ber_with_ci(pt.postfec_errors, pt.postfec_bits);
    csv.row({format_number(ppb),
             format_number(photons_to_dbm(n_s, cfg.symbol_rate_baud, constants)),
             format_number(linear_to_db(pt.es_n0)),
             format_number(theoretical_ber_qpsk(pt.es_n0)), format_number(pre.ber),
             format_number(pre.ci95_low), format_number(pre.ci95_high),
             format_number(double(pt.prefec_errors)), format_number(double(pt.prefec_bits)),
             format_number(post.ber), format_number(post.ci95_low),
             format_number(post.ci95_high), format_number(double(pt.postfec_errors)),
             format_number(double(pt.postfec_bits)),
             format_number(pt.frame_error_rate()),
             format_number(double(pt.frame_errors)), format_number(double(pt.frames)),
             format_number(pt.avg_iterations)});
  }
  return {csv.path()};
}

std::vector<std::string> cmd_fec_waterfall(const ExperimentConfig& cfg) {
  validate(cfg);
  std::filesystem::create_directories(cfg.out_dir);

  std::vector<double> es_grid;
  es_grid.reserve(cfg.es_n0_db_grid.size());
  for (double db : cfg.es_n0_db_grid) es_grid.push_back(db_to_linear(db));

  const auto points =
      waterfall(es_grid, cfg.code_spec(), cfg.stop, cfg.seed, cfg.effective_workers());

  CsvFile csv(join_path(cfg.out_dir, "fec_waterfall.csv"));
  write_common_meta(csv, cfg);
  csv.meta("frame", static_cast<double>(cfg.frame));
  csv.meta("decoder", cfg.decoder);
  csv.meta("max_iter", static_cast<double>(cfg.max_iter));
  csv.header({"es_n0_db", "prefec_ber", "postfec_ber", "fer", "frame_errors", "frames",
              "postfec_errors", "postfec_bits", "avg_iterations"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    csv.row({format_number(cfg.es_n0_db_grid[i]), format_number(pt.prefec_ber()),
             format_number(pt.postfec_ber()), format_number(pt.frame_error_rate()),
             format_number(double(pt.frame_errors)), format_number(double(pt.frames)),
             format_number(double(pt.postfec_errors)),
             format_number(double(pt.postfec_bits)),
             format_number(pt.avg_iterations)});
  }
  return {csv.path()};
}

std::vector<std::string> cmd_gmi_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  std::filesystem::create_directories(cfg.out_dir);

  const ReceiverModel rx = cfg.receiver_model();

  CsvFile csv(join_path(cfg.out_dir, "gmi_sweep.csv"));
  write_common_meta(csv, cfg);
  csv.meta("gmi_target_rate", cfg.gmi_target_rate);
  csv.meta("gmi_symbols", static_cast<double>(cfg.gmi_symbols));
  csv.header({"ppb_total", "es_n0_db", "gmi_bits_per_symbol", "gmi_std_error",
              "samples"});

  for (double ppb : cfg.ppb_grid) {
    const double n_s = ppb * cfg.gmi_target_rate;
    const PowerBudget budget =
        receiver_budget(rx.kind, n_s, cfg.pump_suppression_db);
    const double snr = apply_penalties(symbol_snr(budget, rx), cfg.ledger, cfg.penalties);

    BitBlock bits(2 * cfg.gmi_symbols);
    RandomStream data_rng(cfg.seed, make_stream_id(0, 0, 1));
    data_rng.fill_bits(bits.data(), bits.size());
    ChannelSpec spec;
    spec.es_n0 = snr;
    spec.seed = cfg.seed;
    spec.stream_id = make_stream_id(0, 0, 2);
    const SymbolBlock rx_symbols = awgn(qpsk_map(bits), spec);
    const auto est = gmi_from_llrs(qpsk_llr(rx_symbols, snr), bits);

    csv.row({format_number(ppb), format_number(linear_to_db(snr)),
             format_number(est.bits_per_symbol), format_number(est.std_error),
             format_number(double(est.sample_count))});
  }

  IdealFecOptions opt;
  opt.target_rate = cfg.gmi_target_rate;
  opt.pump_suppression_db = cfg.pump_suppression_db;
  opt.penalties = cfg.penalties;
  opt.seed = cfg.seed;
  opt.symbols_per_eval = cfg.gmi_symbols;
  const double solution = ideal_fec_sensitivity(rx, cfg.ledger, opt);
  csv.meta("ideal_fec_sensitivity_ppb", solution);
  return {csv.path()};
}

double dvbs2_r12_qpsk_threshold_es_n0_db() {
  // Measured with `psalink fec-waterfall` on the normal frame, sum-product,
  // 50 iterations: lowest grid point with zero post-FEC errors over 2e7 bits.
  return 1.0;
}

void cmd_budget(const ExperimentConfig& cfg, std::ostream& out) {
  validate(cfg);
  const ReceiverModel rx = cfg.receiver_model();
  const PowerBudget unit = receiver_budget(rx.kind, 1.0, cfg.pump_suppression_db);

  out << "link budget (" << cfg.receiver << ", nf " << format_number(rx.nf_db)
      << " dB)\n";
  out << "wave photons per symbol at 1.0 total:\n";
  out << "  signal " << format_number(unit.signal_photons) << "\n";
  out << "  idler  " << format_number(unit.idler_photons) << "\n";
  out << "  pump   " << format_number(unit.pump_photons) << "  (suppression "
      << format_number(cfg.pump_suppression_db) << " dB, overhead "
      << format_number(pump_overhead_db(cfg.pump_suppression_db)) << " dB)\n";

  out << "penalty ledger:\n";
  for (const auto& [label, db] : cfg.ledger.entries()) {
    out << "  " << label << " " << format_number(db) << " dB\n";
  }
  out << "  total " << format_number(cfg.ledger.total_db()) << " dB\n";

  // Shannon-limited point of the PSA at the operating spectral efficiency,
  // lifted by the full ledger.
  const double theory_ppb = sensitivity_at(CapacityModel::psa(), 0.5);
  const double ledger_ppb = theory_ppb * db_to_linear(cfg.ledger.total_db());
  out << "sensitivity at spectral efficiency 0.5:\n";
  out << "  shannon-limited       " << format_number(theory_ppb) << " PPB\n";
  out << "  with ledger penalties " << format_number(ledger_ppb) << " PPB\n";

  // Code-threshold prediction through the mechanistic path (budget split,
  // noise figure, enabled residual penalties, code overhead).
  const double snr_per_ppb = cfg.snr_per_ppb();
  const double threshold_snr = db_to_linear(dvbs2_r12_qpsk_threshold_es_n0_db());
  out << "  code-threshold (es/n0 "
      << format_number(dvbs2_r12_qpsk_threshold_es_n0_db())
      << " dB): " << format_number(threshold_snr / snr_per_ppb) << " PPB\n";
}

}  // namespace psalink
