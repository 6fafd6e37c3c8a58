#include "psalink/ldpc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "psalink/errors.hpp"

namespace psalink {

namespace {

constexpr int kGroupWidth = 360;
constexpr int kMaxDegree = 32;  // stack buffers in the decoder

std::uint32_t crc32_ieee(const std::string& data) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) {
        c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      }
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (unsigned char ch : data) {
    crc = table[(crc ^ ch) & 0xFFu] ^ (crc >> 8);
  }
  return crc ^ 0xFFFFFFFFu;
}

}  // namespace

std::string default_table_path(LdpcFrame frame) {
  const char* base = std::getenv("PSALINK_DATA_DIR");
#ifdef PSALINK_DATA_DIR
  if (base == nullptr) base = PSALINK_DATA_DIR;
#endif
  if (base == nullptr) base = "data";
  const char* name = frame == LdpcFrame::Normal64800 ? "dvbs2_ldpc_r12_n64800.txt"
                                                     : "dvbs2_ldpc_r12_s16200.txt";
  return std::string(base) + "/" + name;
}

LdpcCode LdpcCode::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("LdpcCode: cannot open table file: " + path);
  }

  LdpcCode code;
  int rows = -1;
  bool have_crc = false;
  std::uint32_t declared_crc = 0;
  std::string line;

  // Header: key/value lines up to and including crc32.
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "nldpc") {
      ls >> code.frame_length_;
    } else if (key == "kldpc") {
      ls >> code.info_length_;
    } else if (key == "q") {
      ls >> code.q_;
    } else if (key == "rows") {
      ls >> rows;
    } else if (key == "crc32") {
      ls >> std::hex >> declared_crc;
      have_crc = true;
      break;
    } else {
      throw ConfigError("LdpcCode: unknown header key '" + key + "' in " + path);
    }
    if (!ls) throw ConfigError("LdpcCode: malformed header line in " + path);
  }
  if (!have_crc || rows <= 0 || code.frame_length_ <= 0 || code.info_length_ <= 0 ||
      code.q_ <= 0) {
    throw ConfigError("LdpcCode: incomplete header in " + path);
  }
  const int m = code.frame_length_ - code.info_length_;
  if (code.q_ * kGroupWidth != m || rows * kGroupWidth != code.info_length_) {
    throw ConfigError("LdpcCode: inconsistent dimensions in " + path);
  }

  std::string body;
  for (int r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) {
      throw ConfigError("LdpcCode: table truncated in " + path);
    }
    std::istringstream ls(line);
    std::vector<std::int32_t> addrs;
    std::int32_t a;
    while (ls >> a) {
      if (a < 0 || a >= m) {
        throw ConfigError("LdpcCode: address out of range in " + path);
      }
      addrs.push_back(a);
    }
    if (addrs.empty() || addrs.size() > kMaxDegree) {
      throw ConfigError("LdpcCode: bad row degree in " + path);
    }
    std::string canon;
    for (std::size_t i = 0; i < addrs.size(); ++i) {
      if (i) canon += ' ';
      canon += std::to_string(addrs[i]);
    }
    body += canon;
    body += '\n';
    code.groups_.push_back(std::move(addrs));
  }

  const std::uint32_t actual = crc32_ieee(body);
  if (actual != declared_crc) {
    std::ostringstream msg;
    msg << "LdpcCode: table checksum mismatch in " << path << ": declared " << std::hex
        << declared_crc << ", computed " << actual;
    throw ConfigError(msg.str());
  }
  code.crc32_ = actual;
  code.build_graph();
  return code;
}

const LdpcCode& LdpcCode::standard(LdpcFrame frame) {
  static std::mutex mutex;
  static LdpcCode normal, short_frame;
  static bool loaded_normal = false, loaded_short = false;
  std::lock_guard<std::mutex> lock(mutex);
  if (frame == LdpcFrame::Normal64800) {
    if (!loaded_normal) {
      normal = load(default_table_path(frame));
      loaded_normal = true;
    }
    return normal;
  }
  if (!loaded_short) {
    short_frame = load(default_table_path(frame));
    loaded_short = true;
  }
  return short_frame;
}

void LdpcCode::build_graph() {
  const int m = parity_length();
  const int k = info_length_;

  std::vector<std::int32_t> degree(m, 0);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (int w = 0; w < kGroupWidth; ++w) {
      for (std::int32_t a : groups_[g]) {
        degree[(a + static_cast<std::int64_t>(w) * q_) % m]++;
      }
    }
  }
  // staircase parity: check r touches parity r and, for r > 0, parity r-1
  for (int r = 0; r < m; ++r) degree[r] += (r == 0) ? 1 : 2;

  check_offsets_.assign(m + 1, 0);
  for (int r = 0; r < m; ++r) check_offsets_[r + 1] = check_offsets_[r] + degree[r];
  edge_vars_.assign(check_offsets_[m], 0);

  std::vector<std::int32_t> fill(check_offsets_.begin(), check_offsets_.end() - 1);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (int w = 0; w < kGroupWidth; ++w) {
      const std::int32_t v = static_cast<std::int32_t>(g) * kGroupWidth + w;
      for (std::int32_t a : groups_[g]) {
        const std::int32_t r = (a + static_cast<std::int64_t>(w) * q_) % m;
        edge_vars_[fill[r]++] = v;
      }
    }
  }
  for (int r = 0; r < m; ++r) {
    edge_vars_[fill[r]++] = k + r;
    if (r > 0) edge_vars_[fill[r]++] = k + r - 1;
  }

  max_check_degree_ = 0;
  for (int r = 0; r < m; ++r) {
    max_check_degree_ = std::max(max_check_degree_, degree[r]);
  }
  if (max_check_degree_ > kMaxDegree) {
    throw ConfigError("LdpcCode: check degree exceeds decoder limit");
  }
}

bool LdpcCode::syndrome_is_zero(const BitBlock& word) const {
  if (word.size() != static_cast<std::size_t>(frame_length_)) {
    throw std::invalid_argument("syndrome_is_zero: wrong word length");
  }
  const int m = parity_length();
  for (int r = 0; r < m; ++r) {
    unsigned parity = 0;
    for (std::int32_t e = check_offsets_[r]; e < check_offsets_[r + 1]; ++e) {
      parity ^= word[edge_vars_[e]];
    }
    if (parity & 1u) return false;
  }
  return true;
}

BitBlock ldpc_encode(const BitBlock& info, const LdpcCode& code) {
  if (info.size() != static_cast<std::size_t>(code.info_length())) {
    throw std::invalid_argument("ldpc_encode: info length must be " +
                                std::to_string(code.info_length()));
  }
  const int m = code.parity_length();
  const int q = code.q();
  BitBlock codeword(code.frame_length(), 0);
  std::copy(info.begin(), info.end(), codeword.begin());

  std::uint8_t* parity = codeword.data() + code.info_length();
  const auto& groups = code.group_addresses();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int w = 0; w < kGroupWidth; ++w) {
      const std::uint8_t bit = info[g * kGroupWidth + w];
      if (!bit) continue;
      for (std::int32_t a : groups[g]) {
        parity[(a + static_cast<std::int64_t>(w) * q) % m] ^= 1u;
      }
    }
  }
  for (int r = 1; r < m; ++r) parity[r] ^= parity[r - 1];
  return codeword;
}

namespace {

/// Check-node update, exact sum-product: outgoing = 2 atanh(prod tanh(in/2)).
inline void check_update_spa(float* q_msg, float* r_msg, int deg) {
  std::array<float, kMaxDegree> t;
  for (int i = 0; i < deg; ++i) {
    t[i] = std::tanh(0.5f * q_msg[i]);
  }
  std::array<float, kMaxDegree> prefix;
  float acc = 1.0f;
  for (int i = 0; i < deg; ++i) {
    prefix[i] = acc;
    acc *= t[i];
  }
  float suffix = 1.0f;
  for (int i = deg - 1; i >= 0; --i) {
    float p = prefix[i] * suffix;
    if (p > 0.9999999f) p = 0.9999999f;
    if (p < -0.9999999f) p = -0.9999999f;
    r_msg[i] = std::log((1.0f + p) / (1.0f - p));  // = 2 atanh(p)
    suffix *= t[i];
  }
}

/// Check-node update, normalized min-sum with factor 0.75.
inline void check_update_nms(float* q_msg, float* r_msg, int deg) {
  float min1 = std::numeric_limits<float>::max();
  float min2 = min1;
  int arg_min = -1;
  unsigned sign_all = 0;
  std::array<unsigned, kMaxDegree> neg;
  for (int i = 0; i < deg; ++i) {
    const float mag = std::fabs(q_msg[i]);
    neg[i] = q_msg[i] < 0.0f;
    sign_all ^= neg[i];
    if (mag < min1) {
      min2 = min1;
      min1 = mag;
      arg_min = i;
    } else if (mag < min2) {
      min2 = mag;
    }
  }
  for (int i = 0; i < deg; ++i) {
    const float mag = (i == arg_min) ? min2 : min1;
    const unsigned s = sign_all ^ neg[i];
    r_msg[i] = 0.75f * (s ? -mag : mag);
  }
}

}  // namespace

DecodeResult ldpc_decode(const LlrBlock& llrs, const LdpcCode& code, int max_iter,
                         CheckRule rule) {
  const int n = code.frame_length();
  const int m = code.parity_length();
  if (llrs.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("ldpc_decode: LLR length must be " + std::to_string(n));
  }
  if (max_iter < 1) throw std::invalid_argument("ldpc_decode: max_iter must be >= 1");

  std::vector<float> channel(n);
  for (int v = 0; v < n; ++v) {
    if (!std::isfinite(llrs[v])) {
      throw std::invalid_argument("ldpc_decode: non-finite LLR at index " +
                                  std::to_string(v));
    }
    channel[v] = static_cast<float>(llrs[v]);
  }

  const auto& offsets = code.check_offsets();
  const auto& vars = code.edge_variables();
  std::vector<float> r_msg(vars.size(), 0.0f);  // check -> variable
  std::vector<float> posterior(channel);

  DecodeResult result;
  result.bits.assign(n, 0);

  const auto hard_decide = [&] {
    bool informative = true;
    for (int v = 0; v < n; ++v) {
      result.bits[v] = posterior[v] < 0.0f ? 1 : 0;
      if (posterior[v] == 0.0f) informative = false;
    }
    return informative;
  };

  for (int iter = 1; iter <= max_iter; ++iter) {
    // Check-node pass over the extrinsic inputs q = posterior - r.
    std::array<float, kMaxDegree> q_buf;
    for (int c = 0; c < m; ++c) {
      const std::int32_t begin = offsets[c];
      const int deg = offsets[c + 1] - begin;
      for (int i = 0; i < deg; ++i) {
        q_buf[i] = posterior[vars[begin + i]] - r_msg[begin + i];
      }
      if (rule == CheckRule::SumProduct) {
        check_update_spa(q_buf.data(), &r_msg[begin], deg);
      } else {
        check_update_nms(q_buf.data(), &r_msg[begin], deg);
      }
    }

    // Variable-node pass: fresh posteriors from channel plus all messages.
    posterior = channel;
    for (std::size_t e = 0; e < vars.size(); ++e) {
      posterior[vars[e]] += r_msg[e];
    }

    result.iterations_used = iter;
    const bool informative = hard_decide();
    if (informative && code.syndrome_is_zero(result.bits)) {
      result.converged = true;
      return result;
    }
  }
  result.converged = false;
  return result;
}

}  // namespace psalink
