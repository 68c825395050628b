#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qtrellis/channel.hpp"
#include "qtrellis/code.hpp"
#include "qtrellis/construct.hpp"
#include "qtrellis/decoder.hpp"
#include "qtrellis/oracle.hpp"

namespace qtrellis {

class sim_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SimMode { ndml, dml, css, oracle_dml };

inline std::string to_string(SimMode m) {
  switch (m) {
    case SimMode::ndml: return "ndml";
    case SimMode::dml: return "dml";
    case SimMode::css: return "css";
    case SimMode::oracle_dml: return "oracle_dml";
  }
  return "?";
}

inline SimMode parse_sim_mode(const std::string& s) {
  if (s == "ndml") return SimMode::ndml;
  if (s == "dml") return SimMode::dml;
  if (s == "css") return SimMode::css;
  if (s == "oracle_dml") return SimMode::oracle_dml;
  throw sim_error("unknown simulation mode '" + s + "'");
}

inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("QTRELLIS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct SimConfig {
  std::string code_name;
  std::vector<SimMode> modes{SimMode::dml};
  std::vector<double> ps;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: default_thread_count()
  CssMarginal css_marginal = CssMarginal::independent;
};

struct SimRow {
  std::string code;
  SimMode mode = SimMode::dml;
  double p = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  OpCounts ops;
};

struct SimReport {
  std::vector<SimRow> rows;
  double wall_seconds = 0;
};

struct Interval {
  double lo = 0, hi = 0;
};

// Wilson score interval; z = 1.96 gives 95% coverage.
inline Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = 1.959963984540054) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double f = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double center = (f + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(f * (1 - f) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {failures == 0 ? 0.0 : std::max(0.0, center - half), failures == trials ? 1.0 : std::min(1.0, center + half)};
}

// Independent draw of each qubit from the channel table.
template <class Rng>
PauliVector sample_error(std::size_t n, const ChannelModel& ch, Rng& rng) {
  PauliVector e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::generate_canonical<double, 53>(rng);
    double acc = 0;
    Pauli pick = Pauli::Z;
    for (Pauli a : kAllPaulis) {
      acc += ch(a);
      if (u < acc) {
        pick = a;
        break;
      }
    }
    e.set(i, pick);
  }
  return e;
}

// Stream for one trial, keyed by (seed, p index, trial index).
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t p_index, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(p_index), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

// Trellises for every decoder mode, built once and shared read-only.
struct DecoderSet {
  StabilizerCode code;
  std::optional<CssCode> css;
  Trellis normalizer;
  Trellis multigoal;
  Trellis tx, tz;

  explicit DecoderSet(const LoadedCode& lc)
      : code(lc.code),
        css(lc.css),
        normalizer(build_min_trellis_tof(lc.code)),
        multigoal(build_multigoal_trellis(lc.code, Construction::extended_shannon)) {
    if (css) {
      tx = build_multigoal_trellis(css->x_sector(), Construction::extended_shannon);
      tz = build_multigoal_trellis(css->z_sector(), Construction::extended_shannon);
    }
  }

  PauliVector decode(SimMode mode, const BinaryVector& sigma, double p, CssMarginal marginal, OpCounts* ops) const {
    switch (mode) {
      case SimMode::ndml:
        return ndml_decode(normalizer, code, sigma, ChannelModel::depolarizing(p)).error_estimate;
      case SimMode::dml: {
        auto r = dml_decode(multigoal, code, sigma, ChannelModel::depolarizing(p));
        if (ops) *ops += r.ops;
        return r.error_estimate;
      }
      case SimMode::css: {
        if (!css) throw sim_error("separate CSS decoding needs a CSS code");
        auto [sx, sz] = css->split_syndrome(sigma);
        auto r = css_dml_decode(tx, tz, *css, sx, sz, css_sector_channel(p, marginal));
        if (ops) *ops += r.ops;
        return r.error_estimate;
      }
      case SimMode::oracle_dml: {
        auto probs = oracle::brute_dml(code, sigma, ChannelModel::depolarizing(p));
        for (double& v : probs) v = std::log(v);
        const std::size_t best = argmax_label(probs);
        return code.representative(sigma) * code.logical_from_label(BinaryVector(2 * code.k(), best));
      }
    }
    throw sim_error("unknown mode");
  }
};

// Logical failure: the residual e_hat * e is not a stabilizer.
inline bool is_logical_failure(const StabilizerCode& code, const PauliVector& e_hat, const PauliVector& e) {
  return !code.in_stabilizer_group(e_hat * e);
}

// Every mode sees the same error sample in a given (p, trial) slot.
inline SimReport run_monte_carlo(const DecoderSet& dec, const SimConfig& cfg) {
  if (cfg.trials < 1) throw sim_error("trials must be at least 1");
  if (cfg.modes.empty()) throw sim_error("no decoder modes selected");
  for (double p : cfg.ps) ChannelModel::check_p(p);
  for (auto m : cfg.modes)
    if (m == SimMode::css && !dec.css) throw sim_error("mode css requires a CSS code");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t threads = std::max<std::size_t>(1, cfg.threads ? cfg.threads : default_thread_count());
  const std::size_t nm = cfg.modes.size();
  SimReport report;
  for (std::size_t pi = 0; pi < cfg.ps.size(); ++pi) {
    const double p = cfg.ps[pi];
    const ChannelModel ch = ChannelModel::depolarizing(p);
    std::vector<std::vector<std::uint64_t>> fails(threads, std::vector<std::uint64_t>(nm, 0));
    std::vector<std::vector<OpCounts>> ops(threads, std::vector<OpCounts>(nm));
    std::vector<std::exception_ptr> errors(threads);
    std::atomic<std::uint64_t> next{0};
    constexpr std::uint64_t kChunk = 64;
    auto worker = [&](std::size_t id) {
      try {
        for (;;) {
          const std::uint64_t begin = next.fetch_add(kChunk);
          if (begin >= cfg.trials) break;
          const std::uint64_t end = std::min(cfg.trials, begin + kChunk);
          for (std::uint64_t trial = begin; trial < end; ++trial) {
            auto rng = trial_rng(cfg.seed, pi, trial);
            const PauliVector e = sample_error(dec.code.n(), ch, rng);
            const BinaryVector sigma = dec.code.syndrome(e);
            for (std::size_t m = 0; m < nm; ++m) {
              const PauliVector e_hat = dec.decode(cfg.modes[m], sigma, p, cfg.css_marginal, &ops[id][m]);
              if (is_logical_failure(dec.code, e_hat, e)) ++fails[id][m];
            }
          }
        }
      } catch (...) {
        errors[id] = std::current_exception();
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t id = 0; id < threads; ++id) pool.emplace_back(worker, id);
      for (auto& th : pool) th.join();
    }
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
    for (std::size_t m = 0; m < nm; ++m) {
      SimRow row;
      row.code = cfg.code_name;
      row.mode = cfg.modes[m];
      row.p = p;
      row.trials = cfg.trials;
      for (std::size_t id = 0; id < threads; ++id) {
        row.failures += fails[id][m];
        row.ops += ops[id][m];
      }
      row.rate = static_cast<double>(row.failures) / static_cast<double>(row.trials);
      const auto ci = wilson_interval(row.failures, row.trials);
      row.ci_lo = ci.lo;
      row.ci_hi = ci.hi;
      report.rows.push_back(row);
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline SimReport run_monte_carlo(const LoadedCode& code, const SimConfig& cfg) {
  return run_monte_carlo(DecoderSet(code), cfg);
}

inline void write_csv(std::ostream& os, const SimReport& r) {
  os << "code,mode,p,trials,failures,rate,ci_lo,ci_hi\n";
  for (const auto& row : r.rows) {
    std::ostringstream line;
    line.precision(10);
    line << row.code << ',' << to_string(row.mode) << ',' << row.p << ',' << row.trials << ',' << row.failures << ','
         << row.rate << ',' << row.ci_lo << ',' << row.ci_hi;
    os << line.str() << '\n';
  }
}

// "0.05:0.35:0.05" (inclusive range) or "0.1,0.2".
inline std::vector<double> parse_p_list(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw sim_error("invalid p value '" + s + "'");
    }
    if (used != s.size()) throw sim_error("invalid p value '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw sim_error("p range must be start:stop:step");
    const double a = to_double(parts[0]), b = to_double(parts[1]), step = to_double(parts[2]);
    if (!(step > 0)) throw sim_error("p range step must be positive");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');)
      if (!part.empty()) out.push_back(to_double(part));
  }
  if (out.empty()) throw sim_error("no p values given");
  for (double p : out) ChannelModel::check_p(p);
  return out;
}

}  // namespace qtrellis
