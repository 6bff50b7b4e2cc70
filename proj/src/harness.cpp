#include "harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "infotheory.hpp"
#include "json.hpp"

namespace rlc {

std::pair<double, double> wilson_ci(int k, int n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5% normal quantile
  double phat = static_cast<double>(k) / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (phat + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  const auto& jc = j.at("channel");
  std::vector<double> table = jc.at("d_table").get<std::vector<double>>();
  auto trim = trim_mode_from_name(jc.value("trim_mode", "none"));
  if (!trim) throw std::invalid_argument("unknown trim_mode");
  cfg.channel = make_runlength_channel(table, jc.at("mu").get<double>(),
                                       jc.at("M").get<int>(), *trim,
                                       jc.value("traces", 1));
  const auto& js = j.at("scheme");
  cfg.kind = js.at("kind").get<std::string>();
  SchemeParams& p = cfg.scheme;
  p.epsilon = js.value("epsilon", p.epsilon);
  p.nu = js.value("nu", p.nu);
  p.B = js.value("B", p.B);
  p.m = js.value("m", p.m);
  p.n_R = js.value("n_R", p.n_R);
  p.n_S = js.value("n_S", p.n_S);
  p.n_out = js.value("n_out", p.n_out);
  p.d_M = js.value("d_M", cfg.channel.d_table.back());
  p.T = js.value("T", cfg.channel.traces);
  p.R_in = js.value("R_in", p.R_in);
  p.R_out = js.value("R_out", p.R_out);
  p.delta_out = js.value("delta_out", p.delta_out);
  p.q_sync = js.value("q_sync", p.q_sync);
  p.eta = js.value("eta", p.eta);
  p.payload_field_bits = js.value("payload_field_bits", p.payload_field_bits);
  cfg.zeta = js.value("zeta", cfg.zeta);
  cfg.gamma = js.value("gamma", cfg.gamma);
  cfg.trials = j.value("trials", 0);
  cfg.seed = j.value("seed", 0ULL);
  cfg.output = j.value("output", std::string());
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io-failure: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
  nlohmann::json j;
  j["channel"] = {{"d_table", channel.d_table},
                  {"mu", channel.mu},
                  {"M", channel.M},
                  {"trim_mode", trim_mode_name(channel.trim)},
                  {"traces", channel.traces}};
  j["scheme"] = {{"kind", kind},
                 {"epsilon", scheme.epsilon},
                 {"nu", scheme.nu},
                 {"B", scheme.B},
                 {"m", scheme.m},
                 {"n_R", scheme.n_R},
                 {"n_S", scheme.n_S},
                 {"n_out", scheme.n_out},
                 {"d_M", scheme.d_M},
                 {"T", scheme.T},
                 {"R_in", scheme.R_in},
                 {"R_out", scheme.R_out},
                 {"delta_out", scheme.delta_out},
                 {"q_sync", scheme.q_sync},
                 {"eta", scheme.eta},
                 {"payload_field_bits", scheme.payload_field_bits},
                 {"zeta", zeta},
                 {"gamma", gamma}};
  j["trials"] = trials;
  j["seed"] = seed;
  j["output"] = output;
  return j.dump(2);
}

namespace {

int worker_count() {
  if (const char* env = std::getenv("RLC_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

std::vector<int> random_message(int k, int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> msg(static_cast<size_t>(k));
  for (int& s : msg) s = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
  return msg;
}

}  // namespace

TrialReport run_trials(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  TrialReport rep;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  if (cfg.trials == 0) {
    rep.wall_time = 0;
    return rep;
  }

  std::vector<char> failed(static_cast<size_t>(cfg.trials), 0);
  auto run_range = [&](auto&& one_trial, int lo, int hi) {
    for (int i = lo; i < hi; i++) failed[static_cast<size_t>(i)] = one_trial(i) ? 0 : 1;
  };
  auto fan_out = [&](auto&& one_trial) {
    int workers = std::min(worker_count(), cfg.trials);
    std::vector<std::thread> pool;
    int chunk = (cfg.trials + workers - 1) / workers;
    for (int w = 0; w < workers; w++) {
      int lo = w * chunk, hi = std::min(cfg.trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, one_trial, lo, hi);
    }
    for (auto& th : pool) th.join();
  };

  if (cfg.kind == "single") {
    STScheme sch = make_st_scheme(cfg.scheme, cfg.channel, cfg.seed, cfg.zeta,
                                  cfg.gamma);
    const int q = 1 << cfg.scheme.payload_field_bits;
    fan_out([&](int i) {
      std::uint64_t s = subseed(cfg.seed, static_cast<std::uint64_t>(i));
      std::vector<int> msg = random_message(sch.message_symbols(), q, subseed(s, 0));
      BitString y = transmit(sch.channel(), sch.encode(msg), subseed(s, 1));
      DecodeRecord rec = sch.decode(y);
      return rec.ok && rec.msg == msg;
    });
  } else if (cfg.kind == "multi") {
    MTScheme sch = make_mt_scheme(cfg.scheme, cfg.channel, cfg.seed, cfg.zeta,
                                  cfg.gamma);
    const int q = 1 << cfg.scheme.payload_field_bits;
    ChannelSpec ch = cfg.channel;
    ch.traces = cfg.scheme.T;
    fan_out([&](int i) {
      std::uint64_t s = subseed(cfg.seed, static_cast<std::uint64_t>(i));
      std::vector<int> msg = random_message(sch.message_symbols(), q, subseed(s, 0));
      TraceSet ts = transmit_multi(ch, sch.encode(msg), subseed(s, 1));
      DecodeRecord rec = sch.decode(ts);
      return rec.ok && rec.msg == msg;
    });
  } else {
    throw std::invalid_argument("config-invalid: kind must be single or multi");
  }

  for (char f : failed) rep.failures += f;
  auto [lo, hi] = wilson_ci(rep.failures, rep.trials);
  rep.ci_low = lo;
  rep.ci_high = hi;
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) throw std::runtime_error("io-failure: cannot write " + cfg.output);
    out << "trial,failed\n";
    for (size_t i = 0; i < failed.size(); i++)
      out << i << "," << static_cast<int>(failed[i]) << "\n";
  }
  return rep;
}

void sweep_bounds(int tau, const std::vector<double>& d_grid,
                  const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("io-failure: cannot write " + out_path);
  emit_curve(tau, d_grid, out);
}

bool claims_check(std::ostream& os) {
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    os << (ok ? "pass" : "FAIL") << "  " << name << "  (" << detail << ")\n";
    all_ok &= ok;
  };

  // Claim: a buffer of length B survives above threshold except with
  // probability at most exp(-(1-d)B/8) (checked with 3-sigma slack).
  {
    const double d = 0.3;
    const int B = 18, thresh = 6, trials = 10000;
    ChannelSpec ch = make_threshold_channel(2, d);
    int missed0 = 0, missed1 = 0;
    for (int i = 0; i < trials; i++) {
      BitString zeros(B, '0'), ones(B, '1');
      if (static_cast<int>(transmit(ch, zeros, subseed(11, i)).size()) < thresh)
        missed0++;
      if (static_cast<int>(transmit(ch, ones, subseed(12, i)).size()) < thresh)
        missed1++;
    }
    double bound = std::exp(-(1 - d) * B / 8.0);
    double sigma = std::sqrt(bound * (1 - bound) / trials);
    double cap = bound + 3 * sigma;
    std::ostringstream detail;
    detail << "missed 0-buffer " << missed0 / double(trials) << ", 1-buffer "
           << missed1 / double(trials) << ", bound " << cap;
    report("missed-buffer frequency within Chernoff bound",
           missed0 / double(trials) <= cap && missed1 / double(trials) <= cap,
           detail.str());
  }

  // Claim: spurious-buffer frequency decreases as the inner block grows.
  {
    ChannelSpec ch = make_threshold_channel(2, 0.3);
    std::vector<double> freq;
    for (int m : {8, 12, 16}) {
      Codebook book = build_dense_codebook(m, 32, 0.5, 0.2, 1, 1, 77);
      int thresh = static_cast<int>(std::ceil(m / 2.0));
      int spurious = 0, trials = 10000;
      for (int i = 0; i < trials; i++) {
        const BitString& w = book.words[static_cast<size_t>(i) % book.words.size()];
        BitString y = transmit(ch, w, subseed(13, static_cast<std::uint64_t>(m) * 100000 + i));
        for (const Run& r : runs(y))
          if (r.symbol == '0' && r.length >= thresh) {
            spurious++;
            break;
          }
      }
      freq.push_back(spurious / double(trials));
    }
    std::ostringstream detail;
    detail << "freq " << freq[0] << " -> " << freq[1] << " -> " << freq[2];
    report("spurious-buffer frequency decreases with block length",
           freq[0] >= freq[1] && freq[1] >= freq[2], detail.str());
  }

  // Claim: outer error accounting; a deleted buffer costs at most 3 outer
  // insdel errors, a spurious buffer at most 3, an inner miss exactly 2.
  {
    SchemeParams p;
    p.m = 12;
    p.n_out = 24;
    p.B = 18;
    p.nu = 1.0;
    p.d_M = 0.3;
    p.delta_out = 0.5;
    p.payload_field_bits = 6;
    p.eta = 0.8;  // a 4-ary sync string this short needs the loose setting
    STScheme sch = make_st_scheme(p, make_threshold_channel(2, 0.3), 500, 0.5, 0.2);
    std::vector<int> msg = random_message(sch.message_symbols(), 64, 9001);
    BitString x = sch.encode(msg);
    auto truth = sch.true_pairs(msg);
    auto pair_ids = [&](const std::vector<std::pair<int, int>>& pairs) {
      std::vector<int> ids;
      for (auto [a, b] : pairs) ids.push_back(a * p.q_sync + b);
      return ids;
    };
    int stride = p.m + p.B;
    // Delete the buffer after codeword 5 entirely.
    BitString del = x;
    del.erase(static_cast<size_t>(5 * stride + p.m), static_cast<size_t>(p.B));
    int cost_del = edit_distance(pair_ids(sch.extract_pairs(del)), pair_ids(truth));
    // Insert a spurious buffer in the middle of codeword 7.
    BitString spur = x;
    spur.insert(static_cast<size_t>(7 * stride + p.m / 2), std::string(static_cast<size_t>(p.B), '0'));
    int cost_spur = edit_distance(pair_ids(sch.extract_pairs(spur)), pair_ids(truth));
    // Inner miss: swap codeword 3 for a different valid codeword.
    BitString miss = x;
    int wrong = (truth[3].first * p.q_sync + truth[3].second + 1) %
                static_cast<int>(sch.inner().words.size());
    miss.replace(static_cast<size_t>(3 * stride), static_cast<size_t>(p.m),
                 sch.inner().words[static_cast<size_t>(wrong)]);
    int cost_miss = edit_distance(pair_ids(sch.extract_pairs(miss)), pair_ids(truth));
    std::ostringstream detail;
    detail << "deleted-buffer cost " << cost_del << ", spurious cost " << cost_spur
           << ", inner-miss cost " << cost_miss;
    report("outer error accounting (deleted <= 3, spurious <= 3, miss == 2)",
           cost_del <= 3 && cost_spur <= 3 && cost_miss == 2, detail.str());
  }

  // Claim: per-trace alignment yields at least (1-xi) n_out good pairs in at
  // least 99% of trials at desk parameters.
  {
    SchemeParams p;
    p.n_R = 12;
    p.n_S = 8;
    p.n_out = 64;
    p.B = 15;
    p.d_M = 0.2;
    p.delta_out = 0.25;
    p.payload_field_bits = 8;
    p.eta = 0.8;  // 4-ary sync alphabet again
    p.q_sync = 4;
    p.T = 1;
    const double xi = 0.1;
    ChannelSpec ch = make_threshold_channel(2, 0.2);
    MTScheme sch = make_mt_scheme(p, ch, 600, 0.5, 0.2);
    int trials = 1000, good_trials = 0;
    for (int i = 0; i < trials; i++) {
      std::vector<int> msg = random_message(sch.message_symbols(), 256, subseed(14, i));
      BitString y = transmit(ch, sch.encode(msg), subseed(15, i));
      auto aligned = sch.align(y);
      int present = 0;
      for (const auto& c : aligned) present += c.has_value();
      if (present >= (1 - xi) * p.n_out) good_trials++;
    }
    std::ostringstream detail;
    detail << good_trials << "/" << trials << " trials with >= " << (1 - xi) * p.n_out
           << " aligned positions";
    report("trace alignment good-pair coverage", good_trials >= trials * 99 / 100,
           detail.str());
  }

  return all_ok;
}

}  // namespace rlc
