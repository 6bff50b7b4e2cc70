// Command-line front end for the runlength-channel toolkit.
//
// Exit codes: 0 on success, 1 when a decode/check reports failure, 2 on bad
// usage or invalid parameters.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "channels.hpp"
#include "harness.hpp"
#include "infotheory.hpp"
#include "inner_codes.hpp"
#include "outer_codes.hpp"
#include "schemes.hpp"

namespace {

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

rlc::ChannelSpec channel_from_options(int tau, double d,
                                      const std::string& d_table, double mu,
                                      int M, const std::string& trim,
                                      int traces) {
  auto tm = rlc::trim_mode_from_name(trim);
  if (!tm) throw CLI::ValidationError("trim", "unknown trim mode " + trim);
  if (!d_table.empty()) {
    return rlc::make_runlength_channel(parse_doubles(d_table), mu, M, *tm, traces);
  }
  rlc::ChannelSpec ch = rlc::make_threshold_channel(tau, d);
  ch.trim = *tm;
  ch.traces = traces;
  return ch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"runlength deletion channel toolkit"};
  app.require_subcommand(1);

  // ---- bound ----------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "capacity lower bounds");
  bound->require_subcommand(1);
  int b_tau = 2;
  double b_d = 0.1, b_dmin = 0.0, b_dmax = 0.99, b_dstep = 0.01;
  int b_mmax = 64;
  std::string b_out = "curve.csv";

  auto* bound_dg = bound->add_subcommand("dg", "single-bit bound");
  bound_dg->add_option("--tau", b_tau, "runlength threshold")->required();
  bound_dg->add_option("--d", b_d, "deletion probability")->required();
  bound_dg->callback([&] {
    std::printf("%.5f\n", rlc::dg_bound(b_tau, b_d));
  });

  auto* bound_greedy = bound->add_subcommand("greedy", "greedy-code bound");
  bound_greedy->add_option("--tau", b_tau)->required();
  bound_greedy->add_option("--d", b_d)->required();
  bound_greedy->add_option("--mmax", b_mmax, "largest blow-up length");
  bound_greedy->callback([&] {
    rlc::BoundResult r = rlc::greedy_search(b_tau, b_d, b_mmax);
    std::printf("%.5f\n", r.rate);
    std::printf("M=%d beta=", r.M);
    for (size_t i = 0; i < r.beta.size(); i++)
      std::printf("%s%.2f", i ? ";" : "", r.beta[i]);
    std::printf("\n");
  });

  auto* bound_sweep = bound->add_subcommand("sweep", "write a rate curve CSV");
  bound_sweep->add_option("--tau", b_tau)->required();
  bound_sweep->add_option("--out", b_out, "output CSV path")->required();
  bound_sweep->add_option("--dmin", b_dmin);
  bound_sweep->add_option("--dmax", b_dmax);
  bound_sweep->add_option("--dstep", b_dstep);
  bound_sweep->callback([&] {
    std::vector<double> grid;
    for (double d = b_dmin; d <= b_dmax + 1e-12; d += b_dstep) grid.push_back(d);
    rlc::sweep_bounds(b_tau, grid, b_out);
  });

  // ---- channel --------------------------------------------------------
  auto* channel = app.add_subcommand("channel", "sample or enumerate a channel");
  channel->require_subcommand(1);
  int c_tau = 2, c_M = 0, c_traces = 1;
  double c_d = 0.0, c_mu = 0.0;
  std::string c_table, c_trim = "none", c_input;
  std::uint64_t c_seed = 0;
  for (auto* sub : {channel->add_subcommand("sample", "draw channel outputs"),
                    channel->add_subcommand("oracle", "exact output distribution")}) {
    sub->add_option("--tau", c_tau, "threshold channel runlength");
    sub->add_option("--d", c_d, "threshold channel deletion probability");
    sub->add_option("--d-table", c_table, "comma-separated d(1..M)");
    sub->add_option("--mu", c_mu, "margin for a general table");
    sub->add_option("--M", c_M, "saturation length for a general table");
    sub->add_option("--trim", c_trim, "none|trim00|trim01|trim10|trim11");
    sub->add_option("--input", c_input, "input bit string")->required();
  }
  channel->get_subcommand("sample")->add_option("--traces", c_traces);
  channel->get_subcommand("sample")->add_option("--seed", c_seed);
  channel->get_subcommand("sample")->callback([&] {
    rlc::ChannelSpec ch =
        channel_from_options(c_tau, c_d, c_table, c_mu, c_M, c_trim, c_traces);
    rlc::TraceSet ts = rlc::transmit_multi(ch, c_input, c_seed);
    for (const auto& y : ts.traces) std::printf("%s\n", y.c_str());
  });
  channel->get_subcommand("oracle")->callback([&] {
    rlc::ChannelSpec ch =
        channel_from_options(c_tau, c_d, c_table, c_mu, c_M, c_trim, 1);
    for (const auto& [y, p] : rlc::transition_dist(ch, c_input))
      std::printf("%s %.10f\n", y.empty() ? "-" : y.c_str(), p);
  });

  // ---- code -----------------------------------------------------------
  auto* code = app.add_subcommand("code", "build inner codebooks");
  code->require_subcommand(1);
  int k_n = 12, k_count = 64, k_prefix = 1, k_suffix = 1, k_N = 8, k_tau = 2;
  double k_zeta = 0.5, k_gamma = 0.25, k_delta = 0.25;
  std::string k_out = "codebook.txt", k_beta = "0.5;0.25";
  std::uint64_t k_seed = 0;

  auto* dense = code->add_subcommand("build-dense", "random dense codebook");
  dense->add_option("--n", k_n)->required();
  dense->add_option("--count", k_count)->required();
  dense->add_option("--zeta", k_zeta);
  dense->add_option("--gamma", k_gamma);
  dense->add_option("--prefix", k_prefix);
  dense->add_option("--suffix", k_suffix);
  dense->add_option("--seed", k_seed);
  dense->add_option("--out", k_out);
  dense->callback([&] {
    rlc::Codebook book = rlc::build_dense_codebook(k_n, k_count, k_zeta, k_gamma,
                                                   k_prefix, k_suffix, k_seed);
    std::ofstream out(k_out);
    book.serialize(out);
    std::printf("wrote %zu words of length %d to %s\n", book.words.size(), k_n,
                k_out.c_str());
  });

  auto* greedy = code->add_subcommand("build-greedy", "greedy runlength codebook");
  greedy->add_option("--N", k_N)->required();
  greedy->add_option("--tau", k_tau)->required();
  greedy->add_option("--beta", k_beta, "semicolon-separated beta_1..beta_tau")
      ->required();
  greedy->add_option("--delta", k_delta)->required();
  greedy->add_option("--out", k_out);
  greedy->callback([&] {
    std::vector<double> beta;
    std::stringstream ss(k_beta);
    std::string tok;
    while (std::getline(ss, tok, ';')) beta.push_back(std::stod(tok));
    rlc::Codebook book = rlc::build_greedy_code(k_N, k_tau, beta, k_delta);
    std::ofstream out(k_out);
    book.serialize(out);
    std::printf("wrote %zu words of length %d to %s\n", book.words.size(), k_N,
                k_out.c_str());
  });

  // ---- scheme ---------------------------------------------------------
  auto* scheme = app.add_subcommand("scheme", "end-to-end coding schemes");
  scheme->require_subcommand(1);
  std::string s_config, s_msg, s_input;

  auto* enc = scheme->add_subcommand("encode", "encode a message");
  enc->add_option("--config", s_config, "experiment JSON")->required();
  enc->add_option("--msg", s_msg, "comma-separated outer symbols")->required();
  enc->callback([&] {
    rlc::ExperimentConfig cfg = rlc::ExperimentConfig::from_json_file(s_config);
    std::vector<int> msg = parse_ints(s_msg);
    if (cfg.kind == "single") {
      rlc::STScheme sch = rlc::make_st_scheme(cfg.scheme, cfg.channel, cfg.seed,
                                              cfg.zeta, cfg.gamma);
      std::printf("%s\n", sch.encode(msg).c_str());
    } else {
      rlc::MTScheme sch = rlc::make_mt_scheme(cfg.scheme, cfg.channel, cfg.seed,
                                              cfg.zeta, cfg.gamma);
      std::printf("%s\n", sch.encode(msg).c_str());
    }
  });

  auto* dec = scheme->add_subcommand("decode", "decode received traces");
  dec->add_option("--config", s_config)->required();
  dec->add_option("--input", s_input, "file with one trace per line")->required();
  dec->callback([&] {
    rlc::ExperimentConfig cfg = rlc::ExperimentConfig::from_json_file(s_config);
    std::ifstream in(s_input);
    if (!in) throw CLI::ValidationError("input", "cannot open " + s_input);
    rlc::TraceSet ts;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) ts.traces.push_back(line);
    rlc::DecodeRecord rec;
    if (cfg.kind == "single") {
      rlc::STScheme sch = rlc::make_st_scheme(cfg.scheme, cfg.channel, cfg.seed,
                                              cfg.zeta, cfg.gamma);
      rec = sch.decode(ts.traces.at(0));
    } else {
      rlc::MTScheme sch = rlc::make_mt_scheme(cfg.scheme, cfg.channel, cfg.seed,
                                              cfg.zeta, cfg.gamma);
      rec = sch.decode(ts);
    }
    if (!rec.ok) {
      std::printf("decode-failure\n");
      std::exit(1);
    }
    for (size_t i = 0; i < rec.msg.size(); i++)
      std::printf("%s%d", i ? "," : "", rec.msg[i]);
    std::printf("\n");
  });

  auto* trial = scheme->add_subcommand("trial", "run Monte Carlo trials");
  trial->add_option("--config", s_config)->required();
  trial->callback([&] {
    rlc::ExperimentConfig cfg = rlc::ExperimentConfig::from_json_file(s_config);
    std::fputs(cfg.to_json_text().c_str(), stderr);
    std::fputc('\n', stderr);
    rlc::TrialReport rep = rlc::run_trials(cfg);
    std::printf(
        "trials=%d failures=%d rate=%.5f ci=[%.5f,%.5f] seed=%llu wall=%.2fs\n",
        rep.trials, rep.failures,
        rep.trials ? double(rep.failures) / rep.trials : 0.0, rep.ci_low,
        rep.ci_high, static_cast<unsigned long long>(rep.seed), rep.wall_time);
  });

  // ---- claims ---------------------------------------------------------
  auto* claims = app.add_subcommand("claims", "consistency claim suite");
  auto* check = claims->add_subcommand("check", "run every claim");
  claims->require_subcommand(1);
  check->callback([&] {
    if (!rlc::claims_check(std::cout)) std::exit(1);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
