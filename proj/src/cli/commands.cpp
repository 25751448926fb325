// Copyright 2026 The avgent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "avgent/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "avgent/channel.hpp"
#include "avgent/channel_io.hpp"
#include "avgent/closedforms.hpp"
#include "avgent/error.hpp"
#include "avgent/montecarlo.hpp"
#include "avgent/qmoments.hpp"
#include "avgent/symgroup.hpp"
#include "avgent/verify.hpp"

namespace avgent::cli {

namespace {

using nlohmann::json;

// Inline family parameters or a --spec file.
struct ChannelArgs {
  std::string family;
  std::string spec;
  std::size_t d = 2;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double mu = std::numeric_limits<double>::quiet_NaN();
  double nu = std::numeric_limits<double>::quiet_NaN();
  double kappa = 0.0;
  double l1 = std::numeric_limits<double>::quiet_NaN();
  double l2 = std::numeric_limits<double>::quiet_NaN();
  double l3 = std::numeric_limits<double>::quiet_NaN();
};

struct RunConfig {
  ChannelArgs channel;
  std::string r = "2";
  int n = 1;
  std::string grid = "0:1:101";
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  int workers = mc::default_workers();
  std::string output;
  std::string format = "text";
  std::string quantity = "all";
  int n_max = 10;
};

void add_channel_options(CLI::App* sub, ChannelArgs& c) {
  sub->add_option("--family", c.family, "depolarizing | two_rail | bloch");
  sub->add_option("--spec", c.spec, "channel JSON file");
  sub->add_option("--d", c.d, "dimension of the depolarizing channel")->check(CLI::PositiveNumber);
  sub->add_option("--lambda", c.lambda, "depolarizing / two-rail lambda");
  sub->add_option("--mu", c.mu, "two-rail mu");
  sub->add_option("--nu", c.nu, "two-rail nu");
  sub->add_option("--kappa", c.kappa, "two-rail kappa");
  sub->add_option("--l1", c.l1, "Bloch scaling along x");
  sub->add_option("--l2", c.l2, "Bloch scaling along y");
  sub->add_option("--l3", c.l3, "Bloch scaling along z");
}

double require_param(double value, const char* flag, const std::string& family) {
  if (std::isnan(value)) throw ArgumentError(std::string(flag) + " is required for --family " + family);
  return value;
}

Channel make_channel(const ChannelArgs& c) {
  if (!c.spec.empty() && !c.family.empty()) {
    throw ArgumentError("give either --family or --spec, not both");
  }
  if (!c.spec.empty()) return load_channel(c.spec);
  if (c.family == "depolarizing") {
    return build(FamilySpec{Depolarizing{c.d, require_param(c.lambda, "--lambda", c.family)}});
  }
  if (c.family == "two_rail") {
    const double lambda = require_param(c.lambda, "--lambda", c.family);
    const double mu = std::isnan(c.mu) ? (1.0 + lambda) / 2.0 : c.mu;
    const double nu = std::isnan(c.nu) ? 1.0 - mu : c.nu;
    return build(FamilySpec{TwoRail{mu, nu, lambda, c.kappa}});
  }
  if (c.family == "bloch") {
    return build(FamilySpec{BlochScaling{require_param(c.l1, "--l1", c.family),
                                         require_param(c.l2, "--l2", c.family),
                                         require_param(c.l3, "--l3", c.family)}});
  }
  if (c.family.empty()) throw ArgumentError("a channel is required: --family or --spec");
  throw ArgumentError("unknown --family '" + c.family + "' (expected depolarizing, two_rail, bloch)");
}

int parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError(std::string(what) + ": expected an integer, got '" + text + "'");
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError(std::string(what) + ": expected a number, got '" + text + "'");
}

std::string fmt12(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes to the -o path if given, else to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw ArgumentError("cannot write output file '" + cfg.output + "'");
  file << text;
}

QOptions q_options(const RunConfig& cfg) {
  QOptions o;
  o.workers = cfg.workers;
  return o;
}

int cmd_qtable(const RunConfig& cfg, std::ostream& out) {
  const Channel ch = make_channel(cfg.channel);
  const int r = parse_int(cfg.r, "-r");
  const QTable table = q_table(ch, r, q_options(cfg));
  std::string argmax;
  for (const auto& a : table.argmax_set) argmax += (argmax.empty() ? "" : " ") + to_cycle_notation(a);
  std::ostringstream summary;
  summary.precision(12);
  summary << "q_max " << table.q_max << "\nargmax " << argmax << "\nmultiplicity "
          << table.multiplicity << "\nunique " << (table.unique ? "true" : "false")
          << "\nall_nonneg_real " << (table.all_nonneg_real ? "true" : "false") << "\n";
  const std::string doc = qtable_to_json(table, ch.fingerprint()).dump(2) + "\n";
  if (cfg.output.empty()) {
    out << summary.str() << doc;
  } else {
    out << summary.str();
    emit(cfg, out, doc);
  }
  return kExitOk;
}

int cmd_beta_reg(const RunConfig& cfg, std::ostream& out) {
  const Channel ch = make_channel(cfg.channel);
  const int r = parse_int(cfg.r, "-r");
  const QTable table = q_table(ch, r, q_options(cfg));
  const BetaReg b = beta_reg(table, ch.dim());
  const MomentReport m = average_moment_exact(table, ch.dim(), cfg.n);
  if (cfg.format == "json") {
    const json doc{{"r", r},
                   {"beta_reg", b.value},
                   {"q_max", b.q_max},
                   {"unique", b.unique},
                   {"all_nonneg_real", b.all_nonneg_real},
                   {"limit_is_plain", b.limit_is_plain},
                   {"n", cfg.n},
                   {"moment", m.m_r},
                   {"beta_per_system", m.beta_r_per_system},
                   {"fingerprint", fingerprint_hex(ch.fingerprint())}};
    emit(cfg, out, doc.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream s;
  s.precision(12);
  s << "beta_reg " << b.value << "\nq_max " << b.q_max << "\nlimit_is_plain "
    << (b.limit_is_plain ? "true" : "false") << "\nn " << cfg.n << "\nmoment " << m.m_r
    << "\nbeta_per_system " << m.beta_r_per_system << "\n";
  emit(cfg, out, s.str());
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  if (cfg.channel.family != "depolarizing" || !cfg.channel.spec.empty()) {
    throw ArgumentError("scan supports --family depolarizing only");
  }
  const std::size_t d = cfg.channel.d;
  const std::vector<double> grid = parse_grid(cfg.grid);
  std::ostringstream csv;
  csv << "lambda,r,q_id,q_full_cycle,q_max,beta_reg,s_bar_estimate,in_validity_range\n";
  for (const std::string& r_text : split_list(cfg.r)) {
    const bool infinite = r_text == "inf";
    const int r = infinite ? 0 : parse_int(r_text, "-r");
    if (!infinite && r < 2) throw ArgumentError("-r: scan needs r >= 2");
    std::optional<closed::ValidityRange> range;
    if (!infinite && d == 2) range = closed::validity_range(r);
    for (double lambda : grid) {
      double q_id = std::numeric_limits<double>::quiet_NaN();
      double q_cycle = q_id, q_max = q_id, beta = q_id, s_bar = q_id;
      std::string in_range;
      if (infinite) {
        if (d != 2) throw ArgumentError("-r inf is available for d = 2 only");
        beta = closed::depol_beta_inf_reg(lambda);
        in_range = lambda <= 1.0 / 3.0 ? "true" : "";
      } else {
        const Channel ch = build(FamilySpec{Depolarizing{d, lambda}});
        const QTable table = q_table(ch, r, q_options(cfg));
        q_id = table.value(Permutation::identity(r)).real();
        q_cycle = closed::depol_q_full_cycle(d, lambda, r);
        q_max = table.q_max;
        beta = beta_reg(table, d).value;
        if (range) in_range = closed::in_validity_range(lambda, *range) ? "true" : "false";
        if (cfg.samples > 0) {
          mc::McConfig mcfg;
          mcfg.n = cfg.n;
          mcfg.r = r;
          mcfg.samples = cfg.samples;
          mcfg.seed = cfg.seed;
          mcfg.workers = cfg.workers;
          s_bar = mc::estimate_avg_entropy(ch, mcfg).mean;
        }
      }
      csv << fmt12(lambda) << "," << r_text << "," << fmt12(q_id) << "," << fmt12(q_cycle) << ","
          << fmt12(q_max) << "," << fmt12(beta) << "," << fmt12(s_bar) << "," << in_range << "\n";
    }
  }
  emit(cfg, out, csv.str());
  return kExitOk;
}

int cmd_validity_table(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream csv;
  csv << "r,c_r,d_r\n";
  for (const std::string& r_text : split_list(cfg.r)) {
    const closed::ValidityRange v = closed::validity_range(parse_int(r_text, "-r"));
    csv << v.r << "," << fmt12(v.c_r) << "," << fmt12(v.d_r) << "\n";
  }
  emit(cfg, out, csv.str());
  return kExitOk;
}

int cmd_mc(const RunConfig& cfg, std::ostream& out) {
  const Channel ch = make_channel(cfg.channel);
  mc::McConfig mcfg;
  mcfg.n = cfg.n;
  mcfg.r = parse_double(cfg.r, "-r");
  mcfg.samples = cfg.samples == 0 ? 10'000 : cfg.samples;
  mcfg.seed = cfg.seed;
  mcfg.workers = cfg.workers;
  const double r_values[] = {mcfg.r};
  const mc::MultiEstimate est = mc::estimate_all(ch, mcfg, r_values);
  const std::uint64_t fp = ch.fingerprint();
  json doc{{"estimates", json::array()}};
  if (cfg.quantity == "all" || cfg.quantity == "moment") {
    doc["estimates"].push_back(estimate_to_json(est.moment.front(), mcfg, fp));
  }
  if ((cfg.quantity == "all" || cfg.quantity == "beta") && mcfg.r > 1.0) {
    doc["estimates"].push_back(estimate_to_json(est.beta.front(), mcfg, fp));
  }
  if (cfg.quantity == "all" || cfg.quantity == "entropy") {
    doc["estimates"].push_back(estimate_to_json(est.avg_entropy.front(), mcfg, fp));
  }
  if (doc["estimates"].empty()) {
    throw ArgumentError("--quantity: expected all, moment, beta or entropy");
  }
  // Exact comparison whenever the exhaustive table is affordable.
  const double r_round = std::round(mcfg.r);
  if (r_round == mcfg.r && r_round >= 1.0 && r_round <= Limits{}.max_perm_degree) {
    const MomentReport exact = average_moment_exact(ch, mcfg.n, static_cast<int>(r_round),
                                                    q_options(cfg));
    const auto& m = est.moment.front();
    json cmp{{"exact_moment", exact.m_r}, {"difference", m.mean - exact.m_r}};
    cmp["z_score"] = m.std_error > 0.0 ? json((m.mean - exact.m_r) / m.std_error) : json(nullptr);
    if (mcfg.r > 1.0) cmp["exact_beta_per_system"] = exact.beta_r_per_system;
    doc["comparison"] = cmp;
  }
  emit(cfg, out, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_sequence(const RunConfig& cfg, std::ostream& out) {
  if (cfg.channel.family != "depolarizing" || cfg.channel.d != 2) {
    throw ArgumentError("sequence supports the qubit depolarizing channel only");
  }
  const double lambda = require_param(cfg.channel.lambda, "--lambda", cfg.channel.family);
  const mc::RandomSequenceResult res =
      mc::random_sequence_run(lambda, parse_int(cfg.r, "-r"), cfg.n_max, cfg.seed);
  std::ostringstream csv;
  csv << "n,c_n,target,regime\n";
  for (const auto& p : res.points) {
    csv << p.n << "," << fmt12(p.c_n) << "," << fmt12(res.target) << "," << res.regime << "\n";
  }
  emit(cfg, out, csv.str());
  return kExitOk;
}

int cmd_concentration(const RunConfig& cfg, std::ostream& out) {
  if (cfg.channel.family != "depolarizing" || cfg.channel.d != 2) {
    throw ArgumentError("concentration supports the qubit depolarizing channel only");
  }
  const double lambda = require_param(cfg.channel.lambda, "--lambda", cfg.channel.family);
  const int r = parse_int(cfg.r, "-r");
  std::ostringstream csv;
  csv << "n,kappa,eta_bound,k_sphere,q_max,N,mean_moment,alpha_n,alpha_n_prime,epsilon_n,"
         "levy_C,constant_regime\n";
  for (int n = 1; n <= cfg.n; ++n) {
    const closed::ConcentrationReport rep = closed::concentration_report(lambda, n, r);
    csv << n << "," << fmt12(rep.kappa) << "," << fmt12(rep.eta_bound) << ","
        << fmt12(rep.k_sphere) << "," << fmt12(rep.q_max) << "," << rep.multiplicity << ","
        << fmt12(rep.mean_moment) << "," << fmt12(rep.alpha_n) << ","
        << (rep.alpha_n_prime ? fmt12(*rep.alpha_n_prime) : "not_applicable") << ","
        << fmt12(rep.epsilon_n) << "," << fmt12(rep.levy_c) << ","
        << (rep.constant_regime ? "true" : "false") << "\n";
  }
  emit(cfg, out, csv.str());
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  verify::VerifyOptions opts;
  opts.workers = cfg.workers;
  if (cfg.seed != 0) opts.seed = cfg.seed;
  if (cfg.samples != 0) opts.mc_samples = cfg.samples;
  bool ok = true;
  for (const auto& res : verify::run_all(opts)) {
    out << verify::format(res) << "\n";
    ok = ok && res.passed;
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  if (items.empty()) throw ArgumentError("expected a comma-separated list, got '" + text + "'");
  return items;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw ArgumentError("--grid: expected start:stop:points, got '" + text + "'");
  const double start = parse_double(parts[0], "--grid start");
  const double stop = parse_double(parts[1], "--grid stop");
  const int points = parse_int(parts[2], "--grid points");
  if (points < 1) throw ArgumentError("--grid: points must be >= 1");
  if (start > stop) throw ArgumentError("--grid: start must not exceed stop");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    grid.push_back(points == 1 ? start : start + (stop - start) * i / (points - 1));
  }
  grid.back() = points == 1 ? start : stop;
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average and regularized Renyi output entropies of quantum channels", "avgent"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
    sub->add_option("--workers", cfg.workers, "worker threads (default $AVGENT_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* qtable = app.add_subcommand("qtable", "exhaustive Q(alpha) table over Sym(r)");
  add_channel_options(qtable, cfg.channel);
  qtable->add_option("-r", cfg.r, "permutation degree")->required();
  common(qtable);

  CLI::App* beta = app.add_subcommand("beta-reg", "regularized beta_r from Q_max");
  add_channel_options(beta, cfg.channel);
  beta->add_option("-r", cfg.r, "Renyi order (integer >= 2)")->required();
  beta->add_option("-n", cfg.n, "also report the exact n-copy moment")->check(CLI::PositiveNumber);
  beta->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  common(beta);

  CLI::App* scan = app.add_subcommand("scan", "lambda-grid CSV for the depolarizing channel");
  add_channel_options(scan, cfg.channel);
  scan->add_option("-r", cfg.r, "comma-separated orders; 'inf' for r -> infinity");
  scan->add_option("--grid", cfg.grid, "start:stop:points (default 0:1:101)");
  scan->add_option("-n", cfg.n, "copies for the optional Monte Carlo column")
      ->check(CLI::PositiveNumber);
  scan->add_option("--samples", cfg.samples, "Monte Carlo samples for s_bar_estimate (0 = skip)");
  scan->add_option("--seed", cfg.seed, "Monte Carlo seed");
  common(scan);

  CLI::App* validity = app.add_subcommand("validity-table", "c_r and d_r for a list of r");
  cfg.r = "2";
  validity->add_option("-r", cfg.r, "comma-separated orders (default 2,3,4,10,100)");
  common(validity);

  CLI::App* mcc = app.add_subcommand("mc", "Monte Carlo estimates over Haar-random inputs");
  add_channel_options(mcc, cfg.channel);
  mcc->add_option("-r", cfg.r, "Renyi order (real >= 1)");
  mcc->add_option("-n", cfg.n, "number of channel copies")->check(CLI::PositiveNumber);
  mcc->add_option("--samples", cfg.samples, "number of samples (default 10000)");
  mcc->add_option("--seed", cfg.seed, "master seed");
  mcc->add_option("--quantity", cfg.quantity, "all | moment | beta | entropy");
  common(mcc);

  CLI::App* seq = app.add_subcommand("sequence", "entropy per system of one random input per n");
  add_channel_options(seq, cfg.channel);
  seq->add_option("-r", cfg.r, "Renyi order (integer >= 2)");
  seq->add_option("--n-max", cfg.n_max, "largest n (default 10)")->check(CLI::PositiveNumber);
  seq->add_option("--seed", cfg.seed, "master seed");
  common(seq);

  CLI::App* conc = app.add_subcommand("concentration", "concentration bounds for n = 1..N");
  add_channel_options(conc, cfg.channel);
  conc->add_option("-r", cfg.r, "Renyi order (integer >= 2)");
  conc->add_option("-n", cfg.n, "largest n")->check(CLI::PositiveNumber);
  common(conc);

  CLI::App* ver = app.add_subcommand("verify", "run the full oracle suite");
  ver->add_option("--seed", cfg.seed, "master seed (0 = built-in)");
  ver->add_option("--samples", cfg.samples, "Monte Carlo samples (0 = 100000)");
  common(ver);

  std::vector<std::string> argv_store{"avgent"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }
  if (validity->parsed() && validity->count("-r") == 0) cfg.r = "2,3,4,10,100";

  try {
    if (qtable->parsed()) return cmd_qtable(cfg, out);
    if (beta->parsed()) return cmd_beta_reg(cfg, out);
    if (scan->parsed()) return cmd_scan(cfg, out);
    if (validity->parsed()) return cmd_validity_table(cfg, out);
    if (mcc->parsed()) return cmd_mc(cfg, out);
    if (seq->parsed()) return cmd_sequence(cfg, out);
    if (conc->parsed()) return cmd_concentration(cfg, out);
    if (ver->parsed()) return cmd_verify(cfg, out);
  } catch (const ResourceLimitError& e) {
    err << "error: resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace avgent::cli
