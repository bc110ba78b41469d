// Copyright 2026 The cohvec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success (an inconclusive verdict is
// a success), 2 usage or parse error, 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cohvec/io.hpp"

namespace {

using namespace cohvec;
using io::Json;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr Real kContainmentEps = 1e-6;
constexpr std::uint64_t kSampleStream = 0x9000;
constexpr std::uint64_t kChannelStream = 0x9100;

struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<int> max_iters;
  std::optional<Real> tol;
  std::optional<Eigen::Index> members;
  bool parallel = false;
  std::string out;
  std::string format;  // empty: command default

  OptimizerConfig optimizer(const char* command) const {
    if (!seed) throw ParseError(std::string(command) + " needs --seed");
    OptimizerConfig cfg(*seed);
    if (restarts) cfg.restarts = *restarts;
    if (max_iters) cfg.max_iters = *max_iters;
    if (tol) cfg.tolerance = *tol;
    if (members) cfg.ensemble_size = *members;
    cfg.parallel = parallel;
    try {
      cfg.validate();
    } catch (const ValidationError& e) {
      throw ParseError(e.what());
    }
    return cfg;
  }

  bool csv(const char* fallback) const {
    const std::string f = format.empty() ? fallback : format;
    return f == "csv";
  }
};

void emit(const RunConfig& run, const std::string& text) {
  if (run.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(run.out, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + run.out + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string join(const RVector& v, const char* sep = ",") {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += io::format_real(v[i]);
  }
  return s;
}

std::string header(const std::string& prefix, Eigen::Index from, Eigen::Index to) {
  std::string s;
  for (Eigen::Index i = from; i <= to; ++i) s += "," + prefix + std::to_string(i);
  return s;
}

OrderedProbVector<Real> ordered_arg(const std::string& text) {
  try {
    return sort_desc(ProbVector<Real>(io::parse_vector(text)));
  } catch (const ValidationError& e) {
    throw ParseError("vector '" + text + "': " + e.what());
  }
}

CoherenceFn fn_arg(const std::string& spec, Eigen::Index d) {
  try {
    return CoherenceFn::parse(spec, d);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

void cmd_sup(const RunConfig& run, const std::vector<std::vector<Real>>& args) {
  std::vector<OrderedProbVector<Real>> set;
  for (const auto& a : args) {
    try {
      set.push_back(sort_desc(ProbVector<Real>(Eigen::Map<const RVector>(a.data(), static_cast<Eigen::Index>(a.size())))));
    } catch (const ValidationError& e) {
      throw ParseError(e.what());
    }
  }
  for (const auto& u : set)
    if (u.dim() != set.front().dim()) throw ParseError("vectors differ in dimension");
  const auto sup = lattice_sup(set);
  const RVector sums = lorenz(sup).partial_sums;
  if (run.csv("json")) {
    std::string s = "j,entry,partial_sum\n";
    for (Eigen::Index j = 0; j < sums.size(); ++j)
      s += std::to_string(j) + "," + (j ? io::format_real(sup[j - 1]) : std::string()) + "," + io::format_real(sums[j]) + "\n";
    emit(run, s);
    return;
  }
  Json j;
  j["sup"] = io::to_json(sup.entries());
  Json pts = Json::array();
  for (Eigen::Index k = 0; k < sums.size(); ++k) pts.push_back({k, sums[k]});
  j["lorenz"] = std::move(pts);
  emit(run, dump(j));
}

void cmd_majorize(const RunConfig& run, const std::string& a, const std::string& b, Real eps) {
  const auto u = ordered_arg(a), v = ordered_arg(b);
  if (u.dim() != v.dim()) throw ParseError("vectors differ in dimension");
  const bool uv = is_majorized_by(u, v, eps), vu = is_majorized_by(v, u, eps);
  if (run.csv("json")) {
    emit(run, std::string("u_below_v,v_below_u\n") + (uv ? "true" : "false") + "," + (vu ? "true" : "false") + "\n");
    return;
  }
  Json j;
  j["u_majorized_by_v"] = uv;
  j["v_majorized_by_u"] = vu;
  j["u_partial_sums"] = io::to_json(lorenz(u).partial_sums);
  j["v_partial_sums"] = io::to_json(lorenz(v).partial_sums);
  emit(run, dump(j));
}

void cmd_gcv(const RunConfig& run, const std::string& spec) {
  const DensityMatrix rho = io::parse_state(spec);
  const GcvResult g = gcv(rho, run.optimizer("gcv"));
  std::cerr << "nu = (" << join(g.nu.entries(), ", ") << ")  converged: " << (g.all_converged() ? "yes" : "no")
            << "\n";
  if (run.csv("json")) {
    std::string s = "k,nu_k,S_k,converged\n";
    for (Eigen::Index k = 0; k < g.nu.dim(); ++k) {
      const bool has_level = k < g.levels.size();
      s += std::to_string(k + 1) + "," + io::format_real(g.nu[k]) + "," +
           (has_level ? io::format_real(g.levels[k]) : std::string("1")) + "," +
           (has_level && !g.converged[static_cast<std::size_t>(k)] ? "false" : "true") + "\n";
    }
    emit(run, s);
    return;
  }
  Json j;
  j["state"] = spec;
  j["result"] = io::to_json(g);
  if (!g.all_converged()) j["warning"] = "optimizer did not converge at every level";
  emit(run, dump(j));
}

void cmd_quantify(const RunConfig& run, const std::string& spec, const std::string& fn_spec) {
  const DensityMatrix rho = io::parse_state(spec);
  const CoherenceFn f = fn_arg(fn_spec, rho.dim());
  const QuantifierReport r = quantify(rho, f, run.optimizer("quantify"));
  const std::pair<const char*, const QuantifierValue*> rows[] = {{"c_cr", &r.cr}, {"c_top", &r.top}, {"c_cv", &r.cv}};
  if (run.csv("json")) {
    std::string s = "quantifier,value,bound_direction,converged\n";
    for (const auto& [name, q] : rows)
      s += std::string(name) + "," + io::format_real(q->value) + "," + to_string(q->bound) + "," +
           (q->converged ? "true" : "false") + "\n";
    emit(run, s);
    return;
  }
  Json j;
  for (const auto& [name, q] : rows) {
    Json rec = io::quantifier_record(spec, f.name(), *q);
    j[name] = std::move(rec);
  }
  j["nu"] = io::to_json(r.nu.nu.entries());
  emit(run, dump(j));
}

void cmd_sweep(const RunConfig& run, Eigen::Index d, const std::string& fn_spec, Real from, Real to, int num) {
  if (num < 1) throw ParseError("--num must be at least 1");
  if (!(from >= 0 && to <= 1 && from <= to)) throw ParseError("grid must lie within [0, 1]");
  if (d < 2) throw ParseError("--dim must be at least 2");
  const CoherenceFn f = fn_arg(fn_spec, d);
  const OptimizerConfig cfg = run.optimizer("sweep-depolarizing");
  const bool csv = run.csv("csv");
  std::string s = "p,c_cr,c_top,c_cv" + header("nu_", 1, d) + ",converged\n";
  Json rows = Json::array();
  for (int i = 0; i < num; ++i) {
    const Real p = num == 1 ? from : from + (to - from) * Real(i) / Real(num - 1);
    const QuantifierReport r = quantify(presets::depolarized_mcs(d, p), f, cfg);
    const bool conv = r.cr.converged && r.top.converged && r.cv.converged;
    if (csv) {
      s += io::format_real(p) + "," + io::format_real(r.cr.value) + "," + io::format_real(r.top.value) + "," +
           io::format_real(r.cv.value) + "," + join(r.nu.nu.entries()) + "," + (conv ? "true" : "false") + "\n";
    } else {
      Json row;
      row["p"] = p;
      row["c_cr"] = r.cr.value;
      row["c_top"] = r.top.value;
      row["c_cv"] = r.cv.value;
      row["nu"] = io::to_json(r.nu.nu.entries());
      row["converged"] = conv;
      rows.push_back(std::move(row));
    }
  }
  emit(run, csv ? s : dump(rows));
}

void cmd_sample(const RunConfig& run, const std::string& spec, int count, std::optional<Eigen::Index> m_min,
                std::optional<Eigen::Index> m_max) {
  if (count < 1) throw ParseError("--count must be at least 1");
  const DensityMatrix rho = io::parse_state(spec);
  const OptimizerConfig cfg = run.optimizer("sample-ensembles");
  const Eigen::Index d = rho.dim();
  const Spectrum spectrum = spectral(rho);
  const Eigen::Index r = spectrum.rank();
  const Eigen::Index lo = m_min.value_or(r), hi = m_max.value_or(d * d);
  if (lo < r || hi < lo) throw ParseError("M-range must satisfy rank <= m-min <= m-max");

  const GcvResult g = gcv(rho, cfg);
  const bool csv = run.csv("csv");
  std::string s = "M" + header("u_", 1, d) + header("s_", 1, d - 1) + "\n";
  Json rows = Json::array();
  long contained = 0;
  for (int i = 0; i < count; ++i) {
    // row 0 is the spectral decomposition itself
    const Eigen::Index m = i == 0 ? r : lo + static_cast<Eigen::Index>(i - 1) % (hi - lo + 1);
    const Isometry v = i == 0 ? Isometry::identity(r, r)
                              : random_isometry(m, r, derive_seed(cfg.seed, kSampleStream, static_cast<std::uint64_t>(i)));
    const auto point = decomposition_point(ensemble_from_isometry(spectrum, v));
    if (is_majorized_by(point, g.nu, kContainmentEps)) ++contained;
    const RVector sums = lorenz(point).partial_sums.segment(1, d - 1);
    if (csv) {
      s += std::to_string(m) + "," + join(point.entries()) + (d > 1 ? "," + join(sums) : std::string()) + "\n";
    } else {
      rows.push_back({{"M", m}, {"point", io::to_json(point.entries())}, {"s", io::to_json(sums)}});
    }
  }
  std::cerr << "contained: " << contained << "/" << count << " points majorized by nu + " << kContainmentEps << "\n";
  emit(run, csv ? s : dump(rows));
}

void cmd_convert(const RunConfig& run, const std::string& a, const std::string& b) {
  const DensityMatrix rho = io::parse_state(a), sigma = io::parse_state(b);
  if (rho.dim() != sigma.dim()) throw ParseError("states differ in dimension");
  const ConversionVerdict v = convert(rho, sigma, run.optimizer("convert"));
  if (run.csv("json")) {
    emit(run, "verdict,method\n" + std::string(to_string(v.verdict)) + "," + v.method + "\n");
    return;
  }
  Json j;
  j["source"] = a;
  j["target"] = b;
  j.update(io::to_json(v));
  emit(run, dump(j));
}

IncoherentChannel channel_arg(const RunConfig& run, const std::string& spec) {
  if (!spec.empty() && spec.front() == '@') return io::channel_from_json(io::read_file(spec.substr(1)));
  // random:d:N
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
  if (parts.size() != 3 || parts[0] != "random") throw ParseError("channel must be @file.json or random:d:N");
  if (!run.seed) throw ParseError("random channels need --seed");
  const Real d = io::parse_vector(parts[1])[0], n = io::parse_vector(parts[2])[0];
  if (d < 2 || n < 1 || d != std::floor(d) || n != std::floor(n)) throw ParseError("invalid random channel size");
  return random_incoherent_channel(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n),
                                   derive_seed(*run.seed, kChannelStream, 0));
}

void cmd_channel_apply(const RunConfig& run, const std::string& ch_spec, const std::string& state_spec,
                       bool selective, bool print_channel) {
  const IncoherentChannel ch = channel_arg(run, ch_spec);
  const DensityMatrix rho = io::parse_state(state_spec);
  if (rho.dim() != ch.dim()) throw ParseError("channel and state differ in dimension");
  Json j;
  if (print_channel) j["channel"] = io::to_json(ch);
  if (selective) {
    Json outs = Json::array();
    for (const auto& o : selective_apply(ch, rho))
      outs.push_back({{"probability", o.probability}, {"state", io::to_json(o.state)}});
    j["outcomes"] = std::move(outs);
  } else {
    j["state"] = io::to_json(apply(ch, rho));
  }
  if (run.csv("json")) throw ParseError("channel-apply supports --format json only");
  emit(run, dump(j));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized coherence vectors, coherence quantifiers and incoherent conversions"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig run;
  app.add_option("--seed", run.seed, "Master seed (required by optimizer-backed commands)");
  app.add_option("--restarts", run.restarts, "Optimizer restarts per search")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", run.max_iters, "Sweeps per restart")->check(CLI::PositiveNumber);
  app.add_option("--tol", run.tol, "Optimizer objective tolerance")->check(CLI::PositiveNumber);
  app.add_option("--members", run.members, "Ensemble size M (default d^2)")->check(CLI::PositiveNumber);
  app.add_flag("--parallel", run.parallel, "Run restarts on worker threads");
  app.add_option("--out", run.out, "Write output to this file instead of stdout");
  app.add_option("--format", run.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<void()> action;

  std::vector<std::vector<Real>> sup_args;
  auto* sup = app.add_subcommand("sup", "Lattice supremum of probability vectors");
  sup->add_option("vectors", sup_args, "Vectors such as [0.6,0.2,0.2]")->required()->delimiter(',');
  sup->callback([&] { action = [&] { cmd_sup(run, sup_args); }; });

  std::string maj_u, maj_v;
  Real maj_eps = kMajorizationEps;
  auto* maj = app.add_subcommand("majorize", "Test u majorized by v and the converse");
  maj->add_option("u", maj_u)->required();
  maj->add_option("v", maj_v)->required();
  maj->add_option("--eps", maj_eps, "Partial-sum tolerance")->check(CLI::NonNegativeNumber);
  maj->callback([&] { action = [&] { cmd_majorize(run, maj_u, maj_v, maj_eps); }; });

  std::string gcv_state;
  auto* gcv_cmd = app.add_subcommand("gcv", "Estimate the generalized coherence vector");
  gcv_cmd->add_option("state", gcv_state, "Preset or @file.json")->required();
  gcv_cmd->callback([&] { action = [&] { cmd_gcv(run, gcv_state); }; });

  std::string q_state, q_fn;
  auto* quant = app.add_subcommand("quantify", "Evaluate c_cr, c_top and c_cv");
  quant->add_option("state", q_state)->required();
  quant->add_option("fn", q_fn, "f_k:K, f_lin, shannon, tsallis:A, renyi:A")->required();
  quant->callback([&] { action = [&] { cmd_quantify(run, q_state, q_fn); }; });

  Eigen::Index sw_dim = 3;
  std::string sw_fn = "f_lin";
  Real sw_from = 0, sw_to = 1;
  int sw_num = 11;
  auto* sweep = app.add_subcommand("sweep-depolarizing", "Quantifiers along p I/d + (1-p) |mcs><mcs|");
  sweep->add_option("--dim", sw_dim, "Dimension d");
  sweep->add_option("--fn", sw_fn, "Coherence function");
  sweep->add_option("--from", sw_from, "First p");
  sweep->add_option("--to", sw_to, "Last p");
  sweep->add_option("--num", sw_num, "Number of grid points");
  sweep->callback([&] { action = [&] { cmd_sweep(run, sw_dim, sw_fn, sw_from, sw_to, sw_num); }; });

  std::string se_state;
  int se_count = 10000;
  std::optional<Eigen::Index> se_min, se_max;
  auto* sample = app.add_subcommand("sample-ensembles", "Decomposition points of random ensembles");
  sample->add_option("state", se_state)->required();
  sample->add_option("--count", se_count, "Number of samples (row 0 is the spectral decomposition)");
  sample->add_option("--m-min", se_min, "Smallest ensemble size (default rank)");
  sample->add_option("--m-max", se_max, "Largest ensemble size (default d^2)");
  sample->callback([&] { action = [&] { cmd_sample(run, se_state, se_count, se_min, se_max); }; });

  std::string cv_from, cv_to;
  auto* conv = app.add_subcommand("convert", "Decide rho -> sigma under incoherent operations");
  conv->add_option("source", cv_from)->required();
  conv->add_option("target", cv_to)->required();
  conv->callback([&] { action = [&] { cmd_convert(run, cv_from, cv_to); }; });

  std::string ca_channel, ca_state;
  bool ca_selective = false, ca_print = false;
  auto* chap = app.add_subcommand("channel-apply", "Apply an incoherent channel");
  chap->add_option("channel", ca_channel, "@file.json or random:d:N")->required();
  chap->add_option("state", ca_state)->required();
  chap->add_flag("--selective", ca_selective, "Report the post-selected branches");
  chap->add_flag("--print-channel", ca_print, "Include the Kraus operators in the output");
  chap->callback([&] { action = [&] { cmd_channel_apply(run, ca_channel, ca_state, ca_selective, ca_print); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
