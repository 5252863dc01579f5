// Copyright 2026 The zenodae Authors
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

#include "zenodae/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "zenodae/cost_model.hpp"
#include "zenodae/dae.hpp"
#include "zenodae/gaussian_zeno.hpp"
#include "zenodae/moment_dilation.hpp"
#include "zenodae/rlc_ladder.hpp"
#include "zenodae/stokes_mac.hpp"
#include "zenodae/zeno.hpp"

namespace zenodae {

namespace {

enum class Kind { kCount, kScalar, kCountList, kScalarList };

struct ParamSpec {
  const char* key;
  Kind kind;
  std::vector<double> fallback;
};

const std::vector<ParamSpec>& schema(Suite suite) {
  static const std::vector<ParamSpec> dilate = {
      {"n", Kind::kCount, {4}},
      {"m", Kind::kCount, {2}},
      {"M", Kind::kCount, {24}},
      {"jstar", Kind::kCount, {0}},
      {"times", Kind::kScalarList, {0.0, 0.05, 0.1, 0.2, 0.4}},
      {"tol", Kind::kScalar, {1e-6}},
  };
  static const std::vector<ParamSpec> zeno = {
      {"n", Kind::kCount, {4}},
      {"m", Kind::kCount, {2}},
      {"M", Kind::kCount, {12}},
      {"jstar", Kind::kCount, {0}},
      {"t", Kind::kScalar, {0.2}},
      {"N", Kind::kCountList, {4, 8, 16, 32, 64, 128, 256}},
  };
  static const std::vector<ParamSpec> stokes = {
      {"n", Kind::kCountList, {4}},
      {"t", Kind::kScalar, {1e-3}},
      {"M", Kind::kCount, {65}},
      {"jstar", Kind::kCount, {0}},
      {"tol", Kind::kScalar, {1e-6}},
  };
  static const std::vector<ParamSpec> gauss = {
      {"Q", Kind::kCount, {256}},
      {"qmax", Kind::kScalar, {12.0}},
      {"n", Kind::kCount, {4}},
      {"t", Kind::kScalar, {0.01}},
      {"Mq", Kind::kCountList, {2, 4, 6, 8, 10, 12, 14, 16}},
  };
  static const std::vector<ParamSpec> rlc = {
      {"N", Kind::kCountList, {4, 8, 16}},
      {"M", Kind::kCount, {24}},
      {"jstar", Kind::kCount, {0}},
      {"t", Kind::kScalar, {0.5}},
      {"R", Kind::kScalar, {0.2}},
      {"Lind", Kind::kScalar, {1.0}},
      {"Ccap", Kind::kScalar, {1.0}},
      {"Gcond", Kind::kScalar, {0.05}},
      {"tol", Kind::kScalar, {1e-6}},
  };
  static const std::vector<ParamSpec> cost = {
      {"h", Kind::kScalarList, {0.125, 0.0625, 0.03125, 0.015625}},
      {"t", Kind::kScalarList, {1.0, 4.0, 16.0}},
      {"eps", Kind::kScalar, {1e-6}},
      {"d", Kind::kCount, {2}},
      {"chi", Kind::kScalar, {1.0}},
      {"gamma", Kind::kScalar, {1.0}},
      {"TH", Kind::kScalar, {1.0}},
      {"TG", Kind::kScalar, {1.0}},
      {"TD", Kind::kScalar, {1.0}},
      {"cH", Kind::kScalar, {8.0}},
      {"cD", Kind::kScalar, {4.0}},
  };
  switch (suite) {
    case Suite::kDilate: return dilate;
    case Suite::kZeno: return zeno;
    case Suite::kStokes: return stokes;
    case Suite::kGauss: return gauss;
    case Suite::kRlc: return rlc;
    case Suite::kCost: return cost;
  }
  return dilate;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << what;
  throw Error(ErrorKind::kParse, os.str());
}

double parse_number(const std::string& text, int line, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
    parse_fail(line, "type mismatch for '" + key + "': '" + t + "' is not a number");
  return v;
}

bool parse_suite(const std::string& name, Suite& out) {
  for (Suite s : {Suite::kDilate, Suite::kZeno, Suite::kStokes, Suite::kGauss, Suite::kRlc, Suite::kCost}) {
    if (name == to_string(s)) {
      out = s;
      return true;
    }
  }
  return false;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

struct Row {
  std::vector<double> key;
  std::vector<std::string> cells;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
  std::vector<std::pair<std::string, std::string>> extra_files;  // name, contents
};

// Runs every job, on up to `threads` workers, and rethrows the failure of the lowest index.
template <class Result>
std::vector<Result> run_jobs(const std::vector<std::function<Result()>>& jobs, unsigned threads) {
  std::vector<Result> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        out[j] = jobs[j]();
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

[[noreturn]] void invariant_fail(const std::string& what) { throw Error(ErrorKind::kInvariant, what); }

Index jstar_or_default(const ExperimentConfig& cfg, Index M) {
  const Index j = cfg.count("jstar");
  return j == 0 ? default_jstar(M) : j;
}

Table dilate_suite(const ExperimentConfig& cfg, const RunOptions& opt) {
  const ConstrainedDAE dae = random_dae(cfg.count("n"), cfg.count("m"), cfg.seed);
  const Index M = cfg.count("M");
  const MomentAncilla anc = build_ancilla(M, jstar_or_default(cfg, M));
  const double tol = cfg.scalar("tol");
  std::vector<std::function<Row()>> jobs;
  for (double t : cfg.list("times")) {
    jobs.emplace_back([&, t] {
      const DilationErrorRow r = dilation_error_curve(dae, anc, {t}).front();
      if (!(r.error <= tol)) invariant_fail("dilation error " + sci(r.error) + " at t=" + num(t) + " exceeds tol");
      if (!(r.constraint_residual <= 1e-8)) invariant_fail("dilated state left ker(D) at t=" + num(t));
      return Row{{t}, {num(t), sci(r.error), std::to_string(anc.exact_order), sci(r.amplification)}};
    });
  }
  return Table{{"t", "err", "exact_order", "amplification"}, run_jobs(jobs, opt.threads), {}};
}

Table zeno_suite(const ExperimentConfig& cfg, const RunOptions& opt) {
  const ConstrainedDAE dae = random_dae(cfg.count("n"), cfg.count("m"), cfg.seed);
  const Index M = cfg.count("M");
  const MomentAncilla anc = build_ancilla(M, jstar_or_default(cfg, M));
  const DilatedSystem sys = build_dilated(dae, anc);
  const double t = cfg.scalar("t");
  const ComplexVector exact = evolve_dilated_dense(sys, t);
  std::vector<std::function<Row()>> jobs;
  for (double nd : cfg.list("N")) {
    const Index N = static_cast<Index>(nd);
    jobs.emplace_back([&, N] {
      const ComplexVector psi = zeno_product(sys, t, N);
      const double residual = sys.apply_constraint(psi).norm();
      if (!(residual <= 1e-8)) invariant_fail("Zeno product left ker(D) at N=" + std::to_string(N));
      return Row{{static_cast<double>(N)}, {std::to_string(N), num(t), sci((psi - exact).norm()), sci(residual)}};
    });
  }
  return Table{{"N", "t", "err", "constraint_residual"}, run_jobs(jobs, opt.threads), {}};
}

Table stokes_suite(const ExperimentConfig& cfg, const RunOptions& opt) {
  const double t = cfg.scalar("t");
  const Index M = cfg.count("M");
  const MomentAncilla anc = build_ancilla(M, jstar_or_default(cfg, M));
  const double tol = cfg.scalar("tol");
  struct Out {
    Row row;
    std::string dump;
  };
  std::vector<std::function<Out()>> jobs;
  for (double nd : cfg.list("n")) {
    const Index n = static_cast<Index>(nd);
    jobs.emplace_back([&, n] {
      const StokesOperators ops = build_operators(n);
      const double h = ops.grid.h;
      const ComplexMatrix a = ops.Gh * ops.PiH;
      const double factor_defect = (ops.Sh - a.adjoint() * a).norm();
      if (!(factor_defect <= 1e-12 * std::max(1.0, ops.Sh.norm())))
        invariant_fail("Sh differs from (Gh Pi)^T (Gh Pi) at n=" + std::to_string(n));
      const ComplexVector u0 = taylor_green_init(ops.grid);
      const ConstrainedDAE dae = assemble_stokes_dae(ops, u0);
      const DilatedSystem sys = build_dilated(dae, anc);
      const ComplexVector x = recover(sys, anc, evolve_dilated(sys, t));
      const double err = (x - reduced_evolve(ops, u0, t)).norm();
      const double div = (ops.Dh * x).norm();
      if (!(err <= tol)) invariant_fail("Stokes recovery error " + sci(err) + " at n=" + std::to_string(n));
      if (!(div <= 1e-8)) invariant_fail("recovered velocity not divergence free at n=" + std::to_string(n));
      const RealVector sd = singular_values(ops.Dh);
      Out out;
      out.row = Row{{static_cast<double>(n)},
                    {std::to_string(n), num(h), num(t), std::to_string(M), sci(err), sci(div),
                     num(sd(sd.size() - 1)), num(spectral_norm(ops.Lap) * h * h), num(spectral_norm(ops.Gh) * h),
                     sci(factor_defect)}};
      if (opt.dump_operators) {
        std::ostringstream os;
        dump_operator(os, "Gh", ops.Gh, ops.grid);
        dump_operator(os, "Dh", ops.Dh, ops.grid);
        dump_operator(os, "Lap", ops.Lap, ops.grid);
        dump_operator(os, "PiH", ops.PiH, ops.grid);
        dump_operator(os, "Sh", ops.Sh, ops.grid);
        dump_operator(os, "Bh", ops.Bh, ops.grid);
        out.dump = os.str();
      }
      return out;
    });
  }
  Table table;
  table.header = {"n", "h", "t", "M", "err", "div_residual", "sigma_min_dh", "lap_h2", "grad_h", "factor_defect"};
  const auto outs = run_jobs(jobs, opt.threads);
  for (std::size_t k = 0; k < outs.size(); ++k) {
    table.rows.push_back(outs[k].row);
    if (opt.dump_operators)
      table.extra_files.emplace_back("stokes_operators_n" + outs[k].row.cells[0] + ".mtx", outs[k].dump);
  }
  return table;
}

Table gauss_suite(const ExperimentConfig& cfg, const RunOptions& opt) {
  const GaussianAncilla anc = gaussian_ancilla(cfg.count("Q"), cfg.scalar("qmax"));
  if (!(std::abs(anc.g.squaredNorm() - 1.0) <= settings().gauss_tol)) invariant_fail("Gaussian ancilla not normalized");
  for (Index m = 0; m <= 6; ++m)
    if (gaussian_moment(anc, 2 * m + 1) != 0.0) invariant_fail("odd Gaussian moment is nonzero");

  const StokesOperators ops = build_operators(cfg.count("n"));
  const double t = cfg.scalar("t");
  const ComplexVector u0 = ops.PiH * taylor_green_init(ops.grid);
  const ComplexVector exact = matexp((-t * ops.Sh).eval()) * u0;
  ComplexVector v = ComplexVector::Zero(ops.Bh.rows());
  v.head(ops.velocity_dim()) = u0;
  const double chi = chi_factor(ops, u0, t);

  std::vector<std::function<Row()>> jobs;
  for (double md : cfg.list("Mq")) {
    const Index Mq = static_cast<Index>(md);
    jobs.emplace_back([&, Mq] {
      const LchsQuadrature quad = lchs_nodes(t, Mq);
      const double sum_c = quad.c.sum();
      if (!(std::abs(sum_c - 1.0) <= 1e-12)) invariant_fail("LCHS weights do not sum to 1 at Mq=" + std::to_string(Mq));
      if (!(quad.c.minCoeff() > 0.0)) invariant_fail("LCHS weight is not positive at Mq=" + std::to_string(Mq));
      const ComplexVector w = apply_lchs(ops.Bh, quad, v);
      const double err = (w.head(ops.velocity_dim()) - exact).norm();
      return Row{{static_cast<double>(Mq)},
                 {std::to_string(Mq), num(t), num(quad.kmax), sci(sum_c - 1.0), sci(err), num(chi),
                  std::to_string(anc.m_max)}};
    });
  }
  return Table{{"Mq", "t", "kmax", "sum_c_minus_1", "lchs_err", "chi", "m_max"}, run_jobs(jobs, opt.threads), {}};
}

Table rlc_suite(const ExperimentConfig& cfg, const RunOptions& opt) {
  const Index M = cfg.count("M");
  const Index jstar = jstar_or_default(cfg, M);
  const double t = cfg.scalar("t");
  const double tol = cfg.scalar("tol");
  struct Out {
    Row row;
    std::string dump;
  };
  std::vector<std::function<Out()>> jobs;
  for (double nd : cfg.list("N")) {
    const Index N = static_cast<Index>(nd);
    jobs.emplace_back([&, N] {
      RlcParams p;
      p.N = N;
      p.R = cfg.scalar("R");
      p.Lind = cfg.scalar("Lind");
      p.Ccap = cfg.scalar("Ccap");
      p.Gcond = cfg.scalar("Gcond");
      p.seed = cfg.seed;
      const ConstrainedDAE dae = build_rlc(p);
      const RealVector s = singular_values(dae.C);
      const double norm_l = spectral_norm(dae.L);
      const RlcCheckRow r = rlc_dilation_check(p, M, jstar, {t}).front();
      if (!(r.error <= tol)) invariant_fail("ladder recovery error " + sci(r.error) + " at N=" + std::to_string(N));
      if (!(r.constraint_residual <= 1e-8)) invariant_fail("ladder trajectory left ker(D_N) at N=" + std::to_string(N));
      Out out;
      out.row = Row{{static_cast<double>(N)},
                    {std::to_string(N), num(t), num(s(s.size() - 1)), num(s(0)), num(norm_l), sci(r.error),
                     sci(r.constraint_residual)}};
      if (opt.dump_operators) {
        std::ostringstream os;
        dump_triplets(os, "% operator=L N=" + std::to_string(N), dae.L);
        dump_triplets(os, "% operator=D N=" + std::to_string(N), dae.C);
        out.dump = os.str();
      }
      return out;
    });
  }
  Table table;
  table.header = {"N", "t", "sigma_min", "sigma_max", "norm_L", "err", "constraint_residual"};
  const auto outs = run_jobs(jobs, opt.threads);
  for (const auto& o : outs) {
    table.rows.push_back(o.row);
    if (opt.dump_operators) table.extra_files.emplace_back("rlc_operators_N" + o.row.cells[0] + ".mtx", o.dump);
  }
  return table;
}

Table cost_suite(const ExperimentConfig& cfg) {
  CostInputs base;
  base.eps = cfg.scalar("eps");
  base.d = static_cast<int>(cfg.count("d"));
  base.chi = cfg.scalar("chi");
  base.gamma = cfg.scalar("gamma");
  base.TH = cfg.scalar("TH");
  base.TG = cfg.scalar("TG");
  base.TD = cfg.scalar("TD");
  base.cH = cfg.scalar("cH");
  base.cD = cfg.scalar("cD");
  Table table;
  table.header = {"h",           "t",       "eps",     "d",         "chi",     "p_degree",
                  "direct_queries", "direct_gates", "gz_gates", "gz_prep", "classical", "verdict"};
  for (const CrossoverRow& r : crossover_report(base, cfg.list("h"), cfg.list("t"))) {
    table.rows.push_back(Row{{r.in.h, r.in.t},
                             {num(r.in.h), num(r.in.t), num(r.in.eps), std::to_string(r.in.d), num(r.in.chi),
                              std::to_string(r.direct.p_degree), sci(r.direct.queries), sci(r.direct.gates),
                              sci(r.gz.gates), sci(r.gz.prep), sci(r.classical),
                              r.quantum_cheaper ? "quantum" : "classical"}});
  }
  return table;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ',';
    out += cells[k];
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  f << contents;
  f.close();
  if (!f) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n') ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

const char* to_string(Suite suite) {
  switch (suite) {
    case Suite::kDilate: return "dilate";
    case Suite::kZeno: return "zeno";
    case Suite::kStokes: return "stokes";
    case Suite::kGauss: return "gauss";
    case Suite::kRlc: return "rlc";
    case Suite::kCost: return "cost";
  }
  return "unknown";
}

double ExperimentConfig::scalar(const std::string& key) const { return list(key).front(); }

Index ExperimentConfig::count(const std::string& key) const { return static_cast<Index>(list(key).front()); }

const std::vector<double>& ExperimentConfig::list(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end() || it->second.empty())
    throw Error(ErrorKind::kParameter, "suite " + std::string(to_string(suite)) + " has no parameter '" + key + "'");
  return it->second;
}

ExperimentConfig parse_config(const std::string& text) {
  struct Entry {
    int line;
    std::string value;
  };
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) parse_fail(line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) parse_fail(line, "missing key");
    if (value.empty()) parse_fail(line, "missing value for '" + key + "'");
    if (entries.count(key)) parse_fail(line, "duplicate key '" + key + "'");
    entries[key] = Entry{line, value};
  }

  ExperimentConfig cfg;
  const auto suite_it = entries.find("suite");
  if (suite_it == entries.end()) parse_fail(0, "suite required");
  if (!parse_suite(suite_it->second.value, cfg.suite))
    parse_fail(suite_it->second.line, "unknown suite '" + suite_it->second.value + "'");
  entries.erase(suite_it);

  if (const auto it = entries.find("seed"); it != entries.end()) {
    const double v = parse_number(it->second.value, it->second.line, "seed");
    if (v < 0 || v != std::floor(v) || v > 9.0e15) parse_fail(it->second.line, "type mismatch for 'seed': expected a count");
    cfg.seed = static_cast<std::uint64_t>(v);
    entries.erase(it);
  }
  cfg.output_path = std::string(to_string(cfg.suite)) + ".csv";
  if (const auto it = entries.find("output"); it != entries.end()) {
    cfg.output_path = it->second.value;
    entries.erase(it);
  }

  for (const ParamSpec& spec : schema(cfg.suite)) {
    const auto it = entries.find(spec.key);
    if (it == entries.end()) {
      cfg.params[spec.key] = spec.fallback;
      continue;
    }
    const int ln = it->second.line;
    std::vector<double> values;
    std::stringstream items(it->second.value);
    std::string item;
    while (std::getline(items, item, ',')) values.push_back(parse_number(item, ln, spec.key));
    if (values.empty()) parse_fail(ln, "empty list for '" + std::string(spec.key) + "'");
    const bool is_list = spec.kind == Kind::kCountList || spec.kind == Kind::kScalarList;
    if (!is_list && values.size() != 1) parse_fail(ln, "type mismatch for '" + std::string(spec.key) + "': expected one value");
    if (spec.kind == Kind::kCount || spec.kind == Kind::kCountList) {
      for (double v : values)
        if (v < 0 || v != std::floor(v) || v > 1e9)
          parse_fail(ln, "type mismatch for '" + std::string(spec.key) + "': expected a count, got " + num(v));
    }
    cfg.params[spec.key] = std::move(values);
    entries.erase(it);
  }
  if (!entries.empty()) {
    const auto first = std::min_element(entries.begin(), entries.end(),
                                        [](const auto& a, const auto& b) { return a.second.line < b.second.line; });
    parse_fail(first->second.line,
               "unknown key '" + first->first + "' for suite " + std::string(to_string(cfg.suite)));
  }
  return cfg;
}

void apply_environment(ExperimentConfig& cfg) {
  const char* env = std::getenv("ZENO_DAE_SEED");
  if (env == nullptr || *env == '\0') return;
  const std::string s = trim(env);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::kParse, "ZENO_DAE_SEED is not an unsigned integer: '" + s + "'");
  cfg.seed = v;
}

std::string canonical_params(const ExperimentConfig& cfg) {
  std::string out = std::string("suite=") + to_string(cfg.suite);
  for (const auto& [key, values] : cfg.params) {
    out += ';';
    out += key;
    out += '=';
    for (std::size_t k = 0; k < values.size(); ++k) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%s%.17g", k ? "," : "", values[k]);
      out += buf;
    }
  }
  return out;
}

std::string params_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_params(cfg)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kParameter:
    case ErrorKind::kShape: return kExitConfig;
    case ErrorKind::kCapacity: return kExitCapacity;
    case ErrorKind::kIo: return kExitIo;
    default: return kExitInvariant;
  }
}

RunResult run_suite(const ExperimentConfig& cfg, const RunOptions& options) {
  RunResult result;
  const std::string suite = to_string(cfg.suite);
  try {
    Table table;
    switch (cfg.suite) {
      case Suite::kDilate: table = dilate_suite(cfg, options); break;
      case Suite::kZeno: table = zeno_suite(cfg, options); break;
      case Suite::kStokes: table = stokes_suite(cfg, options); break;
      case Suite::kGauss: table = gauss_suite(cfg, options); break;
      case Suite::kRlc: table = rlc_suite(cfg, options); break;
      case Suite::kCost: table = cost_suite(cfg); break;
    }
    std::stable_sort(table.rows.begin(), table.rows.end(), [](const Row& a, const Row& b) { return a.key < b.key; });

    std::ostringstream csv;
    csv << "# suite=" << suite << ", version=" << kVersion << ", seed=" << cfg.seed
        << ", params-hash=" << params_hash(cfg) << '\n';
    if (cfg.suite == Suite::kCost) csv << crossover_preamble();
    csv << join(table.header) << '\n';
    for (const Row& r : table.rows) csv << join(r.cells) << '\n';

    const std::filesystem::path dir(options.out_dir.empty() ? "." : options.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create output directory " + dir.string() + ": " + ec.message());
    const std::filesystem::path target = dir / cfg.output_path;
    write_file(target, csv.str());
    for (const auto& [name, contents] : table.extra_files) write_file(dir / name, contents);

    result.csv_path = target.string();
    result.summary = "status=ok suite=" + suite + " rows=" + std::to_string(table.rows.size()) +
                     " csv=" + quote(result.csv_path);
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.kind());
    result.summary = std::string("status=") + to_string(e.kind()) + " exit=" + std::to_string(result.exit_code) +
                     " suite=" + suite + " message=" + quote(e.what());
  } catch (const std::exception& e) {
    result.exit_code = kExitInvariant;
    result.summary = "status=internal exit=3 suite=" + suite + " message=" + quote(e.what());
  }
  return result;
}

int run_checks(std::ostream& os) {
  struct Check {
    const char* name;
    std::function<bool()> body;
  };
  const std::vector<Check> checks = {
      {"matexp_hermitian_unitary",
       [] {
         const ConstrainedDAE d = random_dae(6, 1, 7);
         const HermitianSplit s = hermitian_split(d.L);
         const ComplexMatrix u = matexp((Complex(0.0, -1.0) * s.H).eval());
         return (u.adjoint() * u - ComplexMatrix::Identity(6, 6)).norm() <= 1e-12;
       }},
      {"ancilla_moments",
       [] {
         const MomentAncilla anc = build_ancilla(20, 10);
         return anc.exact_order >= anc.nominal_order;
       }},
      {"dilation_recovery",
       [] {
         const ConstrainedDAE d = random_dae(5, 2, 11);
         const auto rows = dilation_error_curve(d, build_ancilla(24, 12), {0.2});
         return rows.front().error <= 1e-6 && rows.front().constraint_residual <= 1e-8;
       }},
      {"poly_projector",
       [] {
         RlcParams p;
         p.N = 4;
         const ConstrainedDAE d = build_rlc(p);
         const auto spec = make_poly_projector_spec(std::sqrt(2.0), 1.0, 1e-6);
         return (poly_projector_apply(d.C, spec) - null_projector(d.C)).norm() <= 1e-6;
       }},
      {"stokes_structure",
       [] {
         const StokesOperators ops = build_operators(4);
         const ComplexMatrix b2 = ops.Bh * ops.Bh;
         const Index nv = ops.velocity_dim();
         return (b2.topLeftCorner(nv, nv) - ops.Sh).norm() <= 1e-10 &&
                (ops.Dh * taylor_green_init(ops.grid)).norm() <= 1e-10;
       }},
      {"gaussian_ancilla",
       [] {
         const GaussianAncilla anc = gaussian_ancilla();
         return std::abs(gaussian_moment(anc, 4) - 12.0) <= 1e-6 && gaussian_moment(anc, 3) == 0.0;
       }},
      {"lchs_weights",
       [] {
         for (Index mq = 1; mq <= 24; ++mq)
           if (std::abs(lchs_nodes(0.1, mq).c.sum() - 1.0) > 1e-12) return false;
         return true;
       }},
      {"rlc_singular_values",
       [] {
         RlcParams p;
         p.N = 8;
         const RealVector s = singular_values(build_rlc(p).C);
         return std::abs(s(0) - std::sqrt(2.0)) <= 1e-12 && std::abs(s(1) - 1.0) <= 1e-12;
       }},
      {"cost_scaling",
       [] {
         CostInputs a;
         a.h = 1.0 / 16.0;
         CostInputs b = a;
         b.h = a.h / 2.0;
         return std::abs(classical_cost(b) / classical_cost(a) - 8.0) <= 1e-12;
       }},
  };
  int failures = 0;
  for (const Check& c : checks) {
    bool ok = false;
    std::string detail;
    try {
      ok = c.body();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    os << (ok ? "ok   " : "FAIL ") << c.name << detail << '\n';
    if (!ok) ++failures;
  }
  os << (failures ? "status=invariant failed=" : "status=ok failed=") << failures << '\n';
  return failures ? kExitInvariant : kExitOk;
}

}  // namespace zenodae
