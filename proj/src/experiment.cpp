#include "radnls/experiment.hpp"

#include "radnls/acceptance.hpp"
#include "radnls/errors.hpp"
#include "radnls/kernels.hpp"
#include "radnls/norms.hpp"
#include "radnls/snapshot_io.hpp"
#include "radnls/wavesplit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace radnls {

namespace {

const std::map<Scenario, std::string>& scenario_names() {
  static const std::map<Scenario, std::string> names{
      {Scenario::kernels, "kernels"},  {Scenario::decompose, "decompose"},
      {Scenario::linear_sweep, "linear-sweep"}, {Scenario::evolve, "evolve"},
      {Scenario::scatter, "scatter"},  {Scenario::check, "check"}};
  return names;
}

// ---------------------------------------------------------------- parsing

class Reader {
public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where("") + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& require(const std::string& key) const {
    if (!j_.contains(key)) throw ConfigError(where(key) + ": missing required field");
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return as_number(require(key), key);
  }
  double number(const std::string& key) const { return as_number(require(key), key); }

  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = require(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ConfigError(where(key) + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    return as_string(key);
  }
  std::string as_string(const std::string& key) const {
    const auto& v = require(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = require(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const auto& v = require(key);
    if (!v.is_array()) throw ConfigError(where(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) out.push_back(as_number(x, key));
    return out;
  }

  Reader child(const std::string& key) const { return Reader(require(key), where(key)); }

  std::string where(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "config" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  // Rejects keys that no accessor asked for.
  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!used_.count(key)) throw ConfigError(where(key) + ": unknown field");
  }

private:
  double as_number(const Json& v, const std::string& key) const {
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    return v.get<double>();
  }

  const Json& j_;
  std::string path_;
  mutable std::set<std::string> used_;
};

TestFunctionSpec parse_data(const Reader& r) {
  TestFunctionSpec d;
  d.family = family_from_string(r.string("family", to_string(d.family)));
  d.amplitude = r.number("amplitude", d.amplitude);
  d.width = r.number("width", d.width);
  d.sigma = r.number("sigma", d.sigma);
  d.s0 = r.number("s0", d.s0);
  d.seed = r.unsigned_int("seed", d.seed);
  d.center = r.number("center", d.center);
  d.band_limit = r.number("band_limit", d.band_limit);
  r.finish();
  return d;
}

DecompositionParams parse_params(const Reader& r) {
  DecompositionParams p;
  p.alpha = r.number("alpha", p.alpha);
  p.beta = r.number("beta", p.beta);
  p.epsilon0 = r.number("epsilon0", p.epsilon0);
  p.N = r.number("N", p.N);
  p.s0 = r.number("s0", p.s0);
  p.delta0 = r.number("delta0", p.delta0);
  p.delta = r.number("delta", p.delta);
  p.resolution_tol = r.number("resolution_tol", p.resolution_tol);
  r.finish();
  return p;
}

SolverConfig parse_solver(const Reader& r) {
  SolverConfig s;
  s.dt = r.number("dt", s.dt);
  s.t_end = r.number("t_end", s.t_end);
  s.mu = r.number("mu", s.mu);
  s.snapshot_stride = r.unsigned_int("snapshot_stride", s.snapshot_stride);
  s.dealias_fraction = r.number("dealias_fraction", s.dealias_fraction);
  s.boundary_margin = r.number("boundary_margin", s.boundary_margin);
  s.margin_tol = r.number("margin_tol", s.margin_tol);
  s.blowup_guard = r.number("blowup_guard", s.blowup_guard);
  s.max_dt = r.number("max_dt", s.max_dt);
  r.finish();
  return s;
}

SweepConfig parse_sweep(const Reader& r) {
  SweepConfig s;
  s.N_list = r.numbers("N_list");
  if (r.has("s0_list")) s.s0_list = r.numbers("s0_list");
  s.delta = r.number("delta", s.delta);
  s.t_end = r.number("t_end", s.t_end);
  s.t_min = r.number("t_min", s.t_min);
  s.workers = r.unsigned_int("workers", s.workers);
  r.finish();
  return s;
}

EvolveConfig parse_evolve(const Reader& r) {
  EvolveConfig e;
  e.initial = r.string("initial", e.initial);
  e.linear_part = r.boolean("linear_part", e.linear_part);
  e.eta = r.number("eta", e.eta);
  r.finish();
  return e;
}

CheckConfig parse_check(const Reader& r) {
  CheckConfig c;
  if (r.has("criteria"))
    for (double x : r.numbers("criteria")) {
      if (x != std::floor(x)) throw ConfigError(r.where("criteria") + ": expected integers");
      c.criteria.push_back(static_cast<int>(x));
    }
  r.finish();
  return c;
}

bool is_dyadic(double N) { return N >= 1.0 && std::exp2(std::round(std::log2(N))) == N; }

// ---------------------------------------------------------------- outputs

class OutputSet {
public:
  explicit OutputSet(std::filesystem::path root) : root_(std::move(root)) {}

  void write(const std::string& rel, const std::string& bytes) {
    write_file(root_ / rel, bytes);
    files_.push_back(rel);
  }

  // Registers a file some other writer already placed under the root.
  void adopt(const std::string& rel) { files_.push_back(rel); }

  void snapshot(const std::string& rel_base, const RadialField& f, double t,
                const std::string& role) {
    write_snapshot(root_ / rel_base, f, t, role);
    files_.push_back(rel_base + ".bin");
    files_.push_back(rel_base + ".json");
  }

  void spectrum(const std::string& rel_base, const SpectralField& F, double t,
                const std::string& role) {
    write_spectrum(root_ / rel_base, F, t, role);
    files_.push_back(rel_base + ".bin");
    files_.push_back(rel_base + ".json");
  }

  // Manifest over everything written so far; written last.
  void manifest(const ExperimentConfig& c, const Json& results) {
    auto sorted = files_;
    std::sort(sorted.begin(), sorted.end());
    Json m;
    m["scenario"] = to_string(c.scenario);
    m["config_hash"] = config_hash(c);
    m["calibration_constant"] = calibration_constant();
    Json t;
    t["resolution_tol"] = c.params.resolution_tol;
    t["boundary_margin"] = c.solver.boundary_margin;
    t["margin_tol"] = c.solver.margin_tol;
    t["blowup_guard"] = c.solver.blowup_guard;
    t["dealias_fraction"] = c.solver.dealias_fraction;
    t["max_dt"] = c.solver.max_dt;
    t["max_snapshot_gap"] = kMaxSnapshotGap;
    t["acceptance"] = acceptance::tolerances_json();
    m["tolerances"] = t;
    m["results"] = results;
    Json list = Json::array();
    for (const auto& rel : sorted) {
      const auto bytes = read_file(root_ / rel);
      Json e;
      e["path"] = rel;
      e["bytes"] = bytes.size();
      e["sha256"] = sha256_hex(bytes);
      list.push_back(e);
    }
    m["files"] = list;
    write_file(root_ / "manifest.json", dump_json(m) + "\n");
    files_.push_back("manifest.json");
  }

  const std::vector<std::string>& files() const { return files_; }

private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

std::vector<double> real_part(const RadialField& f) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) v[j] = f[j].real();
  return v;
}
std::vector<double> imag_part(const RadialField& f) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) v[j] = f[j].imag();
  return v;
}
std::vector<double> abs_part(const RadialField& f) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) v[j] = std::abs(f[j]);
  return v;
}
std::vector<double> radii(const RadialGrid& g) {
  std::vector<double> r(g.n);
  for (std::size_t j = 0; j < g.n; ++j) r[j] = g.r(j);
  return r;
}

void add_field(CsvTable& t, const std::string& name, const RadialField& f) {
  t.add(name + "_re", real_part(f));
  t.add(name + "_im", imag_part(f));
}

Json fit_json(const FitResult& f) {
  Json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["residual"] = f.residual;
  return j;
}

// Bounded pool: runs task(i) for i < count on at most `workers` threads.
// Exceptions are collected and the one from the lowest index rethrown.
void parallel_for_tasks(std::size_t count, std::size_t workers,
                        const std::function<void(std::size_t)>& task) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------- scenarios

Json run_kernels(const ExperimentConfig&, OutputSet& out) {
  constexpr std::size_t count = 500;
  std::vector<double> r(count), re(count), im(count), closed(count), wave(count);
  double worst_closed = 0.0, worst_wave = 0.0;
  const cplx i(0.0, 1.0);
  for (std::size_t k = 0; k < count; ++k) {
    r[k] = 0.01 + (50.0 - 0.01) * static_cast<double>(k) / static_cast<double>(count - 1);
    const auto J = kernel_J_quadrature(r[k]);
    re[k] = J.real();
    im[k] = J.imag();
    const double theta = 2.0 * kPi * r[k];
    const cplx formula = (std::exp(i * theta) - 1.0) / (i * theta);
    closed[k] = std::abs(J - formula);
    worst_closed = std::max(worst_closed, closed[k]);
    if (r[k] >= 2.2) {
      wave[k] = std::abs(J - kernel_K(r[k]) - std::exp(i * theta) / (i * theta));
      worst_wave = std::max(worst_wave, wave[k]);
    } else {
      wave[k] = std::nan("");
    }
  }
  CsvTable t;
  t.add("r", r);
  t.add("re_J", re);
  t.add("im_J", im);
  t.add("closed_form_residual", closed);
  t.add("outgoing_wave_residual", wave);
  out.write("series.csv", t.render());
  out.write("plots/kernel_residuals.svg",
            loglog_svg("kernel residuals", "r", "residual",
                       {{"|J - closed form|", r, closed, true},
                        {"|J - K - outgoing wave|", r, wave, true}}));
  Json rep;
  rep["samples"] = count;
  rep["max_closed_form_residual"] = worst_closed;
  rep["max_outgoing_wave_residual"] = worst_wave;
  rep["calibration_constant"] = calibration_constant();
  rep["calibration_expected"] = 1.0 / (2.0 * kPi);
  return rep;
}

Json run_decompose(const ExperimentConfig& c, OutputSet& out) {
  const auto grid = make_grid(c.r_max, c.n);
  const auto f = sample_field(c.data, grid);
  const auto split = wave_components(f, c.params);
  const auto mod = modified_components(f, c.params);
  const auto data = split_initial_data(f, c.params);

  CsvTable t;
  t.add("r", radii(grid));
  add_field(t, "f", f);
  add_field(t, "out", split.out);
  add_field(t, "in", split.in_);
  add_field(t, "plus", mod.out);
  add_field(t, "minus", mod.in_);
  out.write("series.csv", t.render());
  const auto r = radii(grid);
  out.write("plots/components.svg",
            loglog_svg("component profiles", "r", "|value|",
                       {{"|f|", r, abs_part(f)},
                        {"|f_out|", r, abs_part(split.out)},
                        {"|f_in|", r, abs_part(split.in_)}}));
  if (c.write_snapshots) {
    out.snapshot("snapshots/f", f, 0.0, "data");
    out.snapshot("snapshots/f_out", split.out, 0.0, "outgoing");
    out.snapshot("snapshots/f_in", split.in_, 0.0, "incoming");
    out.snapshot("snapshots/f_plus", mod.out, 0.0, "modified-outgoing");
    out.snapshot("snapshots/f_minus", mod.in_, 0.0, "modified-incoming");
    out.snapshot("snapshots/v0", data.v0, 0.0, "linear-data");
    out.snapshot("snapshots/w0", data.w0, 0.0, "perturbation-data");
    out.spectrum("snapshots/f_spectrum", radial_fourier(f), 0.0, "data");
  }
  const double norm_f = l2_norm(f);
  Json rep;
  rep["family"] = to_string(c.data.family);
  rep["l2_norm"] = norm_f;
  rep["reconstruction_error"] = split.reconstruction_error;
  rep["modified_reconstruction_error"] = mod.reconstruction_error;
  rep["outgoing_l2_ratio"] = l2_norm(split.out) / norm_f;
  rep["incoming_l2_ratio"] = l2_norm(split.in_) / norm_f;
  rep["spectral_tail"] = split.spectral_tail;
  rep["calibration_constant"] = calibration_constant();
  rep["N"] = data.N;
  rep["tail_H_s0"] = data.tail_H_s0;
  rep["w0_hdot1"] = data.w0_hdot1;
  return rep;
}

struct SweepRow {
  double s0 = 0.0, N = 0.0;
  std::array<double, 4> raw{};
  double late_l2_linf = 0.0, w0_hdot1 = 0.0, tail = 0.0, y_total = 0.0;
  double boundary_fraction = 0.0;  ///< worst relative mass in the boundary shell
};

Json run_linear_sweep(const ExperimentConfig& c, OutputSet& out) {
  const auto& sw = *c.sweep;
  const auto grid = make_grid(c.r_max, c.n);
  auto s0_list = sw.s0_list.empty() ? std::vector<double>{c.params.s0} : sw.s0_list;
  const auto times = linear_sample_times(sw.t_min, sw.t_end);

  std::vector<RadialField> data(s0_list.size());
  for (std::size_t a = 0; a < s0_list.size(); ++a) {
    auto spec = c.data;
    spec.s0 = s0_list[a];
    data[a] = sample_field(spec, grid);
  }

  std::vector<SweepRow> rows(s0_list.size() * sw.N_list.size());
  parallel_for_tasks(rows.size(), sw.workers, [&](std::size_t idx) {
    const std::size_t a = idx / sw.N_list.size();
    auto& row = rows[idx];
    row.s0 = s0_list[a];
    row.N = sw.N_list[idx % sw.N_list.size()];
    auto p = c.params;
    p.s0 = row.s0;
    const auto split = split_initial_data(data[a], p, row.N);
    row.w0_hdot1 = split.w0_hdot1;
    row.tail = split.tail_H_s0;
    TimeSeries grad6, l12, l6, linf;
    grad6.times = l12.times = l6.times = linf.times = times;
    for (auto* s : {&grad6, &l12, &l6, &linf}) s->values.resize(times.size());
    stream_linear_series(
        split.v0, times,
        [&](std::size_t k, double, const RadialField& v) {
          grad6.values[k] = lebesgue_norm(v, 6.0, true);
          l12.values[k] = lebesgue_norm(v, 12.0);
          l6.values[k] = lebesgue_norm(v, 6.0);
          linf.values[k] = lebesgue_norm(v, kInf);
          if (c.solver.boundary_margin > 0.0)
            row.boundary_fraction = std::max(
                row.boundary_fraction, boundary_mass_fraction(v, c.solver.boundary_margin));
        },
        c.solver.boundary_margin, c.solver.margin_tol);
    row.raw = {time_norm(grad6, 2.0, 0.0, sw.t_end), time_norm(l12, 8.0, 0.0, sw.t_end),
               time_norm(l6, kInf, 0.0, sw.t_end), time_norm(linf, 2.0, 0.0, sw.t_end)};
    row.late_l2_linf = time_norm(linf, 2.0, sw.delta, sw.t_end);
    row.y_total = y_norm_from_raw(row.raw, row.N, row.s0).total;
    if (c.write_snapshots) {
      std::ostringstream base;
      base << "snapshots/s0_" << a << "_N_" << static_cast<long long>(row.N);
      write_snapshot(std::filesystem::path(c.output_dir) / (base.str() + "_v0"), split.v0, 0.0,
                     "linear-data");
      write_snapshot(std::filesystem::path(c.output_dir) / (base.str() + "_w0"), split.w0, 0.0,
                     "perturbation-data");
    }
  });
  // Snapshot files were written by workers to unique paths; register them here.
  if (c.write_snapshots)
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
      std::ostringstream base;
      base << "snapshots/s0_" << idx / sw.N_list.size() << "_N_"
           << static_cast<long long>(rows[idx].N);
      for (const char* suffix : {"_v0.bin", "_v0.json", "_w0.bin", "_w0.json"})
        out.adopt(base.str() + suffix);
    }

  CsvTable t;
  auto column = [&](auto get) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(get(r));
    return v;
  };
  t.add("s0", column([](const SweepRow& r) { return r.s0; }));
  t.add("N", column([](const SweepRow& r) { return r.N; }));
  t.add("grad_L2L6", column([](const SweepRow& r) { return r.raw[0]; }));
  t.add("L8L12", column([](const SweepRow& r) { return r.raw[1]; }));
  t.add("LinfL6", column([](const SweepRow& r) { return r.raw[2]; }));
  t.add("L2Linf", column([](const SweepRow& r) { return r.raw[3]; }));
  t.add("L2Linf_late", column([](const SweepRow& r) { return r.late_l2_linf; }));
  t.add("w0_hdot1", column([](const SweepRow& r) { return r.w0_hdot1; }));
  t.add("tail_H_s0", column([](const SweepRow& r) { return r.tail; }));
  t.add("Y_total", column([](const SweepRow& r) { return r.y_total; }));
  t.add("boundary_fraction", column([](const SweepRow& r) { return r.boundary_fraction; }));
  out.write("series.csv", t.render());

  Json rep;
  rep["N_list"] = sw.N_list;
  rep["t_end"] = sw.t_end;
  rep["late_window_start"] = sw.delta;
  rep["time_samples"] = times.size();
  Json fits = Json::array();
  std::vector<PlotSeries> plot;
  for (std::size_t a = 0; a < s0_list.size(); ++a) {
    std::vector<double> N, grad, late, w0;
    for (std::size_t b = 0; b < sw.N_list.size(); ++b) {
      const auto& r = rows[a * sw.N_list.size() + b];
      N.push_back(r.N);
      grad.push_back(r.raw[0]);
      late.push_back(r.late_l2_linf);
      w0.push_back(r.w0_hdot1);
    }
    const double s0 = s0_list[a];
    Json f;
    f["s0"] = s0;
    f["grad_L2L6"] = fit_json(fit_exponent(N, grad));
    f["grad_L2L6_predicted"] = -(s0 - 5.0 / 6.0);
    f["L2Linf_late"] = fit_json(fit_exponent(N, late));
    f["L2Linf_late_predicted"] = -s0 + 0.5;
    f["w0_hdot1"] = fit_json(fit_exponent(N, w0));
    f["w0_hdot1_predicted"] = 1.0 - s0;
    fits.push_back(f);
    std::ostringstream tag;
    tag << " s0=" << format_number(s0);
    plot.push_back({"grad L2L6" + tag.str(), N, grad});
    plot.push_back({"L2Linf late" + tag.str(), N, late});
    plot.push_back({"w0 Hdot1" + tag.str(), N, w0});
  }
  rep["fits"] = fits;
  out.write("plots/sweep.svg", loglog_svg("linear estimate sweep", "N", "norm", plot));
  return rep;
}

struct EvolveProducts {
  EvolutionResult u;
  EvolutionResult w;
  double N = 1.0;
  Json report;
};

RadialField initial_state(const ExperimentConfig& c, const RadialField& f) {
  if (c.evolve.initial == "data") return f;
  return modified_components(f, c.params).out;
}

EvolveProducts evolve_all(const ExperimentConfig& c) {
  const auto grid = make_grid(c.r_max, c.n);
  const auto f = sample_field(c.data, grid);
  EvolveProducts e;
  e.u = evolve_nls(initial_state(c, f), c.solver);
  EvolutionResult v;
  if (c.evolve.linear_part) {
    const auto split = split_initial_data(f, c.params);
    e.N = split.N;
    v = evolve_linear_series(split.v0, e.u.times);
  } else {
    e.N = c.params.N;
    v.times = e.u.times;
    for (const auto& s : e.u.snapshots) v.snapshots.emplace_back(s.grid);
  }
  e.w = perturbation_series(e.u, v);
  return e;
}

Json run_evolve(const ExperimentConfig& c, OutputSet& out, Json& results) {
  auto e = evolve_all(c);
  const auto& u = e.u;
  const double T = u.times.back();
  const auto mor = morawetz_report(u);
  const auto& hdot = e.w.norm_densities.at("hdot1_w");
  const double sup_w = *std::max_element(hdot.begin(), hdot.end());

  CsvTable t;
  t.add("t", u.times);
  t.add("mass", u.mass_series);
  t.add("energy", u.energy_series);
  t.add("linf", u.norm_densities.at("linf"));
  t.add("hdot1_w", hdot);
  t.add("energy_increment", e.w.energy_series);
  t.add("morawetz_M", mor.M.values);
  t.add("morawetz_density", mor.density.values);
  out.write("series.csv", t.render());
  if (c.write_snapshots) {
    out.snapshot("snapshots/u_initial", u.snapshots.front(), 0.0, "u");
    out.snapshot("snapshots/u_final", u.snapshots.back(), T, "u");
    out.snapshot("snapshots/w_final", e.w.snapshots.back(), T, "w");
  }

  Json rep;
  rep["status"] = u.status;
  rep["t_final"] = T;
  rep["snapshots"] = u.times.size();
  rep["mass_drift"] = u.mass_drift;
  rep["energy_drift"] = u.energy_drift;
  rep["N"] = e.N;
  rep["sup_hdot1_w"] = sup_w;
  if (T > 0.0) {
    const auto x = x_norm(e.w, e.N, c.params.s0, 0.0, T);
    Json xj;
    xj["raw"] = x.raw;
    xj["exponent"] = x.exponent;
    xj["terms"] = x.terms;
    xj["total"] = x.total;
    rep["x_norm"] = xj;
    const auto split = split_by_s_norm(u, c.evolve.eta);
    Json sj;
    sj["eta"] = split.eta;
    sj["boundaries"] = split.boundaries;
    sj["accumulated"] = split.accumulated;
    rep["s_norm_split"] = sj;
    rep["s_norm"] = s_norm(u, 0.0, T);
  }
  Json mj;
  mj["M_initial"] = mor.M.values.front();
  mj["M_final"] = mor.M.values.back();
  mj["action"] = mor.action;
  mj["margin"] = mor.margin;
  mj["holder_ratio"] = mor.holder_ratio;
  rep["morawetz"] = mj;

  results["status"] = u.status;
  results["sup_hdot1_w"] = sup_w;
  if (rep.contains("x_norm")) results["x_norm_total"] = rep["x_norm"]["total"];
  results["mass_drift"] = u.mass_drift;
  results["energy_drift"] = u.energy_drift;
  results["morawetz_margin"] = mor.margin;
  return rep;
}

Json run_scatter(const ExperimentConfig& c, OutputSet& out, Json& results) {
  const auto grid = make_grid(c.r_max, c.n);
  const auto f = sample_field(c.data, grid);
  const auto u = evolve_nls(initial_state(c, f), c.solver);
  const auto sc = scattering_profile(u, c.solver.mu);
  const auto& conv = sc.convergence;
  const double T = conv.times.back();
  double worst_rise = 0.0;
  for (std::size_t k = 1; k < conv.values.size(); ++k)
    if (conv.times[k - 1] >= 0.5 * T) worst_rise = std::max(worst_rise, conv.values[k] - conv.values[k - 1]);

  CsvTable t;
  t.add("t", conv.times);
  t.add("convergence", conv.values);
  t.add("mass", u.mass_series);
  out.write("series.csv", t.render());
  if (c.write_snapshots) out.snapshot("snapshots/u_plus", sc.u_plus, 0.0, "scattering-profile");

  Json rep;
  rep["status"] = u.status;
  rep["t_final"] = T;
  rep["convergence_final"] = conv.values.back();
  rep["max_rise_second_half"] = worst_rise;
  rep["horizon_warning"] = sc.horizon_warning;
  rep["mass_drift"] = u.mass_drift;
  results["convergence_final"] = conv.values.back();
  results["max_rise_second_half"] = worst_rise;
  return rep;
}

Json run_check(const ExperimentConfig& c, OutputSet& out, bool& all_pass) {
  auto ids = c.check.criteria.empty() ? acceptance::all_criteria() : c.check.criteria;
  std::vector<double> id_col, pass_col;
  Json rows = Json::array();
  all_pass = true;
  for (int id : ids) {
    const auto o = acceptance::run_criterion(id, std::filesystem::path(c.output_dir) / "work");
    Json r;
    r["id"] = o.id;
    r["name"] = o.name;
    r["pass"] = o.pass;
    r["summary"] = o.summary;
    r["data"] = o.data;
    rows.push_back(r);
    id_col.push_back(id);
    pass_col.push_back(o.pass ? 1.0 : 0.0);
    all_pass = all_pass && o.pass;
  }
  CsvTable t;
  t.add("criterion", id_col);
  t.add("pass", pass_col);
  out.write("series.csv", t.render());
  Json rep;
  rep["criteria"] = rows;
  rep["all_pass"] = all_pass;
  return rep;
}

} // namespace

std::string to_string(Scenario s) { return scenario_names().at(s); }

Scenario scenario_from_string(const std::string& name) {
  for (const auto& [s, n] : scenario_names())
    if (n == name) return s;
  throw ConfigError("scenario: unknown scenario '" + name + "'");
}

void ExperimentConfig::validate() const {
  const bool needs_grid = scenario != Scenario::kernels && scenario != Scenario::check;
  if (needs_grid) {
    if (!(r_max > 0.0)) throw ConfigError("grid.r_max: must be positive");
    if (n < 16) throw ConfigError("grid.n: must be at least 16");
  }
  if (output_dir.empty()) throw ConfigError("output_dir: must not be empty");
  try {
    data.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("data: ") + e.what());
  }
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  solver.validate();
  if (evolve.initial != "f_plus" && evolve.initial != "data")
    throw ConfigError("evolve.initial: expected \"f_plus\" or \"data\"");
  if (!(evolve.eta > 0.0)) throw ConfigError("evolve.eta: must be positive");
  for (int id : check.criteria)
    if (id < 1 || id > 12) throw ConfigError("check.criteria: ids lie in 1..12");
  if (scenario == Scenario::linear_sweep) {
    if (!sweep) throw ConfigError("sweep: missing required block for linear-sweep");
    if (sweep->N_list.size() < 3)
      throw ConfigError("sweep.N_list: linear-sweep needs at least 3 entries");
    for (double N : sweep->N_list)
      if (!is_dyadic(N)) throw ConfigError("sweep.N_list: entries must be powers of two");
    for (double s0 : sweep->s0_list)
      if (!(s0 > 5.0 / 6.0 && s0 < 1.0)) throw ConfigError("sweep.s0_list: entries lie in (5/6, 1)");
    if (!(sweep->t_end > 0.0)) throw ConfigError("sweep.t_end: must be positive");
    if (!(sweep->delta > 0.0 && sweep->delta < sweep->t_end))
      throw ConfigError("sweep.delta: must lie in (0, t_end)");
    if (!(sweep->t_min > 0.0 && sweep->t_min < 0.125))
      throw ConfigError("sweep.t_min: must lie in (0, 1/8)");
    if (sweep->workers < 1) throw ConfigError("sweep.workers: must be at least 1");
  }
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["scenario"] = to_string(c.scenario);
  j["grid"] = {{"r_max", c.r_max}, {"n", c.n}};
  const auto& d = c.data;
  j["data"] = {{"family", to_string(d.family)}, {"amplitude", d.amplitude}, {"width", d.width},
               {"sigma", d.sigma}, {"s0", d.s0}, {"seed", d.seed}, {"center", d.center},
               {"band_limit", d.band_limit}};
  const auto& p = c.params;
  j["params"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"epsilon0", p.epsilon0}, {"N", p.N},
                 {"s0", p.s0}, {"delta0", p.delta0}, {"delta", p.delta},
                 {"resolution_tol", p.resolution_tol}};
  const auto& s = c.solver;
  j["solver"] = {{"dt", s.dt}, {"t_end", s.t_end}, {"mu", s.mu},
                 {"snapshot_stride", s.snapshot_stride}, {"dealias_fraction", s.dealias_fraction},
                 {"boundary_margin", s.boundary_margin}, {"margin_tol", s.margin_tol},
                 {"blowup_guard", s.blowup_guard}, {"max_dt", s.max_dt}};
  if (c.sweep) {
    const auto& w = *c.sweep;
    j["sweep"] = {{"N_list", w.N_list}, {"s0_list", w.s0_list}, {"delta", w.delta},
                  {"t_end", w.t_end}, {"t_min", w.t_min}, {"workers", w.workers}};
  }
  j["evolve"] = {{"initial", c.evolve.initial}, {"linear_part", c.evolve.linear_part},
                 {"eta", c.evolve.eta}};
  j["check"] = {{"criteria", c.check.criteria}};
  j["write_snapshots"] = c.write_snapshots;
  j["output_dir"] = c.output_dir;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  const Reader root(j, "");
  ExperimentConfig c;
  c.scenario = scenario_from_string(root.as_string("scenario"));
  const bool needs_grid = c.scenario != Scenario::kernels && c.scenario != Scenario::check;
  if (needs_grid || root.has("grid")) {
    const auto g = root.child("grid");
    c.r_max = g.number("r_max");
    const double n = g.number("n");
    if (!(n >= 0.0) || n != std::floor(n)) throw ConfigError("grid.n: expected an integer");
    c.n = static_cast<std::size_t>(n);
    g.finish();
  }
  if (root.has("data")) c.data = parse_data(root.child("data"));
  if (root.has("params")) c.params = parse_params(root.child("params"));
  if (root.has("solver")) c.solver = parse_solver(root.child("solver"));
  if (root.has("sweep")) c.sweep = parse_sweep(root.child("sweep"));
  if (root.has("evolve")) c.evolve = parse_evolve(root.child("evolve"));
  if (root.has("check")) c.check = parse_check(root.child("check"));
  c.write_snapshots = root.boolean("write_snapshots", c.write_snapshots);
  c.output_dir = root.string("output_dir", c.output_dir);
  root.finish();
  c.validate();
  return c;
}

Json content_json(const ExperimentConfig& c) {
  auto j = to_json(c);
  j.erase("output_dir");
  return j;
}

std::string config_hash(const ExperimentConfig& c) { return sha256_hex(dump_json(content_json(c))); }

ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

Json error_json(const std::string& kind, const std::string& message) {
  Json e;
  e["error"] = kind;
  e["message"] = message;
  const auto colon = message.find(':');
  if (kind == "config" && colon != std::string::npos && message.find(' ') > colon)
    e["field"] = message.substr(0, colon);
  return e;
}

std::vector<double> linear_sample_times(double t_min, double t_end) {
  if (!(t_min > 0.0 && t_end > 0.0)) throw ConfigError("sample times need t_min, t_end > 0");
  std::vector<double> t{0.0};
  for (int k = 0;; ++k) {
    const double s = t_min * std::exp2(0.25 * k);
    if (s >= 0.125 || s >= t_end) break;
    t.push_back(s);
  }
  const auto steps = static_cast<long long>(std::ceil(8.0 * t_end - 1e-9));
  for (long long k = 1; k <= steps; ++k) t.push_back(std::min(t_end, static_cast<double>(k) / 8.0));
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

RunOutcome run_experiment(const ExperimentConfig& c) {
  RunOutcome r;
  OutputSet out(c.output_dir);
  auto fail = [&](int code, Json err) {
    r.exit_code = code;
    r.error = std::move(err);
    try {
      write_file(std::filesystem::path(c.output_dir) / "error.json", dump_json(r.error) + "\n");
    } catch (const std::exception&) {
    }
    return r;
  };
  try {
    c.validate();
  } catch (const Error& e) {
    return fail(kExitConfig, error_json("config", e.what()));
  }
  try {
    Json results;
    bool all_pass = true;
    switch (c.scenario) {
      case Scenario::kernels: r.report = run_kernels(c, out); break;
      case Scenario::decompose: r.report = run_decompose(c, out); break;
      case Scenario::linear_sweep: r.report = run_linear_sweep(c, out); break;
      case Scenario::evolve: r.report = run_evolve(c, out, results); break;
      case Scenario::scatter: r.report = run_scatter(c, out, results); break;
      case Scenario::check: r.report = run_check(c, out, all_pass); break;
    }
    Json full;
    full["scenario"] = to_string(c.scenario);
    full["config"] = content_json(c);
    full["report"] = r.report;
    out.write("report.json", dump_json(full) + "\n");
    out.manifest(c, results);
    r.files = out.files();
    if (!all_pass) r.exit_code = kExitRuntime;
    return r;
  } catch (const InfeasibleError& e) {
    auto err = error_json("infeasible", e.what());
    err["floor"] = e.floor();
    return fail(kExitInfeasible, err);
  } catch (const ConfigError& e) {
    return fail(kExitConfig, error_json("config", e.what()));
  } catch (const PreconditionError& e) {
    return fail(kExitInfeasible, error_json("precondition", e.what()));
  } catch (const ResolutionError& e) {
    return fail(kExitRuntime, error_json("resolution", e.what()));
  } catch (const std::exception& e) {
    return fail(kExitRuntime, error_json("runtime", e.what()));
  }
}

} // namespace radnls
