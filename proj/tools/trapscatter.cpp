// Command-line sweeps over the scattering and heating models.
//
// Exit codes: 0 success, 2 invalid arguments, 3 numerical nonconvergence.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trapscatter/trapscatter.hpp"

namespace ts = trapscatter;
using ts::sweep::Dataset;
using ts::sweep::format_number;
using ts::sweep::parse_number;
using ts::sweep::parse_range;
using ts::sweep::Range;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string case_name = "free";
  std::string trap_ratio = "1";
  std::string inv_ratio;
  std::string detuning = "0";
  double eta = 0.0;
  double drive = 0.01;
  std::string time = "13";
  int fock_max = 2000;
  double tol = 1e-10;
  std::string output;
  std::string format = "csv";
  unsigned threads = 0;
  std::string mode = "A";
  std::string model = "exact";
  std::string basis = "fock";
  std::string k_range = "-6:6:241";
  double fit_min = 30.0;
  int figure = 0;
};

struct InvalidArgs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned worker_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

ts::ExcitedPotential potential_for(const std::string& name, double trap_ratio, const std::string& inv) {
  if (name == "equal") return ts::ExcitedPotential::equal_trap();
  if (name == "free") return ts::ExcitedPotential::free();
  if (name == "anti") {
    const double v = inv.empty() ? trap_ratio : parse_number(inv);
    return ts::ExcitedPotential::anti_trapped(v);
  }
  throw InvalidArgs("--case must be equal, free or anti, got '" + name + "'");
}

ts::Params make_params(const Options& o, double trap_ratio, double detuning) {
  ts::Params p;
  p.trap_ratio = trap_ratio;
  p.detuning = detuning;
  p.drive = o.drive;
  p.eta = o.eta;
  p.potential = potential_for(o.case_name, trap_ratio, o.inv_ratio);
  return p;
}

double scalar(const std::string& flag, const std::string& text) {
  const Range r = parse_range(text);
  if (r.count != 1) throw InvalidArgs(flag + " takes a single value here, got '" + text + "'");
  return r.start;
}

void report_warnings(const ts::Params& p) {
  for (const auto& w : ts::validate(p)) {
    std::cerr << "warning: " << w.field << "=" << w.value << ": " << w.message << "\n";
  }
}

bool anti_is_fock(const ts::Params& p) {
  return std::abs(p.potential.inv_ratio - p.trap_ratio) <= 1e-9 * p.trap_ratio;
}

ts::RateResult rates_for(const Options& o, const ts::Params& p, double t) {
  switch (p.potential.kind) {
    case ts::PotentialKind::EqualTrap: return ts::equal_trap::rates(p);
    case ts::PotentialKind::FreeExcited: {
      ts::free_excited::Options fo;
      fo.include_recoil = p.eta > 0.0;
      fo.rel_tol = o.tol;
      return ts::free_excited::rates(p, fo);
    }
    case ts::PotentialKind::AntiTrapped:
      if (anti_is_fock(p)) return ts::anti_trapped::steady_rates(p, t);
      return ts::propagator::rates(p, t);
  }
  return {};
}

void add_common_params(Dataset& d, const Options& o) {
  d.params.emplace_back("drive", format_number(o.drive));
  d.params.emplace_back("eta", format_number(o.eta));
  d.params.emplace_back("time", o.time);
  d.params.emplace_back("tol", format_number(o.tol));
}

std::string base_rerun(const std::string& command, const Options& o) {
  std::ostringstream os;
  os << "trapscatter " << command << " --drive " << format_number(o.drive) << " --eta " << format_number(o.eta)
     << " --time " << o.time << " --tol " << format_number(o.tol);
  return os.str();
}

// ---------------------------------------------------------------- spectrum

Dataset spectrum_cmd(const Options& o) {
  const double w = scalar("--trap-ratio", o.trap_ratio);
  const double t = parse_number(o.time);
  const auto detunings = parse_range(o.detuning).values();
  report_warnings(make_params(o, w, detunings.front()));
  Dataset d;
  d.command = "spectrum";
  d.params.emplace_back("case", o.case_name);
  d.params.emplace_back("trap_ratio", format_number(w));
  if (o.case_name == "anti") d.params.emplace_back("inv_ratio", format_number(make_params(o, w, 0).potential.inv_ratio));
  add_common_params(d, o);
  d.columns = {"detuning", "total", "elastic"};
  const auto results = ts::sweep::parallel_map<ts::RateResult>(
      detunings.size(), worker_count(o), [&](std::size_t i) { return rates_for(o, make_params(o, w, detunings[i]), t); });
  for (std::size_t i = 0; i < detunings.size(); ++i) d.rows.push_back({detunings[i], results[i].total, results[i].elastic});
  d.rerun = base_rerun("spectrum", o) + " --case " + o.case_name + " --trap-ratio " + format_number(w) +
            (o.inv_ratio.empty() ? "" : " --inv-ratio " + o.inv_ratio) + " --detuning " +
            parse_range(o.detuning).to_string();
  return d;
}

// ----------------------------------------------------------------- scaling

void add_slope_note(Dataset& d, const std::string& name, const std::vector<double>& xs, const std::vector<double>& ys,
                    double x_min) {
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= x_min && ys[i] > 0.0) {
      fx.push_back(xs[i]);
      fy.push_back(ys[i]);
    }
  }
  if (fx.size() < 4) return;
  const auto fit = ts::numerics::fit_loglog_slope(fx, fy);
  d.notes.emplace_back("slope_" + name, format_number(fit.slope));
  d.notes.emplace_back("slope_" + name + "_stderr", format_number(fit.slope_stderr));
}

Dataset scaling_cmd(const Options& o) {
  const auto ratios = parse_range(o.trap_ratio).values();
  const double delta = scalar("--detuning", o.detuning);
  const double t = parse_number(o.time);
  Dataset d;
  d.command = "scaling";
  d.params.emplace_back("detuning", format_number(delta));
  d.params.emplace_back("fit_min", format_number(o.fit_min));
  add_common_params(d, o);
  d.columns = {"trap_ratio", "total_free", "elastic_free", "total_anti", "elastic_anti"};
  Options free_o = o;
  free_o.case_name = "free";
  Options anti_o = o;
  anti_o.case_name = "anti";
  anti_o.inv_ratio.clear();
  const auto rows = ts::sweep::parallel_map<std::vector<double>>(ratios.size(), worker_count(o), [&](std::size_t i) {
    const double w = ratios[i];
    const auto f = rates_for(free_o, make_params(free_o, w, delta), t);
    const auto a = rates_for(anti_o, make_params(anti_o, w, delta), t);
    return std::vector<double>{w, f.total, f.elastic, a.total, a.elastic};
  });
  d.rows = rows;
  std::vector<std::vector<double>> cols(5);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < 5; ++c) cols[c].push_back(r[c]);
  for (std::size_t c = 1; c < 5; ++c) add_slope_note(d, d.columns[c], cols[0], cols[c], o.fit_min);
  d.rerun = base_rerun("scaling", o) + " --trap-ratio " + parse_range(o.trap_ratio).to_string() + " --detuning " +
            format_number(delta) + " --fit-min " + format_number(o.fit_min);
  return d;
}

// ----------------------------------------------------------------- heating

ts::anti_trapped::HeatingModel heating_model(const Options& o) {
  if (o.model == "exact") return ts::anti_trapped::HeatingModel::Exact;
  if (o.model == "gamma") return ts::anti_trapped::HeatingModel::GammaIntegral;
  throw InvalidArgs("--model must be exact or gamma, got '" + o.model + "'");
}

Dataset heating_cmd(const Options& o) {
  const auto model = heating_model(o);
  Dataset d;
  d.command = "heating";
  d.params.emplace_back("mode", o.mode);
  d.params.emplace_back("model", o.model);
  add_common_params(d, o);
  if (o.mode == "A") {
    const auto ratios = parse_range(o.trap_ratio).values();
    d.columns = {"trap_ratio", "free", "anti", "free_estimate", "anti_estimate"};
    d.rows = ts::sweep::parallel_map<std::vector<double>>(ratios.size(), worker_count(o), [&](std::size_t i) {
      const double w = ratios[i];
      ts::Params pf = make_params(o, w, 0.0);
      pf.potential = ts::ExcitedPotential::free();
      ts::Params pa = pf;
      pa.potential = ts::ExcitedPotential::anti_trapped(w);
      const double anti = w < 0.5 ? ts::anti_trapped::heating_rate_at(pa, ts::anti_trapped::kInfinity, model) : kNaN;
      return std::vector<double>{w, ts::free_excited::heating_rate(pf), anti, ts::free_excited::heating_estimate(pf),
                                 ts::anti_trapped::heating_estimate(pa)};
    });
    d.rerun = base_rerun("heating", o) + " --mode A --model " + o.model + " --trap-ratio " +
              parse_range(o.trap_ratio).to_string();
    return d;
  }
  if (o.mode != "B") throw InvalidArgs("--mode must be A or B, got '" + o.mode + "'");
  const double w = scalar("--trap-ratio", o.trap_ratio);
  const auto times = parse_range(o.time).values();
  ts::Params p = make_params(o, w, scalar("--detuning", o.detuning));
  p.potential = ts::ExcitedPotential::anti_trapped(w);
  if (w < 0.5) std::cerr << "warning: trap_ratio < 0.5 has no exponential growth; reporting the plateau\n";
  d.params.emplace_back("trap_ratio", format_number(w));
  d.params.emplace_back("detuning", format_number(p.detuning));
  d.columns = {"time", "rate"};
  const auto rates = ts::sweep::parallel_map<double>(times.size(), worker_count(o), [&](std::size_t i) {
    return ts::anti_trapped::heating_rate_at(p, times[i], model);
  });
  for (std::size_t i = 0; i < times.size(); ++i) d.rows.push_back({times[i], rates[i]});
  if (w < 0.5) {
    d.notes.emplace_back("plateau", format_number(ts::anti_trapped::heating_rate_at(p, ts::anti_trapped::kInfinity, model)));
  } else {
    std::vector<double> xs, ys;
    const double start = std::max(5.0, 2.0 / w);
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] >= start - 1e-12) {
        xs.push_back(times[i]);
        ys.push_back(rates[i]);
      }
    }
    if (xs.size() >= 2) {
      d.notes.emplace_back("fit_start", format_number(start));
      d.notes.emplace_back("fit_stop", format_number(xs.back()));
      d.notes.emplace_back("fitted_exponent", format_number(ts::numerics::fit_semilog_slope(xs, ys).slope));
    }
  }
  d.rerun = "trapscatter heating --mode B --model " + o.model + " --drive " + format_number(o.drive) + " --eta " +
            format_number(o.eta) + " --tol " + format_number(o.tol) + " --trap-ratio " + format_number(w) +
            " --detuning " + format_number(p.detuning) + " --time " + parse_range(o.time).to_string();
  return d;
}

// -------------------------------------------------------------- population

std::vector<std::vector<double>> fock_population_rows(const ts::Params& p, double t, int fock_max) {
  const auto c = ts::anti_trapped::amplitudes_t(p, t, fock_max);
  std::vector<std::vector<double>> rows;
  for (int n = 0; 2 * n <= fock_max; ++n) {
    const double analytic = n >= 20 ? ts::anti_trapped::tail_population(p, n) : kNaN;
    rows.push_back({static_cast<double>(n), std::norm(c.amps[static_cast<std::size_t>(2 * n)]), analytic});
  }
  return rows;
}

double momentum_density(const Options& o, const ts::Params& p, double k, double t) {
  switch (p.potential.kind) {
    case ts::PotentialKind::EqualTrap: {
      const auto c = ts::equal_trap::steady_amplitudes(p);
      const auto h = ts::hermite_functions(static_cast<int>(c.size()) - 1, k);
      ts::cplx psi{};
      for (std::size_t n = 0; n < c.size(); ++n) {
        psi += std::pow(ts::cplx{0.0, -1.0}, static_cast<int>(n)) * h[n] * c.amps[n];
      }
      return std::norm(psi);
    }
    case ts::PotentialKind::FreeExcited:
      return std::norm(ts::free_excited::steady_amplitude(p, k, std::sqrt(2.0) * (o.eta > 0 ? p.eta : 0.0)));
    case ts::PotentialKind::AntiTrapped: return std::norm(ts::propagator::excited_amplitude(p, k, t));
  }
  return kNaN;
}

Dataset population_cmd(const Options& o) {
  const double w = scalar("--trap-ratio", o.trap_ratio);
  const double delta = scalar("--detuning", o.detuning);
  const double t = parse_number(o.time);
  const ts::Params p = make_params(o, w, delta);
  report_warnings(p);
  Dataset d;
  d.command = "population";
  d.params.emplace_back("case", o.case_name);
  d.params.emplace_back("basis", o.basis);
  d.params.emplace_back("trap_ratio", format_number(w));
  d.params.emplace_back("detuning", format_number(delta));
  if (o.case_name == "anti") d.params.emplace_back("inv_ratio", format_number(p.potential.inv_ratio));
  add_common_params(d, o);
  std::string rerun = base_rerun("population", o) + " --case " + o.case_name + " --basis " + o.basis +
                      " --trap-ratio " + format_number(w) + " --detuning " + format_number(delta) +
                      (o.inv_ratio.empty() ? "" : " --inv-ratio " + o.inv_ratio);
  if (o.basis == "fock") {
    if (o.case_name != "anti") throw InvalidArgs("--basis fock is available for --case anti");
    d.params.emplace_back("fock_max", std::to_string(o.fock_max));
    d.columns = {"n", "population", "analytic"};
    d.rows = fock_population_rows(p, t, o.fock_max);
    d.rerun = rerun + " --fock-max " + std::to_string(o.fock_max);
    return d;
  }
  if (o.basis != "k") throw InvalidArgs("--basis must be fock or k, got '" + o.basis + "'");
  const auto ks = parse_range(o.k_range).values();
  d.params.emplace_back("k_range", parse_range(o.k_range).to_string());
  d.columns = {"k", "density"};
  const auto dens = ts::sweep::parallel_map<double>(ks.size(), worker_count(o),
                                                    [&](std::size_t i) { return momentum_density(o, p, ks[i], t); });
  for (std::size_t i = 0; i < ks.size(); ++i) d.rows.push_back({ks[i], dens[i]});
  d.rerun = rerun + " --k-range " + parse_range(o.k_range).to_string();
  return d;
}

// ----------------------------------------------------------------- figures

Dataset figure_cmd(const Options& o) {
  Dataset d;
  d.command = "figure " + std::to_string(o.figure);
  d.rerun = "trapscatter figure " + std::to_string(o.figure) + " --drive " + format_number(o.drive) + " --tol " +
            format_number(o.tol) + " --time " + o.time;
  d.params.emplace_back("figure", std::to_string(o.figure));
  add_common_params(d, o);
  const unsigned threads = worker_count(o);
  const double t = parse_number(o.time);
  Options base = o;
  base.eta = 0.0;

  auto stack = [&](const std::vector<double>& keys, const std::function<Dataset(const Options&, double)>& make) {
    for (double key : keys) {
      const Dataset part = make(base, key);
      if (d.columns.empty()) d.columns = part.columns;
      for (const auto& r : part.rows) d.rows.push_back(r);
    }
  };

  switch (o.figure) {
    case 2: {
      const std::vector<double> ratios{0.1, 0.5, 1.0, 2.0, 5.0};
      d.params.emplace_back("case", "free");
      d.params.emplace_back("trap_ratios", "0.1,0.5,1,2,5");
      stack(ratios, [&](const Options& b, double w) {
        Options x = b;
        x.case_name = "free";
        x.trap_ratio = format_number(w);
        x.detuning = "-4:4:161";
        Dataset part = spectrum_cmd(x);
        for (auto& r : part.rows) r.insert(r.begin(), w);
        part.columns.insert(part.columns.begin(), "trap_ratio");
        return part;
      });
      return d;
    }
    case 4: {
      Options x = base;
      x.trap_ratio = "0.01:300:61:log";
      x.detuning = "0";
      Dataset part = scaling_cmd(x);
      part.command = d.command;
      part.params.insert(part.params.begin(), {"figure", "4"});
      part.params.emplace_back("trap_ratio", x.trap_ratio);
      part.rerun = d.rerun;
      return part;
    }
    case 5: {
      const std::vector<double> ratios{0.3, 0.5, 1.0};
      d.params.emplace_back("case", "anti");
      d.params.emplace_back("trap_ratios", "0.3,0.5,1");
      d.params.emplace_back("population_time", "inf");
      d.params.emplace_back("fock_max", std::to_string(o.fock_max));
      d.columns = {"trap_ratio", "n", "population", "analytic"};
      const auto parts = ts::sweep::parallel_map<std::vector<std::vector<double>>>(
          ratios.size(), threads, [&](std::size_t i) {
            ts::Params p;
            p.trap_ratio = ratios[i];
            p.drive = o.drive;
            p.potential = ts::ExcitedPotential::anti_trapped(ratios[i]);
            return fock_population_rows(p, ts::anti_trapped::kInfinity, o.fock_max);
          });
      for (std::size_t i = 0; i < ratios.size(); ++i)
        for (auto r : parts[i]) {
          r.insert(r.begin(), ratios[i]);
          d.rows.push_back(r);
        }
      d.rerun += " --fock-max " + std::to_string(o.fock_max);
      return d;
    }
    case 6: {
      Options x = base;
      x.mode = "A";
      x.trap_ratio = "0.01:20:41:log";
      Dataset part = heating_cmd(x);
      part.command = d.command;
      part.params.insert(part.params.begin(), {"figure", "6"});
      part.params.emplace_back("trap_ratio", x.trap_ratio);
      part.rerun = d.rerun;
      return part;
    }
    case 7: {
      d.params.emplace_back("trap_ratios", "0.6,0.8");
      for (double w : {0.6, 0.8}) {
        Options x = base;
        x.mode = "B";
        x.trap_ratio = format_number(w);
        x.time = "0.5:12:47";
        x.detuning = "0";
        Dataset part = heating_cmd(x);
        if (d.columns.empty()) {
          d.columns = part.columns;
          d.columns.insert(d.columns.begin(), "trap_ratio");
        }
        for (auto r : part.rows) {
          r.insert(r.begin(), w);
          d.rows.push_back(r);
        }
        for (const auto& [k, v] : part.notes) d.notes.emplace_back(k + "@" + format_number(w), v);
      }
      return d;
    }
    case 8: {
      d.params.emplace_back("trap_ratio", "2");
      d.params.emplace_back("case_codes", "0=equal,1=free,2=anti(inv_ratio=1)");
      d.params.emplace_back("k_range", "-4:4:161");
      d.columns = {"case", "detuning", "k", "density"};
      const std::vector<std::string> cases{"equal", "free", "anti"};
      for (double delta : {0.0, 1.0}) {
        for (std::size_t c = 0; c < cases.size(); ++c) {
          Options x = base;
          x.case_name = cases[c];
          x.inv_ratio = cases[c] == "anti" ? "1" : "";
          x.trap_ratio = "2";
          x.detuning = format_number(delta);
          x.basis = "k";
          x.k_range = "-4:4:161";
          x.time = format_number(t);
          const Dataset part = population_cmd(x);
          for (const auto& r : part.rows) d.rows.push_back({static_cast<double>(c), delta, r[0], r[1]});
        }
      }
      return d;
    }
    case 9: {
      d.params.emplace_back("case", "anti");
      d.params.emplace_back("trap_ratio", "2");
      d.params.emplace_back("inv_ratios", "0.01,1,2,3,4");
      stack({0.01, 1.0, 2.0, 3.0, 4.0}, [&](const Options& b, double v) {
        Options x = b;
        x.case_name = "anti";
        x.trap_ratio = "2";
        x.inv_ratio = format_number(v);
        x.detuning = "-4:4:161";
        Dataset part = spectrum_cmd(x);
        for (auto& r : part.rows) r.insert(r.begin(), v);
        part.columns.insert(part.columns.begin(), "inv_ratio");
        return part;
      });
      return d;
    }
    default: throw InvalidArgs("figure must be one of 2, 4, 5, 6, 7, 8, 9");
  }
}

// ------------------------------------------------------------------ output

void write_json(std::ostream& os, const Dataset& d) {
  nlohmann::ordered_json j;
  j["version"] = ts::kVersion;
  j["command"] = d.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.params) params[k] = v;
  j["params"] = params;
  j["rerun"] = d.rerun;
  j["columns"] = d.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : d.rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (double x : r) {
      if (std::isfinite(x)) {
        row.push_back(x);
      } else {
        row.push_back(nullptr);
      }
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.notes) notes[k] = v;
  j["results"] = notes;
  os << j.dump(2) << "\n";
}

void emit(const Options& o, const Dataset& d) {
  if (o.format != "csv" && o.format != "json") throw InvalidArgs("--format must be csv or json");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw InvalidArgs("cannot open output file '" + o.output + "'");
    os = &file;
  }
  if (o.format == "csv") {
    ts::sweep::write_csv(*os, d, ts::kVersion);
  } else {
    write_json(*os, d);
  }
}

void add_physics_flags(CLI::App* app, Options& o) {
  app->add_option("--case", o.case_name, "Excited-state potential: equal, free or anti");
  app->add_option("--trap-ratio", o.trap_ratio, "omega_T/Gamma, a value or start:stop:count[:log]");
  app->add_option("--inv-ratio", o.inv_ratio, "Omega_inv/Gamma for --case anti (default: trap ratio)");
  app->add_option("--detuning", o.detuning, "Delta/Gamma, a value or range");
  app->add_option("--eta", o.eta, "Lamb-Dicke parameter");
  app->add_option("--drive", o.drive, "Omega_drive/Gamma");
  app->add_option("--time", o.time, "Evaluation time Gamma t ('inf' allowed; a range for heating mode B)");
  app->add_option("--fock-max", o.fock_max, "Highest Fock index for population output");
  app->add_option("--tol", o.tol, "Relative quadrature tolerance");
  app->add_option("--output", o.output, "Output file (default: standard output)");
  app->add_option("--format", o.format, "csv or json");
  app->add_option("--threads", o.threads, "Worker threads (default: hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-resonant scattering and heating of a trapped two-level atom"};
  app.set_version_flag("--version", std::string(ts::kVersion));
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "Rates across detuning");
  add_physics_flags(spectrum, o);
  auto* scaling = app.add_subcommand("scaling", "Free and anti-trapped rates across trap ratio");
  add_physics_flags(scaling, o);
  scaling->add_option("--fit-min", o.fit_min, "Smallest trap ratio entering the slope fits");
  auto* heating = app.add_subcommand("heating", "Normalized heating rates");
  add_physics_flags(heating, o);
  heating->add_option("--mode", o.mode, "A: sweep trap ratio; B: sweep time at fixed trap ratio");
  heating->add_option("--model", o.model, "exact or gamma (anti-trapped heating model)");
  auto* population = app.add_subcommand("population", "Fock populations or momentum distributions");
  add_physics_flags(population, o);
  population->add_option("--basis", o.basis, "fock (anti only) or k");
  population->add_option("--k-range", o.k_range, "Wavenumber grid for --basis k");
  auto* figure = app.add_subcommand("figure", "Preset datasets for the figures");
  figure->add_option("id", o.figure, "Figure number: 2, 4, 5, 6, 7, 8 or 9")->required();
  add_physics_flags(figure, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    Dataset d;
    if (*spectrum) {
      d = spectrum_cmd(o);
    } else if (*scaling) {
      d = scaling_cmd(o);
    } else if (*heating) {
      d = heating_cmd(o);
    } else if (*population) {
      if (population->count("--case") == 0) o.case_name = "anti";
      d = population_cmd(o);
    } else {
      d = figure_cmd(o);
    }
    emit(o, d);
  } catch (const InvalidArgs& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ts::QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ts::TruncationError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
