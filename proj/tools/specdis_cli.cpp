// specdis: command-line driver for the ancilla+target chain simulator.
//
//   specdis simulate       <n_j(t)>, parity or occupation heatmap of one chain
//   specdis phase-diagram  decay/trapped verdict over a (mu/B, C/B) grid
//   specdis block          |E_0> occupation for the block (multi-level) model
//   specdis lindblad       two-level spontaneous decay under the master equation
//   specdis example N      preset runs 1..4
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "specdis/specdis.hpp"

namespace {

using namespace specdis;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// JSON config files: {"<subcommand>": {"<long option>": value, ...}, ...}.
/// Values given on the command line take precedence.
class ConfigJson : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    nlohmann::json j;
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames()[0];
      if (opt->get_type_size() != 0) {
        if (opt->count() == 1) {
          j[name] = opt->results().at(0);
        } else if (opt->count() > 1) {
          j[name] = opt->results();
        } else if (default_also && !opt->get_default_str().empty()) {
          j[name] = opt->get_default_str();
        }
      } else if (opt->count() > 0) {
        j[name] = true;
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      j[sub->get_name()] = nlohmann::json::parse(to_config(sub, default_also, false, ""));
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    return items(j, "", {});
  }

 private:
  static std::string scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported config value " + v.dump());
  }

  std::vector<CLI::ConfigItem> items(const nlohmann::json& j, const std::string& name,
                                     const std::vector<std::string>& prefix) const {
    std::vector<CLI::ConfigItem> out;
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        auto parents = prefix;
        if (!name.empty()) parents.push_back(name);
        auto sub = items(*it, it.key(), parents);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    if (name.empty()) throw CLI::ConversionError("config root must be a JSON object");
    CLI::ConfigItem item;
    item.name = name;
    item.parents = prefix;
    if (j.is_array()) {
      for (const auto& v : j) item.inputs.push_back(scalar_text(v));
    } else {
      item.inputs = {scalar_text(j)};
    }
    out.push_back(std::move(item));
    return out;
  }
};

struct CommonOptions {
  std::string out = "-";
  bool no_timestamp = false;
  int threads = 0;
};

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_preamble(CsvWriter& csv, const CommonOptions& common, const std::string& command) {
  csv.comment("specdis " + command);
  if (!common.no_timestamp) csv.comment("generated " + iso_timestamp());
}

/// Writes `text` to path, or stdout for "-".
void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file " + path);
  f << text;
}

std::string param(const std::string& key, double v) { return key + "=" + format_number(v); }

/// Verdict lines for one chain; C = 0 is a decoupled site 0, trapped with weight 1.
void write_verdict(CsvWriter& csv, const ChainSpec& spec, const std::string& tag = "") {
  if (spec.C == 0.0) {
    csv.comment(tag + "decay_verdict=trapped branch=decoupled n_bound=1");
    csv.comment(tag + "trapped_weight=1");
    return;
  }
  const auto v = classify(spec.mu_B(), spec.C_B());
  csv.comment(tag + "decay_verdict=" + (v.decays ? "decays" : "trapped") +
              " branch=" + to_string(v.criterion_branch) +
              " n_bound=" + std::to_string(v.bound_states.size()));
  csv.comment(tag + "trapped_weight=" + format_number(trapped_weight(spec.mu_B(), spec.C_B())));
}

std::size_t choose_sites(double B, double t_max, std::size_t requested) {
  const std::size_t recommended = std::max<std::size_t>(recommended_sites(B, t_max), 2);
  if (requested == 0) return recommended;
  if (requested < recommended) {
    std::cerr << "warning: " << requested << " sites cover t <= "
              << format_number(static_cast<double>(requested) / (2.0 * B))
              << " inside the light cone; t_max=" << format_number(t_max) << " wants "
              << recommended << " sites (margin 1.25)\n";
  }
  return requested;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  double B = 1.0;
  double C = 1.0;
  double mu = 0.0;
  std::size_t sites = 0;
  double t_max = 40.0;
  double dt = 0.0;
  std::size_t init = 0;
  std::vector<std::string> obs{"n0"};
  bool heatmap = false;
};

void run_simulate(const SimulateOptions& o, const CommonOptions& common) {
  const double dt = o.dt > 0.0 ? o.dt : 0.1 / o.B;
  ChainSpec spec{o.B, o.C, o.mu, 2};
  spec.validate();
  spec.n_sites = choose_sites(o.B, o.t_max, o.sites);
  spec.validate();
  const auto psi0 = AmplitudeVector::basis(spec.n_sites, o.init);

  std::ostringstream text;
  CsvWriter csv(text);
  write_preamble(csv, common, o.heatmap ? "simulate --heatmap" : "simulate");
  csv.comment(param("B", spec.B) + " " + param("C", spec.C) + " " + param("mu", spec.mu) +
              " sites=" + std::to_string(spec.n_sites) + " " + param("t_max", o.t_max) + " " +
              param("dt", dt) + " init=" + std::to_string(o.init));
  write_verdict(csv, spec);
  csv.comment(param("valid_horizon", valid_horizon(spec)));

  if (o.heatmap) {
    const auto map = occupation_heatmap(spec, psi0, o.t_max, dt);
    csv.comment("boundary_time=" + (map.boundary_time ? format_number(*map.boundary_time) : "none"));
    csv.header({"t", "j", "n"});
    for (std::size_t it = 0; it < map.times.size(); ++it) {
      for (std::size_t j = 0; j < map.n_sites; ++j) {
        csv.row({map.times[it], static_cast<double>(j), map.at(it, j)});
      }
    }
  } else {
    std::vector<Observable> observables;
    for (const auto& name : o.obs) observables.push_back(Observable::parse(name));
    const auto times = time_grid(o.t_max, dt);
    const auto result = simulate(spec, psi0, times, observables);
    csv.comment("boundary_time=" +
                (result.boundary_time ? format_number(*result.boundary_time) : "none"));
    std::vector<std::string> columns{"t"};
    for (const auto& ob : observables) columns.push_back(ob.name());
    csv.header(columns);
    std::vector<double> row(columns.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      row[0] = times[i];
      for (std::size_t k = 0; k < observables.size(); ++k) {
        row[k + 1] = result.series.at(observables[k].name()).values[i];
      }
      csv.row(row);
    }
  }
  emit(common.out, text.str());
}

// ---------------------------------------------------------- phase-diagram

struct PhaseOptions {
  std::string mu_range = "-3:3:0.02";
  std::string c_range = "0.02:3:0.02";
};

void run_phase_diagram(const PhaseOptions& o, const CommonOptions& common) {
  const auto mu = GridSpec::parse(o.mu_range);
  const auto c = GridSpec::parse(o.c_range);
  const auto pd = phase_diagram(mu, c, resolve_threads(common.threads));

  std::ostringstream text;
  CsvWriter csv(text);
  write_preamble(csv, common, "phase-diagram");
  csv.comment("mu_range=" + o.mu_range + " c_range=" + o.c_range);
  csv.comment("rows ordered by C_B (outer) then mu_B (inner); decays=1 means no bound state");
  csv.header({"mu_B", "C_B", "decays", "n_bound", "trapped_weight"});
  for (std::size_t ic = 0; ic < pd.c_values.size(); ++ic) {
    for (std::size_t im = 0; im < pd.mu_values.size(); ++im) {
      const auto& v = pd.at(ic, im);
      double w = 0.0;
      for (const auto& b : v.bound_states) w += b.overlap_sq * b.overlap_sq;
      csv.row({pd.mu_values[im], pd.c_values[ic], v.decays ? 1.0 : 0.0,
               static_cast<double>(v.bound_states.size()), w});
    }
  }
  emit(common.out, text.str());
}

// ------------------------------------------------------------------ block

struct BlockOptions {
  double B = 1.0;
  double C = 0.5;
  std::vector<double> energies{0.0, 1.0, 2.0, 3.0};
  std::size_t sites = 0;
  double t_max = 160.0;
  double dt = 0.0;
  int initial = -1;
};

void write_block_csv(CsvWriter& csv, const BlockSpec& block, double t_max, double dt,
                     int initial, unsigned threads) {
  for (std::size_t m = 0; m < block.energies.size(); ++m) {
    write_verdict(csv, ChainSpec{block.B, block.C, block.energies[m], block.n_sites},
                  "m=" + std::to_string(m) + " E=" + format_number(block.energies[m]) + " ");
  }
  std::vector<std::size_t> which;
  if (initial < 0) {
    for (std::size_t m = 0; m < block.energies.size(); ++m) which.push_back(m);
  } else {
    which.push_back(static_cast<std::size_t>(initial));
  }
  std::vector<ObservableSeries> series(which.size());
  parallel_for(which.size(), threads,
               [&](std::size_t i) { series[i] = run_example4(block, which[i], t_max, dt); });

  std::vector<std::string> columns{"t"};
  for (auto m : which) columns.push_back("E0_occ_m" + std::to_string(m));
  csv.header(columns);
  std::vector<double> row(columns.size());
  for (std::size_t i = 0; i < series.front().times.size(); ++i) {
    row[0] = series.front().times[i];
    for (std::size_t k = 0; k < series.size(); ++k) row[k + 1] = series[k].values[i];
    csv.row(row);
  }
}

void run_block(const BlockOptions& o, const CommonOptions& common) {
  BlockSpec block{o.B, o.C, o.energies, 2};
  block.validate();
  block.n_sites = choose_sites(o.B, o.t_max, o.sites);
  if (o.initial >= static_cast<int>(block.energies.size())) {
    throw InvalidArgument("--initial outside the block");
  }
  const double dt = o.dt > 0.0 ? o.dt : 0.1 / o.B;

  std::ostringstream text;
  CsvWriter csv(text);
  write_preamble(csv, common, "block");
  std::string energies;
  for (double e : o.energies) energies += (energies.empty() ? "" : ",") + format_number(e);
  csv.comment(param("B", o.B) + " " + param("C", o.C) + " energies=" + energies +
              " sites=" + std::to_string(block.n_sites) + " " + param("t_max", o.t_max) + " " +
              param("dt", dt));
  write_block_csv(csv, block, o.t_max, dt, o.initial, resolve_threads(common.threads));
  emit(common.out, text.str());
}

// --------------------------------------------------------------- lindblad

struct LindbladOptions {
  double E0 = 0.0;
  double E1 = 1.0;
  double gamma = 1.0;
  double t_max = 5.0;
  double dt = 0.05;
  std::string init = "excited";
  std::string final_json;
};

TargetDensityMatrix lindblad_initial(const std::string& name) {
  if (name == "excited") return projector(computational_state(2, 1));
  if (name == "plus") {
    TargetState s(2);
    s << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return projector(s);
  }
  throw InvalidArgument("unknown --init '" + name + "' (use excited or plus)");
}

void run_lindblad(const LindbladOptions& o, const CommonOptions& common) {
  const auto model = spontaneous_decay_model(o.E0, o.E1, o.gamma);
  const auto times = time_grid(o.t_max, o.dt);
  const auto traj = integrate(model, lindblad_initial(o.init), times);

  std::ostringstream text;
  CsvWriter csv(text);
  write_preamble(csv, common, "lindblad");
  csv.comment(param("E0", o.E0) + " " + param("E1", o.E1) + " " + param("gamma", o.gamma) + " " +
              param("t_max", o.t_max) + " " + param("dt", o.dt) + " init=" + o.init +
              " rk4_step=" + format_number(traj.step));
  csv.comment("ref_exp_gamma_t solves the master equation exactly for rho11 from |1>;");
  csv.comment("ref_exp_2gamma_t is the alternative exp(-2 gamma t) reference curve");
  csv.header({"t", "rho00", "rho11", "re_rho01", "im_rho01", "ref_exp_gamma_t", "ref_exp_2gamma_t"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& r = traj.states[i];
    csv.row({times[i], r(0, 0).real(), r(1, 1).real(), r(0, 1).real(), r(0, 1).imag(),
             std::exp(-o.gamma * times[i]), std::exp(-2.0 * o.gamma * times[i])});
  }
  emit(common.out, text.str());
  if (!o.final_json.empty()) emit(o.final_json, to_json(traj.states.back()).dump(2) + "\n");
}

// ---------------------------------------------------------------- example

struct ExampleOptions {
  int number = 0;
  std::string out_dir = ".";
  std::size_t sites = 400;
  double t_max = 0.0;
  double dt = 0.1;
  double overlap = 0.6;
};

std::string write_file(const ExampleOptions& o, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(o.out_dir);
  const auto path = (std::filesystem::path(o.out_dir) / name).string();
  emit(path, text);
  return path;
}

std::vector<std::string> run_example(const ExampleOptions& o, const CommonOptions& common) {
  std::vector<std::string> written;
  std::ostringstream text;
  CsvWriter csv(text);
  write_preamble(csv, common, "example " + std::to_string(o.number));
  const ChainSpec free_chain{1.0, 1.0, 0.0, o.sites};
  const double horizon_t = 0.8 * valid_horizon(free_chain);

  switch (o.number) {
    case 1: {
      const double t_max = o.t_max > 0.0 ? o.t_max : horizon_t;
      const auto run = run_reset(free_chain, t_max, o.dt);
      csv.comment("qubit reset: " + param("B", 1) + " " + param("C", 1) + " " + param("mu", 0) +
                  " sites=" + std::to_string(o.sites) + " " + param("t_max", t_max));
      write_verdict(csv, free_chain);
      csv.header({"t", "n0", "rho00", "rho11", "purity", "trace_distance_to_ground"});
      const auto ground = projector(computational_state(2, 0));
      for (std::size_t i = 0; i < run.times.size(); ++i) {
        const auto& r = run.rho[i];
        csv.row({run.times[i], run.n0[i], r(0, 0).real(), r(1, 1).real(), r.purity(),
                 trace_distance(r, ground)});
      }
      written.push_back(write_file(o, "example1.csv", text.str()));
      written.push_back(
          write_file(o, "example1_final_rho.json", to_json(run.rho.back()).dump(2) + "\n"));
      break;
    }
    case 2: {
      const double t_max = o.t_max > 0.0 ? o.t_max : horizon_t;
      const auto run = run_mixing(free_chain, computational_state(2, 1), computational_state(2, 0),
                                  t_max, o.dt);
      const auto [a, b] = overlapping_pair(o.overlap);
      const auto skew = run_mixing(free_chain, a, b, t_max, o.dt);
      csv.comment("qubit mixing: " + param("B", 1) + " " + param("C", 1) + " " + param("mu", 0) +
                  " sites=" + std::to_string(o.sites) + " " + param("t_max", t_max) + " " +
                  param("overlap", o.overlap));
      write_verdict(csv, free_chain);
      csv.header({"t", "parity", "rho00", "rho11", "purity", "overlap_lambda_max",
                  "overlap_lambda_min"});
      for (std::size_t i = 0; i < run.times.size(); ++i) {
        const auto& r = run.rho[i];
        const auto ev = skew.rho[i].eigenvalues();
        csv.row({run.times[i], run.parity[i], r(0, 0).real(), r(1, 1).real(), r.purity(), ev(1),
                 ev(0)});
      }
      written.push_back(write_file(o, "example2.csv", text.str()));
      break;
    }
    case 3: {
      const double t_max = o.t_max > 0.0 ? o.t_max : 60.0;
      const std::vector<double> mus{0.0, 0.7, 1.4, 2.1};
      const double gamma = 1.0;
      const auto cmp = run_decay_comparison(1.0, 1.0, mus, o.sites, t_max, o.dt, gamma, 0.0, 1.0,
                                            resolve_threads(common.threads));
      csv.comment("spontaneous decay: microscopic " + param("B", 1) + " " + param("C", 1) +
                  " sites=" + std::to_string(o.sites) + "; Lindblad " + param("gamma", gamma));
      std::vector<std::string> columns{"t"};
      for (double mu : mus) {
        write_verdict(csv, ChainSpec{1.0, 1.0, mu, o.sites}, "mu=" + format_number(mu) + " ");
        columns.push_back("n0_mu" + format_number(mu));
      }
      columns.insert(columns.end(), {"lindblad_rho11", "ref_exp_gamma_t", "ref_exp_2gamma_t"});
      csv.header(columns);
      std::vector<double> row(columns.size());
      for (std::size_t i = 0; i < cmp.times.size(); ++i) {
        const double t = cmp.times[i];
        row[0] = t;
        for (std::size_t k = 0; k < mus.size(); ++k) row[k + 1] = cmp.microscopic_n0[k][i];
        row[mus.size() + 1] = cmp.lindblad_excited[i];
        row[mus.size() + 2] = std::exp(-gamma * t);
        row[mus.size() + 3] = std::exp(-2.0 * gamma * t);
        csv.row(row);
      }
      written.push_back(write_file(o, "example3.csv", text.str()));
      break;
    }
    case 4: {
      const double t_max = o.t_max > 0.0 ? o.t_max : horizon_t;
      const BlockSpec block{1.0, 0.5, {0.0, 1.0, 2.0, 3.0}, o.sites};
      csv.comment("controllable dissipation: " + param("B", 1) + " " + param("C", 0.5) +
                  " energies=0,1,2,3 sites=" + std::to_string(o.sites) + " " +
                  param("t_max", t_max));
      write_block_csv(csv, block, t_max, o.dt, -1, resolve_threads(common.threads));
      written.push_back(write_file(o, "example4.csv", text.str()));
      break;
    }
    default:
      throw InvalidArgument("example number must be 1, 2, 3 or 4");
  }
  return written;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrally gated dissipation: ancilla+target chain simulator"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<ConfigJson>());
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");

  CommonOptions common;
  auto add_common = [&](CLI::App* sub, bool with_out = true) {
    if (with_out) sub->add_option("-o,--out", common.out, "output CSV path ('-' for stdout)");
    sub->add_flag("--no-timestamp", common.no_timestamp, "omit the generation timestamp comment");
    sub->add_option("--threads", common.threads, "worker cap (fallback: SPECDIS_THREADS)")
        ->check(CLI::NonNegativeNumber);
  };

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "propagate one chain from a site state");
  simulate_cmd->add_option("--B", sim.B, "bulk hopping")->capture_default_str();
  simulate_cmd->add_option("--C", sim.C, "site-0 to site-1 hopping")->capture_default_str();
  simulate_cmd->add_option("--mu", sim.mu, "site-0 energy")->capture_default_str();
  simulate_cmd->add_option("--sites", sim.sites, "chain length (0: from t-max and the light cone)");
  simulate_cmd->add_option("--t-max", sim.t_max, "final time")->capture_default_str();
  simulate_cmd->add_option("--dt", sim.dt, "sampling step (0: 0.1/B)");
  simulate_cmd->add_option("--init", sim.init, "initial site j of e_j")->capture_default_str();
  simulate_cmd->add_option("--obs", sim.obs, "observables: n<j>, nlast, parity")->capture_default_str();
  simulate_cmd->add_flag("--heatmap", sim.heatmap, "emit t,j,n occupation grid instead");
  add_common(simulate_cmd);

  PhaseOptions phase;
  auto* phase_cmd = app.add_subcommand("phase-diagram", "decay verdict over a (mu/B, C/B) grid");
  phase_cmd->add_option("--mu-range", phase.mu_range, "lo:hi:step")->capture_default_str();
  phase_cmd->add_option("--c-range", phase.c_range, "lo:hi:step")->capture_default_str();
  add_common(phase_cmd);

  BlockOptions blk;
  auto* block_cmd = app.add_subcommand("block", "|E_0> occupation in the block model");
  block_cmd->add_option("--B", blk.B, "bulk hopping")->capture_default_str();
  block_cmd->add_option("--C", blk.C, "boundary hopping")->capture_default_str();
  block_cmd->add_option("--energies", blk.energies, "target energies E_0,...")
      ->delimiter(',')
      ->capture_default_str();
  block_cmd->add_option("--sites", blk.sites, "sites per chain (0: from t-max)");
  block_cmd->add_option("--t-max", blk.t_max, "final time")->capture_default_str();
  block_cmd->add_option("--dt", blk.dt, "sampling step (0: 0.1/B)");
  block_cmd->add_option("--initial", blk.initial, "initial level m (-1: all)")->capture_default_str();
  add_common(block_cmd);

  LindbladOptions lind;
  auto* lindblad_cmd = app.add_subcommand("lindblad", "two-level decay under the master equation");
  lindblad_cmd->add_option("--E0", lind.E0, "energy of |0>")->capture_default_str();
  lindblad_cmd->add_option("--E1", lind.E1, "energy of |1>")->capture_default_str();
  lindblad_cmd->add_option("--gamma", lind.gamma, "rate of the |0><1| jump")->capture_default_str();
  lindblad_cmd->add_option("--t-max", lind.t_max, "final time")->capture_default_str();
  lindblad_cmd->add_option("--dt", lind.dt, "sampling step")->capture_default_str();
  lindblad_cmd->add_option("--init", lind.init, "excited or plus")->capture_default_str();
  lindblad_cmd->add_option("--final-json", lind.final_json, "write the final state as JSON");
  add_common(lindblad_cmd);

  ExampleOptions ex;
  auto* example_cmd = app.add_subcommand("example", "preset runs 1-4");
  example_cmd->add_option("number", ex.number, "example number")->required()->check(CLI::Range(1, 4));
  example_cmd->add_option("--out-dir", ex.out_dir, "directory for the CSV bundle")->capture_default_str();
  example_cmd->add_option("--sites", ex.sites, "chain length")->capture_default_str();
  example_cmd->add_option("--t-max", ex.t_max, "final time (0: preset)");
  example_cmd->add_option("--dt", ex.dt, "sampling step")->capture_default_str();
  example_cmd->add_option("--overlap", ex.overlap, "<a|b> for the mixing example")->capture_default_str();
  add_common(example_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*simulate_cmd) run_simulate(sim, common);
    if (*phase_cmd) run_phase_diagram(phase, common);
    if (*block_cmd) run_block(blk, common);
    if (*lindblad_cmd) run_lindblad(lind, common);
    if (*example_cmd) {
      for (const auto& path : run_example(ex, common)) std::cout << "wrote " << path << "\n";
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
