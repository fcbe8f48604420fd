// Copyright 2026 The viraldyn Authors.
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

// Command-line front end over the viraldyn C interface.
//
//   viraldyn simulate    --preset fig5 --tau 3 --out run/
//   viraldyn stability   --params my.params
//   viraldyn sweep       --preset fig5 --axis tau --grid 0.1,0.5,1,2,3
//   viraldyn sensitivity --preset fig5
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
// 4 I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "viraldyn/viraldyn.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(int status) {
  switch (status) {
  case VD_ERROR_NUMERICAL:
  case VD_ERROR_BLOWUP:
    return kExitNumerical;
  case VD_ERROR_IO:
    return kExitIo;
  default:
    return kExitConfig;
  }
}

void check(int status, const std::string& context) {
  if (status == VD_OK || status == VD_NO_RESULT)
    return;
  throw Failure{exit_code_for(status), context + ": " + vd_error_description(status) + ": " +
                                           vd_last_error_message()};
}

std::string fetch_text(const std::function<int(char*, size_t*)>& call, const std::string& context,
                       size_t initial = 1 << 16) {
  std::vector<char> buf(initial);
  size_t len = buf.size();
  int status = call(buf.data(), &len);
  if (status == VD_ERROR_INSUFFICIENT_BUFFER) {
    buf.resize(len);
    status = call(buf.data(), &len);
  }
  check(status, context);
  return std::string(buf.data(), len - 1);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
    throw Failure{kExitIo, "cannot write " + path.string()};
}

class Params {
public:
  Params(const std::string& preset, const std::string& file) {
    if (preset.empty() == file.empty())
      throw Failure{kExitConfig, "give exactly one of --preset or --params"};
    const int status =
        preset.empty() ? vd_params_init_file(&h_, file.c_str()) : vd_params_init_preset(&h_, preset.c_str());
    check(status, preset.empty() ? "loading " + file : "preset " + preset);
  }
  ~Params() { vd_params_destroy(h_); }
  Params(const Params&) = delete;
  Params& operator=(const Params&) = delete;
  vd_params_t get() const { return h_; }

private:
  vd_params_t h_ = nullptr;
};

class TrajectoryHandle {
public:
  ~TrajectoryHandle() { vd_trajectory_destroy(h_); }
  vd_trajectory_t* out() { return &h_; }
  vd_trajectory_t get() const { return h_; }

private:
  vd_trajectory_t h_ = nullptr;
};

struct Options {
  std::string preset;
  std::string params_file;
  std::optional<double> tau;
  double t_end = 1000.0;
  double step = 0.0;
  std::string out_dir = ".";
  std::vector<double> history;
  std::string axis = "tau";
  std::vector<double> grid;
};

void add_common(CLI::App* cmd, Options& opt, bool with_run) {
  cmd->add_option("--preset", opt.preset, "Built-in parameter set (fig1, fig3, fig5, fig7c, fig8)");
  cmd->add_option("--params", opt.params_file, "Parameter file with name = value lines");
  cmd->add_option("--tau", opt.tau, "Override the delay tau (day)");
  cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
  if (with_run) {
    cmd->add_option("--t-end", opt.t_end, "Simulated time span (day)")->capture_default_str();
    cmd->add_option("--step", opt.step, "Integration step (day); 0 picks one");
    cmd->add_option("--history", opt.history, "Constant initial history T,I,V")
        ->delimiter(',')
        ->expected(3);
  }
}

std::filesystem::path prepare_out(const Options& opt) {
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec)
    throw Failure{kExitIo, "cannot create " + opt.out_dir + ": " + ec.message()};
  return opt.out_dir;
}

void apply_tau(const Params& params, const Options& opt) {
  if (opt.tau)
    check(vd_params_set(params.get(), "tau", *opt.tau), "--tau");
}

const double* history_ptr(const Options& opt) {
  return opt.history.empty() ? nullptr : opt.history.data();
}

void cmd_simulate(const Options& opt) {
  Params params(opt.preset, opt.params_file);
  apply_tau(params, opt);
  const auto dir = prepare_out(opt);
  TrajectoryHandle traj;
  check(vd_integrate(traj.out(), params.get(), history_ptr(opt), opt.t_end, opt.step),
        "integration");
  check(vd_trajectory_write_csv(traj.get(), (dir / "trajectory.csv").c_str()),
        "writing trajectory.csv");
  const std::string verdict = fetch_text(
      [&](char* b, size_t* n) { return vd_verdict_json(traj.get(), 0.0, b, n); }, "verdict");
  write_file(dir / "verdict.json", verdict);
  write_file(dir / "peaks.csv",
             fetch_text([&](char* b, size_t* n) { return vd_peaks_csv(traj.get(), 0.0, b, n); },
                        "peaks"));
  std::cout << verdict;
}

void cmd_stability(const Options& opt) {
  Params params(opt.preset, opt.params_file);
  apply_tau(params, opt);
  const auto dir = prepare_out(opt);
  const std::string text = fetch_text(
      [&](char* b, size_t* n) { return vd_stability_json(params.get(), b, n); }, "stability");
  write_file(dir / "stability.json", text);
  std::cout << text;
}

void cmd_sweep(const Options& opt) {
  Params params(opt.preset, opt.params_file);
  apply_tau(params, opt);
  if (opt.grid.empty())
    throw Failure{kExitConfig, "--grid must list at least one value"};
  const auto dir = prepare_out(opt);
  const std::string text = fetch_text(
      [&](char* b, size_t* n) {
        return vd_sweep_csv(params.get(), opt.axis.c_str(), opt.grid.data(), opt.grid.size(),
                            opt.t_end, opt.step, history_ptr(opt), 0, b, n);
      },
      "sweep", size_t{1} << 20);
  write_file(dir / "sweep.csv", text);
  std::cout << text;
}

void cmd_sensitivity(const Options& opt) {
  Params params(opt.preset, opt.params_file);
  apply_tau(params, opt);
  const auto dir = prepare_out(opt);
  const std::string text = fetch_text(
      [&](char* b, size_t* n) { return vd_sensitivity_csv(params.get(), b, n); }, "sensitivity");
  write_file(dir / "sensitivity.csv", text);
  std::cout << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed within-host hepatitis model: simulation, stability and sensitivity"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Integrate once; write trajectory.csv and verdict.json");
  add_common(simulate, opt, true);
  auto* stability = app.add_subcommand("stability", "Stability report for both equilibria");
  add_common(stability, opt, false);
  auto* sweep = app.add_subcommand("sweep", "Classify and simulate across a parameter grid");
  add_common(sweep, opt, true);
  sweep->add_option("--axis", opt.axis, "Swept parameter")
      ->check(CLI::IsMember({"tau", "c", "alpha"}))
      ->capture_default_str();
  sweep->add_option("--grid", opt.grid, "Comma-separated increasing values")
      ->delimiter(',')
      ->required();
  auto* sensitivity = app.add_subcommand("sensitivity", "Normalized sensitivity indices of R0");
  add_common(sensitivity, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate)
      cmd_simulate(opt);
    else if (*stability)
      cmd_stability(opt);
    else if (*sweep)
      cmd_sweep(opt);
    else if (*sensitivity)
      cmd_sensitivity(opt);
  } catch (const Failure& f) {
    std::cerr << "viraldyn: " << f.message << "\n";
    return f.exit_code;
  }
  return kExitOk;
}
