#pragma once

#include <string>

#include "fsi/params.hpp"

namespace fsi {

enum class InitialPreset { Steady, DensityBump, BeamKick, FromSnapshot };
enum class CouplingMode { Window, Step };

/// Full run configuration. Parsed from a line-based `key = value` file with
/// `[section]` headers; unknown keys or sections are fatal. Defaults:
///
///   [grid]      nx (req)  nz (req)  length = 1.0
///   [physics]   mu = 0.1  mu_prime = 0.0  a = 1.0  gamma = 1.4  rho_bar = 1.0
///               alpha = 1.0  beta = 1.0  delta = 1.0
///   [initial]   preset = steady  amplitude = 0.0  mode = 1  snapshot = ""
///   [numerics]  dt = 1e-3  window_steps = 20  min_window_steps = 2
///               t_end (req)  tol_pic = 1e-8  max_iter = 50  lin_tol = 1e-10
///               delta0 = 0.5  coupling_mode = window  compat_tol = 1e-6
///   [output]    dir = "out"  snapshot_every = 0  timeseries_every = 1
///   [flags]     allow_incompatible = false
///   [monitors]  b1 = inf  b2 = inf  b3 = inf  b4 = inf
struct SimConfig {
    int nx = 0;
    int nz = 0;
    PhysParams physics;

    InitialPreset preset = InitialPreset::Steady;
    double amplitude = 0.0;
    int mode = 1;
    std::string snapshot_path;

    double dt = 1e-3;
    int window_steps = 20;
    int min_window_steps = 2;
    double t_end = 0.0;
    double tol_pic = 1e-8;
    int max_iter = 50;
    double lin_tol = 1e-10;
    double delta0 = 0.5;
    CouplingMode coupling_mode = CouplingMode::Window;
    double compat_tol = 1e-6;

    std::string output_dir = "out";
    int snapshot_every = 0;
    int timeseries_every = 1;

    bool allow_incompatible = false;

    double monitor_b1 = std::numeric_limits<double>::infinity();
    double monitor_b2 = std::numeric_limits<double>::infinity();
    double monitor_b3 = std::numeric_limits<double>::infinity();
    double monitor_b4 = std::numeric_limits<double>::infinity();

    void validate() const;
};

SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text);
std::string serialize_config(const SimConfig& config);

}  // namespace fsi
