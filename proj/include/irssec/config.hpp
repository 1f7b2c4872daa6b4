// SPDX-License-Identifier: Apache-2.0
//
// irssec: secure IRS-assisted THz MIMO-NOMA downlink optimization
// Copyright (C) 2026 The irssec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSSEC_CONFIG_HPP
#define IRSSEC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace irssec
{

enum class Architecture
{
    FullyConnected,
    SubConnected
};

std::string to_string(Architecture arch);
Architecture parse_architecture(std::string_view text); // "fc" | "sc"

// Raised for schema violations (unknown/missing/malformed key) and for
// invariant violations. key() names the offending key or constraint.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string key, const std::string &what);
    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

// Placement geometry used when a scenario is generated from a seed.
struct Geometry
{
    double bs_irs_distance_m = 15.0;
    double eve_distance_m = 5.0;
    double cluster_distance_m = 5.0;
    double cluster_radius_m = 2.0;
    std::optional<double> eve_angle_rad; // drawn from the seed when unset
    std::optional<double> bs_aod_rad;
    std::optional<double> irs_aoa_rad;

    bool operator==(const Geometry &) const = default;
};

struct SystemConfig
{
    int n_tx = 64;
    int n_irs = 20;
    int n_rf = 4;
    std::vector<int> users_per_cluster{3, 3, 2, 2}; // one entry per cluster, or one shared count
    double carrier_freq_hz = 340e9;
    int quant_bits = 4;
    double tx_gain = 1.0;                 // linear
    std::optional<double> rx_gain_db;     // default 4 + 20 log10(sqrt(n_tx))
    double absorption_per_m = 0.0033;
    double noise_power_w = 0.01;
    double total_power_w = 1.0;
    double min_rate = 0.0;                // bit/s/Hz per user
    double path_comp = 1.0;               // eta
    Architecture architecture = Architecture::FullyConnected;
    std::optional<double> element_spacing_m; // default half wavelength
    double rf_chain_power_w = 0.3;
    double phase_shifter_power_w = 0.04;
    double baseband_power_w = 0.2;
    double cluster_corr_threshold = 0.5;
    Geometry geometry;

    int n_clusters() const { return n_rf; }
    int cluster_size(int l) const;
    int n_users() const;
    double rx_gain_linear() const;
    double element_spacing() const;
    int sub_array_size() const { return n_tx / n_rf; }
    int phase_shifter_count() const;

    // Throws ConfigError naming the failing constraint.
    void validate() const;

    bool operator==(const SystemConfig &) const = default;
};

struct Placement
{
    double distance_m = 0.0;
    double angle_rad = 0.0;

    bool operator==(const Placement &) const = default;
};

struct Scenario
{
    double bs_irs_distance_m = 15.0;
    double bs_aod_rad = 0.0;  // departure angle at the BS array
    double irs_aoa_rad = 0.0; // arrival angle at the IRS
    std::vector<Placement> users;
    std::vector<int> placement_cluster; // cluster center each user was drawn around
    std::vector<Placement> cluster_centers;
    Placement eve;
    std::uint64_t seed = 0;

    void validate() const;
    bool operator==(const Scenario &) const = default;
};

struct PhaseInit
{
    bool random = false;
    std::uint64_t seed = 0;

    bool operator==(const PhaseInit &) const = default;
};

// "identity" or "random:<seed>"
PhaseInit parse_phase_init(const std::string &text);

struct SolverSettings
{
    int outer_max = 10;
    int power_max = 30;
    int phase_max = 15;
    double rel_tol = 1e-4;
    double sdp_tol = 1e-6;
    int randomizations = 50;
    std::uint64_t phase_seed = 1;
    double armijo_c = 1e-4;
    double armijo_shrink = 0.5;
    int first_order_max = 400;
    int projection_max = 500;
    double projection_tol = 1e-9;
    bool refine_projection = false;
    PhaseInit init;
    bool freeze_analog = false;

    void validate() const;
    bool operator==(const SolverSettings &) const = default;
};

struct ConfigBundle
{
    SystemConfig system;
    Scenario scenario;
    SolverSettings solver;

    bool operator==(const ConfigBundle &) const = default;
};

// Parses the INI-style document described in docs/config.md. A scenario is
// generated from [scenario] seed unless explicit placements are given.
ConfigBundle load_config(const std::string &text);
ConfigBundle load_config_file(const std::string &path);
std::string emit_config(const ConfigBundle &bundle);

// Deterministic in (cfg, seed). Users sit in a disc of cluster_radius_m
// around each of the L cluster centers.
Scenario generate_scenario(const SystemConfig &cfg, std::uint64_t seed);

} // namespace irssec

#endif
