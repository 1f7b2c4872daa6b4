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

#include "irssec/config.hpp"
#include "irssec/types.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace irssec
{

ConfigError::ConfigError(std::string key, const std::string &what)
    : std::invalid_argument(what), key_(std::move(key))
{
}

std::string to_string(Architecture arch)
{
    return arch == Architecture::FullyConnected ? "fc" : "sc";
}

Architecture parse_architecture(std::string_view text)
{
    if (text == "fc" || text == "FullyConnected")
        return Architecture::FullyConnected;
    if (text == "sc" || text == "SubConnected")
        return Architecture::SubConnected;
    throw ConfigError("architecture", "architecture must be 'fc' or 'sc', got '" + std::string(text) + "'");
}

// ---------- SystemConfig ----------

int SystemConfig::cluster_size(int l) const
{
    return users_per_cluster.size() == 1 ? users_per_cluster.front() : users_per_cluster.at(l);
}

int SystemConfig::n_users() const
{
    int total = 0;
    for (int l = 0; l < n_clusters(); ++l)
        total += cluster_size(l);
    return total;
}

double SystemConfig::rx_gain_linear() const
{
    const double db = rx_gain_db.value_or(4.0 + 20.0 * std::log10(std::sqrt(double(n_tx))));
    return std::pow(10.0, db / 10.0);
}

double SystemConfig::element_spacing() const
{
    return element_spacing_m.value_or(kSpeedOfLight / (2.0 * carrier_freq_hz));
}

int SystemConfig::phase_shifter_count() const
{
    return architecture == Architecture::FullyConnected ? n_tx * n_rf : n_tx;
}

namespace
{
void require(bool ok, const std::string &key, const std::string &what)
{
    if (!ok)
        throw ConfigError(key, key + ": " + what);
}
} // namespace

void SystemConfig::validate() const
{
    require(n_tx >= 1, "n_tx", "must be >= 1");
    require(n_irs >= 1, "n_irs", "must be >= 1");
    require(n_rf >= 1, "n_rf", "must be >= 1");
    require(!users_per_cluster.empty(), "users_per_cluster", "must not be empty");
    require(users_per_cluster.size() == 1 || int(users_per_cluster.size()) == n_rf, "users_per_cluster",
            "needs one entry or one entry per cluster (L = n_rf)");
    for (int m : users_per_cluster)
        require(m >= 1, "users_per_cluster", "every cluster needs >= 1 user");
    if (architecture == Architecture::SubConnected)
        require(n_tx % n_rf == 0, "n_tx % n_rf", "sub-connected architecture needs n_tx divisible by n_rf");
    require(carrier_freq_hz > 0.0, "carrier_freq_hz", "must be > 0");
    require(quant_bits >= 1 && quant_bits <= 30, "quant_bits", "must be in [1, 30]");
    require(tx_gain > 0.0, "tx_gain", "must be > 0");
    require(std::isfinite(rx_gain_linear()) && rx_gain_linear() > 0.0, "rx_gain_db", "must be finite");
    require(absorption_per_m >= 0.0, "absorption_per_m", "must be >= 0");
    require(noise_power_w > 0.0, "noise_power_w", "must be > 0");
    require(total_power_w > 0.0, "total_power_w", "must be > 0");
    require(min_rate >= 0.0, "min_rate", "must be >= 0");
    require(path_comp > 0.0, "path_comp", "must be > 0");
    require(element_spacing() > 0.0, "element_spacing_m", "must be > 0");
    require(rf_chain_power_w >= 0.0, "rf_chain_power_w", "must be >= 0");
    require(phase_shifter_power_w >= 0.0, "phase_shifter_power_w", "must be >= 0");
    require(baseband_power_w >= 0.0, "baseband_power_w", "must be >= 0");
    require(cluster_corr_threshold > 0.0 && cluster_corr_threshold <= 1.0, "cluster_corr_threshold",
            "must be in (0, 1]");
    require(geometry.bs_irs_distance_m > 0.0, "bs_irs_distance_m", "must be > 0");
    require(geometry.eve_distance_m > 0.0, "eve_distance_m", "must be > 0");
    require(geometry.cluster_distance_m > 0.0, "cluster_distance_m", "must be > 0");
    require(geometry.cluster_radius_m >= 0.0 && geometry.cluster_radius_m < geometry.cluster_distance_m,
            "cluster_radius_m", "must be in [0, cluster_distance_m)");
    auto angle_ok = [](const std::optional<double> &a) { return !a || std::abs(*a) <= kPi / 2; };
    require(angle_ok(geometry.eve_angle_rad), "eve_angle_rad", "must be in [-pi/2, pi/2]");
    require(angle_ok(geometry.bs_aod_rad), "bs_aod_rad", "must be in [-pi/2, pi/2]");
    require(angle_ok(geometry.irs_aoa_rad), "irs_aoa_rad", "must be in [-pi/2, pi/2]");
}

void Scenario::validate() const
{
    auto check = [](const Placement &p, const std::string &what) {
        require(p.distance_m > 0.0, what, "distance must be > 0");
        require(std::abs(p.angle_rad) <= kPi / 2, what, "angle must be in [-pi/2, pi/2]");
    };
    require(bs_irs_distance_m > 0.0, "bs_irs_distance_m", "must be > 0");
    require(std::abs(bs_aod_rad) <= kPi / 2, "bs_aod_rad", "must be in [-pi/2, pi/2]");
    require(std::abs(irs_aoa_rad) <= kPi / 2, "irs_aoa_rad", "must be in [-pi/2, pi/2]");
    require(!users.empty(), "user_distances_m", "scenario has no users");
    require(placement_cluster.size() == users.size(), "user_clusters", "needs one entry per user");
    for (size_t k = 0; k < users.size(); ++k)
        check(users[k], "user " + std::to_string(k));
    check(eve, "eve");
}

void SolverSettings::validate() const
{
    require(outer_max >= 1, "outer_max", "must be >= 1");
    require(power_max >= 1, "power_max", "must be >= 1");
    require(phase_max >= 1, "phase_max", "must be >= 1");
    require(randomizations >= 1, "randomizations", "must be >= 1");
    require(first_order_max >= 1, "first_order_max", "must be >= 1");
    require(projection_max >= 1, "projection_max", "must be >= 1");
    require(rel_tol > 0.0, "rel_tol", "must be > 0");
    require(sdp_tol > 0.0, "sdp_tol", "must be > 0");
    require(projection_tol > 0.0, "projection_tol", "must be > 0");
    require(armijo_c > 0.0 && armijo_c < 1.0, "armijo_c", "must be in (0, 1)");
    require(armijo_shrink > 0.0 && armijo_shrink < 1.0, "armijo_shrink", "must be in (0, 1)");
}

// ---------- scenario generation ----------

Scenario generate_scenario(const SystemConfig &cfg, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi / 2, kPi / 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Geometry &g = cfg.geometry;

    Scenario s;
    s.seed = seed;
    s.bs_irs_distance_m = g.bs_irs_distance_m;
    // Draw every random quantity even when overridden so the user stream
    // does not depend on which knobs are set.
    const double aod = angle(rng), aoa = angle(rng), eve_angle = angle(rng);
    s.bs_aod_rad = g.bs_aod_rad.value_or(aod);
    s.irs_aoa_rad = g.irs_aoa_rad.value_or(aoa);
    s.eve = {g.eve_distance_m, g.eve_angle_rad.value_or(eve_angle)};

    for (int l = 0; l < cfg.n_clusters(); ++l)
    {
        const Placement center{g.cluster_distance_m, angle(rng)};
        s.cluster_centers.push_back(center);
        const double cx = center.distance_m * std::cos(center.angle_rad);
        const double cy = center.distance_m * std::sin(center.angle_rad);
        for (int m = 0; m < cfg.cluster_size(l); ++m)
        {
            Placement p;
            do
            {
                const double r = g.cluster_radius_m * std::sqrt(unit(rng));
                const double phi = 2.0 * kPi * unit(rng);
                const double x = cx + r * std::cos(phi), y = cy + r * std::sin(phi);
                p.distance_m = std::hypot(x, y);
                p.angle_rad = std::clamp(std::atan2(y, x), -kPi / 2, kPi / 2);
            } while (!(p.distance_m > 0.0));
            s.users.push_back(p);
            s.placement_cluster.push_back(l);
        }
    }
    return s;
}

// ---------- document parsing ----------

namespace
{
namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> &schema()
{
    static const std::map<std::string, std::set<std::string>> s{
        {"system",
         {"n_tx", "n_irs", "n_rf", "n_clusters", "users_per_cluster", "carrier_freq_hz", "quant_bits", "tx_gain",
          "rx_gain_db", "absorption_per_m", "noise_power_w", "total_power_w", "min_rate", "path_comp",
          "architecture", "element_spacing_m", "rf_chain_power_w", "phase_shifter_power_w", "baseband_power_w",
          "cluster_corr_threshold"}},
        {"scenario",
         {"seed", "bs_irs_distance_m", "eve_distance_m", "cluster_distance_m", "cluster_radius_m", "eve_angle_rad",
          "bs_aod_rad", "irs_aoa_rad", "user_distances_m", "user_angles_rad", "user_clusters"}},
        {"solver",
         {"outer_max", "power_max", "phase_max", "rel_tol", "sdp_tol", "randomizations", "phase_seed", "armijo_c",
          "armijo_shrink", "first_order_max", "projection_max", "projection_tol", "refine_projection", "init",
          "freeze_analog"}},
    };
    return s;
}

const std::vector<std::string> &required_keys()
{
    static const std::vector<std::string> r{
        "system.n_tx",          "system.n_irs",         "system.n_rf",           "system.users_per_cluster",
        "system.carrier_freq_hz", "system.quant_bits",  "system.absorption_per_m", "system.noise_power_w",
        "system.total_power_w",
    };
    return r;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

class Reader
{
public:
    explicit Reader(const pt::ptree &tree) : tree_(tree) {}

    std::optional<std::string> raw(const std::string &path) const
    {
        auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
        if (!v)
            return std::nullopt;
        return trim(*v);
    }

    template <typename T>
    std::optional<T> number(const std::string &path) const
    {
        auto text = raw(path);
        if (!text)
            return std::nullopt;
        return parse<T>(*text, path);
    }

    template <typename T>
    void set(const std::string &path, T &out) const
    {
        if (auto v = number<T>(path))
            out = *v;
    }

    template <typename T>
    void set(const std::string &path, std::optional<T> &out) const
    {
        if (auto v = number<T>(path))
            out = *v;
    }

    template <typename T>
    std::vector<T> list(const std::string &path) const
    {
        std::vector<T> out;
        auto text = raw(path);
        if (!text)
            return out;
        std::stringstream ss(*text);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(parse<T>(trim(item), path));
        return out;
    }

    bool flag(const std::string &path, bool fallback) const
    {
        auto text = raw(path);
        if (!text)
            return fallback;
        if (*text == "true" || *text == "1" || *text == "yes")
            return true;
        if (*text == "false" || *text == "0" || *text == "no")
            return false;
        throw ConfigError(path, path + ": expected a boolean, got '" + *text + "'");
    }

    template <typename T>
    static T parse(const std::string &text, const std::string &path)
    {
        T value{};
        const char *first = text.data();
        const char *last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || text.empty())
            throw ConfigError(path, path + ": cannot parse '" + text + "' as a number");
        return value;
    }

private:
    const pt::ptree &tree_;
};

PhaseInit parse_init(const std::string &text)
{
    if (text == "identity")
        return {};
    if (text.rfind("random:", 0) == 0)
        return {true, Reader::parse<std::uint64_t>(text.substr(7), "solver.init")};
    throw ConfigError("solver.init", "solver.init: expected 'identity' or 'random:<seed>', got '" + text + "'");
}

std::string fmt(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

template <typename T>
std::string join(const std::vector<T> &values)
{
    std::string out;
    for (size_t k = 0; k < values.size(); ++k)
    {
        if (k)
            out += ", ";
        if constexpr (std::is_floating_point_v<T>)
            out += fmt(values[k]);
        else
            out += std::to_string(values[k]);
    }
    return out;
}

} // namespace

PhaseInit parse_phase_init(const std::string &text)
{
    return parse_init(text);
}

ConfigBundle load_config(const std::string &text)
{
    pt::ptree tree;
    try
    {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ConfigError("document", std::string("malformed configuration: ") + e.what());
    }

    for (const auto &[section, body] : tree)
    {
        auto it = schema().find(section);
        if (it == schema().end())
            throw ConfigError(section, "unknown section [" + section + "]");
        if (body.empty() && !body.data().empty())
            throw ConfigError(section, "key '" + section + "' outside of any section");
        for (const auto &[key, value] : body)
            if (!it->second.count(key))
                throw ConfigError(section + "." + key, "unknown key '" + section + "." + key + "'");
    }
    Reader rd(tree);
    for (const auto &key : required_keys())
        if (!rd.raw(key))
            throw ConfigError(key.substr(key.find('.') + 1), "missing required key '" + key + "'");

    ConfigBundle b;
    SystemConfig &c = b.system;
    rd.set("system.n_tx", c.n_tx);
    rd.set("system.n_irs", c.n_irs);
    rd.set("system.n_rf", c.n_rf);
    if (auto l = rd.number<int>("system.n_clusters"); l && *l != c.n_rf)
        throw ConfigError("n_clusters", "n_clusters: must equal n_rf (L = N_RF)");
    c.users_per_cluster = rd.list<int>("system.users_per_cluster");
    rd.set("system.carrier_freq_hz", c.carrier_freq_hz);
    rd.set("system.quant_bits", c.quant_bits);
    rd.set("system.tx_gain", c.tx_gain);
    rd.set("system.rx_gain_db", c.rx_gain_db);
    rd.set("system.absorption_per_m", c.absorption_per_m);
    rd.set("system.noise_power_w", c.noise_power_w);
    rd.set("system.total_power_w", c.total_power_w);
    rd.set("system.min_rate", c.min_rate);
    rd.set("system.path_comp", c.path_comp);
    if (auto a = rd.raw("system.architecture"))
        c.architecture = parse_architecture(*a);
    rd.set("system.element_spacing_m", c.element_spacing_m);
    rd.set("system.rf_chain_power_w", c.rf_chain_power_w);
    rd.set("system.phase_shifter_power_w", c.phase_shifter_power_w);
    rd.set("system.baseband_power_w", c.baseband_power_w);
    rd.set("system.cluster_corr_threshold", c.cluster_corr_threshold);

    Geometry &g = c.geometry;
    rd.set("scenario.bs_irs_distance_m", g.bs_irs_distance_m);
    rd.set("scenario.eve_distance_m", g.eve_distance_m);
    rd.set("scenario.cluster_distance_m", g.cluster_distance_m);
    rd.set("scenario.cluster_radius_m", g.cluster_radius_m);
    rd.set("scenario.eve_angle_rad", g.eve_angle_rad);
    rd.set("scenario.bs_aod_rad", g.bs_aod_rad);
    rd.set("scenario.irs_aoa_rad", g.irs_aoa_rad);
    c.validate();

    SolverSettings &s = b.solver;
    rd.set("solver.outer_max", s.outer_max);
    rd.set("solver.power_max", s.power_max);
    rd.set("solver.phase_max", s.phase_max);
    rd.set("solver.rel_tol", s.rel_tol);
    rd.set("solver.sdp_tol", s.sdp_tol);
    rd.set("solver.randomizations", s.randomizations);
    rd.set("solver.phase_seed", s.phase_seed);
    rd.set("solver.armijo_c", s.armijo_c);
    rd.set("solver.armijo_shrink", s.armijo_shrink);
    rd.set("solver.first_order_max", s.first_order_max);
    rd.set("solver.projection_max", s.projection_max);
    rd.set("solver.projection_tol", s.projection_tol);
    if (auto init = rd.raw("solver.init"))
        s.init = parse_init(*init);
    s.refine_projection = rd.flag("solver.refine_projection", false);
    s.freeze_analog = rd.flag("solver.freeze_analog", false);
    s.validate();

    std::uint64_t seed = 1;
    rd.set("scenario.seed", seed);
    b.scenario = generate_scenario(c, seed);

    // Explicit placements replace the generated ones.
    auto dist = rd.list<double>("scenario.user_distances_m");
    auto ang = rd.list<double>("scenario.user_angles_rad");
    auto cl = rd.list<int>("scenario.user_clusters");
    if (!dist.empty() || !ang.empty() || !cl.empty())
    {
        require(dist.size() == size_t(c.n_users()), "user_distances_m", "needs one entry per user");
        require(ang.size() == dist.size(), "user_angles_rad", "needs one entry per user");
        if (cl.empty())
            cl = b.scenario.placement_cluster;
        require(cl.size() == dist.size(), "user_clusters", "needs one entry per user");
        b.scenario.users.clear();
        for (size_t k = 0; k < dist.size(); ++k)
        {
            require(cl[k] >= 0 && cl[k] < c.n_clusters(), "user_clusters", "cluster index out of range");
            b.scenario.users.push_back({dist[k], ang[k]});
        }
        b.scenario.placement_cluster = cl;
    }
    b.scenario.validate();
    return b;
}

ConfigBundle load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("--config", "cannot open configuration file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::string emit_config(const ConfigBundle &b)
{
    const SystemConfig &c = b.system;
    const Geometry &g = c.geometry;
    const SolverSettings &s = b.solver;
    std::ostringstream o;
    o << "[system]\n"
      << "n_tx = " << c.n_tx << "\n"
      << "n_irs = " << c.n_irs << "\n"
      << "n_rf = " << c.n_rf << "\n"
      << "users_per_cluster = " << join(c.users_per_cluster) << "\n"
      << "carrier_freq_hz = " << fmt(c.carrier_freq_hz) << "\n"
      << "quant_bits = " << c.quant_bits << "\n"
      << "tx_gain = " << fmt(c.tx_gain) << "\n";
    if (c.rx_gain_db)
        o << "rx_gain_db = " << fmt(*c.rx_gain_db) << "\n";
    o << "absorption_per_m = " << fmt(c.absorption_per_m) << "\n"
      << "noise_power_w = " << fmt(c.noise_power_w) << "\n"
      << "total_power_w = " << fmt(c.total_power_w) << "\n"
      << "min_rate = " << fmt(c.min_rate) << "\n"
      << "path_comp = " << fmt(c.path_comp) << "\n"
      << "architecture = " << to_string(c.architecture) << "\n";
    if (c.element_spacing_m)
        o << "element_spacing_m = " << fmt(*c.element_spacing_m) << "\n";
    o << "rf_chain_power_w = " << fmt(c.rf_chain_power_w) << "\n"
      << "phase_shifter_power_w = " << fmt(c.phase_shifter_power_w) << "\n"
      << "baseband_power_w = " << fmt(c.baseband_power_w) << "\n"
      << "cluster_corr_threshold = " << fmt(c.cluster_corr_threshold) << "\n\n";

    o << "[scenario]\n"
      << "seed = " << b.scenario.seed << "\n"
      << "bs_irs_distance_m = " << fmt(g.bs_irs_distance_m) << "\n"
      << "eve_distance_m = " << fmt(g.eve_distance_m) << "\n"
      << "cluster_distance_m = " << fmt(g.cluster_distance_m) << "\n"
      << "cluster_radius_m = " << fmt(g.cluster_radius_m) << "\n";
    if (g.eve_angle_rad)
        o << "eve_angle_rad = " << fmt(*g.eve_angle_rad) << "\n";
    if (g.bs_aod_rad)
        o << "bs_aod_rad = " << fmt(*g.bs_aod_rad) << "\n";
    if (g.irs_aoa_rad)
        o << "irs_aoa_rad = " << fmt(*g.irs_aoa_rad) << "\n";
    std::vector<double> dist, ang;
    for (const auto &u : b.scenario.users)
    {
        dist.push_back(u.distance_m);
        ang.push_back(u.angle_rad);
    }
    o << "user_distances_m = " << join(dist) << "\n"
      << "user_angles_rad = " << join(ang) << "\n"
      << "user_clusters = " << join(b.scenario.placement_cluster) << "\n\n";

    o << "[solver]\n"
      << "outer_max = " << s.outer_max << "\n"
      << "power_max = " << s.power_max << "\n"
      << "phase_max = " << s.phase_max << "\n"
      << "rel_tol = " << fmt(s.rel_tol) << "\n"
      << "sdp_tol = " << fmt(s.sdp_tol) << "\n"
      << "randomizations = " << s.randomizations << "\n"
      << "phase_seed = " << s.phase_seed << "\n"
      << "armijo_c = " << fmt(s.armijo_c) << "\n"
      << "armijo_shrink = " << fmt(s.armijo_shrink) << "\n"
      << "first_order_max = " << s.first_order_max << "\n"
      << "projection_max = " << s.projection_max << "\n"
      << "projection_tol = " << fmt(s.projection_tol) << "\n"
      << "init = " << (s.init.random ? "random:" + std::to_string(s.init.seed) : std::string("identity")) << "\n"
      << "refine_projection = " << (s.refine_projection ? "true" : "false") << "\n"
      << "freeze_analog = " << (s.freeze_analog ? "true" : "false") << "\n";
    return o.str();
}

} // namespace irssec
