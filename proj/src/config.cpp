#include "risra/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace risra {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

const std::string& lookup(const ConfigMap& config, const std::string& key)
{
    const auto it = config.find(key);
    if (it == config.end())
        throw ConfigError("missing configuration key '" + key + "'");
    return it->second;
}

double get_real(const ConfigMap& config, const std::string& key)
{
    const std::string& text = lookup(config, key);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
        throw ConfigError(key + " = '" + text + "' is not a finite number");
    return value;
}

long long get_integer(const ConfigMap& config, const std::string& key)
{
    const std::string& text = lookup(config, key);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(key + " = '" + text + "' is not an integer");
    return value;
}

int get_count(const ConfigMap& config, const std::string& key, long long min)
{
    const long long v = get_integer(config, key);
    if (v < min || v > 1'000'000'000)
        throw ConfigError(key + " = " + std::to_string(v) + " is out of range (must be >= " +
                          std::to_string(min) + ")");
    return static_cast<int>(v);
}

double get_positive(const ConfigMap& config, const std::string& key)
{
    const double v = get_real(config, key);
    if (!(v > 0.0))
        throw ConfigError(key + " must be > 0, got " + lookup(config, key));
    return v;
}

bool get_bool(const ConfigMap& config, const std::string& key)
{
    const std::string& text = lookup(config, key);
    if (text == "true" || text == "1" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "no")
        return false;
    throw ConfigError(key + " = '" + text + "' is not a boolean (use true or false)");
}

} // namespace

const std::vector<ConfigKey>& config_keys()
{
    static const std::vector<ConfigKey> keys = {
        {"scenario.k", "10", "contending devices K"},
        {"scenario.s", "20", "time slots S per block"},
        {"scenario.trials", "1000", "Monte Carlo frames"},
        {"scenario.seed", "1", "64-bit base seed"},
        {"ris.n_x", "10", "elements along x"},
        {"ris.n_z", "10", "elements along z"},
        {"ris.d_x_m", "0.1", "element width [m]"},
        {"ris.d_z_m", "0.1", "element height [m]"},
        {"radio.wavelength_m", "0.1", "carrier wavelength [m]"},
        {"radio.mtd_tx_power_w", "0.01", "device transmit power [W]"},
        {"radio.noise_power_dbm", "-94", "noise power [dBm]"},
        {"radio.snr_threshold_db", "0", "SIC decoding threshold [dB]"},
        {"ap.distance_m", "20", "AP distance from the surface [m]"},
        {"ap.angle_rad", "0.78539816339744828", "AP angle from boresight [rad]"},
        {"ap.gain_db", "5", "AP antenna gain [dB]"},
        {"mtd.d_min_m", "25", "minimum device distance [m]"},
        {"mtd.d_max_m", "100", "maximum device distance [m]"},
        {"mtd.angle_min_rad", "0", "minimum device angle [rad]"},
        {"mtd.angle_max_rad", "1.5707963267948966", "maximum device angle [rad]"},
        {"mtd.gain_db", "5", "device antenna gain [dB]"},
        {"policy.kind", "carp", "carp | sscp | crdsap | irsap"},
        {"policy.sscp_s", "2", "replicas per device for sscp"},
        {"estimation.c", "1.0", "downlink quality constant c_k"},
        {"estimation.noise_std", "0.0", "quality estimation error std"},
        {"power.ap_xi", "1.2", "AP inverse PA efficiency"},
        {"power.ap_tx_power_w", "0.1", "AP training transmit power [W]"},
        {"power.ap_static_dbw", "9", "AP static power [dBW]"},
        {"power.mtd_xi", "1.2", "device inverse PA efficiency"},
        {"power.mtd_static_w", "0.04", "device static power [W]"},
        {"power.phase_shifter_mw", "1.5", "per-element phase shifter power [mW]"},
        {"power.phase_shifter_bits", "3", "phase shifter resolution [bits]"},
        {"power.always_charge_training", "false", "charge AP training power to every policy"},
        {"timing.t_as_s", "1", "access slot duration [s]"},
        {"timing.r", "0.2", "training/access slot duration ratio"},
    };
    return keys;
}

ConfigMap default_config()
{
    ConfigMap out;
    for (const auto& k : config_keys())
        out[k.name] = k.default_value;
    return out;
}

void set_value(ConfigMap& config, const std::string& key, const std::string& value)
{
    bool known = false;
    for (const auto& k : config_keys())
        known = known || k.name == key;
    if (!known)
        throw ConfigError("unknown configuration key '" + key +
                          "' (run `risra_sim validate --verbose` to list keys)");
    if (value.empty())
        throw ConfigError("configuration key '" + key + "' has an empty value");
    config[key] = value;
}

void set_override(ConfigMap& config, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("override '" + std::string(assignment) + "' must look like key=value");
    set_value(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

ConfigMap parse_config_text(std::string_view text, ConfigMap base)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        if (body.find('=') == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        set_override(base, body);
    }
    return base;
}

ConfigMap load_config_file(const std::string& path, ConfigMap base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(base));
}

ScenarioConfig parse_config(const ConfigMap& c)
{
    ScenarioConfig cfg;
    cfg.devices = get_count(c, "scenario.k", 1);
    cfg.slots = get_count(c, "scenario.s", 1);
    cfg.trials = get_count(c, "scenario.trials", 1);
    {
        const std::string& text = lookup(c, "scenario.seed");
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ConfigError("scenario.seed = '" + text + "' is not an unsigned 64-bit integer");
        cfg.seed = seed;
    }

    cfg.ris.n_x = get_count(c, "ris.n_x", 1);
    cfg.ris.n_z = get_count(c, "ris.n_z", 1);
    cfg.ris.d_x = get_positive(c, "ris.d_x_m");
    cfg.ris.d_z = get_positive(c, "ris.d_z_m");
    cfg.ris.wavelength = get_positive(c, "radio.wavelength_m");
    if (cfg.ris.d_x > cfg.ris.wavelength || cfg.ris.d_z > cfg.ris.wavelength)
        throw ConfigError("ris.d_x_m and ris.d_z_m must not exceed radio.wavelength_m");

    cfg.radio.mtd_tx_power = get_positive(c, "radio.mtd_tx_power_w");
    cfg.radio.noise_power = dbm_to_watts(get_real(c, "radio.noise_power_dbm"));
    cfg.radio.snr_threshold = db_to_linear(get_real(c, "radio.snr_threshold_db"));

    cfg.ap.distance = get_positive(c, "ap.distance_m");
    cfg.ap.angle = get_real(c, "ap.angle_rad");
    cfg.ap.antenna_gain = db_to_linear(get_real(c, "ap.gain_db"));

    cfg.mtd_distance = {get_positive(c, "mtd.d_min_m"), get_positive(c, "mtd.d_max_m")};
    cfg.mtd_angle = {get_real(c, "mtd.angle_min_rad"), get_real(c, "mtd.angle_max_rad")};
    cfg.mtd_gain = db_to_linear(get_real(c, "mtd.gain_db"));

    const int sscp_s = get_count(c, "policy.sscp_s", 1);
    try {
        cfg.policy = PolicyKind::parse(lookup(c, "policy.kind"), sscp_s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("policy.kind: ") + e.what());
    }
    cfg.estimation_c = get_real(c, "estimation.c");
    cfg.estimation_noise_std = get_real(c, "estimation.noise_std");

    cfg.power.ap_pa_inverse_eff = get_real(c, "power.ap_xi");
    cfg.power.ap_tx_power = get_positive(c, "power.ap_tx_power_w");
    cfg.power.ap_static = dbw_to_watts(get_real(c, "power.ap_static_dbw"));
    cfg.power.mtd_pa_inverse_eff = get_real(c, "power.mtd_xi");
    cfg.power.mtd_static = get_positive(c, "power.mtd_static_w");
    cfg.power.phase_shifter_power = get_positive(c, "power.phase_shifter_mw") * 1e-3;
    cfg.power.phase_shifter_bits = get_count(c, "power.phase_shifter_bits", 1);
    cfg.always_charge_training = get_bool(c, "power.always_charge_training");

    cfg.access_slot = get_positive(c, "timing.t_as_s");
    cfg.training_ratio = get_real(c, "timing.r");

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

std::string format_config(const ConfigMap& config)
{
    std::string out;
    for (const auto& [key, value] : config)
        out += key + " = " + value + "\n";
    return out;
}

} // namespace risra
