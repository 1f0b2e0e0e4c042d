#ifndef RISRA_CONFIG_HPP_
#define RISRA_CONFIG_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "risra/engine.hpp"

namespace risra {

/// Raised for any configuration problem; the message is one actionable line.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Resolved configuration as key -> literal text. Keeping the text (rather than
/// re-formatted numbers) is what makes manifest replay bit-exact.
using ConfigMap = std::map<std::string, std::string>;

struct ConfigKey
{
    std::string name;
    std::string default_value;
    std::string help;
};

/// Every accepted key with its baseline default.
const std::vector<ConfigKey>& config_keys();

ConfigMap default_config();

/// Flat "key = value" text; '#' starts a comment. Keys override `base`.
ConfigMap parse_config_text(std::string_view text, ConfigMap base = default_config());
ConfigMap load_config_file(const std::string& path, ConfigMap base = default_config());

/// Applies one "key=value" assignment; rejects unknown keys.
void set_override(ConfigMap& config, std::string_view assignment);
void set_value(ConfigMap& config, const std::string& key, const std::string& value);

/// Converts and validates. dB quantities become linear here and only here.
ScenarioConfig parse_config(const ConfigMap& config);

std::string format_config(const ConfigMap& config);

} // namespace risra

#endif /* RISRA_CONFIG_HPP_ */
