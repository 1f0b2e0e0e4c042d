#ifndef RISRA_CLI_HPP_
#define RISRA_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "risra/config.hpp"

namespace risra {

/// Everything needed to (re)produce one CSV. Axis values are kept as text
/// so a manifest replays to the same doubles.
struct CommandRequest
{
    std::string command; ///< "run", "sweep" or "optimal-s"
    ConfigMap config = default_config();
    std::vector<std::string> policies; ///< empty: policy.kind from config
    std::string axis;                  ///< sweep only
    std::vector<std::string> values;   ///< sweep axis values or optimal-s S values
    int workers = 0;
    bool verbose = false;
};

struct ResultRow
{
    std::string policy;
    int devices = 0;
    int slots = 0;
    int elements = 0;
    double mtd_tx_power = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    AggregateResult result;
};

/// Column order of every emitted CSV.
inline constexpr std::string_view kCsvHeader =
    "policy,K,S,N,rho_mtd_w,trials,seed,mean_A,mean_G,ci95_G,mean_P_w,ci95_P_w,ee_rom,ee_mor";

/// "a:b:step" ranges (inclusive) or comma lists; returns the literal values.
std::vector<std::string> expand_values(std::string_view spec);

std::vector<PolicyKind> resolve_policies(const CommandRequest& request,
                                         const ScenarioConfig& cfg);

/// Runs the request. Data rows are sorted by (policy, axis value); optimal-s
/// appends "best_G:<policy>" and "best_ee:<policy>" summary rows. Progress
/// and decode traces go to `log` when verbose.
std::vector<ResultRow> execute(const CommandRequest& request, std::ostream* log = nullptr);

/// Header line plus one line per row, numbers with 9 significant digits.
std::string format_csv(const std::vector<ResultRow>& rows);

nlohmann::json make_manifest(const CommandRequest& request, const std::string& csv_path,
                             const std::string& manifest_path);
CommandRequest request_from_manifest(const nlohmann::json& manifest);

/// Writes via a temporary sibling and rename, so a failed run leaves no partial file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string manifest_path_for(const std::string& csv_path);

} // namespace risra

#endif /* RISRA_CLI_HPP_ */
