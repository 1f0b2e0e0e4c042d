#include "risra/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace risra {

namespace {

constexpr int kMaxSlotsSearched = 40;

std::string g9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_real(const std::string& text)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError("value '" + text + "' is not a number");
    return v;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

ResultRow make_row(const std::string& label, const ScenarioConfig& point,
                   const AggregateResult& result)
{
    ResultRow row;
    row.policy = label;
    row.devices = point.devices;
    row.slots = point.slots;
    row.elements = point.ris.elements();
    row.mtd_tx_power = point.radio.mtd_tx_power;
    row.trials = point.trials;
    row.seed = point.seed;
    row.result = result;
    return row;
}

double axis_value_of(const ResultRow& row, SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::devices:
        return row.devices;
    case SweepAxis::mtd_tx_power:
        return row.mtd_tx_power;
    case SweepAxis::elements:
        return row.elements;
    case SweepAxis::slots:
        return row.slots;
    }
    return 0.0;
}

void sort_rows(std::vector<ResultRow>& rows, SweepAxis axis)
{
    std::stable_sort(rows.begin(), rows.end(), [axis](const ResultRow& a, const ResultRow& b) {
        if (a.policy != b.policy)
            return a.policy < b.policy;
        return axis_value_of(a, axis) < axis_value_of(b, axis);
    });
}

void trace_point(std::ostream& log, const ScenarioConfig& point, const PolicyKind& policy)
{
    ScenarioConfig cfg = point;
    cfg.policy = policy;
    const TrialResult first = simulate_frame(cfg, 0);
    log << "# trace policy=" << policy.name() << " K=" << cfg.devices << " S=" << cfg.slots
        << " N=" << cfg.ris.elements() << " trial=0\niter,slot,device\n"
        << format_trace(first.decode);
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::vector<std::string> expand_values(std::string_view spec)
{
    std::vector<std::string> out;
    const std::string text = trim(spec);
    if (text.empty())
        throw ConfigError("empty value list");

    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == ':') {
                parts.push_back(trim(std::string_view(text).substr(start, i - start)));
                start = i + 1;
            }
        }
        if (parts.size() != 2 && parts.size() != 3)
            throw ConfigError("range '" + text + "' must be lo:hi or lo:hi:step");
        const double lo = to_real(parts[0]);
        const double hi = to_real(parts[1]);
        const double step = parts.size() == 3 ? to_real(parts[2]) : 1.0;
        if (!(step > 0.0) || hi < lo)
            throw ConfigError("range '" + text + "' needs lo <= hi and a positive step");
        const bool integral = lo == std::floor(lo) && step == std::floor(step);
        const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long long i = 0; i < count; ++i) {
            const double v = lo + static_cast<double>(i) * step;
            out.push_back(integral ? std::to_string(static_cast<long long>(v)) : g17(v));
        }
        return out;
    }

    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            const std::string item = trim(std::string_view(text).substr(start, i - start));
            to_real(item);
            out.push_back(item);
            start = i + 1;
        }
    }
    return out;
}

std::vector<PolicyKind> resolve_policies(const CommandRequest& request, const ScenarioConfig& cfg)
{
    if (request.policies.empty())
        return {cfg.policy};
    // parse_config has already range-checked this key.
    const int sscp_s = std::stoi(request.config.at("policy.sscp_s"));
    std::vector<PolicyKind> out;
    for (const auto& name : request.policies) {
        try {
            out.push_back(PolicyKind::parse(name, sscp_s));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("--policies: ") + e.what());
        }
    }
    return out;
}

std::vector<ResultRow> execute(const CommandRequest& request, std::ostream* log)
{
    const ScenarioConfig cfg = parse_config(request.config);
    const std::vector<PolicyKind> policies = resolve_policies(request, cfg);
    std::ostream* vlog = request.verbose ? log : nullptr;
    std::vector<ResultRow> rows;

    try {
        if (request.command == "run") {
            const auto results = run_policies(cfg, policies, request.workers);
            for (std::size_t i = 0; i < policies.size(); ++i) {
                ScenarioConfig point = cfg;
                point.policy = policies[i];
                rows.push_back(make_row(policies[i].name(), point, results[i]));
                if (vlog)
                    trace_point(*vlog, cfg, policies[i]);
            }
            sort_rows(rows, SweepAxis::devices);
        } else if (request.command == "sweep") {
            const SweepAxis axis = parse_axis(request.axis);
            if (request.values.empty())
                throw ConfigError("sweep needs --values");
            // Every point is validated before any work starts; points then run
            // one at a time so progress can be reported per point.
            std::vector<ScenarioConfig> points;
            for (const auto& v : request.values) {
                points.push_back(apply_axis(cfg, axis, to_real(v)));
                for (const auto& p : policies)
                    points.back().validate_for(p);
            }
            for (std::size_t j = 0; j < points.size(); ++j) {
                const auto results = run_policies(points[j], policies, request.workers);
                for (std::size_t i = 0; i < policies.size(); ++i) {
                    ScenarioConfig point = points[j];
                    point.policy = policies[i];
                    rows.push_back(make_row(policies[i].name(), point, results[i]));
                    if (vlog)
                        trace_point(*vlog, points[j], policies[i]);
                }
                if (vlog)
                    *vlog << "point " << j + 1 << "/" << points.size() << "\n";
            }
            sort_rows(rows, axis);
        } else if (request.command == "optimal-s") {
            std::vector<int> grid;
            if (request.values.empty()) {
                for (int s = 1; s <= kMaxSlotsSearched; ++s)
                    grid.push_back(s);
            } else {
                // Explicit grids must be valid for every requested policy.
                for (const auto& v : request.values) {
                    const double s = to_real(v);
                    if (s != std::floor(s) || s < 1)
                        throw ConfigError("S value '" + v + "' is not a positive integer");
                    grid.push_back(static_cast<int>(s));
                    for (const auto& p : policies)
                        apply_axis(cfg, SweepAxis::slots, s).validate_for(p);
                }
            }
            const std::vector<OptimalS> best =
                optimal_over_s(cfg, policies, grid, request.workers);
            for (const auto& b : best) {
                for (const auto& row : b.curve)
                    rows.push_back(make_row(b.policy.name(), row.point, row.result));
            }
            sort_rows(rows, SweepAxis::slots);
            for (const auto& b : best) {
                for (const auto& row : b.curve) {
                    if (row.point.slots == b.best_throughput_slots)
                        rows.push_back(make_row("best_G:" + b.policy.name(), row.point, row.result));
                }
                for (const auto& row : b.curve) {
                    if (row.point.slots == b.best_ee_slots)
                        rows.push_back(make_row("best_ee:" + b.policy.name(), row.point, row.result));
                }
            }
        } else {
            throw ConfigError("unknown command '" + request.command + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return rows;
}

std::string format_csv(const std::vector<ResultRow>& rows)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        const AggregateResult& a = r.result;
        out += r.policy + ',' + std::to_string(r.devices) + ',' + std::to_string(r.slots) + ',' +
               std::to_string(r.elements) + ',' + g9(r.mtd_tx_power) + ',' +
               std::to_string(r.trials) + ',' + std::to_string(r.seed) + ',' + g9(a.mean_A) +
               ',' + g9(a.mean_G) + ',' + g9(a.ci95_G) + ',' + g9(a.mean_P) + ',' +
               g9(a.ci95_P) + ',' + g9(a.ee_ratio_of_means) + ',' + g9(a.ee_mean_of_ratios) +
               '\n';
    }
    return out;
}

nlohmann::json make_manifest(const CommandRequest& request, const std::string& csv_path,
                             const std::string& manifest_path)
{
    const ScenarioConfig cfg = parse_config(request.config);
    nlohmann::json m;
    m["tool"] = "risra_sim";
    m["version"] = RISRA_VERSION;
    m["timestamp"] = utc_timestamp();
    m["command"] = request.command;
    m["seed"] = cfg.seed;
    m["config"] = request.config;
    m["policies"] = request.policies;
    if (!request.axis.empty())
        m["axis"] = request.axis;
    m["values"] = request.values;
    nlohmann::json r_eff = nlohmann::json::object();
    for (const auto& p : resolve_policies(request, cfg))
        r_eff[p.name()] = cfg.effective_training_ratio(p);
    m["r_effective"] = r_eff;
    m["outputs"] = {{"csv", csv_path}, {"manifest", manifest_path}};
    return m;
}

CommandRequest request_from_manifest(const nlohmann::json& manifest)
{
    CommandRequest req;
    try {
        req.command = manifest.at("command").get<std::string>();
        ConfigMap config = default_config();
        for (const auto& [key, value] : manifest.at("config").items())
            set_value(config, key, value.get<std::string>());
        req.config = std::move(config);
        req.policies = manifest.value("policies", std::vector<std::string>{});
        req.axis = manifest.value("axis", std::string{});
        req.values = manifest.value("values", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
    return req;
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write output file '" + path + "'");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw std::runtime_error("failed while writing '" + path + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at '" + path + "'");
    }
}

std::string manifest_path_for(const std::string& csv_path)
{
    return csv_path + ".manifest.json";
}

} // namespace risra
