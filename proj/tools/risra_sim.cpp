// risra_sim: Monte Carlo runs, sweeps and optimal-S searches for
// RIS-aided random access, written as CSV plus a replay manifest.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "risra/cli.hpp"

namespace {

struct CommonOptions
{
    std::string config_path;
    std::vector<std::string> overrides;
    long long trials = 0;
    std::string seed;
    std::string out = "results.csv";
    std::string policies;
    std::string values;
    std::string axis;
    int workers = 0;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--config", o.config_path, "flat key = value config file");
    cmd->add_option("--set", o.overrides, "override one key (key=value), repeatable");
    cmd->add_option("--trials", o.trials, "Monte Carlo frames per point");
    cmd->add_option("--seed", o.seed, "64-bit base seed");
    cmd->add_option("--policies", o.policies, "comma list of carp,sscp,crdsap,irsap");
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    cmd->add_flag("--verbose", o.verbose, "progress lines and decode traces on stderr");
}

std::vector<std::string> split_commas(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            if (!item.empty())
                out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    return out;
}

risra::CommandRequest build_request(const std::string& command, const CommonOptions& o)
{
    risra::CommandRequest req;
    req.command = command;
    if (!o.config_path.empty())
        req.config = risra::load_config_file(o.config_path);
    for (const auto& s : o.overrides)
        risra::set_override(req.config, s);
    if (o.trials > 0)
        risra::set_value(req.config, "scenario.trials", std::to_string(o.trials));
    if (!o.seed.empty())
        risra::set_value(req.config, "scenario.seed", o.seed);
    req.policies = split_commas(o.policies);
    req.axis = o.axis;
    if (!o.values.empty())
        req.values = risra::expand_values(o.values);
    req.workers = o.workers;
    req.verbose = o.verbose;
    return req;
}

void emit(const risra::CommandRequest& req, const std::string& out)
{
    const auto rows = risra::execute(req, &std::cerr);
    const std::string csv = risra::format_csv(rows);
    const std::string manifest_path = risra::manifest_path_for(out);
    const std::string manifest = risra::make_manifest(req, out, manifest_path).dump(2) + "\n";
    risra::write_file_atomic(out, csv);
    risra::write_file_atomic(manifest_path, manifest);
    std::cerr << "wrote " << rows.size() << " rows to " << out << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Throughput and energy-efficiency simulator for RIS-aided random access"};
    app.require_subcommand(1);

    CommonOptions run_o, sweep_o, opt_o, val_o;
    std::string replay_path, replay_out;
    int replay_workers = 0;

    auto* run = app.add_subcommand("run", "simulate one scenario for each policy");
    add_common(run, run_o);
    run->add_option("--out", run_o.out, "CSV output path");

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter axis");
    add_common(sweep, sweep_o);
    sweep->add_option("--out", sweep_o.out, "CSV output path");
    sweep->add_option("--axis", sweep_o.axis, "K, rho_mtd, N or S")->required();
    sweep->add_option("--values", sweep_o.values, "lo:hi[:step] or comma list")->required();

    auto* opt = app.add_subcommand("optimal-s", "grid-search the number of slots");
    add_common(opt, opt_o);
    opt->add_option("--out", opt_o.out, "CSV output path");
    opt->add_option("--values", opt_o.values, "S grid (default: every valid S in 1..40)");

    auto* validate = app.add_subcommand("validate", "check a config and print it resolved");
    add_common(validate, val_o);

    auto* replay = app.add_subcommand("replay", "re-run a manifest and rewrite its CSV");
    replay->add_option("manifest", replay_path, "manifest JSON")->required();
    replay->add_option("--out", replay_out, "CSV output path (default: the recorded one)");
    replay->add_option("--workers", replay_workers, "worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            emit(build_request("run", run_o), run_o.out);
        } else if (*sweep) {
            emit(build_request("sweep", sweep_o), sweep_o.out);
        } else if (*opt) {
            emit(build_request("optimal-s", opt_o), opt_o.out);
        } else if (*validate) {
            const auto req = build_request("validate", val_o);
            const auto cfg = risra::parse_config(req.config);
            for (const auto& p : risra::resolve_policies(req, cfg))
                cfg.validate_for(p);
            std::cout << risra::format_config(req.config);
            if (val_o.verbose) {
                std::cout << "# keys\n";
                for (const auto& k : risra::config_keys())
                    std::cout << "# " << k.name << ": " << k.help << "\n";
            }
        } else if (*replay) {
            std::ifstream in(replay_path);
            if (!in)
                throw std::runtime_error("cannot read manifest '" + replay_path + "'");
            const auto manifest = nlohmann::json::parse(in);
            auto req = risra::request_from_manifest(manifest);
            req.workers = replay_workers;
            const std::string out = replay_out.empty()
                                        ? manifest.at("outputs").at("csv").get<std::string>()
                                        : replay_out;
            emit(req, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
