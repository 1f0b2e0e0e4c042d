#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risra/cli.hpp"

namespace py = pybind11;
using namespace risra;

namespace {

ConfigMap with_overrides(const std::map<std::string, std::string>& overrides)
{
    ConfigMap config = default_config();
    for (const auto& [key, value] : overrides)
        set_value(config, key, value);
    return config;
}

py::dict result_dict(const ResultRow& row)
{
    const AggregateResult& a = row.result;
    py::dict d;
    d["policy"] = row.policy;
    d["K"] = row.devices;
    d["S"] = row.slots;
    d["N"] = row.elements;
    d["rho_mtd_w"] = row.mtd_tx_power;
    d["trials"] = row.trials;
    d["seed"] = row.seed;
    d["mean_A"] = a.mean_A;
    d["mean_G"] = a.mean_G;
    d["ci95_G"] = a.ci95_G;
    d["mean_P_w"] = a.mean_P;
    d["ci95_P_w"] = a.ci95_P;
    d["ee_rom"] = a.ee_ratio_of_means;
    d["ee_mor"] = a.ee_mean_of_ratios;
    d["ci95_ee"] = a.ci95_ee;
    d["mean_replicas"] = a.mean_replicas;
    return d;
}

CommandRequest make_request(const std::string& command,
                            const std::map<std::string, std::string>& config,
                            const std::vector<std::string>& policies, const std::string& axis,
                            const std::vector<std::string>& values, int workers)
{
    CommandRequest req;
    req.command = command;
    req.config = with_overrides(config);
    req.policies = policies;
    req.axis = axis;
    req.values = values;
    req.workers = workers;
    return req;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Throughput and energy-efficiency simulator for RIS-aided random access";
    m.attr("__version__") = RISRA_VERSION;
    m.attr("CSV_HEADER") = std::string(kCsvHeader);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    // channel
    m.def("phase_shift_set", [](int slots) { return phase_shift_set(slots).angles; },
          py::arg("slots"));
    m.def(
        "array_factor",
        [](int n_x, int n_z, double d_x, double wavelength, double theta_k, double theta_s) {
            const RisGeometry ris{n_x, n_z, d_x, d_x, wavelength};
            ris.validate();
            return array_factor(ris, theta_k, theta_s);
        },
        py::arg("n_x"), py::arg("n_z"), py::arg("d_x"), py::arg("wavelength"), py::arg("theta_k"),
        py::arg("theta_s"));
    m.def("db_to_linear", &db_to_linear);
    m.def("dbm_to_watts", &dbm_to_watts);
    m.def("dbw_to_watts", &dbw_to_watts);

    // access
    m.def("carp_probabilities", [](const std::vector<double>& q) { return carp_probabilities(q); },
          py::arg("quality"));
    m.def("sscp_select",
          [](const std::vector<double>& q, int replicas) { return sscp_select(q, replicas); },
          py::arg("quality"), py::arg("replicas"));
    m.def("irsap_degree_pmf", &irsap_degree_pmf, py::arg("slots"));
    m.def("irsap_mean_degree", &irsap_mean_degree, py::arg("slots"));

    // receiver
    m.def(
        "sic_decode",
        [](const std::vector<std::vector<int>>& slot_devices,
           const std::vector<std::vector<double>>& snr, double threshold) {
            const std::size_t rows = snr.size();
            const std::size_t cols = rows ? snr.front().size() : slot_devices.size();
            Grid g(rows, cols);
            for (std::size_t k = 0; k < rows; ++k) {
                if (snr[k].size() != cols)
                    throw std::invalid_argument("snr rows must all have the same length");
                for (std::size_t s = 0; s < cols; ++s)
                    g(k, s) = snr[k][s];
            }
            const auto r = sic_decode(SlotOccupancy{slot_devices}, g, threshold);
            py::list trace;
            for (const auto& e : r.trace)
                trace.append(py::make_tuple(e.iteration, e.slot, e.device));
            py::dict d;
            d["decoded"] = r.decoded;
            d["iterations"] = r.iterations;
            d["trace"] = trace;
            return d;
        },
        py::arg("slot_devices"), py::arg("snr"), py::arg("threshold"),
        "slot_devices[s] lists the devices with a replica in slot s; snr[k][s] is linear.");

    // power_metrics
    m.def(
        "ap_power",
        [](int slots, bool training_used) {
            return ap_power(ScenarioConfig{}.power_params(), slots, training_used);
        },
        py::arg("slots"), py::arg("training_used") = true);
    m.def("ris_power", &ris_power, py::arg("elements"), py::arg("phase_shifter_power") = 1.5e-3);
    m.def(
        "mtd_power",
        [](int replicas) { return mtd_power(ScenarioConfig{}.power_params(), replicas); },
        py::arg("replicas"));
    m.def(
        "throughput",
        [](int successes, int slots, double access_slot, double training_ratio,
           bool training_used) {
            return throughput(successes, FrameTiming{access_slot, training_ratio, slots},
                              training_used);
        },
        py::arg("successes"), py::arg("slots"), py::arg("access_slot") = 1.0,
        py::arg("training_ratio") = 0.2, py::arg("training_used") = true);
    m.def("energy_efficiency", &energy_efficiency, py::arg("throughput"), py::arg("power"));

    // config and engine
    m.def("default_config", [] { return default_config(); });
    m.def(
        "resolve_config",
        [](const std::map<std::string, std::string>& config) {
            const ConfigMap c = with_overrides(config);
            parse_config(c);
            return c;
        },
        py::arg("config") = std::map<std::string, std::string>{},
        "Validated full configuration with defaults filled in.");
    m.def(
        "simulate_frame",
        [](const std::map<std::string, std::string>& config, std::uint64_t trial) {
            const ScenarioConfig cfg = parse_config(with_overrides(config));
            const TrialResult r = simulate_frame(cfg, trial);
            py::dict d;
            d["successes"] = r.successes;
            d["replica_counts"] = r.replica_counts;
            d["throughput"] = r.throughput;
            d["power"] = r.power.total();
            d["energy_efficiency"] = r.energy_efficiency;
            d["decoded"] = r.decode.decoded;
            return d;
        },
        py::arg("config") = std::map<std::string, std::string>{}, py::arg("trial") = 0);
    m.def(
        "execute",
        [](const std::string& command, const std::map<std::string, std::string>& config,
           const std::vector<std::string>& policies, const std::string& axis,
           const std::vector<std::string>& values, int workers) {
            const auto req = make_request(command, config, policies, axis, values, workers);
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = execute(req);
            }
            py::list out;
            for (const auto& row : rows)
                out.append(result_dict(row));
            return out;
        },
        py::arg("command"), py::arg("config") = std::map<std::string, std::string>{},
        py::arg("policies") = std::vector<std::string>{}, py::arg("axis") = "",
        py::arg("values") = std::vector<std::string>{}, py::arg("workers") = 0);
    m.def(
        "execute_csv",
        [](const std::string& command, const std::map<std::string, std::string>& config,
           const std::vector<std::string>& policies, const std::string& axis,
           const std::vector<std::string>& values, int workers) {
            const auto req = make_request(command, config, policies, axis, values, workers);
            py::gil_scoped_release release;
            return format_csv(execute(req));
        },
        py::arg("command"), py::arg("config") = std::map<std::string, std::string>{},
        py::arg("policies") = std::vector<std::string>{}, py::arg("axis") = "",
        py::arg("values") = std::vector<std::string>{}, py::arg("workers") = 0);
    m.def("expand_values", [](const std::string& spec) { return expand_values(spec); },
          py::arg("spec"));
}
