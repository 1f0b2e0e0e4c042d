#include "risra/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace risra {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Neumaier compensated summation.
class CompensatedSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

int resolve_workers(int workers, int jobs)
{
    if (workers <= 0)
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::max(1, std::min(workers, jobs));
}

// Calls fn(i) for i in [0, count), striding indices across workers.
template <class Fn>
void parallel_for(int count, int workers, Fn&& fn)
{
    workers = resolve_workers(workers, count);
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < count; i += workers)
                        fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e)
            std::rethrow_exception(e);
    }
}

int as_integer(double value, const char* what)
{
    const double r = std::round(value);
    if (r != value || r < 1 || r > 1e9)
        throw std::invalid_argument(std::string(what) + " axis value " + num(value) +
                                    " is not a positive integer");
    return static_cast<int>(r);
}

} // namespace

PowerParams ScenarioConfig::power_params() const
{
    PowerParams p = power;
    p.mtd_tx_power = radio.mtd_tx_power;
    return p;
}

void ScenarioConfig::validate_for(const PolicyKind& p) const
{
    ris.validate();
    ap.validate();
    if (!(mtd_distance.lo > 0.0) || !(mtd_distance.lo <= mtd_distance.hi))
        throw std::invalid_argument("mtd.d_min_m must be > 0 and <= mtd.d_max_m");
    if (!(mtd_angle.lo >= 0.0) || !(mtd_angle.lo <= mtd_angle.hi) ||
        !(mtd_angle.hi <= std::numbers::pi / 2))
        throw std::invalid_argument(
            "mtd.angle_min_rad/mtd.angle_max_rad must satisfy 0 <= min <= max <= pi/2");
    if (!(mtd_gain > 0.0))
        throw std::invalid_argument("mtd.gain_db must give a positive gain");
    radio.validate();
    power_params().validate();
    timing().validate();
    if (!std::isfinite(estimation_c) || estimation_c < 0.0)
        throw std::invalid_argument("estimation.c must be a finite value >= 0");
    if (!(estimation_noise_std >= 0.0) || !std::isfinite(estimation_noise_std))
        throw std::invalid_argument("estimation.noise_std must be >= 0");
    if (devices < 1)
        throw std::invalid_argument("scenario.k must be >= 1");
    if (trials < 1)
        throw std::invalid_argument("scenario.trials must be >= 1");
    if (p.kind == Policy::sscp && p.sscp_replicas < 1)
        throw std::invalid_argument("policy.sscp_s must be >= 1");
    if (p.kind == Policy::sscp && p.sscp_replicas > slots)
        throw std::invalid_argument("policy.sscp_s (" + std::to_string(p.sscp_replicas) +
                                    ") exceeds scenario.s (" + std::to_string(slots) +
                                    "); lower sscp_s or raise s");
    if (slots < p.min_slots())
        throw std::invalid_argument(p.name() + " needs scenario.s >= " +
                                    std::to_string(p.min_slots()) + ", got " +
                                    std::to_string(slots));
}

void ScenarioConfig::validate() const
{
    validate_for(policy);
}

int TrialResult::total_replicas() const
{
    int total = 0;
    for (int r : replica_counts)
        total += r;
    return total;
}

ChannelRealization draw_channel(const ScenarioConfig& cfg, std::uint64_t trial,
                                bool need_quality)
{
    ChannelRealization ch;
    Rng placement_rng = Rng::substream(cfg.seed, trial, StreamTag::placement);
    ch.placements = sample_mtd_placements(placement_rng, cfg.devices, cfg.mtd_distance,
                                          cfg.mtd_angle, cfg.mtd_gain);
    ch.snr = snr_matrix(cfg.ris, cfg.ap, cfg.radio, ch.placements, phase_shift_set(cfg.slots));
    if (need_quality) {
        if (cfg.estimation_c == 1.0 && cfg.estimation_noise_std == 0.0) {
            ch.quality = perfect_quality(ch.snr);
        } else {
            Rng quality_rng = Rng::substream(cfg.seed, trial, StreamTag::quality);
            const std::vector<double> c(cfg.devices, cfg.estimation_c);
            const std::vector<double> noise(cfg.devices, cfg.estimation_noise_std);
            ch.quality = measure_quality(ch.snr, c, noise, quality_rng);
        }
    }
    return ch;
}

TrialResult evaluate_policy(const ScenarioConfig& cfg, const PolicyKind& policy,
                            const ChannelRealization& channel, std::uint64_t trial)
{
    const bool training = policy.requires_training();
    if (training && !channel.quality)
        throw std::invalid_argument(policy.name() + " needs a channel drawn with qualities");

    Rng access_rng = Rng::substream(
        cfg.seed, trial, static_cast<std::uint64_t>(StreamTag::access) + policy.stream_offset());
    const AccessDecision decision =
        decide_access(policy, training ? &*channel.quality : nullptr, access_rng, cfg.devices,
                      cfg.slots);
    const SlotOccupancy occupancy = build_occupancy(decision, cfg.slots);

    TrialResult out;
    out.decode = sic_decode(occupancy, channel.snr, cfg.radio.snr_threshold);
    out.successes = count_successes(out.decode);
    out.replica_counts = decision.replica_counts();
    const FrameMetrics m =
        frame_metrics(cfg.power_params(), cfg.timing(), cfg.ris.elements(), out.successes,
                      out.replica_counts, training, cfg.always_charge_training);
    out.power = m.power;
    out.throughput = m.throughput;
    out.energy_efficiency = m.energy_efficiency;
    return out;
}

TrialResult simulate_frame(const ScenarioConfig& cfg, std::uint64_t trial)
{
    cfg.validate();
    const ChannelRealization channel = draw_channel(cfg, trial, cfg.policy.requires_training());
    return evaluate_policy(cfg, cfg.policy, channel, trial);
}

AggregateResult aggregate(std::span<const TrialSummary> trials, std::uint64_t seed)
{
    AggregateResult out;
    out.seed = seed;
    out.trials = static_cast<int>(trials.size());
    if (trials.empty())
        return out;
    const double n = static_cast<double>(trials.size());

    CompensatedSum sum_a, sum_g, sum_p, sum_ratio, sum_rep;
    for (const auto& t : trials) {
        sum_a.add(t.successes);
        sum_g.add(t.throughput);
        sum_p.add(t.power);
        sum_ratio.add(t.throughput / t.power);
        sum_rep.add(t.replicas);
    }
    out.mean_A = sum_a.value() / n;
    out.mean_G = sum_g.value() / n;
    out.mean_P = sum_p.value() / n;
    out.mean_replicas = sum_rep.value() / n;
    out.ee_ratio_of_means = out.mean_G / out.mean_P;
    out.ee_mean_of_ratios = sum_ratio.value() / n;

    if (trials.size() > 1) {
        CompensatedSum sg, sp, sc;
        for (const auto& t : trials) {
            const double dg = t.throughput - out.mean_G;
            const double dp = t.power - out.mean_P;
            sg.add(dg * dg);
            sp.add(dp * dp);
            sc.add(dg * dp);
        }
        const double var_g = sg.value() / (n - 1);
        const double var_p = sp.value() / (n - 1);
        const double cov = sc.value() / (n - 1);
        out.ci95_G = kZ95 * std::sqrt(var_g / n);
        out.ci95_P = kZ95 * std::sqrt(var_p / n);
        const double r = out.ee_ratio_of_means;
        const double var_r =
            (var_g - 2.0 * r * cov + r * r * var_p) / (out.mean_P * out.mean_P * n);
        out.ci95_ee = kZ95 * std::sqrt(std::max(0.0, var_r));
    }
    return out;
}

std::vector<AggregateResult> run_policies(const ScenarioConfig& cfg,
                                          std::span<const PolicyKind> policies, int workers)
{
    for (const auto& p : policies)
        cfg.validate_for(p);
    const bool need_quality = std::any_of(policies.begin(), policies.end(),
                                          [](const PolicyKind& p) { return p.requires_training(); });

    const std::size_t np = policies.size();
    std::vector<TrialSummary> summaries(static_cast<std::size_t>(cfg.trials) * np);
    parallel_for(cfg.trials, workers, [&](int trial) {
        const ChannelRealization channel = draw_channel(cfg, trial, need_quality);
        for (std::size_t i = 0; i < np; ++i) {
            const TrialResult r = evaluate_policy(cfg, policies[i], channel, trial);
            summaries[i * cfg.trials + trial] = {r.successes, r.total_replicas(), r.throughput,
                                                 r.power.total()};
        }
    });

    std::vector<AggregateResult> out;
    out.reserve(np);
    for (std::size_t i = 0; i < np; ++i) {
        out.push_back(aggregate(
            std::span<const TrialSummary>(summaries).subspan(i * cfg.trials, cfg.trials),
            cfg.seed));
    }
    return out;
}

AggregateResult run_monte_carlo(const ScenarioConfig& cfg, int workers)
{
    const PolicyKind policies[] = {cfg.policy};
    return run_policies(cfg, policies, workers).front();
}

SweepAxis parse_axis(const std::string& name)
{
    if (name == "K" || name == "k")
        return SweepAxis::devices;
    if (name == "rho_mtd")
        return SweepAxis::mtd_tx_power;
    if (name == "N" || name == "n")
        return SweepAxis::elements;
    if (name == "S" || name == "s")
        return SweepAxis::slots;
    throw std::invalid_argument("unknown sweep axis '" + name +
                                "' (expected K, rho_mtd, N or S)");
}

std::string axis_name(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::devices:
        return "K";
    case SweepAxis::mtd_tx_power:
        return "rho_mtd";
    case SweepAxis::elements:
        return "N";
    case SweepAxis::slots:
        return "S";
    }
    return "?";
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value)
{
    ScenarioConfig cfg = base;
    switch (axis) {
    case SweepAxis::devices:
        cfg.devices = as_integer(value, "K");
        break;
    case SweepAxis::mtd_tx_power:
        if (!(value > 0.0))
            throw std::invalid_argument("rho_mtd axis value " + num(value) +
                                        " must be a positive power in watts");
        cfg.radio.mtd_tx_power = value;
        break;
    case SweepAxis::elements: {
        const int n = as_integer(value, "N");
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        if (side * side != n)
            throw std::invalid_argument("N axis value " + std::to_string(n) +
                                        " is not a perfect square (N_x = N_z is required)");
        cfg.ris.n_x = side;
        cfg.ris.n_z = side;
        break;
    }
    case SweepAxis::slots:
        cfg.slots = as_integer(value, "S");
        break;
    }
    return cfg;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, int workers)
{
    if (spec.values.empty())
        throw std::invalid_argument("sweep needs at least one axis value");
    if (spec.policies.empty())
        throw std::invalid_argument("sweep needs at least one policy");

    std::vector<ScenarioConfig> points;
    for (double v : spec.values) {
        points.push_back(apply_axis(spec.base, spec.axis, v));
        for (const auto& p : spec.policies)
            points.back().validate_for(p);
    }

    const std::size_t nv = spec.values.size();
    std::vector<SweepRow> rows(spec.policies.size() * nv);
    for (std::size_t j = 0; j < nv; ++j) {
        const auto results = run_policies(points[j], spec.policies, workers);
        for (std::size_t i = 0; i < spec.policies.size(); ++i) {
            SweepRow& row = rows[i * nv + j];
            row.policy = spec.policies[i];
            row.axis_value = spec.values[j];
            row.point = points[j];
            row.point.policy = spec.policies[i];
            row.result = results[i];
        }
    }
    for (std::size_t i = 0; i < spec.policies.size(); ++i) {
        std::stable_sort(rows.begin() + i * nv, rows.begin() + (i + 1) * nv,
                         [](const SweepRow& a, const SweepRow& b) {
                             return a.axis_value < b.axis_value;
                         });
    }
    return rows;
}

std::vector<OptimalS> optimal_over_s(const ScenarioConfig& base,
                                     std::span<const PolicyKind> policies,
                                     std::span<const int> s_values, int workers)
{
    if (s_values.empty())
        throw std::invalid_argument("optimal-S search needs at least one S value");
    if (policies.empty())
        throw std::invalid_argument("optimal-S search needs at least one policy");
    std::vector<int> grid(s_values.begin(), s_values.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<OptimalS> out(policies.size());
    for (std::size_t i = 0; i < policies.size(); ++i) {
        out[i].policy = policies[i];
        if (policies[i].min_slots() > grid.back())
            throw std::invalid_argument(policies[i].name() + " has no valid S in the grid (needs S >= " +
                                        std::to_string(policies[i].min_slots()) + ")");
    }

    // Every policy valid at S shares that S's channel draws.
    for (int slots : grid) {
        ScenarioConfig point = apply_axis(base, SweepAxis::slots, slots);
        std::vector<PolicyKind> active;
        std::vector<std::size_t> index;
        for (std::size_t i = 0; i < policies.size(); ++i) {
            if (slots >= policies[i].min_slots()) {
                active.push_back(policies[i]);
                index.push_back(i);
            }
        }
        if (active.empty())
            continue;
        const auto results = run_policies(point, active, workers);
        for (std::size_t j = 0; j < active.size(); ++j) {
            SweepRow row;
            row.policy = active[j];
            row.axis_value = slots;
            row.point = point;
            row.point.policy = active[j];
            row.result = results[j];
            out[index[j]].curve.push_back(std::move(row));
        }
    }

    for (auto& best : out) {
        const SweepRow* top_g = &best.curve.front();
        const SweepRow* top_ee = &best.curve.front();
        for (const auto& row : best.curve) {
            if (row.result.mean_G > top_g->result.mean_G)
                top_g = &row;
            if (row.result.ee_ratio_of_means > top_ee->result.ee_ratio_of_means)
                top_ee = &row;
        }
        best.best_throughput_slots = top_g->point.slots;
        best.best_ee_slots = top_ee->point.slots;
    }
    return out;
}

OptimalS optimal_over_s(const ScenarioConfig& cfg, std::span<const int> s_values, int workers)
{
    for (int slots : s_values)
        apply_axis(cfg, SweepAxis::slots, slots).validate();
    const PolicyKind policies[] = {cfg.policy};
    return optimal_over_s(cfg, policies, s_values, workers).front();
}

} // namespace risra
