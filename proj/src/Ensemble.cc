// SPDX-License-Identifier: Apache-2.0
//! \file Ensemble.cc
#include "nsdi/Ensemble.hh"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "nsdi/Errors.hh"
#include "nsdi/Sym2e.hh"

namespace nsdi
{
IntegratorConfig ensemble_integrator_config(FieldParams const& field)
{
    auto config = default_integrator_config(field);
    config.record_samples = false;
    // Field-free after the pulse: negative energy can never escape
    config.stop_when_bound_after_pulse = true;
    return config;
}

std::vector<Outcome> EnsembleResult::outcomes() const
{
    std::vector<Outcome> result;
    result.reserve(trajectories.size());
    for (auto const& t : trajectories)
        result.push_back(t.outcome);
    return result;
}

TrajectorySummary
run_trajectory(EnsembleRunConfig const& config, std::uint64_t index)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    auto const initial = sample_initial(config.ensemble, index);

    FieldParams field = config.field;
    field.phase = initial.phase + config.phase_shift;
    Sym2eSystem const system{Drive{field}};

    TrajectorySummary summary;
    summary.phase = field.phase;
    summary.crossing_time = nan;
    summary.nearest_extremum = nan;

    TrajectoryRecord<4> record;
    try
    {
        record = integrate(system, initial.state.as_array(), 0.0, config.integrator);
    }
    catch (SingularEvaluation const&)
    {
        summary.outcome.tag = OutcomeTag::rejected;
        return summary;
    }
    summary.n_steps = record.n_accepted;
    summary.outcome
        = classify(record, system, {config.integrator.escape_radius});
    if (summary.outcome.tag == OutcomeTag::double_ionized)
    {
        if (auto t = escape_crossing_time(record, system, config.integrator))
        {
            summary.crossing_time = *t;
            summary.nearest_extremum = nearest_field_extremum(*t, field);
        }
    }
    return summary;
}

EnsembleResult
run_ensemble(EnsembleRunConfig const& config, ProgressCallback const& progress)
{
    config.field.validate();
    config.ensemble.validate();
    config.integrator.validate();

    auto const n = config.ensemble.n_samples;
    EnsembleResult result;
    result.trajectories.resize(n);

    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;
    parallel_for(n, config.threads, [&](std::uint64_t i) {
        result.trajectories[i] = run_trajectory(config, i);
        auto const finished = ++done;
        if (progress)
        {
            std::lock_guard lock(progress_mutex);
            progress(finished);
        }
    });

    for (auto const& t : result.trajectories)
    {
        switch (t.outcome.tag)
        {
            case OutcomeTag::double_ionized:
                ++result.n_double;
                break;
            case OutcomeTag::bound_complex:
                ++result.n_bound;
                break;
            case OutcomeTag::rejected:
                ++result.n_rejected;
                break;
        }
    }
    return result;
}

void parallel_for(std::uint64_t n,
                  int threads,
                  std::function<void(std::uint64_t)> const& fn)
{
    if (threads < 1)
        throw InvalidArgument("thread count must be positive");
    auto const n_workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true)
        {
            auto const i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
                return;
            }
        }
    };

    if (n_workers <= 1)
    {
        work();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);
}

int default_thread_count()
{
    if (char const* env = std::getenv("NSDI_THREADS"))
    {
        int const value = std::atoi(env);
        if (value > 0)
            return value;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace nsdi
