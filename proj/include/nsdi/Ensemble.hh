// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Ensemble.hh
//! Deterministic parallel propagation of a sampled ensemble.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "Analysis.hh"
#include "Field.hh"
#include "Integrator.hh"
#include "Sampling.hh"

namespace nsdi
{
struct EnsembleRunConfig
{
    FieldParams field;  //!< Phase is drawn per trajectory
    EnsembleSpec ensemble;
    IntegratorConfig integrator;
    double phase_shift{0};  //!< Added to every sampled phase
    int threads{1};
};

//! Ensemble-mode integrator settings: pulse plus coda, no sample storage
IntegratorConfig ensemble_integrator_config(FieldParams const& field);

struct TrajectorySummary
{
    Outcome outcome;
    double phase{0};
    double crossing_time{0};  //!< NaN unless double ionized with a crossing
    double nearest_extremum{0};  //!< NaN when crossing_time is NaN
    std::size_t n_steps{0};
};

struct EnsembleResult
{
    std::vector<TrajectorySummary> trajectories;  //!< Indexed by sample
    std::uint64_t n_double{0};
    std::uint64_t n_bound{0};
    std::uint64_t n_rejected{0};

    std::vector<Outcome> outcomes() const;
};

//! Propagate and classify sample \c index of the ensemble
TrajectorySummary run_trajectory(EnsembleRunConfig const& config,
                                 std::uint64_t index);

using ProgressCallback = std::function<void(std::uint64_t done)>;

/*!
 * Run every sample on a pool of worker threads.
 *
 * Each sample depends only on (seed, index) and writes its own slot, so the
 * result is identical for any thread count.
 */
EnsembleResult run_ensemble(EnsembleRunConfig const& config,
                            ProgressCallback const& progress = {});

//! Apply fn(i) for i in [0, n) on up to \c threads workers
void parallel_for(std::uint64_t n,
                  int threads,
                  std::function<void(std::uint64_t)> const& fn);

//! Thread count from NSDI_THREADS, else hardware concurrency
int default_thread_count();

}  // namespace nsdi
