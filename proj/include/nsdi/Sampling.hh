// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Sampling.hh
//! Microcanonical initial conditions of the symmetric two-electron complex.
#pragma once

#include <cstdint>
#include <random>

#include "Sym2e.hh"

namespace nsdi
{
//! Rectangle in (x, y) enclosing the classically allowed region
struct SamplingRegion
{
    double x_min{0};
    double x_max{0};
    double y_max{0};  //!< y ranges over (0, y_max]
};

/*!
 * Ensemble definition.
 *
 * Positions are uniform over {y > 0, V(x, y, 0) <= energy}, momentum
 * directions uniform on the circle with magnitude fixed by the energy, and
 * the carrier phase uniform on [0, 2 pi). For H = px^2 + py^2 + V the
 * momentum-space integral of delta(E - H) is pi for every allowed position,
 * so this is the microcanonical measure of the reduced phase space.
 */
struct EnsembleSpec
{
    double energy{-0.58};  //!< Total energy of the complex (a.u.)
    std::uint64_t n_samples{1};
    std::uint64_t master_seed{0};
    SamplingRegion region{};  //!< Zero-size region means auto-derive
    int retry_budget{10000};

    void validate() const;
    //! Region actually used: explicit one or the derived bounding box
    SamplingRegion resolved_region() const;
};

/*!
 * Bounding box of the zero-field allowed region at a negative energy.
 *
 * In polar form V(r, theta) = (1/(2 sin theta) - 4)/r, so the allowed
 * radius is largest on the y axis where it equals 3.5/|E|.
 */
SamplingRegion allowed_region_bounds(double energy);

//! Independent, reproducible random stream for one trajectory
using RandomStream = std::mt19937_64;
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index);

//! Uniform double on [0, 1)
double uniform01(RandomStream& rng);

struct InitialCondition
{
    SymState2e state;
    double phase{0};
};

//! Deterministic function of (spec.master_seed, index)
InitialCondition sample_initial(EnsembleSpec const& spec, std::uint64_t index);

}  // namespace nsdi
