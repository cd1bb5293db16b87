// SPDX-License-Identifier: Apache-2.0
//! \file Sampling.cc
#include "nsdi/Sampling.hh"

#include <cmath>
#include <numbers>
#include <string>

#include "nsdi/Errors.hh"

namespace nsdi
{
void EnsembleSpec::validate() const
{
    if (n_samples < 1)
    {
        throw InvalidArgument("ensemble needs at least one sample");
    }
    if (!(energy < 0))
    {
        throw InvalidArgument(
            "bound-region sampling requires a negative energy, got "
            + std::to_string(energy));
    }
    if (retry_budget < 1)
    {
        throw InvalidArgument("retry budget must be positive");
    }
    auto const r = this->resolved_region();
    if (!(r.x_min < r.x_max) || !(r.y_max > 0))
    {
        throw InvalidArgument("sampling region is empty");
    }
}

SamplingRegion EnsembleSpec::resolved_region() const
{
    if (region.x_min == 0 && region.x_max == 0 && region.y_max == 0)
        return allowed_region_bounds(energy);
    return region;
}

SamplingRegion allowed_region_bounds(double energy)
{
    if (!(energy < 0))
    {
        throw InvalidArgument("allowed region is unbounded for energy >= 0");
    }
    double const extent = 3.5 / std::fabs(energy);
    return {-extent, extent, extent};
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return RandomStream{seq};
}

double uniform01(RandomStream& rng)
{
    // 53 random mantissa bits
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

InitialCondition sample_initial(EnsembleSpec const& spec, std::uint64_t index)
{
    if (index >= spec.n_samples)
    {
        throw InvalidArgument("sample index out of range");
    }
    auto const region = spec.resolved_region();
    auto rng = derive_stream(spec.master_seed, index);
    constexpr double two_pi = 2 * std::numbers::pi;

    for (int attempt = 0; attempt < spec.retry_budget; ++attempt)
    {
        double const x
            = region.x_min + (region.x_max - region.x_min) * uniform01(rng);
        double const y = region.y_max * (1 - uniform01(rng));
        double const v = potential_sym2e(x, y, 0.0);
        if (v > spec.energy)
            continue;

        double const p = std::sqrt(spec.energy - v);
        double const angle = two_pi * uniform01(rng);
        InitialCondition result;
        result.state = {x, y, p * std::cos(angle), p * std::sin(angle)};
        result.phase = two_pi * uniform01(rng);
        return result;
    }
    throw RejectionOverflow("no allowed position found in "
                            + std::to_string(spec.retry_budget)
                            + " attempts; check energy and region");
}

}  // namespace nsdi
