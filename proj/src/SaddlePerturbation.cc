// SPDX-License-Identifier: Apache-2.0
//! \file SaddlePerturbation.cc
#include "nsdi/SaddlePerturbation.hh"

#include <cmath>
#include <numbers>

#include "nsdi/Errors.hh"

namespace nsdi
{
LaunchedState launch_from_saddle(SaddleLaunch const& launch)
{
    launch.field.validate();
    if (launch.field.peak_field <= 0)
        throw InvalidArgument("saddle launch needs a non-zero field");

    LaunchedState result;
    result.field = launch.field;
    result.t0 = launch.field.duration / 2;
    // cos(omega t0 + phi) = 1 at the pulse center
    result.field.phase
        = std::remainder(-launch.field.omega * result.t0, 2 * std::numbers::pi);
    double const eps = effective_field(result.t0, result.field);

    auto const modes = saddle_modes_full3d(eps);
    auto const [r1, r2] = saddle_configuration(modes.saddle);
    Eigen::Matrix<double, 6, 1> q;
    q << r1[0], r1[1], r1[2], r2[0], r2[1], r2[2];
    auto const breaking = modes.symmetry_breaking.normalized();
    q += launch.perturbation.displacement * breaking;

    result.state.r1 = {q(0), q(1), q(2)};
    result.state.r2 = {q(3), q(4), q(5)};
    double const kinetic
        = launch.energy - potential_full3d(result.state.r1, result.state.r2, eps);
    if (!(kinetic >= 0))
    {
        throw NoSolution("launch energy lies below the local potential");
    }
    double const tilt = launch.perturbation.momentum_tilt;
    Eigen::Matrix<double, 6, 1> const p
        = std::sqrt(2 * kinetic)
          * (std::cos(tilt) * modes.reaction.normalized()
             + std::sin(tilt) * breaking);
    result.state.p1 = {p(0), p(1), p(2)};
    result.state.p2 = {p(3), p(4), p(5)};
    return result;
}

std::vector<PerturbedTrajectory>
perturbed_saddle_trajectories(FieldParams const& field,
                              double energy,
                              std::span<SaddlePerturbation const> perturbations,
                              IntegratorConfig const& config)
{
    std::vector<PerturbedTrajectory> result;
    result.reserve(perturbations.size());
    for (auto const& d : perturbations)
    {
        auto const launched = launch_from_saddle({field, energy, d});
        Full3dSystem const system{Drive{launched.field}};
        PerturbedTrajectory traj;
        traj.perturbation = d;
        traj.record = integrate(
            system, launched.state.as_array(), launched.t0, config);
        traj.outcome = classify_full3d(traj.record);
        if (traj.record.termination == Termination::completed)
        {
            traj.fates = electron_fates(
                FullState2e::from_array(traj.record.final().state));
        }
        result.push_back(std::move(traj));
    }
    return result;
}

std::vector<SaddlePerturbation> default_perturbation_grid()
{
    std::vector<SaddlePerturbation> grid;
    for (int j = 0; j <= 12; ++j)
    {
        for (int i = 0; i <= 10; ++i)
            grid.push_back({0.05 * i, 0.05 * j});
    }
    return grid;
}

}  // namespace nsdi
