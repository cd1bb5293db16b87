// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/SaddlePerturbation.hh
//! Three-dimensional trajectories launched near the symmetric saddle.
#pragma once

#include <span>
#include <vector>

#include "Analysis.hh"
#include "Full3d.hh"
#include "Integrator.hh"
#include "Saddle.hh"

namespace nsdi
{
//! Departure from the symmetric launch, both along the symmetry-breaking mode
struct SaddlePerturbation
{
    double displacement{0};  //!< Position shift (a.u.)
    double momentum_tilt{0};  //!< Rotation of the momentum (rad)
};

/*!
 * Launch protocol for trajectories starting at the saddle.
 *
 * The pulse phase is chosen so that the field peaks at the pulse center,
 * where the run starts. Electron positions are the saddle pair displaced
 * along the symmetry-breaking unstable mode. The momentum has magnitude
 * fixed by \c energy and direction cos(tilt) * reaction + sin(tilt) *
 * symmetry-breaking, so zero tilt is a purely outward launch.
 */
struct SaddleLaunch
{
    FieldParams field;  //!< Phase is overwritten by the launch
    double energy{-0.58};
    SaddlePerturbation perturbation;
};

struct LaunchedState
{
    FieldParams field;  //!< With the phase actually used
    double t0{0};
    FullState2e state;
};

LaunchedState launch_from_saddle(SaddleLaunch const& launch);

struct PerturbedTrajectory
{
    SaddlePerturbation perturbation;
    EscapeClass outcome{EscapeClass::rejected};
    std::array<ElectronFate, 2> fates{};
    TrajectoryRecord<12> record;
};

/*!
 * Integrate one trajectory per perturbation and classify each.
 *
 * Records keep every sample only when config.record_samples is set.
 */
std::vector<PerturbedTrajectory>
perturbed_saddle_trajectories(FieldParams const& field,
                              double energy,
                              std::span<SaddlePerturbation const> perturbations,
                              IntegratorConfig const& config);

//! Coarse grid: displacement 0..0.5 by 0.05 times tilt 0..0.6 by 0.05
std::vector<SaddlePerturbation> default_perturbation_grid();

}  // namespace nsdi
