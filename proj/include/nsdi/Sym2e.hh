// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Sym2e.hh
//! Two electrons confined to the symmetric subspace (x, +-y, 0).
#pragma once

#include <array>

#include "Field.hh"

namespace nsdi
{
//---------------------------------------------------------------------------//
/*!
 * Reduced phase-space point of the symmetric two-electron configuration.
 *
 * Electron 1 sits at (x, y, 0) with momentum (px, py, 0) and electron 2 at
 * the mirror image (x, -y, 0), (px, -py, 0). The same struct carries phase
 * space velocities when returned from the equations of motion.
 */
struct SymState2e
{
    double x{0};
    double y{1};
    double px{0};
    double py{0};

    std::array<double, 4> as_array() const { return {x, y, px, py}; }
    static SymState2e from_array(std::array<double, 4> const& v)
    {
        return {v[0], v[1], v[2], v[3]};
    }
};

// Potential -4/r + 1/(2y) + 2 eps x at a frozen field value
double potential_sym2e(double x, double y, double eps);
double potential_sym2e(double x, double y, double t, FieldParams const& params);

// H = px^2 + py^2 + V: both electrons' kinetic energies, no factor 1/2
double hamiltonian_sym2e(SymState2e const& s, double eps);
double hamiltonian_sym2e(SymState2e const& s, double t, FieldParams const& params);

//! Gradient (dV/dx, dV/dy) of the potential
std::array<double, 2> gradient_sym2e(double x, double y, double eps);

/*!
 * Equations of motion: xdot = px, ydot = py, pdot = -grad V / 2.
 *
 * (px, py) are single-electron momenta, so H is the pair's total energy but
 * the canonical momenta conjugate to (x, y) are (2 px, 2 py). These are the
 * three-dimensional equations restricted to the symmetric subspace.
 */
SymState2e rhs_sym2e(SymState2e const& s, double eps);
SymState2e rhs_sym2e(SymState2e const& s, double t, FieldParams const& params);

//! Analytic saddle distance sqrt(sqrt(3)/|eps|); infinite at zero field
double saddle_radius_sym2e(double eps);

//---------------------------------------------------------------------------//
/*!
 * Symmetric-subspace dynamics bound to a field drive, for the integrator.
 */
class Sym2eSystem
{
  public:
    static constexpr std::size_t dim = 4;
    using Vector = std::array<double, dim>;

    explicit Sym2eSystem(Drive drive) : drive_(std::move(drive)) {}

    Vector derivative(Vector const& v, double t) const
    {
        return rhs_sym2e(SymState2e::from_array(v), drive_(t)).as_array();
    }
    double energy(Vector const& v, double t) const
    {
        return hamiltonian_sym2e(SymState2e::from_array(v), drive_(t));
    }
    //! Explicit time derivative dH/dt = 2 x d(eps)/dt
    double energy_rate(Vector const& v, double t) const
    {
        return 2 * v[0] * drive_.rate(t);
    }
    double radius(Vector const& v) const;
    double radial_velocity(Vector const& v) const;
    //! Smallest distance to a Coulomb singularity (nucleus or partner)
    double closest_approach(Vector const& v) const;
    double saddle_radius(double t) const
    {
        return saddle_radius_sym2e(drive_(t));
    }
    Drive const& drive() const { return drive_; }

  private:
    Drive drive_;
};

}  // namespace nsdi
