// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Full3d.hh
//! Unconstrained three-dimensional two-electron dynamics, nuclear charge 2.
#pragma once

#include <array>

#include "Field.hh"
#include "Sym2e.hh"

namespace nsdi
{
using Vec3 = std::array<double, 3>;

//---------------------------------------------------------------------------//
/*!
 * Twelve-dimensional phase-space point of both electrons.
 *
 * H = |p1|^2/2 + |p2|^2/2 - 2/|r1| - 2/|r2| + 1/|r1 - r2| + eps (x1 + x2).
 * This is the form that reduces to the symmetric-subspace Hamiltonian when
 * r1 = (x, y, 0), r2 = (x, -y, 0), p1 = (px, py, 0), p2 = (px, -py, 0).
 */
struct FullState2e
{
    Vec3 r1{};
    Vec3 r2{};
    Vec3 p1{};
    Vec3 p2{};

    std::array<double, 12> as_array() const;
    static FullState2e from_array(std::array<double, 12> const& v);
};

//! Mirror-symmetric embedding of a reduced state
FullState2e embed_symmetric(SymState2e const& s);

// Potential of the two-electron configuration (positions only)
double potential_full3d(Vec3 const& r1, Vec3 const& r2, double eps);

double hamiltonian_full3d(FullState2e const& s, double eps);
double
hamiltonian_full3d(FullState2e const& s, double t, FieldParams const& params);

//! Gradients (dV/dr1, dV/dr2)
std::array<Vec3, 2> gradient_full3d(Vec3 const& r1, Vec3 const& r2, double eps);

FullState2e rhs_full3d(FullState2e const& s, double eps);
FullState2e rhs_full3d(FullState2e const& s, double t, FieldParams const& params);

//---------------------------------------------------------------------------//
class Full3dSystem
{
  public:
    static constexpr std::size_t dim = 12;
    using Vector = std::array<double, dim>;

    explicit Full3dSystem(Drive drive) : drive_(std::move(drive)) {}

    Vector derivative(Vector const& v, double t) const;
    double energy(Vector const& v, double t) const
    {
        return hamiltonian_full3d(FullState2e::from_array(v), drive_(t));
    }
    //! dH/dt = (x1 + x2) d(eps)/dt
    double energy_rate(Vector const& v, double t) const
    {
        return (v[0] + v[3]) * drive_.rate(t);
    }
    //! Distance of the nearer electron from the nucleus
    double radius(Vector const& v) const;
    //! Radial velocity of the nearer electron
    double radial_velocity(Vector const& v) const;
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
