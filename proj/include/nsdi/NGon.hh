// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/NGon.hh
//! N electrons on a regular polygon perpendicular to the field axis.
#pragma once

#include <array>

#include "Field.hh"

namespace nsdi
{
//---------------------------------------------------------------------------//
/*!
 * Reduced state of the C_Nv-symmetric N-electron configuration.
 *
 * All electrons share (rho, z, p_rho, p_z); azimuthal momenta vanish.
 * The field points along z and the nucleus carries charge N.
 */
struct NGonState
{
    int n_electrons{2};
    double rho{1};
    double z{0};
    double p_rho{0};
    double p_z{0};

    std::array<double, 4> as_array() const { return {rho, z, p_rho, p_z}; }
    static NGonState from_array(int n, std::array<double, 4> const& v)
    {
        return {n, v[0], v[1], v[2], v[3]};
    }
};

//! N(N-1) / (4 sin(pi/N)): total pairwise repulsion times rho
double ngon_repulsion_coefficient(int n_electrons);

// -N^2/r + c_N/rho + N z eps
double potential_ngon(double rho, double z, int n_electrons, double eps);
double potential_ngon(
    double rho, double z, double t, int n_electrons, FieldParams const& params);

// N (p_rho^2 + p_z^2)/2 + V
double hamiltonian_ngon(NGonState const& s, double eps);
double hamiltonian_ngon(NGonState const& s, double t, FieldParams const& params);

//! (dV/drho, dV/dz)
std::array<double, 2>
gradient_ngon(double rho, double z, int n_electrons, double eps);

//! Second derivatives [[V_rr, V_rz], [V_zr, V_zz]] in (rho, z)
std::array<std::array<double, 2>, 2>
hessian_ngon(double rho, double z, int n_electrons, double eps);

//! rhodot = p_rho, zdot = p_z, pdot = -grad V / N (per-electron momenta)
NGonState rhs_ngon(NGonState const& s, double eps);
NGonState rhs_ngon(NGonState const& s, double t, FieldParams const& params);

//! Closed-form saddle distance; infinite if no saddle exists
double ngon_saddle_radius(int n_electrons, double eps);

//---------------------------------------------------------------------------//
class NGonSystem
{
  public:
    static constexpr std::size_t dim = 4;
    using Vector = std::array<double, dim>;

    NGonSystem(int n_electrons, Drive drive);

    Vector derivative(Vector const& v, double t) const
    {
        return rhs_ngon(NGonState::from_array(n_, v), drive_(t)).as_array();
    }
    double energy(Vector const& v, double t) const
    {
        return hamiltonian_ngon(NGonState::from_array(n_, v), drive_(t));
    }
    //! dH/dt = N z d(eps)/dt
    double energy_rate(Vector const& v, double t) const
    {
        return n_ * v[1] * drive_.rate(t);
    }
    double radius(Vector const& v) const;
    double radial_velocity(Vector const& v) const;
    double closest_approach(Vector const& v) const;
    double saddle_radius(double t) const
    {
        return ngon_saddle_radius(n_, drive_(t));
    }
    int n_electrons() const { return n_; }
    Drive const& drive() const { return drive_; }

  private:
    int n_;
    Drive drive_;
};

}  // namespace nsdi
