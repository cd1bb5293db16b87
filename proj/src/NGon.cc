// SPDX-License-Identifier: Apache-2.0
//! \file NGon.cc
#include "nsdi/NGon.hh"

#include <cmath>
#include <limits>
#include <numbers>

#include "nsdi/Errors.hh"

namespace nsdi
{
namespace
{
void check_nonsingular(double rho, double z, int n)
{
    if (n < 2)
    {
        throw InvalidArgument("n-gon requires at least two electrons");
    }
    if (!(rho > 0))
    {
        throw SingularEvaluation("n-gon requires rho > 0");
    }
    if (rho * rho + z * z == 0)
    {
        throw SingularEvaluation("electrons at the nucleus");
    }
}
}  // namespace

double ngon_repulsion_coefficient(int n_electrons)
{
    if (n_electrons < 2)
    {
        throw InvalidArgument("n-gon requires at least two electrons");
    }
    double const n = n_electrons;
    return n * (n - 1) / (4 * std::sin(std::numbers::pi / n));
}

double potential_ngon(double rho, double z, int n_electrons, double eps)
{
    check_nonsingular(rho, z, n_electrons);
    double const n = n_electrons;
    double v = -n * n / std::hypot(rho, z)
               + ngon_repulsion_coefficient(n_electrons) / rho + n * z * eps;
    if (!std::isfinite(v))
    {
        throw SingularEvaluation("non-finite n-gon potential");
    }
    return v;
}

double potential_ngon(
    double rho, double z, double t, int n_electrons, FieldParams const& params)
{
    return potential_ngon(rho, z, n_electrons, effective_field(t, params));
}

double hamiltonian_ngon(NGonState const& s, double eps)
{
    return s.n_electrons * (s.p_rho * s.p_rho + s.p_z * s.p_z) / 2
           + potential_ngon(s.rho, s.z, s.n_electrons, eps);
}

double hamiltonian_ngon(NGonState const& s, double t, FieldParams const& params)
{
    return hamiltonian_ngon(s, effective_field(t, params));
}

std::array<double, 2>
gradient_ngon(double rho, double z, int n_electrons, double eps)
{
    check_nonsingular(rho, z, n_electrons);
    double const n = n_electrons;
    double const r2 = rho * rho + z * z;
    double const attract = n * n / (r2 * std::sqrt(r2));
    double const c = ngon_repulsion_coefficient(n_electrons);
    return {attract * rho - c / (rho * rho), attract * z + n * eps};
}

std::array<std::array<double, 2>, 2>
hessian_ngon(double rho, double z, int n_electrons, double /* eps */)
{
    check_nonsingular(rho, z, n_electrons);
    double const n2 = static_cast<double>(n_electrons) * n_electrons;
    double const r2 = rho * rho + z * z;
    double const r = std::sqrt(r2);
    double const inv_r3 = 1 / (r2 * r);
    double const inv_r5 = inv_r3 / r2;
    double const c = ngon_repulsion_coefficient(n_electrons);
    double const rz = -3 * n2 * rho * z * inv_r5;
    return {{{n2 * (inv_r3 - 3 * rho * rho * inv_r5) + 2 * c / (rho * rho * rho),
              rz},
             {rz, n2 * (inv_r3 - 3 * z * z * inv_r5)}}};
}

NGonState rhs_ngon(NGonState const& s, double eps)
{
    auto const grad = gradient_ngon(s.rho, s.z, s.n_electrons, eps);
    double const n = s.n_electrons;
    return {s.n_electrons, s.p_rho, s.p_z, -grad[0] / n, -grad[1] / n};
}

NGonState rhs_ngon(NGonState const& s, double t, FieldParams const& params)
{
    return rhs_ngon(s, effective_field(t, params));
}

double ngon_saddle_radius(int n_electrons, double eps)
{
    double const n2 = static_cast<double>(n_electrons) * n_electrons;
    double const c = ngon_repulsion_coefficient(n_electrons);
    if (eps == 0 || c >= n2)
        return std::numeric_limits<double>::infinity();
    // Critical-point conditions in polar form give sin^3(theta) = c / N^2
    // and r^2 = N |cos(theta)| / |eps|.
    double const s = std::cbrt(c / n2);
    double const cos_theta = std::sqrt(1 - s * s);
    return std::sqrt(n_electrons * cos_theta / std::fabs(eps));
}

//---------------------------------------------------------------------------//
NGonSystem::NGonSystem(int n_electrons, Drive drive)
    : n_(n_electrons), drive_(std::move(drive))
{
    if (n_ < 2)
    {
        throw InvalidArgument("n-gon requires at least two electrons");
    }
}

double NGonSystem::radius(Vector const& v) const
{
    return std::hypot(v[0], v[1]);
}

double NGonSystem::radial_velocity(Vector const& v) const
{
    return (v[0] * v[2] + v[1] * v[3]) / this->radius(v);
}

double NGonSystem::closest_approach(Vector const& v) const
{
    // Neighbouring electrons are 2 rho sin(pi/N) apart
    return std::fmin(std::hypot(v[0], v[1]),
                     2 * v[0] * std::sin(std::numbers::pi / n_));
}

}  // namespace nsdi
