// SPDX-License-Identifier: Apache-2.0
//! \file Sym2e.cc
#include "nsdi/Sym2e.hh"

#include <cmath>
#include <limits>

#include "nsdi/Errors.hh"

namespace nsdi
{
namespace
{
void check_nonsingular(double x, double y)
{
    if (!(y > 0))
    {
        throw SingularEvaluation("symmetric subspace requires y > 0");
    }
    if (x * x + y * y == 0)
    {
        throw SingularEvaluation("electrons at the nucleus");
    }
}

double checked(double value)
{
    if (!std::isfinite(value))
    {
        throw SingularEvaluation("non-finite energy in symmetric subspace");
    }
    return value;
}
}  // namespace

double potential_sym2e(double x, double y, double eps)
{
    check_nonsingular(x, y);
    return checked(-4 / std::hypot(x, y) + 1 / (2 * y) + 2 * eps * x);
}

double potential_sym2e(double x, double y, double t, FieldParams const& params)
{
    return potential_sym2e(x, y, effective_field(t, params));
}

double hamiltonian_sym2e(SymState2e const& s, double eps)
{
    return checked(s.px * s.px + s.py * s.py + potential_sym2e(s.x, s.y, eps));
}

double
hamiltonian_sym2e(SymState2e const& s, double t, FieldParams const& params)
{
    return hamiltonian_sym2e(s, effective_field(t, params));
}

std::array<double, 2> gradient_sym2e(double x, double y, double eps)
{
    check_nonsingular(x, y);
    double const r2 = x * x + y * y;
    double const inv_r3 = 1 / (r2 * std::sqrt(r2));
    return {4 * x * inv_r3 + 2 * eps, 4 * y * inv_r3 - 1 / (2 * y * y)};
}

SymState2e rhs_sym2e(SymState2e const& s, double eps)
{
    auto const grad = gradient_sym2e(s.x, s.y, eps);
    return {s.px, s.py, -grad[0] / 2, -grad[1] / 2};
}

SymState2e rhs_sym2e(SymState2e const& s, double t, FieldParams const& params)
{
    return rhs_sym2e(s, effective_field(t, params));
}

double saddle_radius_sym2e(double eps)
{
    if (eps == 0)
        return std::numeric_limits<double>::infinity();
    return std::sqrt(std::sqrt(3.0) / std::fabs(eps));
}

//---------------------------------------------------------------------------//
double Sym2eSystem::radius(Vector const& v) const
{
    return std::hypot(v[0], v[1]);
}

double Sym2eSystem::radial_velocity(Vector const& v) const
{
    return (v[0] * v[2] + v[1] * v[3]) / this->radius(v);
}

double Sym2eSystem::closest_approach(Vector const& v) const
{
    return std::fmin(std::hypot(v[0], v[1]), 2 * v[1]);
}

}  // namespace nsdi
