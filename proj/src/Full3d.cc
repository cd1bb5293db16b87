// SPDX-License-Identifier: Apache-2.0
//! \file Full3d.cc
#include "nsdi/Full3d.hh"

#include <cmath>

#include "nsdi/Errors.hh"

namespace nsdi
{
namespace
{
double norm(Vec3 const& v)
{
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Vec3 minus(Vec3 const& a, Vec3 const& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double dot(Vec3 const& a, Vec3 const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void check_nonsingular(double d1, double d2, double d12)
{
    if (d1 == 0 || d2 == 0)
    {
        throw SingularEvaluation("electron at the nucleus");
    }
    if (d12 == 0)
    {
        throw SingularEvaluation("coincident electrons");
    }
}
}  // namespace

std::array<double, 12> FullState2e::as_array() const
{
    return {r1[0], r1[1], r1[2], r2[0], r2[1], r2[2],
            p1[0], p1[1], p1[2], p2[0], p2[1], p2[2]};
}

FullState2e FullState2e::from_array(std::array<double, 12> const& v)
{
    return {{v[0], v[1], v[2]},
            {v[3], v[4], v[5]},
            {v[6], v[7], v[8]},
            {v[9], v[10], v[11]}};
}

FullState2e embed_symmetric(SymState2e const& s)
{
    return {{s.x, s.y, 0}, {s.x, -s.y, 0}, {s.px, s.py, 0}, {s.px, -s.py, 0}};
}

double potential_full3d(Vec3 const& r1, Vec3 const& r2, double eps)
{
    double const d1 = norm(r1);
    double const d2 = norm(r2);
    double const d12 = norm(minus(r1, r2));
    check_nonsingular(d1, d2, d12);
    double v = -2 / d1 - 2 / d2 + 1 / d12 + eps * (r1[0] + r2[0]);
    if (!std::isfinite(v))
    {
        throw SingularEvaluation("non-finite two-electron potential");
    }
    return v;
}

double hamiltonian_full3d(FullState2e const& s, double eps)
{
    return (dot(s.p1, s.p1) + dot(s.p2, s.p2)) / 2
           + potential_full3d(s.r1, s.r2, eps);
}

double
hamiltonian_full3d(FullState2e const& s, double t, FieldParams const& params)
{
    return hamiltonian_full3d(s, effective_field(t, params));
}

std::array<Vec3, 2> gradient_full3d(Vec3 const& r1, Vec3 const& r2, double eps)
{
    double const d1 = norm(r1);
    double const d2 = norm(r2);
    Vec3 const r12 = minus(r1, r2);
    double const d12 = norm(r12);
    check_nonsingular(d1, d2, d12);

    double const c1 = 2 / (d1 * d1 * d1);
    double const c2 = 2 / (d2 * d2 * d2);
    double const c12 = 1 / (d12 * d12 * d12);
    std::array<Vec3, 2> grad;
    for (int i = 0; i < 3; ++i)
    {
        grad[0][i] = c1 * r1[i] - c12 * r12[i];
        grad[1][i] = c2 * r2[i] + c12 * r12[i];
    }
    grad[0][0] += eps;
    grad[1][0] += eps;
    return grad;
}

FullState2e rhs_full3d(FullState2e const& s, double eps)
{
    auto const grad = gradient_full3d(s.r1, s.r2, eps);
    FullState2e result;
    result.r1 = s.p1;
    result.r2 = s.p2;
    for (int i = 0; i < 3; ++i)
    {
        result.p1[i] = -grad[0][i];
        result.p2[i] = -grad[1][i];
    }
    return result;
}

FullState2e
rhs_full3d(FullState2e const& s, double t, FieldParams const& params)
{
    return rhs_full3d(s, effective_field(t, params));
}

//---------------------------------------------------------------------------//
auto Full3dSystem::derivative(Vector const& v, double t) const -> Vector
{
    return rhs_full3d(FullState2e::from_array(v), drive_(t)).as_array();
}

double Full3dSystem::radius(Vector const& v) const
{
    return std::fmin(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]),
                     std::sqrt(v[3] * v[3] + v[4] * v[4] + v[5] * v[5]));
}

double Full3dSystem::radial_velocity(Vector const& v) const
{
    auto const s = FullState2e::from_array(v);
    double const d1 = norm(s.r1);
    double const d2 = norm(s.r2);
    return d1 <= d2 ? dot(s.r1, s.p1) / d1 : dot(s.r2, s.p2) / d2;
}

double Full3dSystem::closest_approach(Vector const& v) const
{
    auto const s = FullState2e::from_array(v);
    return std::fmin(std::fmin(norm(s.r1), norm(s.r2)),
                     norm(minus(s.r1, s.r2)));
}

}  // namespace nsdi
