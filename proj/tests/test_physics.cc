// SPDX-License-Identifier: Apache-2.0
//! \file tests/test_physics.cc
//! Potentials, forces and the reduction chain between the three geometries.
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "Oracles.hh"
#include "nsdi/Errors.hh"
#include "nsdi/Full3d.hh"
#include "nsdi/NGon.hh"
#include "nsdi/Sym2e.hh"

using namespace nsdi;
using std::numbers::pi;

namespace
{
double rel_diff(double a, double b)
{
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

double norm(std::vector<double> const& v)
{
    double s = 0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

double rel_error(std::vector<double> const& a, std::vector<double> const& b)
{
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = a[i] - b[i];
    return norm(d) / norm(b);
}

SymState2e random_sym(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> ux(-6, 6), uy(0.3, 6), up(-2, 2);
    for (;;)
    {
        SymState2e s{ux(rng), uy(rng), up(rng), up(rng)};
        if (std::hypot(s.x, s.y) > 0.5)
            return s;
    }
}

constexpr double saddle_eps = 0.137;
}  // namespace

//---------------------------------------------------------------------------//
TEST(Sym2e, PotentialByDirectSubstitution)
{
    EXPECT_DOUBLE_EQ(potential_sym2e(0, 1, 0), -3.5);
    EXPECT_NEAR(potential_sym2e(-2, 1.5, 0.1),
                oracle::sym2e_potential(-2, 1.5, 0.1),
                1e-15);
}

TEST(Sym2e, HamiltonianAddsBothKineticEnergies)
{
    EXPECT_DOUBLE_EQ(hamiltonian_sym2e({0, 1, 1, 0}, 0), -2.5);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i)
    {
        auto const s = random_sym(rng);
        EXPECT_NEAR(hamiltonian_sym2e(s, 0.07),
                    potential_sym2e(s.x, s.y, 0.07) + s.px * s.px + s.py * s.py,
                    1e-13);
    }
}

TEST(Sym2e, SaddleEnergyAtPeakField)
{
    double const r = std::sqrt(std::sqrt(3.0) / saddle_eps);
    double const theta = 5 * pi / 6;
    SymState2e const s{r * std::cos(theta), r * std::sin(theta), 0, 0};
    EXPECT_NEAR(hamiltonian_sym2e(s, saddle_eps), -1.69, 0.01);
}

TEST(Sym2e, ZeroPeakFieldLeavesBarePotential)
{
    auto const p = FieldParams::n_cycle(0, 0.057, 0.3);
    for (double t : {0.0, 50.0, 200.0, 500.0})
    {
        EXPECT_EQ(potential_sym2e(1.2, 0.7, t, p),
                  -4 / std::hypot(1.2, 0.7) + 1 / (2 * 0.7));
    }
}

TEST(Sym2e, SingularInputsRejected)
{
    EXPECT_THROW(potential_sym2e(1, 0, 0), SingularEvaluation);
    EXPECT_THROW(potential_sym2e(1, -1, 0), SingularEvaluation);
    EXPECT_THROW(rhs_sym2e({0.5, 0, 1, 1}, 0.1), SingularEvaluation);
}

TEST(Sym2e, ForceVanishesAtSaddle)
{
    double const r = std::sqrt(std::sqrt(3.0) / saddle_eps);
    SymState2e const s{r * std::cos(5 * pi / 6), r * std::sin(5 * pi / 6), 0, 0};
    auto const d = rhs_sym2e(s, saddle_eps);
    EXPECT_NEAR(d.px, 0, 1e-14);
    EXPECT_NEAR(d.py, 0, 1e-14);
}

// Per-electron dynamics: each electron moves with its own momentum and feels
// half the gradient of the two-electron potential, which is what the full
// 3-D motion does on the symmetric subspace.
TEST(Sym2e, VelocityEqualsMomentum)
{
    SymState2e const s{0.3, 1.1, 0.8, -0.4};
    auto const d = rhs_sym2e(s, 0.05);
    EXPECT_DOUBLE_EQ(d.x / s.px, 1.0);
    EXPECT_DOUBLE_EQ(d.y / s.py, 1.0);
    auto const g = gradient_sym2e(s.x, s.y, 0.05);
    EXPECT_DOUBLE_EQ(d.px, -g[0] / 2);
    EXPECT_DOUBLE_EQ(d.py, -g[1] / 2);
}

TEST(Sym2e, GradientMatchesFiniteDifference)
{
    std::mt19937_64 rng(5);
    double worst = 0;
    for (int i = 0; i < 1000; ++i)
    {
        auto const s = random_sym(rng);
        double const eps = 0.2 * (static_cast<double>(i % 7) / 3 - 1);
        auto const g = gradient_sym2e(s.x, s.y, eps);
        auto const fd = oracle::fd_gradient(
            [eps](std::vector<double> const& q) {
                return oracle::sym2e_potential(q[0], q[1], eps);
            },
            {s.x, s.y},
            1e-5);
        worst = std::max(worst, rel_error({g[0], g[1]}, fd));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Sym2e, EnergyRateIsExplicitTimeDerivative)
{
    auto const p = FieldParams::n_cycle(0.137, 0.057, 0.9);
    Sym2eSystem const sys{Drive{p}};
    SymState2e const s{-1.3, 2.2, 0.4, 0.1};
    double const h = 1e-4;
    for (double t = 10; t < p.duration; t += 61)
    {
        double const fd = (hamiltonian_sym2e(s, t + h, p)
                           - hamiltonian_sym2e(s, t - h, p))
                          / (2 * h);
        EXPECT_NEAR(sys.energy_rate(s.as_array(), t), fd, 1e-8);
    }
}

//---------------------------------------------------------------------------//
namespace
{
FullState2e random_full(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-5, 5), up(-2, 2);
    for (;;)
    {
        FullState2e s;
        for (int k = 0; k < 3; ++k)
        {
            s.r1[k] = u(rng);
            s.r2[k] = u(rng);
            s.p1[k] = up(rng);
            s.p2[k] = up(rng);
        }
        auto len = [](Vec3 const& v) {
            return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        };
        Vec3 const d{s.r1[0] - s.r2[0], s.r1[1] - s.r2[1], s.r1[2] - s.r2[2]};
        if (len(s.r1) > 0.5 && len(s.r2) > 0.5 && len(d) > 0.5)
            return s;
    }
}

double oracle_full3d_potential(std::vector<double> const& q, double eps)
{
    auto d = [&](int a, int b) {
        double s = 0;
        for (int k = 0; k < 3; ++k)
        {
            double const da = q[a + k] - (b < 0 ? 0 : q[b + k]);
            s += da * da;
        }
        return std::sqrt(s);
    };
    return -2 / d(0, -1) - 2 / d(3, -1) + 1 / d(0, 3) + eps * (q[0] + q[3]);
}
}  // namespace

TEST(Full3d, GradientMatchesFiniteDifference)
{
    std::mt19937_64 rng(6);
    double worst = 0;
    for (int i = 0; i < 1000; ++i)
    {
        auto const s = random_full(rng);
        double const eps = 0.1 * ((i % 5) - 2);
        auto const g = gradient_full3d(s.r1, s.r2, eps);
        std::vector<double> const q{
            s.r1[0], s.r1[1], s.r1[2], s.r2[0], s.r2[1], s.r2[2]};
        auto const fd = oracle::fd_gradient(
            [eps](std::vector<double> const& v) {
                return oracle_full3d_potential(v, eps);
            },
            q,
            1e-5);
        worst = std::max(
            worst,
            rel_error({g[0][0], g[0][1], g[0][2], g[1][0], g[1][1], g[1][2]},
                      fd));
        EXPECT_NEAR(potential_full3d(s.r1, s.r2, eps),
                    oracle_full3d_potential(q, eps),
                    1e-12);
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Full3d, RhsIsHamiltonFlow)
{
    std::mt19937_64 rng(8);
    auto const s = random_full(rng);
    auto const d = rhs_full3d(s, 0.05);
    auto const g = gradient_full3d(s.r1, s.r2, 0.05);
    for (int k = 0; k < 3; ++k)
    {
        EXPECT_EQ(d.r1[k], s.p1[k]);
        EXPECT_EQ(d.r2[k], s.p2[k]);
        EXPECT_EQ(d.p1[k], -g[0][k]);
        EXPECT_EQ(d.p2[k], -g[1][k]);
    }
}

TEST(Full3d, SaddlePairAtRestHasSaddleEnergy)
{
    double const r = std::sqrt(std::sqrt(3.0) / saddle_eps);
    double const x = r * std::cos(5 * pi / 6);
    double const y = r * std::sin(5 * pi / 6);
    FullState2e const s{{x, y, 0}, {x, -y, 0}, {}, {}};
    EXPECT_NEAR(hamiltonian_full3d(s, saddle_eps), -1.69, 0.01);
}

TEST(Full3d, SingularInputsRejected)
{
    EXPECT_THROW(potential_full3d({0, 0, 0}, {1, 0, 0}, 0), SingularEvaluation);
    EXPECT_THROW(potential_full3d({1, 2, 3}, {1, 2, 3}, 0), SingularEvaluation);
}

TEST(Reduction, FullModelRestrictsToSymmetricSubspace)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i)
    {
        auto const s = random_sym(rng);
        double const eps = 0.15 * std::sin(i);
        auto const full = embed_symmetric(s);
        EXPECT_LE(rel_diff(hamiltonian_full3d(full, eps),
                           hamiltonian_sym2e(s, eps)),
                  1e-12);

        // Dynamics commute with the embedding
        auto const d_full = rhs_full3d(full, eps).as_array();
        auto const d_emb = embed_symmetric(rhs_sym2e(s, eps)).as_array();
        double scale = 0;
        for (double v : d_full)
            scale = std::max(scale, std::fabs(v));
        for (std::size_t k = 0; k < 12; ++k)
            EXPECT_NEAR(d_full[k], d_emb[k], 1e-12 * scale) << "component " << k;
    }
}

TEST(Reduction, EmbeddingConvention)
{
    auto const f = embed_symmetric({1, 2, 3, 4});
    EXPECT_EQ(f.r1, (Vec3{1, 2, 0}));
    EXPECT_EQ(f.r2, (Vec3{1, -2, 0}));
    EXPECT_EQ(f.p1, (Vec3{3, 4, 0}));
    EXPECT_EQ(f.p2, (Vec3{3, -4, 0}));
}

//---------------------------------------------------------------------------//
TEST(NGon, TwoElectronsRelabelToSymmetricModel)
{
    EXPECT_NEAR(potential_ngon(1.5, -2, 2, 0.1), potential_sym2e(-2, 1.5, 0.1),
                1e-15);
    std::mt19937_64 rng(10);
    for (int i = 0; i < 1000; ++i)
    {
        auto const s = random_sym(rng);
        double const eps = 0.2 * std::cos(i);
        NGonState const n{2, s.y, s.x, s.py, s.px};
        EXPECT_LE(rel_diff(hamiltonian_ngon(n, eps), hamiltonian_sym2e(s, eps)),
                  1e-12);
        auto const dn = rhs_ngon(n, eps);
        auto const ds = rhs_sym2e(s, eps);
        double const scale = std::max({std::fabs(ds.px), std::fabs(ds.py),
                                       std::fabs(ds.x), std::fabs(ds.y)});
        EXPECT_NEAR(dn.rho, ds.y, 1e-12 * scale);
        EXPECT_NEAR(dn.z, ds.x, 1e-12 * scale);
        EXPECT_NEAR(dn.p_rho, ds.py, 1e-12 * scale);
        EXPECT_NEAR(dn.p_z, ds.px, 1e-12 * scale);
    }
}

TEST(NGon, ThreeElectronPotential)
{
    double const expected = -9.0 / 2 + 6.0 / (8 * std::sin(pi / 3));
    EXPECT_NEAR(potential_ngon(2, 0, 3, 0), expected, 1e-15);
    EXPECT_NEAR(expected, -3.633974596215561, 1e-14);
}

TEST(NGon, KineticTermScalesWithElectronCount)
{
    for (int n = 2; n <= 20; ++n)
    {
        NGonState const s{n, 1.7, -0.4, 1, 1};
        EXPECT_NEAR(hamiltonian_ngon(s, 0.1) - potential_ngon(1.7, -0.4, n, 0.1),
                    n, 1e-12);
    }
}

TEST(NGon, GradientMatchesFiniteDifference)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ur(0.3, 6), uz(-6, 6);
    double worst = 0;
    for (int i = 0; i < 1000; ++i)
    {
        int const n = 2 + i % 12;
        double const eps = 0.05 + 0.15 * (i % 4) / 3.0;
        double rho, z;
        do
        {
            rho = ur(rng);
            z = uz(rng);
        } while (std::hypot(rho, z) < 0.5);
        auto const g = gradient_ngon(rho, z, n, eps);
        double const c = (n * (n - 1)) / (4 * std::sin(pi / n));
        auto const fd = oracle::fd_gradient(
            [&](std::vector<double> const& q) {
                return -n * n / std::hypot(q[0], q[1]) + c / q[0]
                       + n * q[1] * eps;
            },
            {rho, z},
            1e-5);
        worst = std::max(worst, rel_error({g[0], g[1]}, fd));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(NGon, HessianMatchesFiniteDifference)
{
    double const h = 1e-5;
    for (int n : {2, 5, 9, 13})
    {
        double const rho = 2.3, z = -1.7, eps = 0.137;
        auto const hess = hessian_ngon(rho, z, n, eps);
        auto const gp = gradient_ngon(rho + h, z, n, eps);
        auto const gm = gradient_ngon(rho - h, z, n, eps);
        auto const gzp = gradient_ngon(rho, z + h, n, eps);
        auto const gzm = gradient_ngon(rho, z - h, n, eps);
        EXPECT_NEAR(hess[0][0], (gp[0] - gm[0]) / (2 * h), 1e-6);
        EXPECT_NEAR(hess[0][1], (gzp[0] - gzm[0]) / (2 * h), 1e-6);
        EXPECT_NEAR(hess[1][1], (gzp[1] - gzm[1]) / (2 * h), 1e-6);
        EXPECT_NEAR(hess[1][0], hess[0][1], 1e-14);
    }
}

TEST(NGon, InvalidInputsRejected)
{
    EXPECT_THROW(potential_ngon(0, 1, 3, 0), SingularEvaluation);
    EXPECT_THROW(potential_ngon(1, 1, 1, 0), InvalidArgument);
}

TEST(NGon, RhsConservesEnergyDirectionally)
{
    // dH/dt along the flow vanishes at frozen field
    NGonState const s{5, 2.1, -0.8, 0.3, -0.6};
    auto const d = rhs_ngon(s, 0.08);
    auto const g = gradient_ngon(s.rho, s.z, 5, 0.08);
    double const dh = 5 * (s.p_rho * d.p_rho + s.p_z * d.p_z) + g[0] * d.rho
                      + g[1] * d.z;
    EXPECT_NEAR(dh, 0, 1e-13);
}
