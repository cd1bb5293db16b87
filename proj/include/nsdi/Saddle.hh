// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Saddle.hh
//! Stark saddle location and frozen-field stability analysis.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "Full3d.hh"
#include "Sym2e.hh"

namespace nsdi
{
//---------------------------------------------------------------------------//
/*!
 * Saddle of the symmetric-subspace potential at a frozen field value.
 *
 * The saddle sits at distance r_s with r_s^2 |eps| = sqrt(3), on the
 * downfield side: theta = 5 pi/6 for eps > 0 and pi/6 for eps < 0.
 */
struct SaddleInfo
{
    double r_s{0};
    double theta{0};
    double x{0};
    double y{0};
    double energy{0};  //!< V_s
    double eps{0};
};

SaddleInfo saddle_sym2e(double eps);

//! Analytic second derivatives of the symmetric-subspace potential
Eigen::Matrix2d hessian_sym2e(double x, double y, double eps);

using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Analytic Hessian of the 3-D two-electron potential in (r1, r2)
Matrix6 hessian_full3d(Vec3 const& r1, Vec3 const& r2, double eps);

// Central second differences of the potential itself
Matrix6 hessian_full3d_fd(Vec3 const& r1,
                          Vec3 const& r2,
                          double eps,
                          double step = 1e-4);

//! Electron positions (x_s, +-y_s, 0) of the symmetric saddle
std::array<Vec3, 2> saddle_configuration(SaddleInfo const& saddle);

struct StabilitySpectrum
{
    std::vector<double> eigenvalues;  //!< Ascending
    int n_unstable{0};
    int n_stable{0};
    int n_neutral{0};  //!< Exact symmetry directions (zero curvature)
};

//! Count negative/positive Hessian eigenvalues; throws DegenerateSpectrum
StabilitySpectrum classify_stability(Eigen::MatrixXd const& hessian,
                                     double zero_tol = 1e-10);

/*!
 * Classify with known continuous-symmetry directions removed.
 *
 * Each mode must be a null vector of the Hessian up to
 * residual_tol * max|H_ij|; these are counted as neutral and the
 * remaining block (orthogonal complement) is classified strictly.
 */
StabilitySpectrum
classify_stability(Eigen::MatrixXd const& hessian,
                   std::vector<Eigen::VectorXd> const& symmetry_modes,
                   double zero_tol = 1e-10,
                   double residual_tol = 1e-6);

//! Generator of a rigid rotation of both electrons about the field axis
Eigen::VectorXd field_axis_rotation(Vec3 const& r1, Vec3 const& r2);

//! Eigen-decomposition of the full 3-D Hessian at the symmetric saddle
struct SaddleModes
{
    SaddleInfo saddle;
    Eigen::Matrix<double, 6, 1> eigenvalues;  //!< Ascending
    Matrix6 eigenvectors;  //!< Columns match eigenvalues
    //! Unstable mode preserving mirror symmetry (reaction coordinate)
    Eigen::Matrix<double, 6, 1> reaction;
    //! Unstable mode breaking mirror symmetry
    Eigen::Matrix<double, 6, 1> symmetry_breaking;
};

SaddleModes saddle_modes_full3d(double eps);

//---------------------------------------------------------------------------//
//! Saddle of the N-electron polygon potential
struct NGonSaddle
{
    int n_electrons{2};
    double eps{0};
    double rho{0};
    double z{0};
    double energy{0};
    int iterations{0};
};

/*!
 * Multi-seed damped Newton search for an index-1 critical point.
 *
 * Returns nothing if no seed converges to a saddle within the iteration
 * budget; absence is a physical result, not an error.
 */
std::optional<NGonSaddle> ngon_saddle_scan(int n_electrons, double eps);

//! Algebraic existence criterion: repulsion coefficient below N^2
bool ngon_saddle_criterion(int n_electrons);

}  // namespace nsdi
