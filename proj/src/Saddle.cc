// SPDX-License-Identifier: Apache-2.0
//! \file Saddle.cc
#include "nsdi/Saddle.hh"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nsdi/Errors.hh"
#include "nsdi/NGon.hh"

namespace nsdi
{
using std::numbers::pi;

SaddleInfo saddle_sym2e(double eps)
{
    if (eps == 0 || !std::isfinite(eps))
    {
        throw NoSolution("no Stark saddle exists at zero field");
    }
    SaddleInfo result;
    result.eps = eps;
    result.r_s = saddle_radius_sym2e(eps);
    result.theta = eps > 0 ? 5 * pi / 6 : pi / 6;
    result.x = result.r_s * std::cos(result.theta);
    result.y = result.r_s * std::sin(result.theta);
    result.energy = potential_sym2e(result.x, result.y, eps);
    return result;
}

Eigen::Matrix2d hessian_sym2e(double x, double y, double /* eps */)
{
    if (!(y > 0))
        throw SingularEvaluation("symmetric subspace requires y > 0");
    double const r2 = x * x + y * y;
    double const r = std::sqrt(r2);
    double const inv_r3 = 1 / (r2 * r);
    double const inv_r5 = inv_r3 / r2;
    Eigen::Matrix2d h;
    h(0, 0) = 4 * inv_r3 - 12 * x * x * inv_r5;
    h(0, 1) = h(1, 0) = -12 * x * y * inv_r5;
    h(1, 1) = 4 * inv_r3 - 12 * y * y * inv_r5 + 1 / (y * y * y);
    return h;
}

namespace
{
using Matrix3 = Eigen::Matrix3d;

//! Hessian of 1/|d|: (3 d d^T / |d|^2 - I) / |d|^3
Matrix3 inverse_distance_hessian(Eigen::Vector3d const& d)
{
    double const n2 = d.squaredNorm();
    double const n = std::sqrt(n2);
    return (3 * d * d.transpose() / n2 - Matrix3::Identity()) / (n2 * n);
}

Eigen::Vector3d to_eigen(Vec3 const& v)
{
    return {v[0], v[1], v[2]};
}
}  // namespace

Matrix6 hessian_full3d(Vec3 const& r1, Vec3 const& r2, double /* eps */)
{
    Eigen::Vector3d const a = to_eigen(r1);
    Eigen::Vector3d const b = to_eigen(r2);
    if (a.norm() == 0 || b.norm() == 0 || (a - b).norm() == 0)
        throw SingularEvaluation("Hessian evaluated at a Coulomb singularity");

    // The field term is linear and drops out
    Matrix3 const nuc1 = -2 * inverse_distance_hessian(a);
    Matrix3 const nuc2 = -2 * inverse_distance_hessian(b);
    Matrix3 const rep = inverse_distance_hessian(a - b);

    Matrix6 h;
    h.topLeftCorner<3, 3>() = nuc1 + rep;
    h.bottomRightCorner<3, 3>() = nuc2 + rep;
    h.topRightCorner<3, 3>() = -rep;
    h.bottomLeftCorner<3, 3>() = -rep;
    return h;
}

Matrix6
hessian_full3d_fd(Vec3 const& r1, Vec3 const& r2, double eps, double step)
{
    auto potential = [&](int i, double di, int j, double dj) {
        std::array<double, 6> q{r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]};
        q[i] += di;
        q[j] += dj;
        return potential_full3d(
            {q[0], q[1], q[2]}, {q[3], q[4], q[5]}, eps);
    };

    Matrix6 h;
    double const h2 = step * step;
    for (int i = 0; i < 6; ++i)
    {
        double const center = potential(i, 0, i, 0);
        h(i, i) = (potential(i, step, i, 0) - 2 * center
                   + potential(i, -step, i, 0))
                  / h2;
        for (int j = i + 1; j < 6; ++j)
        {
            double const value
                = (potential(i, step, j, step) - potential(i, step, j, -step)
                   - potential(i, -step, j, step)
                   + potential(i, -step, j, -step))
                  / (4 * h2);
            h(i, j) = h(j, i) = value;
        }
    }
    return h;
}

std::array<Vec3, 2> saddle_configuration(SaddleInfo const& saddle)
{
    return {Vec3{saddle.x, saddle.y, 0}, Vec3{saddle.x, -saddle.y, 0}};
}

StabilitySpectrum
classify_stability(Eigen::MatrixXd const& hessian, double zero_tol)
{
    if (hessian.rows() != hessian.cols() || hessian.rows() == 0)
        throw InvalidArgument("Hessian must be a non-empty square matrix");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        hessian, Eigen::EigenvaluesOnly);
    StabilitySpectrum result;
    auto const& values = solver.eigenvalues();
    result.eigenvalues.assign(values.data(), values.data() + values.size());
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
    for (double lambda : result.eigenvalues)
    {
        if (std::fabs(lambda) < zero_tol)
        {
            throw DegenerateSpectrum("Hessian has a near-zero eigenvalue");
        }
        (lambda < 0 ? result.n_unstable : result.n_stable) += 1;
    }
    return result;
}

StabilitySpectrum
classify_stability(Eigen::MatrixXd const& hessian,
                   std::vector<Eigen::VectorXd> const& symmetry_modes,
                   double zero_tol,
                   double residual_tol)
{
    auto const n = hessian.rows();
    if (hessian.cols() != n || n == 0)
        throw InvalidArgument("Hessian must be a non-empty square matrix");
    auto const k = static_cast<Eigen::Index>(symmetry_modes.size());
    if (k >= n)
        throw InvalidArgument("too many symmetry modes");

    Eigen::MatrixXd modes(n, k);
    for (Eigen::Index j = 0; j < k; ++j)
    {
        if (symmetry_modes[j].size() != n)
            throw InvalidArgument("symmetry mode has the wrong dimension");
        modes.col(j) = symmetry_modes[j];
    }
    double const scale = hessian.cwiseAbs().maxCoeff();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(modes);
    Eigen::MatrixXd const q = qr.householderQ();
    for (Eigen::Index j = 0; j < k; ++j)
    {
        if ((hessian * q.col(j)).norm() > residual_tol * scale)
        {
            throw InvalidArgument("symmetry mode is not a null direction");
        }
    }

    // Remaining directions span the orthogonal complement of the modes
    Eigen::MatrixXd const rest = q.rightCols(n - k);
    Eigen::MatrixXd const reduced = rest.transpose() * hessian * rest;
    auto result = classify_stability(
        Eigen::MatrixXd(0.5 * (reduced + reduced.transpose())), zero_tol);
    result.n_neutral = static_cast<int>(k);
    result.eigenvalues.insert(result.eigenvalues.end(), k, 0.0);
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
    return result;
}

Eigen::VectorXd field_axis_rotation(Vec3 const& r1, Vec3 const& r2)
{
    // Field along x: d/dphi of (x, y cos phi - z sin phi, y sin phi + z cos phi)
    Eigen::VectorXd v(6);
    v << 0, -r1[2], r1[1], 0, -r2[2], r2[1];
    double const norm = v.norm();
    if (norm == 0)
        throw InvalidArgument("configuration lies on the field axis");
    return v / norm;
}

SaddleModes saddle_modes_full3d(double eps)
{
    SaddleModes result;
    result.saddle = saddle_sym2e(eps);
    auto const [r1, r2] = saddle_configuration(result.saddle);
    Eigen::SelfAdjointEigenSolver<Matrix6> solver(hessian_full3d(r1, r2, eps));
    result.eigenvalues = solver.eigenvalues();
    result.eigenvectors = solver.eigenvectors();

    // Mirror y -> -y exchanges the electrons: (a, b) -> (M b, M a)
    auto mirror = [](Eigen::Matrix<double, 6, 1> const& v) {
        Eigen::Matrix<double, 6, 1> m;
        m << v(3), -v(4), v(5), v(0), -v(1), v(2);
        return m;
    };
    double best_sym = -1;
    double best_anti = -1;
    for (int k = 0; k < 6; ++k)
    {
        if (result.eigenvalues(k) >= 0)
            continue;
        Eigen::Matrix<double, 6, 1> const v = result.eigenvectors.col(k);
        double const sym = (v + mirror(v)).norm();
        double const anti = (v - mirror(v)).norm();
        if (sym > anti && sym > best_sym)
        {
            best_sym = sym;
            result.reaction = v;
        }
        else if (anti >= sym && anti > best_anti)
        {
            best_anti = anti;
            result.symmetry_breaking = v;
        }
    }
    if (best_sym < 0 || best_anti < 0)
    {
        throw NoSolution("saddle lacks the expected pair of unstable modes");
    }
    // Orient the reaction coordinate away from the nucleus
    Eigen::Matrix<double, 6, 1> outward;
    outward << r1[0], r1[1], r1[2], r2[0], r2[1], r2[2];
    if (result.reaction.dot(outward) < 0)
        result.reaction = -result.reaction;
    // Orient the symmetry-breaking mode so electron 1 moves downfield
    double const downfield = eps > 0 ? -1 : 1;
    if (result.symmetry_breaking(0) * downfield < 0)
        result.symmetry_breaking = -result.symmetry_breaking;
    return result;
}

//---------------------------------------------------------------------------//
bool ngon_saddle_criterion(int n_electrons)
{
    double const n = n_electrons;
    return (n - 1) / (4 * std::sin(pi / n)) < n;
}

std::optional<NGonSaddle> ngon_saddle_scan(int n_electrons, double eps)
{
    if (n_electrons < 2)
        throw InvalidArgument("n-gon requires at least two electrons");
    if (eps == 0 || !std::isfinite(eps))
        throw InvalidArgument("saddle scan requires a non-zero field");

    constexpr int max_iter = 100;
    constexpr double grad_tol = 1e-10;

    // Seeds: the two-electron saddle, rescaled to the N-electron energy
    // scale, spread over radii and downfield polar angles
    double const r_2e = saddle_radius_sym2e(eps);
    double const downfield = eps > 0 ? -1 : 1;
    constexpr std::array<double, 4> radius_scale{0.5, 1.0, 1.6, 2.5};
    constexpr std::array<double, 4> tilt{0.05, 0.25, 0.55, 1.0};

    auto grad_norm = [&](double rho, double z) {
        auto const g = gradient_ngon(rho, z, n_electrons, eps);
        return std::hypot(g[0], g[1]);
    };

    for (double rs : radius_scale)
    {
        for (double angle : tilt)
        {
            double const r0 = rs * r_2e * std::sqrt(n_electrons / 2.0);
            // angle measured from the perpendicular plane towards downfield
            double rho = r0 * std::cos(angle);
            double z = downfield * r0 * std::sin(angle);
            double gn = grad_norm(rho, z);
            for (int iter = 0; iter < max_iter; ++iter)
            {
                if (gn < grad_tol)
                {
                    auto const h = hessian_ngon(rho, z, n_electrons, eps);
                    double const det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
                    if (det < 0)
                    {
                        return NGonSaddle{
                            n_electrons,
                            eps,
                            rho,
                            z,
                            potential_ngon(rho, z, n_electrons, eps),
                            iter};
                    }
                    break;
                }
                auto const g = gradient_ngon(rho, z, n_electrons, eps);
                auto const h = hessian_ngon(rho, z, n_electrons, eps);
                double const det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
                if (det == 0 || !std::isfinite(det))
                    break;
                double const d_rho = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
                double const d_z = -(h[0][0] * g[1] - h[1][0] * g[0]) / det;

                // Backtrack until rho stays positive and |grad| decreases
                double alpha = 1;
                bool improved = false;
                while (alpha > 1e-6)
                {
                    double const rho_new = rho + alpha * d_rho;
                    double const z_new = z + alpha * d_z;
                    if (rho_new > 0)
                    {
                        double const gn_new = grad_norm(rho_new, z_new);
                        if (gn_new < gn)
                        {
                            rho = rho_new;
                            z = z_new;
                            gn = gn_new;
                            improved = true;
                            break;
                        }
                    }
                    alpha /= 2;
                }
                if (!improved)
                    break;
            }
        }
    }
    return std::nullopt;
}

}  // namespace nsdi
