// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Output.hh
//! CSV and JSON artifact writers.
#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "Analysis.hh"
#include "Ensemble.hh"
#include "Integrator.hh"
#include "Saddle.hh"
#include "Sampling.hh"

namespace nsdi
{
//! 17 significant digits, enough to round-trip any double
std::string format_double(double value);

//---------------------------------------------------------------------------//
// Histograms: bin_left,bin_right,count,density
void write_histogram_csv(std::ostream& os, Histogram const& h);

//! {n_total, n_double, n_rejected, hump_metric}
nlohmann::json summary_json(EnsembleResult const& result,
                            std::optional<HumpMetric> const& metric);

//! {E_tilde, n_samples, master_seed, region}
nlohmann::json manifest_json(EnsembleSpec const& spec);

nlohmann::json to_json(SaddleInfo const& s);
nlohmann::json to_json(StabilitySpectrum const& s);
nlohmann::json to_json(NGonSaddle const& s);

//---------------------------------------------------------------------------//
inline constexpr char trajectory_csv_header[]
    = "t,x_or_rho,y_or_z,px,py,H,r,r_saddle";
inline constexpr char trajectory_full3d_csv_header[]
    = "t,x1,y1,z1,x2,y2,z2,px1,py1,pz1,px2,py2,pz2,H,r,r_saddle";

//! One row per accepted step
template<std::size_t D>
void write_trajectory_csv(std::ostream& os, TrajectoryRecord<D> const& record)
{
    static_assert(D == 4 || D == 12, "unsupported state dimension");
    os << (D == 4 ? trajectory_csv_header : trajectory_full3d_csv_header)
       << '\n';
    for (auto const& s : record.samples)
    {
        os << format_double(s.t);
        for (double v : s.state)
            os << ',' << format_double(v);
        os << ',' << format_double(s.energy) << ',' << format_double(s.radius)
           << ',' << format_double(s.saddle_radius) << '\n';
    }
}

//---------------------------------------------------------------------------//
inline constexpr char ngon_scan_csv_header[] = "N,eps,exists,rho_s,z_s,V_s";

//! Row of the n-gon scan; optional trailing algebraic-criterion column
void write_ngon_scan_row(std::ostream& os,
                         int n_electrons,
                         double eps,
                         std::optional<NGonSaddle> const& saddle,
                         std::optional<bool> criterion = std::nullopt);

}  // namespace nsdi
