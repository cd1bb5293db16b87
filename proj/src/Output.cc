// SPDX-License-Identifier: Apache-2.0
//! \file Output.cc
#include "nsdi/Output.hh"

#include <cmath>

namespace nsdi
{
std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_histogram_csv(std::ostream& os, Histogram const& h)
{
    auto const& edges = h.edges();
    auto const& counts = h.counts();
    auto const density = h.density();
    os << "bin_left,bin_right,count,density\n";
    for (std::size_t i = 0; i < counts.size(); ++i)
    {
        os << format_double(edges[i]) << ',' << format_double(edges[i + 1])
           << ',' << counts[i] << ',' << format_double(density[i]) << '\n';
    }
}

nlohmann::json summary_json(EnsembleResult const& result,
                            std::optional<HumpMetric> const& metric)
{
    nlohmann::json j;
    j["n_total"] = result.trajectories.size();
    j["n_double"] = result.n_double;
    j["n_bound"] = result.n_bound;
    j["n_rejected"] = result.n_rejected;
    if (metric)
    {
        j["hump_metric"] = {{"n_local_maxima", metric->n_local_maxima},
                            {"valley_depth_ratio", metric->valley_depth_ratio}};
    }
    else
    {
        j["hump_metric"] = nullptr;
    }
    return j;
}

nlohmann::json manifest_json(EnsembleSpec const& spec)
{
    auto const region = spec.resolved_region();
    return {{"E_tilde", spec.energy},
            {"n_samples", spec.n_samples},
            {"master_seed", spec.master_seed},
            {"region",
             {{"x_min", region.x_min},
              {"x_max", region.x_max},
              {"y_min", 0.0},
              {"y_max", region.y_max}}}};
}

nlohmann::json to_json(SaddleInfo const& s)
{
    return {{"eps", s.eps},
            {"r_s", s.r_s},
            {"r_s_squared", s.r_s * s.r_s},
            {"theta", s.theta},
            {"x_s", s.x},
            {"y_s", s.y},
            {"V_s", s.energy}};
}

nlohmann::json to_json(StabilitySpectrum const& s)
{
    return {{"eigenvalues", s.eigenvalues},
            {"n_unstable", s.n_unstable},
            {"n_stable", s.n_stable},
            {"n_neutral", s.n_neutral}};
}

nlohmann::json to_json(NGonSaddle const& s)
{
    return {{"N", s.n_electrons},
            {"eps", s.eps},
            {"rho_s", s.rho},
            {"z_s", s.z},
            {"V_s", s.energy}};
}

void write_ngon_scan_row(std::ostream& os,
                         int n_electrons,
                         double eps,
                         std::optional<NGonSaddle> const& saddle,
                         std::optional<bool> criterion)
{
    os << n_electrons << ',' << format_double(eps) << ','
       << (saddle ? "true" : "false") << ',';
    if (saddle)
    {
        os << format_double(saddle->rho) << ',' << format_double(saddle->z)
           << ',' << format_double(saddle->energy);
    }
    else
    {
        os << ",,";
    }
    if (criterion)
        os << ',' << (*criterion ? "true" : "false");
    os << '\n';
}

}  // namespace nsdi
