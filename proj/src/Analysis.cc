// SPDX-License-Identifier: Apache-2.0
//! \file Analysis.cc
#include "nsdi/Analysis.hh"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "nsdi/Errors.hh"

namespace nsdi
{
char const* to_cstring(OutcomeTag tag)
{
    switch (tag)
    {
        case OutcomeTag::double_ionized:
            return "double_ionized";
        case OutcomeTag::bound_complex:
            return "bound_complex";
        case OutcomeTag::rejected:
            return "rejected";
    }
    return "unknown";
}

Outcome classify(TrajectoryRecord<4> const& record,
                 Sym2eSystem const& system,
                 ClassifyOptions const& options)
{
    Outcome result;
    if (record.termination != Termination::completed || record.samples.empty())
    {
        result.tag = OutcomeTag::rejected;
        return result;
    }
    auto const& last = record.final();
    auto const s = SymState2e::from_array(last.state);
    result.final_energy = last.energy;
    result.p_parallel_ion = -2 * s.px;
    result.p_perp_electron = s.py;

    bool const escaped = last.energy > 0 && last.radius >= options.escape_radius
                         && system.radial_velocity(last.state) > 0;
    result.tag = escaped ? OutcomeTag::double_ionized
                         : OutcomeTag::bound_complex;
    return result;
}

//---------------------------------------------------------------------------//
Histogram::Histogram(double lo, double hi, std::size_t n_bins)
{
    if (!(lo < hi) || n_bins == 0)
        throw InvalidArgument("histogram requires lo < hi and n_bins > 0");
    edges_.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
    {
        edges_[i] = lo + (hi - lo) * static_cast<double>(i) / n_bins;
    }
    counts_.assign(n_bins, 0);
}

Histogram::Histogram(std::vector<double> edges) : edges_(std::move(edges))
{
    if (edges_.size() < 2 || !std::is_sorted(edges_.begin(), edges_.end())
        || std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    {
        throw InvalidArgument("histogram edges must be strictly increasing");
    }
    counts_.assign(edges_.size() - 1, 0);
}

void Histogram::fill(double value)
{
    if (std::isnan(value) || value < edges_.front())
    {
        ++underflow_;
        return;
    }
    if (value > edges_.back())
    {
        ++overflow_;
        return;
    }
    // Upper edge is inclusive for the last bin
    auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
    auto bin = static_cast<std::size_t>(it - edges_.begin()) - 1;
    bin = std::min(bin, counts_.size() - 1);
    ++counts_[bin];
}

void Histogram::merge(Histogram const& other)
{
    if (other.edges_ != edges_)
        throw InvalidArgument("cannot merge histograms with different edges");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] += other.counts_[i];
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
}

std::uint64_t Histogram::in_range() const
{
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<double> Histogram::values(Normalization norm) const
{
    std::vector<double> result(counts_.begin(), counts_.end());
    if (norm == Normalization::counts)
        return result;
    auto const total = static_cast<double>(this->in_range());
    for (std::size_t i = 0; i < result.size(); ++i)
    {
        double const width = edges_[i + 1] - edges_[i];
        result[i] = total > 0 ? result[i] / (total * width) : 0.0;
    }
    return result;
}

Histogram ion_parallel_histogram(std::span<Outcome const> outcomes,
                                 HistogramBinning binning)
{
    Histogram h(binning.lo, binning.hi, binning.n_bins);
    bool any = false;
    for (auto const& o : outcomes)
    {
        if (o.tag != OutcomeTag::double_ionized)
            continue;
        h.fill(o.p_parallel_ion);
        any = true;
    }
    if (!any)
        throw NoSolution("no double-ionized outcomes to histogram");
    return h;
}

Histogram perp_electron_histogram(std::span<Outcome const> outcomes,
                                  HistogramBinning binning,
                                  bool signed_momentum)
{
    Histogram h(binning.lo, binning.hi, binning.n_bins);
    bool any = false;
    for (auto const& o : outcomes)
    {
        if (o.tag != OutcomeTag::double_ionized)
            continue;
        h.fill(signed_momentum ? o.p_perp_electron
                               : std::fabs(o.p_perp_electron));
        any = true;
    }
    if (!any)
        throw NoSolution("no double-ionized outcomes to histogram");
    return h;
}

std::vector<double> moving_average(std::span<double const> values, int width)
{
    if (width < 1)
        throw InvalidArgument("smoothing width must be positive");
    int const half = width / 2;
    int const n = static_cast<int>(values.size());
    std::vector<double> result(values.size());
    for (int i = 0; i < n; ++i)
    {
        int const lo = std::max(0, i - half);
        int const hi = std::min(n - 1, i + half);
        double sum = 0;
        for (int j = lo; j <= hi; ++j)
            sum += values[j];
        result[i] = sum / (hi - lo + 1);
    }
    return result;
}

HumpMetric hump_metric(Histogram const& h, int smoothing_width, double noise_floor)
{
    auto const density = h.density();
    auto const smooth = moving_average(density, smoothing_width);
    auto const& edges = h.edges();
    double const floor
        = noise_floor * *std::max_element(smooth.begin(), smooth.end());

    HumpMetric result;
    double peak_sum = 0;
    for (std::size_t i = 1; i + 1 < smooth.size();)
    {
        // Extent of the plateau starting at i
        std::size_t j = i;
        while (j + 1 < smooth.size() && smooth[j + 1] == smooth[i])
            ++j;
        if (j + 1 < smooth.size() && smooth[i] > smooth[i - 1]
            && smooth[i] > smooth[j + 1] && smooth[i] >= floor)
        {
            ++result.n_local_maxima;
            peak_sum += smooth[i];
        }
        i = j + 1;
    }

    // Density at zero: the bin containing it, or the mean of the two bins
    // sharing zero as an edge
    double at_zero = 0;
    if (0 <= edges.front() || 0 >= edges.back())
    {
        at_zero = 0 <= edges.front() ? smooth.front() : smooth.back();
    }
    else
    {
        auto it = std::lower_bound(edges.begin(), edges.end(), 0.0);
        auto idx = static_cast<std::size_t>(it - edges.begin());
        if (*it == 0.0)
            at_zero = (smooth[idx - 1] + smooth[idx]) / 2;
        else
            at_zero = smooth[idx - 1];
    }
    result.valley_depth_ratio
        = result.n_local_maxima > 0
              ? at_zero / (peak_sum / result.n_local_maxima)
              : std::numeric_limits<double>::quiet_NaN();
    return result;
}

Skewness sample_skewness(std::span<double const> values)
{
    auto const n = static_cast<double>(values.size());
    if (values.size() < 3)
        throw InvalidArgument("skewness needs at least three values");
    double const mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double m2 = 0;
    double m3 = 0;
    for (double v : values)
    {
        double const d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    Skewness result;
    result.value = m3 / std::pow(m2, 1.5);
    result.standard_error
        = std::sqrt(6 * n * (n - 1) / ((n - 2) * (n + 1) * (n + 3)));
    return result;
}

//---------------------------------------------------------------------------//
std::optional<double> escape_crossing_time(TrajectoryRecord<4> const& record,
                                           Sym2eSystem const& system,
                                           IntegratorConfig const& config)
{
    double t_escape = std::numeric_limits<double>::infinity();
    for (auto const& e : record.events)
    {
        if (e.kind == EventKind::escape_radius && e.direction > 0)
        {
            t_escape = e.t_hi;
            break;
        }
    }
    Event<4> const* last = nullptr;
    for (auto const& e : record.events)
    {
        if (e.kind == EventKind::saddle_crossing && e.direction > 0
            && e.t_hi <= t_escape)
        {
            last = &e;
        }
    }
    if (!last)
        return std::nullopt;

    Predicate<4> const beyond_saddle = [&system](double t, auto const& v) {
        double const r2 = v[0] * v[0] + v[1] * v[1];
        return r2 * std::fabs(system.drive()(t)) - std::sqrt(3.0);
    };
    return refine_event(system, *last, beyond_saddle, config).t;
}

double nearest_field_extremum(double t, FieldParams const& params)
{
    double const half_cycle = std::numbers::pi / params.omega;
    double const lo = std::max(0.0, t - half_cycle);
    double const hi = std::min(params.duration, t + half_cycle);
    if (!(lo < hi))
        return std::numeric_limits<double>::quiet_NaN();

    constexpr int n_grid = 400;
    double best = std::numeric_limits<double>::quiet_NaN();
    double const dt = (hi - lo) / n_grid;
    double prev_t = lo;
    double prev_rate = effective_field_rate(lo, params);
    for (int i = 1; i <= n_grid; ++i)
    {
        double const ti = lo + i * dt;
        double const rate = effective_field_rate(ti, params);
        if ((rate > 0) != (prev_rate > 0))
        {
            // Bisect the derivative sign change
            double a = prev_t;
            double b = ti;
            double fa = prev_rate;
            for (int k = 0; k < 80 && b - a > 1e-12; ++k)
            {
                double const m = (a + b) / 2;
                double const fm = effective_field_rate(m, params);
                if ((fm > 0) == (fa > 0))
                {
                    a = m;
                    fa = fm;
                }
                else
                {
                    b = m;
                }
            }
            double const root = (a + b) / 2;
            // Skip the envelope's zeros at the pulse edges
            if (effective_field(root, params) != 0
                && (std::isnan(best)
                    || std::fabs(root - t) < std::fabs(best - t)))
            {
                best = root;
            }
        }
        prev_t = ti;
        prev_rate = rate;
    }
    return best;
}

//---------------------------------------------------------------------------//
char const* to_cstring(EscapeClass c)
{
    switch (c)
    {
        case EscapeClass::symmetric_double:
            return "symmetric_double";
        case EscapeClass::single_recapture:
            return "single_recapture";
        case EscapeClass::sequential_double:
            return "sequential_double";
        case EscapeClass::no_escape:
            return "no_escape";
        case EscapeClass::rejected:
            return "rejected";
    }
    return "unknown";
}

std::array<ElectronFate, 2>
electron_fates(FullState2e const& s, double escape_radius)
{
    std::array<ElectronFate, 2> result;
    std::array<Vec3 const*, 2> const pos{&s.r1, &s.r2};
    std::array<Vec3 const*, 2> const mom{&s.p1, &s.p2};
    for (int i = 0; i < 2; ++i)
    {
        auto const& r = *pos[i];
        auto const& p = *mom[i];
        double const dist = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        double const p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        double const outward = r[0] * p[0] + r[1] * p[1] + r[2] * p[2];
        result[i].energy = p2 / 2 - 2 / dist;
        result[i].p_parallel = p[0];
        result[i].escaped = dist >= escape_radius && result[i].energy > 0
                            && outward > 0;
    }
    return result;
}

EscapeClass
classify_full3d(TrajectoryRecord<12> const& record, double escape_radius)
{
    if (record.termination != Termination::completed || record.samples.empty())
        return EscapeClass::rejected;
    auto const fates = electron_fates(
        FullState2e::from_array(record.final().state), escape_radius);
    int const n_escaped = fates[0].escaped + fates[1].escaped;
    if (n_escaped == 0)
        return EscapeClass::no_escape;
    if (n_escaped == 1)
        return EscapeClass::single_recapture;
    bool const same_side = (fates[0].p_parallel > 0) == (fates[1].p_parallel > 0);
    return same_side ? EscapeClass::symmetric_double
                     : EscapeClass::sequential_double;
}

}  // namespace nsdi
