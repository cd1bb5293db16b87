// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Analysis.hh
//! Outcome classification, momentum histograms, and shape metrics.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "Field.hh"
#include "Full3d.hh"
#include "Integrator.hh"
#include "Sym2e.hh"

namespace nsdi
{
//---------------------------------------------------------------------------//
enum class OutcomeTag
{
    double_ionized,
    bound_complex,
    rejected,
};

char const* to_cstring(OutcomeTag tag);

/*!
 * Final state of one symmetric-subspace trajectory.
 *
 * The ion recoil is minus the electron momentum sum; along the field that is
 * -2 px, and perpendicular it vanishes because the electrons' py cancel.
 */
struct Outcome
{
    OutcomeTag tag{OutcomeTag::rejected};
    double p_parallel_ion{0};
    double p_perp_electron{0};  //!< Signed py of electron 1
    double final_energy{0};
};

//! Escape thresholds
struct ClassifyOptions
{
    double escape_radius{500};
};

Outcome classify(TrajectoryRecord<4> const& record,
                 Sym2eSystem const& system,
                 ClassifyOptions const& options = {});

//---------------------------------------------------------------------------//
enum class Normalization
{
    counts,
    density,
};

/*!
 * Fixed-edge histogram with exact integer counts.
 *
 * Values outside the edges are tallied separately and do not contribute to
 * the density normalization.
 */
class Histogram
{
  public:
    Histogram(double lo, double hi, std::size_t n_bins);
    explicit Histogram(std::vector<double> edges);

    void fill(double value);
    //! Add another histogram with identical edges
    void merge(Histogram const& other);

    std::vector<double> const& edges() const { return edges_; }
    std::vector<std::uint64_t> const& counts() const { return counts_; }
    std::size_t n_bins() const { return counts_.size(); }
    std::uint64_t in_range() const;
    std::uint64_t underflow() const { return underflow_; }
    std::uint64_t overflow() const { return overflow_; }

    //! Counts or probability density per bin
    std::vector<double> values(Normalization norm) const;
    std::vector<double> density() const
    {
        return this->values(Normalization::density);
    }

  private:
    std::vector<double> edges_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t underflow_{0};
    std::uint64_t overflow_{0};
};

struct HistogramBinning
{
    double lo;
    double hi;
    std::size_t n_bins;
};

inline constexpr HistogramBinning default_parallel_binning{-5, 5, 100};
inline constexpr HistogramBinning default_perp_binning{0, 3, 60};

// Ion momentum along the field for double-ionized outcomes
Histogram ion_parallel_histogram(std::span<Outcome const> outcomes,
                                 HistogramBinning binning
                                 = default_parallel_binning);

// Perpendicular momentum of one electron; |py| unless signed is requested
Histogram perp_electron_histogram(std::span<Outcome const> outcomes,
                                  HistogramBinning binning
                                  = default_perp_binning,
                                  bool signed_momentum = false);

struct HumpMetric
{
    int n_local_maxima{0};
    double valley_depth_ratio{0};  //!< density at 0 over mean peak density
};

//! Shape of a density histogram after a 5-bin moving average.
//!
//! A maximum is a run of equal smoothed values strictly above both
//! neighbours; runs below \c noise_floor times the global maximum are
//! Monte Carlo tail noise and are not counted.
HumpMetric hump_metric(Histogram const& h,
                       int smoothing_width = 5,
                       double noise_floor = 0.05);

//! Centered moving average, truncated at the edges
std::vector<double> moving_average(std::span<double const> values, int width);

//---------------------------------------------------------------------------//
//! Sample skewness and its standard error under normality
struct Skewness
{
    double value{0};
    double standard_error{0};
};

Skewness sample_skewness(std::span<double const> values);

//---------------------------------------------------------------------------//
/*!
 * Time of the outward saddle crossing that precedes escape.
 *
 * Uses the last outward crossing of r = r_s(t) recorded before the first
 * outward escape-radius event. The crossing is refined on the finite
 * predicate r^2 |eps(t)| - sqrt(3), which has the same sign as r - r_s.
 */
std::optional<double> escape_crossing_time(TrajectoryRecord<4> const& record,
                                           Sym2eSystem const& system,
                                           IntegratorConfig const& config);

//! Nearest local extremum of eps(t) to time t (within the pulse)
double nearest_field_extremum(double t, FieldParams const& params);

//---------------------------------------------------------------------------//
enum class EscapeClass
{
    symmetric_double,  //!< both electrons leave on the same side
    single_recapture,  //!< one escapes, the other stays bound
    sequential_double,  //!< both leave, in opposite directions
    no_escape,
    rejected,
};

char const* to_cstring(EscapeClass c);

struct ElectronFate
{
    bool escaped{false};
    double energy{0};  //!< one-electron energy p^2/2 - 2/r
    double p_parallel{0};
};

//! Classify a 3-D two-electron trajectory by each electron's fate
EscapeClass classify_full3d(TrajectoryRecord<12> const& record,
                            double escape_radius = 50);

std::array<ElectronFate, 2>
electron_fates(FullState2e const& s, double escape_radius = 50);

}  // namespace nsdi
