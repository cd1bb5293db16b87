// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Field.hh
//! Linearly polarized laser pulse with a sin^2 envelope, in atomic units.
#pragma once

#include <numbers>
#include <optional>

namespace nsdi
{
//---------------------------------------------------------------------------//
/*!
 * Pulse parameters.
 *
 * The effective field is eps(t) = F f(t) cos(omega t + phi) with
 * f(t) = sin^2(pi t / T_d) on [0, T_d] and zero elsewhere.
 */
struct FieldParams
{
    double peak_field{0};  //!< F (a.u.)
    double omega{0.057};  //!< Angular frequency (a.u.), 800 nm default
    double phase{0};  //!< Carrier phase (rad)
    double duration{8 * std::numbers::pi / 0.057};  //!< T_d (a.u.)

    //! Pulse lasting an integer number of optical cycles.
    static FieldParams
    n_cycle(double peak_field, double omega, double phase, int cycles = 4);

    //! Throws InvalidArgument if any invariant is violated.
    void validate() const;
};

// Envelope sin^2(pi t / T_d); caller guarantees 0 <= t <= T_d
double pulse_envelope(double t, FieldParams const& params);

// Effective field, zero outside the pulse window
double effective_field(double t, FieldParams const& params);

// Time derivative of the effective field
double effective_field_rate(double t, FieldParams const& params);

//---------------------------------------------------------------------------//
/*!
 * Field seen by a model: either the pulse or a frozen (adiabatic) value.
 */
class Drive
{
  public:
    //! Time-dependent pulse
    explicit Drive(FieldParams const& params);

    //! Constant field, for adiabatic/frozen analyses
    static Drive frozen(double eps);

    //! No field at all
    static Drive none();

    double operator()(double t) const
    {
        return frozen_ ? *frozen_ : effective_field(t, params_);
    }

    double rate(double t) const
    {
        return frozen_ ? 0.0 : effective_field_rate(t, params_);
    }

    //! Time after which the field vanishes identically (infinite if frozen)
    double pulse_end() const;

    FieldParams const& params() const { return params_; }
    bool is_frozen() const { return frozen_.has_value(); }

  private:
    FieldParams params_;
    std::optional<double> frozen_;
};

// Intensity (W/cm^2) <-> field amplitude (a.u.) for a linearly polarized
// pulse, I = I_au * F^2
inline constexpr double atomic_intensity_w_cm2 = 3.50944758e16;
double intensity_to_field(double intensity_w_cm2);
double field_to_intensity(double field_au);

}  // namespace nsdi
