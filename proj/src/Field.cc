// SPDX-License-Identifier: Apache-2.0
//! \file Field.cc
#include "nsdi/Field.hh"

#include <cmath>
#include <limits>
#include <string>

#include "nsdi/Errors.hh"

namespace nsdi
{
using std::numbers::pi;

FieldParams
FieldParams::n_cycle(double peak_field, double omega, double phase, int cycles)
{
    if (cycles <= 0)
    {
        throw InvalidArgument("pulse must last at least one cycle");
    }
    FieldParams result{peak_field, omega, phase, 2 * pi * cycles / omega};
    result.validate();
    return result;
}

void FieldParams::validate() const
{
    if (!(peak_field >= 0) || !std::isfinite(peak_field))
    {
        throw InvalidArgument("peak field must be finite and >= 0, got "
                              + std::to_string(peak_field));
    }
    if (!(omega > 0) || !std::isfinite(omega))
    {
        throw InvalidArgument("omega must be positive");
    }
    if (!(duration > 0) || !std::isfinite(duration))
    {
        throw InvalidArgument("pulse duration must be positive");
    }
    if (!std::isfinite(phase))
    {
        throw InvalidArgument("phase must be finite");
    }
}

double pulse_envelope(double t, FieldParams const& params)
{
    double s = std::sin(pi * t / params.duration);
    return s * s;
}

double effective_field(double t, FieldParams const& params)
{
    if (t < 0 || t > params.duration)
        return 0;
    return params.peak_field * pulse_envelope(t, params)
           * std::cos(params.omega * t + params.phase);
}

double effective_field_rate(double t, FieldParams const& params)
{
    if (t < 0 || t > params.duration)
        return 0;
    double const arg = params.omega * t + params.phase;
    double const env = pulse_envelope(t, params);
    // d/dt sin^2(pi t/T) = (pi/T) sin(2 pi t/T)
    double const env_rate = pi / params.duration
                            * std::sin(2 * pi * t / params.duration);
    return params.peak_field
           * (env_rate * std::cos(arg) - env * params.omega * std::sin(arg));
}

//---------------------------------------------------------------------------//
Drive::Drive(FieldParams const& params) : params_(params)
{
    params_.validate();
}

Drive Drive::frozen(double eps)
{
    Drive result{FieldParams{}};
    result.frozen_ = eps;
    return result;
}

Drive Drive::none()
{
    Drive result{FieldParams{}};
    result.params_.peak_field = 0;
    return result;
}

double Drive::pulse_end() const
{
    return frozen_ ? std::numeric_limits<double>::infinity()
                   : params_.duration;
}

//---------------------------------------------------------------------------//
double intensity_to_field(double intensity_w_cm2)
{
    if (!(intensity_w_cm2 >= 0))
    {
        throw InvalidArgument("intensity must be non-negative");
    }
    return std::sqrt(intensity_w_cm2 / atomic_intensity_w_cm2);
}

double field_to_intensity(double field_au)
{
    if (!(field_au >= 0))
    {
        throw InvalidArgument("field amplitude must be non-negative");
    }
    return atomic_intensity_w_cm2 * field_au * field_au;
}

}  // namespace nsdi
