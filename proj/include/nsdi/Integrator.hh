// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Integrator.hh
//! Adaptive 8th-order Runge-Kutta propagation with event bookkeeping.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "Errors.hh"
#include "Field.hh"
#include "detail/Dop853Tableau.hh"

namespace nsdi
{
//---------------------------------------------------------------------------//
/*!
 * Requirements on a dynamical system propagated by \c integrate.
 */
template<class S>
concept TrajectorySystem = requires(S const& s,
                                    typename S::Vector const& v,
                                    double t) {
    { S::dim } -> std::convertible_to<std::size_t>;
    { s.derivative(v, t) } -> std::same_as<typename S::Vector>;
    { s.energy(v, t) } -> std::convertible_to<double>;
    { s.energy_rate(v, t) } -> std::convertible_to<double>;
    { s.radius(v) } -> std::convertible_to<double>;
    { s.radial_velocity(v) } -> std::convertible_to<double>;
    { s.closest_approach(v) } -> std::convertible_to<double>;
    { s.saddle_radius(t) } -> std::convertible_to<double>;
    { s.drive().pulse_end() } -> std::convertible_to<double>;
};

//---------------------------------------------------------------------------//
struct IntegratorConfig
{
    double rel_tol{1e-13};
    double abs_tol{1e-13};
    double dt_init{1e-2};  //!< First trial step (a.u.)
    double dt_min{1e-12};  //!< Smaller steps abort the trajectory
    double dt_max{1.0};  //!< Upper bound on sample spacing (a.u.)
    double r_min{1e-3};  //!< Closer approach to a singularity aborts
    double t_end{std::numeric_limits<double>::infinity()};
    double escape_radius{500};  //!< Post-pulse stop radius
    double saddle_watch_radius{20};  //!< Saddle crossings tracked inside
    bool record_samples{true};  //!< Keep every accepted step
    bool stop_when_bound_after_pulse{false};  //!< Stop coda once H < 0
    std::size_t max_steps{50'000'000};

    void validate() const
    {
        if (!(rel_tol > 0) || !(abs_tol > 0))
            throw InvalidArgument("tolerances must be positive");
        if (!(dt_min > 0) || !(dt_min < dt_init) || !(dt_init <= dt_max))
            throw InvalidArgument("require 0 < dt_min < dt_init <= dt_max");
        if (!(r_min > 0))
            throw InvalidArgument("r_min must be positive");
        if (!(escape_radius > 0) || !(saddle_watch_radius > 0))
            throw InvalidArgument("radii must be positive");
        if (std::isnan(t_end))
            throw InvalidArgument("t_end must not be NaN");
    }
};

//! Default configuration: propagate through the pulse plus a 2 T_d coda
inline IntegratorConfig default_integrator_config(FieldParams const& field)
{
    IntegratorConfig config;
    config.t_end = 3 * field.duration;
    return config;
}

enum class Termination
{
    completed,
    deep_encounter_abort,
    step_underflow,
};

inline char const* to_cstring(Termination t)
{
    switch (t)
    {
        case Termination::completed:
            return "completed";
        case Termination::deep_encounter_abort:
            return "deep_encounter_abort";
        case Termination::step_underflow:
            return "step_underflow";
    }
    return "unknown";
}

enum class EventKind
{
    saddle_crossing,  //!< r - r_saddle(t) changed sign
    deep_encounter,  //!< approach closer than r_min
    escape_radius,  //!< r crossed the escape radius
};

inline char const* to_cstring(EventKind k)
{
    switch (k)
    {
        case EventKind::saddle_crossing:
            return "saddle_crossing";
        case EventKind::deep_encounter:
            return "deep_encounter";
        case EventKind::escape_radius:
            return "escape_radius";
    }
    return "unknown";
}

template<std::size_t D>
struct Sample
{
    double t{0};
    std::array<double, D> state{};
    double energy{0};
    double work{0};  //!< Accumulated integral of dH/dt since start
    double radius{0};
    double saddle_radius{0};

    double saddle_distance() const { return radius - saddle_radius; }
};

//! Event bracketed between two consecutive accepted steps
template<std::size_t D>
struct Event
{
    EventKind kind;
    int direction{0};  //!< +1 for an outward crossing
    double t_lo{0};
    double t_hi{0};
    std::array<double, D> state_lo{};
    std::array<double, D> state_hi{};
};

template<std::size_t D>
struct TrajectoryRecord
{
    std::vector<Sample<D>> samples;
    std::vector<Event<D>> events;
    Termination termination{Termination::completed};
    double pulse_end{0};
    std::size_t n_accepted{0};
    std::size_t n_rejected{0};

    Sample<D> const& initial() const { return samples.front(); }
    Sample<D> const& final() const { return samples.back(); }
};

template<std::size_t D>
struct Crossing
{
    double t;
    std::array<double, D> state;
};

template<std::size_t D>
using Predicate = std::function<double(double, std::array<double, D> const&)>;

namespace detail
{
//---------------------------------------------------------------------------//
template<std::size_t D>
struct StepResult
{
    std::array<double, D> y;
    double work_increment{0};
    double error{0};  //!< Weighted RMS error, accept if <= 1
};

/*!
 * Single Dormand-Prince 8(5,3) step from (t, y) with derivative k0.
 *
 * The explicit time derivative of H is integrated with the same weights so
 * that the work done by the field is known to the order of the method.
 */
template<TrajectorySystem System>
StepResult<System::dim>
dop853_step(System const& sys,
            double t,
            typename System::Vector const& y,
            typename System::Vector const& k0,
            double h,
            double rel_tol,
            double abs_tol)
{
    namespace tab = dop853;
    constexpr std::size_t n = System::dim;
    using Vector = typename System::Vector;

    std::array<Vector, tab::stages> k;
    std::array<double, tab::stages> g;
    k[0] = k0;
    g[0] = sys.energy_rate(y, t);
    for (int i = 1; i < tab::stages; ++i)
    {
        Vector yi = y;
        for (int j = 0; j < i; ++j)
        {
            double const aij = tab::a[i][j];
            if (aij == 0)
                continue;
            for (std::size_t m = 0; m < n; ++m)
                yi[m] += h * aij * k[j][m];
        }
        double const ti = t + tab::c[i] * h;
        k[i] = sys.derivative(yi, ti);
        g[i] = sys.energy_rate(yi, ti);
    }

    StepResult<n> result;
    result.y = y;
    double err5_sq = 0;
    double err3_sq = 0;
    for (std::size_t m = 0; m < n; ++m)
    {
        double incr = 0;
        double e5 = 0;
        double e3 = 0;
        for (int i = 0; i < tab::stages; ++i)
        {
            incr += tab::b[i] * k[i][m];
            e5 += tab::e5[i] * k[i][m];
            e3 += tab::e3[i] * k[i][m];
        }
        result.y[m] += h * incr;
        double const scale
            = abs_tol
              + rel_tol * std::max(std::fabs(y[m]), std::fabs(result.y[m]));
        err5_sq += (e5 / scale) * (e5 / scale);
        err3_sq += (e3 / scale) * (e3 / scale);
    }
    for (int i = 0; i < tab::stages; ++i)
        result.work_increment += h * tab::b[i] * g[i];

    if (err5_sq == 0 && err3_sq == 0)
    {
        result.error = 0;
    }
    else
    {
        result.error = std::fabs(h) * err5_sq
                       / std::sqrt((err5_sq + 0.01 * err3_sq) * n);
    }
    if (!std::isfinite(result.error))
    {
        result.error = std::numeric_limits<double>::infinity();
    }
    return result;
}

inline int sign_of(double v)
{
    return (v > 0) - (v < 0);
}

//! Illinois-modified regula falsi on a bracketing interval
template<class F>
double find_root(F&& f, double lo, double hi, double f_lo, double f_hi)
{
    constexpr int max_iter = 200;
    int side = 0;
    for (int iter = 0; iter < max_iter; ++iter)
    {
        double const width = hi - lo;
        if (width <= 1e-13 * std::max(1.0, std::fabs(hi)))
            break;
        double mid = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if (!(mid > lo && mid < hi))
            mid = lo + width / 2;
        double const f_mid = f(mid);
        if (f_mid == 0)
            return mid;
        if ((f_mid > 0) == (f_hi > 0))
        {
            hi = mid;
            f_hi = f_mid;
            if (side == -1)
                f_lo /= 2;
            side = -1;
        }
        else
        {
            lo = mid;
            f_lo = f_mid;
            if (side == 1)
                f_hi /= 2;
            side = 1;
        }
    }
    return std::fabs(f_lo) < std::fabs(f_hi) ? lo : hi;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Propagate a trajectory from t0 to config.t_end.
 *
 * After the pulse (t >= drive().pulse_end()) the run stops as soon as the
 * system radius reaches config.escape_radius. Every step that lands within
 * r_min of a singularity, or that cannot be completed with a step above
 * dt_min, terminates the run with the corresponding status.
 */
template<TrajectorySystem System>
TrajectoryRecord<System::dim>
integrate(System const& sys,
          typename System::Vector const& initial,
          double t0,
          IntegratorConfig const& config)
{
    constexpr std::size_t n = System::dim;
    using Vector = typename System::Vector;
    using SampleT = Sample<n>;

    config.validate();
    if (!(t0 >= 0))
        throw InvalidArgument("initial time must be non-negative");

    TrajectoryRecord<n> record;
    record.pulse_end = sys.drive().pulse_end();

    auto make_sample = [&sys](double t, Vector const& y, double work) {
        return SampleT{t,
                       y,
                       sys.energy(y, t),
                       work,
                       sys.radius(y),
                       sys.saddle_radius(t)};
    };

    SampleT current = make_sample(t0, initial, 0.0);
    if (sys.closest_approach(initial) < config.r_min)
        throw SingularEvaluation("initial state inside r_min");
    record.samples.push_back(current);

    Vector k0 = sys.derivative(initial, t0);
    double h = config.dt_init;
    double err_old = 1e-4;
    constexpr double safety = 0.9;
    constexpr double beta = 0.04;
    constexpr double expo = 1.0 / 8 - beta * 0.2;
    constexpr double fac_min = 0.333;
    constexpr double fac_max = 6.0;

    auto finish = [&](Termination why) {
        record.termination = why;
        if (record.samples.back().t != current.t)
            record.samples.push_back(current);
        return record;
    };

    while (current.t < config.t_end)
    {
        if (record.n_accepted + record.n_rejected >= config.max_steps)
            return finish(Termination::step_underflow);

        double const t = current.t;
        h = std::min(h, config.dt_max);
        double target = config.t_end;
        if (t < record.pulse_end && record.pulse_end < target)
            target = record.pulse_end;
        bool const lands = t + h >= target;
        if (lands)
            h = target - t;

        detail::StepResult<n> step;
        bool singular = false;
        try
        {
            step = detail::dop853_step(
                sys, t, current.state, k0, h, config.rel_tol, config.abs_tol);
        }
        catch (SingularEvaluation const&)
        {
            singular = true;
        }

        if (singular || step.error > 1)
        {
            ++record.n_rejected;
            if (singular)
            {
                h /= 2;
            }
            else
            {
                double const fac11 = std::pow(step.error, expo);
                h /= std::min(1 / fac_min, fac11 / safety);
            }
            if (h < config.dt_min)
            {
                return finish(singular ? Termination::deep_encounter_abort
                                       : Termination::step_underflow);
            }
            continue;
        }

        // Accept
        double const t_new = lands ? target : t + h;
        Vector k_new;
        try
        {
            if (sys.closest_approach(step.y) < config.r_min)
                throw SingularEvaluation("deep encounter");
            k_new = sys.derivative(step.y, t_new);
        }
        catch (SingularEvaluation const&)
        {
            record.events.push_back({EventKind::deep_encounter,
                                     0,
                                     t,
                                     t_new,
                                     current.state,
                                     step.y});
            return finish(Termination::deep_encounter_abort);
        }
        ++record.n_accepted;
        SampleT next = make_sample(t_new, step.y, current.work + step.work_increment);
        if (!std::isfinite(next.energy))
            return finish(Termination::deep_encounter_abort);

        // Saddle crossings inside the watch radius
        if (current.radius < config.saddle_watch_radius
            && next.radius < config.saddle_watch_radius)
        {
            int const s0 = detail::sign_of(current.saddle_distance());
            int const s1 = detail::sign_of(next.saddle_distance());
            if (s0 != s1 && s1 != 0)
            {
                record.events.push_back({EventKind::saddle_crossing,
                                         s1,
                                         t,
                                         t_new,
                                         current.state,
                                         next.state});
            }
        }
        if ((current.radius < config.escape_radius)
            != (next.radius < config.escape_radius))
        {
            record.events.push_back(
                {EventKind::escape_radius,
                 next.radius >= config.escape_radius ? 1 : -1,
                 t,
                 t_new,
                 current.state,
                 next.state});
        }

        current = next;
        k0 = k_new;
        if (config.record_samples)
            record.samples.push_back(current);

        // Step size proposal (PI controller)
        double const fac11 = std::pow(std::max(step.error, 1e-300), expo);
        double fac = fac11 / std::pow(err_old, beta);
        fac = std::clamp(fac / safety, 1 / fac_max, 1 / fac_min);
        err_old = std::max(step.error, 1e-4);
        double const h_used = h;
        h = h_used / fac;

        if (current.t >= record.pulse_end)
        {
            if (current.radius >= config.escape_radius)
                break;
            if (config.stop_when_bound_after_pulse && current.energy < 0)
                break;
        }
    }
    return finish(Termination::completed);
}

//---------------------------------------------------------------------------//
/*!
 * Refine the root of a predicate between two states one step apart.
 *
 * Intermediate states are regenerated with a single sub-step from the lower
 * end of the bracket, so the located state is as accurate as the step.
 */
template<TrajectorySystem System>
Crossing<System::dim> refine_crossing(System const& sys,
                                      double t_lo,
                                      typename System::Vector const& y_lo,
                                      double t_hi,
                                      Predicate<System::dim> const& predicate,
                                      IntegratorConfig const& config = {})
{
    using Vector = typename System::Vector;
    Vector const k_lo = sys.derivative(y_lo, t_lo);
    auto state_at = [&](double tau) -> Vector {
        if (tau == t_lo)
            return y_lo;
        return detail::dop853_step(sys,
                                   t_lo,
                                   y_lo,
                                   k_lo,
                                   tau - t_lo,
                                   config.rel_tol,
                                   config.abs_tol)
            .y;
    };
    double const f_lo = predicate(t_lo, y_lo);
    double const f_hi = predicate(t_hi, state_at(t_hi));
    if (f_lo == 0)
        return {t_lo, y_lo};
    if (f_hi == 0)
        return {t_hi, state_at(t_hi)};
    if ((f_lo > 0) == (f_hi > 0))
        throw NoCrossing("predicate does not change sign on the bracket");
    double const root = detail::find_root(
        [&](double tau) { return predicate(tau, state_at(tau)); },
        t_lo,
        t_hi,
        f_lo,
        f_hi);
    return {root, state_at(root)};
}

//! Locate the first sign change of the predicate along the recorded samples
template<TrajectorySystem System>
Crossing<System::dim> locate_event(System const& sys,
                                   TrajectoryRecord<System::dim> const& record,
                                   Predicate<System::dim> const& predicate,
                                   IntegratorConfig const& config = {})
{
    auto const& samples = record.samples;
    if (samples.empty())
        throw NoCrossing("empty trajectory");
    double f_prev = predicate(samples[0].t, samples[0].state);
    if (f_prev == 0)
        return {samples[0].t, samples[0].state};
    for (std::size_t i = 1; i < samples.size(); ++i)
    {
        double const f = predicate(samples[i].t, samples[i].state);
        if (f == 0 || (f > 0) != (f_prev > 0))
        {
            return refine_crossing(sys,
                                   samples[i - 1].t,
                                   samples[i - 1].state,
                                   samples[i].t,
                                   predicate,
                                   config);
        }
        f_prev = f;
    }
    throw NoCrossing("predicate never changes sign along the trajectory");
}

//! Refine an event recorded by the integrator to the crossing of its own
//! defining predicate
template<TrajectorySystem System>
Crossing<System::dim> refine_event(System const& sys,
                                   Event<System::dim> const& event,
                                   Predicate<System::dim> const& predicate,
                                   IntegratorConfig const& config = {})
{
    return refine_crossing(
        sys, event.t_lo, event.state_lo, event.t_hi, predicate, config);
}

}  // namespace nsdi
