// SPDX-License-Identifier: Apache-2.0
//! \file Config.cc
#include "nsdi/Config.hh"

#include <cmath>
#include <limits>

#include "nsdi/Errors.hh"

namespace nsdi
{
namespace
{
// JSON has no infinity; use a string sentinel
nlohmann::json encode(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double decode(nlohmann::json const& j)
{
    if (j.is_string())
    {
        auto const s = j.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        throw InvalidArgument("expected a number, got '" + s + "'");
    }
    return j.get<double>();
}

template<class T>
void read_if(nlohmann::json const& j, char const* key, T& value)
{
    if (j.contains(key))
        j.at(key).get_to(value);
}

void read_double_if(nlohmann::json const& j, char const* key, double& value)
{
    if (j.contains(key))
        value = decode(j.at(key));
}
}  // namespace

void to_json(nlohmann::json& j, FieldParams const& f)
{
    j = {{"peak_field", f.peak_field},
         {"omega", f.omega},
         {"phase", f.phase},
         {"duration", f.duration}};
}

void from_json(nlohmann::json const& j, FieldParams& f)
{
    read_double_if(j, "peak_field", f.peak_field);
    read_double_if(j, "omega", f.omega);
    read_double_if(j, "phase", f.phase);
    read_double_if(j, "duration", f.duration);
}

void to_json(nlohmann::json& j, EnsembleSpec const& e)
{
    j = {{"E_tilde", e.energy},
         {"n_samples", e.n_samples},
         {"master_seed", e.master_seed},
         {"region",
          {{"x_min", e.region.x_min},
           {"x_max", e.region.x_max},
           {"y_max", e.region.y_max}}},
         {"retry_budget", e.retry_budget}};
}

void from_json(nlohmann::json const& j, EnsembleSpec& e)
{
    read_double_if(j, "E_tilde", e.energy);
    read_if(j, "n_samples", e.n_samples);
    read_if(j, "master_seed", e.master_seed);
    read_if(j, "retry_budget", e.retry_budget);
    if (j.contains("region"))
    {
        auto const& r = j.at("region");
        read_double_if(r, "x_min", e.region.x_min);
        read_double_if(r, "x_max", e.region.x_max);
        read_double_if(r, "y_max", e.region.y_max);
    }
}

void to_json(nlohmann::json& j, IntegratorConfig const& c)
{
    j = {{"rel_tol", c.rel_tol},
         {"abs_tol", c.abs_tol},
         {"dt_init", c.dt_init},
         {"dt_min", c.dt_min},
         {"dt_max", c.dt_max},
         {"r_min", c.r_min},
         {"t_end", encode(c.t_end)},
         {"escape_radius", c.escape_radius},
         {"saddle_watch_radius", c.saddle_watch_radius},
         {"record_samples", c.record_samples},
         {"stop_when_bound_after_pulse", c.stop_when_bound_after_pulse},
         {"max_steps", c.max_steps}};
}

void from_json(nlohmann::json const& j, IntegratorConfig& c)
{
    read_double_if(j, "rel_tol", c.rel_tol);
    read_double_if(j, "abs_tol", c.abs_tol);
    read_double_if(j, "dt_init", c.dt_init);
    read_double_if(j, "dt_min", c.dt_min);
    read_double_if(j, "dt_max", c.dt_max);
    read_double_if(j, "r_min", c.r_min);
    read_double_if(j, "t_end", c.t_end);
    read_double_if(j, "escape_radius", c.escape_radius);
    read_double_if(j, "saddle_watch_radius", c.saddle_watch_radius);
    read_if(j, "record_samples", c.record_samples);
    read_if(j, "stop_when_bound_after_pulse", c.stop_when_bound_after_pulse);
    read_if(j, "max_steps", c.max_steps);
}

void to_json(nlohmann::json& j, RunConfig const& c)
{
    j = {{"schema", config_schema_version},
         {"command", c.command},
         {"field", c.field},
         {"ensemble", c.ensemble},
         {"integrator", c.integrator},
         {"options", c.options},
         {"output_dir", c.output_dir},
         {"threads", c.threads}};
}

void from_json(nlohmann::json const& j, RunConfig& c)
{
    if (j.contains("schema")
        && j.at("schema").get<std::string>() != config_schema_version)
    {
        throw InvalidArgument("unsupported config schema "
                              + j.at("schema").get<std::string>());
    }
    read_if(j, "command", c.command);
    read_if(j, "field", c.field);
    read_if(j, "ensemble", c.ensemble);
    read_if(j, "integrator", c.integrator);
    read_if(j, "options", c.options);
    read_if(j, "output_dir", c.output_dir);
    read_if(j, "threads", c.threads);
}

}  // namespace nsdi
