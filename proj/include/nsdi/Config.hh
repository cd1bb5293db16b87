// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Config.hh
//! Run configuration and its JSON form.
#pragma once

#include <string>

#include <json.hpp>

#include "Field.hh"
#include "Integrator.hh"
#include "Sampling.hh"

namespace nsdi
{
inline constexpr char config_schema_version[] = "nsdi-config/1";

struct RunConfig
{
    std::string command;
    FieldParams field;
    EnsembleSpec ensemble;
    IntegratorConfig integrator;
    nlohmann::json options = nlohmann::json::object();  //!< Command-specific
    std::string output_dir{"."};
    int threads{1};
};

void to_json(nlohmann::json& j, FieldParams const& f);
void from_json(nlohmann::json const& j, FieldParams& f);
void to_json(nlohmann::json& j, EnsembleSpec const& e);
void from_json(nlohmann::json const& j, EnsembleSpec& e);
void to_json(nlohmann::json& j, IntegratorConfig const& c);
void from_json(nlohmann::json const& j, IntegratorConfig& c);
void to_json(nlohmann::json& j, RunConfig const& c);
void from_json(nlohmann::json const& j, RunConfig& c);

}  // namespace nsdi
