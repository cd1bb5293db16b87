// SPDX-License-Identifier: Apache-2.0
//! \file tests/test_config.cc
//! Configuration round trips and output formats.
#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "nsdi/Config.hh"
#include "nsdi/Errors.hh"
#include "nsdi/Output.hh"

using namespace nsdi;
using nlohmann::json;

namespace
{
RunConfig sample_config()
{
    RunConfig c;
    c.command = "ensemble";
    c.field = FieldParams::n_cycle(0.137, 0.057, 0.123456789012345678);
    c.ensemble.energy = -0.58;
    c.ensemble.n_samples = 12345;
    c.ensemble.master_seed = 0xfedcba9876543210ull;
    c.ensemble.region = {-3.3, 4.4, 5.5};
    c.integrator.rel_tol = 3e-11;
    c.integrator.t_end = std::numeric_limits<double>::infinity();
    c.integrator.stop_when_bound_after_pulse = true;
    c.options = {{"note", "x"}, {"list", {1, 2}}};
    c.output_dir = "out/run";
    c.threads = 6;
    return c;
}
}  // namespace

TEST(Config, LosslessRoundTrip)
{
    auto const c = sample_config();
    json const j = c;
    EXPECT_EQ(j.at("schema"), config_schema_version);
    auto const text = j.dump();
    auto const back = json::parse(text).get<RunConfig>();
    EXPECT_EQ(json(back), j);
    EXPECT_EQ(back.field.phase, c.field.phase);
    EXPECT_EQ(back.field.duration, c.field.duration);
    EXPECT_EQ(back.ensemble.master_seed, c.ensemble.master_seed);
    EXPECT_EQ(back.ensemble.region.x_min, -3.3);
    EXPECT_TRUE(std::isinf(back.integrator.t_end));
    EXPECT_EQ(back.integrator.rel_tol, 3e-11);
    EXPECT_TRUE(back.integrator.stop_when_bound_after_pulse);
    EXPECT_EQ(back.options, c.options);
    EXPECT_EQ(back.threads, 6);
}

TEST(Config, MissingKeysKeepDefaults)
{
    auto const c = json::parse(R"({"field": {"peak_field": 0.2}})").get<RunConfig>();
    EXPECT_EQ(c.field.peak_field, 0.2);
    EXPECT_EQ(c.field.omega, 0.057);
    EXPECT_EQ(c.integrator.rel_tol, IntegratorConfig{}.rel_tol);
    EXPECT_EQ(c.ensemble.energy, -0.58);
}

TEST(Config, WrongSchemaRejected)
{
    EXPECT_THROW(json::parse(R"({"schema": "other/9"})").get<RunConfig>(),
                 InvalidArgument);
}

//---------------------------------------------------------------------------//
TEST(Output, SeventeenSignificantDigits)
{
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(-2.5), "-2.5");
    EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
}

TEST(Output, HistogramCsv)
{
    Histogram h(0, 1, 2);
    h.fill(0.25);
    h.fill(0.75);
    h.fill(0.8);
    std::ostringstream os;
    write_histogram_csv(os, h);
    EXPECT_EQ(os.str(),
              "bin_left,bin_right,count,density\n"
              "0,0.5,1,0.66666666666666663\n"
              "0.5,1,2,1.3333333333333333\n");
}

TEST(Output, TrajectoryCsvHeader)
{
    TrajectoryRecord<4> rec;
    rec.samples.push_back({0.5, {1, 2, 3, 4}, -1, 0, 2.2, 3.3});
    std::ostringstream os;
    write_trajectory_csv(os, rec);
    EXPECT_EQ(os.str(),
              "t,x_or_rho,y_or_z,px,py,H,r,r_saddle\n"
              "0.5,1,2,3,4,-1,2.2000000000000002,3.2999999999999998\n");
    TrajectoryRecord<12> full;
    std::ostringstream fs;
    write_trajectory_csv(fs, full);
    EXPECT_EQ(fs.str().substr(0, fs.str().find('\n')),
              "t,x1,y1,z1,x2,y2,z2,px1,py1,pz1,px2,py2,pz2,H,r,r_saddle");
}

TEST(Output, NGonRows)
{
    std::ostringstream os;
    write_ngon_scan_row(os, 14, 0.137, std::nullopt);
    write_ngon_scan_row(os, 2, 0.5, NGonSaddle{2, 0.5, 1, -2, -3, 4}, true);
    EXPECT_EQ(os.str(), "14,0.13700000000000001,false,,,\n2,0.5,true,1,-2,-3,true\n");
}

TEST(Output, SummaryAndManifest)
{
    EnsembleResult r;
    r.trajectories.resize(10);
    r.n_double = 4;
    r.n_bound = 5;
    r.n_rejected = 1;
    auto const s = summary_json(r, HumpMetric{2, 0.4});
    EXPECT_EQ(s.at("n_total"), 10);
    EXPECT_EQ(s.at("n_double"), 4);
    EXPECT_EQ(s.at("n_rejected"), 1);
    EXPECT_EQ(s.at("hump_metric").at("n_local_maxima"), 2);
    EXPECT_TRUE(summary_json(r, std::nullopt).at("hump_metric").is_null());

    EnsembleSpec spec;
    spec.n_samples = 77;
    spec.master_seed = 5;
    auto const m = manifest_json(spec);
    EXPECT_EQ(m.at("E_tilde"), -0.58);
    EXPECT_EQ(m.at("n_samples"), 77);
    EXPECT_EQ(m.at("master_seed"), 5);
    EXPECT_NEAR(m.at("region").at("y_max").get<double>(), 3.5 / 0.58, 1e-12);
}
