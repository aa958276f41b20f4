#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "vcavity/negativity.hpp"
#include "vcavity/propagator.hpp"
#include "vcavity/sweep.hpp"

using namespace vcavity;

namespace {

const double kUniversalSteady = (std::sqrt(2.0) - 1.0) / 2.0;

std::string csv_of(const std::vector<Trajectory>& curves) {
  std::ostringstream os;
  write_trajectory_csv(os, curves);
  return os.str();
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vcavity_test_" + name);
}

}  // namespace

TEST_CASE("trajectory basics") {
  const auto init = named_initial_state(NamedState::Maximal);
  const ModelParams p{0.1, 1.0, 0.0, 0.0};
  const auto traj = compute_trajectory(p, init, 10.0, 11, "x");
  REQUIRE(traj.points.size() == 11);
  CHECK(traj.points.front().t == 0.0);
  CHECK(traj.points.back().t == 10.0);
  CHECK(traj.points[3].t == doctest::Approx(3.0));
  CHECK(traj.points.front().negativity == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& pt : traj.points) {
    CHECK(pt.negativity >= 0.0);
    CHECK(pt.negativity <= 1.0 + 1e-9);
    CHECK(pt.p + pt.abs2[0] + pt.abs2[1] + pt.abs2[2] + pt.abs2[3] == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(compute_trajectory(p, init, 10.0, 1), Error);
  CHECK_THROWS_AS(compute_trajectory(p, init, 0.0, 5), Error);
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 14);
  try {
    make_preset("fig9a");
    FAIL("expected UnknownPreset");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownPreset);
  }

  const Preset fig5b = make_preset("fig5b");
  CHECK(fig5b.init == NamedState::Maximal);
  CHECK(fig5b.t_end == 10.0);
  REQUIRE(fig5b.curves.size() == 4);
  CHECK(fig5b.curves[2].label == "theta=0.9");
  CHECK(fig5b.curves[2].params.gamma0 == 10.0);
  CHECK(fig5b.curves[2].params.omega_dd == 12.0);

  const Preset fig8a = make_preset("fig8a", 10.0);
  CHECK(fig8a.init == NamedState::Product);
  CHECK(fig8a.t_end == 50.0);
  CHECK(fig8a.curves[1].label == "omega=3");
  CHECK(fig8a.curves[1].params.omega_dd == 30.0);
  CHECK(fig8a.curves[1].params.theta == 0.0);

  SUBCASE("regression against analytic limits") {
    for (const auto& name : preset_names()) {
      const Preset preset = make_preset(name);
      const auto init = named_initial_state(preset.init);
      const auto curves = run_preset(name, 2);
      REQUIRE(curves.size() == preset.curves.size());
      for (std::size_t i = 0; i < curves.size(); ++i) {
        CHECK(curves[i].points.size() == kPresetPoints);
        CHECK(curves[i].points.front().negativity == doctest::Approx(negativity({init, 0.0})).epsilon(1e-12));
        // steady values from the closed form vs a long trajectory read
        const auto& p = preset.curves[i].params;
        const double steady = negativity(steady_amplitudes(p, init));
        const double late = negativity_closed_form(propagate(p, init, 40.0 / slowest_decay_rate(p)));
        CHECK(std::abs(steady - late) < 1e-3);
        if (p.theta < 1.0) CHECK(std::abs(steady - kUniversalSteady) < 1e-9);
      }
    }
  }

  SUBCASE("fig2a theta=0 decays monotonically from 1") {
    const auto curve = run_preset("fig2a").front();
    CHECK(curve.points.front().negativity == doctest::Approx(1.0));
    for (std::size_t k = 1; k < curve.points.size(); ++k)
      CHECK(curve.points[k].negativity <= curve.points[k - 1].negativity + 1e-12);
    CHECK(curve.points.back().negativity == doctest::Approx(kUniversalSteady).epsilon(1e-3));
  }
}

TEST_CASE("sweeps") {
  SweepSpec spec;
  spec.gamma0 = {0.1};
  spec.theta = {0.0, 0.5, 0.9};
  spec.omega = {0.0};
  spec.initial = named_initial_state(NamedState::Partial);
  spec.init_label = "partial";
  spec.t_end = 50.0;
  spec.points = 101;

  const auto cells = run_sweep(spec, 3);
  REQUIRE(cells.size() == 3);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(cells[i].params.theta == spec.theta[i]);
    REQUIRE(cells[i].steady_negativity.has_value());
    CHECK(*cells[i].steady_negativity == doctest::Approx(kUniversalSteady).epsilon(1e-9));
  }

  SUBCASE("1x1 grid is a single trajectory") {
    SweepSpec one = spec;
    one.theta = {0.5};
    const auto single = run_sweep(one, 1);
    REQUIRE(single.size() == 1);
    const auto direct = compute_trajectory(single[0].params, one.initial, one.t_end, one.points,
                                           single[0].trajectory->label);
    CHECK(csv_of({*single[0].trajectory}) == csv_of({direct}));
  }

  SUBCASE("theta=1 product steady value") {
    SweepSpec dfs = spec;
    dfs.theta = {1.0};
    dfs.initial = named_initial_state(NamedState::Product);
    const auto cell = run_sweep(dfs, 1).front();
    CHECK(*cell.steady_negativity == doctest::Approx((std::sqrt(6.0) - 1.0) / 4.0).epsilon(1e-12));
  }

  SUBCASE("per-cell failures do not abort the grid") {
    SweepSpec bad = spec;
    bad.theta = {0.5, 1.5};
    bad.gamma0 = {0.0, 0.1};
    const auto mixed = run_sweep(bad, 2);
    REQUIRE(mixed.size() == 4);
    CHECK(mixed[0].error->code() == ErrorCode::NoSteadyState);  // gamma0 = 0
    CHECK(mixed[0].trajectory.has_value());
    CHECK(mixed[1].error->code() == ErrorCode::ThetaOutOfRange);
    CHECK_FALSE(mixed[2].error.has_value());
    CHECK(mixed[3].error->code() == ErrorCode::ThetaOutOfRange);
  }

  SUBCASE("spec checks") {
    SweepSpec empty = spec;
    empty.omega.clear();
    CHECK_THROWS_AS(run_sweep(empty), Error);
    SweepSpec short_grid = spec;
    short_grid.points = 1;
    CHECK_THROWS_AS(run_sweep(short_grid), Error);
  }

  SUBCASE("parallel and serial output are identical") {
    SweepSpec big = spec;
    big.gamma0 = {0.1, 10.0};
    big.theta = {0.0, 0.5, 0.9, 1.0};
    big.omega = {0.0, 6.0, 12.0};
    auto render = [&](unsigned jobs) {
      std::vector<Trajectory> curves;
      for (const auto& cell : run_sweep(big, jobs)) curves.push_back(*cell.trajectory);
      std::ostringstream summary;
      write_steady_csv(summary, run_sweep(big, jobs), "partial");
      return csv_of(curves) + summary.str();
    };
    const std::string serial = render(1);
    CHECK(serial == render(8));
    CHECK(serial == render(8));
  }
}

TEST_CASE("validation runs") {
  const auto grid = default_validation_grid();
  REQUIRE(grid.size() == 24);
  CHECK(grid.front().gamma0 == 0.1);
  CHECK(grid.back().gamma0 == 10.0);
  CHECK(grid.back().theta == 1.0);
  CHECK(grid.back().omega_dd == 12.0);

  CHECK(run_validation({}, 10.0, 1e-3).empty());

  const auto coarse = run_validation({{10.0, 1.0, 0.5, 12.0}, {0.1, 1.0, 0.0, 0.0}}, 1.0, 0.05);
  REQUIRE(coarse.size() == 2);
  CHECK(coarse[0].error->code() == ErrorCode::StepTooLarge);
  CHECK_FALSE(coarse[0].passed);
  CHECK_FALSE(coarse[1].error.has_value());

  const auto fine = run_validation({{10.0, 1.0, 0.9, 12.0}}, 2.0, 1e-3);
  CHECK(fine[0].passed);
  CHECK(fine[0].max_abs_error < 1e-6);
}

TEST_CASE("initial state parsing") {
  CHECK(parse_initial_state("maximal") == named_initial_state(NamedState::Maximal));
  CHECK(parse_initial_state(" product ") == named_initial_state(NamedState::Product));
  const auto s = parse_initial_state("0.5, 0.5i, -0.5-0.25j, 1e-1+2e-1i");
  CHECK(s.c1a == Complex(0.5, 0.0));
  CHECK(s.c1b == Complex(0.0, 0.5));
  CHECK(s.c2a == Complex(-0.5, -0.25));
  CHECK(s.c2b == Complex(0.1, 0.2));
  CHECK(parse_initial_state("0,-i,0,0").c1b == Complex(0.0, -1.0));
  CHECK_THROWS_AS(parse_initial_state("1,0,0"), Error);
  CHECK_THROWS_AS(parse_initial_state("1,0,0,x"), Error);
  CHECK_THROWS_AS(parse_initial_state("bell"), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("command line") {
  SUBCASE("preset csv is deterministic") {
    const auto first = run_cli({"preset", "fig2a", "--jobs", "1"});
    const auto second = run_cli({"preset", "fig2a", "--jobs", "4"});
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.rfind("t,curve_label,negativity,p,abs2_c1a,abs2_c1b,abs2_c2a,abs2_c2b\n0,theta=0,1,0,", 0) == 0);
    CHECK(std::count(first.out.begin(), first.out.end(), '\n') == 1 + 4 * 2001);
  }
  SUBCASE("bad arguments exit with 2") {
    CHECK(run_cli({"preset", "fig9z"}).code == 2);
    CHECK(run_cli({"preset"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"sweep", "--format", "json"}).code == 2);
    CHECK(run_cli({"sweep", "--theta", "abc"}).code == 2);
    CHECK(run_cli({"sweep", "--init", "1,2"}).code == 2);
    CHECK(run_cli({"sweep", "--points", "1"}).code == 2);
  }
  SUBCASE("invalid physics exits with 1") {
    CHECK(run_cli({"sweep", "--theta", "1.5", "--points", "3"}).code == 1);
    CHECK(run_cli({"steady", "--init", "1,1,0,0"}).code == 1);
  }
  SUBCASE("steady") {
    const auto r = run_cli({"steady", "--theta", "1", "--omega", "12", "--init", "product"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("0.362372435696") != std::string::npos);
    CHECK(r.out.find(",1,ok\n") != std::string::npos);
  }
  SUBCASE("validate with a coarse step reports StepTooLarge") {
    const auto r = run_cli({"validate", "--dt", "0.1", "--gamma0", "10", "--theta", "0", "--omega", "12"});
    CHECK(r.code == 1);
    CHECK(r.out.find("StepTooLarge") != std::string::npos);
  }
  SUBCASE("validate passes on a small grid") {
    const auto r = run_cli({"validate", "--gamma0", "0.1,10", "--theta", "0.5", "--omega", "6", "--t-end", "2"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  }
  SUBCASE("config file with command-line override") {
    const auto config = temp_path("config.txt");
    const auto out = temp_path("sweep.csv");
    const auto summary = temp_path("summary.csv");
    {
      std::ofstream f(config);
      f << "# sweep settings\n"
        << "gamma0 = 10\n"
        << "theta = 0,1\n"
        << "init = product\n"
        << "t-end = 5\n"
        << "points = 6\n"
        << "dt = 1e-3\n"  // belongs to validate, ignored here
        << "summary = " << summary.string() << "\n";
    }
    const auto r = run_cli({"sweep", "--config", config.string(), "--points", "3", "--out", out.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(out);
    std::stringstream body;
    body << in.rdbuf();
    const std::string csv = body.str();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);
    CHECK(csv.find("gamma0=10 theta=1 omega=0") != std::string::npos);
    CHECK(csv.find("\n5,") != std::string::npos);
    std::ifstream sin(summary);
    std::stringstream sbody;
    sbody << sin.rdbuf();
    CHECK(sbody.str().find("10,1,1,0,product,strong,0.362372435696") != std::string::npos);

    std::ofstream(config) << "bogus = 1\n";
    CHECK(run_cli({"sweep", "--config", config.string()}).code == 2);
    CHECK(run_cli({"sweep", "--config", temp_path("missing.txt").string()}).code == 2);
    std::filesystem::remove(config);
    std::filesystem::remove(out);
    std::filesystem::remove(summary);
  }
}
