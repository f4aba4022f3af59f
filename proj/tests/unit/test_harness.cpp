#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "vsacap/harness.hpp"

using namespace vsacap;

namespace {

ExperimentConfig small(std::string arch, std::string task, std::map<std::string, std::vector<double>> grid,
                       std::uint64_t trials = 20) {
  ExperimentConfig c;
  c.arch = std::move(arch);
  c.task = std::move(task);
  c.grid = std::move(grid);
  c.trials = trials;
  c.seed = 7;
  return c;
}

std::string csv(const ExperimentConfig& c) {
  std::ostringstream os;
  write_csv(os, c, run(c));
  return os.str();
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("grid expansion is sorted and complete") {
    const auto cells = expand_grid({{"n", {1, 2}}, {"d", {10, 20, 30}}});
    REQUIRE(cells.size() == 6);
    CHECK(cells[0].at("d") == 10);
    CHECK(cells[0].at("n") == 1);
    CHECK(cells[1].at("n") == 2);
    CHECK(cells[5].at("d") == 30);
  }

  TEST_CASE("cell ids are canonical") {
    CHECK(cell_id("mapi", "norm", {{"n", 3}, {"eps", 0.5}}) == "mapi/norm;eps=0.5;n=3");
    CHECK(trial_seed(1, "a", 0) != trial_seed(1, "a", 1));
    CHECK(trial_seed(1, "a", 0) != trial_seed(1, "b", 0));
  }

  TEST_CASE("config json round trip and validation") {
    const auto c = small("mapi", "norm", {{"n", {4}}});
    CHECK(ExperimentConfig::from_json(c.to_json()).to_json() == c.to_json());
    CHECK_THROWS_AS(small("mapi", "bogus", {}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(small("mapi", "norm", {{"zeta", {1}}}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"arch", "mapi"}, {"task", "norm"}, {"grid", {}}, {"x", 1}}),
                    std::invalid_argument);
    auto zero = small("mapi", "norm", {});
    zero.trials = 0;
    CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
  }

  TEST_CASE("wedgedot trials never fail") {
    const auto cells = run(small("setalg", "wedgedot", {{"n", {1, 16}}, {"d", {8}}}, 1));
    for (const auto& c : cells) {
      CHECK(c.status == "ok");
      CHECK(c.failures == 0);
      CHECK(c.trials == 1);
    }
  }

  TEST_CASE("sized m is filled in") {
    const auto cells = run(small("mapi", "norm", {{"eps", {0.5}}, {"delta", {0.05}}}, 2));
    CHECK(cells[0].params.at("m") == 119);
  }

  TEST_CASE("invalid cells are tagged, not fatal") {
    const auto cells = run(small("mapi", "norm", {{"delta", {0.05, 2.0}}}, 2));
    CHECK(cells[0].status == "ok");
    CHECK(cells[1].status.rfind("error:", 0) == 0);
    CHECK(cells[1].trials == 0);
  }

  TEST_CASE("results are deterministic and thread-count invariant") {
    auto c = small("mapb", "member", {{"n", {4, 8}}, {"d", {64}}}, 30);
    const auto one = csv(c);
    CHECK(csv(c) == one);
    c.threads = 4;
    CHECK(csv(c) == one);
    c.seed = 8;
    CHECK(csv(c) != one);
  }

  TEST_CASE("csv layout") {
    const auto out = csv(small("setalg", "wedgedot", {{"n", {2}}}, 3));
    CHECK(out.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(out.find("setalg,wedgedot,,,2,64,,,,3,0,0,0,0,7,philox4x32-10/v1,ok") != std::string::npos);
  }

  TEST_CASE("format_double round trips") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(119) == "119");
    CHECK(format_double(1.0 / 0.0) == "inf");
  }

  TEST_CASE("calibration finds m below theory for the norm task") {
    const auto r = calibrate("mapi", "norm", {{"eps", 0.5}, {"delta", 0.05}, {"n", 4}}, 0.05, 100, 3);
    CHECK(r.m_theory == 119);
    CHECK(r.m_star <= r.m_theory);
    CHECK(r.within_theory);
    CHECK(r.ratio >= 1.0);
    CHECK_THROWS_AS(calibrate("mapi", "norm", {}, 0.05, 99, 3), std::invalid_argument);
  }
}
