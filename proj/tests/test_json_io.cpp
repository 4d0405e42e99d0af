#include "saddlepep/json_io.hpp"

#include <doctest.h>

using namespace pep;

TEST_CASE("sample set round trip") {
  SampleSet set;
  set.d_x = 2;
  set.d_y = 1;
  SaddleSample s;
  s.x = Vector::Constant(2, 1.5);
  s.y = Vector::Constant(1, -2.0);
  s.gx = Vector::Constant(2, 0.25);
  s.gy = Vector::Constant(1, 3.0);
  s.f = 7.5;
  set.samples = {s};
  const SampleSet back = sample_set_from_json(to_json(set));
  CHECK(back.d_x == 2);
  CHECK(back.samples.size() == 1);
  CHECK(back.samples[0].x[1] == 1.5);
  CHECK(back.samples[0].f == 7.5);
}

TEST_CASE("malformed sample sets are rejected") {
  CHECK_THROWS(sample_set_from_json(Json::parse(R"({"d_x": 1})")));
  CHECK_THROWS(sample_set_from_json(Json::parse(
      R"({"d_x": 2, "d_y": 1, "samples": [{"x": [1], "y": [0], "gx": [0, 0], "gy": [0], "f": 0}]})")));
}

TEST_CASE("kernel export is row-major 4x4") {
  const KernelSet ks = kernel_matrices(ConstraintSetId::Full, 0.5);
  const Json j = to_json(ks);
  REQUIRE(j.at("kernels").size() == 4);
  const Json& a2 = j.at("kernels")[1].at("A");
  CHECK(a2.size() == 4);
  CHECK(a2[0].size() == 4);
  CHECK(a2[0][0].get<double>() == doctest::Approx(-0.25));  // -m/2 at m = 1/2
  CHECK(j.at("symmetric_multipliers")[0] == "C1");
}

TEST_CASE("certificate round trip preserves the verification result") {
  const LyapSdp sdp =
      assemble({Method::SimGda, 0.1}, ConstraintSetId::Definition, 10.0, 1.0);
  const SolveOutcome out = solve_feasibility(sdp);
  REQUIRE(out.status == SolveStatus::Feasible);
  const Json j = to_json(*out.certificate);
  CHECK(j.contains("rho2"));
  CHECK(j.at("lambda").is_array());
  CHECK(j.at("residuals").contains("min_psd_eigenvalue"));
  const Certificate back = certificate_from_json(j);
  CHECK(verify_certificate(sdp, back, 1e-6).ok());
}

TEST_CASE("problem dump carries both stages") {
  const LyapSdp sdp =
      assemble({Method::AltGda, 0.2}, ConstraintSetId::Full, 5.0, 0.8);
  const Json j = problem_dump(sdp);
  CHECK(j.at("stage0").at("n") == 3);
  CHECK(j.at("stage1").at("n") == 5);
  CHECK(j.at("stage1").at("constraints").size() == 80);
  CHECK(j.at("p") == 3);
}

TEST_CASE("game serialization round trip") {
  const QuadraticGame g = random_game(2, 3, 0.2, 1.0, 42);
  const QuadraticGame back = game_from_json(to_json(g));
  CHECK((back.P - g.P).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.R - g.R).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.L == g.L);
}
