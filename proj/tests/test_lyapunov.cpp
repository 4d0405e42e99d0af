#include "saddlepep/lyapunov.hpp"

#include <doctest.h>

#include <set>

using namespace pep;

namespace {

int count_constraints(const LyapStage& stage) {
  return static_cast<int>(stage.constraints.size());
}

}  // namespace

TEST_CASE("assembly multiplier counts") {
  SUBCASE("Sim-GDA full set, stage 1: 4 x 6 ordered pairs") {
    const LyapSdp sdp =
        assemble({Method::SimGda, 0.1}, ConstraintSetId::Full, 10.0, 0.9);
    CHECK(count_constraints(sdp.stage1) == 24);
    // C1 shares a variable per unordered pair: 3 + 3 * 6 = 21 independent.
    CHECK(sdp.stage1.n_vars == 21);
  }
  SUBCASE("Sim-GDA definition set, stage 1: 6 independent variables") {
    const LyapSdp sdp =
        assemble({Method::SimGda, 0.1}, ConstraintSetId::Definition, 10.0, 0.9);
    CHECK(count_constraints(sdp.stage1) == 12);
    CHECK(sdp.stage1.n_vars == 6);
  }
  SUBCASE("Alt-GDA queries the intermediate points") {
    const LyapSdp sdp =
        assemble({Method::AltGda, 0.1}, ConstraintSetId::Full, 10.0, 0.9);
    CHECK(sdp.stage0.trace.labels ==
          std::vector<std::string>({"0", "h", "*"}));
    CHECK(sdp.stage1.trace.labels ==
          std::vector<std::string>({"0", "h", "1", "1h", "*"}));
    CHECK(sdp.p == 3);
    CHECK(count_constraints(sdp.stage1) == 4 * 20);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(assemble({Method::SimGda, 0.1}, ConstraintSetId::Full, 1.0,
                             0.9),
                    std::invalid_argument);
  }
}

TEST_CASE("assembled blocks are symmetric and stage-consistent") {
  for (ConstraintSetId set_id :
       {ConstraintSetId::Definition, ConstraintSetId::Reduced,
        ConstraintSetId::Full, ConstraintSetId::Cocoercive}) {
    for (Method method : {Method::SimGda, Method::AltGda}) {
      const LyapSdp sdp = assemble({method, 0.23}, set_id, 7.0, 0.8);
      for (const LyapStage* stage : {&sdp.stage0, &sdp.stage1}) {
        std::set<int> vars;
        for (const LiftedConstraint& c : stage->constraints) {
          CHECK((c.A - c.A.transpose()).cwiseAbs().maxCoeff() < 1e-13);
          CHECK((c.B - c.B.transpose()).cwiseAbs().maxCoeff() < 1e-13);
          CHECK(c.m.size() == stage->trace.n_f);
          vars.insert(c.var);
        }
        CHECK(static_cast<int>(vars.size()) == stage->n_vars);
      }
    }
  }
}

TEST_CASE("Lyapunov block expressions") {
  const SymbolicTrace t0 = method_trace({Method::SimGda, 0.5}, 0);
  const SymbolicTrace t1 = method_trace({Method::SimGda, 0.5}, 1);
  SUBCASE("identity P at rho2 = 1 gives the norm-difference Gram form") {
    const LyapunovBlocks b = lyapunov_blocks(t0, t1, 1.0);
    const Matrix expect = t1.state_x(1).transpose() * t1.state_x(1) -
                          t1.state_x(0).transpose() * t1.state_x(0);
    CHECK((b.p1_x(Matrix::Identity(2, 2)) - expect).cwiseAbs().maxCoeff() <
          1e-14);
  }
  SUBCASE("rho2 = 0 leaves only the stage-1 form") {
    const LyapunovBlocks b = lyapunov_blocks(t0, t1, 0.0);
    const Matrix expect = t1.state_x(1).transpose() * t1.state_x(1);
    CHECK((b.p1_x(Matrix::Identity(2, 2)) - expect).cwiseAbs().maxCoeff() <
          1e-14);
  }
  SUBCASE("Alt-GDA P is 3x3") {
    const LyapSdp sdp =
        assemble({Method::AltGda, 0.1}, ConstraintSetId::Full, 4.0, 0.5);
    CHECK(sdp.stage1.state_x_cur.rows() == 3);
  }
}

TEST_CASE("stage-0 anchors are the squared-distance Gram forms") {
  const LyapSdp sdp =
      assemble({Method::AltGda, 0.3}, ConstraintSetId::Full, 5.0, 0.7);
  Matrix expect = Matrix::Zero(3, 3);
  expect(0, 0) = 1.0;
  CHECK((sdp.stage0.anchor_x - expect).isZero(0.0));
  CHECK(sdp.stage1.anchor_x.isZero(0.0));
}

TEST_CASE("equality rows reference only their stage's multipliers") {
  const LyapSdp sdp =
      assemble({Method::SimGda, 0.2}, ConstraintSetId::Full, 3.0, 0.6);
  // Structural: equality0 consumes a lambda-sized vector, equality1 nu-sized.
  std::vector<double> lambda(sdp.stage0.n_vars, 1.0);
  std::vector<double> nu(sdp.stage1.n_vars, 1.0);
  CHECK(sdp.equality0(lambda).size() == sdp.stage0.trace.n_f);
  CHECK(sdp.equality1(nu).size() == sdp.stage1.trace.n_f);
}
