#include "saddlepep/constraints.hpp"

#include "saddlepep/interpolation.hpp"

#include <doctest.h>

#include <random>

using namespace pep;

namespace {

SaddleSample random_sample(int d_x, int d_y, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  SaddleSample s;
  s.x.resize(d_x);
  s.y.resize(d_y);
  s.gx.resize(d_x);
  s.gy.resize(d_y);
  for (int i = 0; i < d_x; ++i) {
    s.x[i] = gauss(rng);
    s.gx[i] = gauss(rng);
  }
  for (int i = 0; i < d_y; ++i) {
    s.y[i] = gauss(rng);
    s.gy[i] = gauss(rng);
  }
  s.f = gauss(rng);
  return s;
}

double cross_gap(const SaddleSample& si, const SaddleSample& sj) {
  return si.f - sj.f - sj.gx.dot(si.x - sj.x) - si.gy.dot(si.y - sj.y);
}

const ConstraintKernel& kernel_of(const KernelSet& ks, ConstraintId id) {
  for (const ConstraintKernel& k : ks.kernels)
    if (k.id == id) return k;
  throw std::runtime_error("kernel not found");
}

}  // namespace

TEST_CASE("kernel matrices match the printed forms") {
  const KernelSet full = kernel_matrices(ConstraintSetId::Full, 0.5);
  REQUIRE(full.kernels.size() == 4);

  SUBCASE("A2 at mu/L = 1/2") {
    Eigen::Matrix4d expect;
    expect << -0.5, 0.5, 0, -1,
               0.5, -0.5, 0, 1,
               0, 0, 0, 0,
               -1, 1, 0, 0;
    expect *= 0.5;
    CHECK((kernel_of(full, ConstraintId::C2).A - expect).cwiseAbs().maxCoeff() ==
          0.0);
  }
  SUBCASE("A1 = B1 independent of mu/L") {
    Eigen::Matrix4d expect;
    expect << 1, -1, -1, -1,
              -1, 1, 1, 1,
              -1, 1, -1, 1,
              -1, 1, 1, -1;
    expect *= 0.25;
    for (double m : {0.1, 0.5, 0.9}) {
      const KernelSet ks = kernel_matrices(ConstraintSetId::Full, m);
      CHECK((kernel_of(ks, ConstraintId::C1).A - expect).cwiseAbs().maxCoeff() ==
            0.0);
      CHECK((kernel_of(ks, ConstraintId::C1).B - expect).cwiseAbs().maxCoeff() ==
            0.0);
    }
  }
  SUBCASE("C3 prefactor 1/(2(1 - mu/L))") {
    const double m = 0.25;
    const KernelSet ks = kernel_matrices(ConstraintSetId::Full, m);
    CHECK(kernel_of(ks, ConstraintId::C3).A(0, 0) ==
          doctest::Approx(-m / (2.0 * (1.0 - m))));
    CHECK(kernel_of(ks, ConstraintId::C3).A(3, 3) ==
          doctest::Approx(-1.0 / (2.0 * (1.0 - m))));
  }
  SUBCASE("reduced set has exactly C1 and C2") {
    const KernelSet ks = kernel_matrices(ConstraintSetId::Reduced, 0.1);
    REQUIRE(ks.kernels.size() == 2);
    CHECK(ks.kernels[0].id == ConstraintId::C1);
    CHECK(ks.kernels[1].id == ConstraintId::C2);
    CHECK(ks.rule.symmetric == std::set<ConstraintId>{ConstraintId::C1});
    CHECK(ks.rule.zeroed ==
          std::set<ConstraintId>({ConstraintId::C3, ConstraintId::C4}));
  }
  SUBCASE("definition set symmetrizes C1 and C2") {
    const KernelSet ks = kernel_matrices(ConstraintSetId::Definition, 0.1);
    CHECK(ks.rule.symmetric ==
          std::set<ConstraintId>({ConstraintId::C1, ConstraintId::C2}));
  }
  SUBCASE("kernels are symmetric matrices") {
    for (ConstraintSetId id :
         {ConstraintSetId::Full, ConstraintSetId::Cocoercive}) {
      const KernelSet ks = kernel_matrices(id, 0.3);
      for (const ConstraintKernel& k : ks.kernels) {
        CHECK((k.A - k.A.transpose()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((k.B - k.B.transpose()).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
  SUBCASE("parameter out of range") {
    CHECK_THROWS_AS(kernel_matrices(ConstraintSetId::Full, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(kernel_matrices(ConstraintSetId::Full, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("evaluate_pair basics") {
  const KernelSet ks = kernel_matrices(ConstraintSetId::Full, 0.5);
  std::mt19937_64 rng(5);
  const SaddleSample s = random_sample(2, 3, rng);
  SUBCASE("identical samples evaluate to zero") {
    for (const ConstraintKernel& k : ks.kernels)
      CHECK(evaluate_pair(k, s, s) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("symmetrized C1 pair on unit displacement equals one half") {
    SaddleSample si, sj;
    si.x = Vector::Constant(1, 1.0);
    sj.x = Vector::Zero(1);
    si.y = sj.y = Vector::Zero(1);
    si.gx = sj.gx = Vector::Zero(1);
    si.gy = sj.gy = Vector::Zero(1);
    si.f = sj.f = 0.7;
    const ConstraintKernel& c1 = kernel_of(ks, ConstraintId::C1);
    CHECK(evaluate_pair(c1, si, sj) + evaluate_pair(c1, sj, si) ==
          doctest::Approx(0.5));
  }
  SUBCASE("C2 equality case for the extreme quadratic") {
    // f = x^2/2 - y^2/2 is the mu = L member; at mu/L -> 1 the C2 slack
    // vanishes.
    const KernelSet near = kernel_matrices(ConstraintSetId::Full, 1.0 - 1e-10);
    QuadraticSaddleFn fn;
    fn.mu = 1.0;
    fn.a = Vector::Zero(1);
    fn.b = Vector::Zero(1);
    fn.c = 0.0;
    const SaddleSample a = fn.sample_at(Vector::Constant(1, 1.5),
                                        Vector::Constant(1, -0.5));
    const SaddleSample b = fn.sample_at(Vector::Constant(1, -0.2),
                                        Vector::Constant(1, 0.8));
    CHECK(std::abs(evaluate_pair(kernel_of(near, ConstraintId::C2), a, b)) <
          1e-8);
  }
}

TEST_CASE("kernel vs pointwise agreement on random pairs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  int trials = 0;
  for (int t = 0; t < 1000; ++t) {
    const double m = unif(rng);
    const KernelSet ks = kernel_matrices(ConstraintSetId::Full, m);
    const SaddleSample si = random_sample(2, 2, rng);
    const SaddleSample sj = random_sample(2, 2, rng);
    const Vector dx = si.x - sj.x;
    const Vector dy = si.y - sj.y;
    const Vector dgx = si.gx - sj.gx;
    const Vector dgy = si.gy - sj.gy;
    const double dz2 = dx.squaredNorm() + dy.squaredNorm();
    const double dg2 = dgx.squaredNorm() + dgy.squaredNorm();
    const double d = cross_gap(si, sj);

    // C1: the symmetrized pair sum equals (L^2 |dz|^2 - |dg|^2) / 2 at L = 1.
    const ConstraintKernel& c1 = kernel_of(ks, ConstraintId::C1);
    CHECK(evaluate_pair(c1, si, sj) + evaluate_pair(c1, sj, si) ==
          doctest::Approx(0.5 * (dz2 - dg2)).epsilon(1e-10));

    // C2 per ordered pair is the strong-monotonicity gap inequality.
    const ConstraintKernel& c2 = kernel_of(ks, ConstraintId::C2);
    CHECK(evaluate_pair(c2, si, sj) ==
          doctest::Approx(d - 0.5 * m * dz2).epsilon(1e-10));
    // ... and its symmetrized sum is plain monotonicity.
    const double inner = dgx.dot(dx) - dgy.dot(dy);
    CHECK(evaluate_pair(c2, si, sj) + evaluate_pair(c2, sj, si) ==
          doctest::Approx(inner - m * dz2).epsilon(1e-10));

    const double inv = 1.0 / (2.0 * (1.0 - m));
    const double c3_ref = d - inv * (dgx - m * dx).squaredNorm() -
                          0.5 * m * dx.squaredNorm() + 0.5 * dy.squaredNorm();
    CHECK(evaluate_pair(kernel_of(ks, ConstraintId::C3), si, sj) ==
          doctest::Approx(c3_ref).epsilon(1e-10));
    const double c4_ref = d - inv * (dgy + m * dy).squaredNorm() -
                          0.5 * m * dy.squaredNorm() + 0.5 * dx.squaredNorm();
    CHECK(evaluate_pair(kernel_of(ks, ConstraintId::C4), si, sj) ==
          doctest::Approx(c4_ref).epsilon(1e-10));
    ++trials;
  }
  CHECK(trials == 1000);
}

TEST_CASE("cocoercive kernels mirror the smooth ones through the transform") {
  std::mt19937_64 rng(7);
  const double m = 0.2;
  const KernelSet smooth = kernel_matrices(ConstraintSetId::Full, m);
  const KernelSet cc = kernel_matrices(ConstraintSetId::Cocoercive, m);
  for (int t = 0; t < 200; ++t) {
    SampleSet set;
    set.d_x = 2;
    set.d_y = 2;
    set.samples = {random_sample(2, 2, rng), random_sample(2, 2, rng)};
    // Treat the random data as samples of a smooth function and push them to
    // the cocoercive side; kernel values must match pairwise.
    const auto [cc_set, cc_spec] = cocoercive_smooth_transform(
        set, ClassSpec::smooth_scsc(m, 1.0), TransformDirection::ToCocoercive);
    for (size_t k = 0; k < smooth.kernels.size(); ++k) {
      const double lhs = evaluate_pair(cc.kernels[k], cc_set.samples[0],
                                       cc_set.samples[1]);
      const double rhs =
          evaluate_pair(smooth.kernels[k], set.samples[0], set.samples[1]);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("pointwise checks on explicit members") {
  SUBCASE("the scaled quadratic passes all four inequalities") {
    const double mu = 0.3, L = 1.0;
    QuadraticSaddleFn fn;
    fn.mu = mu;
    fn.a = Vector::Zero(2);
    fn.b = Vector::Zero(2);
    fn.c = 0.0;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    SampleSet set;
    set.d_x = set.d_y = 2;
    for (int k = 0; k < 6; ++k) {
      Vector x(2), y(2);
      for (int i = 0; i < 2; ++i) {
        x[i] = gauss(rng);
        y[i] = gauss(rng);
      }
      set.samples.push_back(fn.sample_at(x, y));
    }
    CHECK(check_pointwise(ConstraintSetId::Full, set, mu, L, 1e-9).ok());
    CHECK(check_pointwise(ConstraintSetId::Reduced, set, mu, L, 1e-9).ok());
    CHECK(check_pointwise(ConstraintSetId::Definition, set, mu, L, 1e-9).ok());
  }
  SUBCASE("Lipschitz violation is caught by C1") {
    SampleSet set;
    set.d_x = set.d_y = 1;
    SaddleSample a{Vector::Zero(1), Vector::Zero(1), Vector::Zero(1),
                   Vector::Zero(1), 0.0};
    SaddleSample b{Vector::Constant(1, 1.0), Vector::Zero(1),
                   Vector::Constant(1, 2.0), Vector::Zero(1), 0.5};
    set.samples = {a, b};
    const CheckReport r =
        check_pointwise(ConstraintSetId::Full, set, 0.5, 1.0, 1e-9);
    bool c1 = false;
    for (const Violation& v : r.violations)
      if (v.constraint == "C1") c1 = true;
    CHECK(c1);
  }
  SUBCASE("the zero function with mu > 0 violates C2") {
    SampleSet set;
    set.d_x = set.d_y = 1;
    SaddleSample a{Vector::Zero(1), Vector::Zero(1), Vector::Zero(1),
                   Vector::Zero(1), 0.0};
    SaddleSample b{Vector::Constant(1, 1.0), Vector::Zero(1), Vector::Zero(1),
                   Vector::Zero(1), 0.0};
    set.samples = {a, b};
    const CheckReport r =
        check_pointwise(ConstraintSetId::Full, set, 0.5, 1.0, 1e-9);
    bool c2 = false;
    for (const Violation& v : r.violations)
      if (v.constraint == "C2") c2 = true;
    CHECK(c2);
  }
}
