#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loopym/unitary.hpp"

using namespace loopym;

namespace {
const Cplx kI(0.0, 1.0);

Mat random_antihermitian(int d, Rng& rng) { return gaussian_antihermitian(d, rng); }
}  // namespace

TEST_CASE("lie basis: orthonormal, sum of squares = -dI") {
  for (int d = 1; d <= 4; ++d) {
    auto basis = lie_basis(d);
    REQUIRE(static_cast<int>(basis.size()) == d * d);
    for (size_t a = 0; a < basis.size(); ++a) {
      for (size_t b = 0; b < basis.size(); ++b) {
        Cplx gram = (basis[a] * basis[b].adjoint()).trace();
        double expect = a == b ? 1.0 : 0.0;
        CHECK(std::abs(gram - expect) <= 1e-13);
      }
      CHECK((basis[a] + basis[a].adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
    }
    Mat sum = Mat::Zero(d, d);
    for (const auto& w : basis) sum += w * w;
    Mat target = -static_cast<double>(d) * Mat::Identity(d, d);
    CHECK((sum - target).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("lie basis d=1 is [i]") {
  auto basis = lie_basis(1);
  CHECK(std::abs(basis[0](0, 0) - kI) <= 1e-15);
}

TEST_CASE("expm basics") {
  Rng rng = make_rng(2);
  Mat w = random_antihermitian(3, rng);
  CHECK((expm_antihermitian(w, 0.0) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-14);
  Mat e = expm_antihermitian(w);
  CHECK(unitarity_error(e) <= 1e-12);
  Mat einv = expm_antihermitian(w, -1.0);
  CHECK((e * einv - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

  Mat one(1, 1);
  one(0, 0) = kI;  // W = [i]
  double theta = 0.7;
  Mat u = expm_antihermitian(one, theta);
  CHECK(std::abs(u(0, 0) - Cplx(std::cos(theta), std::sin(theta))) <= 1e-14);

  Mat bad = Mat::Identity(2, 2);
  CHECK_THROWS_AS(expm_antihermitian(bad), Error);
}

TEST_CASE("haar sample moments") {
  Rng rng = make_rng(3);
  int d = 2;
  int n = 100000;
  Cplx mean_tr = 0.0;
  double mean_tr2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Mat u = haar_sample(d, rng);
    if (i < 100) CHECK(unitarity_error(u) <= 1e-12);
    Cplx tr = u.trace();
    mean_tr += tr;
    mean_tr2 += std::norm(tr);
  }
  mean_tr /= static_cast<double>(n);
  mean_tr2 /= static_cast<double>(n);
  // E[Tr U] = 0 with Var(|Tr|^2)=1; E[|Tr U|^2] = 1
  double se1 = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean_tr) <= 4 * se1);
  CHECK(std::abs(mean_tr2 - 1.0) <= 4 * std::sqrt(2.0) * se1);
}

TEST_CASE("heat sample: drift of the mean matches exp(-dt)") {
  Rng rng = make_rng(4);
  int d = 2;
  double t = 0.2;
  int n = 10000;
  Mat g0 = haar_sample(d, rng);
  Cplx acc = 0.0;
  for (int i = 0; i < n; ++i) {
    Mat gt = heat_sample(g0, t, 0, rng);
    acc += (gt * g0.adjoint()).trace();
  }
  acc /= static_cast<double>(n);
  // E[g_t g_0^*] = exp(-d t) I, so the trace has mean d exp(-d t)
  double target = d * std::exp(-d * t);
  double se = std::sqrt(2.0 / n);  // |Tr| <= 2 crude scale
  CHECK(std::abs(acc - target) <= 4 * se + 2e-3);
  CHECK((heat_sample(g0, 0.0, 0, rng) - g0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("heat sample: two half steps match one step in E[Tr]") {
  Rng rng = make_rng(5);
  int d = 2;
  double t = 0.3;
  int n = 8000;
  Cplx acc1 = 0.0, acc2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Mat a = heat_sample(Mat::Identity(d, d), t, 0, rng);
    acc1 += a.trace();
    Mat b = heat_sample(heat_sample(Mat::Identity(d, d), t / 2, 0, rng), t / 2, 0, rng);
    acc2 += b.trace();
  }
  acc1 /= static_cast<double>(n);
  acc2 /= static_cast<double>(n);
  double se = 2.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(acc1 - acc2) <= 4 * se + 2e-3);
  CHECK(std::abs(acc1 - d * std::exp(-d * t)) <= 4 * se + 2e-3);
}

TEST_CASE("fd casimir on coordinate functions") {
  Rng rng = make_rng(6);
  int d = 2;
  FdStencil st(d);
  Mat a = haar_sample(d, rng);
  Mat b = haar_sample(d, rng);
  Mat g = haar_sample(d, rng);

  auto t_a = [&](const Mat& x) { return (x * a).trace(); };
  Cplx lhs = fd_casimir(st, t_a, g);
  Cplx rhs = -static_cast<double>(d) * t_a(g);
  CHECK(std::abs(lhs - rhs) / std::abs(rhs) <= 1e-5);

  auto u_ab = [&](const Mat& x) { return (x * a * x * b).trace(); };
  Cplx lhs2 = fd_casimir(st, u_ab, g);
  Cplx rhs2 = -2.0 * d * u_ab(g) - 2.0 * t_a(g) * (g * b).trace();
  CHECK(std::abs(lhs2 - rhs2) / std::abs(rhs2) <= 1e-5);

  // w_{I,I}(g) = Tr(g g*) = d is constant
  auto w_ii = [&](const Mat& x) { return (x * x.adjoint()).trace(); };
  CHECK(std::abs(fd_casimir(st, w_ii, g)) <= 1e-8);
}

TEST_CASE("fd gamma identities and derivation property") {
  Rng rng = make_rng(7);
  int d = 3;
  FdStencil st(d);
  Mat a = haar_sample(d, rng);
  Mat b = haar_sample(d, rng);
  Mat g = haar_sample(d, rng);
  auto t_a = [&](const Mat& x) { return (x * a).trace(); };
  auto t_b = [&](const Mat& x) { return (x * b).trace(); };
  auto r_b = [&](const Mat& x) { return (x.adjoint() * b).trace(); };

  Cplx g1 = fd_gamma(st, t_a, t_b, g);
  Cplx u = (g * a * g * b).trace();
  CHECK(std::abs(g1 + u) / std::abs(u) <= 1e-5);

  Cplx g2 = fd_gamma(st, t_a, r_b, g);
  Cplx ab = (a * b).trace();
  CHECK(std::abs(g2 - ab) / std::abs(ab) <= 1e-5);

  // derivation property on products
  auto f12 = [&](const Mat& x) { return t_a(x) * t_b(x); };
  Cplx lhs = fd_gamma(st, f12, r_b, g);
  Cplx rhs = t_b(g) * fd_gamma(st, t_a, r_b, g) + t_a(g) * fd_gamma(st, t_b, r_b, g);
  CHECK(std::abs(lhs - rhs) / std::abs(rhs) <= 1e-5);
}

TEST_CASE("fd casimir at d=1 is the second derivative") {
  FdStencil st(1);
  auto f = [](const Mat& g) {
    Cplx z = g(0, 0);
    return z * z * z + 2.0 * z.real() * z;  // trig polynomial in omega
  };
  // f(e^{i w}) = e^{3iw} + 2 cos(w) e^{iw}; d^2/dw^2 = -9 e^{3iw} + 2 d^2/dw^2[cos w e^{iw}]
  double w = 0.37;
  Mat g(1, 1);
  g(0, 0) = std::exp(kI * w);
  Cplx lhs = fd_casimir(st, f, g);
  Cplx e1 = std::exp(kI * w), e3 = std::exp(3.0 * kI * w);
  // d2/dw2 [cos(w) e^{iw}] = -2 cos(w) e^{iw} - 2 i sin(w) e^{iw}
  Cplx rhs = -9.0 * e3 + 2.0 * (-2.0 * std::cos(w) * e1 - 2.0 * kI * std::sin(w) * e1);
  CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("project unitary restores drift") {
  Rng rng = make_rng(8);
  Mat u = haar_sample(3, rng);
  Mat drifted = u * (1.0 + 1e-6);
  CHECK(unitarity_error(drifted) > 1e-7);
  Mat fixed = project_unitary(drifted);
  CHECK(unitarity_error(fixed) <= 1e-13);
  CHECK((fixed - u).cwiseAbs().maxCoeff() <= 1e-5);
}
