#include "loopym/unitary.hpp"

#include <cmath>

namespace loopym {

namespace {
const Cplx kI(0.0, 1.0);
}

double unitarity_error(const Mat& u) {
  Mat r = u * u.adjoint();
  int d = static_cast<int>(u.rows());
  for (int i = 0; i < d; ++i) r(i, i) -= 1.0;
  return r.cwiseAbs().maxCoeff();
}

Mat project_unitary(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

std::vector<Mat> lie_basis(int d) {
  std::vector<Mat> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Mat w = Mat::Zero(d, d);
    w(i, i) = kI;
    basis.push_back(w);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Mat u = Mat::Zero(d, d);
      u(i, j) = s;
      u(j, i) = -s;
      basis.push_back(u);
      Mat v = Mat::Zero(d, d);
      v(i, j) = kI * s;
      v(j, i) = kI * s;
      basis.push_back(v);
    }
  }
  return basis;
}

Mat expm_antihermitian(const Mat& w, double scale) {
  if ((w + w.adjoint()).cwiseAbs().maxCoeff() > 1e-10) raise(Errc::NotAntihermitian);
  Mat h = -kI * w;  // Hermitian
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const auto& lam = es.eigenvalues();
  int d = static_cast<int>(w.rows());
  Mat phase = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) phase(i, i) = std::exp(kI * (scale * lam(i)));
  return es.eigenvectors() * phase * es.eigenvectors().adjoint();
}

Mat haar_sample(int d, Rng& rng) {
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Cplx(gaussian(rng), gaussian(rng));
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Mat r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Cplx rj = r(j, j);
    Cplx ph = std::abs(rj) > 0 ? rj / std::abs(rj) : Cplx(1.0, 0.0);
    q.col(j) *= ph;
  }
  return q;
}

Mat gaussian_antihermitian(int d, Rng& rng) {
  Mat h(d, d);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) h(i, i) = kI * gaussian(rng);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      double a = gaussian(rng) * s;
      double b = gaussian(rng) * s;
      h(i, j) = Cplx(a, b);
      h(j, i) = Cplx(-a, b);
    }
  }
  return h;
}

int default_heat_steps(double t) {
  return std::max(1, static_cast<int>(std::ceil(t / 1e-3)));
}

Mat heat_sample(const Mat& g0, double t, int steps, Rng& rng) {
  if (t <= 0.0) return g0;
  if (steps <= 0) steps = default_heat_steps(t);
  double dt = t / steps;
  double amp = std::sqrt(2.0 * dt);
  int d = static_cast<int>(g0.rows());
  Mat g = g0;
  for (int s = 0; s < steps; ++s) {
    g = expm_antihermitian(gaussian_antihermitian(d, rng), amp) * g;
    if (unitarity_error(g) > 1e-10) g = project_unitary(g);
  }
  return g;
}

FdStencil::FdStencil(int dim, double epsilon) : d(dim), eps(epsilon), basis(lie_basis(dim)) {
  exp_plus.reserve(basis.size());
  exp_minus.reserve(basis.size());
  for (const Mat& w : basis) {
    exp_plus.push_back(expm_antihermitian(w, eps));
    exp_minus.push_back(expm_antihermitian(w, -eps));
  }
}

}  // namespace loopym
