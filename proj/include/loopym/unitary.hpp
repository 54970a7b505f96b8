#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "loopym/error.hpp"
#include "loopym/rng.hpp"

namespace loopym {

using Cplx = std::complex<double>;

inline constexpr int kMaxDim = 8;

// Small dense complex matrices; capacity-capped so hot loops stay off the heap.
using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

double unitarity_error(const Mat& u);       // max |(U U* - I)_{ij}|
Mat project_unitary(const Mat& a);          // polar factor via SVD

// Orthonormal antihermitian basis of u(d) under <A,B> = Tr(A B*):
// i E_ii for each i, then for i < j the antisymmetric real and symmetric
// imaginary pair, each scaled by 1/sqrt(2). Satisfies sum_l W_l^2 = -d I.
std::vector<Mat> lie_basis(int d);

// exp(scale * W) for antihermitian W, by eigendecomposition of the Hermitian
// matrix -iW. Raises NotAntihermitian when ||W + W*||_max > 1e-10.
Mat expm_antihermitian(const Mat& w, double scale = 1.0);

// Haar-distributed unitary: QR of a complex Ginibre matrix with the R-diagonal
// phases divided out.
Mat haar_sample(int d, Rng& rng);

// sum_l xi_l W_l with independent standard normal xi; built entrywise.
Mat gaussian_antihermitian(int d, Rng& rng);

// Left-increment walk g <- exp(sqrt(2 dt) H) g whose generator is the Casimir
// sum of squared Lie derivatives (variance 2*dt, not dt: the heat semigroup
// here solves dH_t = A H_t dt with A the full Casimir, no 1/2).
// steps <= 0 selects ceil(t / 1e-3).
Mat heat_sample(const Mat& g0, double t, int steps, Rng& rng);

int default_heat_steps(double t);

// Central-difference stencil for the Casimir and the energy density on one
// group copy; exp(+-eps W_l) precomputed once.
struct FdStencil {
  int d;
  double eps;
  std::vector<Mat> basis;
  std::vector<Mat> exp_plus;
  std::vector<Mat> exp_minus;

  explicit FdStencil(int d, double eps = 1e-3);
};

// sum_l [f(exp(eps W_l) g) + f(exp(-eps W_l) g) - 2 f(g)] / eps^2
template <class F>
Cplx fd_casimir(const FdStencil& st, F&& f, const Mat& g) {
  Cplx acc = 0.0;
  Cplx f0 = f(g);
  for (size_t l = 0; l < st.basis.size(); ++l)
    acc += f(st.exp_plus[l] * g) + f(st.exp_minus[l] * g) - 2.0 * f0;
  return acc / (st.eps * st.eps);
}

// sum_l D_l f1 * D_l f2 with D_l the central first difference.
template <class F1, class F2>
Cplx fd_gamma(const FdStencil& st, F1&& f1, F2&& f2, const Mat& g) {
  Cplx acc = 0.0;
  for (size_t l = 0; l < st.basis.size(); ++l) {
    Mat gp = st.exp_plus[l] * g;
    Mat gm = st.exp_minus[l] * g;
    acc += (f1(gp) - f1(gm)) * (f2(gp) - f2(gm));
  }
  return acc / (4.0 * st.eps * st.eps);
}

}  // namespace loopym
