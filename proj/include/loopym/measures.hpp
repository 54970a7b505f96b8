#pragma once

#include <functional>

#include "loopym/connection.hpp"

namespace loopym {

struct YangMillsConfig {
  Graph graph;
  PlaquetteTables plaq;
  int d = 2;
  double k = 0.0;
  int L = 3, n = 2;

  static YangMillsConfig make(int L, int n, int d, double k);
  Deformation deformation() const { return {k, d, &plaq, n}; }
};

// P(A) = sum over all oriented plaquettes of Tr(h); real up to rounding.
// Raises ImaginaryResidue when |Im| > 1e-8.
double plaquette_action(const Connection& m, const YangMillsConfig& cfg);

// log Y_k = (k/d) (P - d #plaquettes) = -k sum_eta [1 - Tr(h_eta)/d] <= 0.
double ym_log_weight(const Connection& m, const YangMillsConfig& cfg);

struct MetropolisOpts {
  double proposal_scale = 0.3;
  double burn_in_fraction = 0.2;
  int thin_sweeps = 10;
};

struct MetropolisResult {
  std::vector<Connection> samples;
  double acceptance = 0.0;
};

// Single-edge updates, symmetric Gaussian proposal in the algebra; retains
// n_samples connections, one every thin_sweeps sweeps after burn-in.
MetropolisResult metropolis_chain(const YangMillsConfig& cfg, int n_samples,
                                  const MetropolisOpts& opts, Rng& rng);

// Euler-Maruyama diffusion with exact Lie-derivative drift of (k/d) P;
// generator A^(C) + (k/d) Gamma(P, .) up to O(delta).
Connection langevin_chain(const YangMillsConfig& cfg, Connection m, double t, double delta,
                          Rng& rng);

enum class FkMode { SMplusOnly, SMpm, SMD };

enum class FkPotential {
  Derived,       // -(d-1)S + R (literal) / -dS + R (pruned), R = total active rate
  PaperPrinted,  // -(d-1)S + 2V-  (deformed: (2(k/d)(n-1) - d + 1)S + 2V-)
};

struct FkOpts {
  FkMode mode = FkMode::SMpm;
  bool literal_diagonal = false;  // false: SMplus fires only index-distinct pairs
  FkPotential potential = FkPotential::Derived;
  double t = 0.1;
  int64_t trials = 10000;
  uint64_t seed = 1;
  int threads = 0;
};

struct FkEstimate {
  Cplx mean;
  double se_re = 0.0, se_im = 0.0;
  int64_t trials = 0;
  double se() const;  // sqrt(se_re^2 + se_im^2)
};

// Signed weighted Monte Carlo over split-and-merge trajectories:
//   W = (-1)^{m+} exp(int_0^t a(L_s) ds) tau(m0, L_t).
// cfg supplies the plaquette census for SMD; it may be null otherwise.
FkEstimate fk_estimator(const Graph& g, const LoopCollection& c0, const Connection& m0,
                        const FkOpts& opts, const YangMillsConfig* cfg = nullptr);

struct SdResult {
  Cplx mean;
  double se_re = 0.0, se_im = 0.0;
  double se_normalized = 0.0;  // se / d^{instance count}
  int64_t samples = 0;
  double se() const;
};

// Monte Carlo mean of A tau(., c) over Haar connections (zero by the
// Schwinger-Dyson identity).
SdResult sd_residual_haar(const Graph& g, int d, const LoopCollection& c, int64_t samples,
                          uint64_t seed, int threads);

// Same against the Yang-Mills measure via Metropolis, with the matching
// deformed operator.
SdResult sd_residual_ym(const YangMillsConfig& cfg, const LoopCollection& c, int64_t samples,
                        const MetropolisOpts& opts, Rng& rng);

// Direct estimate of E[tau(m_t, c)] under the heat semigroup started at m0.
FkEstimate heat_direct_estimate(const Connection& m0, const LoopCollection& c, double t,
                                int64_t samples, uint64_t seed, int threads);

// Deterministic mean/stderr over a trial-indexed table (pairwise summation).
std::pair<Cplx, std::pair<double, double>> mean_and_se(const std::vector<Cplx>& values);

// Work-stealing loop over trial indices [0, n); results written by index.
void parallel_trials(int64_t n, int threads, const std::function<void(int64_t)>& body);

int default_thread_count();

}  // namespace loopym
