#include "loopym/measures.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace loopym {

YangMillsConfig YangMillsConfig::make(int L, int n, int d, double k) {
  Graph g = Graph::torus(L, n);
  PlaquetteTables pt(g);
  return {std::move(g), std::move(pt), d, k, L, n};
}

double plaquette_action(const Connection& m, const YangMillsConfig& cfg) {
  Cplx p = 0.0;
  for (const auto& l : cfg.plaq.all) p += tau_loop(m, l);
  if (std::abs(p.imag()) > 1e-8) raise(Errc::ImaginaryResidue, std::to_string(p.imag()));
  return p.real();
}

double ym_log_weight(const Connection& m, const YangMillsConfig& cfg) {
  double p = plaquette_action(m, cfg);
  return cfg.k / cfg.d * (p - static_cast<double>(cfg.d) * static_cast<double>(cfg.plaq.all.size()));
}

namespace {

// Re sum of Tr over the plaquettes through edge e, one orientation per square;
// the full action including reversed orientations is twice this.
double half_action_at_edge(const Connection& m, const YangMillsConfig& cfg, int edge_id) {
  int oid = 2 * edge_id;
  Cplx s = 0.0;
  for (const auto& [pidx, ppos] : cfg.plaq.containing[oid]) s += tau_loop(m, cfg.plaq.all[pidx]);
  return s.real();
}

}  // namespace

MetropolisResult metropolis_chain(const YangMillsConfig& cfg, int n_samples,
                                  const MetropolisOpts& opts, Rng& rng) {
  const Graph& g = cfg.graph;
  Connection m = Connection::trivial(g, cfg.d);
  int64_t keep_sweeps = static_cast<int64_t>(n_samples) * opts.thin_sweeps;
  int64_t burn_sweeps = static_cast<int64_t>(
      std::ceil(keep_sweeps * opts.burn_in_fraction / (1.0 - opts.burn_in_fraction)));
  double amp = std::sqrt(opts.proposal_scale);

  MetropolisResult out;
  out.samples.reserve(n_samples);
  int64_t accepted = 0, proposed = 0;
  for (int64_t sweep = 0; sweep < burn_sweeps + keep_sweeps; ++sweep) {
    for (int e = 0; e < g.num_edges(); ++e) {
      Mat old = m.edge[e];
      double before = cfg.k == 0.0 ? 0.0 : half_action_at_edge(m, cfg, e);
      m.edge[e] = expm_antihermitian(gaussian_antihermitian(cfg.d, rng), amp) * old;
      bool accept = true;
      if (cfg.k != 0.0) {
        double after = half_action_at_edge(m, cfg, e);
        double dlog = cfg.k / cfg.d * 2.0 * (after - before);
        accept = dlog >= 0.0 || uniform01(rng) < std::exp(dlog);
      }
      ++proposed;
      if (accept) {
        ++accepted;
        if (unitarity_error(m.edge[e]) > 1e-10) m.edge[e] = project_unitary(m.edge[e]);
      } else {
        m.edge[e] = old;
      }
    }
    if (sweep >= burn_sweeps && (sweep - burn_sweeps + 1) % opts.thin_sweeps == 0)
      out.samples.push_back(m);
  }
  out.acceptance = static_cast<double>(accepted) / static_cast<double>(proposed);
  return out;
}

Connection langevin_chain(const YangMillsConfig& cfg, Connection m, double t, double delta,
                          Rng& rng) {
  const Graph& g = cfg.graph;
  auto basis = lie_basis(cfg.d);
  int64_t steps = static_cast<int64_t>(std::ceil(t / delta));
  if (t <= 0.0) return m;
  double dt = t / static_cast<double>(steps);
  double amp = std::sqrt(2.0 * dt);
  for (int64_t s = 0; s < steps; ++s) {
    for (int e = 0; e < g.num_edges(); ++e) {
      Mat h = gaussian_antihermitian(cfg.d, rng) * amp;
      if (cfg.k != 0.0) {
        // drift components b_l = L_{W_l} P, by exact insertion over the
        // plaquettes through this edge
        const Mat& ge = m.edge[e];
        Mat grad = Mat::Zero(cfg.d, cfg.d);  // sum Tr(W_l M) W_l with M below
        Mat acc_pos = Mat::Zero(cfg.d, cfg.d);
        Mat acc_neg = Mat::Zero(cfg.d, cfg.d);
        for (const auto& [pidx, ppos] : cfg.plaq.containing[2 * e]) {
          const Loop& l = cfg.plaq.all[pidx];
          // rotated so the positive crossing is first: h_rot = A * ge
          Mat a = Mat::Identity(cfg.d, cfg.d);
          for (int j = 1; j < 4; ++j) {
            Vertex x = l.at(ppos + j);
            Vertex y = l.at(ppos + j + 1);
            a = m.matrix(x, y) * a;
          }
          acc_pos += ge * a;  // L_W contribution Tr(W ge A)
        }
        for (const auto& [pidx, ppos] : cfg.plaq.containing[2 * e + 1]) {
          const Loop& l = cfg.plaq.all[pidx];
          Mat b = Mat::Identity(cfg.d, cfg.d);
          for (int j = 1; j < 4; ++j) {
            Vertex x = l.at(ppos + j);
            Vertex y = l.at(ppos + j + 1);
            b = m.matrix(x, y) * b;
          }
          acc_neg += b * ge.adjoint();  // L_W contribution -Tr(W B ge*)
        }
        Mat mgrad = acc_pos - acc_neg;
        for (const auto& w : basis) grad += ((w * mgrad).trace()).real() * w;
        h += dt * (cfg.k / cfg.d) * grad;
      }
      m.edge[e] = expm_antihermitian(h) * m.edge[e];
      if (unitarity_error(m.edge[e]) > 1e-10) m.edge[e] = project_unitary(m.edge[e]);
    }
  }
  return m;
}

double FkEstimate::se() const { return std::sqrt(se_re * se_re + se_im * se_im); }
double SdResult::se() const { return std::sqrt(se_re * se_re + se_im * se_im); }

namespace {

double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return pairwise_sum(v, 0, v.size()) / static_cast<double>(v.size());
}

}  // namespace

std::pair<Cplx, std::pair<double, double>> mean_and_se(const std::vector<Cplx>& values) {
  size_t n = values.size();
  std::vector<double> re(n), im(n);
  for (size_t i = 0; i < n; ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  double mr = pairwise_mean(re), mi = pairwise_mean(im);
  if (n < 2) return {{mr, mi}, {0.0, 0.0}};
  std::vector<double> vr(n), vi(n);
  for (size_t i = 0; i < n; ++i) {
    vr[i] = (re[i] - mr) * (re[i] - mr);
    vi[i] = (im[i] - mi) * (im[i] - mi);
  }
  double num = static_cast<double>(n) / static_cast<double>(n - 1);
  double ser = std::sqrt(pairwise_mean(vr) * num / static_cast<double>(n));
  double sei = std::sqrt(pairwise_mean(vi) * num / static_cast<double>(n));
  return {{mr, mi}, {ser, sei}};
}

int default_thread_count() {
  if (const char* env = std::getenv("LOOPYM_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_trials(int64_t n, int threads, const std::function<void(int64_t)>& body) {
  if (threads <= 0) threads = default_thread_count();
  if (threads == 1 || n < 2) {
    for (int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int64_t> next(0);
  auto worker = [&]() {
    while (true) {
      int64_t i = next.fetch_add(1);
      if (i >= n) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

namespace {

struct FkState {
  LoopCollection c;
  std::vector<Channel> chans;
  double rate = 0.0;
  double potential = 0.0;
};

double fk_potential(const Graph& g, const LoopCollection& c, double active_rate, int d,
                    const FkOpts& opts, const YangMillsConfig* cfg) {
  OccupationStats s = stats(g, c);
  double S = static_cast<double>(s.S);
  switch (opts.potential) {
    case FkPotential::Derived:
      // generator matching: every positive firing flips the sign, so the
      // potential is -(d-1)S plus the total jump rate (literal), equivalently
      // -dS plus the diagonal-pruned rate
      return opts.literal_diagonal ? -(d - 1) * S + active_rate : -d * S + active_rate;
    case FkPotential::PaperPrinted:
      if (opts.mode == FkMode::SMD && cfg)
        return (2.0 * cfg->k / cfg->d * (cfg->n - 1) - d + 1) * S +
               2.0 * static_cast<double>(s.Vminus);
      return -(d - 1) * S + 2.0 * static_cast<double>(s.Vminus);
  }
  return 0.0;
}

}  // namespace

FkEstimate fk_estimator(const Graph& g, const LoopCollection& c0, const Connection& m0,
                        const FkOpts& opts, const YangMillsConfig* cfg) {
  ChainMode mode;
  mode.literal_diagonal = opts.literal_diagonal;
  switch (opts.mode) {
    case FkMode::SMplusOnly:
      mode.sm_minus = false;
      break;
    case FkMode::SMpm:
      break;
    case FkMode::SMD:
      if (!cfg) raise(Errc::ConfigError, "SMD needs a torus config");
      mode.deform = cfg->deformation();
      break;
  }
  const int d = m0.d;

  FkState start;
  start.c = c0;
  start.chans = active_channels(g, c0, mode);
  start.rate = total_rate(start.chans);
  start.potential = fk_potential(g, c0, start.rate, d, opts, cfg);

  std::vector<Cplx> weights(opts.trials);
  parallel_trials(opts.trials, opts.threads, [&](int64_t trial) {
    Rng rng = make_rng(derive_trial_seed(opts.seed, trial));
    const FkState* cur = &start;
    FkState own;
    double now = 0.0;
    double integral = 0.0;
    double sign = 1.0;
    while (true) {
      if (cur->rate <= 0.0) {
        integral += cur->potential * (opts.t - now);
        break;
      }
      double dt = exponential(rng, cur->rate);
      if (now + dt >= opts.t) {
        integral += cur->potential * (opts.t - now);
        break;
      }
      integral += cur->potential * dt;
      now += dt;
      double u = uniform01(rng) * cur->rate;
      size_t pick = 0;
      for (; pick + 1 < cur->chans.size(); ++pick) {
        u -= cur->chans[pick].rate;
        if (u <= 0.0) break;
      }
      const Channel& ch = cur->chans[pick];
      if (is_positive_channel(ch)) sign = -sign;
      own.c = sample_transition(g, cur->c, ch, mode, rng);
      own.chans = active_channels(g, own.c, mode);
      own.rate = total_rate(own.chans);
      own.potential = fk_potential(g, own.c, own.rate, d, opts, cfg);
      cur = &own;
    }
    weights[trial] = sign * std::exp(integral) * tau(m0, cur->c);
  });

  auto [mean, se] = mean_and_se(weights);
  return {mean, se.first, se.second, opts.trials};
}

SdResult sd_residual_haar(const Graph& g, int d, const LoopCollection& c, int64_t samples,
                          uint64_t seed, int threads) {
  GeneratorExpansion ex = generator_expansion(g, c);
  std::vector<Cplx> vals(samples);
  parallel_trials(samples, threads, [&](int64_t i) {
    Rng rng = make_rng(derive_trial_seed(seed, i));
    Connection m = Connection::haar(g, d, rng);
    vals[i] = evaluate_expansion(m, c, ex);
  });
  auto [mean, se] = mean_and_se(vals);
  SdResult out{mean, se.first, se.second, 0.0, samples};
  out.se_normalized = out.se() / std::pow(static_cast<double>(d),
                                          static_cast<double>(c.total_instances()));
  return out;
}

SdResult sd_residual_ym(const YangMillsConfig& cfg, const LoopCollection& c, int64_t samples,
                        const MetropolisOpts& opts, Rng& rng) {
  Deformation deform = cfg.deformation();
  GeneratorExpansion ex = generator_expansion(cfg.graph, c, &deform);
  MetropolisResult mc = metropolis_chain(cfg, static_cast<int>(samples), opts, rng);
  std::vector<Cplx> vals(mc.samples.size());
  for (size_t i = 0; i < mc.samples.size(); ++i) vals[i] = evaluate_expansion(mc.samples[i], c, ex);
  auto [mean, se] = mean_and_se(vals);
  SdResult out{mean, se.first, se.second, 0.0, static_cast<int64_t>(vals.size())};
  out.se_normalized = out.se() / std::pow(static_cast<double>(cfg.d),
                                          static_cast<double>(c.total_instances()));
  return out;
}

FkEstimate heat_direct_estimate(const Connection& m0, const LoopCollection& c, double t,
                                int64_t samples, uint64_t seed, int threads) {
  std::vector<Cplx> vals(samples);
  parallel_trials(samples, threads, [&](int64_t i) {
    Rng rng = make_rng(derive_trial_seed(seed, i));
    Connection mt = heat_connection_sample(m0, t, 0, rng);
    vals[i] = tau(mt, c);
  });
  auto [mean, se] = mean_and_se(vals);
  return {mean, se.first, se.second, samples};
}

}  // namespace loopym
