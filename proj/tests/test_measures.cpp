#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loopym/measures.hpp"

using namespace loopym;

TEST_CASE("plaquette action on the trivial connection") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 0.5);
  Connection m = Connection::trivial(cfg.graph, 2);
  CHECK(plaquette_action(m, cfg) == doctest::Approx(36.0));  // d * 18
  CHECK(ym_log_weight(m, cfg) == doctest::Approx(0.0));
}

TEST_CASE("plaquette action bound and gauge invariance") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 1.0);
  Rng rng = make_rng(41);
  for (int it = 0; it < 10; ++it) {
    Connection m = Connection::haar(cfg.graph, 2, rng);
    double p = plaquette_action(m, cfg);
    CHECK(std::abs(p) <= 2.0 * 18.0);
    GaugeField gf = GaugeField::haar(cfg.graph, 2, rng);
    CHECK(plaquette_action(gauge_transform(m, gf), cfg) == doctest::Approx(p).epsilon(1e-10));
    CHECK(ym_log_weight(m, cfg) <= 1e-12);
    // the two weight formulas agree
    Cplx sum = 0.0;
    double alt = 0.0;
    for (const auto& l : cfg.plaq.all) alt += -cfg.k * (1.0 - (tau_loop(m, l) / 2.0).real());
    (void)sum;
    CHECK(ym_log_weight(m, cfg) == doctest::Approx(alt).epsilon(1e-10));
  }
}

TEST_CASE("ym weight is zero at k = 0") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 0.0);
  Rng rng = make_rng(42);
  Connection m = Connection::haar(cfg.graph, 2, rng);
  CHECK(ym_log_weight(m, cfg) == 0.0);
}

TEST_CASE("metropolis at k = 0 reproduces Haar moments") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 0.0);
  MetropolisOpts opts;
  opts.thin_sweeps = 5;
  Rng rng = make_rng(43);
  MetropolisResult mc = metropolis_chain(cfg, 800, opts, rng);
  CHECK(mc.acceptance == doctest::Approx(1.0));  // symmetric proposal, flat density
  double m2 = 0.0;
  const Loop& plq = cfg.plaq.all[0];
  for (const auto& m : mc.samples) m2 += std::norm(tau_loop(m, plq));
  m2 /= static_cast<double>(mc.samples.size());
  // Haar: E|Tr h|^2 = 1 (product of independent Haar edges is Haar)
  CHECK(std::abs(m2 - 1.0) <= 4.0 * std::sqrt(2.0 / 800.0) + 0.05);
}

TEST_CASE("coupling pushes the plaquette trace up") {
  MetropolisOpts opts;
  opts.thin_sweeps = 5;
  YangMillsConfig cfg0 = YangMillsConfig::make(3, 2, 2, 0.0);
  YangMillsConfig cfg1 = YangMillsConfig::make(3, 2, 2, 1.0);
  Rng rng = make_rng(44);
  auto observable = [](const YangMillsConfig& cfg, const MetropolisResult& mc) {
    std::vector<Cplx> vals(mc.samples.size());
    for (size_t i = 0; i < mc.samples.size(); ++i)
      vals[i] = plaquette_action(mc.samples[i], cfg) / 18.0;
    return mean_and_se(vals);
  };
  MetropolisResult mc0 = metropolis_chain(cfg0, 600, opts, rng);
  MetropolisResult mc1 = metropolis_chain(cfg1, 600, opts, rng);
  auto [m0, se0] = observable(cfg0, mc0);
  auto [m1, se1] = observable(cfg1, mc1);
  double comb = std::sqrt(se0.first * se0.first + se1.first * se1.first);
  CHECK(m1.real() - m0.real() > 4.0 * comb);
}

TEST_CASE("langevin at k = 0 matches the heat sampler statistically") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 0.0);
  const Loop& plq = cfg.plaq.all[0];
  double t = 0.15;
  int n = 600;
  std::vector<Cplx> lv(n), hv(n);
  parallel_trials(n, 0, [&](int64_t i) {
    Rng rng = make_rng(derive_trial_seed(45, i));
    Connection m = langevin_chain(cfg, Connection::trivial(cfg.graph, 2), t, 1e-3, rng);
    lv[i] = tau_loop(m, plq);
    Rng rng2 = make_rng(derive_trial_seed(46, i));
    Connection h = heat_connection_sample(Connection::trivial(cfg.graph, 2), t, 0, rng2);
    hv[i] = tau_loop(h, plq);
  });
  auto [lm, lse] = mean_and_se(lv);
  auto [hm, hse] = mean_and_se(hv);
  double comb = std::sqrt(lse.first * lse.first + hse.first * hse.first);
  CHECK(std::abs(lm.real() - hm.real()) <= 4.0 * comb + 5e-3);
  // langevin_chain(t = 0) is the start
  Rng rng = make_rng(47);
  Connection m0 = Connection::haar(cfg.graph, 2, rng);
  Connection same = langevin_chain(cfg, m0, 0.0, 1e-3, rng);
  for (int e = 0; e < cfg.graph.num_edges(); ++e)
    CHECK((same.edge[e] - m0.edge[e]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fk estimator at t = 0 and on trivial collections") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 0.5);
  Rng rng = make_rng(48);
  Connection m0 = Connection::haar(cfg.graph, 2, rng);
  LoopCollection c({cfg.plaq.all[0]});

  FkOpts opts;
  opts.t = 0.0;
  opts.trials = 32;
  opts.seed = 1;
  FkEstimate est = fk_estimator(cfg.graph, c, m0, opts);
  CHECK(std::abs(est.mean - tau(m0, c)) <= 1e-12);
  CHECK(est.se() <= 1e-12);

  LoopCollection triv({Loop::trivial()});
  opts.t = 2.0;
  FkEstimate est2 = fk_estimator(cfg.graph, triv, m0, opts);
  CHECK(std::abs(est2.mean - Cplx(2.0, 0.0)) <= 1e-12);  // e^0 * tau = d
}

TEST_CASE("fk plaquette closed form, pruned is exact") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 0.0);
  Connection m0 = Connection::trivial(cfg.graph, 2);
  LoopCollection c({cfg.plaq.all[0]});
  FkOpts opts;
  opts.t = 0.1;
  opts.trials = 200;
  opts.seed = 7;
  FkEstimate est = fk_estimator(cfg.graph, c, m0, opts);
  CHECK(std::abs(est.mean - 2.0 * std::exp(-0.8)) <= 1e-12);
  CHECK(est.se() <= 1e-15);
}

TEST_CASE("sd residual over Haar is consistent with zero") {
  Graph g = Graph::torus(3, 2);
  PlaquetteTables pt(g);
  LoopCollection c({pt.all[0]});
  SdResult r = sd_residual_haar(g, 2, c, 2000, 11, 0);
  CHECK(std::abs(r.mean) <= 4.0 * r.se());
  CHECK(r.samples == 2000);
}

TEST_CASE("sd residual under the Yang-Mills measure is consistent with zero") {
  YangMillsConfig cfg = YangMillsConfig::make(3, 2, 2, 0.5);
  LoopCollection c({cfg.plaq.all[0]});
  MetropolisOpts opts;
  opts.thin_sweeps = 5;
  Rng rng = make_rng(49);
  SdResult r = sd_residual_ym(cfg, c, 1500, opts, rng);
  CHECK(std::abs(r.mean) <= 4.0 * r.se());
}

TEST_CASE("mean_and_se basics") {
  std::vector<Cplx> vals = {{1.0, 0.0}, {3.0, 0.0}};
  auto [m, se] = mean_and_se(vals);
  CHECK(m.real() == doctest::Approx(2.0));
  CHECK(se.first == doctest::Approx(1.0));  // sd = sqrt(2), se = sd/sqrt(2) = 1
}
