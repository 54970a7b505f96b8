#pragma once

#include <cstdint>
#include <random>

namespace loopym {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; full-avalanche mixing of a 64-bit word.
uint64_t mix64(uint64_t z);

// Stateless per-trial seed: identical for any thread count / execution order.
uint64_t derive_trial_seed(uint64_t master, uint64_t trial_index);

Rng make_rng(uint64_t seed);

// Uniform double in [0,1).
double uniform01(Rng& rng);

// Uniform integer in [0, n), n >= 1. Multiply-shift; bias < n * 2^-64.
uint64_t uniform_below(Rng& rng, uint64_t n);

// Standard normal via Box-Muller (one value per call; deterministic across platforms).
double gaussian(Rng& rng);

// Exponential holding time with the given rate (rate > 0).
double exponential(Rng& rng, double rate);

}  // namespace loopym
