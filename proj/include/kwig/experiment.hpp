#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kwig/adversarial.hpp"
#include "kwig/graph.hpp"

// Experiment runner: a parameter grid (n, p, k) x construction x trials,
// with per-trial seeds derived as master -> cell index -> trial index, so
// any (cell, trial) result is reproducible in isolation and the output is
// byte-identical at every thread count.

namespace kwig {

// KWIG_THREADS (1..256) wins over hardware concurrency.
unsigned thread_count_from_env();

// Runs fn(0..items-1), distributing over `threads` workers; callers write
// results into pre-sized slots so scheduling cannot affect output.
void parallel_for(std::uint64_t items, unsigned threads,
                  const std::function<void(std::uint64_t)>& fn);

enum class Construction { plain, intersection, clique_partition, plant };
const char* construction_name(Construction c);

struct ExperimentSpec {
  std::vector<std::uint64_t> n_values;
  std::vector<DyadicProb> p_values;
  std::vector<std::uint32_t> k_values;
  Construction construction = Construction::plain;
  std::string suite = "basic";
  std::uint32_t trials = 10;
  std::uint64_t master_seed = 1;
  // Planting parameters (construction == plant only).
  std::uint32_t plant_s = 0;
  PatternGraph plant_shape;
};

struct ExperimentResult {
  std::string csv;      // schema_version leads the header
  std::string summary;  // per-cell means / success fractions with half-widths
};

// Suites: degrees, connectivity, spectral, kappa, matching, hamilton,
// independence, plant, basic (= connectivity + degrees).
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads);

}  // namespace kwig
