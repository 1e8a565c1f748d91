#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hetnet/problem.hpp"

namespace hetnet {

struct GaParams {
  double p_factor = 10.0;        // population size = p_factor * n_var
  double elite_fraction = 0.2;
  double mutant_fraction = 0.1;
  double rho_e = 0.4;            // probability of inheriting the elite allele
  std::size_t n_pop = 3;
  std::size_t n_gen = 10000;
  std::uint64_t seed = 0;
  std::size_t trace_every = 0;   // 0 disables the per-generation trace
  int threads = 1;

  void validate() const;
  std::size_t population_size(std::size_t n_var) const;
  std::size_t elite_count(std::size_t population) const;
  std::size_t mutant_count(std::size_t population) const;

  friend bool operator==(const GaParams&, const GaParams&) = default;
};

inline std::size_t n_var(const NetworkInstance& instance) {
  return 2 * instance.n_stations() * instance.n_receivers();
}

struct Chromosome {
  std::vector<double> keys;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// splitmix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed of population `index` within a run seeded with `seed`.
inline std::uint64_t population_seed(std::uint64_t seed, std::size_t index) {
  return mix_seed(seed + index);
}

/// Random source of a single population: mt19937_64 seeded through
/// splitmix64. Only raw 64-bit draws are used, so sequences do not depend on
/// the standard library's distribution implementations.
class KeyRng {
 public:
  static constexpr const char* kName = "mt19937_64+splitmix64";

  explicit KeyRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1].
  double key() { return 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n), unbiased.
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// The first |B||K| keys are association proxies (a_bk = [key > 0.5]), the
/// remaining |B||K| are taken as alpha_bk. Both halves are row-major by
/// station.
Assignment decode(std::span<const double> keys, const NetworkInstance& instance);
void decode_into(std::span<const double> keys, const NetworkInstance& instance,
                 Assignment& out);

double fitness(std::span<const double> keys, const NetworkInstance& instance);

struct Individual {
  Chromosome chromosome;
  double fitness = 0.0;
  double raw_power_w = 0.0;
  bool feasible = false;
  bool evaluated = false;
};

using Population = std::vector<Individual>;

void evaluate_individual(Individual& ind, const NetworkInstance& instance, Assignment& scratch);

/// Sorts by fitness ascending, ties broken by lexicographic key order.
void sort_population(Population& population);

Population random_population(std::size_t size, std::size_t n_keys, KeyRng& rng);

/// One generation of the biased random-key scheme on a sorted population:
/// elites copied verbatim, then uniform mutants, then offspring that take each
/// allele from an elite parent with probability rho_e. Only the elites come
/// back evaluated.
void evolve_generation(const Population& current, Population& next, const GaParams& params,
                       KeyRng& rng);
Population evolve_generation(const Population& current, const GaParams& params, KeyRng& rng);

struct TraceRow {
  std::size_t generation = 0;
  double best_penalized_w = 0.0;
  std::optional<double> best_feasible_power_w;
};

struct SolverResult {
  /// Best raw power among feasible members of the final generation, or the
  /// earlier incumbent when the final generation holds none.
  std::optional<double> best_feasible_power_w;
  bool best_feasible_from_incumbent = false;
  std::optional<Assignment> best_feasible_assignment;
  /// Lowest raw power of any feasible individual ever evaluated.
  std::optional<double> incumbent_power_w;
  std::optional<std::size_t> first_feasible_generation;

  double best_penalized_w = 0.0;
  Assignment best_assignment;
  std::size_t generations_run = 0;
  std::vector<TraceRow> trace;

  std::uint64_t seed = 0;
  std::string rng = KeyRng::kName;

  bool feasible() const { return best_feasible_power_w.has_value(); }
};

/// Evolves params.n_pop independent populations for params.n_gen
/// generations. Generation 0 is the initial random population. The result is
/// a function of (instance, params without threads) only.
SolverResult run(const NetworkInstance& instance, const GaParams& params);

}  // namespace hetnet
