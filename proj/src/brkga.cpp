#include "hetnet/brkga.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hetnet {

namespace {

std::size_t ceil_count(double fraction, std::size_t population) {
  // Guards against 0.2 * 180 landing a hair above 36.
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(population) - 1e-9));
}

}  // namespace

void GaParams::validate() const {
  if (!(p_factor > 0.0)) throw Error(ErrorCode::invalid_argument, "p_factor must be positive");
  if (!(elite_fraction > 0.0 && elite_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "elite fraction must lie in (0, 1)");
  }
  if (!(mutant_fraction > 0.0 && mutant_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "mutant fraction must lie in (0, 1)");
  }
  if (!(elite_fraction + mutant_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "elite and mutant fractions must sum below 1");
  }
  if (!(rho_e > 0.0 && rho_e <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "rho_e must lie in (0, 1]");
  }
  if (n_pop == 0) throw Error(ErrorCode::invalid_argument, "at least one population is required");
  if (n_gen == 0) throw Error(ErrorCode::invalid_argument, "at least one generation is required");
  if (threads < 1) throw Error(ErrorCode::invalid_argument, "threads must be at least 1");
}

std::size_t GaParams::population_size(std::size_t n_var) const {
  return static_cast<std::size_t>(std::llround(p_factor * static_cast<double>(n_var)));
}

std::size_t GaParams::elite_count(std::size_t population) const {
  return ceil_count(elite_fraction, population);
}

std::size_t GaParams::mutant_count(std::size_t population) const {
  return ceil_count(mutant_fraction, population);
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t KeyRng::below(std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

void decode_into(std::span<const double> keys, const NetworkInstance& instance,
                 Assignment& out) {
  const std::size_t nb = instance.n_stations();
  const std::size_t nk = instance.n_receivers();
  const std::size_t half = nb * nk;
  if (keys.size() != 2 * half) {
    throw Error(ErrorCode::invalid_argument, "chromosome length must be 2|B||K|");
  }
  if (out.a.rows() != nb || out.a.cols() != nk) out = Assignment(nb, nk);
  auto& a = out.a.data();
  auto& alpha = out.alpha.data();
  for (std::size_t i = 0; i < half; ++i) {
    a[i] = keys[i] > 0.5 ? 1 : 0;
    alpha[i] = keys[half + i];
  }
}

Assignment decode(std::span<const double> keys, const NetworkInstance& instance) {
  Assignment out(instance.n_stations(), instance.n_receivers());
  decode_into(keys, instance, out);
  return out;
}

double fitness(std::span<const double> keys, const NetworkInstance& instance) {
  return evaluate(instance, decode(keys, instance)).penalized_power_w;
}

void evaluate_individual(Individual& ind, const NetworkInstance& instance, Assignment& scratch) {
  decode_into(ind.chromosome.keys, instance, scratch);
  const auto report = evaluate(instance, scratch);
  ind.fitness = report.penalized_power_w;
  ind.raw_power_w = report.raw_power_w;
  ind.feasible = report.feasible;
  ind.evaluated = true;
}

void sort_population(Population& population) {
  std::sort(population.begin(), population.end(), [](const Individual& x, const Individual& y) {
    if (x.fitness != y.fitness) return x.fitness < y.fitness;
    return x.chromosome.keys < y.chromosome.keys;
  });
}

Population random_population(std::size_t size, std::size_t n_keys, KeyRng& rng) {
  Population pop(size);
  for (auto& ind : pop) {
    ind.chromosome.keys.resize(n_keys);
    for (auto& key : ind.chromosome.keys) key = rng.key();
  }
  return pop;
}

void evolve_generation(const Population& current, Population& next, const GaParams& params,
                       KeyRng& rng) {
  const std::size_t p = current.size();
  const std::size_t n_elite = params.elite_count(p);
  const std::size_t n_mutant = params.mutant_count(p);
  if (n_elite < 1 || n_elite >= p || n_elite + n_mutant > p) {
    throw Error(ErrorCode::invalid_argument,
                "population too small for at least one elite and one non-elite member");
  }
  const std::size_t n_keys = current.front().chromosome.keys.size();
  next.resize(p);

  for (std::size_t i = 0; i < n_elite; ++i) next[i] = current[i];

  for (std::size_t i = n_elite; i < n_elite + n_mutant; ++i) {
    auto& keys = next[i].chromosome.keys;
    keys.resize(n_keys);
    for (auto& key : keys) key = rng.key();
    next[i].evaluated = false;
  }

  for (std::size_t i = n_elite + n_mutant; i < p; ++i) {
    const auto& elite = current[rng.below(n_elite)].chromosome.keys;
    const auto& other = current[n_elite + rng.below(p - n_elite)].chromosome.keys;
    auto& keys = next[i].chromosome.keys;
    keys.resize(n_keys);
    for (std::size_t g = 0; g < n_keys; ++g) {
      keys[g] = rng.unit() < params.rho_e ? elite[g] : other[g];
    }
    next[i].evaluated = false;
  }
}

Population evolve_generation(const Population& current, const GaParams& params, KeyRng& rng) {
  Population next;
  evolve_generation(current, next, params, rng);
  return next;
}

namespace {

void evaluate_pending(std::vector<Population>& pops, const NetworkInstance& instance,
                      int threads) {
  std::vector<Individual*> pending;
  for (auto& pop : pops) {
    for (auto& ind : pop) {
      if (!ind.evaluated) pending.push_back(&ind);
    }
  }
  const auto n = static_cast<std::ptrdiff_t>(pending.size());
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    Assignment scratch(instance.n_stations(), instance.n_receivers());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) evaluate_individual(*pending[i], instance, scratch);
  }
}

}  // namespace

SolverResult run(const NetworkInstance& instance, const GaParams& params) {
  params.validate();
  const std::size_t n_keys = n_var(instance);
  if (n_keys == 0) throw Error(ErrorCode::invalid_argument, "instance has no variables");
  const std::size_t p = params.population_size(n_keys);

  std::vector<KeyRng> rngs;
  std::vector<Population> pops;
  std::vector<Population> spare(params.n_pop);
  for (std::size_t i = 0; i < params.n_pop; ++i) {
    rngs.emplace_back(population_seed(params.seed, i));
    pops.push_back(random_population(p, n_keys, rngs.back()));
  }

  SolverResult result;
  result.seed = params.seed;
  std::optional<Chromosome> incumbent;

  auto record = [&](std::size_t generation) {
    std::optional<double> gen_best_feasible;
    for (const auto& pop : pops) {
      for (const auto& ind : pop) {
        if (!ind.feasible) continue;
        if (!gen_best_feasible || ind.raw_power_w < *gen_best_feasible) {
          gen_best_feasible = ind.raw_power_w;
        }
        if (!result.incumbent_power_w || ind.raw_power_w < *result.incumbent_power_w) {
          result.incumbent_power_w = ind.raw_power_w;
          incumbent = ind.chromosome;
        }
      }
    }
    if (gen_best_feasible && !result.first_feasible_generation) {
      result.first_feasible_generation = generation;
    }
    if (params.trace_every > 0 &&
        (generation % params.trace_every == 0 || generation == params.n_gen)) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& pop : pops) best = std::min(best, pop.front().fitness);
      result.trace.push_back({generation, best, gen_best_feasible});
    }
  };

  evaluate_pending(pops, instance, params.threads);
  for (auto& pop : pops) sort_population(pop);
  record(0);

  for (std::size_t gen = 1; gen <= params.n_gen; ++gen) {
    for (std::size_t i = 0; i < params.n_pop; ++i) {
      evolve_generation(pops[i], spare[i], params, rngs[i]);
    }
    std::swap(pops, spare);
    evaluate_pending(pops, instance, params.threads);
    for (auto& pop : pops) sort_population(pop);
    record(gen);
  }
  result.generations_run = params.n_gen;

  const Individual* best = nullptr;
  const Individual* best_feasible = nullptr;
  for (const auto& pop : pops) {
    const auto& top = pop.front();
    if (!best || top.fitness < best->fitness ||
        (top.fitness == best->fitness && top.chromosome.keys < best->chromosome.keys)) {
      best = &top;
    }
    for (const auto& ind : pop) {
      if (ind.feasible && (!best_feasible || ind.raw_power_w < best_feasible->raw_power_w)) {
        best_feasible = &ind;
      }
    }
  }
  result.best_penalized_w = best->fitness;
  result.best_assignment = decode(best->chromosome.keys, instance);

  if (best_feasible) {
    result.best_feasible_power_w = best_feasible->raw_power_w;
    result.best_feasible_assignment = decode(best_feasible->chromosome.keys, instance);
  } else if (incumbent) {
    result.best_feasible_power_w = result.incumbent_power_w;
    result.best_feasible_from_incumbent = true;
    result.best_feasible_assignment = decode(incumbent->keys, instance);
  }
  return result;
}

}  // namespace hetnet
