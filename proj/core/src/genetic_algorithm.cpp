#include <algorithm>
#include <numeric>

#include "fsel/error.hpp"
#include "fsel/random.hpp"
#include "search_context.hpp"

namespace fsel {

namespace {

struct Individual {
  FeatureMask genes;
  double fitness = 0.0;
};

}  // namespace

SearchResult geneticAlgorithm(const Dataset& d, const Measure& m, const GAConfig& cfg,
                              const SearchOptions& opts) {
  if (cfg.pop_size < 2) throw Error(ErrorCode::Config, "geneticAlgorithm needs popSize >= 2");
  if (cfg.p_crossover < 0.0 || cfg.p_crossover > 1.0 || cfg.p_mutation < 0.0 || cfg.p_mutation > 1.0) {
    throw Error(ErrorCode::Config, "geneticAlgorithm probabilities must lie in [0, 1]");
  }
  if (cfg.max_iter < 1) throw Error(ErrorCode::Config, "geneticAlgorithm needs maxiter >= 1");
  if (cfg.elitism < 0 || cfg.elitism > cfg.pop_size) {
    throw Error(ErrorCode::Config, "geneticAlgorithm elitism must lie in [0, popSize]");
  }
  detail::SearchContext ctx(d, m, opts, "geneticAlgorithm");
  Rng rng(cfg.seed);
  const std::size_t n = ctx.width();
  const auto pop_size = static_cast<std::size_t>(cfg.pop_size);

  auto evaluate = [&](std::vector<Individual>& pop, std::size_t from) {
    std::vector<FeatureMask> masks;
    for (std::size_t i = from; i < pop.size(); ++i) masks.push_back(pop[i].genes);
    const auto values = ctx.evaluateBatch(masks);
    for (std::size_t i = from; i < pop.size(); ++i) {
      pop[i].fitness = values[i - from];
      ctx.tracker().offer(pop[i].genes, pop[i].fitness);
    }
  };
  auto report = [&](const std::vector<Individual>& pop, std::size_t generation) {
    double sum = 0.0;
    std::vector<double> fitness;
    for (const auto& ind : pop) {
      sum += ind.fitness;
      fitness.push_back(ind.fitness);
    }
    const double mean = sum / static_cast<double>(pop.size());
    const double best = fitness[detail::argBest(fitness, ctx.maximize())];
    ctx.record(generation, "", "generation", {}, {mean, best});
    ctx.log("GA | iter = " + std::to_string(generation) + " | Mean = " + detail::formatFixed(mean, 7) +
            " | Best = " + detail::formatFixed(best, 7));
  };
  // Binary tournament; the first draw wins ties.
  auto select = [&](const std::vector<Individual>& pop) -> const Individual& {
    const auto& a = pop[rng.uniformIndex(pop.size())];
    const auto& b = pop[rng.uniformIndex(pop.size())];
    return ctx.better(b.fitness, a.fitness) ? b : a;
  };
  auto mutate = [&](FeatureMask& genes) {
    for (std::size_t f = 0; f < n; ++f) {
      if (rng.bernoulli(cfg.p_mutation)) genes.flip(f);
    }
    if (genes.empty()) genes.set(static_cast<std::size_t>(rng.uniformIndex(n)));
  };

  std::vector<Individual> population;
  population.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) population.push_back({FeatureMask::randomNonEmpty(n, rng), 0.0});
  evaluate(population, 0);
  report(population, 1);

  for (int generation = 2; generation <= cfg.max_iter; ++generation) {
    std::vector<std::size_t> order(pop_size);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ctx.better(population[a].fitness, population[b].fitness);
    });
    std::vector<Individual> next;
    next.reserve(pop_size);
    for (int e = 0; e < cfg.elitism; ++e) next.push_back(population[order[static_cast<std::size_t>(e)]]);
    const std::size_t elites = next.size();

    while (next.size() < pop_size) {
      FeatureMask a = select(population).genes;
      FeatureMask b = select(population).genes;
      if (n > 1 && rng.bernoulli(cfg.p_crossover)) {
        const auto cut = static_cast<std::size_t>(1 + rng.uniformIndex(n - 1));
        for (std::size_t f = cut; f < n; ++f) {
          const bool bit_a = a.test(f);
          a.set(f, b.test(f));
          b.set(f, bit_a);
        }
      }
      mutate(a);
      next.push_back({std::move(a), 0.0});
      if (next.size() < pop_size) {
        mutate(b);
        next.push_back({std::move(b), 0.0});
      }
    }
    evaluate(next, elites);
    population = std::move(next);
    report(population, static_cast<std::size_t>(generation));
  }

  std::vector<FeatureMask> masks;
  std::vector<double> values;
  for (const auto& ind : population) {
    masks.push_back(ind.genes);
    values.push_back(ind.fitness);
  }
  ctx.record(static_cast<std::size_t>(cfg.max_iter), "", "population", std::move(masks), std::move(values));
  return ctx.finish();
}

}  // namespace fsel
