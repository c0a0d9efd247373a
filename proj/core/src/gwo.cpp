#include "goldcast/gwo/gwo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>

#include "goldcast/errors.hpp"
#include "goldcast/rng.hpp"
#include "goldcast/textio.hpp"

namespace goldcast::gwo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HerdState {
    std::vector<Wolf> wolves;
    // alpha/beta/delta indices, ranked by fitness with stable wolf-index ties
    std::array<std::size_t, 3> leaders{};

    void rank() {
        std::vector<std::size_t> order(wolves.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return wolves[a].fitness < wolves[b].fitness;
        });
        leaders = {order[0], order[1], order[2]};
    }
};

class FitnessCache {
public:
    FitnessCache(const FitnessFn& fn, bool parallel)
        : fn_(fn), parallel_(parallel) {}

    /// Evaluates the herd's architectures, serving repeats from the cache.
    /// Uncached entries may run concurrently; results are identical to
    /// sequential execution because insertion order is fixed by wolf index.
    void evaluate(std::vector<Wolf>& wolves, const GwoConfig& config) {
        std::vector<NetworkArch> archs(wolves.size());
        std::vector<std::size_t> fresh;
        for (std::size_t i = 0; i < wolves.size(); ++i) {
            archs[i] = clamp_and_round(wolves[i].position, config);
            if (cache_.contains(archs[i])) {
                ++cache_hits;
            } else if (std::none_of(fresh.begin(), fresh.end(), [&](std::size_t j) {
                           return archs[j] == archs[i];
                       })) {
                fresh.push_back(i);
            } else {
                ++cache_hits;  // duplicate within this round
            }
        }

        if (parallel_ && fresh.size() > 1) {
            std::vector<std::future<double>> futures;
            futures.reserve(fresh.size());
            for (std::size_t idx : fresh)
                futures.push_back(std::async(std::launch::async,
                                             [&, idx] { return call(archs[idx]); }));
            for (std::size_t k = 0; k < fresh.size(); ++k)
                cache_[archs[fresh[k]]] = futures[k].get();
        } else {
            for (std::size_t idx : fresh) cache_[archs[idx]] = call(archs[idx]);
        }

        for (std::size_t i = 0; i < wolves.size(); ++i)
            wolves[i].fitness = cache_.at(archs[i]);
    }

    std::size_t fitness_calls = 0;
    std::size_t cache_hits = 0;

private:
    double call(const NetworkArch& arch) {
        ++fitness_calls;
        const double f = fn_(arch);
        return std::isfinite(f) ? f : kInf;
    }

    const FitnessFn& fn_;
    bool parallel_;
    std::map<NetworkArch, double> cache_;
};

}  // namespace

std::string NetworkArch::to_string() const {
    return std::to_string(layer1) + "," + std::to_string(layer2) + "," + std::to_string(layer3);
}

NetworkArch clamp_and_round(const std::array<double, 3>& position, const GwoConfig& config) {
    std::array<int, 3> out{};
    for (std::size_t d = 0; d < 3; ++d) {
        const double clamped = std::clamp(position[d], config.lower_bound, config.upper_bound);
        out[d] = static_cast<int>(std::llround(clamped));  // half away from zero
    }
    return {out[0], out[1], out[2]};
}

GwoResult gwo_minimize(const FitnessFn& fitness, const GwoConfig& config) {
    if (config.herd_size < 3)
        throw NumericError("gwo: herd_size must be >= 3 (alpha, beta, delta must exist)");
    if (config.iterations < 1) throw NumericError("gwo: iterations must be >= 1");
    if (!(config.lower_bound < config.upper_bound))
        throw NumericError("gwo: lower bound must be below upper bound");

    Rng rng(config.seed);
    HerdState herd;
    herd.wolves.resize(static_cast<std::size_t>(config.herd_size));
    for (auto& wolf : herd.wolves)
        for (double& coord : wolf.position)
            coord = rng.uniform(config.lower_bound, config.upper_bound);

    FitnessCache cache(fitness, config.parallel);
    GwoResult result;
    result.best_fitness = kInf;

    auto absorb = [&](const HerdState& h) {
        for (const auto& wolf : h.wolves) {
            if (wolf.fitness < result.best_fitness) {
                result.best_fitness = wolf.fitness;
                result.best_arch = clamp_and_round(wolf.position, config);
            }
        }
        if (!std::isfinite(result.best_fitness))
            throw NumericError("gwo: every wolf has infinite fitness");
        result.trace.entries.push_back({result.best_fitness, result.best_arch});
    };

    cache.evaluate(herd.wolves, config);
    absorb(herd);

    for (int iter = 0; iter < config.iterations; ++iter) {
        const double a =
            2.0 * (1.0 - static_cast<double>(iter) / static_cast<double>(config.iterations));
        herd.rank();
        const std::array<Wolf, 3> leaders = {herd.wolves[herd.leaders[0]],
                                             herd.wolves[herd.leaders[1]],
                                             herd.wolves[herd.leaders[2]]};
        for (auto& wolf : herd.wolves) {
            std::array<double, 3> next{};
            for (std::size_t d = 0; d < 3; ++d) {
                double sum = 0.0;
                for (const Wolf& leader : leaders) {
                    const double r1 = rng.uniform01();
                    const double r2 = rng.uniform01();
                    const double a_coef = 2.0 * a * r1 - a;
                    const double c_coef = 2.0 * r2;
                    const double dist =
                        std::fabs(c_coef * leader.position[d] - wolf.position[d]);
                    sum += leader.position[d] - a_coef * dist;
                }
                next[d] = std::clamp(sum / 3.0, config.lower_bound, config.upper_bound);
            }
            wolf.position = next;
        }
        cache.evaluate(herd.wolves, config);
        absorb(herd);
    }

    result.fitness_calls = cache.fitness_calls;
    result.cache_hits = cache.cache_hits;
    return result;
}

void write_trace_csv(const ConvergenceTrace& trace, const std::string& path) {
    if (trace.entries.empty()) throw NumericError("write_trace_csv: empty trace");
    std::string out = "iteration,best_rmse,layer1,layer2,layer3\n";
    for (std::size_t i = 0; i < trace.entries.size(); ++i) {
        const auto& e = trace.entries[i];
        out += std::to_string(i) + "," + fmt_g(e.best_fitness) + "," +
               std::to_string(e.best_arch.layer1) + "," + std::to_string(e.best_arch.layer2) +
               "," + std::to_string(e.best_arch.layer3) + "\n";
    }
    write_text_file(path, out);
}

}  // namespace goldcast::gwo
