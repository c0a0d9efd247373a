#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace goldcast::gwo {

/// Per-layer neuron counts for one subnetwork; the integer search point.
struct NetworkArch {
    int layer1 = 0;
    int layer2 = 0;
    int layer3 = 0;

    auto operator<=>(const NetworkArch&) const = default;

    std::array<int, 3> as_array() const { return {layer1, layer2, layer3}; }
    std::vector<std::size_t> sizes() const {
        return {static_cast<std::size_t>(layer1), static_cast<std::size_t>(layer2),
                static_cast<std::size_t>(layer3)};
    }
    std::string to_string() const;
};

struct GwoConfig {
    int herd_size = 5;
    int iterations = 10;
    double lower_bound = 2.0;
    double upper_bound = 1024.0;
    std::uint64_t seed = 0;
    bool parallel = false;  // evaluate the herd's uncached fitnesses concurrently
};

struct Wolf {
    std::array<double, 3> position{};
    double fitness = 0.0;
};

/// Best-so-far fitness and architecture after the initial evaluation (entry 0)
/// and after each iteration (entries 1..iterations). Fitness is monotone
/// non-increasing across entries.
struct ConvergenceTrace {
    struct Entry {
        double best_fitness = 0.0;
        NetworkArch best_arch;
    };
    std::vector<Entry> entries;
};

struct GwoResult {
    NetworkArch best_arch;
    double best_fitness = 0.0;
    ConvergenceTrace trace;
    std::size_t fitness_calls = 0;  // actual callback invocations
    std::size_t cache_hits = 0;     // evaluations served from the architecture cache
};

/// Clamps each coordinate to [lower, upper], then rounds half away from zero.
NetworkArch clamp_and_round(const std::array<double, 3>& position, const GwoConfig& config);

using FitnessFn = std::function<double(const NetworkArch&)>;

/// Canonical grey-wolf dynamics: the control parameter a falls linearly 2 -> 0
/// over the iterations; every wolf moves to the mean of three leader-guided
/// candidates (alpha, beta, delta), clamped to the bounds. Positions stay
/// continuous; integerization happens only at fitness evaluation, with results
/// cached per integer architecture. A non-finite fitness counts as +inf; an
/// all-infinite herd raises NumericError. Deterministic per config.seed.
GwoResult gwo_minimize(const FitnessFn& fitness, const GwoConfig& config);

/// CSV `iteration,best_rmse,layer1,layer2,layer3`, one row per trace entry.
void write_trace_csv(const ConvergenceTrace& trace, const std::string& path);

}  // namespace goldcast::gwo
