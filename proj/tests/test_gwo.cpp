#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>

#include "goldcast/errors.hpp"
#include "goldcast/gwo/gwo.hpp"
#include "goldcast/textio.hpp"

using namespace goldcast;

namespace {

double sphere_at_500(const gwo::NetworkArch& a) {
    auto sq = [](double v) { return v * v; };
    return sq(a.layer1 - 500.0) + sq(a.layer2 - 500.0) + sq(a.layer3 - 500.0);
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("clamp_and_round: bounds and half-away-from-zero") {
    gwo::GwoConfig cfg;  // [2, 1024]
    CHECK(gwo::clamp_and_round({-3.0, 512.4, 2000.0}, cfg) == gwo::NetworkArch{2, 512, 1024});
    CHECK(gwo::clamp_and_round({90.0, 36.0, 69.0}, cfg) == gwo::NetworkArch{90, 36, 69});
    CHECK(gwo::clamp_and_round({2.5, 2.49, 1023.5}, cfg) == gwo::NetworkArch{3, 2, 1024});
}

TEST_CASE("sphere benchmark: within 51 per coordinate in >= 8/10 seeds, monotone in 10/10") {
    int within = 0, monotone = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        gwo::GwoConfig cfg;
        cfg.herd_size = 5;
        cfg.iterations = 30;
        cfg.seed = seed;
        const auto res = gwo::gwo_minimize(sphere_at_500, cfg);
        const auto a = res.best_arch.as_array();
        if (std::abs(a[0] - 500) <= 51 && std::abs(a[1] - 500) <= 51 &&
            std::abs(a[2] - 500) <= 51)
            ++within;
        bool mono = true;
        for (std::size_t i = 1; i < res.trace.entries.size(); ++i)
            if (res.trace.entries[i].best_fitness > res.trace.entries[i - 1].best_fitness)
                mono = false;
        monotone += mono;
        // stochastic improvement: final best strictly below the initial herd's best
        CHECK(res.trace.entries.back().best_fitness < res.trace.entries.front().best_fitness);
    }
    CHECK(within >= 8);
    CHECK(monotone == 10);
}

TEST_CASE("constant fitness: flat trace, normal termination") {
    gwo::GwoConfig cfg;
    cfg.seed = 5;
    const auto res = gwo::gwo_minimize([](const gwo::NetworkArch&) { return 1.0; }, cfg);
    CHECK(res.trace.entries.size() == 11);  // initial evaluation + 10 iterations
    for (const auto& e : res.trace.entries) CHECK(e.best_fitness == 1.0);
    CHECK(res.best_fitness == 1.0);
}

TEST_CASE("herd 3, one iteration: exactly herd*(1+iterations) fitness evaluations") {
    gwo::GwoConfig cfg;
    cfg.herd_size = 3;
    cfg.iterations = 1;
    cfg.seed = 2;
    std::size_t calls = 0;
    const auto res = gwo::gwo_minimize(
        [&](const gwo::NetworkArch& a) {
            ++calls;
            return sphere_at_500(a);
        },
        cfg);
    CHECK(calls == 6);
    CHECK(res.fitness_calls == 6);
    CHECK(res.cache_hits == 0);
}

TEST_CASE("paper settings: every evaluated architecture is integral and in bounds") {
    gwo::GwoConfig cfg;  // 5 wolves, 10 iterations, [2, 1024]
    cfg.seed = 9;
    std::map<std::array<int, 3>, int> invocations;
    const auto res = gwo::gwo_minimize(
        [&](const gwo::NetworkArch& a) {
            ++invocations[{a.layer1, a.layer2, a.layer3}];
            for (int v : a.as_array()) {
                CHECK(v >= 2);
                CHECK(v <= 1024);
            }
            return sphere_at_500(a);
        },
        cfg);
    CHECK(res.fitness_calls == 55);  // 5 * (1 + 10)
    CHECK(res.trace.entries.size() == 11);
    for (const auto& [arch, n] : invocations) CHECK(n == 1);  // never trained twice
}

TEST_CASE("revisited architectures are served from the cache") {
    // a boundary attractor makes wolves collide at the lower corner once the
    // herd converges; every revisit must be a cache hit, not a new call
    gwo::GwoConfig cfg;
    cfg.iterations = 25;
    cfg.seed = 2;
    std::map<std::array<int, 3>, int> invocations;
    const auto res = gwo::gwo_minimize(
        [&](const gwo::NetworkArch& a) {
            ++invocations[{a.layer1, a.layer2, a.layer3}];
            return static_cast<double>(a.layer1 + a.layer2 + a.layer3);
        },
        cfg);
    CHECK(res.cache_hits > 0);
    CHECK(res.fitness_calls + res.cache_hits ==
          static_cast<std::size_t>(cfg.herd_size * (1 + cfg.iterations)));
    for (const auto& [arch, n] : invocations) CHECK(n == 1);
}

TEST_CASE("mocked sum-of-layers fitness drives architectures toward (2,2,2)") {
    gwo::GwoConfig cfg;
    cfg.iterations = 40;
    cfg.seed = 1;
    const auto res = gwo::gwo_minimize(
        [](const gwo::NetworkArch& a) {
            return static_cast<double>(a.layer1 + a.layer2 + a.layer3);
        },
        cfg);
    CHECK(res.best_arch.layer1 <= 10);
    CHECK(res.best_arch.layer2 <= 10);
    CHECK(res.best_arch.layer3 <= 10);
}

TEST_CASE("non-finite fitness becomes +inf and the run continues") {
    gwo::GwoConfig cfg;
    cfg.seed = 3;
    std::size_t nan_count = 0;
    const auto res = gwo::gwo_minimize(
        [&](const gwo::NetworkArch& a) -> double {
            if (a.layer1 % 2 == 0) {
                ++nan_count;
                return std::numeric_limits<double>::quiet_NaN();
            }
            return sphere_at_500(a);
        },
        cfg);
    CHECK(nan_count > 0);
    CHECK(std::isfinite(res.best_fitness));
}

TEST_CASE("all-infinite herd raises") {
    gwo::GwoConfig cfg;
    cfg.seed = 4;
    CHECK_THROWS_AS(gwo::gwo_minimize(
                        [](const gwo::NetworkArch&) {
                            return std::numeric_limits<double>::infinity();
                        },
                        cfg),
                    NumericError);
}

TEST_CASE("herd smaller than 3 is rejected") {
    gwo::GwoConfig cfg;
    cfg.herd_size = 2;
    CHECK_THROWS_AS(gwo::gwo_minimize(sphere_at_500, cfg), NumericError);
}

TEST_CASE("fixed seed gives identical trace and result") {
    gwo::GwoConfig cfg;
    cfg.seed = 11;
    const auto a = gwo::gwo_minimize(sphere_at_500, cfg);
    const auto b = gwo::gwo_minimize(sphere_at_500, cfg);
    CHECK(a.best_arch == b.best_arch);
    CHECK(a.best_fitness == b.best_fitness);
    REQUIRE(a.trace.entries.size() == b.trace.entries.size());
    for (std::size_t i = 0; i < a.trace.entries.size(); ++i) {
        CHECK(a.trace.entries[i].best_fitness == b.trace.entries[i].best_fitness);
        CHECK(a.trace.entries[i].best_arch == b.trace.entries[i].best_arch);
    }
}

TEST_CASE("parallel herd evaluation matches sequential exactly") {
    gwo::GwoConfig cfg;
    cfg.seed = 12;
    cfg.iterations = 15;
    const auto seq = gwo::gwo_minimize(sphere_at_500, cfg);
    cfg.parallel = true;
    const auto par = gwo::gwo_minimize(sphere_at_500, cfg);
    CHECK(seq.best_arch == par.best_arch);
    CHECK(seq.best_fitness == par.best_fitness);
    REQUIRE(seq.trace.entries.size() == par.trace.entries.size());
    for (std::size_t i = 0; i < seq.trace.entries.size(); ++i)
        CHECK(seq.trace.entries[i].best_fitness == par.trace.entries[i].best_fitness);
}

TEST_CASE("every position passed to the callback is in bounds under custom bounds") {
    gwo::GwoConfig cfg;
    cfg.lower_bound = 4;
    cfg.upper_bound = 32;
    cfg.iterations = 20;
    cfg.seed = 13;
    gwo::gwo_minimize(
        [&](const gwo::NetworkArch& a) {
            for (int v : a.as_array()) {
                CHECK(v >= 4);
                CHECK(v <= 32);
            }
            return sphere_at_500(a);
        },
        cfg);
}

TEST_CASE("trace csv: rows, monotonicity, determinism") {
    gwo::GwoConfig cfg;
    cfg.seed = 14;
    const auto res = gwo::gwo_minimize(sphere_at_500, cfg);

    const auto path_a = temp_path("trace_a.csv");
    const auto path_b = temp_path("trace_b.csv");
    gwo::write_trace_csv(res.trace, path_a);

    const auto text = read_text_file(path_a);
    const auto lines = split(trim(text), '\n');
    REQUIRE(lines.size() == res.trace.entries.size() + 1);
    CHECK(lines[0] == "iteration,best_rmse,layer1,layer2,layer3");
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        REQUIRE(f.size() == 5);
        CHECK(f[0] == std::to_string(i - 1));
        const double rmse = parse_double(f[1], "trace");
        CHECK(rmse <= prev);
        prev = rmse;
    }

    // re-run with the same seed: byte-identical file
    const auto res2 = gwo::gwo_minimize(sphere_at_500, cfg);
    gwo::write_trace_csv(res2.trace, path_b);
    CHECK(read_text_file(path_a) == read_text_file(path_b));

    gwo::ConvergenceTrace empty;
    CHECK_THROWS_AS(gwo::write_trace_csv(empty, temp_path("trace_c.csv")), NumericError);
}
