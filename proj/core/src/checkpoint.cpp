#include "goldcast/pipeline/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "goldcast/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace goldcast::pipeline {

namespace {

constexpr char kMagic[8] = {'G', 'C', 'C', 'K', 'P', 'T', '0', '1'};

struct Writer {
    std::ofstream out;
    explicit Writer(const std::string& path) : out(path, std::ios::binary) {
        if (!out) throw DataError("cannot open for writing: " + path);
    }
    void bytes(const void* p, std::size_t n) {
        out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    }
    void u64(std::uint64_t v) { bytes(&v, 8); }
    void f64(double v) { bytes(&v, 8); }
    void str(const std::string& s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }
};

struct Reader {
    std::ifstream in;
    std::string path;
    explicit Reader(const std::string& p) : in(p, std::ios::binary), path(p) {
        if (!in) throw DataError("cannot open: " + p);
    }
    void bytes(void* p, std::size_t n) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (!in) throw DataError(path + ": truncated checkpoint");
    }
    std::uint64_t u64() {
        std::uint64_t v;
        bytes(&v, 8);
        return v;
    }
    double f64() {
        double v;
        bytes(&v, 8);
        return v;
    }
    std::string str() {
        const auto n = u64();
        if (n > (1u << 20)) throw DataError(path + ": corrupt string length");
        std::string s(n, '\0');
        bytes(s.data(), n);
        return s;
    }
};

void write_params(Writer& w, nn::ParamList params) {
    w.u64(nn::param_count(params));
    for (const auto& block : params)
        for (double v : block.value) w.f64(v);
}

void read_params(Reader& r, nn::ParamList params) {
    const auto n = r.u64();
    if (n != nn::param_count(params))
        throw DataError(r.path + ": parameter count mismatch (file " + std::to_string(n) +
                        ", model " + std::to_string(nn::param_count(params)) + ")");
    for (const auto& block : params)
        for (double& v : block.value) v = r.f64();
}

void write_stats(Writer& w, const data::Standardizer& s) {
    w.f64(s.mean);
    w.f64(s.std);
}

data::Standardizer read_stats(Reader& r) {
    data::Standardizer s;
    s.mean = r.f64();
    s.std = r.f64();
    return s;
}

void write_columns(Writer& w, const std::vector<std::string>& cols,
                   const std::vector<data::Standardizer>& stats) {
    w.u64(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        w.str(cols[i]);
        write_stats(w, stats[i]);
    }
}

void read_columns(Reader& r, std::vector<std::string>& cols,
                  std::vector<data::Standardizer>& stats) {
    const auto n = r.u64();
    if (n > 4096) throw DataError(r.path + ": corrupt column count");
    cols.resize(n);
    stats.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        cols[i] = r.str();
        stats[i] = read_stats(r);
    }
}

}  // namespace

void save_checkpoint(TrainedModels& models, const std::string& path) {
    Writer w(path);
    w.bytes(kMagic, sizeof(kMagic));

    w.u64(models.daily_window);
    w.u64(models.monthly_window);
    write_columns(w, models.daily_columns, models.daily_x_stats);
    write_columns(w, models.monthly_columns, models.monthly_x_stats);
    for (const auto& s : models.daily_y_stats) write_stats(w, s);
    for (const auto& s : models.monthly_y_stats) write_stats(w, s);

    for (const auto& arch : models.archs) {
        w.u64(static_cast<std::uint64_t>(arch.layer1));
        w.u64(static_cast<std::uint64_t>(arch.layer2));
        w.u64(static_cast<std::uint64_t>(arch.layer3));
    }

    for (auto& net : models.daily_nets) write_params(w, net.params());
    for (auto& net : models.monthly_nets) write_params(w, net.params());
    for (auto& net : models.fusion_nets) write_params(w, net.params());
    if (!w.out.good()) throw DataError("write failed: " + path);
}

TrainedModels load_checkpoint(const std::string& path) {
    Reader r(path);
    char magic[8];
    r.bytes(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(magic)) != 0)
        throw DataError(path + ": not a goldcast checkpoint (bad magic/version)");

    TrainedModels models;
    models.daily_window = r.u64();
    models.monthly_window = r.u64();
    read_columns(r, models.daily_columns, models.daily_x_stats);
    read_columns(r, models.monthly_columns, models.monthly_x_stats);
    for (auto& s : models.daily_y_stats) s = read_stats(r);
    for (auto& s : models.monthly_y_stats) s = read_stats(r);

    for (auto& arch : models.archs) {
        arch.layer1 = static_cast<int>(r.u64());
        arch.layer2 = static_cast<int>(r.u64());
        arch.layer3 = static_cast<int>(r.u64());
    }

    // Rebuild topologies and overwrite the freshly initialized parameters.
    Rng dummy(0);
    for (std::size_t c = 0; c < 3; ++c) {
        models.daily_nets[c] = nn::LstmRegressor(
            nn::LstmStack(models.daily_columns.size(), models.archs[c].sizes(),
                          models.daily_window, dummy));
        read_params(r, models.daily_nets[c].params());
    }
    for (std::size_t c = 0; c < 3; ++c) {
        models.monthly_nets[c] = nn::LstmRegressor(
            nn::LstmStack(models.monthly_columns.size(), models.archs[3 + c].sizes(),
                          models.monthly_window, dummy));
        read_params(r, models.monthly_nets[c].params());
    }
    for (std::size_t c = 0; c < 3; ++c) {
        models.fusion_nets[c] =
            nn::MlpRegressor(nn::Mlp(6, models.archs[6 + c].sizes(), 1, dummy));
        read_params(r, models.fusion_nets[c].params());
    }
    return models;
}

}  // namespace goldcast::pipeline
