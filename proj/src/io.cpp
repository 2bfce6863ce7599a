#include "brlab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace brlab {

namespace {

constexpr char kMagic[4] = {'B', 'R', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::string& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error("truncated grid function file: " + path);
    return v;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void save_grid_function(const std::string& path, const GridFunction& f) {
    std::ofstream out = open_out(path);
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<std::int32_t>(f.grid().dim));
    put(out, static_cast<std::int32_t>(f.grid().points_per_axis));
    put(out, f.grid().half_width);
    put(out, static_cast<std::uint8_t>(f.space() == Space::physical ? 0 : 1));
    for (const auto& v : f.values()) {
        put(out, v.real());
        put(out, v.imag());
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

GridFunction load_grid_function(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("not a grid function file: " + path);
    }
    const auto version = get<std::uint32_t>(in, path);
    if (version != kVersion) {
        throw std::runtime_error("unsupported grid function version in " + path);
    }
    const auto dim = get<std::int32_t>(in, path);
    const auto n = get<std::int32_t>(in, path);
    const auto L = get<double>(in, path);
    const auto space_tag = get<std::uint8_t>(in, path);
    if (space_tag > 1) throw std::runtime_error("bad space tag in " + path);
    GridFunction f(make_grid(dim, n, L), space_tag == 0 ? Space::physical : Space::frequency);
    for (auto& v : f.values()) {
        const double re = get<double>(in, path);
        const double im = get<double>(in, path);
        v = {re, im};
    }
    return f;
}

void write_profile_csv(const std::string& path, const RadialProfile& profile) {
    std::ofstream out = open_out(path);
    out << "r,value\n";
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        out << fmt(profile.radii[i]) << ',' << fmt(profile.values[i]) << '\n';
    }
}

void write_curve_csv(const std::string& path, const RateCurve& curve) {
    std::ofstream out = open_out(path);
    out << "R,error\n";
    for (std::size_t i = 0; i < curve.R.size(); ++i) {
        out << fmt(curve.R[i]) << ',' << fmt(curve.error[i]) << '\n';
    }
}

void write_weak_type_csv(const std::string& path, const WeakTypeProfile& profile) {
    std::ofstream out = open_out(path);
    out << "threshold,measure\n";
    for (std::size_t i = 0; i < profile.thresholds.size(); ++i) {
        out << fmt(profile.thresholds[i]) << ',' << fmt(profile.measures[i]) << '\n';
    }
}

}  // namespace brlab
