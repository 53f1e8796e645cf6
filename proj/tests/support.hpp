#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "heda/types.hpp"

namespace testing {

// Small seeded generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool coin() { return integer(0, 1) == 1; }

    heda::Point point(double w, double h) { return {real(0, w), real(0, h)}; }

    heda::Deployment deployment(std::size_t nodes, std::size_t sinks, double w, double h)
    {
        heda::Deployment d;
        for (std::size_t i = 0; i < nodes; ++i)
            d.nodes.push_back(point(w, h));
        for (std::size_t i = 0; i < sinks; ++i)
            d.sinks.push_back(point(w, h));
        return d;
    }

private:
    std::mt19937_64 engine_;
};

inline double relative(double a, double b)
{
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0 ? 0 : std::fabs(a - b) / scale;
}

// Every cost constant zero: a run with this config consumes nothing.
inline heda::SimConfig silent_config()
{
    heda::SimConfig c;
    for (auto& u : c.units) {
        u.power = {0, 0, 0};
        for (auto& row : u.switch_cost)
            row = {0, 0, 0};
    }
    c.c_proc = c.c_srad = c.e_sbit = c.e_rd = c.e_wt = c.p_retain = c.e_code = c.e_dcode = 0;
    c.bits = {0, 0, 0, 0, 0, 0, 0};
    c.g_sense = 0;
    return c;
}

}  // namespace testing
