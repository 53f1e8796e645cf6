#pragma once

// Brute-force reference computations shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "heda/engine.hpp"
#include "heda/types.hpp"

namespace testing {

inline std::size_t brute_neighbor_count(const heda::Deployment& d, std::size_t i, double r_tx)
{
    std::size_t n = 0;
    for (std::size_t j = 0; j < d.nodes.size(); ++j)
        if (j != i && heda::squared_distance(d.nodes[i], d.nodes[j]) <= r_tx * r_tx)
            ++n;
    return n;
}

inline std::size_t brute_max_neighbors(const heda::Deployment& d, double r_tx)
{
    std::size_t best = 0;
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
        best = std::max(best, brute_neighbor_count(d, i, r_tx));
    return best;
}

inline std::vector<heda::Point> all_points(const heda::Deployment& d)
{
    std::vector<heda::Point> pts = d.nodes;
    pts.insert(pts.end(), d.sinks.begin(), d.sinks.end());
    return pts;
}

// Depth-first search over every pair with d^2 <= r^2.
inline bool brute_connected(const std::vector<heda::Point>& pts, double r)
{
    const double r2 = r * r;
    if (pts.empty())
        return true;
    std::vector<char> seen(pts.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (!seen[j] && heda::squared_distance(pts[i], pts[j]) <= r2) {
                seen[j] = 1;
                ++reached;
                stack.push_back(j);
            }
    }
    return reached == pts.size();
}

// Smallest double r whose square reaches d2.
inline double reach(double d2)
{
    double r = std::sqrt(d2);
    while (r * r < d2)
        r = std::nextafter(r, std::numeric_limits<double>::infinity());
    while (r > 0 && std::nextafter(r, 0.0) * std::nextafter(r, 0.0) >= d2)
        r = std::nextafter(r, 0.0);
    return r;
}

// Smallest pairwise reach at which the graph connects, by bisection over every candidate.
inline double brute_connect_radius(const heda::Deployment& d)
{
    const auto pts = all_points(d);
    std::vector<double> candidates;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            candidates.push_back(reach(heda::squared_distance(pts[i], pts[j])));
    std::sort(candidates.begin(), candidates.end());
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (brute_connected(pts, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

// Hop counts by repeated relaxation over greedy edges: i may step to j when j is in range
// and strictly nearer to its closest sink; a sink in range is one hop.
inline std::vector<std::uint32_t> brute_hops(const heda::Deployment& d, double r_tx)
{
    const std::size_t n = d.nodes.size();
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    std::vector<double> to_sink(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& s : d.sinks)
            to_sink[i] = std::min(to_sink[i], heda::distance(d.nodes[i], s));
    std::vector<std::uint32_t> h(n, inf);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& s : d.sinks)
            if (heda::squared_distance(d.nodes[i], s) <= r_tx * r_tx && to_sink[i] > 0)
                h[i] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && h[j] != inf && to_sink[j] < to_sink[i] &&
                    heda::squared_distance(d.nodes[i], d.nodes[j]) <= r_tx * r_tx && h[j] + 1 < h[i]) {
                    h[i] = h[j] + 1;
                    changed = true;
                }
    }
    return h;
}

// Largest relative gap, over every sample and node, between the recorded residual and
// initial minus the weighted ledger prefix charged before that sample.
inline double conservation_gap(const heda::engine::RunResult& run)
{
    const auto& c = run.config;
    std::vector<double> spent(c.node_count, 0.0);
    std::size_t cursor = 0;
    double worst = 0;
    for (const auto& s : run.samples) {
        for (; cursor < s.ledger_cursor; ++cursor) {
            const auto& e = run.ledger[cursor];
            spent[e.node] += c.lambda[heda::index(e.constituent())] * e.joules;
        }
        for (std::size_t n = 0; n < c.node_count; ++n) {
            const double expect = c.e_initial - spent[n];
            const double gap = std::fabs(expect - s.residual[n]) / c.e_initial;
            worst = std::max(worst, gap);
        }
    }
    return worst;
}

}  // namespace testing
