// SPDX-License-Identifier: Apache-2.0
//
// d2dee: energy-efficient power allocation for D2D underlay cellular networks
// Copyright (C) 2026 The d2dee authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef D2DEE_SCENARIO_HPP
#define D2DEE_SCENARIO_HPP

#include "model.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace d2dee
{

// Distances below this are clamped before applying the d^-2 path loss.
inline constexpr double kMinLinkDistance = 1.0;

struct Point
{
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point &) const = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Topology
{
    double cell_radius = 500.0;
    double d2d_max_distance = 25.0;
    Point bs{};
    std::vector<Point> cell_ues;
    std::vector<Point> d2d_tx;
    std::vector<Point> d2d_rx;

    bool operator==(const Topology &) const = default;
};

enum class FadingMode
{
    Rayleigh, // independent CN(0,1) draw per (tx, rx, channel)
    Flat,     // one draw per (tx, rx), reused on every channel
    Disabled  // |h|^2 = 1
};

namespace detail
{
// Uniform point in a disc of the given radius.
inline Point uniform_in_disc(std::mt19937_64 &rng, Point center, double radius)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    return {center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
}
} // namespace detail

// Drops K cellular UEs and N D2D pairs uniformly in a cell centred on the BS.
inline Topology generate_topology(const SystemParams &params, double cell_radius, double d2d_max_distance,
                                  std::uint64_t seed)
{
    if (!(cell_radius > 0.0))
        throw std::invalid_argument("generate_topology: cell_radius must be positive");
    if (!(d2d_max_distance > 0.0) || d2d_max_distance > cell_radius)
        throw std::invalid_argument("generate_topology: need 0 < d2d_max_distance <= cell_radius");

    std::mt19937_64 rng(seed);
    Topology t;
    t.cell_radius = cell_radius;
    t.d2d_max_distance = d2d_max_distance;
    t.bs = {0.0, 0.0};
    for (std::size_t k = 0; k < params.n_cell; ++k)
        t.cell_ues.push_back(detail::uniform_in_disc(rng, t.bs, cell_radius));
    for (std::size_t i = 0; i < params.n_d2d; ++i)
    {
        const Point tx = detail::uniform_in_disc(rng, t.bs, cell_radius);
        Point rx;
        do
            rx = detail::uniform_in_disc(rng, tx, d2d_max_distance);
        while (distance(rx, t.bs) > cell_radius);
        t.d2d_tx.push_back(tx);
        t.d2d_rx.push_back(rx);
    }
    return t;
}

// d^-2 with the minimum-distance clamp.
inline double path_gain(double d) { return std::pow(std::max(d, kMinLinkDistance), -2.0); }

// Sampler for |h|^2 with h ~ CN(0, 1).
class RayleighPowerSampler
{
public:
    explicit RayleighPowerSampler(std::uint64_t seed) : rng_(seed), normal_(0.0, std::sqrt(0.5)) {}

    double operator()()
    {
        const double re = normal_(rng_);
        const double im = normal_(rng_);
        return re * re + im * im;
    }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

// Builds every per-channel power gain d^-2 |h|^2 of the topology.
inline GainTensor compute_gains(const Topology &t, std::uint64_t seed, FadingMode fading = FadingMode::Rayleigh)
{
    const std::size_t n = t.d2d_tx.size();
    const std::size_t kc = t.cell_ues.size();
    if (t.d2d_rx.size() != n)
        throw std::invalid_argument("compute_gains: tx/rx count mismatch");

    RayleighPowerSampler sample(seed);
    // Per-link fading gains over the K channels.
    auto fade = [&](std::vector<double> &out)
    {
        out.assign(kc, 1.0);
        if (fading == FadingMode::Disabled)
            return;
        if (fading == FadingMode::Flat)
        {
            const double h2 = sample();
            for (auto &v : out)
                v = h2;
            return;
        }
        for (auto &v : out)
            v = sample();
    };

    GainTensor g(n, kc);
    std::vector<double> h2;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double pl = path_gain(distance(t.d2d_tx[i], t.d2d_rx[i]));
        fade(h2);
        for (std::size_t k = 0; k < kc; ++k)
            g.d2d_direct(i, k) = pl * h2[k];
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
        {
            if (i == j)
                continue;
            const double pl = path_gain(distance(t.d2d_tx[j], t.d2d_rx[i]));
            fade(h2);
            for (std::size_t k = 0; k < kc; ++k)
                g.cross(j, i, k) = pl * h2[k];
        }
    // Cellular UE k only transmits on channel k, so one draw per path suffices.
    for (std::size_t k = 0; k < kc; ++k)
    {
        fade(h2);
        g.cell_direct[k] = path_gain(distance(t.cell_ues[k], t.bs)) * h2[k];
        for (std::size_t i = 0; i < n; ++i)
        {
            fade(h2);
            g.cell_to_d2d(k, i) = path_gain(distance(t.cell_ues[k], t.d2d_rx[i])) * h2[k];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        const double pl = path_gain(distance(t.d2d_tx[i], t.bs));
        fade(h2);
        for (std::size_t k = 0; k < kc; ++k)
            g.d2d_to_bs(i, k) = pl * h2[k];
    }
    return g;
}

// ---- JSON dump/load (positions in meters) ----

inline void to_json(nlohmann::json &j, const Point &p) { j = nlohmann::json::array({p.x, p.y}); }

inline void from_json(const nlohmann::json &j, Point &p)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("topology JSON: a point must be [x, y]");
    p.x = j.at(0).get<double>();
    p.y = j.at(1).get<double>();
}

inline nlohmann::json topology_to_json(const Topology &t)
{
    return {{"bs", t.bs},
            {"cell_ues", t.cell_ues},
            {"d2d_tx", t.d2d_tx},
            {"d2d_rx", t.d2d_rx},
            {"cell_radius", t.cell_radius},
            {"d2d_max_distance", t.d2d_max_distance}};
}

inline Topology topology_from_json(const nlohmann::json &j)
{
    Topology t;
    t.bs = j.at("bs").get<Point>();
    t.cell_ues = j.at("cell_ues").get<std::vector<Point>>();
    t.d2d_tx = j.at("d2d_tx").get<std::vector<Point>>();
    t.d2d_rx = j.at("d2d_rx").get<std::vector<Point>>();
    t.cell_radius = j.value("cell_radius", t.cell_radius);
    t.d2d_max_distance = j.value("d2d_max_distance", t.d2d_max_distance);
    if (t.d2d_tx.size() != t.d2d_rx.size())
        throw std::invalid_argument("topology JSON: d2d_tx and d2d_rx differ in length");
    return t;
}

} // namespace d2dee

#endif
