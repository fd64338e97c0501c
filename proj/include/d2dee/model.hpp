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

#ifndef D2DEE_MODEL_HPP
#define D2DEE_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace d2dee
{

// Absolute slack (W) accepted on power-constraint boundaries.
inline constexpr double kPowerSlack = 1e-12;

// Model constants. All powers in watts, rates in bits/s/Hz.
struct SystemParams
{
    std::size_t n_d2d = 5;          // N
    std::size_t n_cell = 3;         // K, also the number of orthogonal channels
    double pa_efficiency = 0.35;    // eta
    double circuit_power = 0.1;     // p_cir
    double noise_power = 1e-7;      // N0
    double d2d_power_budget = 0.2;  // per D2D transmitter, summed over channels
    double cell_power_budget = 0.2; // per cellular UE
    double d2d_se_floor = 1.0;
    double cell_se_floor = 0.1;
    double tolerance = 1e-3;        // Dinkelbach stopping threshold
    std::size_t max_outer_iters = 10;
};

struct ValidationReport
{
    std::vector<std::string> violations; // offending field names

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }
};

inline ValidationReport validate_params(const SystemParams &p)
{
    ValidationReport r;
    auto check = [&](bool good, const char *field)
    {
        if (!good)
            r.violations.emplace_back(field);
    };
    check(p.n_d2d >= 1, "n_d2d");
    check(p.n_cell >= 1, "n_cell");
    check(p.pa_efficiency > 0.0 && p.pa_efficiency < 1.0, "pa_efficiency");
    check(p.circuit_power >= 0.0, "circuit_power");
    check(p.noise_power > 0.0, "noise_power");
    check(p.d2d_power_budget >= 0.0, "d2d_power_budget");
    check(p.cell_power_budget >= 0.0, "cell_power_budget");
    check(std::isfinite(p.d2d_se_floor), "d2d_se_floor");
    check(std::isfinite(p.cell_se_floor), "cell_se_floor");
    check(p.tolerance > 0.0, "tolerance");
    check(p.max_outer_iters >= 1, "max_outer_iters");
    return r;
}

inline void require_valid(const SystemParams &p)
{
    auto r = validate_params(p);
    if (!r.ok())
    {
        std::string msg = "invalid SystemParams:";
        for (const auto &v : r.violations)
            msg += " " + v;
        throw std::invalid_argument(msg);
    }
}

enum class LinkKind
{
    D2D,
    Cellular
};

struct LinkId
{
    LinkKind kind = LinkKind::D2D;
    std::size_t index = 0;

    static LinkId d2d(std::size_t i) { return {LinkKind::D2D, i}; }
    static LinkId cellular(std::size_t k) { return {LinkKind::Cellular, k}; }

    bool operator==(const LinkId &) const = default;
};

inline bool valid_link(const SystemParams &p, LinkId link)
{
    return link.kind == LinkKind::D2D ? link.index < p.n_d2d : link.index < p.n_cell;
}

// Constraint data for one link class: SE floor (C1/C3), transmit budget
// (C2/C4) and the circuit power charged to the link.
struct LinkConstraints
{
    double se_floor;
    double power_budget;
    double circuit_power;
};

inline LinkConstraints constraints_for(const SystemParams &p, LinkKind kind)
{
    if (kind == LinkKind::D2D)
        return {p.d2d_se_floor, p.d2d_power_budget, 2.0 * p.circuit_power};
    return {p.cell_se_floor, p.cell_power_budget, p.circuit_power};
}

// Row-major matrix over std::vector.
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double> &data() const { return data_; }

    std::vector<double> row(std::size_t r) const
    {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }
    void set_row(std::size_t r, const std::vector<double> &v)
    {
        if (v.size() != cols_)
            throw std::invalid_argument("Matrix::set_row: size mismatch");
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(r, c) = v[c];
    }

    bool operator==(const Matrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Every power gain of the network for N D2D pairs on K channels.
// Channel k is owned by cellular UE k.
struct GainTensor
{
    std::size_t n_d2d = 0;
    std::size_t n_cell = 0;
    Matrix d2d_direct;               // (i, k): D2D tx i -> D2D rx i
    Matrix cell_to_d2d;              // (k, i): cellular UE k -> D2D rx i on channel k
    std::vector<double> d2d_to_d2d;  // (j, i, k): D2D tx j -> D2D rx i, j != i
    std::vector<double> cell_direct; // (k): cellular UE k -> BS
    Matrix d2d_to_bs;                // (i, k): D2D tx i -> BS

    GainTensor() = default;
    GainTensor(std::size_t n, std::size_t k)
        : n_d2d(n), n_cell(k), d2d_direct(n, k), cell_to_d2d(k, n),
          d2d_to_d2d(n * n * k, 0.0), cell_direct(k, 0.0), d2d_to_bs(n, k) {}

    double &cross(std::size_t j, std::size_t i, std::size_t k) { return d2d_to_d2d[(j * n_d2d + i) * n_cell + k]; }
    double cross(std::size_t j, std::size_t i, std::size_t k) const { return d2d_to_d2d[(j * n_d2d + i) * n_cell + k]; }

    bool operator==(const GainTensor &) const = default;
};

inline bool gains_consistent(const GainTensor &g, const SystemParams &p)
{
    if (g.n_d2d != p.n_d2d || g.n_cell != p.n_cell)
        return false;
    if (g.d2d_direct.rows() != p.n_d2d || g.d2d_direct.cols() != p.n_cell)
        return false;
    if (g.cell_to_d2d.rows() != p.n_cell || g.cell_to_d2d.cols() != p.n_d2d)
        return false;
    if (g.d2d_to_bs.rows() != p.n_d2d || g.d2d_to_bs.cols() != p.n_cell)
        return false;
    if (g.d2d_to_d2d.size() != p.n_d2d * p.n_d2d * p.n_cell || g.cell_direct.size() != p.n_cell)
        return false;
    auto nonneg = [](const std::vector<double> &v)
    {
        for (double x : v)
            if (!(x >= 0.0))
                return false;
        return true;
    };
    return nonneg(g.d2d_direct.data()) && nonneg(g.cell_to_d2d.data()) && nonneg(g.d2d_to_d2d) &&
           nonneg(g.cell_direct) && nonneg(g.d2d_to_bs.data());
}

// Joint strategy of every player.
struct PowerProfile
{
    Matrix d2d_power;              // (i, k)
    std::vector<double> cell_power; // (k)

    PowerProfile() = default;
    PowerProfile(std::size_t n, std::size_t k) : d2d_power(n, k), cell_power(k, 0.0) {}
    explicit PowerProfile(const SystemParams &p) : PowerProfile(p.n_d2d, p.n_cell) {}

    bool operator==(const PowerProfile &) const = default;
};

// C2/C4 plus nonnegativity, with kPowerSlack on the budget boundaries.
inline bool profile_satisfies_budgets(const PowerProfile &pp, const SystemParams &p)
{
    if (pp.d2d_power.rows() != p.n_d2d || pp.d2d_power.cols() != p.n_cell || pp.cell_power.size() != p.n_cell)
        return false;
    for (std::size_t i = 0; i < p.n_d2d; ++i)
    {
        double sum = 0.0;
        for (std::size_t k = 0; k < p.n_cell; ++k)
        {
            double x = pp.d2d_power(i, k);
            if (!(x >= 0.0))
                return false;
            sum += x;
        }
        if (sum > p.d2d_power_budget + kPowerSlack)
            return false;
    }
    for (double x : pp.cell_power)
        if (!(x >= 0.0) || x > p.cell_power_budget + kPowerSlack)
            return false;
    return true;
}

inline double mw_to_w(double mw) { return mw * 1e-3; }
inline double w_to_mw(double w) { return w * 1e3; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace d2dee

#endif
