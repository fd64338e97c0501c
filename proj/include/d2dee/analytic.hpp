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

#ifndef D2DEE_ANALYTIC_HPP
#define D2DEE_ANALYTIC_HPP

// Closed-form EE/SE relations for the symmetric network in which every
// signal path has gain g and every interference path gain I * g, with the
// thermal noise neglected against the interference.

#include "model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2dee
{

struct SymmetricCase
{
    double coupling = std::pow(10.0, -1.5); // I = g_interference / g_signal
    double signal_gain = 1.0;
    std::size_t n_d2d = 5;
    std::size_t n_cell = 3;
    double d2d_power = 0.2;  // W per channel
    double cell_power = 0.2; // W
    double pa_efficiency = 0.35;
    double circuit_power = 0.1;
};

inline void check_case(const SymmetricCase &c)
{
    if (!(c.coupling > 0.0))
        throw std::invalid_argument("SymmetricCase: coupling must be positive");
    if (c.d2d_power < 0.0 || c.cell_power < 0.0)
        throw std::invalid_argument("SymmetricCase: powers must be nonnegative");
}

inline double analytic_se(const SymmetricCase &c, LinkKind kind)
{
    check_case(c);
    const double n = static_cast<double>(c.n_d2d);
    const double k = static_cast<double>(c.n_cell);
    if (kind == LinkKind::D2D)
    {
        const double denom = c.cell_power * c.coupling + (n - 1.0) * c.d2d_power * c.coupling;
        if (!(denom > 0.0))
            throw std::domain_error("analytic_se: zero interference, SE unbounded without noise");
        return k * std::log2(1.0 + c.d2d_power / denom);
    }
    const double denom = n * c.d2d_power * c.coupling;
    if (!(denom > 0.0))
        throw std::domain_error("analytic_se: zero interference, SE unbounded without noise");
    return std::log2(1.0 + c.cell_power / denom);
}

// Largest SE reachable in the symmetric case: bounded for D2D links (the
// interference from the other N-1 pairs grows with the own power), infinite
// for cellular UEs.
inline double se_supremum(const SymmetricCase &c, LinkKind kind)
{
    check_case(c);
    if (kind == LinkKind::Cellular)
        return std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(c.n_d2d);
    if (c.n_d2d <= 1)
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(c.n_cell) * std::log2(1.0 + 1.0 / ((n - 1.0) * c.coupling));
}

// EE as a function of the operating SE, with the own power eliminated.
inline double analytic_ee(double se, const SymmetricCase &c, LinkKind kind)
{
    check_case(c);
    if (se < 0.0)
        throw std::domain_error("analytic_ee: SE must be nonnegative");
    const double eta = c.pa_efficiency;
    const double n = static_cast<double>(c.n_d2d);
    if (kind == LinkKind::D2D)
    {
        const double k = static_cast<double>(c.n_cell);
        const double x = std::exp2(se / k) - 1.0;
        const double b = 1.0 - (n - 1.0) * c.coupling * x;
        if (!(b > 0.0))
            throw std::domain_error("analytic_ee: SE at or beyond the D2D supremum");
        return eta * se * b / (k * c.cell_power * c.coupling * x + 2.0 * c.circuit_power * eta * b);
    }
    const double x = std::exp2(se) - 1.0;
    return eta * se / (n * c.d2d_power * c.coupling * x + c.circuit_power * eta);
}

} // namespace d2dee

#endif
