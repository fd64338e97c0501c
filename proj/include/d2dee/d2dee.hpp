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


#ifndef D2DEE_D2DEE_HPP
#define D2DEE_D2DEE_HPP

#include "analytic.hpp"
#include "environment.hpp"
#include "experiment.hpp"
#include "game.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "scenario.hpp"
#include "solver.hpp"

#endif
