/*
 * Copyright 2026 The groupnav Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "groupnav/agent.hpp"
#include "groupnav/bench.hpp"
#include "groupnav/benchmark.hpp"
#include "groupnav/config_file.hpp"
#include "groupnav/geometry.hpp"
#include "groupnav/orca.hpp"
#include "groupnav/policy.hpp"
#include "groupnav/rng.hpp"
#include "groupnav/sim.hpp"
#include "groupnav/social_force.hpp"
#include "groupnav/taga.hpp"
#include "groupnav/trace.hpp"
#include "groupnav/vec2.hpp"
