/*
 * Copyright 2026 The hesim Authors.
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

#ifndef HESIM_HESIM_HPP
#define HESIM_HESIM_HPP

#include "hesim/benchkit.hpp"
#include "hesim/ckks.hpp"
#include "hesim/common.hpp"
#include "hesim/config.hpp"
#include "hesim/encoding.hpp"
#include "hesim/modular.hpp"
#include "hesim/modulus_chain.hpp"
#include "hesim/ntt.hpp"
#include "hesim/parallel.hpp"
#include "hesim/report.hpp"
#include "hesim/ring_poly.hpp"
#include "hesim/rng.hpp"
#include "hesim/secure_array.hpp"
#include "hesim/serialize.hpp"
#include "hesim/solvers.hpp"

#endif  // HESIM_HESIM_HPP
