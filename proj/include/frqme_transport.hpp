// Copyright 2026 The frqme-transport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "frqme/operator_core.hpp"
#include "frqme/model.hpp"
#include "frqme/frqme.hpp"
#include "frqme/pulse_program.hpp"
#include "frqme/propagator.hpp"
#include "frqme/metrics.hpp"
#include "frqme/transport.hpp"
#include "frqme/sweep.hpp"
#include "frqme/config.hpp"
