// Copyright 2026 The notouch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "notouch/analysis.hpp"
#include "notouch/circuit.hpp"
#include "notouch/circuit_io.hpp"
#include "notouch/engine.hpp"
#include "notouch/error.hpp"
#include "notouch/fock.hpp"
#include "notouch/matrix.hpp"
#include "notouch/no_touching.hpp"
#include "notouch/qubit_state.hpp"
#include "notouch/synthesis.hpp"
