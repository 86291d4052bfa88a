// Copyright 2026 The symclif Authors
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

// Everything except the command-line front end.
#include "symclif/canonical.hpp"
#include "symclif/clifford.hpp"
#include "symclif/commutant.hpp"
#include "symclif/errors.hpp"
#include "symclif/framepot.hpp"
#include "symclif/gf2.hpp"
#include "symclif/linalg.hpp"
#include "symclif/pauli.hpp"
#include "symclif/samplers.hpp"
