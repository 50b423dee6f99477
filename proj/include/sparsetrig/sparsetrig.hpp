// Copyright 2026 The SparseTrig Authors
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

#ifndef SPARSETRIG_SPARSETRIG_HPP_
#define SPARSETRIG_SPARSETRIG_HPP_

#include "sparsetrig/approx.hpp"
#include "sparsetrig/config.hpp"
#include "sparsetrig/decomposition.hpp"
#include "sparsetrig/io.hpp"
#include "sparsetrig/norms.hpp"
#include "sparsetrig/ratelab.hpp"
#include "sparsetrig/spectrum.hpp"
#include "sparsetrig/testfuncs.hpp"

#endif  // SPARSETRIG_SPARSETRIG_HPP_
