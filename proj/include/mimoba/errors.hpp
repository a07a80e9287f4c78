// Copyright 2026 The mimo-bitalloc Authors
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

#ifndef MIMOBA_ERRORS_HPP
#define MIMOBA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mimoba {

/// Bad dimensions or malformed configuration.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested ADC resolution outside the quantizer table domain.
struct unsupported_resolution_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// No bit vector fits inside the ADC power budget.
struct infeasible_budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix inversion refused (condition number beyond guard).
struct singular_matrix_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mimoba

#endif
