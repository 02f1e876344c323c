/*
   Copyright 2026 The skrw Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SKRW_ERROR_HPP
#define SKRW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace skrw {

enum class ErrorKind {
    zero_denominator,
    dependent_s,
    no_solution,
    non_unique,
    expansion_failure,
    singular_operator,
    precondition,
    claim_violation,
    zero_kernel,
    missing_table_entry,
    degree_cap,
    non_terminating,
    shape_violation,
    inconsistent_system,
    evaluation_mismatch,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::zero_denominator: return "zero-denominator";
        case ErrorKind::dependent_s: return "dependent-S";
        case ErrorKind::no_solution: return "no-solution";
        case ErrorKind::non_unique: return "non-unique-solution";
        case ErrorKind::expansion_failure: return "expansion-failure";
        case ErrorKind::singular_operator: return "singular-operator";
        case ErrorKind::precondition: return "precondition-violation";
        case ErrorKind::claim_violation: return "claim-violation";
        case ErrorKind::zero_kernel: return "zero-kernel";
        case ErrorKind::missing_table_entry: return "missing-table-entry";
        case ErrorKind::degree_cap: return "degree-cap-overflow";
        case ErrorKind::non_terminating: return "non-terminating-reduction";
        case ErrorKind::shape_violation: return "shape-violation";
        case ErrorKind::inconsistent_system: return "inconsistent-system";
        case ErrorKind::evaluation_mismatch: return "evaluation-mismatch";
    }
    return "unknown";
}

/// Domain error carrying a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace skrw

#endif  // SKRW_ERROR_HPP
