// Copyright 2026 The qsimon Authors
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

#include "qsimon/errors.hpp"

namespace qsimon {

const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DimensionMismatch:
        return "dimension mismatch";
    case ErrorKind::DegenerateShift:
        return "degenerate shift";
    case ErrorKind::DegenerateResult:
        return "degenerate result";
    case ErrorKind::UnsupportedShift:
        return "unsupported shift";
    case ErrorKind::IndexOutOfRange:
        return "index out of range";
    case ErrorKind::Capacity:
        return "capacity exceeded";
    case ErrorKind::Normalization:
        return "state not normalized";
    case ErrorKind::ShapeMismatch:
        return "shape mismatch";
    case ErrorKind::Encoding:
        return "encoding error";
    case ErrorKind::InconsistentConstraints:
        return "inconsistent constraints";
    case ErrorKind::IncompleteConstraints:
        return "incomplete constraints";
    case ErrorKind::Domain:
        return "domain error";
    case ErrorKind::Parse:
        return "parse error";
    case ErrorKind::PromiseViolation:
        return "promise violation";
    }
    return "unknown error";
}

} // namespace qsimon
