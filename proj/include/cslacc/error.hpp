// SPDX-License-Identifier: Apache-2.0
//
// cslacc: compressive subspace learning with antenna cross-correlations
// Copyright (C) 2026 The cslacc authors
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

#ifndef CSLACC_ERROR_HPP
#define CSLACC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cslacc
{
    enum class ErrorCode
    {
        NonHermitianInput,
        NegativeEigenvalue,
        ConvergenceFailure,
        DimensionOverflow,
        DimensionMismatch,
        InvalidRho,
        InvalidConfig,
        BandOverflow,
        IndivisibleRatio,
        IndexOutOfRange,
        EmptySegments,
        NoShiftAvailable,
        ReshapeMismatch,
        RhoAtUnity,
        ShiftOutOfRange,
        IoError
    };

    std::string_view to_string(ErrorCode code) noexcept;

    // All library failures surface as this type; code() identifies the condition.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message)
            : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    inline std::string_view to_string(ErrorCode code) noexcept
    {
        switch (code)
        {
        case ErrorCode::NonHermitianInput:
            return "NonHermitianInput";
        case ErrorCode::NegativeEigenvalue:
            return "NegativeEigenvalue";
        case ErrorCode::ConvergenceFailure:
            return "ConvergenceFailure";
        case ErrorCode::DimensionOverflow:
            return "DimensionOverflow";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::InvalidRho:
            return "InvalidRho";
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::BandOverflow:
            return "BandOverflow";
        case ErrorCode::IndivisibleRatio:
            return "IndivisibleRatio";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::EmptySegments:
            return "EmptySegments";
        case ErrorCode::NoShiftAvailable:
            return "NoShiftAvailable";
        case ErrorCode::ReshapeMismatch:
            return "ReshapeMismatch";
        case ErrorCode::RhoAtUnity:
            return "RhoAtUnity";
        case ErrorCode::ShiftOutOfRange:
            return "ShiftOutOfRange";
        case ErrorCode::IoError:
            return "IoError";
        }
        return "Unknown";
    }
}

#endif
