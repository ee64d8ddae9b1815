// SPDX-License-Identifier: Apache-2.0
//
// hybridcr: joint sensing / receive-beamforming design for hybrid SIMO cognitive radio
// Copyright (C) 2026 The hybridcr authors
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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hybridcr {

using cdouble = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kLn2 = 0.69314718055993530942;

// Error hierarchy. Everything derives from std::runtime_error or std::invalid_argument
// so callers that only care about "bad input" vs "numerical trouble" can catch broadly.

/// Argument outside its documented domain (negative power, probability outside (0,1), ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Function evaluated outside its mathematical domain (e.g. E1 at x <= 0, Q^-1 at p = 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Matrix expected to be positive (semi)definite is not.
class NotPositiveDefinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root-finder endpoints do not bracket a sign change.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative numeric routine failed to meet its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string &what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}
    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// The primary outage constraint cannot be met by any admissible design.
class InfeasibleConstraint : public std::runtime_error {
public:
    InfeasibleConstraint(const std::string &what, double min_outage)
        : std::runtime_error(what), min_outage_(min_outage) {}
    /// Smallest outage the design family can reach.
    double min_outage() const noexcept { return min_outage_; }

private:
    double min_outage_;
};

} // namespace hybridcr
