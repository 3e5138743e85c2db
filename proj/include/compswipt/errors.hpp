// SPDX-License-Identifier: Apache-2.0
//
// compswipt: resource allocation for CoMP networks with wireless power transfer
// Copyright (C) 2026 The compswipt authors
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

#ifndef COMPSWIPT_ERRORS_HPP
#define COMPSWIPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace compswipt
{

// Malformed input: wrong dimensions, asymmetric data, unserved users.
class StructuralError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// The resource allocation problem has no feasible point for this realization.
class InfeasibleInstance : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The interior-point solver lost accuracy or did not converge.
class NumericalFailure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Configuration file or command-line value is invalid.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A requested enumeration is larger than the configured cap.
class LimitExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace compswipt

#endif
