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


// Configuration files: a JSON object (comments allowed) with one key per
// SystemParams field. Powers are given in dBm and ratios in dB; per-entity
// fields accept a scalar or one value per entity.

#ifndef COMPSWIPT_CONFIG_HPP
#define COMPSWIPT_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "compswipt/network.hpp"

namespace compswipt
{

// Keys absent from the text keep their default. Unknown keys and bad values
// throw ConfigError. The result is finalized.
SystemParams parse_params(const std::string &text);
SystemParams load_params(const std::string &path);

// Inverse of parse_params.
std::string dump_params(const SystemParams &params);

// Human-readable table of every parameter in report units.
void print_params(std::ostream &os, const SystemParams &params);

// Reads a whole file; throws ConfigError naming the path.
std::string read_text_file(const std::string &path);

} // namespace compswipt

#endif
