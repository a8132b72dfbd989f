// SPDX-License-Identifier: Apache-2.0
//
// pnmimo: massive MIMO downlink simulation under oscillator phase noise
// Copyright (C) 2026 The pnmimo authors
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

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "pnmimo/sweep.hpp"

namespace pnmimo::sim {

enum class OutputFormat
{
    csv,
    json_lines
};

OutputFormat parse_output_format(const std::string &s);

inline constexpr const char *schema_version = "pnmimo-sweep/1";

// Fixed column order. wall_time_s is appended only when a row carries it.
std::vector<std::string> result_columns(bool with_wall_time);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

// CSV: "# schema=<version>" line, header row, one line per row. Empty fields are undefined values.
void write_csv(std::ostream &os, const ResultTable &table);

// JSON lines: header object {"schema", "columns"} then one object per row; undefined values are null.
void write_json_lines(std::ostream &os, const ResultTable &table);

// Writes to path, or stdout when path is "-". Throws on an empty table and on I/O failure.
void emit_results(const ResultTable &table, OutputFormat format, const std::filesystem::path &path);

ResultTable read_csv(std::istream &is);
ResultTable read_json_lines(std::istream &is);

} // namespace pnmimo::sim
