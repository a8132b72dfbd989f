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

#include "pnmimo/results_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace pnmimo::sim {

namespace {

using Row = SweepResultRow;
using Json = nlohmann::ordered_json;

enum class Kind
{
    text,
    integer,
    unsigned_integer,
    real,
    optional_real
};

struct Column
{
    const char *name;
    Kind kind;
    std::function<std::string(const Row &)> get;
    std::function<void(Row &, const std::string &)> set;
};

double parse_real(const std::string &s)
{
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("malformed number '" + s + "' in results");
    return v;
}

template <typename Int>
Int parse_integer(const std::string &s)
{
    Int v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("malformed integer '" + s + "' in results");
    return v;
}

template <typename T>
using Member = T Row::*;

Column text(const char *name, Member<std::string> f)
{
    return {name, Kind::text, [f](const Row &r) { return r.*f; }, [f](Row &r, const std::string &s) { r.*f = s; }};
}

Column integer(const char *name, Member<std::int64_t> f)
{
    return {name, Kind::integer, [f](const Row &r) { return std::to_string(r.*f); },
            [f](Row &r, const std::string &s) { r.*f = parse_integer<std::int64_t>(s); }};
}

Column unsigned_integer(const char *name, Member<std::uint64_t> f)
{
    return {name, Kind::unsigned_integer, [f](const Row &r) { return std::to_string(r.*f); },
            [f](Row &r, const std::string &s) { r.*f = parse_integer<std::uint64_t>(s); }};
}

Column real(const char *name, Member<double> f)
{
    return {name, Kind::real, [f](const Row &r) { return format_double(r.*f); },
            [f](Row &r, const std::string &s) { r.*f = parse_real(s); }};
}

Column optional_real(const char *name, Member<std::optional<double>> f)
{
    return {name, Kind::optional_real,
            [f](const Row &r) { return r.*f ? format_double(*(r.*f)) : std::string(); },
            [f](Row &r, const std::string &s) {
                if (s.empty())
                    (r.*f).reset();
                else
                    r.*f = parse_real(s);
            }};
}

// Column order is part of the output schema.
const std::vector<Column> &columns()
{
    static const std::vector<Column> cols = {
        text("sweep", &Row::sweep),
        text("axis", &Row::axis),
        real("axis_value", &Row::axis_value),
        text("precoder", &Row::precoder),
        integer("M", &Row::M),
        integer("K", &Row::K),
        integer("M_osc", &Row::M_osc),
        real("beta", &Row::beta),
        real("q0", &Row::q0),
        real("sigma_deg_bs", &Row::sigma_deg_bs),
        real("sigma_deg_ue", &Row::sigma_deg_ue),
        integer("tau", &Row::tau),
        integer("T_c", &Row::T_c),
        real("snr_db", &Row::snr_db),
        text("snr_reference", &Row::snr_reference),
        real("sigma_w2", &Row::sigma_w2),
        text("powers", &Row::powers),
        text("alpha_mode", &Row::alpha_mode),
        optional_real("alpha", &Row::alpha),
        optional_real("alpha_argmax", &Row::alpha_argmax),
        real("e_tpn2", &Row::e_tpn2),
        real("q_eff", &Row::q_eff),
        optional_real("analytical_sinr", &Row::analytical_sinr),
        optional_real("empirical_sinr", &Row::empirical_sinr),
        optional_real("std_error", &Row::std_error),
        integer("n_realizations", &Row::n_realizations),
        integer("n_rejected", &Row::n_rejected),
        unsigned_integer("master_seed", &Row::master_seed),
        text("rate_definition", &Row::rate_definition),
        optional_real("rate_awgn", &Row::rate_awgn),
        optional_real("rate_lapidoth", &Row::rate_lapidoth),
        optional_real("rate_min", &Row::rate_min),
        optional_real("rate_ergodic", &Row::rate_ergodic),
        optional_real("rate_reported", &Row::rate_reported),
        optional_real("empirical_rate_reported", &Row::empirical_rate_reported),
        optional_real("wall_time_s", &Row::wall_time_s),
    };
    return cols;
}

bool has_wall_time(const ResultTable &t)
{
    for (const auto &r : t.rows)
        if (r.wall_time_s)
            return true;
    return false;
}

std::vector<const Column *> active_columns(bool with_wall_time)
{
    std::vector<const Column *> out;
    for (const auto &c : columns())
        if (with_wall_time || std::string(c.name) != "wall_time_s")
            out.push_back(&c);
    return out;
}

const Column &column_named(const std::string &name)
{
    for (const auto &c : columns())
        if (name == c.name)
            return c;
    throw std::runtime_error("unknown results column '" + name + "'");
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

Json json_value(const Column &c, const Row &r)
{
    const std::string s = c.get(r);
    switch (c.kind) {
    case Kind::text:
        return s;
    case Kind::integer:
        return parse_integer<std::int64_t>(s);
    case Kind::unsigned_integer:
        return parse_integer<std::uint64_t>(s);
    case Kind::real:
    case Kind::optional_real: {
        if (s.empty())
            return nullptr;
        const double v = parse_real(s);
        if (!std::isfinite(v))
            return s; // JSON has no inf or nan
        return v;
    }
    }
    return nullptr;
}

std::string json_to_field(const Column &c, const Json &v)
{
    if (v.is_null())
        return {};
    if (v.is_string())
        return v.get<std::string>();
    switch (c.kind) {
    case Kind::integer:
        return std::to_string(v.get<std::int64_t>());
    case Kind::unsigned_integer:
        return std::to_string(v.get<std::uint64_t>());
    default:
        return format_double(v.get<double>());
    }
}

} // namespace

OutputFormat parse_output_format(const std::string &s)
{
    if (s == "csv")
        return OutputFormat::csv;
    if (s == "json-lines" || s == "jsonl")
        return OutputFormat::json_lines;
    throw ConfigError("format", "expected csv or json-lines, got '" + s + "'");
}

std::vector<std::string> result_columns(bool with_wall_time)
{
    std::vector<std::string> out;
    for (const auto *c : active_columns(with_wall_time))
        out.emplace_back(c->name);
    return out;
}

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc())
        throw std::runtime_error("failed to format number");
    return std::string(buf.data(), p);
}

void write_csv(std::ostream &os, const ResultTable &table)
{
    const auto cols = active_columns(has_wall_time(table));
    os << "# schema=" << schema_version << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i)
        os << (i ? "," : "") << cols[i]->name;
    os << '\n';
    for (const auto &r : table.rows) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << cols[i]->get(r);
        os << '\n';
    }
}

void write_json_lines(std::ostream &os, const ResultTable &table)
{
    const auto cols = active_columns(has_wall_time(table));
    Json header;
    header["schema"] = schema_version;
    header["columns"] = result_columns(has_wall_time(table));
    os << header.dump() << '\n';
    for (const auto &r : table.rows) {
        Json obj = Json::object();
        for (const auto *c : cols)
            obj[c->name] = json_value(*c, r);
        os << obj.dump() << '\n';
    }
}

void emit_results(const ResultTable &table, OutputFormat format, const std::filesystem::path &path)
{
    if (table.rows.empty())
        throw std::invalid_argument("refusing to emit an empty result table");
    auto write = [&](std::ostream &os) {
        if (format == OutputFormat::csv)
            write_csv(os, table);
        else
            write_json_lines(os, table);
    };
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write(out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed while writing '" + path.string() + "'");
}

ResultTable read_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line.rfind("# schema=", 0) != 0)
        throw std::runtime_error("missing schema line");
    if (line.substr(9) != schema_version)
        throw std::runtime_error("unsupported schema '" + line.substr(9) + "'");
    if (!std::getline(is, line))
        throw std::runtime_error("missing header row");
    std::vector<const Column *> cols;
    for (const auto &name : split_csv(line))
        cols.push_back(&column_named(name));
    ResultTable t;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto fields = split_csv(line);
        if (fields.size() != cols.size())
            throw std::runtime_error("row has " + std::to_string(fields.size()) + " fields, expected "
                                     + std::to_string(cols.size()));
        Row r;
        for (std::size_t i = 0; i < cols.size(); ++i)
            cols[i]->set(r, fields[i]);
        t.rows.push_back(std::move(r));
    }
    return t;
}

ResultTable read_json_lines(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("missing header line");
    const Json header = Json::parse(line);
    if (header.value("schema", "") != schema_version)
        throw std::runtime_error("unsupported schema");
    ResultTable t;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const Json obj = Json::parse(line);
        Row r;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            const Column &c = column_named(it.key());
            c.set(r, json_to_field(c, it.value()));
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

} // namespace pnmimo::sim
