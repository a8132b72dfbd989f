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

#include "pnmimo/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace pnmimo::sim {

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

double parse_double(const std::string &key, const std::string &s)
{
    double v = 0.0;
    const char *b = s.data();
    const char *e = s.data() + s.size();
    if (!s.empty() && *b == '+')
        ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw ConfigError(key, "expected a number, got '" + s + "'");
    return v;
}

template <typename Int>
Int parse_int(const std::string &key, const std::string &s)
{
    Int v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(key, "expected a non-negative integer, got '" + s + "'");
    return v;
}

std::size_t parse_m_osc(const std::string &key, const std::string &s)
{
    std::string low = s;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "m" || low == "do" || low == "distributed")
        return 0;
    if (low == "co" || low == "common")
        return 1;
    const auto v = parse_int<std::size_t>(key, s);
    if (v == 0)
        throw ConfigError(key, "must be >= 1 (use M for one oscillator per antenna)");
    return v;
}

struct Entry
{
    std::string key;
    std::string value;
    int line;
};

struct Section
{
    std::string kind;
    int line = 0;
    std::vector<Entry> entries;
};

void with_context(const std::string &source, const Entry &e, auto &&fn)
{
    try {
        fn();
    } catch (const ConfigError &err) {
        throw ConfigError(source + ":" + std::to_string(e.line) + ": " + err.field(),
                          std::string(err.what()).substr(err.field().size() + 2));
    }
}

} // namespace

void set_config_key(SystemConfig &c, const std::string &key, const std::string &value)
{
    if (key == "M")
        c.M = parse_int<std::size_t>(key, value);
    else if (key == "K")
        c.K = parse_int<std::size_t>(key, value);
    else if (key == "M_osc")
        c.M_osc = parse_m_osc(key, value);
    else if (key == "q0")
        c.q0 = parse_double(key, value);
    else if (key == "sigma_deg")
        c.sigma_deg_bs = c.sigma_deg_ue = parse_double(key, value);
    else if (key == "sigma_deg_bs")
        c.sigma_deg_bs = parse_double(key, value);
    else if (key == "sigma_deg_ue")
        c.sigma_deg_ue = parse_double(key, value);
    else if (key == "tau")
        c.tau = parse_int<std::size_t>(key, value);
    else if (key == "T_c")
        c.T_c = parse_int<std::size_t>(key, value);
    else if (key == "snr_db") {
        c.snr_db = parse_double(key, value);
        c.sigma_w2.reset();
    } else if (key == "sigma_w2")
        c.sigma_w2 = parse_double(key, value);
    else if (key == "snr_reference")
        c.snr_reference = parse_snr_reference(value);
    else if (key == "powers") {
        c.powers.clear();
        if (value != "equal")
            for (const auto &p : split_list(value))
                c.powers.push_back(parse_double(key, p));
    } else if (key == "alpha_mode")
        c.alpha_mode = parse_alpha_mode(value);
    else if (key == "alpha") {
        if (value == "optimal") {
            c.alpha_mode = AlphaMode::optimal;
        } else {
            c.alpha_mode = AlphaMode::fixed;
            c.alpha = parse_double(key, value);
        }
    } else if (key == "n_realizations")
        c.n_realizations = parse_int<std::size_t>(key, value);
    else if (key == "master_seed")
        c.master_seed = parse_int<std::uint64_t>(key, value);
    else if (key == "parallelism")
        c.parallelism = parse_int<unsigned>(key, value);
    else if (key == "condition_cap")
        c.condition_cap = parse_double(key, value);
    else
        throw ConfigError(key, "unknown key");
}

SweepPlan parse_plan(std::istream &in, const std::string &source)
{
    std::vector<Section> sections;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(source + ":" + std::to_string(line_no), "malformed section header");
            const std::string kind = trim(line.substr(1, line.size() - 2));
            if (kind != "scenario" && kind != "sweep")
                throw ConfigError(source + ":" + std::to_string(line_no), "unknown section [" + kind + "]");
            sections.push_back({kind, line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(line_no), "expected key = value");
        if (sections.empty())
            sections.push_back({"scenario", line_no, {}});
        sections.back().entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
    }

    SweepPlan plan;
    plan.name = std::filesystem::path(source).stem().string();
    SystemConfig base;
    for (const auto &sec : sections) {
        if (sec.kind != "scenario")
            continue;
        for (const auto &e : sec.entries)
            with_context(source, e, [&] {
                if (e.key == "name")
                    plan.name = e.value;
                else if (e.key == "precoders") {
                    plan.precoders.clear();
                    for (const auto &p : split_list(e.value))
                        plan.precoders.push_back(parse_precoder_kind(p));
                } else if (e.key == "rate")
                    plan.rate = rates::parse_rate_definition(e.value);
                else
                    set_config_key(base, e.key, e.value);
            });
    }

    for (const auto &sec : sections) {
        if (sec.kind != "sweep")
            continue;
        SweepSpec spec;
        spec.base = base;
        spec.name = "sweep" + std::to_string(plan.sweeps.size() + 1);
        bool have_axis = false;
        std::vector<std::string> raw_values;
        int values_line = sec.line;
        for (const auto &e : sec.entries)
            with_context(source, e, [&] {
                if (e.key == "name") {
                    if (e.value.find_first_of(",\"\n") != std::string::npos)
                        throw ConfigError("name", "must not contain commas or quotes");
                    spec.name = e.value;
                } else if (e.key == "axis") {
                    spec.axis = parse_sweep_axis(e.value);
                    have_axis = true;
                } else if (e.key == "values") {
                    raw_values = split_list(e.value);
                    values_line = e.line;
                } else
                    set_config_key(spec.base, e.key, e.value);
            });
        if (!have_axis)
            throw ConfigError(source + ":" + std::to_string(sec.line) + ": axis", "missing in [sweep]");
        const Entry ctx{"values", "", values_line};
        with_context(source, ctx, [&] {
            for (const auto &v : raw_values)
                spec.values.push_back(spec.axis == SweepAxis::m_osc ? static_cast<double>(parse_m_osc("values", v))
                                                                     : parse_double("values", v));
        });
        plan.sweeps.push_back(std::move(spec));
    }
    plan.validate();
    return plan;
}

SweepPlan load_plan(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path.string() + "'");
    return parse_plan(in, path.string());
}

} // namespace pnmimo::sim
