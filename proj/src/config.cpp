// SPDX-License-Identifier: Apache-2.0
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

#include "simuav/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace simuav {

namespace pt = boost::property_tree;

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

namespace {

// Line of `key` inside `[section]`, 0 if not found. Boost's ptree drops
// positions after parsing, so value errors recover them from the text.
std::size_t find_line(const std::string& text, const std::string& section, const std::string& key)
{
    std::istringstream in(text);
    std::string line, current;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos)
            continue;
        if (line[b] == '[') {
            auto e = line.find(']', b);
            current = line.substr(b + 1, e == std::string::npos ? std::string::npos : e - b - 1);
            continue;
        }
        if (current != section)
            continue;
        auto eq = line.find('=', b);
        if (eq == std::string::npos)
            continue;
        auto k = line.substr(b, eq - b);
        k.erase(k.find_last_not_of(" \t") + 1);
        if (k == key)
            return n;
    }
    return 0;
}

class Reader {
public:
    Reader(const pt::ptree& tree, const std::string& text) : tree_(tree), text_(text) {}

    const pt::ptree* section(const std::string& name)
    {
        auto it = tree_.find(name);
        return it == tree_.not_found() ? nullptr : &it->second;
    }

    bool has(const std::string& sec, const std::string& key)
    {
        auto s = section(sec);
        return s && s->find(key) != s->not_found();
    }

    std::string raw(const std::string& sec, const std::string& key)
    {
        used_.insert(sec + "." + key);
        return section(sec)->get<std::string>(key);
    }

    [[noreturn]] void fail(const std::string& sec, const std::string& key, const std::string& what)
    {
        std::ostringstream msg;
        msg << "config";
        if (auto line = find_line(text_, sec, key))
            msg << " line " << line;
        msg << ": [" << sec << "] " << key << ": " << what;
        throw ConfigError(msg.str());
    }

    double number(const std::string& sec, const std::string& key)
    {
        auto s = raw(sec, key);
        std::istringstream in(s);
        double v = 0.0;
        in >> v;
        if (!in || !(in >> std::ws).eof())
            fail(sec, key, "expected a number, got '" + s + "'");
        return v;
    }

    std::uint64_t integer(const std::string& sec, const std::string& key)
    {
        auto s = raw(sec, key);
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size())
            fail(sec, key, "expected a non-negative integer, got '" + s + "'");
        return v;
    }

    // "1-20", "1,3,5" or a mix such as "1,2,5-7".
    std::vector<std::uint64_t> integer_list(const std::string& sec, const std::string& key)
    {
        auto s = raw(sec, key);
        std::vector<std::uint64_t> out;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            auto dash = item.find('-');
            auto parse = [&](const std::string& t) {
                std::uint64_t v = 0;
                auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (t.empty() || ec != std::errc{} || p != t.data() + t.size())
                    fail(sec, key, "bad list item '" + item + "'");
                return v;
            };
            if (dash == std::string::npos) {
                out.push_back(parse(item));
            } else {
                auto lo = parse(item.substr(0, dash));
                auto hi = parse(item.substr(dash + 1));
                if (hi < lo)
                    fail(sec, key, "descending range '" + item + "'");
                for (auto v = lo; v <= hi; ++v)
                    out.push_back(v);
            }
        }
        if (out.empty())
            fail(sec, key, "empty list");
        return out;
    }

    std::vector<std::string> word_list(const std::string& sec, const std::string& key)
    {
        auto s = raw(sec, key);
        std::vector<std::string> out;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (!item.empty())
                out.push_back(item);
        }
        if (out.empty())
            fail(sec, key, "empty list");
        return out;
    }

    void reject_unknown()
    {
        for (const auto& [sec, body] : tree_) {
            if (body.empty() && !body.data().empty())
                throw ConfigError("config: key '" + sec + "' outside of any section");
            for (const auto& kv : body) {
                if (!used_.count(sec + "." + kv.first))
                    fail(sec, kv.first, "unknown key");
            }
        }
    }

private:
    const pt::ptree& tree_;
    const std::string& text_;
    std::set<std::string> used_;
};

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::size_t SimConfig::k_max() const
{
    auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(atoms_per_layer))));
    return k * k == atoms_per_layer ? k : 0;
}

double SimConfig::effective_atom_area() const
{
    return atom_area > 0.0 ? atom_area : 0.25 * wavelength * wavelength;
}

double SimConfig::effective_atom_spacing() const
{
    return atom_spacing > 0.0 ? atom_spacing : 0.5 * wavelength;
}

double SimConfig::effective_antenna_offset() const
{
    return antenna_offset > 0.0 ? antenna_offset : layer_spacing();
}

double SimConfig::effective_ref_gain() const
{
    if (ref_gain > 0.0)
        return ref_gain;
    const double a = wavelength / (4.0 * std::numbers::pi);
    return a * a;
}

SimConfig SimConfig::with_layers(std::size_t l) const
{
    SimConfig c = *this;
    c.layers = l;
    c.validate();
    return c;
}

void SimConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw ConfigError(std::string("invalid config: ") + what);
    };
    require(num_users >= 1, "M must be at least 1");
    require(num_uavs >= 1, "U must be at least 1");
    require(num_uavs <= num_users, "U must not exceed M");
    require(layers >= 1, "L must be at least 1");
    require(atoms_per_layer >= 1 && k_max() != 0, "K must be a perfect square");
    require(wavelength > 0.0, "wavelength must be positive");
    require(sim_thickness > 0.0, "SIM thickness must be positive");
    require(atom_area >= 0.0, "atom area must be positive");
    require(atom_spacing >= 0.0, "atom spacing must be positive");
    require(antenna_offset >= 0.0, "antenna offset must be positive");
    require(altitude > 0.0, "altitude must be positive");
    require(safety_distance > 0.0, "d_min must be positive");
    require(area_side > 0.0, "area side must be positive");
    require(tx_power > 0.0, "transmit power must be positive");
    require(noise_power > 0.0, "noise power must be positive");
    require(ref_gain >= 0.0, "reference gain must be positive");
    require(ao_tolerance >= 0.0, "AO tolerance must be non-negative");
    require(ao_max_iters >= 1, "AO iteration cap must be at least 1");
    require(phase_iters >= 1, "phase sweep count must be at least 1");
    require(sca_max_iters >= 1 && sca_inner_max_iters >= 1, "SCA iteration caps must be at least 1");
    require(sca_inner_tolerance > 0.0 && sca_position_tolerance > 0.0, "SCA tolerances must be positive");
    require(sca_slack_floor > 0.0, "SCA slack floor must be positive");
    require(rd_candidates >= 1, "RD candidate count must be at least 1");
    require(evo_population >= 4, "evolutionary population must be at least 4");
    require(evo_iters >= 1, "evolutionary iteration budget must be at least 1");
    require(!seeds.empty(), "at least one seed is required");
    require(!layer_sweep.empty(), "at least one layer count is required");
    for (auto l : layer_sweep)
        require(l >= 1, "swept L values must be at least 1");
    require(!methods.empty(), "at least one method is required");
}

std::string SimConfig::canonical() const
{
    std::ostringstream o;
    o << "num_users=" << num_users << "\nnum_uavs=" << num_uavs
      << "\narea_side=" << fmt_double(area_side) << "\naltitude=" << fmt_double(altitude)
      << "\nsafety_distance=" << fmt_double(safety_distance) << "\ntx_power=" << fmt_double(tx_power)
      << "\nnoise_power=" << fmt_double(noise_power) << "\nref_gain=" << fmt_double(effective_ref_gain())
      << "\nlayers=" << layers << "\natoms_per_layer=" << atoms_per_layer
      << "\nwavelength=" << fmt_double(wavelength) << "\nsim_thickness=" << fmt_double(sim_thickness)
      << "\natom_area=" << fmt_double(effective_atom_area())
      << "\natom_spacing=" << fmt_double(effective_atom_spacing())
      << "\nantenna_offset=" << fmt_double(antenna_offset) << "\nao_tolerance=" << fmt_double(ao_tolerance)
      << "\nao_max_iters=" << ao_max_iters << "\nphase_iters=" << phase_iters
      << "\nsca_max_iters=" << sca_max_iters << "\nsca_inner_max_iters=" << sca_inner_max_iters
      << "\nsca_inner_tolerance=" << fmt_double(sca_inner_tolerance)
      << "\nsca_position_tolerance=" << fmt_double(sca_position_tolerance)
      << "\nsca_slack_floor=" << fmt_double(sca_slack_floor) << "\nrd_candidates=" << rd_candidates
      << "\nevo_population=" << evo_population << "\nevo_iters=" << evo_iters
      << "\nrng_seed=" << rng_seed << "\n";
    return o.str();
}

std::string SimConfig::hash() const
{
    // FNV-1a, 64 bit: stable across platforms and standard library versions.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SimConfig parse_config(const std::string& text)
{
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }

    Reader r(tree, text);
    SimConfig c;

    auto opt_int = [&](const char* sec, const char* key, std::size_t& dst) {
        if (r.has(sec, key))
            dst = static_cast<std::size_t>(r.integer(sec, key));
    };
    auto opt_num = [&](const char* sec, const char* key, double& dst) {
        if (r.has(sec, key))
            dst = r.number(sec, key);
    };
    // Either a number or the word "auto" (which leaves the derived default).
    auto opt_auto = [&](const char* sec, const char* key, double& dst) {
        if (!r.has(sec, key))
            return;
        if (r.raw(sec, key) == "auto")
            dst = 0.0;
        else
            dst = r.number(sec, key);
    };
    // Mutually exclusive unit-suffixed spellings of one quantity.
    auto one_of = [&](const char* sec, std::initializer_list<const char*> keys) -> const char* {
        const char* found = nullptr;
        for (auto k : keys) {
            if (r.has(sec, k)) {
                if (found)
                    r.fail(sec, k, std::string("conflicts with ") + found);
                found = k;
            }
        }
        return found;
    };

    opt_int("network", "num_users", c.num_users);
    opt_int("network", "num_uavs", c.num_uavs);
    opt_num("network", "area_side_m", c.area_side);
    opt_num("network", "altitude_m", c.altitude);
    opt_num("network", "safety_distance_m", c.safety_distance);
    if (auto k = one_of("network", {"tx_power_mw", "tx_power_dbm", "tx_power_w"})) {
        double v = r.number("network", k);
        std::string key = k;
        c.tx_power = key == "tx_power_mw" ? v * 1e-3 : key == "tx_power_dbm" ? dbm_to_watts(v) : v;
    }
    if (auto k = one_of("network", {"noise_power_dbm", "noise_power_mw", "noise_power_w"})) {
        double v = r.number("network", k);
        std::string key = k;
        c.noise_power = key == "noise_power_dbm" ? dbm_to_watts(v) : key == "noise_power_mw" ? v * 1e-3 : v;
    }
    opt_auto("network", "ref_gain", c.ref_gain);

    opt_int("sim", "layers", c.layers);
    opt_int("sim", "atoms_per_layer", c.atoms_per_layer);
    opt_num("sim", "wavelength_m", c.wavelength);
    bool thickness_in_lambda = true;
    double thickness = 5.0;
    if (auto k = one_of("sim", {"thickness_m", "thickness_wavelengths"})) {
        thickness = r.number("sim", k);
        thickness_in_lambda = std::string(k) == "thickness_wavelengths";
    }
    c.sim_thickness = thickness_in_lambda ? thickness * c.wavelength : thickness;
    if (auto k = one_of("sim", {"atom_spacing_m", "atom_spacing_wavelengths"})) {
        double v = r.number("sim", k);
        c.atom_spacing = std::string(k) == "atom_spacing_m" ? v : v * c.wavelength;
    }
    opt_auto("sim", "atom_area_m2", c.atom_area);
    opt_auto("sim", "antenna_offset_m", c.antenna_offset);

    opt_num("solver", "ao_tolerance", c.ao_tolerance);
    opt_int("solver", "ao_max_iters", c.ao_max_iters);
    opt_int("solver", "phase_iters", c.phase_iters);
    opt_int("solver", "sca_max_iters", c.sca_max_iters);
    opt_int("solver", "sca_inner_max_iters", c.sca_inner_max_iters);
    opt_num("solver", "sca_inner_tolerance_m", c.sca_inner_tolerance);
    opt_num("solver", "sca_position_tolerance_m", c.sca_position_tolerance);
    opt_num("solver", "sca_slack_floor_m2", c.sca_slack_floor);
    opt_int("solver", "rd_candidates", c.rd_candidates);
    opt_int("solver", "evo_population", c.evo_population);
    opt_int("solver", "evo_iters", c.evo_iters);

    if (r.has("experiment", "seed"))
        c.rng_seed = r.integer("experiment", "seed");
    if (r.has("experiment", "seeds"))
        c.seeds = r.integer_list("experiment", "seeds");
    if (r.has("experiment", "layers")) {
        c.layer_sweep.clear();
        for (auto v : r.integer_list("experiment", "layers"))
            c.layer_sweep.push_back(static_cast<std::size_t>(v));
    } else {
        c.layer_sweep = {c.layers};
    }
    if (r.has("experiment", "methods"))
        c.methods = r.word_list("experiment", "methods");

    r.reject_unknown();
    c.validate();
    return c;
}

SimConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace simuav
