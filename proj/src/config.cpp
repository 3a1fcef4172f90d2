/*
 * Copyright 2026 The Tornado Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tornado/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace tornado {

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message
                                  : "config: " + message),
      key_(std::move(key)),
      line_(line) {}

namespace {

struct Entry {
    std::string value;
    int line;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::map<std::string, Section> split_sections(std::string_view text) {
    static const std::set<std::string> known{"grid", "init", "time", "output"};
    std::map<std::string, Section> sections;
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(std::string(line), line_no, "malformed section header");
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known.contains(current)) throw ConfigError(current, line_no, "unknown section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(std::string(line), line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (current.empty()) throw ConfigError(key, line_no, "key '" + key + "' outside of any section");
        if (key.empty()) throw ConfigError(key, line_no, "empty key");
        auto [it, inserted] = sections[current].emplace(key, Entry{value, line_no});
        if (!inserted) throw ConfigError(key, line_no, "duplicate key '" + key + "' in [" + current + "]");
    }
    return sections;
}

class Reader {
  public:
    Reader(std::string name, Section section) : name_(std::move(name)), section_(std::move(section)) {}

    bool has(const std::string& key) const { return section_.contains(key); }

    const Entry& require(const std::string& key) {
        auto it = section_.find(key);
        if (it == section_.end()) throw ConfigError(key, 0, "missing key '" + key + "' in [" + name_ + "]");
        used_.insert(key);
        return it->second;
    }

    double real(const std::string& key) {
        const Entry& e = require(key);
        return parse_real(key, e);
    }
    double real(const std::string& key, double fallback) { return has(key) ? real(key) : fallback; }

    long long integer(const std::string& key) {
        const Entry& e = require(key);
        long long v = 0;
        auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc{} || p != e.value.data() + e.value.size()) {
            throw ConfigError(key, e.line, "'" + key + "' must be an integer, got '" + e.value + "'");
        }
        return v;
    }
    long long integer(const std::string& key, long long fallback) { return has(key) ? integer(key) : fallback; }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const Entry& e = require(key);
        if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
        if (e.value == "false" || e.value == "no" || e.value == "0") return false;
        throw ConfigError(key, e.line, "'" + key + "' must be true or false, got '" + e.value + "'");
    }

    std::string text(const std::string& key, const std::string& fallback) {
        return has(key) ? require(key).value : fallback;
    }

    std::vector<double> reals(const std::string& key) {
        const Entry& e = require(key);
        std::vector<double> out;
        std::istringstream in(e.value);
        std::string token;
        while (in >> token) out.push_back(parse_real(key, Entry{token, e.line}));
        return out;
    }

    /// Keys of the section starting with `prefix`.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
        std::vector<std::string> out;
        for (const auto& [k, e] : section_) {
            if (k.rfind(prefix, 0) == 0) out.push_back(k);
        }
        return out;
    }

    int line_of(const std::string& key) const {
        auto it = section_.find(key);
        return it == section_.end() ? 0 : it->second.line;
    }

    void reject_unused() const {
        for (const auto& [k, e] : section_) {
            if (!used_.contains(k)) throw ConfigError(k, e.line, "unknown key '" + k + "' in [" + name_ + "]");
        }
    }

  private:
    static double parse_real(const std::string& key, const Entry& e) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc{} || p != e.value.data() + e.value.size() || !std::isfinite(v)) {
            throw ConfigError(key, e.line, "'" + key + "' must be a finite number, got '" + e.value + "'");
        }
        return v;
    }

    std::string name_;
    Section section_;
    std::set<std::string> used_;
};

std::size_t positive_count(Reader& r, const std::string& key) {
    const long long n = r.integer(key);
    if (n < 2) throw ConfigError(key, r.line_of(key), "'" + key + "' must be at least 2");
    return static_cast<std::size_t>(n);
}

double positive_real(Reader& r, const std::string& key) {
    const double v = r.real(key);
    if (!(v > 0.0)) throw ConfigError(key, r.line_of(key), "'" + key + "' must be positive");
    return v;
}

GridSpec parse_grid(Reader& r) {
    const std::size_t nx = positive_count(r, "nx");
    const std::size_t ny = positive_count(r, "ny");
    const std::size_t nz = positive_count(r, "nz");
    const double h = positive_real(r, "h");
    const double x_min = r.real("x_min", -h * static_cast<double>(nx / 2));
    const double y_min = r.real("y_min", -h * static_cast<double>(ny / 2));
    const double z_min = r.real("z_min", 1.0);
    return GridSpec::aligned(nx, ny, nz, h, {x_min, y_min, z_min});
}

HermiteInitSpec parse_init(Reader& r) {
    HermiteInitSpec spec;
    spec.R = positive_real(r, "R");
    const long long D = r.integer("D");
    if (D < 1) throw ConfigError("D", r.line_of("D"), "'D' must be at least 1");
    spec.A = r.real("A", 1.0);
    spec.normalize_M0 = r.boolean("normalize", true);
    spec.project = r.boolean("project", true);
    const long long seed = r.integer("seed", 0);
    if (seed < 0) throw ConfigError("seed", r.line_of("seed"), "'seed' must be non-negative");
    spec.seed = static_cast<std::uint64_t>(seed);

    const std::string convention = r.text("hermite", "probabilists");
    if (convention == "probabilists") {
        spec.convention = HermiteConvention::probabilists;
    } else if (convention == "physicists") {
        spec.convention = HermiteConvention::physicists;
    } else {
        throw ConfigError("hermite", r.line_of("hermite"), "'hermite' must be probabilists or physicists");
    }

    const auto table_keys = r.keys_with_prefix("lambda.");
    if (r.has("lambda")) {
        const Entry& e = r.require("lambda");
        if (e.value != "random") throw ConfigError("lambda", e.line, "'lambda' accepts only the value 'random'");
        if (!table_keys.empty()) {
            throw ConfigError("lambda", e.line, "'lambda = random' cannot be combined with an explicit table");
        }
        spec.lambda = random_lambda(static_cast<int>(D), spec.seed);
        return spec;
    }
    if (table_keys.empty()) {
        throw ConfigError("lambda", 0, "missing key 'lambda' in [init]: give lambda.<axis>.<component> rows or 'lambda = random'");
    }
    spec.lambda = LambdaTable(static_cast<int>(D));
    for (int axis = 1; axis <= 3; ++axis) {
        for (int comp = 1; comp <= 3; ++comp) {
            const std::string key = "lambda." + std::to_string(axis) + "." + std::to_string(comp);
            if (!r.has(key)) throw ConfigError(key, 0, "missing key '" + key + "' in [init]");
            const auto row = r.reals(key);
            if (row.size() != static_cast<std::size_t>(D)) {
                throw ConfigError(key, r.line_of(key),
                                  "'" + key + "' needs D=" + std::to_string(D) + " values, got " +
                                      std::to_string(row.size()));
            }
            for (int m = 1; m <= D; ++m) spec.lambda(axis - 1, comp - 1, m) = row[static_cast<std::size_t>(m - 1)];
        }
    }
    if (spec.A != 0.0 && spec.lambda.all_zero()) {
        throw ConfigError("lambda", r.line_of("lambda.1.1"), "degenerate initial data: every lambda is zero");
    }
    return spec;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    auto sections = split_sections(text);
    for (const char* name : {"grid", "init", "time"}) {
        if (!sections.contains(name)) throw ConfigError(name, 0, std::string("missing section [") + name + "]");
    }
    Reader grid_r("grid", sections["grid"]);
    Reader init_r("init", sections["init"]);
    Reader time_r("time", sections["time"]);
    Reader out_r("output", sections["output"]);

    RunConfig cfg{parse_grid(grid_r), parse_init(init_r)};
    cfg.dt = positive_real(time_r, "dt");
    cfg.t_max = positive_real(time_r, "t_max");
    const long long every = time_r.integer("snapshot_every", 0);
    if (every < 0) throw ConfigError("snapshot_every", time_r.line_of("snapshot_every"), "'snapshot_every' must be >= 0");
    cfg.snapshot_every = static_cast<int>(every);
    cfg.blowup_threshold = time_r.real("blowup_threshold", 1e4);
    if (!(cfg.blowup_threshold > 1.0)) {
        throw ConfigError("blowup_threshold", time_r.line_of("blowup_threshold"), "'blowup_threshold' must exceed 1");
    }

    cfg.output_dir = out_r.text("dir", ".");
    const std::string method = out_r.text("method", "fast");
    if (method == "fast") {
        cfg.method = ConvolutionMethod::fast;
    } else if (method == "direct") {
        cfg.method = ConvolutionMethod::direct;
    } else {
        throw ConfigError("method", out_r.line_of("method"), "'method' must be fast or direct");
    }
    cfg.nonlinear = out_r.boolean("nonlinear", true);

    for (Reader* r : {&grid_r, &init_r, &time_r, &out_r}) r->reject_unused();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace tornado
