#include "lamfrac/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace lamfrac {

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid config:";
    for (const auto& s : v) {
        out += "\n  ";
        out += s;
    }
    return out;
}

std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

struct Parser {
    std::vector<std::string> issues;

    void fail(int line, const std::string& key, const std::string& what) {
        issues.push_back("line " + std::to_string(line) + ", " + key + ": " + what);
    }

    bool to_double(int line, const std::string& key, const std::string& v, double& out) {
        try {
            std::size_t pos = 0;
            out = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing characters");
            return true;
        } catch (const std::exception&) {
            fail(line, key, "expected a number, got '" + v + "'");
            return false;
        }
    }

    bool to_int(int line, const std::string& key, const std::string& v, int& out) {
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || p != v.data() + v.size()) {
            fail(line, key, "expected an integer, got '" + v + "'");
            return false;
        }
        return true;
    }

    bool to_bool(int line, const std::string& key, const std::string& v, bool& out) {
        if (v == "true" || v == "1") { out = true; return true; }
        if (v == "false" || v == "0") { out = false; return true; }
        fail(line, key, "expected true/false, got '" + v + "'");
        return false;
    }

    template <typename T, typename Conv>
    void to_list(int line, const std::string& key, const std::string& v, std::vector<T>& out,
                 Conv conv) {
        out.clear();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            T t{};
            if (!(this->*conv)(line, key, item, t)) return;
            out.push_back(t);
        }
    }
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> list)
    : std::runtime_error(join(list)), issues(std::move(list)) {}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    cfg.raw_text = text;
    Parser p;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    bool probes_given = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (auto pos = s.find('#'); pos != std::string::npos) s.resize(pos);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                p.fail(line, s, "malformed section header");
                continue;
            }
            section = trim(s.substr(1, s.size() - 2));
            if (section != "laminate" && section != "mesh" && section != "load" &&
                section != "run")
                p.fail(line, section, "unknown section");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            p.fail(line, s, "expected key = value");
            continue;
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (section == "laminate") {
            if (key == "length") p.to_double(line, qual, val, cfg.spec.length);
            else if (key == "height") p.to_double(line, qual, val, cfg.spec.height);
            else if (key == "n_layers") p.to_int(line, qual, val, cfg.spec.n_layers);
            else if (key == "lambda") p.to_double(line, qual, val, cfg.spec.lambda);
            else if (key == "orientation") {
                if (val == "vertical") cfg.spec.orientation = Orientation::Vertical;
                else if (val == "horizontal") cfg.spec.orientation = Orientation::Horizontal;
                else p.fail(line, qual, "expected vertical or horizontal");
            }
            else if (key == "mu_a1") p.to_double(line, qual, val, cfg.spec.phase_a.mu1);
            else if (key == "mu_a2") p.to_double(line, qual, val, cfg.spec.phase_a.mu2);
            else if (key == "gc_a") p.to_double(line, qual, val, cfg.spec.phase_a.gc);
            else if (key == "mu_b1") p.to_double(line, qual, val, cfg.spec.phase_b.mu1);
            else if (key == "mu_b2") p.to_double(line, qual, val, cfg.spec.phase_b.mu2);
            else if (key == "gc_b") p.to_double(line, qual, val, cfg.spec.phase_b.gc);
            else if (key == "interface_gc") {
                double g = 0;
                if (p.to_double(line, qual, val, g)) cfg.spec.interface_gc = g;
            }
            else p.fail(line, qual, "unknown key");
        } else if (section == "mesh") {
            if (key == "elems_per_layer_x") p.to_int(line, qual, val, cfg.mesh.elems_per_layer_x);
            else if (key == "elems_y") p.to_int(line, qual, val, cfg.mesh.elems_y);
            else if (key == "refine_near_crack")
                p.to_double(line, qual, val, cfg.mesh.refine_near_crack);
            else p.fail(line, qual, "unknown key");
        } else if (section == "load") {
            if (key == "profile") {
                if (val == "linear" || val == "triangle" || val == "table")
                    cfg.load_profile = val;
                else p.fail(line, qual, "expected linear, triangle or table");
            }
            else if (key == "t_end") p.to_double(line, qual, val, cfg.t_end);
            else if (key == "steps") p.to_int(line, qual, val, cfg.steps);
            else if (key == "peak") p.to_double(line, qual, val, cfg.peak);
            else if (key == "table_t")
                p.to_list(line, qual, val, cfg.table_t, &Parser::to_double);
            else if (key == "table_f")
                p.to_list(line, qual, val, cfg.table_f, &Parser::to_double);
            else p.fail(line, qual, "unknown key");
        } else if (section == "run") {
            if (key == "l0") p.to_double(line, qual, val, cfg.l0);
            else if (key == "tol") p.to_double(line, qual, val, cfg.tol);
            else if (key == "probes") {
                p.to_list(line, qual, val, cfg.probes, &Parser::to_double);
                probes_given = true;
            }
            else if (key == "n_list") p.to_list(line, qual, val, cfg.n_list, &Parser::to_int);
            else if (key == "dump_mesh") p.to_bool(line, qual, val, cfg.dump_mesh);
            else p.fail(line, qual, "unknown key");
        } else {
            p.fail(line, key, "key outside any section");
        }
    }
    (void)probes_given;

    // semantic validation, every violation reported
    if (!(cfg.spec.lambda > 0.0 && cfg.spec.lambda < 1.0))
        p.issues.push_back("laminate.lambda: lambda must lie in (0,1)");
    if (cfg.spec.n_layers < 1)
        p.issues.push_back("laminate.n_layers: must be >= 1");
    if (cfg.spec.orientation == Orientation::Horizontal && cfg.spec.n_layers % 2 != 0)
        p.issues.push_back("laminate.n_layers: horizontal orientation requires an even count");
    if (!(cfg.spec.length > 0.0)) p.issues.push_back("laminate.length: must be positive");
    if (!(cfg.spec.height > 0.0)) p.issues.push_back("laminate.height: must be positive");
    for (auto [v, name] : {std::pair{cfg.spec.phase_a.mu1, "laminate.mu_a1"},
                           {cfg.spec.phase_a.mu2, "laminate.mu_a2"},
                           {cfg.spec.phase_a.gc, "laminate.gc_a"},
                           {cfg.spec.phase_b.mu1, "laminate.mu_b1"},
                           {cfg.spec.phase_b.mu2, "laminate.mu_b2"},
                           {cfg.spec.phase_b.gc, "laminate.gc_b"}})
        if (!(v > 0.0)) p.issues.push_back(std::string(name) + ": must be positive");
    if (cfg.spec.interface_gc && !(*cfg.spec.interface_gc > 0.0))
        p.issues.push_back("laminate.interface_gc: must be positive");
    if (cfg.mesh.elems_per_layer_x < 2)
        p.issues.push_back("mesh.elems_per_layer_x: must be >= 2");
    if (cfg.mesh.elems_y < 4) p.issues.push_back("mesh.elems_y: must be >= 4");
    if (cfg.mesh.refine_near_crack < 1.0 || cfg.mesh.refine_near_crack > 4.0)
        p.issues.push_back("mesh.refine_near_crack: must lie in [1, 4]");
    if (!(cfg.t_end > 0.0)) p.issues.push_back("load.t_end: must be positive");
    if (cfg.steps < 2) p.issues.push_back("load.steps: must be >= 2");
    if (!(cfg.peak > 0.0)) p.issues.push_back("load.peak: must be positive");
    if (cfg.load_profile == "table") {
        if (cfg.table_t.size() != cfg.table_f.size() || cfg.table_t.size() < 2)
            p.issues.push_back("load.table_t/table_f: need matching lists of >= 2 samples");
        else if (!cfg.table_f.empty() && cfg.table_f.front() != 0.0)
            p.issues.push_back("load.table_f: must start from f(0) = 0");
    }
    if (cfg.l0 > 0.0 && cfg.l0 >= cfg.spec.length)
        p.issues.push_back("run.l0: must lie in (0, length)");
    if (!(cfg.tol > 0.0 && cfg.tol <= 1e-4))
        p.issues.push_back("run.tol: must lie in (0, 1e-4]");
    for (double pr : cfg.probes)
        if (!(pr > 0.0 && pr < cfg.spec.length))
            p.issues.push_back("run.probes: probe points must lie in (0, length)");
    if (cfg.n_list.empty()) p.issues.push_back("run.n_list: must not be empty");
    for (std::size_t i = 1; i < cfg.n_list.size(); ++i)
        if (cfg.n_list[i] <= cfg.n_list[i - 1])
            p.issues.push_back("run.n_list: must be strictly increasing");
    if (cfg.spec.orientation == Orientation::Horizontal)
        for (int n : cfg.n_list)
            if (n % 2 != 0)
                p.issues.push_back("run.n_list: horizontal orientation requires even entries");

    if (!p.issues.empty()) throw ConfigError(std::move(p.issues));
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError({"cannot open config file: " + path});
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

LoadProgram RunConfig::make_load() const {
    if (load_profile == "linear") return LoadProgram::linear(t_end, steps, peak);
    if (load_profile == "triangle") return LoadProgram::triangle(t_end, steps, peak);
    return LoadProgram::from_table(table_t, table_f, steps);
}

std::vector<double> RunConfig::probe_points() const {
    if (!probes.empty()) return probes;
    return {0.30 * spec.length, 0.52 * spec.length, 0.71 * spec.length};
}

} // namespace lamfrac
