#include "teleopt/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "teleopt/version.hpp"

namespace teleopt {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

long parse_long(const std::string& key, const std::string& value, long lo, long hi) {
    long v;
    try {
        size_t used;
        v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an integer: " + value);
    }
    if (v < lo || v > hi)
        throw std::invalid_argument("config key '" + key + "': value " + value +
                                    " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    return v;
}

double parse_real(const std::string& key, const std::string& value, double lo, double hi) {
    double v;
    try {
        size_t used;
        v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: " + value);
    }
    if (!(v >= lo && v <= hi))
        throw std::invalid_argument("config key '" + key + "': value " + value +
                                    " outside [" + format_real(lo) + ", " + format_real(hi) +
                                    "]");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw std::invalid_argument("config key '" + key + "': not a boolean: " + value);
}

}  // namespace

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void apply_config_entry(SweepConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "noise") cfg.model = parse_noise_model(value);
    else if (key == "placement") cfg.placement = parse_placement(value);
    else if (key == "variant") cfg.variant = parse_variant(value);
    else if (key == "p_points") cfg.p_points = static_cast<int>(parse_long(key, value, 4, 100000));
    else if (key == "iterations") cfg.iterations = static_cast<int>(parse_long(key, value, 0, 100000000));
    else if (key == "sigma0") cfg.sigma0 = parse_real(key, value, 1e-12, 1e6);
    else if (key == "decay") cfg.decay = parse_real(key, value, 1e-12, 1.0);
    else if (key == "explore_prob") cfg.explore_prob = parse_real(key, value, 0.0, 0.999999);
    else if (key == "seed") cfg.seed = static_cast<uint64_t>(parse_long(key, value, 0, 0x7fffffffffffffffL));
    else if (key == "reward_alpha") cfg.reward_alpha = static_cast<int>(parse_long(key, value, 1, 100000));
    else if (key == "reward_beta") cfg.reward_beta = static_cast<int>(parse_long(key, value, 1, 100000));
    else if (key == "eval_alpha") cfg.eval_alpha = static_cast<int>(parse_long(key, value, 1, 100000));
    else if (key == "eval_beta") cfg.eval_beta = static_cast<int>(parse_long(key, value, 1, 100000));
    else if (key == "warm_start") cfg.warm_start = parse_bool(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    SweepConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value, got '" + line + "'");
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const size_t x = s.find_first_not_of(" \t");
            const size_t y = s.find_last_not_of(" \t");
            s = (x == std::string::npos) ? "" : s.substr(x, y - x + 1);
        };
        trim(key);
        trim(value);
        apply_config_entry(cfg, key, value);
    }
    return cfg;
}

void write_csv(const ScenarioResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "noise,placement,variant,p,f_baseline,f_optimized,seed,iterations";
    for (const char* name : param_names()) out << ',' << name;
    out << '\n';
    const std::string scenario = to_string(result.config.model) + ',' +
                                 to_string(result.config.placement) + ',' +
                                 to_string(result.config.variant);
    for (const PointRecord& r : result.records) {
        out << scenario << ',' << format_real(r.p) << ',' << format_real(r.f_baseline) << ','
            << format_real(r.f_optimized) << ',' << r.seed << ',' << r.iterations;
        for (double v : r.params) out << ',' << format_real(v);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_baseline_csv(const std::vector<std::pair<double, double>>& curve,
                        const std::string& path) {
    std::ofstream out = open_out(path);
    out << "p,f_baseline\n";
    for (const auto& [p, f] : curve) out << format_real(p) << ',' << format_real(f) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_compare_csv(const std::vector<CompareRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "p,f_baseline,f_optimized,f_reconstructed\n";
    for (const CompareRow& r : rows)
        out << format_real(r.p) << ',' << format_real(r.f_baseline) << ','
            << format_real(r.f_optimized) << ',' << format_real(r.f_reconstructed) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_compare_text(const std::vector<CompareRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "      p    baseline   optimized   reconstr.   opt-base   rec-base\n";
    char buf[160];
    double worst_gap = 0, best_gain = 0;
    for (const CompareRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%7.4f  %10.6f  %10.6f  %10.6f  %+9.6f  %+9.6f\n", r.p,
                      r.f_baseline, r.f_optimized, r.f_reconstructed,
                      r.f_optimized - r.f_baseline, r.f_reconstructed - r.f_baseline);
        out << buf;
        best_gain = std::max(best_gain, r.f_optimized - r.f_baseline);
        worst_gap = std::min(worst_gap, r.f_reconstructed - r.f_baseline);
    }
    std::snprintf(buf, sizeof buf,
                  "max optimized gain over baseline: %+9.6f\n"
                  "worst reconstructed deficit:      %+9.6f\n",
                  best_gain, worst_gap);
    out << buf;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_reconstruct_csv(const std::vector<ReconRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "p,f_baseline,f_reconstructed\n";
    for (const ReconRow& r : rows)
        out << format_real(r.p) << ',' << format_real(r.f_baseline) << ','
            << format_real(r.f_reconstructed) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const ScenarioResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    const SweepConfig& c = result.config;
    out << "artifact_version=" << kVersion << '\n'
        << "noise=" << to_string(c.model) << '\n'
        << "placement=" << to_string(c.placement) << '\n'
        << "variant=" << to_string(c.variant) << '\n'
        << "p_points=" << c.p_points << '\n'
        << "iterations=" << c.iterations << '\n'
        << "sigma0=" << format_real(c.sigma0) << '\n'
        << "decay=" << format_real(c.decay) << '\n'
        << "explore_prob=" << format_real(c.explore_prob) << '\n'
        << "seed=" << c.seed << '\n'
        << "reward_grid=" << c.reward_alpha << 'x' << c.reward_beta << '\n'
        << "eval_grid=" << c.eval_alpha << 'x' << c.eval_beta << '\n'
        << "warm_start=" << (c.warm_start ? "true" : "false") << '\n'
        << "duration_seconds=" << format_real(result.duration_seconds) << '\n';
    int failed = 0;
    for (const PointRecord& r : result.records)
        if (r.failed) {
            out << "failed_p=" << format_real(r.p) << '\n';
            ++failed;
        }
    out << "failed_points=" << failed << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace teleopt
