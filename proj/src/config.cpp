#include "tbai/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tbai {

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct RawEntry {
    std::string key;
    std::string value;
    int line;
};

using RawSections = std::vector<std::pair<std::string, std::vector<RawEntry>>>;

RawSections tokenize(const std::string& text) {
    RawSections sections;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string current;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError({"line " + std::to_string(lineno) + ": unterminated section header"});
            current = trim(std::string_view(t).substr(1, t.size() - 2));
            sections.emplace_back(current, std::vector<RawEntry>{});
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError({"line " + std::to_string(lineno) + ": expected key = value"});
        if (current.empty()) throw ConfigError({"line " + std::to_string(lineno) + ": entry before any [section]"});
        sections.back().second.push_back(
            RawEntry{trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)), lineno});
    }
    return sections;
}

class Builder {
public:
    explicit Builder(const RawSections& sections) : sections_(sections) {}

    ExperimentConfig build() {
        parse_experiment();
        parse_source();
        parse_instance();
        parse_microlucb();
        parse_output();
        check_unknown_sections();
        cross_validate();
        if (!violations_.empty()) throw ConfigError(violations_);
        return cfg_;
    }

private:
    const RawSections& sections_;
    ExperimentConfig cfg_;
    std::vector<std::string> violations_;
    std::string instance_kind_ = "bai";

    void fail(const std::string& field, const std::string& message) {
        violations_.push_back(field + ": " + message);
    }

    const std::vector<RawEntry>* section(const std::string& name) const {
        for (const auto& [sec, entries] : sections_) {
            if (sec == name) return &entries;
        }
        return nullptr;
    }

    std::vector<std::string> values_of(const std::vector<RawEntry>& entries, const std::string& key) {
        std::vector<std::string> out;
        for (const auto& e : entries) {
            if (e.key == key) out.push_back(e.value);
        }
        return out;
    }

    bool single(const std::vector<RawEntry>* entries, const std::string& section_name,
                const std::string& key, std::string& out) {
        if (!entries) return false;
        auto vals = values_of(*entries, key);
        if (vals.empty()) return false;
        if (vals.size() > 1) fail(section_name + "." + key, "given more than once");
        out = vals.front();
        return true;
    }

    bool parse_double_field(const std::string& field, const std::string& text, double& out,
                            bool finite_required = true) {
        try {
            ExtReal v = parse_ext_real(text);
            if (finite_required && !v.is_finite()) {
                fail(field, "must be finite");
                return false;
            }
            out = v.raw();
            return true;
        } catch (const std::exception&) {
            fail(field, "not a number: '" + text + "'");
            return false;
        }
    }

    bool parse_int_field(const std::string& field, const std::string& text, std::int64_t& out) {
        try {
            std::size_t used = 0;
            out = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
            return true;
        } catch (const std::exception&) {
            fail(field, "not an integer: '" + text + "'");
            return false;
        }
    }

    void parse_experiment() {
        const auto* sec = section("experiment");
        if (!sec) {
            fail("experiment", "section missing");
            return;
        }
        std::string v;
        if (single(sec, "experiment", "algorithm", v)) {
            if (v == "tlucb") cfg_.algorithm = Algorithm::TLucb;
            else if (v == "microlucb") cfg_.algorithm = Algorithm::MicroLucb;
            else fail("experiment.algorithm", "must be tlucb or microlucb, got '" + v + "'");
        }
        if (single(sec, "experiment", "delta", v)) {
            if (parse_double_field("experiment.delta", v, cfg_.delta) &&
                !(cfg_.delta > 0.0 && cfg_.delta < 1.0)) {
                fail("experiment.delta", "must be in (0,1)");
            }
        } else {
            fail("experiment.delta", "required");
        }
        if (single(sec, "experiment", "epsilon", v)) {
            if (parse_double_field("experiment.epsilon", v, cfg_.epsilon) && !(cfg_.epsilon >= 0.0)) {
                fail("experiment.epsilon", "must be >= 0");
            }
        }
        if (single(sec, "experiment", "sigma", v)) {
            if (parse_double_field("experiment.sigma", v, cfg_.sigma) && !(cfg_.sigma > 0.0)) {
                fail("experiment.sigma", "must be positive");
            }
        }
        std::int64_t iv = 0;
        if (single(sec, "experiment", "n_trials", v) && parse_int_field("experiment.n_trials", v, iv)) {
            if (iv < 1) fail("experiment.n_trials", "must be >= 1");
            else cfg_.n_trials = iv;
        }
        if (single(sec, "experiment", "base_seed", v)) {
            try {
                std::size_t used = 0;
                cfg_.base_seed = std::stoull(v, &used);
                if (used != v.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                fail("experiment.base_seed", "not an unsigned integer: '" + v + "'");
            }
        }
        if (single(sec, "experiment", "max_rounds", v) && parse_int_field("experiment.max_rounds", v, iv)) {
            if (iv < 1) fail("experiment.max_rounds", "must be >= 1");
            else cfg_.max_rounds = iv;
        }
        if (single(sec, "experiment", "parallelism", v) && parse_int_field("experiment.parallelism", v, iv)) {
            if (iv < 1) fail("experiment.parallelism", "must be >= 1");
            else cfg_.parallelism = static_cast<int>(iv);
        }
        for (const auto& e : *sec) {
            static const char* known[] = {"algorithm", "delta",      "epsilon",    "sigma",
                                          "n_trials",  "base_seed",  "max_rounds", "parallelism"};
            bool ok = false;
            for (const char* k : known) ok = ok || e.key == k;
            if (!ok) fail("experiment." + e.key, "unknown key");
        }
    }

    void parse_source() {
        const auto* sec = section("source");
        if (!sec) {
            fail("source", "section missing (need at least one arm)");
            return;
        }
        int index = 0;
        for (const auto& e : *sec) {
            ++index;
            std::string field = "source.arm[" + std::to_string(index) + "]";
            if (e.key != "arm") {
                fail("source." + e.key, "unknown key (expected repeated 'arm')");
                continue;
            }
            parse_arm(field, e.value);
        }
        if (cfg_.env.arms.empty()) fail("source", "no arms declared");
    }

    void parse_arm(const std::string& field, const std::string& text) {
        auto tokens = split_ws(text);
        if (tokens.empty()) {
            fail(field, "empty arm spec");
            return;
        }
        std::string kind = tokens.front();
        double mean = 0.0, sd = 0.0, p = 0.0, lo = 0.0, hi = 0.0;
        bool has_mean = false, has_sd = false, has_p = false, has_lo = false, has_hi = false;
        RealSet set;
        bool has_set = false;
        for (std::size_t k = 1; k < tokens.size(); ++k) {
            auto eq = tokens[k].find('=');
            if (eq == std::string::npos) {
                fail(field, "expected name=value, got '" + tokens[k] + "'");
                return;
            }
            std::string name = tokens[k].substr(0, eq);
            std::string val = tokens[k].substr(eq + 1);
            if (name == "set") {
                try {
                    set = RealSet::parse(val);
                    has_set = true;
                } catch (const std::exception& ex) {
                    fail(field + ".set", ex.what());
                }
                continue;
            }
            double num = 0.0;
            if (!parse_double_field(field + "." + name, val, num)) return;
            if (name == "mean") { mean = num; has_mean = true; }
            else if (name == "sd") { sd = num; has_sd = true; }
            else if (name == "p") { p = num; has_p = true; }
            else if (name == "lo") { lo = num; has_lo = true; }
            else if (name == "hi") { hi = num; has_hi = true; }
            else fail(field + "." + name, "unknown attribute");
        }
        try {
            if (kind == "gaussian") {
                if (!has_mean || !has_sd) { fail(field, "gaussian needs mean= and sd="); return; }
                cfg_.env.arms.push_back(DistributionSpec::gaussian(mean, sd));
            } else if (kind == "bernoulli") {
                if (!has_p) { fail(field, "bernoulli needs p="); return; }
                cfg_.env.arms.push_back(DistributionSpec::bernoulli(p));
            } else if (kind == "uniform") {
                if (!has_lo || !has_hi) { fail(field, "uniform needs lo= and hi="); return; }
                cfg_.env.arms.push_back(DistributionSpec::uniform(lo, hi));
            } else {
                fail(field, "unknown distribution '" + kind + "'");
                return;
            }
        } catch (const std::exception& ex) {
            fail(field, ex.what());
            return;
        }
        if (has_set) {
            cfg_.preset.property_sets.resize(cfg_.env.arms.size());
            cfg_.preset.property_sets.back() = set;
        } else if (!cfg_.preset.property_sets.empty()) {
            cfg_.preset.property_sets.resize(cfg_.env.arms.size());
        }
    }

    std::vector<std::vector<int>> parse_subsets(const std::string& field, const std::string& text) {
        std::vector<std::vector<int>> out;
        std::size_t pos = 0;
        while (pos < text.size()) {
            while (pos < text.size() && (text[pos] == ',' || std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
            if (pos >= text.size()) break;
            if (text[pos] != '{') {
                fail(field, "expected '{' in subset list");
                return out;
            }
            auto close = text.find('}', pos);
            if (close == std::string::npos) {
                fail(field, "unterminated subset");
                return out;
            }
            std::string inner = text.substr(pos + 1, close - pos - 1);
            std::vector<int> subset;
            std::istringstream in(inner);
            std::string tok;
            while (std::getline(in, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) continue;
                std::int64_t idx = 0;
                if (!parse_int_field(field, tok, idx)) return out;
                subset.push_back(static_cast<int>(idx) - 1); // 1-based in configs
            }
            out.push_back(std::move(subset));
            pos = close + 1;
        }
        return out;
    }

    void parse_instance() {
        const auto* sec = section("instance");
        if (!sec) {
            fail("instance", "section missing");
            return;
        }
        std::string v;
        if (!single(sec, "instance", "kind", v)) {
            fail("instance.kind", "required");
            return;
        }
        instance_kind_ = v;
        cfg_.preset.n_source = cfg_.env.n_arms();

        if (v == "bai") cfg_.preset.kind = PresetKind::Bai;
        else if (v == "topk") cfg_.preset.kind = PresetKind::TopK;
        else if (v == "thresholding") cfg_.preset.kind = PresetKind::Thresholding;
        else if (v == "cpe") cfg_.preset.kind = PresetKind::Cpe;
        else if (v == "property_testing") cfg_.preset.kind = PresetKind::PropertyTesting;
        else if (v == "linear") cfg_.preset.kind = PresetKind::Linear;
        else if (v == "grid") cfg_.preset.kind = PresetKind::ExplicitGrid;
        else {
            fail("instance.kind", "unknown kind '" + v + "'");
            return;
        }

        std::string s;
        std::int64_t iv = 0;
        if (single(sec, "instance", "k", s) && parse_int_field("instance.k", s, iv)) {
            cfg_.preset.topk_k = static_cast<int>(iv);
        }
        if (single(sec, "instance", "theta", s)) {
            parse_double_field("instance.theta", s, cfg_.preset.threshold_theta);
        }
        if (single(sec, "instance", "subsets", s)) {
            cfg_.preset.subsets = parse_subsets("instance.subsets", s);
        }
        if (single(sec, "instance", "targets", s) && parse_int_field("instance.targets", s, iv)) {
            cfg_.preset.grid_n_target = static_cast<int>(iv);
        }
        for (const auto& row : values_of(*sec, "row")) {
            std::vector<double> coeffs;
            for (const auto& tok : split_ws(row)) {
                double c = 0.0;
                if (!parse_double_field("instance.row", tok, c)) break;
                coeffs.push_back(c);
            }
            cfg_.preset.matrix.push_back(std::move(coeffs));
        }
        int comp_index = 0;
        for (const auto& comp : values_of(*sec, "component")) {
            ++comp_index;
            parse_component("instance.component[" + std::to_string(comp_index) + "]", comp);
        }
    }

    void parse_component(const std::string& field, const std::string& text) {
        auto tokens = split_ws(text);
        if (tokens.size() < 3) {
            fail(field, "expected: <target> <source> <kind> [args]");
            return;
        }
        GridEntry entry;
        std::int64_t a = 0, i = 0;
        if (!parse_int_field(field, tokens[0], a) || !parse_int_field(field, tokens[1], i)) return;
        entry.target = static_cast<int>(a) - 1;
        entry.source = static_cast<int>(i) - 1;
        const std::string& kind = tokens[2];
        if (kind == "zero") {
            entry.kind = GridEntry::Kind::Zero;
        } else if (kind == "linear") {
            if (tokens.size() != 4 || !parse_double_field(field, tokens[3], entry.coeff)) {
                fail(field, "linear needs one coefficient");
                return;
            }
            entry.kind = GridEntry::Kind::Linear;
        } else if (kind == "indicator") {
            if (tokens.size() != 4) {
                fail(field, "indicator needs one set, e.g. (0,inf)");
                return;
            }
            try {
                entry.set = RealSet::parse(tokens[3]);
            } catch (const std::exception& ex) {
                fail(field, ex.what());
                return;
            }
            entry.kind = GridEntry::Kind::Indicator;
        } else if (kind == "pwl") {
            if (tokens.size() < 5) {
                fail(field, "pwl needs at least two x:y knots");
                return;
            }
            for (std::size_t k = 3; k < tokens.size(); ++k) {
                auto colon = tokens[k].find(':');
                if (colon == std::string::npos) {
                    fail(field, "pwl knot must be x:y, got '" + tokens[k] + "'");
                    return;
                }
                double x = 0.0, y = 0.0;
                if (!parse_double_field(field, tokens[k].substr(0, colon), x) ||
                    !parse_double_field(field, tokens[k].substr(colon + 1), y)) {
                    return;
                }
                entry.knot_x.push_back(x);
                entry.knot_y.push_back(y);
            }
            entry.kind = GridEntry::Kind::Pwl;
        } else {
            fail(field, "unknown component kind '" + kind + "'");
            return;
        }
        cfg_.preset.grid_entries.push_back(std::move(entry));
    }

    void parse_microlucb() {
        const auto* sec = section("microlucb");
        if (!sec) return;
        std::string v;
        if (single(sec, "microlucb", "scale_shift", v)) {
            for (const auto& tok : split_ws(v)) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) {
                    fail("microlucb.scale_shift", "expected a:b pairs, got '" + tok + "'");
                    return;
                }
                ScaleShift s;
                if (!parse_double_field("microlucb.scale_shift", tok.substr(0, colon), s.a) ||
                    !parse_double_field("microlucb.scale_shift", tok.substr(colon + 1), s.b)) {
                    return;
                }
                if (!(s.a > 0.0)) fail("microlucb.scale_shift", "scale a must be positive");
                cfg_.scale_shift.push_back(s);
            }
        }
    }

    void parse_output() {
        const auto* sec = section("output");
        if (!sec) return;
        std::string v;
        if (single(sec, "output", "dir", v)) cfg_.output.dir = v;
        if (single(sec, "output", "summary", v)) cfg_.output.summary_name = v;
        if (single(sec, "output", "trials", v)) cfg_.output.trials_name = v;
    }

    void check_unknown_sections() {
        for (const auto& [name, entries] : sections_) {
            (void)entries;
            if (name != "experiment" && name != "instance" && name != "source" &&
                name != "microlucb" && name != "output") {
                fail(name, "unknown section");
            }
        }
    }

    void cross_validate() {
        const int n = cfg_.env.n_arms();
        cfg_.preset.n_source = n;
        if (n > 0) {
            for (int i = 0; i < n; ++i) {
                if (cfg_.env.arms[static_cast<std::size_t>(i)].sub_gaussian_sigma() >
                    cfg_.sigma + 1e-12) {
                    fail("source.arm[" + std::to_string(i + 1) + "]",
                         "not sub-Gaussian at experiment.sigma");
                }
            }
        }
        if (preset_requires_zero_epsilon(cfg_.preset.kind) && cfg_.epsilon != 0.0) {
            fail("experiment.epsilon",
                 std::string("must be 0 for ") + preset_kind_name(cfg_.preset.kind) + " instances");
        }
        switch (cfg_.preset.kind) {
            case PresetKind::Bai:
                if (n < 2) fail("instance", "bai needs at least two source arms");
                break;
            case PresetKind::TopK:
                if (cfg_.preset.topk_k < 1 || cfg_.preset.topk_k >= std::max(n, 1)) {
                    fail("instance.k", "need 1 <= k < number of arms");
                }
                break;
            case PresetKind::Thresholding:
                if (n > kThresholdingMaxArms) {
                    fail("instance", "thresholding supports at most " +
                                         std::to_string(kThresholdingMaxArms) + " arms");
                }
                break;
            case PresetKind::Cpe:
                if (cfg_.preset.subsets.size() < 2) {
                    fail("instance.subsets", "cpe needs at least two subsets");
                }
                break;
            case PresetKind::PropertyTesting:
                if (cfg_.preset.subsets.empty()) {
                    fail("instance.subsets", "property_testing needs membership subsets");
                }
                if (static_cast<int>(cfg_.preset.property_sets.size()) != n) {
                    fail("source", "property_testing needs set= on every arm");
                } else {
                    for (int i = 0; i < n; ++i) {
                        if (cfg_.preset.property_sets[static_cast<std::size_t>(i)].empty()) {
                            fail("source.arm[" + std::to_string(i + 1) + "].set",
                                 "property_testing needs a non-empty set on every arm");
                        }
                    }
                }
                break;
            case PresetKind::Linear:
                if (cfg_.preset.matrix.size() < 2) {
                    fail("instance.row", "linear needs at least two rows");
                }
                for (std::size_t a = 0; a < cfg_.preset.matrix.size(); ++a) {
                    if (static_cast<int>(cfg_.preset.matrix[a].size()) != n) {
                        fail("instance.row", "row " + std::to_string(a + 1) +
                                                 " length does not match the number of arms");
                    }
                }
                break;
            case PresetKind::ExplicitGrid:
                if (cfg_.preset.grid_n_target < 2) {
                    fail("instance.targets", "grid needs targets >= 2");
                }
                break;
        }
        if (cfg_.algorithm == Algorithm::MicroLucb) {
            if (static_cast<int>(cfg_.scale_shift.size()) != n) {
                fail("microlucb.scale_shift", "need one a:b pair per source arm");
            }
        }
        if (violations_.empty()) {
            // Constructor-level checks (enumeration caps, duplicate subsets,
            // malformed grids) surface through a dry build.
            try {
                (void)cfg_.preset.build();
            } catch (const std::exception& ex) {
                fail("instance", ex.what());
            }
        }
    }
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error([&violations] {
          std::string all = "config validation failed:";
          for (const auto& v : violations) all += "\n  " + v;
          return all;
      }()),
      violations_(std::move(violations)) {}

ExperimentConfig parse_config_text(const std::string& text) {
    return Builder(tokenize(text)).build();
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Instance ExperimentConfig::make_instance() const {
    Instance inst{env, preset.build(), delta, epsilon, sigma, max_rounds, scale_shift};
    return inst;
}

std::string serialize_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "algorithm = " << algorithm_name(config.algorithm) << "\n";
    out << "delta = " << g17(config.delta) << "\n";
    out << "epsilon = " << g17(config.epsilon) << "\n";
    out << "sigma = " << g17(config.sigma) << "\n";
    out << "n_trials = " << config.n_trials << "\n";
    out << "base_seed = " << config.base_seed << "\n";
    out << "max_rounds = " << config.max_rounds << "\n";
    out << "parallelism = " << config.parallelism << "\n";

    out << "\n[instance]\n";
    out << "kind = " << preset_kind_name(config.preset.kind) << "\n";
    if (config.preset.kind == PresetKind::TopK) out << "k = " << config.preset.topk_k << "\n";
    if (config.preset.kind == PresetKind::Thresholding) {
        out << "theta = " << g17(config.preset.threshold_theta) << "\n";
    }
    if (!config.preset.subsets.empty()) {
        out << "subsets = ";
        for (std::size_t a = 0; a < config.preset.subsets.size(); ++a) {
            if (a) out << ",";
            out << subset_label(config.preset.subsets[a]);
        }
        out << "\n";
    }
    for (const auto& row : config.preset.matrix) {
        out << "row =";
        for (double c : row) out << " " << g17(c);
        out << "\n";
    }
    if (config.preset.kind == PresetKind::ExplicitGrid) {
        out << "targets = " << config.preset.grid_n_target << "\n";
        for (const auto& e : config.preset.grid_entries) {
            out << "component = " << (e.target + 1) << " " << (e.source + 1) << " ";
            switch (e.kind) {
                case GridEntry::Kind::Zero: out << "zero"; break;
                case GridEntry::Kind::Linear: out << "linear " << g17(e.coeff); break;
                case GridEntry::Kind::Indicator: out << "indicator " << e.set.to_string(); break;
                case GridEntry::Kind::Pwl:
                    out << "pwl";
                    for (std::size_t k = 0; k < e.knot_x.size(); ++k) {
                        out << " " << g17(e.knot_x[k]) << ":" << g17(e.knot_y[k]);
                    }
                    break;
            }
            out << "\n";
        }
    }

    out << "\n[source]\n";
    for (std::size_t i = 0; i < config.env.arms.size(); ++i) {
        const auto& arm = config.env.arms[i];
        out << "arm = ";
        switch (arm.kind) {
            case DistributionSpec::Kind::Gaussian:
                out << "gaussian mean=" << g17(arm.a) << " sd=" << g17(arm.b);
                break;
            case DistributionSpec::Kind::Bernoulli:
                out << "bernoulli p=" << g17(arm.a);
                break;
            case DistributionSpec::Kind::Uniform:
                out << "uniform lo=" << g17(arm.a) << " hi=" << g17(arm.b);
                break;
        }
        if (i < config.preset.property_sets.size() && !config.preset.property_sets[i].empty()) {
            out << " set=" << config.preset.property_sets[i].to_string();
        }
        out << "\n";
    }

    if (!config.scale_shift.empty()) {
        out << "\n[microlucb]\n";
        out << "scale_shift =";
        for (const auto& s : config.scale_shift) out << " " << g17(s.a) << ":" << g17(s.b);
        out << "\n";
    }

    out << "\n[output]\n";
    if (!config.output.dir.empty()) out << "dir = " << config.output.dir << "\n";
    out << "summary = " << config.output.summary_name << "\n";
    out << "trials = " << config.output.trials_name << "\n";
    return out.str();
}

} // namespace tbai
