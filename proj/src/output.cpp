#include "tbai/output.hpp"

#include <cstdio>
#include <sstream>

namespace tbai {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string json_ext(ExtReal v) {
    if (!v.is_finite()) return std::string("\"") + to_string(v) + "\"";
    return format_g17(v.raw());
}

std::string json_tau(const TauValue& tau) {
    return tau.unbounded ? "\"unbounded\"" : std::to_string(tau.t);
}

void emit_complexity(std::ostringstream& out, const ComplexityReport& report,
                     const std::string& indent) {
    out << "{\n";
    out << indent << "  \"nu_bar\": " << json_ext(report.nu_bar) << ",\n";
    out << indent << "  \"tau_per_source\": [";
    for (std::size_t i = 0; i < report.tau_per_source.size(); ++i) {
        if (i) out << ", ";
        out << json_tau(report.tau_per_source[i]);
    }
    out << "],\n";
    out << indent << "  \"theorem2_total\": " << json_tau(report.theorem2_total) << ",\n";
    out << indent << "  \"closed_form\": ";
    if (report.closed_form) {
        out << "{\"name\": \"" << report.closed_form->name << "\", \"value\": ";
        if (report.closed_form->unbounded) out << "\"unbounded\"";
        else out << format_g17(report.closed_form->value);
        out << "}";
    } else {
        out << "null";
    }
    out << "\n" << indent << "}";
}

void emit_instance_header(std::ostringstream& out, const ExperimentConfig& config,
                          const BatchOutput& batch) {
    out << "  \"algorithm\": \"" << algorithm_name(config.algorithm) << "\",\n";
    out << "  \"instance_kind\": \"" << preset_kind_name(config.preset.kind) << "\",\n";
    out << "  \"n_source\": " << config.env.n_arms() << ",\n";
    out << "  \"n_target\": " << static_cast<int>(batch.complexity.tau_matrix.size()) << ",\n";
    out << "  \"delta\": " << format_g17(config.delta) << ",\n";
    out << "  \"epsilon\": " << format_g17(config.epsilon) << ",\n";
    out << "  \"sigma\": " << format_g17(config.sigma) << ",\n";
    out << "  \"n_trials\": " << config.n_trials << ",\n";
    out << "  \"base_seed\": " << config.base_seed << ",\n";
}

void emit_results(std::ostringstream& out, const TrialBatchResult& s, const std::string& indent) {
    const double n = static_cast<double>(s.n_trials);
    out << "{\n";
    out << indent << "  \"error_count\": " << s.error_count << ",\n";
    out << indent << "  \"error_rate\": " << format_g17(static_cast<double>(s.error_count) / n) << ",\n";
    out << indent << "  \"good_event_violations\": " << s.good_event_violations << ",\n";
    out << indent << "  \"good_event_violation_rate\": "
        << format_g17(static_cast<double>(s.good_event_violations) / n) << ",\n";
    out << indent << "  \"bound_violation_count\": " << s.bound_violation_count << ",\n";
    out << indent << "  \"empty_dtilde_count\": " << s.empty_dtilde_count << ",\n";
    out << indent << "  \"capped_count\": " << s.capped_count << ",\n";
    out << indent << "  \"mean_total_pulls\": " << format_g17(s.mean_total_pulls) << ",\n";
    out << indent << "  \"median_total_pulls\": " << format_g17(s.median_total_pulls) << ",\n";
    out << indent << "  \"p95_total_pulls\": " << format_g17(s.p95_total_pulls) << ",\n";
    out << indent << "  \"mean_rounds\": " << format_g17(s.mean_rounds) << ",\n";
    out << indent << "  \"per_arm_pull_means\": [";
    for (std::size_t i = 0; i < s.per_arm_pull_means.size(); ++i) {
        if (i) out << ", ";
        out << format_g17(s.per_arm_pull_means[i]);
    }
    out << "]\n" << indent << "}";
}

} // namespace

std::string summary_json(const ExperimentConfig& config, const BatchOutput& batch) {
    std::ostringstream out;
    out << "{\n";
    emit_instance_header(out, config, batch);
    out << "  \"results\": ";
    emit_results(out, batch.summary, "  ");
    out << ",\n";
    out << "  \"complexity\": ";
    emit_complexity(out, batch.complexity, "  ");
    out << "\n}\n";
    return out.str();
}

std::string trials_csv(const BatchOutput& batch) {
    std::ostringstream out;
    const std::size_t n_source =
        batch.trials.empty() ? 0 : batch.trials.front().per_arm_pulls.size();
    out << "trial_index,seed,selected,correct,rounds,total_pulls";
    for (std::size_t i = 0; i < n_source; ++i) out << ",pulls_" << (i + 1);
    out << ",good_event_held,bound_held\n";
    for (const TrialRecord& rec : batch.trials) {
        out << rec.trial_index << "," << rec.seed << "," << (rec.selected + 1) << ","
            << (rec.correct ? 1 : 0) << "," << rec.rounds << "," << rec.total_pulls;
        for (std::size_t i = 0; i < n_source; ++i) out << "," << rec.per_arm_pulls[i];
        out << "," << (rec.good_event_held ? 1 : 0) << "," << (rec.bound_held ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string bounds_json(const ExperimentConfig& config, const ComplexityReport& report) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"instance_kind\": \"" << preset_kind_name(config.preset.kind) << "\",\n";
    out << "  \"n_source\": " << config.env.n_arms() << ",\n";
    out << "  \"delta\": " << format_g17(config.delta) << ",\n";
    out << "  \"epsilon\": " << format_g17(config.epsilon) << ",\n";
    out << "  \"sigma\": " << format_g17(config.sigma) << ",\n";
    out << "  \"complexity\": ";
    emit_complexity(out, report, "  ");
    out << ",\n";
    out << "  \"tau_matrix\": [\n";
    for (std::size_t a = 0; a < report.tau_matrix.size(); ++a) {
        out << "    [";
        for (std::size_t i = 0; i < report.tau_matrix[a].size(); ++i) {
            if (i) out << ", ";
            out << json_tau(report.tau_matrix[a][i]);
        }
        out << "]" << (a + 1 < report.tau_matrix.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

std::string compare_json(const ExperimentConfig& config, const BatchOutput& tlucb,
                         const BatchOutput& micro) {
    std::ostringstream out;
    out << "{\n";
    emit_instance_header(out, config, tlucb);
    out << "  \"tlucb\": ";
    emit_results(out, tlucb.summary, "  ");
    out << ",\n";
    out << "  \"microlucb\": ";
    emit_results(out, micro.summary, "  ");
    out << ",\n";
    out << "  \"complexity\": ";
    emit_complexity(out, tlucb.complexity, "  ");
    out << "\n}\n";
    return out.str();
}

std::string compare_table(const BatchOutput& tlucb, const BatchOutput& micro) {
    std::ostringstream out;
    auto row = [&](const char* name, const TrialBatchResult& s) {
        const double n = static_cast<double>(s.n_trials);
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%-10s %8lld %10.4f %12.1f %12.1f %12.1f %10lld %8lld\n",
                      name, static_cast<long long>(s.n_trials),
                      static_cast<double>(s.error_count) / n, s.mean_total_pulls,
                      s.median_total_pulls, s.p95_total_pulls,
                      static_cast<long long>(s.empty_dtilde_count),
                      static_cast<long long>(s.capped_count));
        out << buf;
    };
    out << "algorithm    trials error_rate   mean_pulls median_pulls    p95_pulls emptyDt   capped\n";
    row("tlucb", tlucb.summary);
    row("microlucb", micro.summary);
    return out.str();
}

} // namespace tbai
