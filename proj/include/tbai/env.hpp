#pragma once

// Source-arm environments for simulation. The true means live here and are
// visible to the harness only; algorithms pull through the SourceSampler
// interface and never see the env itself.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbai/rng.hpp"

namespace tbai {

struct DistributionSpec {
    enum class Kind { Gaussian, Bernoulli, Uniform };

    Kind kind = Kind::Gaussian;
    double a = 0.0; // mean / p / lo
    double b = 1.0; // sd  / unused / hi

    static DistributionSpec gaussian(double mean, double sd) {
        if (!(sd > 0.0)) throw std::invalid_argument("gaussian: sd must be positive");
        return {Kind::Gaussian, mean, sd};
    }
    static DistributionSpec bernoulli(double p) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p outside [0,1]");
        return {Kind::Bernoulli, p, 0.0};
    }
    static DistributionSpec uniform(double lo, double hi) {
        if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
        return {Kind::Uniform, lo, hi};
    }

    double true_mean() const {
        switch (kind) {
            case Kind::Gaussian: return a;
            case Kind::Bernoulli: return a;
            case Kind::Uniform: return 0.5 * (a + b);
        }
        return 0.0;
    }

    /// Scale for which the declared family is sub-Gaussian: the sd itself,
    /// 1/2 for Bernoulli, half the range for Uniform.
    double sub_gaussian_sigma() const {
        switch (kind) {
            case Kind::Gaussian: return b;
            case Kind::Bernoulli: return 0.5;
            case Kind::Uniform: return 0.5 * (b - a);
        }
        return 0.0;
    }

    double draw(SplitMix64& stream) const {
        switch (kind) {
            case Kind::Gaussian: return gaussian_sample(stream, a, b);
            case Kind::Bernoulli: return bernoulli_sample(stream, a);
            case Kind::Uniform: return uniform_sample(stream, a, b);
        }
        return 0.0;
    }
};

struct BanditEnv {
    std::vector<DistributionSpec> arms;

    int n_arms() const { return static_cast<int>(arms.size()); }

    std::vector<double> true_means() const {
        std::vector<double> mu;
        mu.reserve(arms.size());
        for (const auto& d : arms) mu.push_back(d.true_mean());
        return mu;
    }

    /// Every arm must be sigma-sub-Gaussian for the configured sigma.
    void check_sigma(double sigma) const {
        for (std::size_t i = 0; i < arms.size(); ++i) {
            if (arms[i].sub_gaussian_sigma() > sigma + 1e-12) {
                throw std::invalid_argument("arm " + std::to_string(i + 1) +
                                            " is not sub-Gaussian at the configured sigma");
            }
        }
    }
};

/// What an algorithm sees: pull an arm, get a sample. No means leak through.
class SourceSampler {
public:
    virtual ~SourceSampler() = default;
    virtual double pull(int arm) = 0;
};

class EnvSampler final : public SourceSampler {
public:
    EnvSampler(const BanditEnv& env, SplitMix64 stream) : env_(env), stream_(stream) {}

    double pull(int arm) override {
        if (arm < 0 || arm >= env_.n_arms()) throw std::out_of_range("EnvSampler::pull");
        return env_.arms[static_cast<std::size_t>(arm)].draw(stream_);
    }

private:
    const BanditEnv& env_;
    SplitMix64 stream_;
};

} // namespace tbai
