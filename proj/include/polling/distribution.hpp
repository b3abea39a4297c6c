#pragma once

#include <cmath>
#include <random>
#include <string>

#include "polling/error.hpp"

namespace polling {

// Nonnegative service / switch-over time distribution. Every family carries
// exact first and second moments; the concrete families additionally have a
// closed-form LST and exact sampling. "Moments" is a moments-only
// specification: MVA works, transforms and simulation do not.
class Dist {
public:
    enum class Family { Exponential, Deterministic, Erlang, TwoPoint, Moments };

    Dist() : Dist(Family::Deterministic, 0.0) {}

    // Erlang takes the shape k; mean is the full mean (rate = k/mean).
    static Dist exponential(double mean) { return Dist(Family::Exponential, mean); }
    static Dist deterministic(double value) { return Dist(Family::Deterministic, value); }
    static Dist erlang(int shape, double mean) { return Dist(Family::Erlang, mean, shape); }

    // Two-point fit on {0, v} matching the given first two moments:
    // v = m2/m1, P(v) = m1^2/m2. Exact LST and sampling.
    static Dist two_point(double mean, double second_moment) {
        Dist d(Family::TwoPoint, mean);
        if (mean <= 0.0) fail_invalid("two_point requires mean > 0");
        if (second_moment < mean * mean)
            fail_invalid("two_point requires second_moment >= mean^2");
        d.m2_ = second_moment;
        d.atom_ = second_moment / mean;
        d.atom_p_ = mean * mean / second_moment;
        return d;
    }

    static Dist from_moments(double mean, double second_moment) {
        Dist d(Family::Moments, mean);
        if (second_moment < mean * mean)
            fail_invalid("second moment below mean^2");
        d.m2_ = second_moment;
        return d;
    }

    static Dist from_family(const std::string& family, double mean, int shape) {
        if (family == "exponential") return exponential(mean);
        if (family == "deterministic") return deterministic(mean);
        if (family == "erlang") {
            if (shape < 1) fail_invalid("erlang shape must be >= 1");
            return erlang(shape, mean);
        }
        fail_invalid("unknown distribution family: " + family);
    }

    Family family() const { return family_; }
    double mean() const { return mean_; }
    double second_moment() const { return m2_; }

    // E(X^2) / 2E(X); the equilibrium (residual / past) mean. Zero for a
    // degenerate zero distribution.
    double residual_mean() const { return mean_ > 0.0 ? m2_ / (2.0 * mean_) : 0.0; }

    bool has_lst() const { return family_ != Family::Moments; }
    bool has_sampling() const { return family_ != Family::Moments; }

    // E[e^{-w X}] at real w. Negative w is allowed for the closed-form
    // families as long as the transform converges (used by one-sided
    // difference checks); exponential requires w > -rate.
    double lst(double w) const {
        switch (family_) {
            case Family::Exponential: {
                double rate = 1.0 / mean_;
                if (w <= -rate) fail_invalid("exponential LST argument out of range");
                return rate / (rate + w);
            }
            case Family::Deterministic:
                return std::exp(-w * mean_);
            case Family::Erlang: {
                double rate = shape_ / mean_;
                if (w <= -rate) fail_invalid("erlang LST argument out of range");
                return std::pow(rate / (rate + w), shape_);
            }
            case Family::TwoPoint:
                return (1.0 - atom_p_) + atom_p_ * std::exp(-w * atom_);
            case Family::Moments:
                fail_invalid("moments-only distribution has no LST");
        }
        return 0.0;  // unreachable
    }

    double sample(std::mt19937_64& rng) const {
        switch (family_) {
            case Family::Exponential:
                return std::exponential_distribution<double>(1.0 / mean_)(rng);
            case Family::Deterministic:
                return mean_;
            case Family::Erlang: {
                std::exponential_distribution<double> e(shape_ / mean_);
                double total = 0.0;
                for (int i = 0; i < shape_; ++i) total += e(rng);
                return total;
            }
            case Family::TwoPoint: {
                std::uniform_real_distribution<double> u(0.0, 1.0);
                return u(rng) < atom_p_ ? atom_ : 0.0;
            }
            case Family::Moments:
                fail_invalid("moments-only distribution cannot be sampled");
        }
        return 0.0;  // unreachable
    }

    std::string family_name() const {
        switch (family_) {
            case Family::Exponential: return "exponential";
            case Family::Deterministic: return "deterministic";
            case Family::Erlang: return "erlang";
            case Family::TwoPoint: return "two_point";
            case Family::Moments: return "moments";
        }
        return "?";
    }

private:
    Dist(Family f, double mean, int shape = 1) : family_(f), mean_(mean), shape_(shape) {
        if (mean < 0.0) fail_invalid("distribution mean must be nonnegative");
        if (mean == 0.0 && f != Family::Deterministic)
            fail_invalid("zero mean is only allowed as deterministic 0");
        switch (f) {
            case Family::Exponential: m2_ = 2.0 * mean * mean; break;
            case Family::Deterministic: m2_ = mean * mean; break;
            case Family::Erlang: m2_ = mean * mean * (shape + 1.0) / shape; break;
            default: m2_ = mean * mean; break;  // overwritten by the named ctors
        }
    }

    Family family_;
    double mean_;
    double m2_ = 0.0;
    int shape_ = 1;
    double atom_ = 0.0;    // two-point: positive atom location
    double atom_p_ = 0.0;  // two-point: probability of the positive atom
};

}  // namespace polling
