#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "polling/cyclic.hpp"
#include "polling/error.hpp"

namespace polling {

// Finite joint batch-size distribution: support points k (one count per
// queue) with probabilities p(k). Precomputes the moments and the
// completion-set quantities shared by every analysis: starting service at
// queue s, the completion set (s, e) holds the batches whose last-served
// member sits in queue e.
class BatchSupport {
public:
    struct Entry {
        std::vector<int> k;
        double p;
    };

    static constexpr std::size_t kMaxEntries = 100000;

    BatchSupport() = default;

    BatchSupport(int n, std::vector<Entry> entries) : n_(n), entries_(std::move(entries)) {
        if (n_ < 1) fail_invalid("batch support needs at least one queue");
        if (entries_.empty()) fail_invalid("batch support is empty");
        if (entries_.size() > kMaxEntries) fail_invalid("batch support too large");
        double total = 0.0;
        for (const Entry& e : entries_) {
            if (static_cast<int>(e.k.size()) != n_)
                fail_invalid("batch vector length does not match queue count");
            if (e.p < 0.0) fail_invalid("negative batch probability");
            bool any = false;
            for (int c : e.k) {
                if (c < 0) fail_invalid("negative batch component");
                if (c > 0) any = true;
            }
            if (!any) fail_invalid("batch support contains the empty batch");
            total += e.p;
        }
        if (std::abs(total - 1.0) > 1e-12)
            fail_invalid("batch probabilities do not sum to 1");
        precompute();
    }

    int queues() const { return n_; }
    const std::vector<Entry>& entries() const { return entries_; }

    double mean(int i) const { return ek_[i]; }
    // E(K_i K_j), the plain joint moment.
    double joint_moment(int i, int j) const { return ekk_[i * n_ + j]; }
    // E(K_{ii}) = E(K_i^2) - E(K_i); the expected number of same-batch
    // customers sharing queue i with a tagged one.
    double same_queue_pairs(int i) const { return ekk_[i * n_ + i] - ek_[i]; }

    // Last queue of batch k to be served when service starts at queue s.
    int completion_end(int start, const std::vector<int>& k) const {
        for (int d = n_ - 1; d >= 0; --d) {
            if (k[cyc(start + d, n_)] > 0) return cyc(start + d, n_);
        }
        fail_invalid("empty batch has no completion queue");
    }

    // P(completion set (start, end)); rows sum to 1 over end.
    double completion_probability(int start, int end) const {
        return comp_prob_[start * n_ + end];
    }

    // E(K_l | completion set (start, end)).
    double conditional_mean(int l, int start, int end) const {
        if (comp_prob_[start * n_ + end] <= 0.0)
            fail_invalid("conditioning on a zero-probability completion set");
        return cond_mean_[(start * n_ + end) * n_ + l];
    }

    double pgf(const std::vector<double>& z) const {
        double total = 0.0;
        for (const Entry& e : entries_) total += e.p * power_product(z, e.k);
        return total;
    }

    // PGF of the marginal K_i at scalar x.
    double marginal_pgf(int i, double x) const {
        double total = 0.0;
        for (const Entry& e : entries_) total += e.p * ipow(x, e.k[i]);
        return total;
    }

    // Conditional PGF over the completion set (start, end); only the
    // coordinates on the cyclic span start..end carry mass.
    double conditional_pgf(const std::vector<double>& z, int start, int end) const {
        double prob = comp_prob_[start * n_ + end];
        if (prob <= 0.0)
            fail_invalid("conditioning on a zero-probability completion set");
        double total = 0.0;
        for (const Entry& e : entries_) {
            if (completion_end(start, e.k) != end) continue;
            total += e.p * power_product(z, e.k);
        }
        return total / prob;
    }

private:
    static double ipow(double x, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= x;
        return r;
    }

    double power_product(const std::vector<double>& z, const std::vector<int>& k) const {
        double r = 1.0;
        for (int l = 0; l < n_; ++l) r *= ipow(z[l], k[l]);
        return r;
    }

    void precompute() {
        ek_.assign(n_, 0.0);
        ekk_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
        comp_prob_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
        cond_mean_.assign(static_cast<std::size_t>(n_) * n_ * n_, 0.0);
        for (const Entry& e : entries_) {
            for (int i = 0; i < n_; ++i) {
                ek_[i] += e.p * e.k[i];
                for (int j = 0; j < n_; ++j)
                    ekk_[i * n_ + j] += e.p * e.k[i] * e.k[j];
            }
            for (int s = 0; s < n_; ++s) {
                int end = completion_end(s, e.k);
                comp_prob_[s * n_ + end] += e.p;
                for (int l = 0; l < n_; ++l)
                    cond_mean_[(s * n_ + end) * n_ + l] += e.p * e.k[l];
            }
        }
        for (int s = 0; s < n_; ++s) {
            for (int end = 0; end < n_; ++end) {
                double prob = comp_prob_[s * n_ + end];
                if (prob <= 0.0) continue;
                for (int l = 0; l < n_; ++l)
                    cond_mean_[(s * n_ + end) * n_ + l] /= prob;
            }
        }
    }

    int n_ = 0;
    std::vector<Entry> entries_;
    std::vector<double> ek_;
    std::vector<double> ekk_;
    std::vector<double> comp_prob_;
    std::vector<double> cond_mean_;
};

}  // namespace polling
