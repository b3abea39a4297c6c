#include "polling.h"

#include <cstring>
#include <string>

#include "polling/globally_gated.hpp"
#include "polling/model.hpp"
#include "polling/mva_exhaustive.hpp"
#include "polling/mva_locally_gated.hpp"
#include "polling/simulator.hpp"
#include "polling/transforms.hpp"

struct plg_model {
    polling::PollingModel m;
};

namespace {

void put_err(char* err, size_t errlen, const std::string& what) {
    if (!err || errlen == 0) return;
    std::strncpy(err, what.c_str(), errlen - 1);
    err[errlen - 1] = '\0';
}

template <typename Fn>
int guarded(char* err, size_t errlen, Fn&& fn) {
    try {
        fn();
        return PLG_OK;
    } catch (const polling::Error& e) {
        put_err(err, errlen, e.what());
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        put_err(err, errlen, e.what());
        return PLG_EINVAL;
    }
}

polling::Discipline to_discipline(int d) {
    switch (d) {
        case PLG_EXHAUSTIVE: return polling::Discipline::Exhaustive;
        case PLG_LOCALLY_GATED: return polling::Discipline::LocallyGated;
        case PLG_GLOBALLY_GATED: return polling::Discipline::GloballyGated;
    }
    polling::fail_invalid("unknown discipline code");
}

std::vector<int> batch_vec(const plg_model* m, const int* k) {
    if (!k) polling::fail_invalid("null batch vector");
    return std::vector<int>(k, k + m->m.n);
}

}  // namespace

extern "C" {

int plg_model_from_json(const char* json_text, plg_model** out, char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!json_text || !out) polling::fail_invalid("null argument");
        *out = new plg_model{polling::model_from_json_text(json_text)};
    });
}

int plg_model_builtin(const char* id, double a, double b, double s, plg_model** out,
                      char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!id || !out) polling::fail_invalid("null argument");
        *out = new plg_model{polling::make_builtin(id, a, b, s)};
    });
}

void plg_model_free(plg_model* m) { delete m; }

int plg_model_queues(const plg_model* m, int* n) {
    if (!m || !n) return PLG_EINVAL;
    *n = m->m.n;
    return PLG_OK;
}

int plg_model_load(const plg_model* m, double* per_queue, double* total) {
    if (!m) return PLG_EINVAL;
    if (per_queue)
        for (int i = 0; i < m->m.n; ++i) per_queue[i] = m->m.rho_q[i];
    if (total) *total = m->m.rho;
    return PLG_OK;
}

int plg_model_mean_cycle(const plg_model* m, double* mean_cycle) {
    if (!m || !mean_cycle) return PLG_EINVAL;
    *mean_cycle = m->m.mean_cycle;
    return PLG_OK;
}

int plg_support_size(const plg_model* m, int* count) {
    if (!m || !count) return PLG_EINVAL;
    *count = static_cast<int>(m->m.batch.entries().size());
    return PLG_OK;
}

int plg_support_entry(const plg_model* m, int index, int* k, double* p) {
    if (!m || index < 0 || index >= static_cast<int>(m->m.batch.entries().size()))
        return PLG_EINVAL;
    const auto& e = m->m.batch.entries()[index];
    if (k)
        for (int i = 0; i < m->m.n; ++i) k[i] = e.k[i];
    if (p) *p = e.p;
    return PLG_OK;
}

int plg_solve(const plg_model* m, int discipline, double* wait, double* qlen,
              double* mean_T, char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!m) polling::fail_invalid("null model");
        std::vector<double> w, l;
        double t = 0.0;
        switch (to_discipline(discipline)) {
            case polling::Discipline::Exhaustive: {
                auto sol = polling::solve_stationary_exh(m->m);
                w = sol.wait;
                l = sol.mean_len;
                t = polling::mean_batch_sojourn_exh(m->m, sol);
                break;
            }
            case polling::Discipline::LocallyGated: {
                auto sol = polling::solve_stationary_lg(m->m);
                w = sol.wait;
                l = sol.mean_len;
                t = polling::mean_batch_sojourn_lg(m->m, sol);
                break;
            }
            case polling::Discipline::GloballyGated: {
                w = polling::wait_gg(m->m);
                l.resize(m->m.n);
                for (int i = 0; i < m->m.n; ++i) l[i] = m->m.lambda_q[i] * w[i];
                t = polling::mean_batch_sojourn_gg(m->m);
                break;
            }
        }
        if (wait)
            for (int i = 0; i < m->m.n; ++i) wait[i] = w[i];
        if (qlen)
            for (int i = 0; i < m->m.n; ++i) qlen[i] = l[i];
        if (mean_T) *mean_T = t;
    });
}

int plg_mean_batch_sojourn(const plg_model* m, int discipline, const int* k, double* out,
                           char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!m || !out) polling::fail_invalid("null argument");
        auto kv = batch_vec(m, k);
        switch (to_discipline(discipline)) {
            case polling::Discipline::Exhaustive: {
                auto sol = polling::solve_stationary_exh(m->m);
                *out = polling::mean_batch_sojourn_specific_exh(m->m, sol, kv);
                break;
            }
            case polling::Discipline::LocallyGated: {
                auto sol = polling::solve_stationary_lg(m->m);
                *out = polling::mean_batch_sojourn_specific_lg(m->m, sol, kv);
                break;
            }
            case polling::Discipline::GloballyGated:
                *out = polling::mean_batch_sojourn_specific_gg(m->m, kv);
                break;
        }
    });
}

int plg_sojourn_lst(const plg_model* m, int discipline, double w, double* out,
                    char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!m || !out) polling::fail_invalid("null argument");
        auto d = to_discipline(discipline);
        if (d == polling::Discipline::GloballyGated) {
            *out = polling::sojourn_lst_gg_arbitrary(m->m, w);
        } else {
            polling::TransformEngine eng(m->m);
            *out = eng.sojourn_lst_arbitrary(w, d);
        }
    });
}

int plg_sojourn_lst_batch(const plg_model* m, int discipline, const int* k, double w,
                          double* out, char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!m || !out) polling::fail_invalid("null argument");
        auto kv = batch_vec(m, k);
        auto d = to_discipline(discipline);
        if (d == polling::Discipline::GloballyGated) {
            *out = polling::sojourn_lst_gg(m->m, kv, w);
        } else {
            polling::TransformEngine eng(m->m);
            *out = eng.sojourn_lst(kv, w, d);
        }
    });
}

int plg_cycle_lst(const plg_model* m, double w, double* out, char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!m || !out) polling::fail_invalid("null argument");
        *out = polling::cycle_lst_gg(m->m, w);
    });
}

int plg_queue_pgf(const plg_model* m, const double* z, double* out, char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!m || !z || !out) polling::fail_invalid("null argument");
        polling::TransformEngine eng(m->m);
        *out = eng.stationary_queue_pgf(std::vector<double>(z, z + m->m.n));
    });
}

int plg_simulate(const plg_model* m, int discipline, int replications, long batches,
                 double warmup_fraction, uint64_t seed, const double* omegas, int n_omega,
                 double* out, char* err, size_t errlen) {
    return guarded(err, errlen, [&] {
        if (!m || !out) polling::fail_invalid("null argument");
        polling::SimConfig cfg;
        cfg.replications = replications;
        cfg.batches_per_replication = batches;
        cfg.warmup_fraction = warmup_fraction;
        cfg.seed = seed;
        if (omegas) cfg.lst_probes.assign(omegas, omegas + n_omega);
        auto est = polling::simulate(m->m, to_discipline(discipline), cfg);
        int pos = 0;
        out[pos++] = est.mean_T.mean;
        out[pos++] = est.mean_T.half;
        out[pos++] = est.mean_C.mean;
        out[pos++] = est.mean_C.half;
        for (int i = 0; i < m->m.n; ++i) {
            out[pos++] = est.mean_W[i].mean;
            out[pos++] = est.mean_W[i].half;
            out[pos++] = est.mean_L[i].mean;
            out[pos++] = est.mean_L[i].half;
        }
        for (int p = 0; p < n_omega; ++p) {
            out[pos++] = est.empirical_lst[p].mean;
            out[pos++] = est.empirical_lst[p].half;
        }
    });
}

}  // extern "C"
