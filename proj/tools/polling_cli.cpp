// Command-line front end for the polling-system analysis library. All
// computation happens behind the C API; this file only parses arguments,
// assembles CSV tables, and maps library errors to exit codes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polling.h"

namespace {

constexpr int kExitInvalid = 2;

[[noreturn]] void die(int code, const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    std::exit(code == 0 ? kExitInvalid : code);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) die(kExitInvalid, "empty grid: " + text);
    return out;
}

bool is_builtin(const std::string& id) {
    return id == "sym2" || id == "model_a" || id == "model_b" || id == "model_c" ||
           id == "vacation1";
}

struct ModelOptions {
    std::string model;
    double rho = 0.5;
    double lambda = 0.4;
    double b = 1.0;
    double s = 1.0;
};

plg_model* open_model(const ModelOptions& opt) {
    char err[256] = {0};
    plg_model* m = nullptr;
    int rc;
    if (is_builtin(opt.model)) {
        double a = (opt.model == "sym2") ? opt.lambda : opt.rho;
        rc = plg_model_builtin(opt.model.c_str(), a, opt.b, opt.s, &m, err, sizeof(err));
    } else {
        std::ifstream in(opt.model);
        if (!in) die(kExitInvalid, "cannot open model file: " + opt.model);
        std::ostringstream buf;
        buf << in.rdbuf();
        rc = plg_model_from_json(buf.str().c_str(), &m, err, sizeof(err));
    }
    if (rc != PLG_OK) die(rc, err);
    return m;
}

int parse_discipline(const std::string& d) {
    if (d == "ex") return PLG_EXHAUSTIVE;
    if (d == "lg") return PLG_LOCALLY_GATED;
    if (d == "gg") return PLG_GLOBALLY_GATED;
    die(kExitInvalid, "discipline must be ex, lg, or gg");
}

// Disciplines within 1e-9 of the minimum, joined with '+'.
std::string argmin_label(double ex, double lg, double gg) {
    double best = std::min(ex, std::min(lg, gg));
    std::string out;
    auto add = [&](double v, const char* name) {
        if (v <= best + 1e-9 * std::max(1.0, std::abs(best))) {
            if (!out.empty()) out += "+";
            out += name;
        }
    };
    add(ex, "ex");
    add(lg, "lg");
    add(gg, "gg");
    return out;
}

void cmd_solve(const ModelOptions& opt, const std::string& disc) {
    plg_model* m = open_model(opt);
    int d = parse_discipline(disc);
    int n = 0;
    plg_model_queues(m, &n);
    std::vector<double> wait(n), qlen(n);
    double mean_T = 0.0;
    char err[256] = {0};
    int rc = plg_solve(m, d, wait.data(), qlen.data(), &mean_T, err, sizeof(err));
    if (rc != PLG_OK) die(rc, err);

    std::printf("queue,mean_wait,mean_queue_len\n");
    for (int i = 0; i < n; ++i)
        std::printf("%d,%s,%s\n", i + 1, fmt(wait[i]).c_str(), fmt(qlen[i]).c_str());
    int count = 0;
    plg_support_size(m, &count);
    std::printf("batch,probability,mean_sojourn\n");
    std::vector<int> k(n);
    for (int c = 0; c < count; ++c) {
        double p = 0.0;
        plg_support_entry(m, c, k.data(), &p);
        double tk = 0.0;
        rc = plg_mean_batch_sojourn(m, d, k.data(), &tk, err, sizeof(err));
        if (rc != PLG_OK) die(rc, err);
        std::string label;
        for (int i = 0; i < n; ++i) label += (i ? " " : "") + std::to_string(k[i]);
        std::printf("(%s),%s,%s\n", label.c_str(), fmt(p).c_str(), fmt(tk).c_str());
    }
    std::printf("mean_batch_sojourn,%s\n", fmt(mean_T).c_str());
    plg_model_free(m);
}

void cmd_simulate(const ModelOptions& opt, const std::string& disc, int reps, long batches,
                  double warmup, std::uint64_t seed, const std::string& omega_list) {
    plg_model* m = open_model(opt);
    int d = parse_discipline(disc);
    int n = 0;
    plg_model_queues(m, &n);
    std::vector<double> omegas;
    if (!omega_list.empty()) omegas = parse_grid(omega_list);
    std::vector<double> out(4 + 4 * n + 2 * omegas.size());
    char err[256] = {0};
    int rc = plg_simulate(m, d, reps, batches, warmup, seed, omegas.data(),
                          static_cast<int>(omegas.size()), out.data(), err, sizeof(err));
    if (rc != PLG_OK) die(rc, err);
    std::printf("quantity,estimate,ci99_half\n");
    std::printf("mean_T,%s,%s\n", fmt(out[0]).c_str(), fmt(out[1]).c_str());
    std::printf("mean_C,%s,%s\n", fmt(out[2]).c_str(), fmt(out[3]).c_str());
    for (int i = 0; i < n; ++i) {
        std::printf("mean_W_%d,%s,%s\n", i + 1, fmt(out[4 + 4 * i]).c_str(),
                    fmt(out[5 + 4 * i]).c_str());
        std::printf("mean_L_%d,%s,%s\n", i + 1, fmt(out[6 + 4 * i]).c_str(),
                    fmt(out[7 + 4 * i]).c_str());
    }
    for (std::size_t p = 0; p < omegas.size(); ++p)
        std::printf("lst_%s,%s,%s\n", fmt(omegas[p]).c_str(),
                    fmt(out[4 + 4 * n + 2 * p]).c_str(),
                    fmt(out[5 + 4 * n + 2 * p]).c_str());
    plg_model_free(m);
}

void cmd_lst(const ModelOptions& opt, const std::string& disc, const std::string& omega_list) {
    plg_model* m = open_model(opt);
    int d = parse_discipline(disc);
    std::vector<double> omegas = parse_grid(omega_list);
    std::printf("omega,sojourn_lst\n");
    char err[256] = {0};
    for (double w : omegas) {
        double v = 0.0;
        int rc = plg_sojourn_lst(m, d, w, &v, err, sizeof(err));
        if (rc != PLG_OK) die(rc, err);
        std::printf("%s,%s\n", fmt(w).c_str(), fmt(v).c_str());
    }
    plg_model_free(m);
}

// Closed-form mean batch sojourn times of the symmetric two-queue system
// (customer rate L, exponential service mean b, exponential switch mean s).
struct Sym2Closed {
    double ex, lg, gg;
};

Sym2Closed sym2_closed(double L, double b, double s) {
    double r = L * b;
    Sym2Closed c;
    c.ex = (0.25 * r * r * b - 0.25 * r * r * s - r * s + 2 * b + 2 * s) / (1 - r);
    c.lg = (-0.125 * r * r * r * b + 0.125 * r * r * r * s + 0.25 * r * r * b -
            0.5 * r * r * s + 0.5 * r * b + r * s + 2 * b + 2 * s) /
           ((1 + 0.5 * r) * (1 - r));
    c.gg = (0.5 * r * r * b - 0.5 * r * r * s + 3 * r * b + 5.5 * r * s + 4 * b + 5 * s) /
           (2 * (1 + r) * (1 - r));
    return c;
}

double solve_mean_T(plg_model* m, int d) {
    double t = 0.0;
    char err[256] = {0};
    int rc = plg_solve(m, d, nullptr, nullptr, &t, err, sizeof(err));
    if (rc != PLG_OK) die(rc, err);
    return t;
}

void cmd_experiment_sym2(double L, const std::string& bgrid, const std::string& sgrid) {
    std::vector<double> bs = parse_grid(bgrid);
    std::vector<double> ss = parse_grid(sgrid);
    std::printf("b,s,rho,ex_closed,lg_closed,gg_closed,ex,lg,gg,argmin,max_rel_dev\n");
    for (double b : bs) {
        for (double s : ss) {
            double rho = L * b;
            if (rho >= 1.0 - 1e-12) {
                std::printf("%s,%s,%s,,,,,,,unstable,\n", fmt(b).c_str(), fmt(s).c_str(),
                            fmt(rho).c_str());
                continue;
            }
            Sym2Closed c = sym2_closed(L, b, s);
            char err[256] = {0};
            plg_model* m = nullptr;
            int rc = plg_model_builtin("sym2", L, b, s, &m, err, sizeof(err));
            if (rc != PLG_OK) die(rc, err);
            double ex = solve_mean_T(m, PLG_EXHAUSTIVE);
            double lg = solve_mean_T(m, PLG_LOCALLY_GATED);
            double gg = solve_mean_T(m, PLG_GLOBALLY_GATED);
            plg_model_free(m);
            double dev = std::max({std::abs(ex - c.ex) / c.ex, std::abs(lg - c.lg) / c.lg,
                                   std::abs(gg - c.gg) / c.gg});
            std::printf("%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s%s\n", fmt(b).c_str(),
                        fmt(s).c_str(), fmt(rho).c_str(), fmt(c.ex).c_str(),
                        fmt(c.lg).c_str(), fmt(c.gg).c_str(), fmt(ex).c_str(),
                        fmt(lg).c_str(), fmt(gg).c_str(), argmin_label(ex, lg, gg).c_str(),
                        fmt(dev).c_str(), dev > 1e-9 ? " MISMATCH" : "");
        }
    }
}

void cmd_experiment_models(const std::string& rho_grid) {
    std::vector<double> rhos = parse_grid(rho_grid);
    std::printf("model,rho,ex,lg,gg,argmin\n");
    for (const char* id : {"model_a", "model_b", "model_c"}) {
        for (double rho : rhos) {
            char err[256] = {0};
            plg_model* m = nullptr;
            int rc = plg_model_builtin(id, rho, 0, 0, &m, err, sizeof(err));
            if (rc != PLG_OK) die(rc, err);
            double ex = solve_mean_T(m, PLG_EXHAUSTIVE);
            double lg = solve_mean_T(m, PLG_LOCALLY_GATED);
            double gg = solve_mean_T(m, PLG_GLOBALLY_GATED);
            plg_model_free(m);
            std::printf("%s,%s,%s,%s,%s,%s\n", id, fmt(rho).c_str(), fmt(ex).c_str(),
                        fmt(lg).c_str(), fmt(gg).c_str(), argmin_label(ex, lg, gg).c_str());
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact means and transforms for cyclic polling systems with batch arrivals"};
    app.require_subcommand(1);

    ModelOptions mo;
    std::string disc = "ex";
    auto add_model_opts = [&](CLI::App* cmd) {
        cmd->add_option("--model", mo.model,
                        "model config path or built-in id (sym2, model_a, model_b, "
                        "model_c, vacation1)")
            ->required();
        cmd->add_option("--rho", mo.rho, "total load for built-in models a/b/c");
        cmd->add_option("--lambda", mo.lambda, "customer arrival rate for sym2");
        cmd->add_option("--b", mo.b, "service mean for sym2");
        cmd->add_option("--s", mo.s, "switch-over mean for sym2");
        cmd->add_option("--discipline", disc, "service discipline: ex, lg, or gg");
    };

    auto* solve = app.add_subcommand("solve", "mean waits, queue lengths, batch sojourns");
    add_model_opts(solve);

    int reps = 20;
    long batches = 200000;
    double warmup = 0.1;
    std::uint64_t seed = 1;
    std::string omega_list;
    auto* sim = app.add_subcommand("simulate", "discrete-event simulation estimates");
    add_model_opts(sim);
    sim->add_option("--reps", reps, "independent replications");
    sim->add_option("--batches", batches, "batches per replication");
    sim->add_option("--warmup", warmup, "warmup fraction of batches discarded");
    sim->add_option("--seed", seed, "master RNG seed");
    sim->add_option("--omega", omega_list, "comma-separated LST probe points");

    auto* lst = app.add_subcommand("lst", "pointwise batch sojourn-time LST");
    add_model_opts(lst);
    lst->add_option("--omega", omega_list, "comma-separated omega values")->required();

    auto* exp = app.add_subcommand("experiment", "reproduce the benchmark sweeps");
    exp->require_subcommand(1);
    double L = 0.4;
    std::string bgrid, sgrid, rho_grid;
    auto* sym2 = exp->add_subcommand("sym2", "symmetric two-queue closed-form sweep");
    sym2->add_option("--lambda", L, "customer arrival rate");
    sym2->add_option("--b-grid", bgrid, "comma-separated service means")->required();
    sym2->add_option("--s-grid", sgrid, "comma-separated switch-over means")->required();
    auto* abc = exp->add_subcommand("models-abc", "three-model discipline comparison");
    abc->add_option("--rho-grid", rho_grid, "comma-separated total loads")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    try {
        if (solve->parsed()) cmd_solve(mo, disc);
        if (sim->parsed()) cmd_simulate(mo, disc, reps, batches, warmup, seed, omega_list);
        if (lst->parsed()) cmd_lst(mo, disc, omega_list);
        if (sym2->parsed()) cmd_experiment_sym2(L, bgrid, sgrid);
        if (abc->parsed()) cmd_experiment_models(rho_grid);
    } catch (const std::exception& e) {
        die(kExitInvalid, e.what());
    }
    return 0;
}
