#include "polling/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polling {

namespace {

Dist dist_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_object() || !j.contains("family") || !j.contains("mean"))
        fail_invalid(std::string(what) + ": distribution needs {family, mean}");
    std::string family = j.at("family").get<std::string>();
    double mean = j.at("mean").get<double>();
    if (family == "erlang") {
        if (!j.contains("shape")) fail_invalid(std::string(what) + ": erlang needs a shape");
        return Dist::erlang(j.at("shape").get<int>(), mean);
    }
    if (family == "two_point" || family == "moments") {
        if (!j.contains("second_moment"))
            fail_invalid(std::string(what) + ": " + family + " needs second_moment");
        double m2 = j.at("second_moment").get<double>();
        return family == "two_point" ? Dist::two_point(mean, m2) : Dist::from_moments(mean, m2);
    }
    return Dist::from_family(family, mean, 1);
}

}  // namespace

PollingModel model_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail_invalid(std::string("config is not valid JSON: ") + e.what());
    }
    PollingModel m;
    try {
        m.n = j.at("n").get<int>();
        m.lambda = j.at("lambda").get<double>();
        m.discipline = discipline_from_string(j.value("discipline", std::string("exhaustive")));
        if (!j.contains("queues") || !j.at("queues").is_array())
            fail_invalid("config needs a queues array");
        for (const auto& q : j.at("queues")) {
            m.service.push_back(dist_from_json(q.at("service"), "service"));
            m.switchover.push_back(dist_from_json(q.at("switch"), "switch"));
        }
        if (!j.contains("batch") || !j.at("batch").is_array())
            fail_invalid("config needs a batch support array");
        std::vector<BatchSupport::Entry> entries;
        for (const auto& b : j.at("batch")) {
            BatchSupport::Entry e;
            e.k = b.at("k").get<std::vector<int>>();
            e.p = b.at("p").get<double>();
            entries.push_back(std::move(e));
        }
        m.batch = BatchSupport(m.n, std::move(entries));
    } catch (const nlohmann::json::exception& e) {
        fail_invalid(std::string("malformed config: ") + e.what());
    }
    return m.validate();
}

PollingModel model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_invalid("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

namespace {

PollingModel assemble(int n, double lambda, std::vector<Dist> service,
                      std::vector<Dist> switchover,
                      std::vector<BatchSupport::Entry> entries) {
    PollingModel m;
    m.n = n;
    m.lambda = lambda;
    m.service = std::move(service);
    m.switchover = std::move(switchover);
    m.batch = BatchSupport(n, std::move(entries));
    return m.validate();
}

}  // namespace

PollingModel make_sym2(double Lambda, double b, double s) {
    return assemble(2, Lambda / 2.0,
                    {Dist::exponential(b), Dist::exponential(b)},
                    {Dist::exponential(s), Dist::exponential(s)},
                    {{{1, 1}, 1.0}});
}

PollingModel make_model_a(double rho) {
    // E(K) = (2.5, 0.25, 0.75); sum E(K_i) E(B_i) = 3.5.
    return assemble(3, rho / 3.5,
                    {Dist::exponential(1.0), Dist::exponential(1.0), Dist::exponential(1.0)},
                    {Dist::exponential(0.1), Dist::exponential(0.1), Dist::exponential(0.1)},
                    {{{1, 1, 0}, 0.25}, {{3, 0, 1}, 0.75}});
}

PollingModel make_model_b(double rho) {
    // Unit batches, each queue equally likely; sum E(K_i) E(B_i) = 1.
    return assemble(3, rho,
                    {Dist::exponential(1.0), Dist::exponential(1.0), Dist::exponential(1.0)},
                    {Dist::exponential(1.0), Dist::exponential(1.0), Dist::exponential(1.0)},
                    {{{1, 0, 0}, 1.0 / 3.0}, {{0, 1, 0}, 1.0 / 3.0}, {{0, 0, 1}, 1.0 / 3.0}});
}

PollingModel make_model_c(double rho) {
    // Service given by two moments (E(B_i^2) = 1): realized as the two-point
    // fit so that transforms and simulation stay exact. Deterministic unit
    // switch-overs. E(K) = (1, 0.8, 0.6); sum E(K_i) E(B_i) = 0.96.
    return assemble(3, rho / 0.96,
                    {Dist::two_point(0.1, 1.0), Dist::two_point(0.4, 1.0), Dist::two_point(0.9, 1.0)},
                    {Dist::deterministic(1.0), Dist::deterministic(1.0), Dist::deterministic(1.0)},
                    {{{1, 1, 0}, 0.8}, {{1, 0, 3}, 0.2}});
}

PollingModel make_vacation1() {
    return assemble(1, 2.0 / 3.0,
                    {Dist::exponential(0.5)},
                    {Dist::exponential(1.0)},
                    {{{1}, 0.5}, {{2}, 0.5}});
}

PollingModel make_builtin(const std::string& id, double rho_or_lambda, double b, double s) {
    if (id == "sym2") return make_sym2(rho_or_lambda, b, s);
    if (id == "model_a") return make_model_a(rho_or_lambda);
    if (id == "model_b") return make_model_b(rho_or_lambda);
    if (id == "model_c") return make_model_c(rho_or_lambda);
    if (id == "vacation1") return make_vacation1();
    fail_invalid("unknown built-in model: " + id);
}

}  // namespace polling
