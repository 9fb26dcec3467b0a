#include "msf/report.hpp"

#include <string>

namespace msf {
namespace {

nlohmann::json library_json()
{
    return {{"name", "msf"}, {"version", std::string(library_version)}};
}

nlohmann::json config_json(const FactorConfig& c)
{
    return {
        {"eps_tail", c.eps_tail},
        {"max_order", c.max_order},
        {"threads", c.threads},
        {"keep_history", c.keep_history},
        {"check_invariants", c.check_invariants},
        {"tolerances",
         {{"paraunitary", c.tolerances.paraunitary},
          {"lemma", c.tolerances.lemma},
          {"analytic", c.tolerances.analytic},
          {"sigma_floor", c.tolerances.sigma_floor},
          {"eigen_floor", c.tolerances.eigen_floor}}},
        {"seed_options",
         {{"hermitian_tol", c.seed.hermitian_tol},
          {"pivot_floor", c.seed.pivot_floor},
          {"paley_wiener_floor", c.seed.paley_wiener_floor}}},
    };
}

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v)
{
    if (v) j[key] = *v;
}

}  // namespace

nlohmann::json to_json(const FactorReport& report, std::optional<double> outer)
{
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : report.steps) {
        steps.push_back({{"stage", s.stage},
                         {"block", s.block},
                         {"order", s.order},
                         {"paraunitary", s.paraunitary_residual},
                         {"lemma", s.lemma_deviation},
                         {"det", s.det_deviation},
                         {"analytic", s.analytic_residual},
                         {"seconds", s.seconds}});
    }
    nlohmann::json doc = {
        {"status", "ok"},
        {"library", library_json()},
        {"algorithm", report.algorithm},
        {"config", config_json(report.config)},
        {"metrics", verify_json(report.c1, report.c2, outer)},
        {"timings",
         {{"seed", report.seed_seconds},
          {"procedure", report.procedure_seconds},
          {"total", report.total_seconds},
          {"levels", report.level_seconds}}},
        {"residuals", steps},
    };
    doc["config"]["r"] = report.dim;
    doc["config"]["padded_r"] = report.padded_dim;
    doc["config"]["grid"] = report.grid;
    if (!report.invariants.empty()) {
        nlohmann::json inv = nlohmann::json::array();
        for (const auto& i : report.invariants)
            inv.push_back({{"stage", i.stage},
                           {"analytic", i.analytic_residual},
                           {"conservation", i.conservation},
                           {"upper_zero", i.upper_zero}});
        doc["invariants"] = inv;
    }
    return doc;
}

nlohmann::json to_json(const BenchmarkReport& report)
{
    nlohmann::json algorithms = nlohmann::json::array();
    for (Algorithm a : report.config.algorithms) algorithms.push_back(to_string(a));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json timings = nlohmann::json::object();
        for (const auto& t : row.timings)
            timings[to_string(t.algorithm)] = {
                {"seconds", t.seconds}, {"c1", t.c1}, {"c2", t.c2}, {"max_order", t.max_order}};
        nlohmann::json j = {{"r", row.r}, {"checksum", row.checksum}, {"algorithms", timings}};
        j["ratio"] = row.ratio ? nlohmann::json(*row.ratio) : nlohmann::json(nullptr);
        rows.push_back(j);
    }
    nlohmann::json config = config_json(report.config.factor);
    config["dims"] = report.config.dims;
    config["n"] = report.config.n;
    config["grid"] = report.config.grid;
    config["seed"] = report.config.seed;
    config["real_only"] = report.config.real_only;
    config["algorithms"] = algorithms;
    config["repetitions"] = report.config.repetitions;
    config["warmup"] = report.config.warmup;
    return {{"status", "ok"},
            {"library", library_json()},
            {"machine", report.machine},
            {"config", config},
            {"rows", rows}};
}

nlohmann::json verify_json(double c1, double c2, std::optional<double> outer)
{
    nlohmann::json j = {{"c1", c1}, {"c2", c2}};
    j["outer_check"] = outer ? nlohmann::json(*outer) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const Error& error)
{
    nlohmann::json e = {{"code", std::string(to_string(error.code()))}, {"message", error.detail()}};
    const auto& ctx = error.context();
    put_optional(e, "stage", ctx.stage);
    put_optional(e, "level", ctx.level);
    put_optional(e, "block", ctx.block);
    put_optional(e, "node", ctx.node);
    put_optional(e, "index", ctx.index);
    return {{"status", "failed"}, {"library", library_json()}, {"error", e}};
}

}  // namespace msf
