#include "smoothfem/experiment.hpp"

#include "smoothfem/exact_solutions.hpp"
#include "smoothfem/fespace.hpp"
#include "smoothfem/interpolation.hpp"
#include "smoothfem/parallel.hpp"
#include "smoothfem/polyharmonic.hpp"
#include "smoothfem/quadrature.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace sfem {

namespace {

struct MeshSpec {
    std::string kind;  // "builtin" or "file"
    std::string shape; // square|cube
    int n = 1;
    std::string path;
};

MeshSpec parse_mesh(const std::string& spec)
{
    MeshSpec ms;
    if (spec.rfind("builtin:", 0) == 0) {
        ms.kind = "builtin";
        std::string rest = spec.substr(8);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) {
            ms.shape = rest;
        } else {
            ms.shape = rest.substr(0, colon);
            ms.n = std::stoi(rest.substr(colon + 1));
        }
        if (ms.shape != "square" && ms.shape != "cube")
            throw std::invalid_argument("mesh: unknown builtin shape '" + ms.shape + "'");
        if (ms.n < 1)
            throw std::invalid_argument("mesh: builtin resolution must be >= 1");
    } else if (spec.rfind("file:", 0) == 0) {
        ms.kind = "file";
        ms.path = spec.substr(5);
    } else {
        throw std::invalid_argument("mesh: expected builtin:...|file:..., got '" + spec + "'");
    }
    return ms;
}

SmoothnessVector smoothness_of(const ExperimentConfig& config)
{
    if (!config.rvec.empty())
        return SmoothnessVector::from_rvec(config.rvec, config.degree);
    return SmoothnessVector::minimal(config.smoothness, config.degree, config.dim);
}

Mesh level_mesh(const ExperimentConfig& config, const MeshSpec& ms, int level)
{
    if (ms.kind == "file") {
        if (level > 0)
            throw std::invalid_argument("mesh: file meshes support a single level");
        Mesh mesh = load_mesh(ms.path);
        if (mesh.dim != config.dim)
            throw std::invalid_argument("mesh: file dimension does not match --dim");
        return mesh;
    }
    const int expected_dim = ms.shape == "square" ? 2 : 3;
    if (expected_dim != config.dim)
        throw std::invalid_argument("mesh: builtin shape dimension does not match --dim");
    return builtin_mesh(ms.shape, ms.n << level);
}

double level_h(const MeshSpec& ms, int level)
{
    if (ms.kind == "file")
        return 1.0;
    return 1.0 / static_cast<double>(ms.n << level);
}

void append_rates(Table& table)
{
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        TableRow& row = table.rows[i];
        const TableRow& prev = table.rows[i - 1];
        row.rates.resize(row.errors.size());
        for (std::size_t j = 0; j < row.errors.size(); ++j)
            row.rates[j] = std::log2(prev.errors[j] / row.errors[j]);
    }
}

} // namespace

void ExperimentConfig::validate() const
{
    if (experiment != "interpolate" && experiment != "polyharmonic" && experiment != "dimcheck" &&
        experiment != "selftest")
        throw std::invalid_argument("config: unknown experiment '" + experiment + "'");
    if (experiment == "selftest")
        return;
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("config: dim must be 1, 2, or 3");
    if (degree < 1)
        throw std::invalid_argument("config: degree must be >= 1");
    if (levels < 1)
        throw std::invalid_argument("config: levels must be >= 1");
    if (threads < 1)
        throw std::invalid_argument("config: threads must be >= 1");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    if (rvec.empty() && smoothness < 0)
        throw std::invalid_argument("config: either --smoothness or --rvec is required");
    if (!rvec.empty() && static_cast<int>(rvec.size()) != dim + 1)
        throw std::invalid_argument("config: rvec must have dim+1 entries");
    // admissibility: k >= 2 r_0 + 1 and the chain conditions
    smoothness_of(*this);
    parse_mesh(mesh);
    if (experiment == "interpolate" || experiment == "polyharmonic") {
        if (exact.empty())
            throw std::invalid_argument("config: --exact is required for this experiment");
        const NamedSolution sol = exact_solution(exact);
        if (sol.dim != dim)
            throw std::invalid_argument("config: exact solution '" + exact + "' is " +
                                        std::to_string(sol.dim) + "D, got --dim " +
                                        std::to_string(dim));
    }
}

Table interpolation_study(const ExperimentConfig& config)
{
    const MeshSpec ms = parse_mesh(config.mesh);
    const SmoothnessVector sm = smoothness_of(config);
    const NamedSolution sol = exact_solution(config.exact);

    Table table;
    table.config = config;
    for (int j = 0; j <= sm.m + 1; ++j)
        table.error_labels.push_back("H" + std::to_string(j));

    for (int level = 0; level < config.levels; ++level) {
        FeSpace space(level_mesh(config, ms, level), sm);
        const std::vector<double> ui = interpolate(space, *sol.u);
        const auto coeffs = space.all_element_coefficients(ui);

        TableRow row;
        row.h = level_h(ms, level);
        row.ndof = space.dimension();
        for (int j = 0; j <= sm.m + 1; ++j)
            row.errors.push_back(error_norm(space, coeffs, *sol.u, j));
        table.rows.push_back(std::move(row));
    }
    append_rates(table);
    return table;
}

Table convergence_study(const ExperimentConfig& config)
{
    const MeshSpec ms = parse_mesh(config.mesh);
    const SmoothnessVector sm = smoothness_of(config);
    const NamedSolution sol = exact_solution(config.exact);
    const int m = sm.m;

    Table table;
    table.config = config;
    for (int j = 0; j <= m + 1; ++j)
        table.error_labels.push_back("H" + std::to_string(j));

    const auto rhs = sol.rhs(m);
    for (int level = 0; level < config.levels; ++level) {
        FeSpace space(level_mesh(config, ms, level), sm);
        const QuadratureRule rule = quadrature(space.mesh().dim, 2 * sm.k);

        LinearSystem system;
        system.A = assemble_stiffness(space, m);
        system.b = assemble_load(space, *rhs, rule);
        BoundaryData bd{sol.u.get()};
        apply_dirichlet(system, space, bd);
        const SolveReport rep = solve(system);

        const auto coeffs = space.all_element_coefficients(rep.x);
        TableRow row;
        row.h = level_h(ms, level);
        row.ndof = space.dimension();
        for (int j = 0; j <= m + 1; ++j)
            row.errors.push_back(error_norm(space, coeffs, *sol.u, j));
        table.rows.push_back(std::move(row));
    }
    append_rates(table);
    return table;
}

Table dimension_check(const ExperimentConfig& config)
{
    const MeshSpec ms = parse_mesh(config.mesh);
    const SmoothnessVector sm = smoothness_of(config);

    Table table;
    table.config = config;
    for (int level = 0; level < config.levels; ++level) {
        FeSpace space(level_mesh(config, ms, level), sm);
        TableRow row;
        row.h = level_h(ms, level);
        row.ndof = space.dimension();
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_experiment(const ExperimentConfig& config, std::ostream& log)
{
    config.validate();
    set_worker_threads(config.threads);
    if (config.experiment == "interpolate")
        return interpolation_study(config);
    if (config.experiment == "polyharmonic")
        return convergence_study(config);
    if (config.experiment == "dimcheck")
        return dimension_check(config);
    Table table;
    table.config = config;
    if (!selftest(log))
        throw std::runtime_error("selftest: failures reported above");
    return table;
}

namespace {

std::string format_error(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

std::string format_rate(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_h(double h)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", h);
    return buf;
}

} // namespace

void emit(const Table& table, std::ostream& out, const std::string& format)
{
    if (format == "csv") {
        out << "h,ndof";
        for (const std::string& label : table.error_labels)
            out << ",err_" << label << ",rate_" << label;
        out << "\n";
        for (const TableRow& row : table.rows) {
            out << format_h(row.h) << "," << row.ndof;
            for (std::size_t j = 0; j < row.errors.size(); ++j) {
                out << "," << format_error(row.errors[j]) << ",";
                if (j < row.rates.size())
                    out << format_rate(row.rates[j]);
            }
            out << "\n";
        }
        return;
    }
    if (format == "json") {
        nlohmann::json j;
        j["config"] = {{"experiment", table.config.experiment},
                       {"dim", table.config.dim},
                       {"degree", table.config.degree},
                       {"smoothness", table.config.smoothness},
                       {"rvec", table.config.rvec},
                       {"mesh", table.config.mesh},
                       {"levels", table.config.levels},
                       {"exact", table.config.exact},
                       {"threads", table.config.threads}};
        j["error_labels"] = table.error_labels;
        j["rows"] = nlohmann::json::array();
        for (const TableRow& row : table.rows)
            j["rows"].push_back({{"h", row.h},
                                 {"ndof", row.ndof},
                                 {"errors", row.errors},
                                 {"rates", row.rates}});
        out << j.dump(2) << "\n";
        return;
    }
    throw std::invalid_argument("emit: unknown format '" + format + "'");
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        Table table = run_experiment(config, out);
        if (config.experiment == "selftest")
            return 0;
        if (config.output.empty()) {
            emit(table, out, config.format);
        } else {
            std::ofstream file(config.output);
            if (!file)
                throw std::runtime_error("run: cannot write '" + config.output + "'");
            emit(table, file, config.format);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace sfem
