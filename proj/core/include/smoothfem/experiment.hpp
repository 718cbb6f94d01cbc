#ifndef SMOOTHFEM_EXPERIMENT_HPP
#define SMOOTHFEM_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sfem {

/// Batch experiment configuration; mirrors the CLI flags one-to-one.
struct ExperimentConfig {
    std::string experiment = "dimcheck";  // interpolate|polyharmonic|dimcheck|selftest
    int dim = 2;
    int degree = 0;
    int smoothness = -1;      // m; ignored when rvec given
    std::vector<int> rvec;    // explicit smoothness vector (r_0..r_d)
    std::string mesh = "builtin:square:1";
    int levels = 1;
    std::string exact;        // named exact solution
    std::string output;       // file path; empty writes to stdout
    std::string format = "csv";
    int threads = 1;

    /// Throws std::invalid_argument quoting the violated constraint.
    void validate() const;
};

struct TableRow {
    double h = 0.0;
    int ndof = 0;
    std::vector<double> errors;
    std::vector<double> rates;  // empty on the first row
};

struct Table {
    ExperimentConfig config;
    std::vector<std::string> error_labels;
    std::vector<TableRow> rows;
};

/// Interpolation of the named exact solution over a refinement sequence:
/// errors |grad^j (u - u_I)| for j = 0..m+1 with log2 rates.
Table interpolation_study(const ExperimentConfig& config);

/// Polyharmonic solve of order m+1 with strong Dirichlet data from the
/// exact solution; errors j = 0..m+1 and rates.
Table convergence_study(const ExperimentConfig& config);

/// Space dimensions per refinement level.
Table dimension_check(const ExperimentConfig& config);

/// Property-check battery; prints one pass/fail line per check to out.
bool selftest(std::ostream& out);

/// Dispatches on config.experiment and returns the table (selftest returns
/// an empty table).
Table run_experiment(const ExperimentConfig& config, std::ostream& log);

/// Serializes a table as CSV (3-significant-digit errors, 2-decimal rates)
/// or JSON ({config, rows:[{h, ndof, errors, rates}]}).
void emit(const Table& table, std::ostream& out, const std::string& format);

/// Full run: validate, execute, emit to config.output or out; returns a
/// process exit code.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

} // namespace sfem

#endif
