#include "plcp/blur.hpp"
#include "plcp/data.hpp"
#include "plcp/engine.hpp"
#include "plcp/kernel.hpp"
#include "plcp/metrics.hpp"
#include "plcp/qp.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace plcp;

namespace {

EngineConfig make_config(double alpha, double k, int max_iter, double stop_change_frac, double lambda, double gamma,
                         const std::string& base, int k_neighbors, const std::string& kernel, std::uint64_t seed) {
    EngineConfig config;
    config.alpha = alpha;
    config.k = k;
    config.max_iter = max_iter;
    config.stop_change_frac = stop_change_frac;
    config.partner.lambda = lambda;
    config.partner.kernel.ridge = lambda;
    config.partner.gamma = gamma;
    config.seed = seed;
    if (kernel == "linear") config.partner.kernel.kind = KernelKind::linear;
    else if (kernel != "gaussian") throw Error("unknown kernel '" + kernel + "'");
    if (base == "kernel-ls") config.base = KernelLsSpec{};
    else if (base == "pl-knn") config.base = PlKnnSpec{k_neighbors, false};
    else throw Error("unknown base classifier '" + base + "'");
    return config;
}

PartialLabelDataset make_dataset(const Matrix& x, const Matrix& y, const std::optional<Labels>& truth) {
    return PartialLabelDataset(x, y, truth);
}

py::dict report_dict(const RunReport& r) {
    py::dict out;
    out["iterations_run"] = r.iterations_run;
    out["train_predictions"] = r.train_predictions;
    out["test_predictions"] = r.test_predictions;
    out["p"] = r.final_state.p;
    out["phat"] = r.final_state.phat;
    out["objective_trace"] = r.final_partner.objective_trace;
    return out;
}

}  // namespace

PYBIND11_MODULE(_plcp, m) {
    m.doc() = "Partial-label disambiguation with a non-candidate partner classifier";
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
    py::register_exception<Error>(m, "PlcpError", PyExc_ValueError);

    m.def("blur_labeling", &blur_labeling, py::arg("p"), py::arg("y"), py::arg("k") = -1.0);
    m.def("blur_noncandidate", &blur_noncandidate, py::arg("phat"), py::arg("y"), py::arg("k") = -1.0);

    m.def(
        "solve_row",
        [](const Vector& linear, const Vector& lower, const Vector& upper, double sum_target) {
            return solve_row(RowQpProblem{linear, lower, upper, sum_target});
        },
        py::arg("linear"), py::arg("lower"), py::arg("upper"), py::arg("sum_target"),
        "Minimise c.c + linear.c over lower <= c <= upper with sum(c) = sum_target.");

    m.def(
        "kernel_ridge",
        [](const Matrix& gram, const Matrix& target, double lambda) {
            const auto solve = kkt_solve(gram, target, lambda);
            return py::make_tuple(solve.dual_coeffs, solve.bias, predict(solve, gram));
        },
        py::arg("gram"), py::arg("target"), py::arg("lambda_") = 0.05,
        "Dual coefficients, bias and fitted outputs of the kernel ridge model.");

    m.def(
        "generate_synthetic",
        [](int n, int d, int l, double flip_q, double separation, std::uint64_t seed) {
            SyntheticSpec spec;
            spec.n = n;
            spec.d = d;
            spec.l = l;
            spec.flip_q = flip_q;
            spec.separation = separation;
            spec.seed = seed;
            const auto ds = generate_synthetic(spec);
            return py::make_tuple(ds.features(), ds.candidates(), *ds.ground_truth());
        },
        py::arg("n") = 500, py::arg("d") = 8, py::arg("l") = 5, py::arg("flip_q") = 0.3, py::arg("separation") = 4.0,
        py::arg("seed") = 0, "Gaussian blobs with flipped false-positive candidates: (X, Y, truth).");

    m.def(
        "run_plcp",
        [](const Matrix& x, const Matrix& y, const std::optional<Matrix>& test_x, double alpha, double k, int max_iter,
           double stop_change_frac, double lambda, double gamma, const std::string& base, int k_neighbors,
           const std::string& kernel, std::uint64_t seed) {
            const auto config =
                make_config(alpha, k, max_iter, stop_change_frac, lambda, gamma, base, k_neighbors, kernel, seed);
            const Matrix tx = test_x ? *test_x : Matrix(0, x.cols());
            return report_dict(run_plcp(make_dataset(x, y, std::nullopt), tx, config));
        },
        py::arg("x"), py::arg("y"), py::arg("test_x") = py::none(), py::arg("alpha") = 0.5, py::arg("k") = -1.0,
        py::arg("max_iter") = 5, py::arg("stop_change_frac") = 0.05, py::arg("lambda_") = 0.05,
        py::arg("gamma") = 2.0, py::arg("base") = "pl-knn", py::arg("k_neighbors") = 10,
        py::arg("kernel") = "gaussian", py::arg("seed") = 0);

    m.def(
        "run_base_alone",
        [](const Matrix& x, const Matrix& y, const std::optional<Matrix>& test_x, const std::string& base,
           int k_neighbors) {
            const auto config = make_config(0.5, -1.0, 1, 0.05, 0.05, 2.0, base, k_neighbors, "gaussian", 0);
            const Matrix tx = test_x ? *test_x : Matrix(0, x.cols());
            return report_dict(run_base_alone(make_dataset(x, y, std::nullopt), tx, config));
        },
        py::arg("x"), py::arg("y"), py::arg("test_x") = py::none(), py::arg("base") = "pl-knn",
        py::arg("k_neighbors") = 10);

    m.def("accuracy", &accuracy, py::arg("predicted"), py::arg("truth"));
    m.def(
        "correction_metrics",
        [](const Labels& base, const Labels& plcp, const Labels& truth) {
            const auto c = correction_metrics(base, plcp, truth);
            return py::make_tuple(c.correction_ratio, c.miscorrection_ratio);
        },
        py::arg("base"), py::arg("plcp"), py::arg("truth"));
}
