#include <cmath>
#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcycle/io.hpp"
#include "pcycle/oracle.hpp"
#include "pcycle/solver.hpp"

namespace py = pybind11;
using namespace pcycle;

namespace {

CostMatrix from_rows(const std::vector<std::vector<py::object>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<Cost> e;
    e.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw NonSquare("every row must have n entries");
        for (const auto& x : row) {
            if (x.is_none()) {
                e.push_back(kInf);
            } else if (py::isinstance<py::float_>(x)) {
                const double v = x.cast<double>();
                if (!std::isinf(v) || v < 0) throw InvalidArgument("float entries must be +inf");
                e.push_back(kInf);
            } else {
                e.push_back(x.cast<Cost>());
            }
        }
    }
    return CostMatrix(n, std::move(e));
}

std::vector<int> one_based(const Derangement& d) {
    std::vector<int> out(d.image().begin(), d.image().end());
    for (auto& v : out) ++v;
    return out;
}

Derangement from_one_based(std::vector<int> image) {
    for (auto& v : image) --v;
    return Derangement(std::move(image));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Permutation-cycle TSP solver core";
    py::register_exception<Error>(mod, "Error", PyExc_ValueError);

    py::class_<CostMatrix>(mod, "Matrix")
        .def(py::init(&from_rows), py::arg("rows"), "rows of ints; None or inf on the diagonal")
        .def_static("parse", [](const std::string& text) { return parse_matrix(text); })
        .def_static("load", [](const std::string& path) { return load_matrix(path); })
        .def_static("generate", &gen_instance, py::arg("n"), py::arg("max_cost"), py::arg("seed"))
        .def_static("example2", [] { return example2_matrix(); })
        .def_property_readonly("n", &CostMatrix::size)
        .def("render", &render_matrix)
        .def("__getitem__", [](const CostMatrix& m, std::pair<int, int> ij) -> py::object {
            auto [i, j] = ij;
            if (i < 1 || j < 1 || i > m.size() || j > m.size()) throw py::index_error("1-based indices out of range");
            const Cost c = m(i - 1, j - 1);
            if (is_inf(c)) return py::float_(INFINITY);
            return py::int_(c);
        })
        .def("__eq__", [](const CostMatrix& a, const CostMatrix& b) { return a == b; });

    mod.def("solve",
            [](const CostMatrix& m, int phases, std::uint64_t seed, int restarts, bool keep_equal_paths,
               std::optional<Cost> budget_cap) {
                SolveOptions opts;
                opts.phases = phases;
                opts.seed = seed;
                opts.restarts = restarts;
                opts.keep_equal_paths = keep_equal_paths;
                opts.budget_cap = budget_cap;
                const std::string json = report_to_json(solve(m, opts));
                return py::module_::import("json").attr("loads")(json);
            },
            py::arg("matrix"), py::arg("phases") = 3, py::arg("seed") = 0, py::arg("restarts") = 1,
            py::arg("keep_equal_paths") = false, py::arg("budget_cap") = py::none(),
            "Runs phases 1..phases and returns the report as a dict.");

    mod.def("hungarian_ap", [](const CostMatrix& m) {
        auto [v, d] = hungarian_ap(m);
        return py::make_tuple(v, one_based(d));
    });
    mod.def("held_karp_tsp", [](const CostMatrix& m) {
        auto [v, d] = held_karp_tsp(m);
        return py::make_tuple(v, one_based(d));
    });
    mod.def("derangement_value", [](const CostMatrix& m, std::vector<int> image) {
        return derangement_value(m, from_one_based(std::move(image)));
    }, "Sum of d(a, image[a]) for a 1-based image list.");
    mod.def("is_tour", [](std::vector<int> image) { return is_tour(from_one_based(std::move(image))); });
}
