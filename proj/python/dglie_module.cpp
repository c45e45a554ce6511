#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dglie/parser.hpp"
#include "dglie/run.hpp"
#include "dglie/transfer.hpp"
#include "dglie/whitehead.hpp"

namespace py = pybind11;
using namespace dglie;

namespace {

// Thin handle bundling an algebra with a retract for the transfer calls.
struct Session {
    std::shared_ptr<FreeDGL> L;
    std::shared_ptr<Retract> retract;

    explicit Session(const std::string& text, int cap) {
        L = build_dgl(parse_dgl(text), cap);
        retract = std::make_shared<Retract>(Retract::from_decomposition(*L, {}));
    }

    int dim(int n) const { return L->dim(n); }
    int homology_dim(int n) const { return L->homology(n).hdim; }

    std::vector<std::string> homology_reps(int n) const {
        std::vector<std::string> out;
        for (auto& rep : L->homology(n).reps) out.push_back(L->print(LieVec{n, rep}));
        return out;
    }

    bool d_squared_zero() const { return L->check_d_squared().ok; }

    std::string ell(int k, const std::vector<std::string>& exprs) const {
        std::vector<HVec> args;
        for (auto& e : exprs) args.push_back(L->class_of(L->vec(eval_expr_str(e, *L))));
        return hclass_string(*L, dglie::ell(k, *retract, args));
    }

    std::string whitehead_class(const std::vector<int>& spheres,
                                const std::vector<std::string>& exprs) const {
        WedgeModel W = build_fat_wedge(spheres);
        std::vector<LieVec> reps;
        for (auto& e : exprs) reps.push_back(L->vec(eval_expr_str(e, *L)));
        auto res = extend(W, *L, reps, ExtendStrategy::Echelon);
        if (std::holds_alternative<Obstruction>(res)) {
            const auto& ob = std::get<Obstruction>(res);
            throw Error("extension obstructed at " + subset_name(ob.subset));
        }
        return hclass_string(*L, whitehead_element(std::get<Extension>(res)));
    }
};

}  // namespace

PYBIND11_MODULE(_dglie, m) {
    m.doc() = "exact rational computations with differential graded Lie algebras";

    py::register_exception<Error>(m, "DglError");

    py::class_<Session>(m, "Dgl")
        .def(py::init<const std::string&, int>(), py::arg("text"), py::arg("cap") = 0)
        .def("dim", &Session::dim, "dimension of the free Lie algebra in one degree")
        .def("homology_dim", &Session::homology_dim)
        .def("homology_reps", &Session::homology_reps)
        .def("d_squared_zero", &Session::d_squared_zero)
        .def("ell", &Session::ell, py::arg("k"), py::arg("classes"),
             "transferred bracket of the classes of the given cycle expressions")
        .def("whitehead_class", &Session::whitehead_class, py::arg("spheres"),
             py::arg("classes"));

    m.def("load", [](const std::string& path, int cap) { return Session(read_file(path), cap); },
          py::arg("path"), py::arg("cap") = 0);

    m.def("tree_classes", [](int leaves) {
        std::vector<std::pair<std::string, long>> out;
        for (auto& t : enumerate_trees(leaves)) out.emplace_back(t->key, t->aut);
        return out;
    });

    m.def("run", [](const std::vector<std::string>& args) {
        RunResult rr = run_command(args);
        return py::make_tuple(rr.exit_code, rr.text, rr.report.dump());
    }, "run a CLI subcommand; returns (exit_code, text, json)");
}
