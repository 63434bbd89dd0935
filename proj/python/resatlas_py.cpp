#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "resatlas/complexes.hpp"
#include "resatlas/format.hpp"
#include "resatlas/kacmoody.hpp"
#include "resatlas/rings.hpp"
#include "resatlas/schur.hpp"
#include "resatlas/suite.hpp"

namespace py = pybind11;
using namespace resatlas;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.get_str())); }

py::dict format_dict(const ResolutionFormat& fmt) {
    py::dict d;
    d["f"] = fmt.f;
    d["r"] = fmt.r;
    d["valid"] = fmt.valid;
    d["diagnosis"] = fmt.diagnosis;
    if (fmt.valid && fmt.length() == 3) d["pqr"] = py::make_tuple(fmt.p(), fmt.q(), fmt.rr());
    return d;
}

py::dict class_dict(const TpqrClass& c) {
    py::dict d;
    d["kind"] = c.kind_name();
    d["dynkin"] = c.dynkin;
    d["signature"] = py::make_tuple(c.n_plus, c.n_zero, c.n_minus);
    d["cartan_rank"] = c.cartan_rank;
    return d;
}

MuIndex make_mu(long long a, long long b, long long c, Partition alpha, Partition beta, Partition gamma) {
    MuIndex mu;
    mu.a = a, mu.b = b, mu.c = c;
    mu.alpha = trim(alpha), mu.beta = trim(beta), mu.gamma = trim(gamma);
    return mu;
}

}  // namespace

PYBIND11_MODULE(resatlas, m) {
    m.doc() = "Resolution formats, T_{p,q,r} Kac-Moody data and explicit complexes";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

    m.def("derive_ranks", [](const std::vector<int>& f) { return format_dict(derive_ranks(f)); }, py::arg("f"));
    m.def("classify", [](int p, int q, int r) { return class_dict(classify(p, q, r)); }, py::arg("p"), py::arg("q"),
          py::arg("r"));
    m.def("format_for_pqr", &format_for_pqr);
    m.def("cartan_matrix", [](int p, int q, int r) { return cartan_matrix(TpqrGraph::make(p, q, r)); });

    m.def(
        "positive_roots",
        [](int p, int q, int r, int max_height) {
            auto rs = enumerate_roots(cartan_matrix(TpqrGraph::make(p, q, r)), max_height, Budget::from_env());
            py::list out;
            for (auto& root : rs.positive) out.append(py::make_tuple(root.k, root.mult));
            return out;
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("max_height") = 1000);

    m.def(
        "defect_dims",
        [](int p, int q, int r, int m_max) { return defect_graded_dims(p, q, r, m_max, Budget::from_env()).dims; },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("m_max"));

    m.def(
        "kostant_weights",
        [](int p, int q, int r, int k) {
            auto g = TpqrGraph::make(p, q, r);
            return kostant_weights(cartan_matrix(g), g.S(), k, k, Budget::from_env());
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("k"));

    m.def(
        "dot_action",
        [](int p, int q, int r, const std::vector<std::string>& word, const Weight& lambda) {
            auto g = TpqrGraph::make(p, q, r);
            std::vector<int> w;
            for (auto& name : word) {
                int v = g.vertex_by_name(name);
                if (v < 0) throw std::invalid_argument("unknown vertex " + name);
                w.push_back(v);
            }
            return dot_action(cartan_matrix(g), w, lambda);
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("word"), py::arg("weight"));

    m.def("schur_dim", [](const GLWeight& w) { return to_py(schur_dim(w)); }, py::arg("weight"));

    m.def(
        "ra_component",
        [](const std::vector<int>& f, long long a, long long b, long long c, const Partition& alpha,
           const Partition& beta, const Partition& gamma) {
            auto q = ra_component(make_mu(a, b, c, alpha, beta, gamma), derive_ranks(f));
            return py::make_tuple(q.F3, q.F2, q.F1, q.F0);
        },
        py::arg("f"), py::arg("a") = 0, py::arg("b") = 0, py::arg("c") = 0, py::arg("alpha") = Partition{},
        py::arg("beta") = Partition{}, py::arg("gamma") = Partition{});

    m.def(
        "rspec_lambda",
        [](const std::vector<int>& f, long long a, long long b, long long c, const Partition& alpha,
           const Partition& beta, const Partition& gamma) {
            return rspec_component(make_mu(a, b, c, alpha, beta, gamma), derive_ranks(f)).lambda;
        },
        py::arg("f"), py::arg("a") = 0, py::arg("b") = 0, py::arg("c") = 0, py::arg("alpha") = Partition{},
        py::arg("beta") = Partition{}, py::arg("gamma") = Partition{});

    m.def(
        "verify_atype_family",
        [](int r3, std::uint64_t seed) {
            auto b = atype_family_build(r3);
            auto rep = be_rank_check(b.complex, seed);
            return py::make_tuple(verify_complex(b.complex).ok && rep.ok, rep.observed);
        },
        py::arg("r3"), py::arg("seed") = 1);

    m.def(
        "verify_monomial",
        [](int t, std::uint64_t seed) {
            auto c = monomial_complex(t);
            auto rep = be_rank_check(c, seed);
            return py::make_tuple(verify_complex(c).ok && rep.ok, rep.observed);
        },
        py::arg("t"), py::arg("seed") = 1);

    m.def("d4_relation_holds", [] { return d4_relation_check().ok; });

    m.def(
        "acceptance",
        [](int only) {
            SuiteOptions opts;
            opts.budget = Budget::from_env();
            std::vector<CheckResult> results;
            if (only > 0) results.push_back(run_acceptance_check(only, opts));
            else results = run_acceptance_suite(opts);
            py::list out;
            for (auto& r : results) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("only") = 0);
}
