// Python bindings: thin dict-returning wrappers over the C++ core so the
// toolkit is scriptable without the CLI.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "qpr/charsum.hpp"
#include "qpr/checker.hpp"
#include "qpr/cosets.hpp"
#include "qpr/criteria.hpp"
#include "qpr/gf.hpp"
#include "qpr/numtheory.hpp"
#include "qpr/pipeline.hpp"

namespace py = pybind11;

namespace {

qpr::Triple to_triple(const std::tuple<uint64_t, uint64_t, uint64_t>& t) {
  return qpr::Triple{static_cast<qpr::FieldElem>(std::get<0>(t)),
                     static_cast<qpr::FieldElem>(std::get<1>(t)),
                     static_cast<qpr::FieldElem>(std::get<2>(t))};
}

py::dict triple_dict(const qpr::Triple& t) {
  py::dict d;
  d["a"] = t.a;
  d["b"] = t.b;
  d["c"] = t.c;
  return d;
}

py::dict report_dict(const qpr::CheckReport& rep) {
  py::dict d;
  d["q"] = rep.q;
  d["verified"] = rep.verified;
  d["witness"] = rep.verified ? py::object(py::none())
                              : py::object(triple_dict(rep.witness));
  d["triples_examined"] = rep.triples_examined;
  d["elapsed_seconds"] = rep.elapsed_seconds;
  return d;
}

py::dict verdict_dict(const qpr::CosetVerdict& v) {
  py::dict d;
  d["q"] = v.q;
  d["n"] = v.n;
  d["d"] = v.d;
  d["e"] = v.e;
  d["satisfied"] = v.satisfied;
  d["elapsed_seconds"] = v.elapsed_seconds;
  if (v.certificate_present) {
    py::dict c;
    c["branch"] = v.certificate.b_zero_branch ? "b_zero" : "squared";
    if (!v.certificate.b_zero_branch) {
      c["alpha_log"] = v.certificate.alpha_log;
      c["eps_mask"] = v.certificate.eps_mask;
    }
    c["beta_log"] = v.certificate.beta_log;
    c["delta_mask"] = v.certificate.delta_mask;
    c["missing_target"] = v.certificate.missing_target;
    d["certificate"] = c;
  } else {
    d["certificate"] = py::none();
  }
  return d;
}

py::dict criterion_dict(const qpr::CriterionResult& r) {
  py::dict d;
  const char* name = r.criterion == qpr::Criterion::kBasic   ? "basic"
                     : r.criterion == qpr::Criterion::kCohen ? "cohen"
                                                             : "mps";
  d["criterion"] = name;
  d["passed"] = r.passed;
  d["s"] = r.s;
  d["r"] = r.r;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["margin"] = r.margin;
  if (!r.reason.empty()) d["reason"] = r.reason;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Verification toolkit for the quadratic primitive-root property of "
      "finite fields: exhaustive checking, coset-decomposition shortcuts, "
      "character-sum audits, and the survivor-elimination pipeline.";

  py::class_<qpr::FieldCtx, std::shared_ptr<qpr::FieldCtx>>(m, "Field")
      .def(py::init<uint64_t>(), py::arg("q"),
           "Build the field context for a prime power q < 2^25.")
      .def_property_readonly("q", &qpr::FieldCtx::q)
      .def_property_readonly("p", &qpr::FieldCtx::p)
      .def_property_readonly("k", &qpr::FieldCtx::k)
      .def_property_readonly("order", &qpr::FieldCtx::order)
      .def_property_readonly("generator", &qpr::FieldCtx::generator)
      .def_property_readonly("modulus_coeffs", &qpr::FieldCtx::modulus_coeffs)
      .def("add", &qpr::FieldCtx::add)
      .def("sub", &qpr::FieldCtx::sub)
      .def("neg", &qpr::FieldCtx::neg)
      .def("mul", &qpr::FieldCtx::mul)
      .def("inv", &qpr::FieldCtx::inv)
      .def("pow", &qpr::FieldCtx::pow_elem)
      .def("exp", &qpr::FieldCtx::exp)
      .def("log",
           [](const qpr::FieldCtx& f, qpr::FieldElem a) -> py::object {
             uint32_t l = f.log(a);
             if (l == qpr::FieldCtx::kNoLog) return py::none();
             return py::int_(l);
           })
      .def("is_primitive", &qpr::FieldCtx::is_primitive)
      .def("is_e_free", &qpr::FieldCtx::is_e_free)
      .def("admissible",
           [](const qpr::FieldCtx& f,
              const std::tuple<uint64_t, uint64_t, uint64_t>& t) {
             return f.admissible(to_triple(t));
           })
      .def("eval_quadratic",
           [](const qpr::FieldCtx& f,
              const std::tuple<uint64_t, uint64_t, uint64_t>& t,
              qpr::FieldElem g) { return f.eval_quadratic(to_triple(t), g); });

  m.def(
      "factorize",
      [](uint64_t n) {
        std::vector<std::pair<uint64_t, uint32_t>> out;
        for (const qpr::Factor& f : qpr::factorize(n).factors)
          out.emplace_back(f.p, f.k);
        return out;
      },
      py::arg("n"), "Prime factorization as a list of (prime, exponent).");

  m.def(
      "check",
      [](uint64_t q, bool oracle) {
        qpr::FieldCtx ctx(q);
        return report_dict(oracle ? qpr::naive_check_q(ctx) : qpr::check_q(ctx));
      },
      py::arg("q"), py::arg("oracle") = false,
      "Exhaustively verify one prime power; oracle=True uses the slow "
      "independent double loop.");

  m.def(
      "coset_verify",
      [](uint64_t q, int n, int workers) {
        qpr::FieldCtx ctx(q);
        if (n > 0)
          return verdict_dict(
              qpr::check_hypotheses(qpr::build_coset_context(ctx, n), workers));
        return verdict_dict(qpr::escalate(ctx, workers));
      },
      py::arg("q"), py::arg("n") = 0, py::arg("workers") = 1,
      "Coset-decomposition verification for odd q; n=0 escalates until "
      "some level is satisfied.");

  m.def(
      "criteria",
      [](uint64_t q) {
        qpr::Factorization f = qpr::factorize(q - 1);
        py::dict d;
        d["q"] = q;
        d["basic"] = criterion_dict(qpr::basic_criterion(q, f));
        d["cohen"] = criterion_dict(qpr::best_split(q, f, qpr::Criterion::kCohen));
        d["mps"] = criterion_dict(qpr::best_split(q, f, qpr::Criterion::kMps));
        return d;
      },
      py::arg("q"),
      "All three elimination criteria at their best split for one q.");

  m.def(
      "generic_bound",
      [](int omega, const std::string& mode) {
        qpr::Criterion c = mode == "basic" ? qpr::Criterion::kBasic
                                           : qpr::Criterion::kCohen;
        return qpr::generic_bound(omega, c);
      },
      py::arg("omega"), py::arg("mode") = "cohen",
      "Class-wide enumeration bound for an omega class.");

  m.def(
      "char_sum",
      [](uint64_t q, const std::tuple<uint64_t, uint64_t, uint64_t>& t,
         uint64_t d1, uint64_t j1, uint64_t d2, uint64_t j2) {
        qpr::FieldCtx ctx(q);
        return qpr::char_sum(ctx, to_triple(t), ctx.character(d1, j1),
                             ctx.character(d2, j2))
            .value;
      },
      py::arg("q"), py::arg("triple"), py::arg("d1"), py::arg("j1") = 1,
      py::arg("d2"), py::arg("j2") = 1,
      "Character sum over g of chi_{d1,j1}(g) * chi_{d2,j2}(Q(g)).");

  m.def(
      "count_free_pairs",
      [](uint64_t q, const std::tuple<uint64_t, uint64_t, uint64_t>& t,
         uint64_t e1, uint64_t e2, bool via_characters) {
        qpr::FieldCtx ctx(q);
        return (via_characters ? qpr::count_via_characters(ctx, to_triple(t), e1, e2)
                               : qpr::count_free_pairs(ctx, to_triple(t), e1, e2))
            .N;
      },
      py::arg("q"), py::arg("triple"), py::arg("e1"), py::arg("e2"),
      py::arg("via_characters") = false,
      "Number of e1-free g with Q(g) e2-free, by enumeration or the "
      "character expansion.");

  m.def(
      "weil_audit",
      [](uint64_t q, const std::tuple<uint64_t, uint64_t, uint64_t>& t) {
        qpr::FieldCtx ctx(q);
        qpr::WeilAuditReport rep = qpr::weil_audit(ctx, to_triple(t));
        py::dict d;
        d["q"] = rep.q;
        d["triple"] = triple_dict(rep.triple);
        d["principal_S"] = rep.max_principal;
        d["max_abs_d1_only"] = rep.max_d1_only;
        d["max_abs_d2_only"] = rep.max_d2_only;
        d["max_abs_both"] = rep.max_both;
        d["passed"] = rep.passed();
        return d;
      },
      py::arg("q"), py::arg("triple"),
      "Check every squarefree character pair against its modulus bound.");

  m.def(
      "sample_admissible_triples",
      [](uint64_t q, size_t count, uint64_t seed) {
        qpr::FieldCtx ctx(q);
        std::vector<std::tuple<uint64_t, uint64_t, uint64_t>> out;
        for (const qpr::Triple& t :
             qpr::sample_admissible_triples(ctx, count, seed))
          out.emplace_back(t.a, t.b, t.c);
        return out;
      },
      py::arg("q"), py::arg("count") = 20, py::arg("seed") = 42,
      "Deterministic admissible (a, b, c) samples for audits.");

  m.def(
      "classify_survivor",
      [](uint64_t q, int workers) {
        qpr::FieldCtx ctx(q);
        qpr::ClassifyResult res = qpr::classify_survivor(ctx, workers);
        py::dict d;
        d["q"] = res.q;
        d["verified"] = res.verified;
        d["method"] = res.method;
        d["witness"] = res.witness ? py::object(triple_dict(*res.witness))
                                   : py::object(py::none());
        d["elapsed_seconds"] = res.elapsed_seconds;
        return d;
      },
      py::arg("q"), py::arg("workers") = 1,
      "Final verdict for one q: cosets first for odd q, checker fallback.");
}
