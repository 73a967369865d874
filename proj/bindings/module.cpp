// Python bindings: pair construction (JSON or catalog), verdicts, subgroup
// surveys and orientation sweeps.  Structured results cross the boundary as
// JSON strings; the package __init__ turns them into dictionaries.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prosmooth/catalog.hpp"
#include "prosmooth/json_io.hpp"
#include "prosmooth/report.hpp"

namespace py = pybind11;
namespace ps = prosmooth;

namespace {

ps::CyclotomicPair pair_from_text(const std::string& text, unsigned precision) {
  try {
    return ps::pair_from_json(ps::Json::parse(text), precision);
  } catch (const ps::Json::parse_error& e) {
    throw ps::bad_parameters(std::string("pair JSON does not parse: ") +
                             e.what());
  }
}

std::string verdict_text(const ps::Verdict& v) {
  return ps::dump_report(ps::verdict_to_json(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Kummerian / 1-smooth verdicts for oriented pro-p presentations "
      "at finite precision";

  py::register_exception<ps::error>(m, "Error");

  py::enum_<ps::Outcome>(m, "Outcome")
      .value("certified_yes", ps::Outcome::certified_yes)
      .value("certified_no", ps::Outcome::certified_no)
      .value("undecided", ps::Outcome::undecided);

  py::class_<ps::CocycleWitness>(m, "CocycleWitness")
      .def_readonly("level", &ps::CocycleWitness::level)
      .def_readonly("missed", &ps::CocycleWitness::missed)
      .def_readonly("torsion_exponent", &ps::CocycleWitness::torsion_exponent);

  py::class_<ps::SubgroupWitness>(m, "SubgroupWitness")
      .def_readonly("phi_chain", &ps::SubgroupWitness::phi_chain)
      .def_readonly("inner", &ps::SubgroupWitness::inner);

  py::class_<ps::Verdict>(m, "Verdict")
      .def_readonly("outcome", &ps::Verdict::outcome)
      .def_readonly("level", &ps::Verdict::level)
      .def_readonly("passed_levels", &ps::Verdict::passed_levels)
      .def_readonly("certificate", &ps::Verdict::certificate)
      .def_readonly("cocycle_witness", &ps::Verdict::cocycle_witness)
      .def_readonly("subgroup_witness", &ps::Verdict::subgroup_witness)
      .def_property_readonly("is_yes", &ps::Verdict::is_yes)
      .def_property_readonly("is_no", &ps::Verdict::is_no)
      .def_property_readonly("is_undecided", &ps::Verdict::is_undecided)
      .def("to_json", &verdict_text)
      .def("__repr__", [](const ps::Verdict& v) {
        return "<Verdict " + ps::outcome_display(v.outcome) + " level=" +
               std::to_string(v.level) + ">";
      });

  py::class_<ps::CyclotomicPair>(m, "Pair")
      .def_static("from_json", &pair_from_text, py::arg("text"),
                  py::arg("precision") = 3,
                  "Build a pair from pair-file JSON text")
      .def_property_readonly("p", &ps::CyclotomicPair::p)
      .def_property_readonly("precision", &ps::CyclotomicPair::precision)
      .def_property_readonly("rank", &ps::CyclotomicPair::rank)
      .def_property_readonly("generators",
                             [](const ps::CyclotomicPair& pair) {
                               return pair.presentation.gens.names();
                             })
      .def_property_readonly("relators",
                             [](const ps::CyclotomicPair& pair) {
                               std::vector<std::string> out;
                               for (const ps::Word& r :
                                    pair.presentation.relators)
                                 out.push_back(ps::print_word(r));
                               return out;
                             })
      .def("to_json",
           [](const ps::CyclotomicPair& pair) {
             return ps::dump_report(ps::pair_to_json(pair));
           })
      .def("kummerian",
           [](const ps::CyclotomicPair& pair, unsigned n) {
             return ps::kummerian_verdict(pair, n);
           },
           py::arg("n") = 3)
      .def("smooth",
           [](const ps::CyclotomicPair& pair, unsigned k, unsigned n) {
             return ps::smooth_check(pair, k, n);
           },
           py::arg("k") = 1, py::arg("n") = 3)
      .def("theta_abelian",
           [](const ps::CyclotomicPair& pair) {
             return ps::theta_abelian_certify(pair);
           })
      .def("subgroups",
           [](const ps::CyclotomicPair& pair) {
             std::vector<std::vector<std::uint64_t>> out;
             for (const ps::IndexPSubgroup& U : ps::enumerate_index_p(pair))
               out.push_back(U.phi);
             return out;
           })
      .def("rewrite",
           [](const ps::CyclotomicPair& pair,
              const std::vector<std::uint64_t>& phi, bool simplify) {
             ps::RewriteOptions opt;
             opt.simplify = simplify;
             ps::RewrittenPair rw =
                 ps::rewrite(pair, ps::IndexPSubgroup{phi}, opt);
             std::vector<std::string> embeddings;
             for (const ps::Word& w : rw.embeddings)
               embeddings.push_back(ps::print_word(w));
             return py::make_tuple(rw.pair, embeddings);
           },
           py::arg("phi"), py::arg("simplify") = true,
           "Rewrite the index-p subgroup named by phi; returns "
           "(subgroup pair, generator embeddings as parent words)")
      .def("survey",
           [](const ps::CyclotomicPair& pair, unsigned k, unsigned n) {
             return ps::dump_report(ps::survey_to_json(
                 ps::smooth_survey(pair, k, n), pair.p()));
           },
           py::arg("k") = 1, py::arg("n") = 3)
      .def("module_invariants",
           [](const ps::CyclotomicPair& pair, unsigned n) {
             ps::ThetaAbModule mod = ps::theta_ab_module(pair, n);
             ps::Json rows = ps::Json::array();
             for (std::size_t i = 0; i < mod.matrix.rows(); ++i)
               rows.push_back(mod.matrix.row(i));
             return ps::dump_report(
                 ps::Json{{"matrix", rows},
                          {"invariants", mod.profile.exps},
                          {"precision", mod.precision},
                          {"theta_kernel", mod.in_kernel},
                          {"torsion_certificate",
                           mod.has_torsion_certificate()}});
           },
           py::arg("n") = 3)
      .def("__repr__", [](const ps::CyclotomicPair& pair) {
        return "<Pair rank=" + std::to_string(pair.rank()) + " p=" +
               std::to_string(pair.p()) + " precision=" +
               std::to_string(pair.precision()) + ">";
      });

  m.def("catalog_ids", &ps::catalog_ids);
  m.def(
      "catalog",
      [](const std::string& id, std::uint64_t p, unsigned n, unsigned s,
         unsigned r, long long d, long long rho, std::size_t rank,
         std::uint64_t tval, bool trivial_theta) {
        ps::CatalogParams params;
        params.p = p;
        params.n = n;
        params.s = s;
        params.r = r;
        params.d = d;
        params.rho = rho;
        params.rank = rank;
        params.tval = tval;
        params.trivial_theta = trivial_theta;
        return ps::catalog_build(id, params);
      },
      py::arg("id"), py::arg("p") = 3, py::arg("n") = 3, py::arg("s") = 1,
      py::arg("r") = 0, py::arg("d") = 0, py::arg("rho") = 1,
      py::arg("rank") = 2, py::arg("tval") = 1,
      py::arg("trivial_theta") = false);
  m.def(
      "sweep",
      [](const ps::CyclotomicPair& pair, unsigned n,
         const std::string& predicate, unsigned index_bound,
         unsigned long long cap) {
        ps::SweepPredicate pred;
        if (predicate == "kummerian")
          pred = ps::SweepPredicate::kummerian;
        else if (predicate == "smooth")
          pred = ps::SweepPredicate::smooth;
        else
          throw ps::bad_parameters("predicate must be kummerian or smooth");
        return ps::dump_report(ps::sweep_to_json(ps::orientation_sweep(
            pair.presentation, n, pred, index_bound, cap)));
      },
      py::arg("pair"), py::arg("n") = 2, py::arg("predicate") = "kummerian",
      py::arg("index_bound") = 1, py::arg("cap") = 1'000'000);
}
