#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "rcrt/exact_crt.hpp"
#include "rcrt/grouping.hpp"
#include "rcrt/multistage.hpp"
#include "rcrt/robust_single.hpp"
#include "rcrt/simulation.hpp"

namespace py = pybind11;
using namespace rcrt;

// Python int <-> Integer, Fraction <- Rational, sequences -> ModuliSet,
// nested lists <-> GroupTree.
namespace pybind11::detail {

template <>
struct type_caster<Integer> {
  PYBIND11_TYPE_CASTER(Integer, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    value = Integer(py::str(src).cast<std::string>());
    return true;
  }
  static handle cast(const Integer& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (PyLong_Check(src.ptr())) {
      value = Rational(src.cast<Integer>());
      return true;
    }
    const py::object fraction = py::module_::import("fractions").attr("Fraction");
    if (!py::isinstance(src, fraction)) return false;
    value = Rational(src.attr("numerator").cast<Integer>(),
                     src.attr("denominator").cast<Integer>());
    return true;
  }
  static handle cast(const Rational& v, return_value_policy, handle) {
    const py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::cast(v.num()), py::cast(v.den())).release();
  }
};

template <>
struct type_caster<ModuliSet> {
  PYBIND11_TYPE_CASTER(ModuliSet, const_name("list[int]"));
  type_caster() : value(ModuliSet{1}) {}

  bool load(handle src, bool convert) {
    make_caster<std::vector<Integer>> inner;
    if (!inner.load(src, convert)) return false;
    value = ModuliSet(cast_op<std::vector<Integer>&&>(std::move(inner)));
    return true;
  }
  static handle cast(const ModuliSet& v, return_value_policy, handle) {
    py::list out;
    for (const auto& m : v) out.append(py::cast(m));
    return out.release();
  }
};

template <>
struct type_caster<GroupTree> {
  PYBIND11_TYPE_CASTER(GroupTree, const_name("list"));
  type_caster() : value(GroupTree::leaf({0})) {}

  bool load(handle src, bool) {
    if (!py::isinstance<py::list>(src) && !py::isinstance<py::tuple>(src) &&
        !py::isinstance<py::str>(src)) {
      return false;
    }
    const std::string text = py::isinstance<py::str>(src)
                                 ? src.cast<std::string>()
                                 : py::module_::import("json").attr("dumps")(src).cast<std::string>();
    value = GroupTree::parse(text);
    return true;
  }
  static handle cast(const GroupTree& v, return_value_policy, handle) {
    return py::module_::import("json").attr("loads")(v.to_json()).release();
  }
};

}  // namespace pybind11::detail

namespace {

py::object inconsistent_type;

template <class T>
T unwrap(Outcome<T> res) {
  if (res.ok()) return std::move(res).value();
  const Inconsistent& e = res.error();
  py::object err = inconsistent_type(e.detail);
  err.attr("kind") = to_string(e.kind);
  err.attr("detail") = e.detail;
  err.attr("raw") = e.raw ? py::cast(*e.raw) : py::none();
  PyErr_SetObject(inconsistent_type.ptr(), err.ptr());
  throw py::error_already_set();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robust Chinese remainder reconstruction over arbitrary moduli.";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  inconsistent_type = py::reinterpret_borrow<py::object>(
      PyErr_NewException("robust_crt._core.Inconsistent", PyExc_ValueError, nullptr));
  m.attr("Inconsistent") = inconsistent_type;

  py::class_<Bound>(m, "Bound")
      .def_readonly("value", &Bound::value)
      .def_readonly("strict", &Bound::strict)
      .def("admits", &Bound::admits)
      .def("__repr__", [](const Bound& b) { return "Bound(" + b.str() + ")"; });

  py::class_<BoundsReport>(m, "BoundsReport")
      .def_readonly("theta", &BoundsReport::theta)
      .def_readonly("reference", &BoundsReport::reference)
      .def_readonly("per_remainder", &BoundsReport::per_remainder);

  py::class_<FoldingSolution>(m, "FoldingSolution")
      .def_readonly("folding", &FoldingSolution::folding)
      .def_readonly("estimate", &FoldingSolution::estimate)
      .def_readonly("reference", &FoldingSolution::reference)
      .def("__eq__", [](const FoldingSolution& a, const FoldingSolution& b) { return a == b; });

  py::class_<StageBounds>(m, "StageBounds")
      .def_readonly("per_group", &StageBounds::per_group)
      .def_readonly("cross", &StageBounds::cross)
      .def_readonly("internal", &StageBounds::internal)
      .def_readonly("per_leaf_effective", &StageBounds::per_leaf_effective);

  py::class_<StageSolution>(m, "StageSolution")
      .def_readonly("group_estimates", &StageSolution::group_estimates)
      .def_readonly("node_estimates", &StageSolution::node_estimates)
      .def_readonly("leaf_folding", &StageSolution::leaf_folding)
      .def_readonly("leaf_lift", &StageSolution::leaf_lift)
      .def_readonly("final", &StageSolution::final);

  py::class_<ReferenceGroupBounds>(m, "ReferenceGroupBounds")
      .def_readonly("stage", &ReferenceGroupBounds::stage)
      .def_readonly("reference_group", &ReferenceGroupBounds::reference_group)
      .def_readonly("caps", &ReferenceGroupBounds::caps);

  py::class_<CandidateSet>(m, "CandidateSet")
      .def(py::init<std::size_t, std::vector<std::size_t>>(), py::arg("anchor"),
           py::arg("members"))
      .def_readonly("anchor", &CandidateSet::anchor)
      .def_readonly("members", &CandidateSet::members)
      .def("__repr__", [](const CandidateSet& c) {
        return "CandidateSet(anchor=" + std::to_string(c.anchor) + ")";
      });

  py::class_<GroupingProposal>(m, "GroupingProposal")
      .def_property_readonly("verdict",
                             [](const GroupingProposal& p) { return to_string(p.verdict); })
      .def_readonly("theta", &GroupingProposal::theta)
      .def_readonly("kept", &GroupingProposal::kept)
      .def_readonly("removed", &GroupingProposal::removed)
      .def_readonly("groups", &GroupingProposal::groups)
      .def_readonly("bounds", &GroupingProposal::bounds)
      .def_readonly("covers_considered", &GroupingProposal::covers_considered)
      .def_readonly("used_shared_reference", &GroupingProposal::used_shared_reference)
      .def("tree", &GroupingProposal::tree);

  py::class_<TrialStats>(m, "TrialStats")
      .def_readonly("tau", &TrialStats::tau)
      .def_readonly("trials", &TrialStats::trials)
      .def_readonly("mean_abs_error", &TrialStats::mean_abs_error)
      .def_readonly("max_abs_error", &TrialStats::max_abs_error)
      .def_readonly("bound", &TrialStats::bound)
      .def_readonly("in_regime", &TrialStats::in_regime)
      .def_readonly("violations", &TrialStats::violations)
      .def_readonly("folding_failures", &TrialStats::folding_failures);

  m.def("lcm", [](const ModuliSet& ms) { return ms.lcm(); }, py::arg("moduli"));
  m.def("remainders_of", &remainders_of, py::arg("n"), py::arg("moduli"));
  m.def(
      "crt_general",
      [](std::vector<Integer> residues, std::vector<Integer> moduli) {
        return crt_general(CongruenceSystem(std::move(residues), std::move(moduli)));
      },
      py::arg("residues"), py::arg("moduli"));

  m.def("theta_bound", &theta_bound, py::arg("moduli"));
  m.def("select_reference", &select_reference, py::arg("moduli"));
  m.def(
      "per_remainder_bounds",
      [](const ModuliSet& ms, std::optional<std::size_t> k) {
        return per_remainder_bounds(ms, k.value_or(select_reference(ms)));
      },
      py::arg("moduli"), py::arg("reference") = py::none());
  m.def("prune_redundant", &prune_redundant, py::arg("moduli"));
  m.def(
      "solve_folding",
      [](const ModuliSet& ms, const std::vector<Integer>& rt, std::optional<std::size_t> k) {
        return unwrap(solve_folding(ms, rt, k.value_or(select_reference(ms))));
      },
      py::arg("moduli"), py::arg("remainders"), py::arg("reference") = py::none());

  m.def("stage_bounds", &stage_bounds, py::arg("tree"), py::arg("moduli"));
  m.def("per_group_reference_bounds", &per_group_reference_bounds, py::arg("tree"),
        py::arg("moduli"));
  m.def(
      "reconstruct_tree",
      [](const ModuliSet& ms, const std::vector<Integer>& rt, const GroupTree& tree) {
        return unwrap(reconstruct_tree(ms, rt, tree));
      },
      py::arg("moduli"), py::arg("remainders"), py::arg("tree"));
  m.def(
      "fused_error_bound",
      [](const std::vector<Rational>& taus, const std::vector<std::size_t>& sizes) {
        return fused_error_bound(taus, sizes);
      },
      py::arg("taus"), py::arg("group_sizes"));

  m.def("candidate_sets", &candidate_sets, py::arg("moduli"));
  m.def("prune_subset_sets", &prune_subset_sets, py::arg("candidates"));
  m.def("minimal_covers", &minimal_covers, py::arg("candidates"), py::arg("moduli"),
        py::arg("cap") = 16);
  m.def(
      "propose_grouping",
      [](const ModuliSet& ms, bool share_reference, std::size_t cover_cap) {
        GroupingOptions opts;
        opts.share_reference = share_reference;
        opts.cover_cap = cover_cap;
        return propose_grouping(ms, opts);
      },
      py::arg("moduli"), py::arg("share_reference") = false, py::arg("cover_cap") = 16);

  m.def(
      "run_trials",
      [](const ModuliSet& ms, unsigned long tau, std::uint64_t trials, std::uint64_t seed,
         std::optional<GroupTree> tree, const std::string& error_model, bool clamp,
         unsigned threads) {
        TrialConfig cfg{ms, std::move(tree)};
        cfg.tau = tau;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.error_model = parse_error_model(error_model);
        cfg.clamp_remainders = clamp;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return run_trials(cfg);
      },
      py::arg("moduli"), py::arg("tau"), py::arg("trials") = 100'000, py::arg("seed") = 1,
      py::arg("tree") = py::none(), py::arg("error_model") = "one-sided",
      py::arg("clamp") = false, py::arg("threads") = 1);
}
