#include "rcrt/report.hpp"

namespace rcrt {

namespace {

template <class T>
Json list(const std::vector<T>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(to_json(v));
  return arr;
}

}  // namespace

Json to_json(const Integer& v) {
  if (fits_int64(v)) return Json(to_int64(v));
  return Json(v.get_str());
}

Json to_json(const Rational& v) { return Json(v.str()); }

Json to_json(const Bound& b) {
  return Json{{"value", b.value.str()}, {"strict", b.strict}};
}

Json to_json(const ModuliSet& m) {
  Json arr = Json::array();
  for (const auto& v : m) arr.push_back(to_json(v));
  return arr;
}

Json to_json(const BoundsReport& b) {
  return Json{{"theta", to_json(b.theta)},
              {"reference", b.reference},
              {"per_remainder", list(b.per_remainder)}};
}

Json to_json(const StageBounds& b) {
  Json j{{"per_group", list(b.per_group)}};
  j["cross"] = b.cross ? to_json(*b.cross) : Json(nullptr);
  j["internal"] = list(b.internal);
  j["per_leaf_effective"] = list(b.per_leaf_effective);
  return j;
}

Json to_json(const ReferenceGroupBounds& b) {
  return Json{{"reference_group", b.reference_group}, {"caps", list(b.caps)}};
}

Json to_json(const FoldingSolution& s) {
  return Json{{"estimate", to_json(s.estimate)},
              {"folding", list(s.folding)},
              {"reference", s.reference}};
}

Json to_json(const StageSolution& s) {
  Json leaf_folding = Json::array();
  for (const auto& f : s.leaf_folding) leaf_folding.push_back(list(f));
  Json node_folding = Json::array();
  for (const auto& f : s.node_folding) node_folding.push_back(list(f));
  return Json{{"estimate", to_json(s.final.estimate)},
              {"folding", list(s.final.folding)},
              {"reference", s.final.reference},
              {"group_estimates", list(s.group_estimates)},
              {"leaf_folding", std::move(leaf_folding)},
              {"leaf_lift", list(s.leaf_lift)},
              {"node_estimates", list(s.node_estimates)},
              {"node_folding", std::move(node_folding)}};
}

Json to_json(const Inconsistent& e) {
  Json j{{"failure", to_string(e.kind)}, {"detail", e.detail}};
  j["raw"] = e.raw ? to_json(*e.raw) : Json(nullptr);
  return j;
}

Json to_json(const GroupingProposal& p, const ModuliSet& moduli) {
  Json groups = Json::array();
  for (const auto& g : p.groups) {
    Json values = Json::array();
    for (auto i : g) values.push_back(to_json(moduli[i]));
    groups.push_back(std::move(values));
  }
  Json removed = Json::array();
  for (auto i : p.removed) removed.push_back(to_json(moduli[i]));
  Json j{{"verdict", to_string(p.verdict)},
         {"theta", to_json(p.theta)},
         {"removed", std::move(removed)},
         {"groups", std::move(groups)},
         {"group_indices", p.groups},
         {"covers_considered", p.covers_considered},
         {"shared_reference", p.used_shared_reference}};
  if (p.verdict == Verdict::success) {
    j["bounds"] = to_json(p.bounds);
  }
  return j;
}

Json to_json(const TrialStats& s) {
  return Json{{"tau", s.tau},
              {"trials", s.trials},
              {"mean_abs_error", s.mean_abs_error.str()},
              {"mean_abs_error_decimal", s.mean_abs_error.to_decimal(6)},
              {"max_abs_error", to_json(s.max_abs_error)},
              {"bound", to_json(s.bound)},
              {"in_regime", s.in_regime},
              {"violations", s.violations},
              {"folding_failures", s.folding_failures}};
}

Json to_json(const VerificationReport& r) {
  Json examples = Json::array();
  for (const auto& e : r.examples) {
    examples.push_back(Json{{"n", to_json(e.n)},
                            {"deltas", list(e.deltas)},
                            {"broken", e.condition_holds ? "sufficiency" : "necessity"}});
  }
  return Json{{"reference", r.reference},
              {"cases", r.cases},
              {"condition_true", r.condition_true},
              {"sufficiency_failures", r.sufficiency_failures},
              {"necessity_failures", r.necessity_failures},
              {"examples", std::move(examples)}};
}

}  // namespace rcrt
