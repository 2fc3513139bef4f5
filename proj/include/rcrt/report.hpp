#pragma once

// JSON renderings of results. Integers that fit in 64 bits are emitted as
// JSON numbers and larger ones as decimal strings; rationals are "p/q".

#include <json.hpp>

#include "rcrt/grouping.hpp"
#include "rcrt/multistage.hpp"
#include "rcrt/outcome.hpp"
#include "rcrt/robust_single.hpp"
#include "rcrt/simulation.hpp"
#include "rcrt/verify.hpp"

namespace rcrt {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& v);
Json to_json(const Rational& v);
Json to_json(const Bound& b);
Json to_json(const ModuliSet& m);
Json to_json(const BoundsReport& b);
Json to_json(const StageBounds& b);
Json to_json(const ReferenceGroupBounds& b);
Json to_json(const FoldingSolution& s);
Json to_json(const StageSolution& s);
Json to_json(const Inconsistent& e);
Json to_json(const GroupingProposal& p, const ModuliSet& moduli);
Json to_json(const TrialStats& s);
Json to_json(const VerificationReport& r);

}  // namespace rcrt
