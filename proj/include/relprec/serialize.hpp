#pragma once

#include "relprec/analyzer.hpp"
#include "relprec/model.hpp"

#include <json.hpp>

namespace relprec {

using ordered_json = nlohmann::ordered_json;

// Rationals serialize as exact "num/den" strings so every reported number
// round-trips bit-exactly.
ordered_json to_json(const Rational& r);
Rational rational_from_json(const ordered_json& j);

ordered_json to_json(const Enclosure& e);

ordered_json to_json(const RpJudgment& j);
ordered_json to_json(const ApJudgment& j);

/// Reconstructs a judgment record. Invariants are revalidated (the defining
/// inequality is re-checked); corrupt records throw std::invalid_argument.
RpJudgment rp_judgment_from_json(const ordered_json& j, WorkBudget wb = {});
ApJudgment ap_judgment_from_json(const ordered_json& j);

ordered_json to_json(const ModelReport& r);
ordered_json to_json(const InnerProductReport& r);
ordered_json to_json(const InnerProductTrace& t);
ordered_json to_json(const NodeAnalysis& n);
ordered_json to_json(const AnalysisResult& r);
ordered_json to_json(const BoundComparison& c);

/// SignEnv file format: { "x": {"sign": "pos"|"neg"|"unknown",
/// "range": ["num/den","num/den"]?, "input_alpha": "num/den"?}, ... }
SignEnv sign_env_from_json(const ordered_json& j);
ordered_json to_json(const SignEnv& env);

}  // namespace relprec
