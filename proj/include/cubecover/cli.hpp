#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubecover/decomposition.hpp"
#include "cubecover/finder.hpp"
#include "cubecover/verifier.hpp"

namespace cubecover::cli {

using nlohmann::json;

/// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
/// 2 input or premise error, 3 retry budget exhausted.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

json essentiality_to_json(const EssentialityReport& rep);
json check_report_to_json(const CheckReport& rep);
json four_way_to_json(const FourWayDecomposition& d);
json finder_outcome_to_json(const FinderOutcome& o);

}  // namespace cubecover::cli
