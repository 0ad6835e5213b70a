#pragma once

#include <json.hpp>

#include "detcalc/metrics.hpp"

namespace detcalc {

/// Report document with keys in fixed order: iou_threshold, map,
/// excluded_classes, per_class.
nlohmann::ordered_json eval_report_json(const EvalReport& report);

} // namespace detcalc
