#pragma once

#include <map>
#include <string>
#include <vector>

#include "detcalc/records.hpp"

namespace detcalc {

enum class DetLabel { TP, FP };

/// Outcome of matching one class's detections against ground truth in a
/// single image. `outcomes` lists detections of the class in the
/// descending-confidence order they were processed; `gt_matched` is
/// parallel to the input ground-truth list (entries of other classes stay
/// false and are not counted). TP = matched ground truths, FN = class
/// ground truths - TP.
struct MatchResult {
    struct DetectionOutcome {
        std::size_t det_index; ///< index into the input detection list
        DetLabel label;
        int gt_index; ///< matched ground-truth index, -1 for FP
    };

    std::vector<DetectionOutcome> outcomes;
    std::vector<bool> gt_matched;
    int tp = 0;
    int fp = 0;
    int fn = 0;
};

/// Greedy matching: detections of `class_id` in descending confidence
/// order each claim the unmatched same-class ground truth of highest IoU;
/// the claim counts as TP only when that IoU strictly exceeds
/// `iou_threshold`, otherwise the detection is an FP and the ground truth
/// stays available. IoU ties pick the lowest ground-truth index.
MatchResult match_detections(const std::vector<Detection>& dets,
                             const std::vector<GroundTruthObject>& gts, double iou_threshold,
                             int class_id);

struct PRPoint {
    double recall = 0.0;
    double precision = 0.0;
};

/// One (recall, precision) point per detection, in descending-confidence
/// order; recall is non-decreasing along the curve.
struct PRCurve {
    std::vector<PRPoint> points;
};

using ImageId = std::string;

/// Detections pooled across images, each tagged with its source image.
using PooledDetections = std::vector<std::pair<Detection, ImageId>>;
using GroundTruthByImage = std::map<ImageId, std::vector<GroundTruthObject>>;

/// Pools all detections of `class_id`, sorts them by descending confidence
/// and accumulates TP/FP counts under per-image greedy matching.
/// Throws EmptyGroundTruth when the class has no ground-truth instance.
PRCurve pr_curve(const PooledDetections& dets, const GroundTruthByImage& gts,
                 double iou_threshold, int class_id);

/// 11-point interpolated average precision: the mean over recall levels
/// 0.0, 0.1, ..., 1.0 of the maximum precision among curve points whose
/// recall is >= the level (0 when no point qualifies).
double average_precision_11pt(const PRCurve& curve);

struct ClassEval {
    int class_id = 0;
    double ap = 0.0;
    int tp = 0;
    int fp = 0;
    int fn = 0;
    PRCurve curve;
};

/// Per-class APs and their mean. Classes without ground-truth instances
/// are excluded from the mean and listed in `excluded_classes`.
struct EvalReport {
    double iou_threshold = 0.5;
    double map = 0.0;
    std::vector<ClassEval> per_class;
    std::vector<int> excluded_classes;
};

using DetectionsByImage = std::map<ImageId, std::vector<Detection>>;

/// Full evaluation at one IoU threshold. Throws NoGroundTruthAtAll when
/// `gts` contains no objects.
EvalReport evaluate_map(const DetectionsByImage& dets, const GroundTruthByImage& gts,
                        double iou_threshold = 0.5);

/// JSON document for the report, keys in fixed order:
/// {"iou_threshold", "map", "excluded_classes", "per_class": [{"class_id",
/// "ap", "tp", "fp", "fn", "pr_curve": [[recall, precision], ...]}]}.
std::string eval_report_to_json(const EvalReport& report, int indent = 2);

/// Deterministic global ordering for pooled detections: descending
/// confidence, ties broken by image id, then box geometry.
bool pooled_detection_before(const std::pair<Detection, ImageId>& a,
                             const std::pair<Detection, ImageId>& b);

} // namespace detcalc
