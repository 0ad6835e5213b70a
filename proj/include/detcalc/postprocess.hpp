#pragma once

#include <array>
#include <filesystem>
#include <utility>
#include <vector>

#include "detcalc/records.hpp"

namespace detcalc {

/// One prediction head's grid geometry. Detectors in this family predict
/// at side lengths 19, 38 and 76 with 3 boxes per cell.
struct GridSpec {
    int s = 19;
    int boxes_per_cell = 3;
};

/// A raw per-cell prediction with activations already applied: the box
/// center relative to its cell, dimensions normalized to the image, an
/// objectness score (object probability folded together with predicted
/// localization quality) and conditional class probabilities.
struct CellPrediction {
    int row = 0;
    int col = 0;
    double rel_x = 0.0;
    double rel_y = 0.0;
    double norm_w = 0.0;
    double norm_h = 0.0;
    double objectness = 0.0;
    std::array<double, kNumClasses> class_probs{};
};

/// Grid-to-image decoding: x_center = (col + rel_x) / S,
/// y_center = (row + rel_y) / S; dimensions pass through.
Box decode_cell(const CellPrediction& p, const GridSpec& g);

/// Class-specific confidence scores: class_probs[i] * objectness.
std::array<double, kNumClasses> class_scores(const CellPrediction& p);

/// Class-wise non-maximum suppression: per class, keep the
/// highest-confidence detection and suppress same-class detections whose
/// IoU with any kept box exceeds `iou_threshold`. Output is sorted by
/// descending confidence (ties by class id, then box geometry), so the
/// result does not depend on input order.
std::vector<Detection> nms(std::vector<Detection> dets, double iou_threshold);

/// Decode + argmax class + confidence threshold + NMS for a single grid.
/// A cell survives when its best class score is >= conf_threshold.
std::vector<Detection> finalize(const std::vector<CellPrediction>& cells, const GridSpec& g,
                                double conf_threshold, double nms_threshold);

/// Same pipeline for predictions pooled from several grids (multi-scale
/// heads); suppression runs jointly across scales.
std::vector<Detection> finalize(const std::vector<std::pair<CellPrediction, GridSpec>>& cells,
                                double conf_threshold, double nms_threshold);

/// JSON-lines reader: one object per line with keys "s", "row", "col",
/// "rel_x", "rel_y", "norm_w", "norm_h", "objectness", "class_probs"
/// (array of 18). Blank lines are skipped.
std::vector<std::pair<CellPrediction, GridSpec>>
read_cell_predictions(const std::filesystem::path& jsonl_path);

} // namespace detcalc
