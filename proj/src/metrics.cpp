#include "detcalc/metrics.hpp"

#include <algorithm>
#include <tuple>

#include "detcalc/errors.hpp"
#include "detcalc/report_json.hpp"

namespace detcalc {

namespace {

std::tuple<double, int, double, double, double, double> det_sort_key(const Detection& d) {
    return {-d.confidence, d.class_id, d.box.x_center, d.box.y_center, d.box.width, d.box.height};
}

/// Claims the unmatched ground truth of `class_id` with highest IoU.
/// Returns the index, or -1 when none is available; ties pick the lowest
/// index.
int best_unmatched_gt(const Detection& det, const std::vector<GroundTruthObject>& gts,
                      const std::vector<bool>& matched, int class_id, double& best_iou) {
    int best = -1;
    best_iou = -1.0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
        if (gts[g].class_id != class_id || matched[g]) continue;
        const double v = iou(det.box, gts[g].box);
        if (v > best_iou) {
            best_iou = v;
            best = static_cast<int>(g);
        }
    }
    return best;
}

} // namespace

bool pooled_detection_before(const std::pair<Detection, ImageId>& a,
                             const std::pair<Detection, ImageId>& b) {
    const auto ka = std::tuple_cat(std::make_tuple(-a.first.confidence, a.second),
                                   det_sort_key(a.first));
    const auto kb = std::tuple_cat(std::make_tuple(-b.first.confidence, b.second),
                                   det_sort_key(b.first));
    return ka < kb;
}

MatchResult match_detections(const std::vector<Detection>& dets,
                             const std::vector<GroundTruthObject>& gts, double iou_threshold,
                             int class_id) {
    MatchResult result;
    result.gt_matched.assign(gts.size(), false);

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < dets.size(); ++i) {
        if (dets[i].class_id == class_id) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dets[a].confidence != dets[b].confidence) {
            return dets[a].confidence > dets[b].confidence;
        }
        return det_sort_key(dets[a]) < det_sort_key(dets[b]);
    });

    for (std::size_t i : order) {
        double best_iou = -1.0;
        const int g = best_unmatched_gt(dets[i], gts, result.gt_matched, class_id, best_iou);
        if (g >= 0 && best_iou > iou_threshold) {
            result.gt_matched[static_cast<std::size_t>(g)] = true;
            result.outcomes.push_back({i, DetLabel::TP, g});
            ++result.tp;
        } else {
            result.outcomes.push_back({i, DetLabel::FP, -1});
            ++result.fp;
        }
    }

    int gt_total = 0;
    for (const auto& g : gts) {
        if (g.class_id == class_id) ++gt_total;
    }
    result.fn = gt_total - result.tp;
    return result;
}

PRCurve pr_curve(const PooledDetections& dets, const GroundTruthByImage& gts,
                 double iou_threshold, int class_id) {
    int gt_total = 0;
    for (const auto& [id, objects] : gts) {
        for (const auto& o : objects) {
            if (o.class_id == class_id) ++gt_total;
        }
    }
    if (gt_total == 0) throw EmptyGroundTruth(class_id);

    std::vector<const std::pair<Detection, ImageId>*> pool;
    for (const auto& entry : dets) {
        if (entry.first.class_id == class_id) pool.push_back(&entry);
    }
    std::sort(pool.begin(), pool.end(),
              [](const auto* a, const auto* b) { return pooled_detection_before(*a, *b); });

    // Per-image matched flags, filled lazily as images appear in the pool.
    std::map<ImageId, std::vector<bool>> matched;
    static const std::vector<GroundTruthObject> kNoObjects;

    PRCurve curve;
    curve.points.reserve(pool.size());
    int tp = 0;
    int fp = 0;
    for (const auto* entry : pool) {
        const auto git = gts.find(entry->second);
        const auto& objects = git != gts.end() ? git->second : kNoObjects;
        auto& flags = matched[entry->second];
        if (flags.size() != objects.size()) flags.assign(objects.size(), false);

        double best_iou = -1.0;
        const int g = best_unmatched_gt(entry->first, objects, flags, class_id, best_iou);
        if (g >= 0 && best_iou > iou_threshold) {
            flags[static_cast<std::size_t>(g)] = true;
            ++tp;
        } else {
            ++fp;
        }
        curve.points.push_back({static_cast<double>(tp) / gt_total,
                                static_cast<double>(tp) / (tp + fp)});
    }
    return curve;
}

double average_precision_11pt(const PRCurve& curve) {
    double sum = 0.0;
    for (int level = 0; level <= 10; ++level) {
        const double r = level / 10.0;
        double best = 0.0;
        for (const auto& p : curve.points) {
            if (p.recall >= r) best = std::max(best, p.precision);
        }
        sum += best;
    }
    return sum / 11.0;
}

EvalReport evaluate_map(const DetectionsByImage& dets, const GroundTruthByImage& gts,
                        double iou_threshold) {
    std::size_t gt_count = 0;
    for (const auto& [id, objects] : gts) gt_count += objects.size();
    if (gt_count == 0) throw NoGroundTruthAtAll();

    PooledDetections pooled;
    for (const auto& [id, image_dets] : dets) {
        for (const auto& d : image_dets) pooled.emplace_back(d, id);
    }

    EvalReport report;
    report.iou_threshold = iou_threshold;

    std::array<int, kNumClasses> gt_per_class{};
    for (const auto& [id, objects] : gts) {
        for (const auto& o : objects) ++gt_per_class[static_cast<std::size_t>(o.class_id)];
    }

    double ap_sum = 0.0;
    int class_count = 0;
    for (int cls = 0; cls < kNumClasses; ++cls) {
        if (gt_per_class[static_cast<std::size_t>(cls)] == 0) {
            report.excluded_classes.push_back(cls);
            continue;
        }
        ClassEval eval;
        eval.class_id = cls;
        eval.curve = pr_curve(pooled, gts, iou_threshold, cls);
        eval.ap = average_precision_11pt(eval.curve);

        // Counts with every detection considered. Per-image matching uses
        // the same ordering and tie rules as the pooled curve, so these
        // agree with the curve's endpoint.
        for (const auto& [id, objects] : gts) {
            const auto dit = dets.find(id);
            static const std::vector<Detection> kNoDets;
            const auto& image_dets = dit != dets.end() ? dit->second : kNoDets;
            const MatchResult m = match_detections(image_dets, objects, iou_threshold, cls);
            eval.tp += m.tp;
            eval.fp += m.fp;
            eval.fn += m.fn;
        }
        for (const auto& [id, image_dets] : dets) {
            if (gts.count(id)) continue; // images without annotations: all FP
            for (const auto& d : image_dets) {
                if (d.class_id == cls) ++eval.fp;
            }
        }

        ap_sum += eval.ap;
        ++class_count;
        report.per_class.push_back(std::move(eval));
    }
    report.map = class_count > 0 ? ap_sum / class_count : 0.0;
    return report;
}

nlohmann::ordered_json eval_report_json(const EvalReport& report) {
    nlohmann::ordered_json doc;
    doc["iou_threshold"] = report.iou_threshold;
    doc["map"] = report.map;
    doc["excluded_classes"] = report.excluded_classes;
    auto& per_class = doc["per_class"];
    per_class = nlohmann::ordered_json::array();
    for (const auto& c : report.per_class) {
        nlohmann::ordered_json entry;
        entry["class_id"] = c.class_id;
        entry["ap"] = c.ap;
        entry["tp"] = c.tp;
        entry["fp"] = c.fp;
        entry["fn"] = c.fn;
        auto& curve = entry["pr_curve"];
        curve = nlohmann::ordered_json::array();
        for (const auto& p : c.curve.points) {
            curve.push_back({p.recall, p.precision});
        }
        per_class.push_back(std::move(entry));
    }
    return doc;
}

std::string eval_report_to_json(const EvalReport& report, int indent) {
    return eval_report_json(report).dump(indent);
}

} // namespace detcalc
