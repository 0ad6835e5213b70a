#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace detcalc {

/// A (width, height) pair; the unit (normalized or pixel) is carried by
/// the surrounding AnchorSet.
struct Dims {
    double w = 0.0;
    double h = 0.0;

    friend bool operator==(const Dims&, const Dims&) = default;
};

enum class AnchorUnit { Normalized, Pixel };

/// Clustered anchor priors, sorted ascending by area.
struct AnchorSet {
    std::vector<Dims> anchors;
    AnchorUnit unit = AnchorUnit::Normalized;
    int reference_width = 608; ///< meaningful when unit == Pixel
    int reference_height = 608;
};

struct ClusterResult {
    AnchorSet anchors;
    int iterations = 0;
    double mean_distance = 0.0; ///< mean 1 - IoU over boxes at convergence
    /// Total within-cluster distance measured at each assignment step.
    std::vector<double> objective_history;
};

/// IoU of two boxes that share a common center: the smaller footprint in
/// each axis bounds the intersection.
double anchor_iou(Dims a, Dims b);

/// Lloyd-style k-means over box dimensions under d = 1 - anchor_iou.
/// Seeding is k-means++ weighted by d and driven by `seed` after a
/// canonical sort of the inputs, so permutations of `boxes` cannot change
/// the result. Assignment ties go to the lowest centroid index; centroids
/// update to the arithmetic mean of their members; a cluster left empty is
/// re-seeded on the box farthest from its current centroid. Stops when the
/// assignment vector repeats or after `max_iters` iterations.
/// Throws InsufficientBoxes when boxes.size() < k.
ClusterResult cluster_anchors(std::vector<Dims> boxes, int k, std::uint64_t seed,
                              int max_iters = 300);

/// Scales a normalized anchor set to pixels of a reference resolution.
AnchorSet to_pixels(const AnchorSet& set, int width_px, int height_px);

/// Darknet convention: `w,h, w,h, ...`. Pixel anchors print as rounded
/// integers, normalized ones with 6 decimals.
std::string darknet_anchor_line(const AnchorSet& set);

} // namespace detcalc
