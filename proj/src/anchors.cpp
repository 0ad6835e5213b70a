#include "detcalc/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "detcalc/errors.hpp"
#include "detcalc/rng.hpp"

namespace detcalc {

double anchor_iou(Dims a, Dims b) {
    const double inter = std::min(a.w, b.w) * std::min(a.h, b.h);
    return inter / (a.w * a.h + b.w * b.h - inter);
}

namespace {

double distance(Dims box, Dims centroid) { return 1.0 - anchor_iou(box, centroid); }

/// k-means++ seeding under the 1 - IoU metric: first centroid uniform,
/// each further centroid drawn with probability proportional to the
/// squared distance from the nearest centroid chosen so far.
std::vector<Dims> seed_centroids(const std::vector<Dims>& boxes, int k, Rng& rng) {
    std::vector<Dims> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    centroids.push_back(boxes[rng.uniform_index(boxes.size())]);

    std::vector<double> nearest(boxes.size(), 0.0);
    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            double best = distance(boxes[i], centroids[0]);
            for (std::size_t c = 1; c < centroids.size(); ++c) {
                best = std::min(best, distance(boxes[i], centroids[c]));
            }
            nearest[i] = best * best;
            total += nearest[i];
        }
        if (total <= 0.0) {
            // All remaining boxes coincide with a centroid; any choice works.
            centroids.push_back(boxes[rng.uniform_index(boxes.size())]);
            continue;
        }
        double target = rng.uniform() * total;
        std::size_t pick = boxes.size() - 1;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            target -= nearest[i];
            if (target <= 0.0) {
                pick = i;
                break;
            }
        }
        centroids.push_back(boxes[pick]);
    }
    return centroids;
}

} // namespace

ClusterResult cluster_anchors(std::vector<Dims> boxes, int k, std::uint64_t seed, int max_iters) {
    if (k < 1) throw InsufficientBoxes(boxes.size(), k);
    if (boxes.size() < static_cast<std::size_t>(k)) throw InsufficientBoxes(boxes.size(), k);

    // Canonical input order so the seeded initialization is permutation
    // invariant.
    std::sort(boxes.begin(), boxes.end(),
              [](Dims a, Dims b) { return std::tie(a.w, a.h) < std::tie(b.w, b.h); });

    Rng rng(seed);
    std::vector<Dims> centroids = seed_centroids(boxes, k, rng);

    ClusterResult result;
    std::vector<int> assignment(boxes.size(), -1);
    std::vector<int> previous;
    std::vector<int> previous2;

    for (int iter = 0; iter < max_iters; ++iter) {
        // Assignment: nearest centroid, ties to the lowest index.
        double objective = 0.0;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            int best = 0;
            double best_d = distance(boxes[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double d = distance(boxes[i], centroids[static_cast<std::size_t>(c)]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assignment[i] = best;
            objective += best_d;
        }
        result.objective_history.push_back(objective);
        result.iterations = iter + 1;
        // Fixpoint, or a period-2 limit cycle (duplicate-heavy inputs can
        // flip between a mean centroid and a bit-identical repaired one).
        if (assignment == previous || assignment == previous2) break;
        previous2 = std::move(previous);
        previous = assignment;

        // Update: arithmetic mean of each cluster's members.
        std::vector<double> sum_w(static_cast<std::size_t>(k), 0.0);
        std::vector<double> sum_h(static_cast<std::size_t>(k), 0.0);
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            const auto c = static_cast<std::size_t>(assignment[i]);
            sum_w[c] += boxes[i].w;
            sum_h[c] += boxes[i].h;
            ++count[c];
        }
        for (int c = 0; c < k; ++c) {
            const auto ci = static_cast<std::size_t>(c);
            if (count[ci] > 0) {
                centroids[ci] = {sum_w[ci] / count[ci], sum_h[ci] / count[ci]};
            } else {
                // Re-seed on the box farthest from its current centroid.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < boxes.size(); ++i) {
                    const double d =
                        distance(boxes[i], centroids[static_cast<std::size_t>(assignment[i])]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                centroids[ci] = boxes[far];
            }
        }
    }

    result.mean_distance =
        boxes.empty() ? 0.0 : result.objective_history.back() / static_cast<double>(boxes.size());

    std::sort(centroids.begin(), centroids.end(), [](Dims a, Dims b) {
        return std::make_tuple(a.w * a.h, a.w, a.h) < std::make_tuple(b.w * b.h, b.w, b.h);
    });
    result.anchors.anchors = std::move(centroids);
    result.anchors.unit = AnchorUnit::Normalized;
    return result;
}

AnchorSet to_pixels(const AnchorSet& set, int width_px, int height_px) {
    AnchorSet out = set;
    if (set.unit == AnchorUnit::Pixel) return out;
    for (auto& a : out.anchors) {
        a.w *= width_px;
        a.h *= height_px;
    }
    out.unit = AnchorUnit::Pixel;
    out.reference_width = width_px;
    out.reference_height = height_px;
    return out;
}

std::string darknet_anchor_line(const AnchorSet& set) {
    std::string line;
    char buf[64];
    for (std::size_t i = 0; i < set.anchors.size(); ++i) {
        if (i > 0) line += ", ";
        if (set.unit == AnchorUnit::Pixel) {
            std::snprintf(buf, sizeof(buf), "%ld,%ld", std::lround(set.anchors[i].w),
                          std::lround(set.anchors[i].h));
        } else {
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f", set.anchors[i].w, set.anchors[i].h);
        }
        line += buf;
    }
    return line;
}

} // namespace detcalc
