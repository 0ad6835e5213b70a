#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "detcalc/records.hpp"

namespace detcalc::testsupport {

/// Literal transcription of the line-separation loop, kept deliberately
/// naive: sort once by x_center, then repeatedly band on the first
/// remaining element and sweep k from N down to 1, erasing members as
/// they join. The membership test is on the candidate's vertical center.
inline std::vector<std::vector<Detection>> reference_separation(std::vector<Detection> dets) {
    std::sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
        return std::tie(a.box.x_center, a.box.y_center, a.class_id) <
               std::tie(b.box.x_center, b.box.y_center, b.class_id);
    });
    std::vector<std::vector<Detection>> result;
    std::size_t n = dets.size();
    while (n != 0) {
        const double y_min = dets[0].box.y_center - 0.5 * dets[0].box.height;
        const double y_max = dets[0].box.y_center + 0.5 * dets[0].box.height;
        std::vector<Detection> eq;
        for (std::size_t k = n; k >= 1; --k) {
            const Detection candidate = dets[k - 1];
            if (y_min <= candidate.box.y_center && candidate.box.y_center <= y_max) {
                eq.insert(eq.begin(), candidate);
                dets.erase(dets.begin() + static_cast<std::ptrdiff_t>(k - 1));
                --n;
            }
        }
        result.push_back(std::move(eq));
    }
    return result;
}

} // namespace detcalc::testsupport
