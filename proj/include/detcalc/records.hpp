#pragma once

#include <string>
#include <vector>

#include "detcalc/box.hpp"
#include "detcalc/classes.hpp"

namespace detcalc {

/// A detector output: predicted class, box and confidence score.
struct Detection {
    int class_id = 0;
    Box box;
    double confidence = 0.0;

    friend bool operator==(const Detection&, const Detection&) = default;
};

/// An annotated object: true class and box.
struct GroundTruthObject {
    int class_id = 0;
    Box box;

    friend bool operator==(const GroundTruthObject&, const GroundTruthObject&) = default;
};

/// One annotated image: id, pixel dimensions and its objects.
struct Scene {
    std::string image_id;
    int width_px = 608;
    int height_px = 608;
    std::vector<GroundTruthObject> objects;
};

} // namespace detcalc
