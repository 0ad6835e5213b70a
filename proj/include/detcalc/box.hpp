#pragma once

#include <algorithm>

namespace detcalc {

/// Axis-aligned bounding box in center form. All four values are fractions
/// of the image: centers in [0, 1], dimensions in (0, 1]. Corner coordinates
/// are derived on demand and may poke outside [0, 1] for boxes near the
/// border; the stored center-form values are never mutated.
struct Box {
    double x_center = 0.0;
    double y_center = 0.0;
    double width = 0.0;
    double height = 0.0;

    double left() const { return x_center - 0.5 * width; }
    double right() const { return x_center + 0.5 * width; }
    double top() const { return y_center - 0.5 * height; }
    double bottom() const { return y_center + 0.5 * height; }
    double area() const { return width * height; }

    friend bool operator==(const Box&, const Box&) = default;
};

inline bool valid_box(const Box& b) {
    return b.x_center >= 0.0 && b.x_center <= 1.0 && b.y_center >= 0.0 && b.y_center <= 1.0 &&
           b.width > 0.0 && b.width <= 1.0 && b.height > 0.0 && b.height <= 1.0;
}

/// Intersection over union of two boxes, computed in corner form.
/// Disjoint boxes score 0; identical boxes score 1.
inline double iou(const Box& a, const Box& b) {
    const double ix = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
    const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return inter / uni;
}

} // namespace detcalc
