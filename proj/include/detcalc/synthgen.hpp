#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detcalc/records.hpp"

namespace detcalc {

/// Geometry of a generated scene: glyph boxes laid out left to right per
/// expression, expressions stacked top to bottom. Jitter sigmas are
/// fractions of the image (position, additive) or of the glyph size
/// (size, multiplicative); `shear` tilts line baselines by dy per unit x.
struct LayoutSpec {
    double glyph_width = 0.05;
    double glyph_height = 0.08;
    double gap = 0.012;
    double line_gap = 0.06;
    double margin_x = 0.04;
    double margin_y = 0.05;
    double position_sigma = 0.0;
    double size_sigma = 0.0;
    double shear = 0.0;
    int width_px = 608;
    int height_px = 608;
    std::uint64_t seed = 0;
};

/// Detector-noise model applied to a ground-truth scene. The default is
/// the identity: nothing dropped, nothing flipped, boxes untouched and
/// every emitted confidence exactly 1.
struct NoiseSpec {
    double drop_prob = 0.0;
    double spurious_rate = 0.0; ///< expected false boxes per image (Poisson)
    double class_flip_prob = 0.0;
    double box_sigma = 0.0;
    double tp_conf_lo = 1.0;
    double tp_conf_hi = 1.0;
    double fp_conf_lo = 0.25;
    double fp_conf_hi = 0.6;

    static NoiseSpec none() { return NoiseSpec{}; }

    /// Bands shaped like a real detector: TP ~ U[0.7, 1.0], FP ~ U[0.25, 0.6].
    static NoiseSpec detector_like() {
        NoiseSpec n;
        n.tp_conf_lo = 0.7;
        n.tp_conf_hi = 1.0;
        return n;
    }
};

/// Lays out one horizontal line of glyph boxes per expression string.
/// Deterministic for a given (expressions, spec). Throws DoesNotFit when
/// the jitter-free layout leaves [0, 1], and SyntaxError on characters
/// outside the vocabulary.
Scene layout_scene(const std::vector<std::string>& expressions, const LayoutSpec& spec,
                   const std::string& image_id = "scene",
                   const ClassMap& class_map = ClassMap::standard());

/// Simulates a detector run over the scene: each object is dropped with
/// drop_prob, surviving boxes are jittered, classes flipped with
/// class_flip_prob, and Poisson(spurious_rate) false boxes are added with
/// sizes drawn from the scene's own glyph sizes.
std::vector<Detection> perturb(const Scene& scene, const NoiseSpec& noise, std::uint64_t seed);

/// Seeded well-formed expression text over the parser's grammar. `depth`
/// bounds bracket nesting; decimals and brackets appear only when enabled.
std::string random_expression(int depth, bool allow_decimals, bool allow_brackets,
                              std::uint64_t seed);

/// Largest symbol count one line can hold under the jitter-free layout.
int max_symbols_per_line(const LayoutSpec& spec);

} // namespace detcalc
