#include "detcalc/synthgen.hpp"

#include <algorithm>
#include <cmath>

#include "detcalc/errors.hpp"
#include "detcalc/rng.hpp"

namespace detcalc {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double clamp_dim(double v) { return std::clamp(v, 1e-6, 1.0); }

} // namespace

Scene layout_scene(const std::vector<std::string>& expressions, const LayoutSpec& spec,
                   const std::string& image_id, const ClassMap& class_map) {
    Scene scene;
    scene.image_id = image_id;
    scene.width_px = spec.width_px;
    scene.height_px = spec.height_px;

    Rng rng(spec.seed);
    const double step_x = spec.glyph_width + spec.gap;
    const double step_y = spec.glyph_height + spec.line_gap;

    for (std::size_t row = 0; row < expressions.size(); ++row) {
        const auto symbols = symbols_from_text(expressions[row]);
        const double y_base = spec.margin_y + row * step_y + 0.5 * spec.glyph_height;

        for (std::size_t col = 0; col < symbols.size(); ++col) {
            const double x = spec.margin_x + col * step_x + 0.5 * spec.glyph_width;
            const double y = y_base + spec.shear * (x - spec.margin_x);
            if (x + 0.5 * spec.glyph_width > 1.0 || y + 0.5 * spec.glyph_height > 1.0 ||
                y - 0.5 * spec.glyph_height < 0.0) {
                throw DoesNotFit("expression " + std::to_string(row) + " symbol " +
                                 std::to_string(col) + " leaves the unit square");
            }

            Box box;
            box.x_center = clamp01(x + rng.normal(0.0, spec.position_sigma));
            box.y_center = clamp01(y + rng.normal(0.0, spec.position_sigma));
            box.width = clamp_dim(spec.glyph_width * (1.0 + rng.normal(0.0, spec.size_sigma)));
            box.height = clamp_dim(spec.glyph_height * (1.0 + rng.normal(0.0, spec.size_sigma)));
            scene.objects.push_back(GroundTruthObject{class_map.id_of(symbols[col]), box});
        }
    }
    return scene;
}

std::vector<Detection> perturb(const Scene& scene, const NoiseSpec& noise, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Detection> dets;
    dets.reserve(scene.objects.size());

    for (const auto& object : scene.objects) {
        if (rng.bernoulli(noise.drop_prob)) continue;

        Detection d;
        d.box.x_center = clamp01(object.box.x_center + rng.normal(0.0, noise.box_sigma));
        d.box.y_center = clamp01(object.box.y_center + rng.normal(0.0, noise.box_sigma));
        d.box.width = clamp_dim(object.box.width * (1.0 + rng.normal(0.0, noise.box_sigma)));
        d.box.height = clamp_dim(object.box.height * (1.0 + rng.normal(0.0, noise.box_sigma)));

        d.class_id = object.class_id;
        if (rng.bernoulli(noise.class_flip_prob)) {
            const int offset = rng.uniform_int(1, kNumClasses - 1);
            d.class_id = (object.class_id + offset) % kNumClasses;
        }
        d.confidence = rng.uniform(noise.tp_conf_lo, noise.tp_conf_hi);
        dets.push_back(d);
    }

    const int spurious = rng.poisson(noise.spurious_rate);
    for (int i = 0; i < spurious; ++i) {
        Detection d;
        if (!scene.objects.empty()) {
            const auto& donor = scene.objects[rng.uniform_index(scene.objects.size())];
            d.box.width = donor.box.width;
            d.box.height = donor.box.height;
        } else {
            d.box.width = 0.05;
            d.box.height = 0.08;
        }
        d.box.x_center = rng.uniform();
        d.box.y_center = rng.uniform();
        d.class_id = rng.uniform_int(0, kNumClasses - 1);
        d.confidence = rng.uniform(noise.fp_conf_lo, noise.fp_conf_hi);
        dets.push_back(d);
    }
    return dets;
}

namespace {

class ExpressionGenerator {
public:
    ExpressionGenerator(int depth, bool decimals, bool brackets, std::uint64_t seed)
        : max_depth_(depth < 1 ? 1 : depth), decimals_(decimals), brackets_(brackets),
          rng_(seed) {}

    std::string generate() {
        std::string out;
        emit_expr(out, max_depth_, /*allow_unary=*/true);
        return out;
    }

private:
    int max_depth_;
    bool decimals_;
    bool brackets_;
    Rng rng_;

    void emit_number(std::string& out) {
        out += std::to_string(rng_.uniform_int(0, 99));
        if (decimals_ && rng_.bernoulli(0.3)) {
            out += '.';
            const int frac_digits = rng_.uniform_int(1, 2);
            for (int i = 0; i < frac_digits; ++i) {
                out += static_cast<char>('0' + rng_.uniform_int(0, 9));
            }
        }
    }

    void emit_factor(std::string& out, int depth) {
        if (brackets_ && depth > 1 && rng_.bernoulli(0.35)) {
            out += '(';
            emit_expr(out, depth - 1, /*allow_unary=*/true);
            out += ')';
        } else {
            emit_number(out);
        }
    }

    void emit_term(std::string& out, int depth, bool allow_unary) {
        if (allow_unary && rng_.bernoulli(0.08)) out += '-';
        emit_factor(out, depth);
        const int extra = rng_.uniform_int(0, 2);
        for (int i = 0; i < extra; ++i) {
            out += rng_.bernoulli(0.5) ? '*' : '/';
            emit_factor(out, depth);
        }
    }

    void emit_expr(std::string& out, int depth, bool allow_unary) {
        if (depth <= 1) {
            // Base case: two numbers joined by a single operator.
            static const char kOps[4] = {'+', '-', '*', '/'};
            emit_number(out);
            out += kOps[rng_.uniform_int(0, 3)];
            emit_number(out);
            return;
        }
        emit_term(out, depth, allow_unary);
        const int extra = rng_.uniform_int(0, 2);
        for (int i = 0; i < extra; ++i) {
            out += rng_.bernoulli(0.5) ? '+' : '-';
            emit_term(out, depth, /*allow_unary=*/false);
        }
    }
};

} // namespace

std::string random_expression(int depth, bool allow_decimals, bool allow_brackets,
                              std::uint64_t seed) {
    return ExpressionGenerator(depth, allow_decimals, allow_brackets, seed).generate();
}

int max_symbols_per_line(const LayoutSpec& spec) {
    const double step = spec.glyph_width + spec.gap;
    if (step <= 0.0) return 0;
    const double usable = 1.0 - spec.margin_x - spec.glyph_width;
    if (usable < 0.0) return 0;
    return 1 + static_cast<int>(usable / step);
}

} // namespace detcalc
