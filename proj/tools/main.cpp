#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "detcalc/cli.hpp"

namespace {

using detcalc::RunConfig;

void add_shared_flags(CLI::App& sub, RunConfig& config) {
    sub.add_option("--iou-threshold", config.iou_threshold, "Matching IoU threshold")
        ->capture_default_str();
    sub.add_option("--conf-threshold", config.conf_threshold, "Confidence threshold")
        ->capture_default_str();
    sub.add_option("--nms-threshold", config.nms_threshold, "NMS IoU threshold")
        ->capture_default_str();
    sub.add_option("--class-map", config.class_map_path, "Class-map config file");
    sub.add_option("--seed", config.seed, "Random seed")->capture_default_str();
    sub.add_option("--jobs", config.jobs, "Max concurrent images")->capture_default_str();
    sub.add_option("--out", config.out_path, "Write the JSON report to this file");
}

bool validate(const RunConfig& config, std::ostream& err) {
    const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
    if (!in_unit(config.iou_threshold) || !in_unit(config.conf_threshold) ||
        !in_unit(config.nms_threshold)) {
        err << "thresholds must lie strictly between 0 and 1\n";
        return false;
    }
    if (config.jobs < 1) {
        err << "--jobs must be at least 1\n";
        return false;
    }
    if (config.band_expansion <= 0.0) {
        err << "--band-expansion must be positive\n";
        return false;
    }
    if (config.input_kind != "detections" && config.input_kind != "cells") {
        err << "--input-kind must be `detections` or `cells`\n";
        return false;
    }
    if (config.anchor_unit != "pixel" && config.anchor_unit != "normalized") {
        err << "--unit must be `pixel` or `normalized`\n";
        return false;
    }
    if (config.k < 1 || config.anchor_resolution < 1 || config.scenes < 0 ||
        config.expressions_per_scene < 1 || config.expression_depth < 1) {
        err << "-k, --resolution, --scenes, --exprs-per-scene and --depth must be positive\n";
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turns object-detection outputs for handwritten Bengali math symbols into "
                 "evaluated arithmetic expressions, with detector evaluation, anchor "
                 "clustering and synthetic scene generation"};
    app.require_subcommand(1);

    RunConfig config;

    auto* solve = app.add_subcommand(
        "solve", "Read detections and evaluate the expressions they spell");
    solve->add_option("input-dir", config.input_dir, "Directory of detection files")->required();
    solve->add_option("--input-kind", config.input_kind,
                      "`detections` (.txt files) or `cells` (.jsonl raw grid predictions)")
        ->capture_default_str();
    solve->add_option("--band-expansion", config.band_expansion,
                      "Scale factor on each line anchor's vertical band")
        ->capture_default_str();
    add_shared_flags(*solve, config);

    auto* eval_map = app.add_subcommand("eval-map", "Evaluate detections against annotations");
    eval_map->add_option("detections-dir", config.detections_dir, "Directory of detection files")
        ->required();
    eval_map
        ->add_option("annotations-dir", config.annotations_dir, "Directory of annotation files")
        ->required();
    add_shared_flags(*eval_map, config);

    auto* anchors = app.add_subcommand("anchors", "Cluster annotation boxes into anchor priors");
    anchors
        ->add_option("annotations-dir", config.anchors_annotations_dir,
                     "Directory of annotation files")
        ->required();
    anchors->add_option("-k,--k", config.k, "Number of clusters")->capture_default_str();
    anchors->add_option("--unit", config.anchor_unit, "`pixel` or `normalized`")
        ->capture_default_str();
    anchors
        ->add_option("--resolution", config.anchor_resolution,
                     "Reference square resolution for pixel output")
        ->capture_default_str();
    add_shared_flags(*anchors, config);

    auto* gen = app.add_subcommand("gen", "Generate synthetic annotated scenes");
    gen->add_option("out-dir", config.gen_out_dir, "Output directory")->required();
    gen->add_option("--scenes", config.scenes, "Number of scenes")->capture_default_str();
    gen->add_option("--exprs-per-scene", config.expressions_per_scene,
                    "Expressions per scene")
        ->capture_default_str();
    gen->add_option("--depth", config.expression_depth, "Expression nesting depth")
        ->capture_default_str();
    gen->add_flag("!--no-decimals", config.allow_decimals, "Disable decimal numbers");
    gen->add_flag("!--no-brackets", config.allow_brackets, "Disable brackets");
    gen->add_option("--glyph-width", config.layout.glyph_width, "Glyph box width")
        ->capture_default_str();
    gen->add_option("--glyph-height", config.layout.glyph_height, "Glyph box height")
        ->capture_default_str();
    gen->add_option("--gap", config.layout.gap, "Horizontal gap between glyphs")
        ->capture_default_str();
    gen->add_option("--line-gap", config.layout.line_gap, "Vertical gap between lines")
        ->capture_default_str();
    gen->add_option("--pos-sigma", config.layout.position_sigma, "Layout position jitter sigma")
        ->capture_default_str();
    gen->add_option("--size-sigma", config.layout.size_sigma, "Layout size jitter sigma")
        ->capture_default_str();
    gen->add_option("--shear", config.layout.shear, "Baseline slope, dy per unit x")
        ->capture_default_str();
    gen->add_option("--noise-drop", config.noise.drop_prob, "Detector drop probability")
        ->capture_default_str();
    gen->add_option("--noise-spurious", config.noise.spurious_rate,
                    "Expected spurious boxes per image")
        ->capture_default_str();
    gen->add_option("--noise-flip", config.noise.class_flip_prob, "Class flip probability")
        ->capture_default_str();
    gen->add_option("--noise-box-sigma", config.noise.box_sigma, "Detection box jitter sigma")
        ->capture_default_str();
    gen->add_option("--tp-conf-lo", config.noise.tp_conf_lo, "True-detection confidence low")
        ->capture_default_str();
    gen->add_option("--tp-conf-hi", config.noise.tp_conf_hi, "True-detection confidence high")
        ->capture_default_str();
    gen->add_option("--fp-conf-lo", config.noise.fp_conf_lo, "Spurious confidence low")
        ->capture_default_str();
    gen->add_option("--fp-conf-hi", config.noise.fp_conf_hi, "Spurious confidence high")
        ->capture_default_str();
    add_shared_flags(*gen, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? detcalc::kExitOk : detcalc::kExitUsage;
    }

    if (!validate(config, std::cerr)) return detcalc::kExitUsage;

    if (solve->parsed()) return detcalc::run_solve(config, std::cout, std::cerr);
    if (eval_map->parsed()) return detcalc::run_eval_map(config, std::cout, std::cerr);
    if (anchors->parsed()) return detcalc::run_anchors(config, std::cout, std::cerr);
    return detcalc::run_gen(config, std::cout, std::cerr);
}
