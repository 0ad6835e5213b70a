#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "detcalc/synthgen.hpp"

namespace detcalc {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,  ///< bad flags, thresholds outside (0,1), bad class map
    kExitDomain = 2, ///< expression failures, InsufficientBoxes, DoesNotFit, ...
    kExitIo = 3,     ///< unreadable paths, malformed files, missing annotations
};

/// Everything a subcommand needs, filled from flags by the front end.
struct RunConfig {
    // shared
    double iou_threshold = 0.5;
    double conf_threshold = 0.25;
    double nms_threshold = 0.45;
    std::optional<std::filesystem::path> class_map_path;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::optional<std::filesystem::path> out_path;

    // solve
    std::filesystem::path input_dir;
    std::string input_kind = "detections"; ///< "detections" or "cells"
    double band_expansion = 1.0;

    // eval-map
    std::filesystem::path detections_dir;
    std::filesystem::path annotations_dir;

    // anchors
    std::filesystem::path anchors_annotations_dir;
    int k = 9;
    std::string anchor_unit = "pixel"; ///< "pixel" or "normalized"
    int anchor_resolution = 608;

    // gen
    std::filesystem::path gen_out_dir;
    int scenes = 10;
    int expressions_per_scene = 1;
    int expression_depth = 2;
    bool allow_decimals = true;
    bool allow_brackets = true;
    LayoutSpec layout;
    NoiseSpec noise = NoiseSpec::detector_like();
};

// Subcommand bodies. JSON goes to `out` (or config.out_path when set),
// human-readable logs to `err`; the return value is the process exit code.
int run_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_eval_map(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_anchors(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_gen(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace detcalc
