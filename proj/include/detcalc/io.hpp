#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "detcalc/records.hpp"

namespace detcalc {

// Annotation file: one object per line, `<class_id> <x_center> <y_center>
// <width> <height>`, normalized decimals. Detection file: same with
// `<confidence>` inserted after `<class_id>`. File stem = image id,
// `.txt` extension. Coordinates are serialized with 6 decimal places.

std::pair<std::string, std::vector<GroundTruthObject>>
read_annotation_file(const std::filesystem::path& path);

std::pair<std::string, std::vector<Detection>>
read_detection_file(const std::filesystem::path& path);

/// All `.txt` files of a directory, sorted by image id.
std::vector<std::pair<std::string, std::vector<GroundTruthObject>>>
read_annotations_dir(const std::filesystem::path& dir);

std::vector<std::pair<std::string, std::vector<Detection>>>
read_detections_dir(const std::filesystem::path& dir);

void write_annotation_file(const std::filesystem::path& path,
                           const std::vector<GroundTruthObject>& objects);

void write_detection_file(const std::filesystem::path& path,
                          const std::vector<Detection>& detections);

/// Fixed-point rendering with 6 decimal places, the file-format precision.
std::string format_coord(double value);

} // namespace detcalc
