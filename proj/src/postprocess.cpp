#include "detcalc/postprocess.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

#include <json.hpp>

#include "detcalc/errors.hpp"

namespace detcalc {

Box decode_cell(const CellPrediction& p, const GridSpec& g) {
    const double s = static_cast<double>(g.s);
    return Box{(p.col + p.rel_x) / s, (p.row + p.rel_y) / s, p.norm_w, p.norm_h};
}

std::array<double, kNumClasses> class_scores(const CellPrediction& p) {
    std::array<double, kNumClasses> scores{};
    for (int i = 0; i < kNumClasses; ++i) {
        scores[static_cast<std::size_t>(i)] =
            p.class_probs[static_cast<std::size_t>(i)] * p.objectness;
    }
    return scores;
}

namespace {

bool detection_before(const Detection& a, const Detection& b) {
    return std::make_tuple(-a.confidence, a.class_id, a.box.x_center, a.box.y_center, a.box.width,
                           a.box.height) < std::make_tuple(-b.confidence, b.class_id,
                                                           b.box.x_center, b.box.y_center,
                                                           b.box.width, b.box.height);
}

} // namespace

std::vector<Detection> nms(std::vector<Detection> dets, double iou_threshold) {
    std::sort(dets.begin(), dets.end(), detection_before);
    std::vector<Detection> kept;
    kept.reserve(dets.size());
    for (const auto& candidate : dets) {
        bool suppressed = false;
        for (const auto& keeper : kept) {
            if (keeper.class_id == candidate.class_id &&
                iou(keeper.box, candidate.box) > iou_threshold) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(candidate);
    }
    return kept;
}

std::vector<Detection> finalize(const std::vector<std::pair<CellPrediction, GridSpec>>& cells,
                                double conf_threshold, double nms_threshold) {
    std::vector<Detection> candidates;
    candidates.reserve(cells.size());
    for (const auto& [cell, grid] : cells) {
        const auto scores = class_scores(cell);
        int best = 0;
        for (int i = 1; i < kNumClasses; ++i) {
            if (scores[static_cast<std::size_t>(i)] > scores[static_cast<std::size_t>(best)]) {
                best = i;
            }
        }
        const double score = scores[static_cast<std::size_t>(best)];
        if (score < conf_threshold) continue;
        candidates.push_back(Detection{best, decode_cell(cell, grid), score});
    }
    return nms(std::move(candidates), nms_threshold);
}

std::vector<Detection> finalize(const std::vector<CellPrediction>& cells, const GridSpec& g,
                                double conf_threshold, double nms_threshold) {
    std::vector<std::pair<CellPrediction, GridSpec>> paired;
    paired.reserve(cells.size());
    for (const auto& c : cells) paired.emplace_back(c, g);
    return finalize(paired, conf_threshold, nms_threshold);
}

std::vector<std::pair<CellPrediction, GridSpec>>
read_cell_predictions(const std::filesystem::path& jsonl_path) {
    std::ifstream in(jsonl_path);
    if (!in) throw std::runtime_error("cannot open " + jsonl_path.string());

    std::vector<std::pair<CellPrediction, GridSpec>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw MalformedLine(jsonl_path.string(), line_no, e.what());
        }
        try {
            GridSpec grid;
            grid.s = doc.at("s").get<int>();
            CellPrediction cell;
            cell.row = doc.at("row").get<int>();
            cell.col = doc.at("col").get<int>();
            cell.rel_x = doc.at("rel_x").get<double>();
            cell.rel_y = doc.at("rel_y").get<double>();
            cell.norm_w = doc.at("norm_w").get<double>();
            cell.norm_h = doc.at("norm_h").get<double>();
            cell.objectness = doc.at("objectness").get<double>();
            const auto& probs = doc.at("class_probs");
            if (!probs.is_array() || probs.size() != kNumClasses) {
                throw MalformedLine(jsonl_path.string(), line_no,
                                    "class_probs must hold 18 numbers");
            }
            for (int i = 0; i < kNumClasses; ++i) {
                cell.class_probs[static_cast<std::size_t>(i)] =
                    probs[static_cast<std::size_t>(i)].get<double>();
            }
            if (grid.s < 1 || cell.row < 0 || cell.row >= grid.s || cell.col < 0 ||
                cell.col >= grid.s) {
                throw MalformedLine(jsonl_path.string(), line_no, "cell indices outside grid");
            }
            out.emplace_back(cell, grid);
        } catch (const nlohmann::json::exception& e) {
            throw MalformedLine(jsonl_path.string(), line_no, e.what());
        }
    }
    return out;
}

} // namespace detcalc
