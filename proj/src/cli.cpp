#include "detcalc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>
#include <vector>

#include <json.hpp>

#include "detcalc/anchors.hpp"
#include "detcalc/errors.hpp"
#include "detcalc/expression.hpp"
#include "detcalc/io.hpp"
#include "detcalc/parser.hpp"
#include "detcalc/postprocess.hpp"
#include "detcalc/report_json.hpp"
#include "detcalc/rng.hpp"

namespace detcalc {

namespace {

int classify(const Error& e) {
    const std::string& kind = e.kind();
    if (kind == "BadClassMap") return kExitUsage;
    if (kind == "MalformedLine" || kind == "OutOfRangeClass" || kind == "ConfidenceOutOfRange" ||
        kind == "MissingAnnotation") {
        return kExitIo;
    }
    return kExitDomain;
}

/// Runs fn(0..count) across up to `jobs` threads. Output slots are indexed,
/// so concurrency cannot reorder results; the lowest-index exception wins.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    const std::size_t workers = std::min(static_cast<std::size_t>(jobs), count);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : pool) thread.join();
    for (auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
}

ClassMap load_class_map(const RunConfig& config) {
    return config.class_map_path ? ClassMap::from_file(*config.class_map_path)
                                 : ClassMap::standard();
}

std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::string& extension) {
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error(dir.string() + " is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
        return a.stem().string() < b.stem().string();
    });
    return files;
}

/// Writes to --out when given, otherwise to the stream.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (config.out_path) {
        std::ofstream file(*config.out_path);
        if (!file) throw std::runtime_error("cannot write " + config.out_path->string());
        file << text;
    } else {
        out << text;
    }
}

} // namespace

int run_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const ClassMap class_map = load_class_map(config);
        const bool cells = config.input_kind == "cells";
        const auto files = list_files(config.input_dir, cells ? ".jsonl" : ".txt");

        struct ImageResult {
            std::string image_id;
            nlohmann::ordered_json expressions = nlohmann::ordered_json::array();
            bool any_error = false;
        };
        std::vector<ImageResult> results(files.size());

        parallel_for(files.size(), config.jobs, [&](std::size_t i) {
            std::vector<Detection> dets;
            if (cells) {
                dets = finalize(read_cell_predictions(files[i]), config.conf_threshold,
                                config.nms_threshold);
            } else {
                dets = read_detection_file(files[i]).second;
            }

            ImageResult result;
            result.image_id = files[i].stem().string();

            auto lines = separate_expressions(std::move(dets), class_map, config.band_expansion);
            std::sort(lines.begin(), lines.end(), [](const ExpressionLine& a,
                                                     const ExpressionLine& b) {
                return std::tie(a.y_min, a.y_max) < std::tie(b.y_min, b.y_max);
            });

            for (const auto& line : lines) {
                std::string tokens;
                for (const auto& t : line.tokens) tokens += symbol_char(t.kind);

                nlohmann::ordered_json entry;
                entry["y_band"] = {line.y_min, line.y_max};
                entry["tokens"] = tokens;
                try {
                    const SolvedLine solved = solve_line(line);
                    entry["text"] = solved.text;
                    entry["value"] = solved.outcome.decimal;
                    entry["had_equals"] = solved.outcome.had_equals;
                    if (solved.outcome.ignored_after_equals) {
                        entry["warning"] = "items after the equals sign were ignored";
                    }
                } catch (const LineSolveError& e) {
                    entry["error"] = std::string(e.what());
                    result.any_error = true;
                }
                result.expressions.push_back(std::move(entry));
            }
            results[i] = std::move(result);
        });

        nlohmann::ordered_json doc;
        doc["schema_version"] = 1;
        auto& images = doc["images"];
        images = nlohmann::ordered_json::array();
        bool any_error = false;
        for (auto& r : results) {
            any_error = any_error || r.any_error;
            nlohmann::ordered_json image;
            image["image_id"] = r.image_id;
            image["expressions"] = std::move(r.expressions);
            images.push_back(std::move(image));
        }
        emit(config, out, doc.dump(2) + "\n");
        return any_error ? kExitDomain : kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitIo;
    }
}

int run_eval_map(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const auto ann_files = list_files(config.annotations_dir, ".txt");
        const auto det_files = list_files(config.detections_dir, ".txt");

        GroundTruthByImage gts;
        std::vector<std::pair<std::string, std::vector<GroundTruthObject>>> ann(ann_files.size());
        parallel_for(ann_files.size(), config.jobs,
                     [&](std::size_t i) { ann[i] = read_annotation_file(ann_files[i]); });
        for (auto& [id, objects] : ann) gts[id] = std::move(objects);

        DetectionsByImage dets;
        std::vector<std::pair<std::string, std::vector<Detection>>> det(det_files.size());
        parallel_for(det_files.size(), config.jobs,
                     [&](std::size_t i) { det[i] = read_detection_file(det_files[i]); });
        std::string missing;
        for (auto& [id, detections] : det) {
            if (!gts.count(id)) missing += (missing.empty() ? "" : ", ") + id;
            dets[id] = std::move(detections);
        }
        if (!missing.empty()) throw MissingAnnotation(missing);

        const EvalReport report = evaluate_map(dets, gts, config.iou_threshold);

        nlohmann::ordered_json doc;
        doc["schema_version"] = 1;
        doc.update(eval_report_json(report));
        emit(config, out, doc.dump(2) + "\n");

        char buf[128];
        err << "class  ap        tp      fp      fn\n";
        for (const auto& c : report.per_class) {
            std::snprintf(buf, sizeof(buf), "%-6d %-9.4f %-7d %-7d %-7d\n", c.class_id, c.ap,
                          c.tp, c.fp, c.fn);
            err << buf;
        }
        std::snprintf(buf, sizeof(buf), "mAP %.4f at IoU threshold %.2f", report.map,
                      report.iou_threshold);
        err << buf;
        if (!report.excluded_classes.empty()) {
            err << " (classes without ground truth excluded:";
            for (const int c : report.excluded_classes) err << " " << c;
            err << ")";
        }
        err << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitIo;
    }
}

int run_anchors(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::vector<Dims> boxes;
        for (const auto& [id, objects] : read_annotations_dir(config.anchors_annotations_dir)) {
            for (const auto& o : objects) boxes.push_back({o.box.width, o.box.height});
        }

        ClusterResult result = cluster_anchors(std::move(boxes), config.k, config.seed);
        AnchorSet set = result.anchors;
        if (config.anchor_unit == "pixel") {
            set = to_pixels(set, config.anchor_resolution, config.anchor_resolution);
        }

        nlohmann::ordered_json doc;
        doc["schema_version"] = 1;
        doc["unit"] = config.anchor_unit;
        if (set.unit == AnchorUnit::Pixel) {
            doc["reference_width"] = set.reference_width;
            doc["reference_height"] = set.reference_height;
        }
        auto& anchors = doc["anchors"];
        anchors = nlohmann::ordered_json::array();
        for (const auto& a : set.anchors) anchors.push_back({a.w, a.h});
        doc["iterations"] = result.iterations;
        doc["mean_distance"] = result.mean_distance;

        out << darknet_anchor_line(set) << "\n";
        emit(config, out, doc.dump(2) + "\n");
        err << "k-means converged after " << result.iterations
            << " iterations; mean 1-IoU distance " << result.mean_distance << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitIo;
    }
}

int run_gen(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const ClassMap class_map = load_class_map(config);
        const auto annotations_dir = config.gen_out_dir / "annotations";
        const auto detections_dir = config.gen_out_dir / "detections";
        std::filesystem::create_directories(annotations_dir);
        std::filesystem::create_directories(detections_dir);

        nlohmann::ordered_json meta;
        meta["schema_version"] = 1;
        meta["seed"] = config.seed;

        // Every scene's randomness derives from its own index, so scenes
        // can generate concurrently; the meta entries are collected in
        // index order.
        std::vector<nlohmann::ordered_json> entries(static_cast<std::size_t>(config.scenes));
        parallel_for(static_cast<std::size_t>(config.scenes), config.jobs, [&](std::size_t i) {
            const std::uint64_t scene_seed = mix_seed(config.seed, i);

            // Expressions that would overflow the line are redrawn with a
            // fresh derived seed (falling back to depth 1), so the layout
            // capacity bounds what the generator may emit.
            const int capacity = max_symbols_per_line(config.layout);
            std::vector<std::string> expressions;
            expressions.reserve(static_cast<std::size_t>(config.expressions_per_scene));
            for (int j = 0; j < config.expressions_per_scene; ++j) {
                std::string text;
                for (int attempt = 0;; ++attempt) {
                    const int depth = attempt < 20 ? config.expression_depth : 1;
                    text = random_expression(
                        depth, config.allow_decimals, config.allow_brackets,
                        mix_seed(scene_seed, 100 + static_cast<std::uint64_t>(j) +
                                                 1000 * static_cast<std::uint64_t>(attempt)));
                    if (static_cast<int>(text.size()) <= capacity || attempt >= 60) break;
                }
                expressions.push_back(std::move(text));
            }

            char name[32];
            std::snprintf(name, sizeof(name), "scene_%06zu", i);
            LayoutSpec layout = config.layout;
            layout.seed = mix_seed(scene_seed, 1);
            const Scene scene = layout_scene(expressions, layout, name, class_map);
            const auto detections = perturb(scene, config.noise, mix_seed(scene_seed, 2));

            write_annotation_file(annotations_dir / (scene.image_id + ".txt"), scene.objects);
            write_detection_file(detections_dir / (scene.image_id + ".txt"), detections);

            nlohmann::ordered_json entry;
            entry["image_id"] = scene.image_id;
            entry["width_px"] = scene.width_px;
            entry["height_px"] = scene.height_px;
            entry["expressions"] = expressions;
            entries[i] = std::move(entry);
        });
        auto& scenes = meta["scenes"];
        scenes = nlohmann::ordered_json::array();
        for (auto& entry : entries) scenes.push_back(std::move(entry));

        std::ofstream meta_file(config.gen_out_dir / "images.meta");
        if (!meta_file) {
            throw std::runtime_error("cannot write " +
                                     (config.gen_out_dir / "images.meta").string());
        }
        meta_file << meta.dump(2) << "\n";

        out << "wrote " << config.scenes << " scenes to " << config.gen_out_dir.string() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitIo;
    }
}

} // namespace detcalc
