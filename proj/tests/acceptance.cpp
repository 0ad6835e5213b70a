// Acceptance suite: every check below pins one published behavior of the
// toolkit end to end, at fixed tolerances, on seeded deterministic inputs.
// One PASS/FAIL line prints per criterion; the exit code is the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "detcalc/anchors.hpp"
#include "detcalc/errors.hpp"
#include "detcalc/expression.hpp"
#include "detcalc/metrics.hpp"
#include "detcalc/parser.hpp"
#include "detcalc/rng.hpp"
#include "detcalc/synthgen.hpp"
#include "support/direct_evaluator.hpp"
#include "support/metrics_oracle.hpp"
#include "support/separation_oracle.hpp"

using namespace detcalc;
namespace fs = std::filesystem;

namespace {

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_seconds(double s, double limit) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f s < %.0f s", s, limit);
    return buf;
}

const std::vector<std::pair<std::string, Rational>> kCorpus = {
    {"2+3", Rational(5)},
    {"3-1*2", Rational(1)},
    {"(3+7+5)/4", Rational(BigInt(15), BigInt(4))},
    {"21-15", Rational(6)},
    {"(42-47)/7", Rational(BigInt(-5), BigInt(7))},
    {"(2.54+5.55)*2", Rational(BigInt(809), BigInt(50))},
    {"(2+7-5)*33.2", Rational(BigInt(664), BigInt(5))},
    {"9+4-2", Rational(11)},
    {"(3+4-5)/(6+7)", Rational(BigInt(2), BigInt(13))},
};

std::vector<Detection> exact_detections(const Scene& scene) {
    return perturb(scene, NoiseSpec::none(), 0);
}

// --- criterion 1: every corpus expression solves to its exact value ---

bool check_expression_corpus(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const ClassMap map = ClassMap::standard();
    int exact = 0;
    for (const auto& [text, expected] : kCorpus) {
        const Scene scene = layout_scene({text}, LayoutSpec{});
        const auto lines = separate_expressions(exact_detections(scene), map);
        if (lines.size() != 1) continue;
        if (solve_line(lines[0]).outcome.value == expected) ++exact;
    }
    const double took = seconds_since(start);
    std::ostringstream s;
    s << exact << "/" << kCorpus.size() << " values exact as rationals ("
      << format_seconds(took, 1.0) << ")";
    note = s.str();
    return exact == static_cast<int>(kCorpus.size()) && took < 1.0;
}

// --- criterion 2: line separation, including the reference-loop sweep ---

bool check_separation(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const ClassMap map = ClassMap::standard();

    const Scene stacked =
        layout_scene({"(2+7-5)*33.2", "9+4-2", "(3+4-5)/(6+7)"}, LayoutSpec{});
    const auto lines = separate_expressions(exact_detections(stacked), map);
    const bool counts_ok = lines.size() == 3 && lines[0].tokens.size() == 12 &&
                           lines[1].tokens.size() == 5 && lines[2].tokens.size() == 13;

    int agreements = 0;
    const int scenes = 1000;
    Rng rng(20240817);
    for (int trial = 0; trial < scenes; ++trial) {
        std::vector<Detection> dets;
        const int n = rng.uniform_int(0, 8);
        for (int i = 0; i < n; ++i) {
            dets.push_back(Detection{rng.uniform_int(0, 17),
                                     Box{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95),
                                         rng.uniform(0.02, 0.3), rng.uniform(0.02, 0.4)},
                                     1.0});
        }
        const auto mine = partition_lines(dets);
        const auto reference = testsupport::reference_separation(dets);
        if (mine.size() != reference.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < mine.size(); ++i) {
            same = same && mine[i].members == reference[i];
        }
        agreements += same;
    }
    const double took = seconds_since(start);
    std::ostringstream s;
    s << "3-line scene counts " << (counts_ok ? "ok" : "WRONG") << "; reference loop agrees on "
      << agreements << "/" << scenes << " scenes (" << format_seconds(took, 10.0) << ")";
    note = s.str();
    return counts_ok && agreements == scenes && took < 10.0;
}

// --- criterion 3: a perfect detector scores exactly 1.0 ---

bool check_perfect_map(std::string& note) {
    GroundTruthByImage gts;
    DetectionsByImage dets;
    for (int i = 0; i < 100; ++i) {
        LayoutSpec layout;
        layout.position_sigma = 0.003;
        layout.size_sigma = 0.04;
        layout.seed = mix_seed(7, static_cast<std::uint64_t>(i));
        const std::string expr_a =
            random_expression(2, true, true, mix_seed(layout.seed, 1));
        const std::string expr_b =
            random_expression(1, false, false, mix_seed(layout.seed, 2));
        char name[32];
        std::snprintf(name, sizeof(name), "scene_%03d", i);
        Scene scene;
        try {
            scene = layout_scene({expr_a, expr_b}, layout, name);
        } catch (const DoesNotFit&) {
            scene = layout_scene({expr_b}, layout, name);
        }
        gts[scene.image_id] = scene.objects;
        dets[scene.image_id] = exact_detections(scene);
    }
    const EvalReport report = evaluate_map(dets, gts, 0.5);
    std::ostringstream s;
    s << "mAP = " << report.map << " over " << report.per_class.size()
      << " classes on 100 scenes";
    note = s.str();
    return report.map == 1.0;
}

// --- criterion 4: 11-point AP value and matcher-vs-oracle agreement ---

bool check_eleven_point_ap(std::string& note) {
    GroundTruthByImage gts;
    gts["a"] = {{0, Box{0.3, 0.3, 0.1, 0.1}}, {0, Box{0.7, 0.7, 0.1, 0.1}}};
    const PooledDetections dets = {
        {{0, Box{0.3, 0.3, 0.1, 0.1}, 0.9}, "a"},
        {{0, Box{0.5, 0.5, 0.1, 0.1}, 0.8}, "a"},
        {{0, Box{0.7, 0.7, 0.1, 0.1}, 0.7}, "a"},
    };
    const double ap = average_precision_11pt(pr_curve(dets, gts, 0.5, 0));
    const double expected = (6.0 + 5.0 * (2.0 / 3.0)) / 11.0;
    const bool value_ok = std::abs(ap - expected) < 1e-12;

    int agreements = 0;
    const int instances = 500;
    Rng rng(431);
    for (int trial = 0; trial < instances; ++trial) {
        const auto inst = testsupport::random_instance(rng);
        bool same = true;
        for (int cls = 0; cls <= 1; ++cls) {
            int gt_total = 0;
            for (const auto& [id, objects] : inst.gts) {
                for (const auto& o : objects) gt_total += o.class_id == cls;
            }
            if (gt_total == 0) continue;
            const PRCurve curve = pr_curve(inst.dets, inst.gts, 0.5, cls);
            const auto oracle = testsupport::sweep_oracle(inst.dets, inst.gts, 0.5, cls);
            if (curve.points.size() != oracle.size()) {
                same = false;
                continue;
            }
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                const auto [tp, fp] = oracle[i];
                same = same &&
                       std::abs(curve.points[i].recall - static_cast<double>(tp) / gt_total) <
                           1e-12 &&
                       std::abs(curve.points[i].precision -
                                static_cast<double>(tp) / (tp + fp)) < 1e-12;
            }
        }
        agreements += same;
    }
    std::ostringstream s;
    s << "AP error " << std::abs(ap - expected) << " (< 1e-12); oracle agrees on " << agreements
      << "/" << instances << " instances";
    note = s.str();
    return value_ok && agreements == instances;
}

// --- criterion 5: recall endpoints track the drop rate ---

bool check_degradation(std::string& note) {
    GroundTruthByImage gts;
    DetectionsByImage dets;
    NoiseSpec noise;
    noise.drop_prob = 0.5;

    std::size_t objects = 0;
    for (int i = 0; i < 1600; ++i) {
        LayoutSpec layout;
        layout.seed = mix_seed(55, static_cast<std::uint64_t>(i));
        std::vector<std::string> expressions;
        for (int j = 0; j < 3; ++j) {
            std::string text = random_expression(2, true, true, mix_seed(layout.seed, 10 + j));
            if (text.size() > 15) {
                text = random_expression(1, true, false, mix_seed(layout.seed, 20 + j));
            }
            expressions.push_back(std::move(text));
        }
        char name[32];
        std::snprintf(name, sizeof(name), "scene_%05d", i);
        const Scene scene = layout_scene(expressions, layout, name);
        objects += scene.objects.size();
        gts[scene.image_id] = scene.objects;
        dets[scene.image_id] = perturb(scene, noise, mix_seed(99, layout.seed));
    }

    const EvalReport degraded = evaluate_map(dets, gts, 0.5);
    double worst = 0.0;
    bool endpoints_ok = true;
    for (const auto& c : degraded.per_class) {
        const double recall_end = c.curve.points.empty() ? 0.0 : c.curve.points.back().recall;
        worst = std::max(worst, std::abs(recall_end - 0.5));
        endpoints_ok = endpoints_ok && recall_end >= 0.47 && recall_end <= 0.53;
    }

    // Zero noise on the same scenes scores a clean 1.0.
    DetectionsByImage clean;
    for (const auto& [id, objects_list] : gts) {
        Scene scene;
        scene.objects = objects_list;
        clean[id] = exact_detections(scene);
    }
    const EvalReport perfect = evaluate_map(clean, gts, 0.5);

    std::ostringstream s;
    s << objects << " objects, " << degraded.per_class.size()
      << " classes; worst |recall-0.5| = " << worst << "; zero-noise mAP = " << perfect.map;
    note = s.str();
    return objects >= 2000 && endpoints_ok && perfect.map == 1.0;
}

// --- criterion 6: anchor recovery on nine jittered clusters ---

bool check_anchors(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Dims> generating = {
        {0.023, 0.028}, {0.038, 0.051}, {0.056, 0.092}, {0.112, 0.115}, {0.069, 0.194},
        {0.192, 0.183}, {0.173, 0.304}, {0.280, 0.248}, {0.360, 0.358},
    };

    std::vector<Dims> boxes;
    for (std::size_t cluster = 0; cluster < generating.size(); ++cluster) {
        LayoutSpec layout;
        layout.glyph_width = generating[cluster].w;
        layout.glyph_height = generating[cluster].h;
        layout.margin_x = 0.02;
        layout.margin_y = generating[cluster].h / 2 + 0.01;
        layout.gap = 0.002;
        layout.line_gap = 0.01;
        layout.size_sigma = 0.01;
        const int per_line = std::max(1, std::min(12, max_symbols_per_line(layout)));
        const std::string text(static_cast<std::size_t>(per_line), '1');
        const int scenes = 600 / per_line + 1;
        for (int i = 0; i < scenes; ++i) {
            layout.seed = mix_seed(1000 + cluster, static_cast<std::uint64_t>(i));
            const Scene scene = layout_scene({text}, layout);
            for (const auto& o : scene.objects) {
                boxes.push_back({o.box.width, o.box.height});
            }
        }
    }

    const ClusterResult result = cluster_anchors(boxes, 9, 1);

    bool monotone = true;
    for (std::size_t i = 1; i < result.objective_history.size(); ++i) {
        monotone =
            monotone && result.objective_history[i] <= result.objective_history[i - 1] + 1e-12;
    }

    double worst_rel = 0.0;
    std::vector<bool> taken(generating.size(), false);
    for (const auto& anchor : result.anchors.anchors) {
        int best = -1;
        double best_d = 1e18;
        for (std::size_t i = 0; i < generating.size(); ++i) {
            if (taken[i]) continue;
            const double d = 1.0 - anchor_iou(anchor, generating[i]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        taken[static_cast<std::size_t>(best)] = true;
        const auto& truth = generating[static_cast<std::size_t>(best)];
        worst_rel = std::max(worst_rel, std::abs(anchor.w - truth.w) / truth.w);
        worst_rel = std::max(worst_rel, std::abs(anchor.h - truth.h) / truth.h);
    }

    const double took = seconds_since(start);
    std::ostringstream s;
    s << boxes.size() << " boxes; worst centroid error " << worst_rel * 100
      << "% (< 5%); objective " << (monotone ? "monotone" : "NOT monotone") << " over "
      << result.iterations << " iterations (" << format_seconds(took, 30.0) << ")";
    note = s.str();
    return boxes.size() >= 5000 && worst_rel < 0.05 && monotone && took < 30.0;
}

// --- criterion 7: differential evaluation over 10,000 expressions ---

bool check_parser_differential(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const int count = 10000;
    int matches = 0;
    int divisions_by_zero = 0;
    for (int i = 0; i < count; ++i) {
        const std::string text =
            random_expression(1 + i % 4, i % 2 == 0, i % 3 != 0,
                              mix_seed(31337, static_cast<std::uint64_t>(i)));
        Rational mine;
        bool mine_dbz = false;
        try {
            mine = evaluate(*parse(lex_text(text)).expr);
        } catch (const DivisionByZero&) {
            mine_dbz = true;
        }
        Rational reference;
        bool reference_dbz = false;
        try {
            reference = testsupport::DirectEvaluator(text).run();
        } catch (const DivisionByZero&) {
            reference_dbz = true;
        }
        if (mine_dbz || reference_dbz) {
            divisions_by_zero += mine_dbz && reference_dbz;
            matches += mine_dbz == reference_dbz;
        } else {
            matches += mine == reference;
        }
    }
    const double took = seconds_since(start);
    std::ostringstream s;
    s << matches << "/" << count << " identical as rationals (" << divisions_by_zero
      << " agreed zero divisions) (" << format_seconds(took, 10.0) << ")";
    note = s.str();
    return matches == count && took < 10.0;
}

// --- criterion 8: byte-identical CLI runs ---

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path path =
        fs::temp_directory_path() / ("detcalc_acceptance_out" + std::to_string(counter++));
    const std::string cmd =
        std::string(DETCALC_CLI_PATH) + " " + args + " > " + path.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(path, std::ios::binary);
    CliRun r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return r;
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
    std::vector<fs::path> rel;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
    }
    std::size_t b_files = 0;
    for (const auto& e : fs::recursive_directory_iterator(b)) {
        b_files += e.is_regular_file();
    }
    if (b_files != rel.size()) return false;
    for (const auto& r : rel) {
        std::ifstream fa(a / r, std::ios::binary);
        std::ifstream fb(b / r, std::ios::binary);
        if (!fb) return false;
        const std::string sa{std::istreambuf_iterator<char>(fa),
                             std::istreambuf_iterator<char>()};
        const std::string sb{std::istreambuf_iterator<char>(fb),
                             std::istreambuf_iterator<char>()};
        if (sa != sb) return false;
    }
    return true;
}

bool check_determinism(std::string& note) {
    const fs::path base = fs::temp_directory_path() / "detcalc_acceptance";
    fs::remove_all(base);
    const fs::path a = base / "a";
    const fs::path b = base / "b";
    const std::string gen_flags = " --scenes 8 --exprs-per-scene 2 --seed 2024";
    const CliRun gen_a = run_cli("gen " + a.string() + gen_flags);
    const CliRun gen_b = run_cli("gen " + b.string() + gen_flags);
    const bool gen_ok = gen_a.exit_code == 0 && gen_b.exit_code == 0 && dirs_identical(a, b);

    const std::string det_dir = (a / "detections").string();
    const std::string ann_dir = (a / "annotations").string();
    const CliRun solve_1 = run_cli("solve " + det_dir);
    const CliRun solve_2 = run_cli("solve " + det_dir + " --jobs 4");
    const bool solve_ok = solve_1.exit_code == solve_2.exit_code && solve_1.out == solve_2.out &&
                          !solve_1.out.empty();

    const CliRun eval_1 = run_cli("eval-map " + det_dir + " " + ann_dir);
    const CliRun eval_2 = run_cli("eval-map " + det_dir + " " + ann_dir + " --jobs 4");
    const bool eval_ok = eval_1.exit_code == 0 && eval_2.exit_code == 0 &&
                         eval_1.out == eval_2.out && !eval_1.out.empty();

    std::ostringstream s;
    s << "gen dirs " << (gen_ok ? "identical" : "DIFFER") << "; solve bytes "
      << (solve_ok ? "identical" : "DIFFER") << "; eval-map bytes "
      << (eval_ok ? "identical" : "DIFFER");
    note = s.str();
    return gen_ok && solve_ok && eval_ok;
}

} // namespace

int main() {
    const std::vector<Check> checks = {
        {"expression-corpus", check_expression_corpus},
        {"multi-expression-separation", check_separation},
        {"perfect-detector-map", check_perfect_map},
        {"eleven-point-ap", check_eleven_point_ap},
        {"metric-degradation", check_degradation},
        {"anchor-clustering", check_anchors},
        {"parser-differential", check_parser_differential},
        {"round-trip-determinism", check_determinism},
    };

    int failures = 0;
    for (const auto& check : checks) {
        std::string note;
        bool ok = false;
        try {
            ok = check.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        std::printf("%s  %-28s  %s\n", ok ? "PASS" : "FAIL", check.name.c_str(), note.c_str());
        failures += !ok;
    }
    return failures;
}
