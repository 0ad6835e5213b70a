#include "detcalc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "detcalc/errors.hpp"

namespace detcalc {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string f;
    while (in >> f) fields.push_back(f);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && !s.empty();
}

bool parse_class_id(const std::string& s, long& out) {
    char* end = nullptr;
    out = std::strtol(s.c_str(), &end, 10);
    return end == s.c_str() + s.size() && !s.empty();
}

/// Shared line parser; `with_confidence` selects the detection layout.
void parse_line(const std::string& file, int line_no, const std::vector<std::string>& fields,
                bool with_confidence, int& class_id, double& confidence, Box& box) {
    const std::size_t expected = with_confidence ? 6 : 5;
    if (fields.size() != expected) {
        throw MalformedLine(file, line_no,
                            "expected " + std::to_string(expected) + " fields, got " +
                                std::to_string(fields.size()));
    }

    long id = 0;
    if (!parse_class_id(fields[0], id)) {
        throw MalformedLine(file, line_no, "class id `" + fields[0] + "` is not an integer");
    }
    if (!valid_class_id(id)) throw OutOfRangeClass(file, line_no, id);
    class_id = static_cast<int>(id);

    std::size_t at = 1;
    confidence = 1.0;
    if (with_confidence) {
        if (!parse_double(fields[at], confidence)) {
            throw MalformedLine(file, line_no, "confidence `" + fields[at] + "` is not numeric");
        }
        if (confidence < 0.0 || confidence > 1.0) {
            throw ConfidenceOutOfRange(file, line_no, confidence);
        }
        ++at;
    }

    double v[4];
    static const char* const kField[4] = {"x_center", "y_center", "width", "height"};
    for (int i = 0; i < 4; ++i, ++at) {
        if (!parse_double(fields[at], v[i])) {
            throw MalformedLine(file, line_no, std::string(kField[i]) + " `" + fields[at] +
                                                   "` is not numeric");
        }
    }
    box = Box{v[0], v[1], v[2], v[3]};
    if (box.x_center < 0.0 || box.x_center > 1.0 || box.y_center < 0.0 || box.y_center > 1.0) {
        throw MalformedLine(file, line_no, "center outside [0, 1]");
    }
    if (box.width <= 0.0 || box.width > 1.0 || box.height <= 0.0 || box.height > 1.0) {
        throw MalformedLine(file, line_no, "dimensions outside (0, 1]");
    }
}

template <typename Record, bool WithConfidence>
std::pair<std::string, std::vector<Record>> read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::vector<Record> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        int class_id = 0;
        double confidence = 1.0;
        Box box;
        parse_line(path.string(), line_no, fields, WithConfidence, class_id, confidence, box);
        if constexpr (WithConfidence) {
            records.push_back(Record{class_id, box, confidence});
        } else {
            records.push_back(Record{class_id, box});
        }
    }
    return {path.stem().string(), std::move(records)};
}

template <typename T>
std::vector<std::pair<std::string, std::vector<T>>>
read_dir(const std::filesystem::path& dir,
         std::pair<std::string, std::vector<T>> (*reader)(const std::filesystem::path&)) {
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error(dir.string() + " is not a directory");
    }
    std::vector<std::pair<std::string, std::vector<T>>> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        out.push_back(reader(entry.path()));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace

std::string format_coord(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::pair<std::string, std::vector<GroundTruthObject>>
read_annotation_file(const std::filesystem::path& path) {
    return read_file<GroundTruthObject, false>(path);
}

std::pair<std::string, std::vector<Detection>>
read_detection_file(const std::filesystem::path& path) {
    return read_file<Detection, true>(path);
}

std::vector<std::pair<std::string, std::vector<GroundTruthObject>>>
read_annotations_dir(const std::filesystem::path& dir) {
    return read_dir<GroundTruthObject>(dir, &read_annotation_file);
}

std::vector<std::pair<std::string, std::vector<Detection>>>
read_detections_dir(const std::filesystem::path& dir) {
    return read_dir<Detection>(dir, &read_detection_file);
}

void write_annotation_file(const std::filesystem::path& path,
                           const std::vector<GroundTruthObject>& objects) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& o : objects) {
        out << o.class_id << ' ' << format_coord(o.box.x_center) << ' '
            << format_coord(o.box.y_center) << ' ' << format_coord(o.box.width) << ' '
            << format_coord(o.box.height) << '\n';
    }
}

void write_detection_file(const std::filesystem::path& path,
                          const std::vector<Detection>& detections) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& d : detections) {
        out << d.class_id << ' ' << format_coord(d.confidence) << ' '
            << format_coord(d.box.x_center) << ' ' << format_coord(d.box.y_center) << ' '
            << format_coord(d.box.width) << ' ' << format_coord(d.box.height) << '\n';
    }
}

} // namespace detcalc
