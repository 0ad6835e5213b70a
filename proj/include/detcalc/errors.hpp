#pragma once

#include <stdexcept>
#include <string>

namespace detcalc {

/// Base class of every error the library throws. `kind()` is a stable
/// machine-readable tag ("MalformedLine", "SyntaxError", ...); what() is
/// the tag followed by a human-readable message with context.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)),
          message_(std::move(message)) {}

    const std::string& kind() const noexcept { return kind_; }
    /// Message without the kind prefix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string kind_;
    std::string message_;
};

// --- file format errors ---

struct MalformedLine : Error {
    MalformedLine(const std::string& file, int line_no, const std::string& message)
        : Error("MalformedLine", file + ":" + std::to_string(line_no) + ": " + message) {}
};

struct OutOfRangeClass : Error {
    OutOfRangeClass(const std::string& file, int line_no, long id)
        : Error("OutOfRangeClass", file + ":" + std::to_string(line_no) + ": class id " +
                                       std::to_string(id) + " outside [0, 17]") {}
};

struct ConfidenceOutOfRange : Error {
    ConfidenceOutOfRange(const std::string& file, int line_no, double value)
        : Error("ConfidenceOutOfRange", file + ":" + std::to_string(line_no) +
                                            ": confidence " + std::to_string(value) +
                                            " outside [0, 1]") {}
};

struct BadClassMap : Error {
    explicit BadClassMap(const std::string& message) : Error("BadClassMap", message) {}
};

// --- metric errors ---

struct EmptyGroundTruth : Error {
    explicit EmptyGroundTruth(int class_id)
        : Error("EmptyGroundTruth",
                "class " + std::to_string(class_id) + " has no ground-truth instances") {}
};

struct NoGroundTruthAtAll : Error {
    NoGroundTruthAtAll() : Error("NoGroundTruthAtAll", "ground truth is empty") {}
};

// --- clustering errors ---

struct InsufficientBoxes : Error {
    InsufficientBoxes(std::size_t n, int k)
        : Error("InsufficientBoxes", std::to_string(n) + " boxes cannot seed k=" +
                                         std::to_string(k) + " clusters") {}
};

// --- expression errors ---

struct MalformedNumber : Error {
    explicit MalformedNumber(const std::string& message) : Error("MalformedNumber", message) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error("SyntaxError", "at item " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& divisor_text)
        : Error("DivisionByZero", "divisor `" + divisor_text + "` evaluates to zero") {}
};

// --- generator / CLI errors ---

struct DoesNotFit : Error {
    explicit DoesNotFit(const std::string& message) : Error("DoesNotFit", message) {}
};

struct MissingAnnotation : Error {
    explicit MissingAnnotation(const std::string& image_id)
        : Error("MissingAnnotation", "no annotation for image id `" + image_id + "`") {}
};

/// An expression-module error re-raised with the vertical band of the
/// line it came from; `kind()` is the underlying error's kind.
struct LineSolveError : Error {
    LineSolveError(const Error& cause, double y_min, double y_max)
        : Error(cause.kind(), cause.message() + " (y_band [" + std::to_string(y_min) + ", " +
                                  std::to_string(y_max) + "])") {}
};

} // namespace detcalc
