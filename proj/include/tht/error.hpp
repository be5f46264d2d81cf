#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tht {

/// Raised when a problem instance does not determine a unique solution:
/// rank-deficient least-squares systems, non-overlapping truncation masks,
/// or interpolation orders above the ill-posedness cap.
class degenerate_problem : public std::runtime_error {
public:
    explicit degenerate_problem(const std::string& what,
                                std::vector<std::size_t> modes = {})
        : std::runtime_error(what), modes_(std::move(modes)) {}

    /// 1-based series indices that the data cannot resolve (may be empty).
    [[nodiscard]] const std::vector<std::size_t>& modes() const noexcept { return modes_; }

private:
    std::vector<std::size_t> modes_;
};

/// Malformed text input; carries the offending 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace tht
