#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

namespace eegclass {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Bad inputs, bad config, malformed files. CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures that occur after inputs were accepted (non-convergence, I/O mid-run).
// CLI maps this to exit code 2.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ClassLabel { Control = 0, Adhd = 1 };

// ADHD is the positive class everywhere: +1 for the SVM, 1 for the GBT,
// and the reference class for precision/recall.
std::string to_string(ClassLabel label);
ClassLabel parse_label(const std::string& text);  // case-insensitive

// 10-20 montage, in the fixed column order every Recording uses.
inline constexpr int kNumChannels = 19;
const std::array<std::string, kNumChannels>& canonical_channels();

// Case-insensitive index into canonical_channels(); -1 if unknown.
int channel_index(const std::string& name);

}  // namespace eegclass
