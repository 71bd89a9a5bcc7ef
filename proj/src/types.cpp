#include "eegclass/types.hpp"

#include <algorithm>
#include <cctype>

namespace eegclass {

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string to_string(ClassLabel label) {
    return label == ClassLabel::Adhd ? "ADHD" : "Control";
}

ClassLabel parse_label(const std::string& text) {
    const std::string t = lower(text);
    if (t == "adhd") return ClassLabel::Adhd;
    if (t == "control") return ClassLabel::Control;
    throw ValidationError("unknown class label: '" + text + "' (expected ADHD or Control)");
}

const std::array<std::string, kNumChannels>& canonical_channels() {
    static const std::array<std::string, kNumChannels> channels = {
        "Fz", "Cz", "Pz", "C3", "T3", "C4", "T4", "Fp1", "Fp2", "F3",
        "F4", "F7", "F8", "P3", "P4", "T5", "T6", "O1", "O2"};
    return channels;
}

int channel_index(const std::string& name) {
    const std::string needle = lower(name);
    const auto& channels = canonical_channels();
    for (int i = 0; i < kNumChannels; ++i) {
        if (lower(channels[i]) == needle) return i;
    }
    return -1;
}

}  // namespace eegclass
