#pragma once

#include <string>
#include <vector>

#include "frame_spec.hpp"

namespace goh::cli {

// Built-in frames, in the order listed by `goh demo --list`.
const std::vector<FrameSpec>& demo_frames();
// Throws RangeError for an unknown name.
const FrameSpec& demo_frame(const std::string& name);

}  // namespace goh::cli
