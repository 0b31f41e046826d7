#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/motion_frame.hpp"
#include "courtlab/spacing.hpp"

namespace courtlab {

enum class FrameFormat { Document, JsonLines };

struct FrameExportOptions {
    std::optional<std::int64_t> from_ms;  // inclusive
    std::optional<std::int64_t> to_ms;    // exclusive
    int stride = 1;
    double rate_hz = 5.0;
    FrameFormat format = FrameFormat::Document;
};

/// Serializes frames for the motion-chart viewer. The header carries the
/// court size and a 1200x600 canvas hint. An empty range yields the header
/// alone.
std::string export_motion_frames(std::span<const MotionFrame> frames, const CourtSpec& court,
                                 const FrameExportOptions& options = {});

struct FrameStream {
    CourtSpec court;
    double rate_hz = 0.0;
    std::vector<MotionFrame> frames;
};

/// Reads either export format back.
FrameStream import_motion_frames(const std::string& text);

/// Copies each spacing frame's phase onto the entries of the motion frame
/// with the same timestamp.
void annotate_phases(std::vector<MotionFrame>& frames, std::span<const SpacingFrame> spacing);

}  // namespace courtlab
