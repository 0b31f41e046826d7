#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "courtlab/geometry.hpp"

namespace courtlab {

enum class Phase { Attack, Defense };

std::string to_string(Phase p);
Phase parse_phase(const std::string& text);

struct FrameEntry {
    int player_index = 0;
    Point2 pos;
    std::optional<double> speed_mps;
    std::optional<Phase> phase;
};

/// Synchronized snapshot of every player present at tick `t_ms`.
/// Entries are sorted by player_index.
struct MotionFrame {
    std::int64_t t_ms = 0;
    std::vector<FrameEntry> entries;

    const FrameEntry* find(int player_index) const;
};

}  // namespace courtlab
