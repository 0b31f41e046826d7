#include "courtlab/motion_frame.hpp"

#include <algorithm>

#include "courtlab/error.hpp"

namespace courtlab {

std::string to_string(Phase p) { return p == Phase::Attack ? "attack" : "defense"; }

Phase parse_phase(const std::string& text) {
    if (text == "attack" || text == "Attack") return Phase::Attack;
    if (text == "defense" || text == "Defense") return Phase::Defense;
    throw input_error("phase", "unknown phase label '" + text + "'");
}

const FrameEntry* MotionFrame::find(int player_index) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), player_index,
                               [](const FrameEntry& e, int id) { return e.player_index < id; });
    if (it == entries.end() || it->player_index != player_index) return nullptr;
    return &*it;
}

}  // namespace courtlab
