#include "pasim/scenario/arf.hpp"

#include <algorithm>
#include <stdexcept>

namespace pasim {

ArfState::ArfState(std::vector<BitRate> ladder, BitRate initial, int up_threshold, int down_threshold)
    : ladder_(std::move(ladder)), up_threshold_(up_threshold), down_threshold_(down_threshold) {
    if (ladder_.empty()) throw std::invalid_argument("arf: empty rate ladder");
    if (!std::is_sorted(ladder_.begin(), ladder_.end())) throw std::invalid_argument("arf: ladder must be ascending");
    if (up_threshold_ < 1 || down_threshold_ < 1) throw std::invalid_argument("arf: thresholds must be positive");
    const auto it = std::find(ladder_.begin(), ladder_.end(), initial);
    if (it == ladder_.end()) throw std::invalid_argument("arf: initial rate not on the ladder");
    index_ = static_cast<std::size_t>(it - ladder_.begin());
}

bool ArfState::step(TxOutcome outcome) {
    if (outcome == TxOutcome::Success) {
        probing_ = false;
        failure_streak_ = 0;
        if (++success_streak_ >= up_threshold_) {
            success_streak_ = 0;
            if (index_ + 1 < ladder_.size()) {
                ++index_;
                probing_ = true;
                return true;
            }
        }
        return false;
    }

    success_streak_ = 0;
    ++failure_streak_;
    if (probing_ || failure_streak_ >= down_threshold_) {
        probing_ = false;
        failure_streak_ = 0;
        if (index_ > 0) {
            --index_;
            return true;
        }
    }
    return false;
}

LinkQualityTrace::LinkQualityTrace(std::vector<std::pair<SimTime, BitRate>> steps) : steps_(std::move(steps)) {
    if (!std::is_sorted(steps_.begin(), steps_.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; })) {
        throw std::invalid_argument("link quality trace: steps must be sorted by time");
    }
}

BitRate LinkQualityTrace::max_rate_at(SimTime t) const {
    if (steps_.empty()) throw std::logic_error("link quality trace is empty");
    BitRate r = steps_.front().second;
    for (const auto& [at, rate] : steps_) {
        if (at > t) break;
        r = rate;
    }
    return r;
}

}  // namespace pasim
