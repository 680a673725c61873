#pragma once

#include <utility>
#include <vector>

#include "pasim/phy/phy_params.hpp"
#include "pasim/sim/time.hpp"

namespace pasim {

enum class TxOutcome { Success, Failure };

/// Auto-Rate Fallback over an ordered rate ladder.
///
/// `up_threshold` consecutive successes move one rung up; `down_threshold`
/// consecutive failures move one rung down. The first frame after a step up is
/// a probe: if it fails the station falls straight back.
class ArfState {
public:
    explicit ArfState(std::vector<BitRate> ladder = {mbps(1), mbps(2), mbps(5.5), mbps(11)},
                      BitRate initial = mbps(11), int up_threshold = 10, int down_threshold = 2);

    [[nodiscard]] BitRate rate() const { return ladder_[index_]; }
    [[nodiscard]] int success_streak() const { return success_streak_; }
    [[nodiscard]] int failure_streak() const { return failure_streak_; }
    [[nodiscard]] bool probing() const { return probing_; }
    [[nodiscard]] const std::vector<BitRate>& ladder() const { return ladder_; }
    [[nodiscard]] int up_threshold() const { return up_threshold_; }
    [[nodiscard]] int down_threshold() const { return down_threshold_; }

    /// Feeds one DATA outcome; returns true when the rate changed.
    bool step(TxOutcome outcome);

private:
    std::vector<BitRate> ladder_;
    std::size_t index_ = 0;
    int up_threshold_;
    int down_threshold_;
    int success_streak_ = 0;
    int failure_streak_ = 0;
    bool probing_ = false;
};

/// Returns the rate after feeding `outcome`.
inline BitRate arf_step(ArfState& state, TxOutcome outcome) {
    state.step(outcome);
    return state.rate();
}

/// Piecewise-constant highest rate a link sustains over time.
class LinkQualityTrace {
public:
    LinkQualityTrace() = default;
    /// Steps must be sorted by time; before the first step its rate applies.
    explicit LinkQualityTrace(std::vector<std::pair<SimTime, BitRate>> steps);

    [[nodiscard]] BitRate max_rate_at(SimTime t) const;
    [[nodiscard]] bool empty() const { return steps_.empty(); }
    [[nodiscard]] const std::vector<std::pair<SimTime, BitRate>>& steps() const { return steps_; }

private:
    std::vector<std::pair<SimTime, BitRate>> steps_;
};

}  // namespace pasim
