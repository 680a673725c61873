#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pasim/mac/pas_state.hpp"
#include "pasim/phy/channel.hpp"
#include "pasim/scenario/arf.hpp"
#include "pasim/sim/engine.hpp"
#include "pasim/sim/rng.hpp"

namespace pasim {

enum class MacKind { Dcf, Pas, CwAdapt, PacketDivision, FixedTxop };

std::string_view to_string(MacKind kind);
/// Parses "dcf", "pas", "cw_adapt", "packet_division", "fixed_txop".
std::optional<MacKind> parse_mac_kind(std::string_view text);

struct MacConfig {
    MacKind kind = MacKind::Dcf;
    PasOptions pas;
    /// DATA payloads at or above this size are protected by RTS/CTS.
    std::optional<int> rts_threshold;
    /// CW_ADAPT: every contention window is scaled by reference_rate / data_rate.
    BitRate cw_reference_rate = mbps(11);
    /// After a reception that was not decoded, defer EIFS (SIFS + ACK + DIFS) instead of DIFS.
    bool eifs = true;

    [[nodiscard]] bool uses_pas() const { return kind == MacKind::Pas || kind == MacKind::FixedTxop; }

    friend bool operator==(const MacConfig&, const MacConfig&) = default;
};

/// One DATA transmission as seen by its sender.
struct DataTxRecord {
    NodeId station = 0;
    int flow = -1;
    SimTime start{};
    SimTime end{};
    int payload_bytes = 0;
    Emission emission = Emission::Classical;
    bool retry = false;
    /// Increments at each CLASSICAL frame; AGGREGATED frames share their predecessor's id.
    std::uint64_t burst_id = 0;
    /// PAS budget (t_my_left after reload) at the start of the burst; zero for DCF.
    Duration burst_budget{};
    Duration t_my_packet{};
    /// Instant the SIFS preceding an aggregated frame began (end of the previous ACK, or the retry point).
    std::optional<SimTime> sifs_anchor;
    Duration t_p_max{};
};

class MacObserver {
public:
    virtual ~MacObserver() = default;
    virtual void on_data_tx(const DataTxRecord& /*record*/) {}
    /// First successful reception of an MSDU at its destination.
    virtual void on_delivery(NodeId /*receiver*/, const Frame& /*frame*/, SimTime /*at*/) {}
    /// The sender decoded its own ACK; `t_p_max` is the PAS value after the ACK was processed.
    virtual void on_own_ack(NodeId /*station*/, SimTime /*at*/, Duration /*t_p_max*/) {}
    virtual void on_drop(NodeId /*station*/, int /*flow*/) {}
    /// Every contention-window change, for ladder invariants.
    virtual void on_cw(NodeId /*station*/, int /*cw*/) {}
};

struct StationCounters {
    std::uint64_t data_tx = 0;
    std::uint64_t aggregated_tx = 0;
    std::uint64_t rts_tx = 0;
    std::uint64_t successes = 0;
    std::uint64_t ack_timeouts = 0;
    std::uint64_t cts_timeouts = 0;
    std::uint64_t in_burst_retries = 0;
    std::uint64_t drops = 0;
    std::uint64_t packets_dequeued = 0;
    Duration min_t_p_max = Duration::max();
    Duration max_t_p_max = Duration::zero();
    Duration min_t_my_packet = Duration::max();
    Duration max_t_my_packet = Duration::zero();
};

/// Saturated source of MAC payloads; each call yields the MAC frames of one upper-layer packet.
using PayloadSource = std::function<std::vector<int>()>;

struct FlowBinding {
    int flow = -1;
    NodeId dst = 0;
    BitRate rate{};
    PayloadSource source;
};

/// IEEE 802.11 DCF station with optional PAS, CW-adaptation and fixed-TXOP behaviour.
class Station final : public ChannelListener {
public:
    Station(NodeId id, Engine& engine, Channel& channel, const PhyParams& phy, MacConfig config, RngStream rng,
            MacObserver* observer = nullptr);

    /// Makes this station a saturated sender. Without a flow it only answers (ACK/CTS).
    void bind_flow(FlowBinding flow);
    void enable_arf(ArfState arf);

    /// Starts contending at the current time if a flow is bound.
    void start();

    void on_energy_start() override;
    void on_signal_end(const SignalEnd& end) override;
    void on_transmit_end(const Frame& frame) override;

    [[nodiscard]] NodeId id() const { return id_; }
    [[nodiscard]] int cw() const { return cw_; }
    [[nodiscard]] int effective_cw() const;
    [[nodiscard]] int backoff_slots() const { return backoff_; }
    [[nodiscard]] int retry_count() const { return retry_count_; }
    [[nodiscard]] SimTime nav_until() const { return nav_until_; }
    [[nodiscard]] Duration eifs() const;
    [[nodiscard]] bool medium_busy() const;
    [[nodiscard]] BitRate current_rate() const;
    [[nodiscard]] const PasState* pas() const { return pas_ ? &*pas_ : nullptr; }
    [[nodiscard]] const StationCounters& counters() const { return counters_; }
    [[nodiscard]] const std::optional<ArfState>& arf() const { return arf_; }

    /// Test hook: forces the next backoff draw.
    void force_next_backoff(int slots) { forced_backoff_ = slots; }

private:
    enum class Phase { Idle, Contend, TxRts, WaitCts, TxData, WaitAck, SifsPending };

    struct Packet {
        int bytes = 0;
        std::uint64_t seq = 0;
    };

    // Medium tracking and DCF access.
    void refresh_medium();
    void on_medium_idle();
    void on_medium_busy();
    void schedule_grant_if_needed();
    void request_access();
    void draw_backoff();
    void on_grant();
    void set_cw(int cw);

    // Exchange sequencing.
    void ensure_packet();
    [[nodiscard]] Duration packet_airtime() const;
    [[nodiscard]] Duration packet_decrement() const;
    [[nodiscard]] bool wants_rts() const;
    void send_rts();
    void send_data(Emission emission, std::optional<SimTime> sifs_anchor);
    void schedule_sifs_data(Emission emission);
    void send_response(Frame frame);
    void handle_frame(const Frame& frame);
    void on_success();
    void on_ack_timeout();
    void on_cts_timeout();
    void drop_packet();
    void backoff_and_contend(bool double_cw);

    NodeId id_;
    Engine& engine_;
    Channel& channel_;
    const PhyParams& phy_;
    MacConfig config_;
    RngStream rng_;
    MacObserver* observer_;

    std::optional<FlowBinding> flow_;
    std::optional<ArfState> arf_;
    std::optional<PasState> pas_;

    std::deque<int> queue_;
    std::optional<Packet> current_;
    std::uint64_t next_seq_ = 1;
    Emission current_emission_ = Emission::Classical;
    bool current_is_retry_ = false;
    std::uint64_t burst_id_ = 0;
    Duration burst_budget_{};

    Phase phase_ = Phase::Idle;
    int cw_;
    int retry_count_ = 0;
    int backoff_ = 0;
    std::optional<int> forced_backoff_;

    bool idle_ = true;
    SimTime count_from_;
    bool access_wanted_ = false;
    EventHandle grant_event_;
    SimTime grant_time_{};
    bool sifs_retry_waiting_ = false;

    SimTime eifs_until_{};
    SimTime nav_until_{};
    EventHandle nav_event_;
    EventHandle timeout_event_;

    std::map<NodeId, std::uint64_t> last_seq_from_;
    StationCounters counters_;
};

}  // namespace pasim
