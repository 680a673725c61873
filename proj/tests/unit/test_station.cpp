#include <doctest.h>

#include <memory>

#include "pasim/mac/station.hpp"

using namespace pasim;

namespace {

struct Recorder : MacObserver {
    std::vector<DataTxRecord> tx;
    std::vector<SimTime> delivered;
    std::vector<int> cw;
    std::vector<Duration> t_p_max_after_ack;
    void on_data_tx(const DataTxRecord& r) override { tx.push_back(r); }
    void on_delivery(NodeId, const Frame&, SimTime at) override { delivered.push_back(at); }
    void on_cw(NodeId, int v) override { cw.push_back(v); }
    void on_own_ack(NodeId, SimTime, Duration t) override { t_p_max_after_ack.push_back(t); }
};

struct Bed {
    PhyParams phy;
    Engine engine;
    Channel channel;
    Recorder rec;
    std::vector<std::unique_ptr<Station>> st;

    Bed(Topology t, MacConfig mac) : channel(engine, t) {
        for (NodeId n = 0; n < t.size(); ++n) {
            st.push_back(std::make_unique<Station>(n, engine, channel, phy, mac, RngStream(5, static_cast<std::uint64_t>(n)),
                                                   &rec));
        }
    }

    void send(NodeId src, NodeId dst, BitRate rate, int bytes = 1000) {
        st[static_cast<std::size_t>(src)]->bind_flow(FlowBinding{src, dst, rate, [bytes] { return std::vector<int>{bytes}; }});
    }
};

SimTime us(double v) { return kSimStart + from_us(v); }

}  // namespace

TEST_CASE("an idle medium lets the first frame go after DIFS only") {
    Bed b(Topology::fully_connected(2), MacConfig{});
    b.send(0, 1, mbps(11));
    b.st[0]->start();
    b.engine.run_until(us(200));
    REQUIRE(b.rec.tx.size() == 1);
    CHECK(b.rec.tx[0].start == us(50));
}

TEST_CASE("post-backoff follows the acknowledgement") {
    Bed b(Topology::fully_connected(2), MacConfig{});
    b.send(0, 1, mbps(11));
    b.st[0]->start();
    b.engine.run_until(us(100));
    b.st[0]->force_next_backoff(3);
    b.engine.run_until(us(3000));
    REQUIRE(b.rec.tx.size() >= 2);
    // DATA 50..1004.182, SIFS, ACK 1014.182..1318.182, then DIFS + 3 slots.
    CHECK(b.rec.delivered.at(0) == us(1004.182));
    CHECK(b.rec.tx[1].start == us(1318.182 + 50 + 60));
    CHECK(b.st[0]->counters().successes >= 1);
}

TEST_CASE("backoff pauses while the medium is busy and resumes after DIFS") {
    Topology t = Topology::fully_connected(3);
    Bed b(t, MacConfig{});
    b.send(0, 1, mbps(11));
    b.st[0]->force_next_backoff(5);
    b.st[0]->start();
    // Two whole slots elapse (50..90 us) before a 304 us frame from node 2 arrives at 95 us.
    b.engine.schedule(us(95), {}, [&] { b.channel.transmit(make_frame(FrameKind::Ack, 2, 2, 0, mbps(1), b.phy)); });
    b.engine.run_until(us(2000));
    REQUIRE(!b.rec.tx.empty());
    CHECK(b.rec.tx[0].start == us(95 + 304 + 50 + 3 * 20));
}

TEST_CASE("a corrupted frame defers the next access by EIFS") {
    Topology t = Topology::fully_connected(3);
    Bed b(t, MacConfig{});
    b.send(0, 1, mbps(11));
    b.st[0]->force_next_backoff(0);
    b.st[0]->start();
    b.engine.schedule(us(10), {}, [&] {
        b.channel.transmit(make_frame(FrameKind::Ack, 1, 2, 0, mbps(1), b.phy));
        b.channel.transmit(make_frame(FrameKind::Ack, 2, 1, 0, mbps(1), b.phy));
    });
    b.engine.run_until(us(2000));
    REQUIRE(!b.rec.tx.empty());
    CHECK(b.st[0]->eifs() == microseconds(10 + 304 + 50));
    CHECK(b.rec.tx[0].start == us(10 + 304 + 364));
}

TEST_CASE("missing acknowledgements double the window up to the cap, then the packet is dropped") {
    Topology t = Topology::fully_connected(2);
    t.disconnect(0, 1);
    Bed b(t, MacConfig{});
    b.send(0, 1, mbps(11));
    b.st[0]->start();
    b.engine.run_until(SimTime{seconds(2)});
    const auto& cw = b.rec.cw;
    // Seven doublings for the seven retries, then the drop resets the window.
    REQUIRE(cw.size() >= 8);
    CHECK(std::vector<int>(cw.begin(), cw.begin() + 8) == std::vector<int>{63, 127, 255, 511, 1023, 1023, 1023, 31});
    const auto& c = b.st[0]->counters();
    CHECK(c.drops >= 1);
    // retry_limit 7 means eight transmissions per dropped packet.
    CHECK(c.data_tx >= 8 * c.drops);
    CHECK(c.ack_timeouts >= 8 * c.drops);
}

TEST_CASE("CW adaptation scales the window drawn by a slow station") {
    MacConfig mac;
    mac.kind = MacKind::CwAdapt;
    Bed b(Topology::fully_connected(2), mac);
    b.send(0, 1, mbps(1));
    b.st[0]->start();
    CHECK(b.st[0]->effective_cw() == 341);
}

TEST_CASE("a fast PAS station bursts behind a slow one and t_p_max is zero after its own ACK") {
    MacConfig mac;
    mac.kind = MacKind::Pas;
    Bed b(Topology::fully_connected(4), mac);
    b.send(0, 1, mbps(1));
    b.send(2, 3, mbps(11));
    b.st[0]->start();
    b.st[2]->start();
    b.engine.run_until(SimTime{seconds(1)});
    int max_frames = 0;
    int run = 0;
    for (const auto& r : b.rec.tx) {
        if (r.station != 2) continue;
        run = r.emission == Emission::Aggregated ? run + 1 : 1;
        max_frames = std::max(max_frames, run);
        if (r.emission == Emission::Aggregated) {
            REQUIRE(r.sifs_anchor);
            CHECK(r.start - *r.sifs_anchor == b.phy.sifs);
        }
    }
    CHECK(max_frames == 9);
    for (Duration t : b.rec.t_p_max_after_ack) CHECK(t == Duration::zero());
    CHECK(b.st[0]->counters().aggregated_tx == 0);
}

TEST_CASE("RTS/CTS exchange precedes DATA above the threshold") {
    MacConfig mac;
    mac.kind = MacKind::Pas;
    mac.rts_threshold = 200;
    Topology t = Topology::fully_connected(3);
    t.disconnect(0, 1);
    Bed b(t, mac);
    b.send(0, 2, mbps(11));
    b.send(1, 2, mbps(11));
    b.st[0]->start();
    b.st[1]->start();
    b.engine.run_until(SimTime{seconds(1)});
    CHECK(b.st[0]->counters().rts_tx > 0);
    CHECK(b.st[0]->counters().successes > 50);
    CHECK(b.st[1]->counters().successes > 50);
}

TEST_CASE("mac kind names round-trip") {
    for (MacKind k : {MacKind::Dcf, MacKind::Pas, MacKind::CwAdapt, MacKind::PacketDivision, MacKind::FixedTxop}) {
        CHECK(parse_mac_kind(to_string(k)) == k);
    }
    CHECK_FALSE(parse_mac_kind("pas2"));
}
