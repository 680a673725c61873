#include <doctest.h>

#include "pasim/phy/channel.hpp"

using namespace pasim;

TEST_CASE("802.11b airtimes") {
    const PhyParams phy;
    // 192 us PLCP + (1000 + 48) * 8 bits at the data rate.
    CHECK(data_airtime(1000, mbps(1), phy) == microseconds(8576));
    CHECK(data_airtime(1000, mbps(2), phy) == microseconds(4384));
    CHECK(data_airtime(1000, mbps(11), phy) == nanoseconds(954'182));
    CHECK(data_airtime(1000, mbps(5.5), phy) == nanoseconds(1'716'364));
    CHECK(ack_airtime(phy) == microseconds(192 + 112));
    CHECK(rts_airtime(phy) == microseconds(192 + 160));
    CHECK(cts_airtime(phy) == microseconds(192 + 112));
    CHECK_THROWS_AS(data_airtime(1000, mbps(3), phy), std::invalid_argument);
}

TEST_CASE("phy validation rejects inconsistent constants") {
    PhyParams phy;
    phy.cw_max = 15;
    CHECK_THROWS_AS(phy.validate(), std::invalid_argument);
}

namespace {

struct Probe : ChannelListener {
    std::vector<SignalEnd> ends;
    std::vector<bool> decoded;
    std::vector<Duration> busy;
    int starts = 0;
    int own = 0;
    void on_energy_start() override { ++starts; }
    void on_signal_end(const SignalEnd& e) override {
        decoded.push_back(e.decoded);
        if (e.medium_idle) busy.push_back(e.busy_interval);
    }
    void on_transmit_end(const Frame&) override { ++own; }
};

Frame data(NodeId src, NodeId dst, const PhyParams& phy) {
    return make_frame(FrameKind::Data, src, dst, 1000, mbps(11), phy);
}

}  // namespace

TEST_CASE("a lone frame is decoded and reports its busy interval") {
    const PhyParams phy;
    Engine e;
    Channel ch(e, Topology::fully_connected(2));
    Probe p0;
    Probe p1;
    ch.attach(0, &p0);
    ch.attach(1, &p1);
    ch.transmit(data(0, 1, phy));
    e.run_until(at_ns(10'000'000));
    CHECK(p0.own == 1);
    CHECK(p0.decoded.empty());
    REQUIRE(p1.decoded.size() == 1);
    CHECK(p1.decoded[0]);
    REQUIRE(p1.busy.size() == 1);
    CHECK(p1.busy[0] == data_airtime(1000, mbps(11), phy));
}

TEST_CASE("overlapping decodable frames collide and the busy period spans both") {
    const PhyParams phy;
    Engine e;
    Channel ch(e, Topology::fully_connected(3));
    Probe p[3];
    for (int i = 0; i < 3; ++i) ch.attach(i, &p[i]);
    ch.transmit(data(0, 2, phy));
    e.schedule(at_ns(100'000), {}, [&] { ch.transmit(data(1, 2, phy)); });
    e.run_until(at_ns(10'000'000));
    REQUIRE(p[2].decoded.size() == 2);
    CHECK_FALSE(p[2].decoded[0]);
    CHECK_FALSE(p[2].decoded[1]);
    REQUIRE(p[2].busy.size() == 1);
    CHECK(p[2].busy[0] == microseconds(100) + data_airtime(1000, mbps(11), phy));
}

TEST_CASE("sense-only energy does not corrupt a decodable frame") {
    const PhyParams phy;
    Engine e;
    Topology t = Topology::fully_connected(3);
    t.sense_only(1, 2);
    Channel ch(e, t);
    Probe p[3];
    for (int i = 0; i < 3; ++i) ch.attach(i, &p[i]);
    ch.transmit(data(0, 1, phy));
    e.schedule(at_ns(50'000), {}, [&] { ch.transmit(data(2, 0, phy)); });
    e.run_until(at_ns(10'000'000));
    REQUIRE(p[1].decoded.size() == 2);
    CHECK(p[1].decoded[0]);
    CHECK_FALSE(p[1].decoded[1]);
}

TEST_CASE("disconnected nodes neither sense nor decode each other") {
    const PhyParams phy;
    Engine e;
    Topology t = Topology::fully_connected(3);
    t.disconnect(0, 1);
    Channel ch(e, t);
    Probe p[3];
    for (int i = 0; i < 3; ++i) ch.attach(i, &p[i]);
    ch.transmit(data(0, 2, phy));
    e.run_until(at_ns(10'000'000));
    CHECK(p[1].starts == 0);
    CHECK(p[1].decoded.empty());
    CHECK(p[2].decoded.size() == 1);
}

TEST_CASE("a transmitting node cannot decode") {
    const PhyParams phy;
    Engine e;
    Channel ch(e, Topology::fully_connected(2));
    Probe p0;
    Probe p1;
    ch.attach(0, &p0);
    ch.attach(1, &p1);
    ch.transmit(data(0, 1, phy));
    e.schedule(at_ns(10'000), {}, [&] { ch.transmit(make_frame(FrameKind::Ack, 1, 0, 0, mbps(1), phy)); });
    e.run_until(at_ns(10'000'000));
    REQUIRE(p1.decoded.size() == 1);
    CHECK_FALSE(p1.decoded[0]);
    CHECK_THROWS_AS(([&] {
                        ch.transmit(data(0, 1, phy));
                        ch.transmit(data(0, 1, phy));
                    }()),
                    std::logic_error);
}
