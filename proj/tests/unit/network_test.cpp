#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "phasesync/error.hpp"
#include "phasesync/network.hpp"

namespace phasesync {
namespace {

TEST(NextBroadcaster, Examples) {
  EXPECT_EQ(next_broadcaster(0, {1, 2, 3}), 1u);
  EXPECT_EQ(next_broadcaster(7, {1, 2, 3}), 2u);
  EXPECT_EQ(next_broadcaster(4, {1, 3, 5, 6}), 1u);
  EXPECT_THROW(next_broadcaster(0, {}), NoLiveAgents);
}

TEST(NextBroadcaster, EachLiveAgentOncePerRound) {
  const std::set<AgentId> live{2, 4, 9, 11, 12};
  for (std::uint64_t start = 0; start < 20; ++start) {
    std::map<AgentId, int> count;
    for (std::uint64_t s = start; s < start + live.size(); ++s) ++count[next_broadcaster(s, live)];
    ASSERT_EQ(count.size(), live.size());
    for (const auto& [id, c] : count) ASSERT_EQ(c, 1);
  }
}

TEST(Deliver, LosslessAndTotalLoss) {
  Rng rng(1);
  const std::vector<AgentId> receivers{2, 3, 4, 5, 6};
  const Broadcast b{1, wrap(0.5), 0.0};

  const Rng before = rng;
  EXPECT_EQ(deliver(b, receivers, 0.0, rng), receivers);
  EXPECT_TRUE(deliver(b, receivers, 1.0, rng).empty());
  EXPECT_EQ(rng, before) << "loss 0 and 1 must not consume randomness";
}

TEST(Deliver, SenderAmongReceiversIsRejected) {
  Rng rng(1);
  const std::vector<AgentId> receivers{1, 2};
  EXPECT_THROW(deliver(Broadcast{1, wrap(0), 0}, receivers, 0.3, rng), InvalidInput);
}

TEST(Deliver, BernoulliMeanMonteCarlo) {
  Rng rng(2024);
  const std::vector<AgentId> receivers{2, 3, 4, 5, 6};
  const Broadcast b{1, wrap(0), 0.0};
  double delivered = 0;
  const int trials = 10'000;
  for (int i = 0; i < trials; ++i) {
    const auto got = deliver(b, receivers, 0.5, rng);
    for (AgentId id : got) {
      ASSERT_NE(id, b.sender);
      ASSERT_NE(std::find(receivers.begin(), receivers.end(), id), receivers.end());
    }
    ASSERT_TRUE(std::is_sorted(got.begin(), got.end()));
    delivered += static_cast<double>(got.size());
  }
  EXPECT_NEAR(delivered / trials, 2.5, 0.1);
}

TEST(Deliver, SameSeedSameSurvivors) {
  Rng a(77);
  Rng b(77);
  const std::vector<AgentId> receivers{2, 3, 4, 5, 6, 7, 8};
  const Broadcast msg{1, wrap(0), 0.0};
  for (int i = 0; i < 100; ++i) {
    ASSERT_EQ(deliver(msg, receivers, 0.3, a), deliver(msg, receivers, 0.3, b));
  }
}

TEST(Roster, FailAndJoin) {
  Roster r(3);
  r.apply({1.0, 7, Join{wrap(0)}});
  EXPECT_EQ(r.live(), (std::set<AgentId>{1, 2, 3, 7}));

  r.apply({2.0, 2, Fail{}});
  EXPECT_EQ(r.live(), (std::set<AgentId>{1, 3, 7}));
  EXPECT_TRUE(r.known().contains(2));

  r.apply({3.0, 2, Join{wrap(1.0)}});
  EXPECT_TRUE(r.is_live(2));

  EXPECT_THROW(r.apply({4.0, 9, Fail{}}), InvalidEvent);
  EXPECT_THROW(r.apply({4.0, 1, Join{wrap(0)}}), InvalidEvent);
}

TEST(NetworkConfig, Validation) {
  NetworkConfig ok;
  ok.topology_events = {{30.0, 4, Fail{}}, {40.0, 4, Join{wrap(0)}}};
  EXPECT_NO_THROW(ok.validate(6));

  NetworkConfig bad_slot;
  bad_slot.slot_period = 0.0;
  EXPECT_THROW(bad_slot.validate(6), InvalidConfig);

  NetworkConfig bad_loss;
  bad_loss.loss_prob = 1.5;
  EXPECT_THROW(bad_loss.validate(6), InvalidConfig);

  NetworkConfig unsorted;
  unsorted.topology_events = {{30.0, 4, Fail{}}, {10.0, 5, Fail{}}};
  EXPECT_THROW(unsorted.validate(6), InvalidConfig);

  NetworkConfig double_fail;
  double_fail.topology_events = {{30.0, 4, Fail{}}, {31.0, 4, Fail{}}};
  try {
    double_fail.validate(6);
    FAIL() << "expected InvalidConfig";
  } catch (const InvalidConfig& e) {
    EXPECT_EQ(e.field(), "network.topology_events[1]");
  }
}

}  // namespace
}  // namespace phasesync
