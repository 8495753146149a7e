#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "fpp/scheduler.hpp"

namespace fpp {
namespace {

std::vector<PartitionId> drain_order(SchedulerQueue& queue) {
  std::vector<PartitionId> order;
  while (auto p = queue.schedule_next()) order.push_back(*p);
  return order;
}

TEST(PartitionPriority, BestValueAndCount) {
  const std::vector<Operation> ops{{0, 1, 4.0}, {1, 2, 1.5}, {2, 3, 9.0}};
  EXPECT_EQ(partition_priority(ops, PriorityFunctor::best(), QueryKind::kSssp), 1.5);
  EXPECT_EQ(partition_priority(ops, PriorityFunctor::best(), QueryKind::kPpr), 9.0);
  EXPECT_EQ(partition_priority(ops, PriorityFunctor::max_operations(), QueryKind::kSssp), 3.0);
  EXPECT_THROW(partition_priority({}, PriorityFunctor::best(), QueryKind::kSssp),
               std::invalid_argument);
  EXPECT_THROW(partition_priority(ops, PriorityFunctor::fifo(), QueryKind::kSssp),
               std::invalid_argument);
}

TEST(PriorityFunctor, ParseAndName) {
  for (const char* name : {"random", "fifo", "max-ops", "priority"}) {
    EXPECT_EQ(PriorityFunctor::parse(name, 3).name(), name);
  }
  EXPECT_EQ(PriorityFunctor::parse("random", 3), PriorityFunctor::random(3));
  EXPECT_THROW(PriorityFunctor::parse("lifo"), std::invalid_argument);
}

TEST(SchedulerQueue, BestPicksSmallestDistance) {
  SchedulerQueue q(3, PriorityFunctor::best(), QueryKind::kSssp);
  q.notify_append(0, 5.0, 1);
  q.notify_append(1, 2.0, 1);
  q.notify_append(2, 7.0, 1);
  q.notify_append(2, 1.0, 2);  // improves P2
  q.notify_append(1, 3.0, 2);  // does not improve P1
  EXPECT_EQ(q.priority(2), 1.0);
  EXPECT_EQ(q.priority(1), 2.0);
  EXPECT_EQ(drain_order(q), (std::vector<PartitionId>{2, 1, 0}));
  EXPECT_TRUE(q.empty());
}

TEST(SchedulerQueue, BestPicksLargestResidual) {
  SchedulerQueue q(3, PriorityFunctor::best(), QueryKind::kPpr);
  q.notify_append(0, 0.1, 1);
  q.notify_append(1, 0.7, 1);
  q.notify_append(2, 0.3, 1);
  EXPECT_EQ(q.priority(1), 0.7);
  EXPECT_EQ(drain_order(q), (std::vector<PartitionId>{1, 2, 0}));
}

TEST(SchedulerQueue, TiesGoToSmallerId) {
  SchedulerQueue q(4, PriorityFunctor::best(), QueryKind::kSssp);
  for (PartitionId p : {3u, 1u, 2u, 0u}) q.notify_append(p, 1.0, 1);
  EXPECT_EQ(drain_order(q), (std::vector<PartitionId>{0, 1, 2, 3}));
  SchedulerQueue m(3, PriorityFunctor::max_operations(), QueryKind::kSssp);
  m.notify_append(2, 0, 4);
  m.notify_append(1, 0, 4);
  EXPECT_EQ(drain_order(m), (std::vector<PartitionId>{1, 2}));
}

TEST(SchedulerQueue, FifoFollowsFirstArrival) {
  SchedulerQueue q(4, PriorityFunctor::fifo(), QueryKind::kSssp);
  q.notify_append(2, 9.0, 1);
  q.notify_append(0, 1.0, 1);
  q.notify_append(2, 0.0, 5);  // already queued, keeps its place
  q.notify_append(3, 4.0, 1);
  EXPECT_EQ(drain_order(q), (std::vector<PartitionId>{2, 0, 3}));
}

TEST(SchedulerQueue, MaxOperationsTracksBufferSize) {
  SchedulerQueue q(3, PriorityFunctor::max_operations(), QueryKind::kSssp);
  q.notify_append(0, 0, 10);
  q.notify_append(1, 0, 3);
  q.notify_append(1, 0, 12);
  q.notify_append(2, 0, 11);
  EXPECT_EQ(q.priority(1), 12.0);
  EXPECT_EQ(drain_order(q), (std::vector<PartitionId>{1, 2, 0}));
}

TEST(SchedulerQueue, ReentryAfterProcessing) {
  SchedulerQueue q(2, PriorityFunctor::best(), QueryKind::kSssp);
  q.notify_append(0, 3.0, 1);
  q.notify_append(1, 4.0, 1);
  EXPECT_EQ(q.schedule_next(), 0u);
  EXPECT_FALSE(q.live(0));
  EXPECT_EQ(q.priority(0), std::nullopt);
  q.notify_append(0, 8.0, 1);  // new ops arrive, worse than before
  EXPECT_EQ(q.live_count(), 2u);
  EXPECT_EQ(q.schedule_next(), 1u);
  EXPECT_EQ(q.schedule_next(), 0u);
  EXPECT_EQ(q.schedule_next(), std::nullopt);
}

TEST(SchedulerQueue, RandomIsSeededAndUniformish) {
  auto order_for = [](std::uint64_t seed) {
    SchedulerQueue q(16, PriorityFunctor::random(seed), QueryKind::kSssp);
    for (PartitionId p = 0; p < 16; ++p) q.notify_append(p, 1.0, 1);
    return drain_order(q);
  };
  EXPECT_EQ(order_for(5), order_for(5));
  EXPECT_NE(order_for(5), order_for(6));
  std::map<PartitionId, int> first;
  for (std::uint64_t seed = 0; seed < 1600; ++seed) ++first[order_for(seed)[0]];
  EXPECT_EQ(first.size(), 16u);
  for (const auto& [p, count] : first) {
    EXPECT_GT(count, 50) << p;
    EXPECT_LT(count, 150) << p;
  }
}

TEST(SchedulerQueue, OutOfRangeNotify) {
  SchedulerQueue q(2, PriorityFunctor::fifo(), QueryKind::kSssp);
  EXPECT_THROW(q.notify_append(2, 0, 1), std::out_of_range);
}

}  // namespace
}  // namespace fpp
