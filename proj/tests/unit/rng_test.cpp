#include <gtest/gtest.h>

#include "hte/rng.hpp"

namespace {

TEST(Rng, SameSeedSameSequence) {
  hte::Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Rng, SubstreamDependsOnlyOnSeedAndIndex) {
  hte::Rng a(11);
  hte::Rng b(11);
  for (int i = 0; i < 10; ++i) a.uniform();  // consuming draws must not matter
  hte::Rng sa = a.substream(3);
  hte::Rng sb = b.substream(3);
  EXPECT_EQ(sa.seed(), sb.seed());
  EXPECT_EQ(sa.uniform(), sb.uniform());
  EXPECT_NE(a.substream(3).seed(), a.substream(4).seed());
}

TEST(Rng, UniformInHalfOpenUnitInterval) {
  hte::Rng r(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
