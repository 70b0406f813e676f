#include <gtest/gtest.h>

#include <random>

#include <topsmooth/edt.hpp>
#include <topsmooth/topo.hpp>
#include <topsmooth/synth.hpp>

#include "oracles.hpp"

using namespace topsmooth;

namespace {

BinaryImage config_image(unsigned code) {
  BinaryImage img(3, 3);
  img.set(1, 1, true);
  for (std::size_t k = 0; k < 8; ++k) {
    if ((code >> k) & 1u) {
      const auto& off = topsmooth::detail::kNeighborOffsets[k];
      img.set(static_cast<std::size_t>(1 + off.dr), static_cast<std::size_t>(1 + off.dc), true);
    }
  }
  return img;
}

constexpr AdjacencyPair kPairs[] = {AdjacencyPair::eight_four(), AdjacencyPair::four_eight()};

}  // namespace

TEST(ConnectivityNumbers, EmptyNeighbourhood) {
  const auto img = config_image(0);
  for (auto adj : kPairs) {
    const auto t = connectivity_numbers(img, {1, 1}, adj);
    EXPECT_EQ(t.t, 0);
    EXPECT_FALSE(t.simple);
  }
}

TEST(ConnectivityNumbers, FullNeighbourhood) {
  const auto t = connectivity_numbers(config_image(0xFF), {1, 1}, AdjacencyPair::eight_four());
  EXPECT_EQ(t, (TopoClassification{1, 0, false}));
}

TEST(ConnectivityNumbers, EastNeighbourOnly) {
  const auto img = BinaryImage::from_rows({"...", ".##", "..."});
  EXPECT_EQ(connectivity_numbers(img, {1, 1}, AdjacencyPair::eight_four()), (TopoClassification{1, 1, true}));
}

TEST(ConnectivityNumbers, BoundedByFour) {
  for (unsigned code = 0; code < 256; ++code) {
    for (auto adj : kPairs) {
      const auto t = connectivity_numbers(config_image(code), {1, 1}, adj);
      EXPECT_LE(t.t, 4);
      EXPECT_LE(t.t_bar, 4);
      EXPECT_EQ(t.simple, t.t == 1 && t.t_bar == 1);
    }
  }
}

TEST(ConnectivityNumbers, OutOfBoundsRejected) {
  BinaryImage img(3, 3, 1);
  EXPECT_THROW(connectivity_numbers(img, {3, 1}, AdjacencyPair::eight_four()), std::out_of_range);
}

TEST(IsSimple, IsolatedPixelIsNot) {
  EXPECT_FALSE(is_simple(config_image(0), {1, 1}, AdjacencyPair::eight_four()));
}

TEST(IsSimple, DominoEndpointIs) {
  const auto img = BinaryImage::from_rows({"##"});
  for (auto adj : kPairs) {
    EXPECT_TRUE(is_simple(img, {0, 0}, adj));
    EXPECT_TRUE(is_simple(img, {0, 1}, adj));
  }
}

TEST(IsSimple, BackgroundPointRejected) {
  EXPECT_THROW(is_simple(BinaryImage(3, 3), {1, 1}, AdjacencyPair::eight_four()), std::invalid_argument);
}

TEST(IsSimple, AllConfigurationsMatchComponentCountOracle) {
  for (auto adj : kPairs) {
    int mismatches = 0;
    for (unsigned code = 0; code < 256; ++code) {
      const bool lib = is_simple(config_image(code), {1, 1}, adj);
      const bool ref = oracle::simple_by_component_counts(code, adj);
      if (lib != ref) {
        ++mismatches;
        ADD_FAILURE() << "config " << code << " n=" << static_cast<int>(adj.object()) << " lib=" << lib
                      << " oracle=" << ref;
      }
    }
    EXPECT_EQ(mismatches, 0);
  }
}

TEST(IsSimple, OutsideConventionMatters) {
  // A pixel in the top row of a full image is simple when the outside is
  // background and interior-like when the outside is object.
  BinaryImage full(3, 3, 1);
  EXPECT_TRUE(is_simple(full, {0, 1}, AdjacencyPair::eight_four(), Outside::background));
  EXPECT_FALSE(is_simple(full, {0, 1}, AdjacencyPair::eight_four(), Outside::object));
}

TEST(Thin, SinglePixelUnchanged) {
  BinaryImage z(3, 3);
  z.set(1, 1, true);
  EXPECT_EQ(homotopic_thin(z, BinaryImage(3, 3), edt_squared(complement(z)), AdjacencyPair::eight_four()), z);
}

TEST(Thin, DominoLosesOnePixel) {
  const auto z = BinaryImage::from_rows({"##"});
  for (auto adj : kPairs) {
    const auto r = homotopic_thin(z, BinaryImage(1, 2), DistanceMap(1, 2), adj);
    EXPECT_EQ(r.count(), 1u);
    // Equal priorities: the row-major first pixel goes first.
    EXPECT_EQ(r, BinaryImage::from_rows({".#"}));
  }
}

TEST(Thin, FullConstraintKeepsEverything) {
  std::mt19937_64 rng(4);
  const auto z = random_image(16, 16, 0.6, rng);
  EXPECT_EQ(homotopic_thin(z, z, edt_squared(complement(z)), AdjacencyPair::eight_four()), z);
}

TEST(Thin, RejectsBadInputs) {
  BinaryImage z(3, 3, 1);
  BinaryImage w(3, 3);
  EXPECT_THROW(homotopic_thin(z, BinaryImage(3, 4), DistanceMap(3, 3), AdjacencyPair::eight_four()),
               std::invalid_argument);
  EXPECT_THROW(homotopic_thin(z, w, DistanceMap(2, 3), AdjacencyPair::eight_four()), std::invalid_argument);
  BinaryImage z2(3, 3);
  EXPECT_THROW(homotopic_thin(z2, BinaryImage(3, 3, 1), DistanceMap(3, 3), AdjacencyPair::eight_four()),
               std::invalid_argument);
}

TEST(Thin, MaxIterZeroIsIdentity) {
  BinaryImage z(4, 4, 1);
  ThinningOptions opts;
  opts.max_iter = 0;
  EXPECT_EQ(homotopic_thin(z, BinaryImage(4, 4), DistanceMap(4, 4), AdjacencyPair::eight_four(), opts), z);
}

TEST(Thin, MaxIterBoundsPropagationDepth) {
  // Both ends of a bar are generation 0; each removal exposes the next
  // pixel inwards one generation later.
  const auto z = BinaryImage::from_rows({"########"});
  DistanceMap prio(1, 8);
  for (std::size_t c = 0; c < 8; ++c) prio(0, c) = static_cast<Distance>(c);
  ThinningOptions opts;
  opts.max_iter = 3;
  const auto r = homotopic_thin(z, BinaryImage(1, 8), prio, AdjacencyPair::eight_four(), opts);
  EXPECT_EQ(r, BinaryImage::from_rows({"...##..."}));
  const auto full = homotopic_thin(z, BinaryImage(1, 8), prio, AdjacencyPair::eight_four());
  EXPECT_EQ(full, BinaryImage::from_rows({".......#"}));
}

TEST(Thin, MatchesNaiveGlobalMinimumRemoval) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 60; ++k) {
    const std::size_t h = oracle::random_between(rng, 1, 16);
    const std::size_t w = oracle::random_between(rng, 1, 16);
    const auto z = random_image(h, w, 0.3 + 0.6 * unit_uniform(rng), rng);
    const auto cw = oracle::random_subset(z, 0.15, rng);
    const auto prio = oracle::random_priority(h, w, rng);
    for (auto adj : kPairs) {
      for (Outside o : {Outside::background, Outside::object}) {
        ThinningOptions opts;
        opts.outside = o;
        ASSERT_EQ(homotopic_thin(z, cw, prio, adj, opts), oracle::naive_thin(z, cw, prio, adj, o));
      }
    }
  }
}

TEST(Thin, PreservesTopologyAndIsStable) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 40; ++k) {
    const auto z = random_image(48, 48, 0.2 + 0.6 * unit_uniform(rng), rng);
    const auto cw = oracle::random_subset(z, 0.05, rng);
    const auto prio = edt_squared(complement(z));
    for (auto adj : kPairs) {
      const auto r = homotopic_thin(z, cw, prio, adj);
      EXPECT_EQ(oracle::framed_counts(r, adj), oracle::framed_counts(z, adj));
      EXPECT_TRUE(is_subset(cw, r));
      EXPECT_TRUE(is_subset(r, z));
      EXPECT_EQ(homotopic_thin(r, cw, prio, adj), r);
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (!r.pixels()[i] || cw.pixels()[i]) continue;
        const Point p{static_cast<int>(i / r.width()), static_cast<int>(i % r.width())};
        EXPECT_FALSE(is_simple(r, p, adj));
      }
    }
  }
}

TEST(Thin, LargerConstraintGivesLargerResultContainment) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 20; ++k) {
    const auto z = random_image(24, 24, 0.7, rng);
    const auto w1 = oracle::random_subset(z, 0.05, rng);
    auto w2 = set_union(w1, oracle::random_subset(z, 0.05, rng));
    const auto prio = edt_squared(complement(z));
    const auto r2 = homotopic_thin(z, w2, prio, AdjacencyPair::eight_four());
    EXPECT_TRUE(is_subset(w2, r2));
    EXPECT_TRUE(is_subset(w1, homotopic_thin(z, w1, prio, AdjacencyPair::eight_four())));
  }
}

TEST(Thin, ParallelDetectionIsDeterministic) {
  std::mt19937_64 rng(24);
  const auto z = random_image(96, 80, 0.6, rng);
  const auto prio = edt_squared(complement(z));
  const auto ref = homotopic_thin(z, BinaryImage(96, 80), prio, AdjacencyPair::eight_four());
  for (std::size_t workers : {2u, 5u}) {
    for (Scheduler s : {Scheduler::nps, Scheduler::strided, Scheduler::system}) {
      Executor exec(workers, s);
      EXPECT_EQ(homotopic_thin(z, BinaryImage(96, 80), prio, AdjacencyPair::eight_four(), exec), ref);
    }
  }
}

TEST(Thicken, VEqualsYIsIdentity) {
  std::mt19937_64 rng(31);
  const auto y = random_image(10, 10, 0.5, rng);
  EXPECT_EQ(homotopic_thicken(y, y, edt_squared(y), AdjacencyPair::eight_four()), y);
}

TEST(Thicken, EmptySeedStaysEmpty) {
  BinaryImage y(6, 7);
  BinaryImage v(6, 7, 1);
  for (auto adj : kPairs) {
    EXPECT_EQ(homotopic_thicken(y, v, edt_squared(y), adj), y);
    EXPECT_EQ(homotopic_thicken(y, v, edt_squared(y), adj), oracle::naive_thicken(y, v, edt_squared(y), adj));
  }
}

TEST(Thicken, RejectsBadInputs) {
  BinaryImage y(3, 3, 1);
  BinaryImage v(3, 3);
  EXPECT_THROW(homotopic_thicken(y, v, DistanceMap(3, 3), AdjacencyPair::eight_four()), std::invalid_argument);
  EXPECT_THROW(homotopic_thicken(v, BinaryImage(3, 2), DistanceMap(3, 3), AdjacencyPair::eight_four()),
               std::invalid_argument);
}

TEST(Thicken, DualityAndDirectAdditionOracle) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 60; ++k) {
    const auto v = random_image(16, 16, 0.5 + 0.5 * unit_uniform(rng), rng);
    const auto y = oracle::random_subset(v, 0.3, rng);
    const auto prio = oracle::random_priority(16, 16, rng);
    for (auto adj : kPairs) {
      const auto r = homotopic_thicken(y, v, prio, adj);
      ThinningOptions opts;
      opts.outside = Outside::object;
      EXPECT_EQ(r, complement(homotopic_thin(complement(y), complement(v), prio, adj.dual(), opts)));
      EXPECT_EQ(r, oracle::naive_thicken(y, v, prio, adj));
      EXPECT_TRUE(is_subset(y, r));
      EXPECT_TRUE(is_subset(r, v));
      EXPECT_EQ(oracle::framed_counts(r, adj), oracle::framed_counts(y, adj));
    }
  }
}
