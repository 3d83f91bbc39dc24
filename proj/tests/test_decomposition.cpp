#include "teich/decomposition.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace teich {
namespace {

RayDecomposition make(std::vector<std::pair<Rat, Rat>> pairs) {
  std::vector<Component> comps;
  for (std::size_t j = 0; j < pairs.size(); ++j)
    comps.push_back({"C" + std::to_string(j + 1), ComponentKind::cylinder,
                     pairs[j].first, pairs[j].second});
  return RayDecomposition(std::move(comps));
}

TEST(Decomposition, ConstructionValidates) {
  EXPECT_THROW(RayDecomposition({}), std::invalid_argument);
  EXPECT_THROW(make({{rat(0), rat(1)}}), std::invalid_argument);
  EXPECT_THROW(make({{rat(1), rat(-1)}}), std::invalid_argument);
  EXPECT_THROW(RayDecomposition({{"", ComponentKind::cylinder, rat(1), rat(1)}}),
               std::invalid_argument);
  EXPECT_THROW(
      RayDecomposition({{"X", ComponentKind::cylinder, rat(1), rat(1)},
                        {"X", ComponentKind::cylinder, rat(2), rat(1)}}),
      std::invalid_argument);
}

TEST(Decomposition, AreaAndNormalizationFlag) {
  EXPECT_EQ(make({{rat(2), rat(2)}}).area(), rat(4));
  EXPECT_EQ(make({{rat(1), rat(2)}, {rat(1), rat(1)}}).area(), rat(3));
  const auto unit = make({{rat(1), rat(1, 2)}, {rat(1), rat(1, 2)}});
  EXPECT_EQ(unit.area(), rat(1));
  EXPECT_TRUE(unit.is_normalized());
  EXPECT_FALSE(make({{rat(2), rat(2)}}).is_normalized());
}

TEST(Decomposition, NormalizeKeepsModuliAndIsIdempotent) {
  const auto d = normalize({{"C1", ComponentKind::cylinder, rat(1), rat(2)},
                            {"C2", ComponentKind::minimal_ergodic, rat(1), rat(1)}});
  EXPECT_EQ(moduli(d), (ModulusVector{rat(1, 2), rat(1)}));
  const auto again = normalize(d.components());
  EXPECT_EQ(again, d);
}

TEST(Decomposition, ModuliExamples) {
  EXPECT_EQ(moduli(make({{rat(1), rat(1)}})), (ModulusVector{rat(1)}));
  EXPECT_EQ(moduli(make({{rat(1), rat(1, 2)}, {rat(1), rat(1, 2)}})),
            (ModulusVector{rat(2), rat(2)}));
}

TEST(Decomposition, IndexLookup) {
  const auto d = make({{rat(1), rat(2)}, {rat(3), rat(4)}});
  EXPECT_EQ(d.index_of("C2"), 1u);
  EXPECT_FALSE(d.index_of("missing").has_value());
}

TEST(Flow, TimeZeroIsIdentity) {
  const auto d = make({{rat(1), rat(2)}, {rat(5), rat(7)}});
  EXPECT_EQ(flow(d, FlowParam::log_of(rat(1))), d);
  EXPECT_EQ(flow(d, FlowParam::real(0.0)), d);
}

TEST(Flow, ExactCovarianceAndAreaInvariance) {
  const auto d = make({{rat(1), rat(2)}, {rat(5), rat(7)}, {rat(2, 3), rat(9)}});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> ints(1, 50);
  for (int i = 0; i < 100; ++i) {
    const Rat factor = rat(ints(rng), ints(rng));  // e^t
    const auto flowed = flow(d, FlowParam::log_of(factor));
    EXPECT_EQ(flowed.area(), d.area());
    const Rat e2t = factor * factor;
    for (std::size_t j = 0; j < d.size(); ++j)
      EXPECT_EQ(flowed.modulus(j), e2t * d.modulus(j));
  }
}

TEST(Flow, CompositionLaw) {
  const auto d = make({{rat(1), rat(2)}, {rat(5), rat(7)}});
  const Rat f1 = rat(3, 2), f2 = rat(7, 5);
  EXPECT_EQ(flow(flow(d, FlowParam::log_of(f1)), FlowParam::log_of(f2)),
            flow(d, FlowParam::log_of(f1 * f2)));
}

TEST(Flow, RealModeTracksExactModeClosely) {
  const auto d = make({{rat(1), rat(2)}, {rat(5), rat(7)}});
  for (const double t : {0.25, 1.0, -1.5, 3.0}) {
    const auto flowed = flow(d, FlowParam::real(t));
    EXPECT_EQ(flowed.area(), d.area());  // exact even in real mode
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double expected = std::exp(2 * t) * as_double(d.modulus(j));
      EXPECT_NEAR(as_double(flowed.modulus(j)) / expected, 1.0, 1e-12);
    }
  }
}

TEST(Flow, RejectsBadParameters) {
  EXPECT_THROW(FlowParam::log_of(rat(0)), std::invalid_argument);
  EXPECT_THROW(FlowParam::log_of(rat(-2)), std::invalid_argument);
  EXPECT_THROW(FlowParam::real(std::nan("")), std::invalid_argument);
  EXPECT_THROW(FlowParam::real(1e6), std::invalid_argument);  // e^t overflows
}

}  // namespace
}  // namespace teich
