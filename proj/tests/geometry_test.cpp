#include <gtest/gtest.h>

#include <random>

#include "convex1d/geometry.hpp"
#include "convex1d/reconstruct.hpp"
#include "oracles.hpp"

using namespace convex1d;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p, d); }

IntervalArrangement line(std::vector<Interval1D> ivs) { return IntervalArrangement(Geometry::line, std::move(ivs)); }

Code code_of(std::size_t k, std::initializer_list<const char*> words) {
  Code c(k);
  for (const char* w : words) c.insert(BitVector::from_string(w));
  return c;
}

/// Random proper interval with ends on a grid of halves in [0, 8] (or
/// sixteenths of the circle), so that shared endpoints are common.
Interval1D random_interval(std::mt19937_64& rng, Geometry g, int types) {
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> grid(0, 16);
  std::uniform_int_distribution<int> coin(0, 1);
  const int roll = kind(rng);
  if (roll == 0) return Interval1D::empty();
  if (roll == 1 && g == Geometry::circle) return Interval1D::whole();
  auto closed = [&](int) { return types == 0 ? false : types == 1 ? true : coin(rng) == 1; };
  if (g == Geometry::line) {
    int a = grid(rng);
    int b = grid(rng);
    while (a == b) b = grid(rng);
    if (a > b) std::swap(a, b);
    return Interval1D::make(q(a, 2), closed(0), q(b, 2), closed(1));
  }
  std::uniform_int_distribution<int> pos(0, 15);
  const int a = pos(rng);
  int b = pos(rng);
  while (a == b) b = pos(rng);
  return Interval1D::make(q(a, 16), closed(0), q(b, 16), closed(1));
}

IntervalArrangement random_arrangement(std::mt19937_64& rng, Geometry g, std::size_t k, int types) {
  IntervalArrangement arr(g);
  for (std::size_t i = 0; i < k; ++i) arr.add(random_interval(rng, g, types));
  return arr;
}

/// Distinct sorted sensors: on the line from thirds of [-1, 9], on the
/// circle from 48ths of [0, 1). Neither grid is contained in the endpoint
/// grids, but both meet them.
SensorSet random_sensors(std::mt19937_64& rng, Geometry g, std::size_t count) {
  std::vector<Rational> pos;
  std::uniform_int_distribution<int> line_grid(-3, 27);
  std::uniform_int_distribution<int> circle_grid(0, 47);
  while (pos.size() < count) {
    const Rational p = g == Geometry::line ? q(line_grid(rng), 3) : q(circle_grid(rng), 48);
    if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
  }
  std::sort(pos.begin(), pos.end());
  return SensorSet(std::move(pos), g);
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/4"), q(3, 4));
  EXPECT_EQ(parse_rational("-2"), q(-2));
  EXPECT_EQ(parse_rational("0.25"), q(1, 4));
  EXPECT_EQ(to_string(q(6, 4)), "3/2");
  EXPECT_EQ(to_string(q(2)), "2/1");
  EXPECT_THROW(parse_rational("1/0"), PreconditionError);
  EXPECT_THROW(parse_rational("x"), PreconditionError);
}

TEST(Interval, ValidationRejectsInvertedEnds) {
  EXPECT_THROW(line({Interval1D::open(q(1), q(0))}), DegenerateInterval);
  EXPECT_THROW(line({Interval1D::open(q(1), q(1))}), DegenerateInterval);
  EXPECT_NO_THROW(line({Interval1D::closed(q(1), q(1))}));
  EXPECT_THROW(IntervalArrangement(Geometry::circle, {Interval1D::open(q(0), q(1))}), DegenerateInterval);
  EXPECT_NO_THROW(IntervalArrangement(Geometry::circle, {Interval1D::open(q(3, 4), q(1, 4))}));
}

TEST(EvaluateCodeword, EndpointTypesAreHonoured) {
  const auto open = line({Interval1D::open(q(0), q(1))});
  EXPECT_EQ(evaluate_codeword(open, q(1, 2)), "1"_bv);
  EXPECT_EQ(evaluate_codeword(open, q(1)), "0"_bv);
  const auto closed = line({Interval1D::closed(q(0), q(1))});
  EXPECT_EQ(evaluate_codeword(closed, q(1)), "1"_bv);
  const auto half = line({Interval1D::half_open(q(0), q(1))});
  EXPECT_EQ(evaluate_codeword(half, q(0)), "1"_bv);
  EXPECT_EQ(evaluate_codeword(half, q(1)), "0"_bv);
}

TEST(EvaluateCodeword, WrappingArc) {
  const IntervalArrangement arr(Geometry::circle, {Interval1D::open(q(3, 4), q(1, 4))});
  EXPECT_EQ(evaluate_codeword(arr, q(0)), "1"_bv);
  EXPECT_EQ(evaluate_codeword(arr, q(7, 8)), "1"_bv);
  EXPECT_EQ(evaluate_codeword(arr, q(1, 2)), "0"_bv);
  EXPECT_EQ(evaluate_codeword(arr, q(1, 4)), "0"_bv);
}

TEST(EvaluateCodeword, LinearTrackWithFourPlaceFields) {
  // One sensor per area of a seven-area track; the leftmost area is covered
  // by the first field only and the second field spans areas 2 to 5.
  const auto arr = line({Interval1D::open(q(0), q(5, 2)), Interval1D::open(q(3, 2), q(11, 2)),
                         Interval1D::open(q(7, 2), q(13, 2)), Interval1D::open(q(9, 2), q(8))});
  const SensorSet sensors({q(1), q(2), q(3), q(4), q(5), q(6), q(7)});
  const auto ex = extract_code_sparse(arr, sensors);
  EXPECT_EQ(ex.matrix.column(0), "1000"_bv);
  EXPECT_EQ(ex.matrix.row(1), "0111100"_bv);
  EXPECT_TRUE(regime_check(ex.matrix, kCO));
}

TEST(ExtractSparse, SingleOpenInterval) {
  const auto ex = extract_code_sparse(line({Interval1D::open(q(0), q(1))}), SensorSet({q(-1), q(1, 2), q(2)}));
  EXPECT_EQ(ex.matrix, SensorMatrix::from_strings({"010"}));
  EXPECT_EQ(ex.code, code_of(1, {"0", "1"}));
}

TEST(ExtractSparse, EmptyIntervalGivesZeroRow) {
  const auto ex = extract_code_sparse(line({Interval1D::empty(), Interval1D::open(q(0), q(3))}),
                                      SensorSet({q(1), q(2)}));
  EXPECT_EQ(ex.matrix.row(0), "00"_bv);
  EXPECT_EQ(ex.matrix.row(1), "11"_bv);
}

TEST(ExtractSparse, NoSensorsIsAPreconditionError) {
  EXPECT_THROW(extract_code_sparse(line({}), SensorSet()), PreconditionError);
}

TEST(ExtractDense, EmptyArrangementReadsTheEmptyWord) {
  const auto code = extract_code_dense(line({}));
  EXPECT_EQ(code.size(), 1u);
  EXPECT_EQ(code.words().front(), BitVector(0));
}

TEST(ExtractDense, OverlappingAndTouchingIntervals) {
  EXPECT_EQ(extract_code_dense(line({Interval1D::open(q(0), q(2)), Interval1D::open(q(1), q(3))})),
            code_of(2, {"10", "11", "01", "00"}));
  EXPECT_EQ(extract_code_dense(line({Interval1D::open(q(0), q(1)), Interval1D::open(q(1), q(2))})),
            code_of(2, {"10", "00", "01"}));
  // Closed ends meeting at a point add the overlap word.
  EXPECT_EQ(extract_code_dense(line({Interval1D::closed(q(0), q(1)), Interval1D::closed(q(1), q(2))})),
            code_of(2, {"10", "11", "01", "00"}));
}

TEST(RealizeMatrix, LineParameters) {
  const auto m = SensorMatrix::from_strings({"011000", "001110", "000100", "100000"});
  const auto r = realize_matrix(m, kCO);
  EXPECT_EQ(r.sensors.positions(), (std::vector<Rational>{q(1), q(2), q(3), q(4), q(5), q(6)}));
  EXPECT_EQ(r.arrangement[0], Interval1D::open(q(7, 4), q(13, 4)));
  EXPECT_EQ(r.arrangement[3], Interval1D::open(q(3, 4), q(5, 4)));
  EXPECT_EQ(extract_code_sparse(r.arrangement, r.sensors).matrix, m);
}

TEST(RealizeMatrix, CircleParameters) {
  const auto m = SensorMatrix::from_strings({"1001", "0110"}, Geometry::circle);
  const auto r = realize_matrix(m, kCCO);
  EXPECT_EQ(r.sensors.positions(), (std::vector<Rational>{q(0), q(1, 4), q(1, 2), q(3, 4)}));
  // Block 4..1 wraps through 0.
  EXPECT_EQ(r.arrangement[0], Interval1D::open(q(11, 16), q(1, 16)));
  EXPECT_EQ(r.arrangement[1], Interval1D::open(q(3, 16), q(9, 16)));
  EXPECT_EQ(extract_code_sparse(r.arrangement, r.sensors).matrix, m);
}

TEST(RealizeMatrix, DegenerateRows) {
  const auto r = realize_matrix(SensorMatrix::from_strings({"111", "000"}), kHCO);
  EXPECT_EQ(r.arrangement[0], Interval1D::whole());
  EXPECT_EQ(r.arrangement[1], Interval1D::empty());
  const auto one = realize_matrix(SensorMatrix::from_strings({"1"}), kHCO);
  EXPECT_EQ(extract_code_dense(one.arrangement), code_of(1, {"1"}));
}

TEST(RealizeMatrix, RejectsMatricesOutsideTheRegime) {
  EXPECT_THROW(realize_matrix(SensorMatrix::from_strings({"101"}), kCO), RegimeViolation);
  EXPECT_THROW(realize_matrix(SensorMatrix::from_strings({"110", "011"}, Geometry::circle), kHCCO), RegimeViolation);
}

TEST(RealizeMatrix, PcTreeMatricesRoundTrip) {
  const auto sparse = SensorMatrix::from_strings({"011000", "001110", "000100", "100000"});
  const auto r = realize_matrix(sparse, kCO);
  EXPECT_EQ(extract_code_sparse(r.arrangement, r.sensors).matrix, sparse);

  const auto mo = reconstruct_dense_linear(sparse.column_set());
  ASSERT_TRUE(mo);
  const auto dense = mo->matrix();
  const auto rd = realize_matrix(dense, kHCO);
  EXPECT_EQ(extract_code_sparse(rd.arrangement, rd.sensors).matrix, dense);
  EXPECT_EQ(extract_code_dense(rd.arrangement), dense.column_set());
}

TEST(RealizeMatrix, RandomRoundTrips) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> kk(1, 5);
  std::uniform_int_distribution<std::size_t> nn(1, 8);
  const Regime regimes[] = {kCO, kCCO, kHCO, kHCCO};
  for (int trial = 0; trial < 1000; ++trial) {
    const Regime regime = regimes[trial % 4];
    const auto m = oracle::random_regime_matrix(rng, kk(rng), nn(rng), regime);
    const auto r = realize_matrix(m, regime);
    ASSERT_EQ(extract_code_sparse(r.arrangement, r.sensors).matrix, m);
    if (regime.density == Density::dense) {
      ASSERT_EQ(extract_code_dense(r.arrangement), m.column_set());
    }
  }
}

TEST(NormalizeArbitrary, Examples) {
  const auto a = normalize_arbitrary(line({Interval1D::open(q(3, 10), q(27, 10))}), SensorSet({q(1), q(2), q(3)}));
  EXPECT_EQ(a[0], Interval1D::half_open(q(1), q(3)));

  const auto b = normalize_arbitrary(line({Interval1D::open(q(6, 5), q(9, 5))}), SensorSet({q(1), q(2)}));
  EXPECT_EQ(b[0], Interval1D::empty());

  // Both ends fall between the sensors 1/2 and 3/4, reversed.
  const IntervalArrangement arc(Geometry::circle, {Interval1D::open(q(11, 16), q(10, 16))});
  const SensorSet circle_sensors({q(0), q(1, 4), q(1, 2), q(3, 4)}, Geometry::circle);
  EXPECT_EQ(normalize_arbitrary(arc, circle_sensors)[0], Interval1D::whole());
}

TEST(NormalizeArbitrary, PreservesSparseCodeAndMakesItDense) {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> kk(0, 5);
  std::uniform_int_distribution<std::size_t> ss(1, 7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Geometry g = trial % 2 ? Geometry::circle : Geometry::line;
    const auto arr = random_arrangement(rng, g, kk(rng), 2);
    const auto sensors = random_sensors(rng, g, ss(rng));
    const auto before = extract_code_sparse(arr, sensors);
    const auto norm = normalize_arbitrary(arr, sensors);
    ASSERT_EQ(extract_code_sparse(norm, sensors).matrix, before.matrix);
    ASSERT_EQ(extract_code_dense(norm), before.code);
    for (const auto& iv : norm.intervals()) {
      if (!iv.is_proper() || iv.lo.infinite || iv.hi.infinite) continue;
      EXPECT_TRUE(iv.lo.closed && !iv.hi.closed);
    }
  }
}

TEST(OpenClosed, Examples) {
  const auto two = line({Interval1D::open(q(0), q(2)), Interval1D::open(q(1), q(3))});
  const auto closed = open_to_closed(two);
  EXPECT_TRUE(closed[0].is_closed() && closed[1].is_closed());
  EXPECT_EQ(closed[0], Interval1D::closed(q(1, 4), q(7, 4)));
  EXPECT_EQ(extract_code_dense(closed), code_of(2, {"10", "11", "01", "00"}));

  const auto single = open_to_closed(line({Interval1D::open(q(0), q(1))}));
  EXPECT_EQ(extract_code_dense(single), code_of(1, {"0", "1"}));

  const auto touching = line({Interval1D::open(q(0), q(1)), Interval1D::open(q(1), q(2))});
  EXPECT_EQ(extract_code_dense(open_to_closed(touching)), code_of(2, {"10", "00", "01"}));
}

TEST(OpenClosed, WrongInputTypesAreRejected) {
  EXPECT_THROW(open_to_closed(line({Interval1D::closed(q(0), q(1))})), DegenerateInterval);
  EXPECT_THROW(closed_to_open(line({Interval1D::open(q(0), q(1))})), DegenerateInterval);
}

TEST(OpenClosed, RandomArrangementsKeepTheirDenseCode) {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> kk(0, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const Geometry g = trial % 2 ? Geometry::circle : Geometry::line;
    const auto open = random_arrangement(rng, g, kk(rng), 0);
    const auto closed = open_to_closed(open);
    ASSERT_EQ(extract_code_dense(closed), extract_code_dense(open));
    const auto reopened = closed_to_open(closed);
    ASSERT_EQ(extract_code_dense(reopened), extract_code_dense(open));

    const auto other = random_arrangement(rng, g, kk(rng), 1);
    ASSERT_EQ(extract_code_dense(closed_to_open(other)), extract_code_dense(other));
  }
}

TEST(SparseTypeEquivalence, OpenClosedAndHalfOpenAgree) {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> kk(1, 4);
  std::uniform_int_distribution<std::size_t> ss(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const Geometry g = trial % 2 ? Geometry::circle : Geometry::line;
    const auto arr = random_arrangement(rng, g, kk(rng), 2);
    const auto sensors = random_sensors(rng, g, ss(rng));
    const auto want = extract_code_sparse(arr, sensors);
    for (auto [lo, hi] : {std::pair{false, false}, std::pair{true, true}, std::pair{true, false}}) {
      const auto variant = retype_for_sensors(arr, sensors, lo, hi);
      for (const auto& iv : variant.intervals()) {
        if (!iv.is_proper()) continue;
        EXPECT_TRUE(iv.lo.infinite || iv.lo.closed == lo);
        EXPECT_TRUE(iv.hi.infinite || iv.hi.closed == hi);
      }
      ASSERT_EQ(extract_code_sparse(variant, sensors).matrix, want.matrix);
    }
  }
}

TEST(DenseCodeBound, RandomOpenArrangements) {
  // k proper open intervals on the line read at most 2k+1 words. For k >= 1
  // both unbounded ends read the zero word, so 2k is the sharp bound there.
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<std::size_t> kk(0, 10);
  std::uniform_int_distribution<int> grid(0, 40);
  bool equality_seen = false;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = kk(rng);
    IntervalArrangement arr(Geometry::line);
    for (std::size_t i = 0; i < k; ++i) {
      int a = grid(rng);
      int b = grid(rng);
      while (a == b) b = grid(rng);
      arr.add(Interval1D::open(q(std::min(a, b)), q(std::max(a, b))));
    }
    const std::size_t size = extract_code_dense(arr).size();
    ASSERT_LE(size, 2 * k + 1);
    if (k > 0) {
      ASSERT_LE(size, 2 * k);
    }
    if (size == 2 * k + 1) equality_seen = true;
  }
  EXPECT_TRUE(equality_seen);
}

TEST(DenseCodeBound, StaircaseAttainsTwoK) {
  for (std::size_t k = 1; k <= 10; ++k) {
    IntervalArrangement arr(Geometry::line);
    for (std::size_t i = 0; i < k; ++i) {
      const auto s = static_cast<long long>(2 * i);
      arr.add(Interval1D::open(q(s), q(s + 3)));
    }
    EXPECT_EQ(extract_code_dense(arr).size(), 2 * k);
  }
}
