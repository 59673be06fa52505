#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <variant>

#include "convex1d/reconstruct.hpp"
#include "oracles.hpp"

using namespace convex1d;

namespace {

Code pc_example() { return Code::of({"1100", "1000", "0100", "0000", "0001", "0110"}); }

// Columns a, b, c, d of the rejection example.
const BitVector kA = "1100"_bv;
const BitVector kB = "1010"_bv;
const BitVector kC = "0101"_bv;
const BitVector kD = "1111"_bv;

Code rejection_example() { return Code::of({"1100", "1010", "0101", "1111"}); }

Code padding_example() { return Code::of({"100", "010", "001", "000"}); }

CodeMultiset multiset_of(std::size_t k, std::initializer_list<std::pair<const char*, std::size_t>> entries) {
  CodeMultiset ms(k);
  for (const auto& [w, n] : entries) ms.add(BitVector::from_string(w), n);
  return ms;
}

std::vector<std::string> strings(const std::vector<BitVector>& cols) {
  std::vector<std::string> out;
  for (const auto& c : cols) out.push_back(c.to_string());
  return out;
}

}  // namespace

TEST(ReconstructSparse, PcTreeExampleInBothGeometries) {
  for (Geometry g : {Geometry::circle, Geometry::line}) {
    const auto m = reconstruct_sparse(pc_example(), g);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->cols(), 6u);
    EXPECT_EQ(m->column_set(), pc_example());
    EXPECT_TRUE(regime_check(*m, {g, Density::sparse}));
  }
}

TEST(ReconstructSparse, RejectionExampleColumnsAreInfeasible) {
  EXPECT_FALSE(reconstruct_sparse(rejection_example(), Geometry::line));
}

TEST(ReconstructSparse, RejectionExampleRowsAreOrderable) {
  // Reading the printed matrix by rows gives a different, orderable code.
  const Code rows = Code::of({"1101", "1011", "0101", "0011"});
  EXPECT_TRUE(oracle::orderable(oracle::masks(rows), 4, false));
  EXPECT_TRUE(reconstruct_sparse(rows, Geometry::line));
}

TEST(ReconstructSparse, SingleZeroWord) {
  const auto m = reconstruct_sparse(Code::of({"0000"}), Geometry::line);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->rows(), 4u);
  EXPECT_EQ(m->cols(), 1u);
  EXPECT_EQ(m->column(0), "0000"_bv);
}

TEST(Certificate, RejectionExampleHasAnOddCycle) {
  const auto result = rejection_certificate(rejection_example());
  ASSERT_TRUE(std::holds_alternative<RejectionCertificate>(result));
  const auto& cert = std::get<RejectionCertificate>(result);
  EXPECT_EQ(cert.cycle.size() % 2, 1u);
  EXPECT_GE(cert.cycle.size(), 3u);
  EXPECT_TRUE(verify_certificate(rejection_example(), cert));
}

TEST(Certificate, PrintedFiveEdgeCycleVerifies) {
  const auto cert = certify_cycle(rejection_example(), {{kD, kA}, {kA, kB}, {kB, kC}, {kC, kA}, {kA, kC}});
  ASSERT_TRUE(cert);
  EXPECT_TRUE(verify_certificate(rejection_example(), *cert));
  // (c,a)-(a,c) is the only reversal.
  EXPECT_EQ(std::count_if(cert->edges.begin(), cert->edges.end(),
                          [](const CertificateEdge& e) { return e.kind == EdgeKind::reversal; }),
            1);
}

TEST(Certificate, TamperedCertificatesAreRejected) {
  auto cert = *certify_cycle(rejection_example(), {{kD, kA}, {kA, kB}, {kB, kC}, {kC, kA}, {kA, kC}});
  auto wrong_row = cert;
  for (auto& e : wrong_row.edges) {
    if (e.kind == EdgeKind::betweenness) {
      e.witness_row = e.witness_row % 4 + 1;
      break;
    }
  }
  EXPECT_FALSE(verify_certificate(rejection_example(), wrong_row));

  auto even = cert;
  even.cycle.pop_back();
  even.edges.pop_back();
  EXPECT_FALSE(verify_certificate(rejection_example(), even));

  // A word outside the code invalidates the certificate.
  EXPECT_FALSE(verify_certificate(Code::of({"1100", "1010", "0101"}), cert));

  // Not a closed walk in the graph.
  EXPECT_FALSE(certify_cycle(rejection_example(), {{kA, kB}, {kB, kA}, {kC, kD}}));
}

TEST(Certificate, TwoWordCodesAreBipartite) {
  for (oracle::Mask a = 0; a < 16; ++a) {
    for (oracle::Mask b = a + 1; b < 16; ++b) {
      const Code code = oracle::code_of({a, b}, 4);
      const auto result = rejection_certificate(code);
      ASSERT_TRUE(std::holds_alternative<Bipartition>(result));
      const auto& bp = std::get<Bipartition>(result);
      EXPECT_EQ(bp.vertices.size(), 2u);
      EXPECT_NE(bp.colour[0], bp.colour[1]);
      EXPECT_TRUE(verify_bipartition(code, bp));
    }
  }
}

TEST(Certificate, PcTreeExampleIsBipartite) {
  const auto result = rejection_certificate(pc_example());
  ASSERT_TRUE(std::holds_alternative<Bipartition>(result));
  const auto& bp = std::get<Bipartition>(result);
  EXPECT_EQ(bp.vertices.size(), 30u);
  EXPECT_TRUE(verify_bipartition(pc_example(), bp));
}

TEST(Certificate, BadColouringIsRejected) {
  auto bp = std::get<Bipartition>(rejection_certificate(pc_example()));
  // Flipping one vertex breaks its reversal edge.
  bp.colour[0] = 1 - bp.colour[0];
  EXPECT_FALSE(verify_bipartition(pc_example(), bp));
}

TEST(Certificate, DualityWithSparseReconstruction) {
  // Every code of <= 6 words over length <= 5.
  auto check = [](const Code& code) {
    const bool feasible = reconstruct_sparse(code, Geometry::line).has_value();
    const auto result = rejection_certificate(code);
    if (feasible) {
      ASSERT_TRUE(std::holds_alternative<Bipartition>(result)) << ::testing::PrintToString(strings(code.words()));
      EXPECT_TRUE(verify_bipartition(code, std::get<Bipartition>(result)));
    } else {
      ASSERT_TRUE(std::holds_alternative<RejectionCertificate>(result));
      EXPECT_TRUE(verify_certificate(code, std::get<RejectionCertificate>(result)));
    }
  };
  for (std::size_t k = 1; k <= 5; ++k) {
    oracle::for_each_code(k, 1, 6, [&](const std::vector<oracle::Mask>& ws) { check(oracle::code_of(ws, k)); });
  }
}

TEST(ReconstructDenseLinear, PaddingExample) {
  const auto mo = reconstruct_dense_linear(padding_example());
  ASSERT_TRUE(mo);
  EXPECT_TRUE(regime_check(3, mo->columns, kHCO));
  EXPECT_EQ(Code(3, mo->columns.begin(), mo->columns.end()), padding_example());
  // The zero word is the smallest label, so the canonical ordering starts
  // with it and the padded sequence has one more column than the printed one.
  EXPECT_EQ(strings(mo->columns), (std::vector<std::string>{"000", "100", "000", "010", "000", "001"}));
  const std::vector<BitVector> printed{"100"_bv, "000"_bv, "010"_bv, "000"_bv, "001"_bv};
  EXPECT_TRUE(regime_check(3, printed, kHCO));
}

TEST(ReconstructDenseLinear, PaddingExampleHasNoHcoOrdering) {
  EXPECT_FALSE(oracle::orderable(oracle::masks(padding_example()), 3, false, true));
  EXPECT_TRUE(oracle::orderable(oracle::masks(padding_example()), 3, false, false));
}

TEST(ReconstructDenseLinear, UnpaddableCodeIsInfeasible) {
  const Code code = Code::of({"100", "010", "001"});
  EXPECT_FALSE(reconstruct_dense_linear(code));
  EXPECT_FALSE(oracle::hco_multiordering_exists(oracle::masks(code), 3, 5));
}

TEST(ReconstructDenseLinear, PcTreeExampleGivesSevenColumns) {
  const auto mo = reconstruct_dense_linear(pc_example());
  ASSERT_TRUE(mo);
  EXPECT_EQ(mo->columns.size(), 7u);
  EXPECT_TRUE(regime_check(mo->matrix(), kHCO));
  EXPECT_TRUE(regime_check(mo->matrix(Geometry::circle), kHCCO));
  const auto printed = SensorMatrix::from_strings({"0011000", "0001110", "0000100", "1000000"});
  EXPECT_EQ(mo->matrix().column_multiset(), printed.column_multiset());
}

TEST(ReconstructDenseLinear, OutputLengthBound) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 2 + trial % 4;
    const Code code = oracle::code_of(oracle::random_code(rng, k, 8), k);
    const auto mo = reconstruct_dense_linear(code);
    if (!mo) continue;
    EXPECT_LE(mo->columns.size(), 2 * code.size() - 1);
    EXPECT_EQ(mo->support, code);
  }
}

TEST(ReconstructDense, CircleIsUnsupported) {
  const auto out = reconstruct_dense(pc_example(), Geometry::circle);
  EXPECT_EQ(out.status, Status::unsupported);
  EXPECT_FALSE(out.value);
  EXPECT_FALSE(out.note.empty());
}

TEST(ReconstructDense, LineStatuses) {
  EXPECT_EQ(reconstruct_dense(pc_example(), Geometry::line).status, Status::feasible);
  EXPECT_EQ(reconstruct_dense(rejection_example(), Geometry::line).status, Status::infeasible);
  EXPECT_EQ(reconstruct_dense(Code::of({"100", "010", "001"}), Geometry::line).status, Status::infeasible);
}

TEST(ReconstructDenseLinear, AgreesWithMultiorderingOracle) {
  // All codes of <= 5 words over length <= 4.
  for (std::size_t k = 1; k <= 4; ++k) {
    oracle::for_each_code(k, 1, 5, [&](const std::vector<oracle::Mask>& ws) {
      const Code code = oracle::code_of(ws, k);
      const bool got = reconstruct_dense_linear(code).has_value();
      ASSERT_EQ(got, oracle::hco_multiordering_exists(ws, k, 2 * ws.size() - 1))
          << ::testing::PrintToString(strings(code.words()));
    });
  }
}

TEST(ReconstructDenseLinear, EveryCoOrderingExtends) {
  for (std::size_t k = 1; k <= 3; ++k) {
    oracle::for_each_code(k, 1, 5, [&](const std::vector<oracle::Mask>& ws) {
      const Code code = oracle::code_of(ws, k);
      const bool feasible = reconstruct_dense_linear(code).has_value();
      for (const auto& seq : oracle::all_orderings(ws, k, false)) {
        std::vector<BitVector> cols;
        for (auto m : seq) cols.push_back(oracle::from_mask(m, k));
        ASSERT_EQ(extend_to_hco(code, cols).has_value(), feasible);
      }
    });
  }
}

TEST(ReconstructMultisetSparse, DuplicatesPcTreeColumns) {
  const auto ms =
      multiset_of(4, {{"1100", 2}, {"1000", 1}, {"0100", 1}, {"0000", 3}, {"0001", 1}, {"0110", 1}});
  const auto m = reconstruct_multiset_sparse(ms, Geometry::circle);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->rows(), 4u);
  EXPECT_EQ(m->cols(), 9u);
  EXPECT_EQ(m->column_multiset(), ms);
  EXPECT_TRUE(regime_check(*m, kCCO));
}

TEST(ReconstructMultisetSparse, InfeasibleSupport) {
  const auto ms = multiset_of(4, {{"1100", 1}, {"1010", 1}, {"0101", 1}, {"1111", 1}});
  EXPECT_FALSE(reconstruct_multiset_sparse(ms, Geometry::line));
}

TEST(ReconstructMultisetSparse, RepeatedZeroWord) {
  const auto m = reconstruct_multiset_sparse(multiset_of(4, {{"0000", 5}}), Geometry::line);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->rows(), 4u);
  EXPECT_EQ(m->cols(), 5u);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(m->column(j), "0000"_bv);
}

TEST(ReconstructMultisetDense, PaddingWithTwoZeros) {
  const auto ms = multiset_of(3, {{"100", 1}, {"010", 1}, {"001", 1}, {"000", 2}});
  const auto mo = reconstruct_multiset_dense_linear(ms);
  ASSERT_TRUE(mo);
  EXPECT_EQ(mo->columns.size(), 5u);
  EXPECT_TRUE(regime_check(3, mo->columns, kHCO));
  EXPECT_EQ(mo->matrix().column_multiset(), ms);
  // Up to reversal and relabelling the singletons, the only HCO shape is
  // x 0 y 0 z.
  EXPECT_EQ(mo->columns[1], "000"_bv);
  EXPECT_EQ(mo->columns[3], "000"_bv);
}

TEST(ReconstructMultisetDense, SingleZeroIsTooFew) {
  const auto ms = multiset_of(3, {{"100", 1}, {"010", 1}, {"001", 1}, {"000", 1}});
  EXPECT_FALSE(reconstruct_multiset_dense_linear(ms));
  EXPECT_FALSE(oracle::multiset_arrangeable({1, 2, 4, 0}, 3, false, true));
}

TEST(ReconstructMultisetDense, ExtraPaddingIsAlwaysAccepted) {
  const auto ms = multiset_of(3, {{"100", 1}, {"010", 1}, {"001", 1}, {"000", 7}});
  const auto mo = reconstruct_multiset_dense_linear(ms);
  ASSERT_TRUE(mo);
  EXPECT_EQ(mo->columns.size(), 10u);
  EXPECT_EQ(mo->matrix().column_multiset(), ms);
}

TEST(ReconstructMultiset, AgreesWithSequenceOracle) {
  // Every multiset of total size <= 6 over words of length <= 3.
  for (std::size_t k = 1; k <= 3; ++k) {
    const oracle::Mask universe = oracle::Mask{1} << k;
    std::vector<oracle::Mask> cur;
    std::function<void(oracle::Mask)> rec = [&](oracle::Mask next) {
      if (!cur.empty()) {
        CodeMultiset ms(k);
        for (auto m : cur) ms.add(oracle::from_mask(m, k));
        for (bool circle : {false, true}) {
          const Geometry g = circle ? Geometry::circle : Geometry::line;
          ASSERT_EQ(reconstruct_multiset_sparse(ms, g).has_value(),
                    oracle::multiset_arrangeable(cur, k, circle, false));
        }
        ASSERT_EQ(reconstruct_multiset_dense_linear(ms).has_value(),
                  oracle::multiset_arrangeable(cur, k, false, true))
            << ::testing::PrintToString(cur);
      }
      if (cur.size() == 6) return;
      for (oracle::Mask w = next; w < universe; ++w) {
        cur.push_back(w);
        rec(w);
        cur.pop_back();
      }
    };
    rec(0);
  }
}

TEST(ReconstructMultiset, AgreesWithSequenceOracleOnLongerWords) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t k = 4;
    // Few distinct words so that repeats are common.
    const auto pool = oracle::random_code(rng, k, 4);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<oracle::Mask> cols(size(rng));
    for (auto& c : cols) c = pool[pick(rng)];
    CodeMultiset ms(k);
    for (auto m : cols) ms.add(oracle::from_mask(m, k));
    ASSERT_EQ(reconstruct_multiset_sparse(ms, Geometry::line).has_value(),
              oracle::multiset_arrangeable(cols, k, false, false));
    ASSERT_EQ(reconstruct_multiset_dense_linear(ms).has_value(), oracle::multiset_arrangeable(cols, k, false, true));
  }
}
