#include "hyperfix/mapping.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "hyperfix/catalog.hpp"
#include "hyperfix/rng.hpp"

using namespace hyperfix;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Test-local oracle: sup over all ordered grid pairs of the ratio each class
// inequality demands. Works on plain doubles, independent of the library's
// Point/SpaceModel plumbing.
struct OracleMinH {
  double contraction = 0, cq = 0, gc = 0, gcq = 0, zam = 0;
};

OracleMinH brute_force_min_h(const std::function<double(double)>& t, double lo, double hi,
                             int n) {
  auto ratio = [](double num, double den) {
    if (den > 0) return num / den;
    return num > 0 ? kInf : 0.0;
  };
  OracleMinH o;
  std::vector<double> xs(n), ts(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * i / (n - 1);
    ts[i] = t(xs[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double x = xs[i], y = xs[j], tx = ts[i], ty = ts[j];
      double num = std::abs(tx - ty);
      double dxy = std::abs(x - y), dxtx = std::abs(x - tx), dyty = std::abs(y - ty);
      double dxty = std::abs(x - ty), dytx = std::abs(y - tx);
      o.contraction = std::max(o.contraction, ratio(num, dxy));
      o.cq = std::max(o.cq, ratio(num, std::max({dxy, dxtx, dyty, dxty, dytx})));
      o.gc = std::max(o.gc, ratio(num, std::max({dxy, dxtx, dyty, dxty + dytx})));
      o.gcq = std::max(o.gcq, ratio(num, std::max({dxy, dxtx + dyty, dxty + dytx})));
      o.zam = std::max(o.zam, std::min({ratio(num, dxy), ratio(num, dxtx + dyty),
                                        ratio(num, dxty + dytx)}));
    }
  }
  return o;
}

}  // namespace

TEST(Lambda, Values) {
  EXPECT_DOUBLE_EQ(lambda_of(0.0).value, 0.0);
  EXPECT_TRUE(lambda_of(0.0).usable);
  // max{1/3, (1/3)/(2/3)} = 1/2 up to the rounding of 1/3 itself.
  EXPECT_NEAR(lambda_of(1.0 / 3.0).value, 0.5, 1e-15);
  EXPECT_TRUE(lambda_of(1.0 / 3.0).usable);
  EXPECT_DOUBLE_EQ(lambda_of(0.5).value, 1.0);
  EXPECT_FALSE(lambda_of(0.5).usable);
  EXPECT_NEAR(lambda_of(0.6).value, 1.5, 1e-15);
  EXPECT_FALSE(lambda_of(0.6).usable);
  EXPECT_THROW(lambda_of(-0.1), std::invalid_argument);
  EXPECT_THROW(lambda_of(1.0), std::invalid_argument);
}

TEST(Apply, CatalogRules) {
  auto linear = make_linear(1.0 / 3.0, 0.0);
  EXPECT_DOUBLE_EQ(linear.apply(scalar_point(1.0)).coords[0], 1.0 / 3.0);

  auto constant = make_constant(0.5);
  EXPECT_DOUBLE_EQ(constant.apply(scalar_point(0.123)).coords[0], 0.5);

  auto qc1 = make_qc1();
  EXPECT_DOUBLE_EQ(qc1.apply(scalar_point(0.6)).coords[0], 0.0);
  EXPECT_DOUBLE_EQ(qc1.apply(scalar_point(0.4)).coords[0], 0.2);
  EXPECT_DOUBLE_EQ(qc1.apply(scalar_point(0.5)).coords[0], 0.0);
}

TEST(Apply, RejectsPointsOutsideDomain) {
  auto qc1 = make_qc1();
  EXPECT_THROW(qc1.apply(scalar_point(1.5)), std::invalid_argument);
  auto pull = make_halfplane_pull(0.75);
  EXPECT_THROW(pull.apply(halfplane_point(0.0, 100.0)), std::invalid_argument);
}

TEST(Catalog, DeclaredFixedPointsAreFixed) {
  std::vector<ContractiveMapping> maps;
  maps.push_back(make_linear(1.0 / 3.0, 0.0));
  maps.push_back(make_linear(0.25, 0.5, 0.0, 1.0));
  maps.push_back(make_constant(0.5));
  maps.push_back(make_qc1());
  maps.push_back(make_halfplane_pull(0.75));
  for (const auto& m : maps) {
    ASSERT_TRUE(m.fixed_point().has_value()) << m.name();
    double resid = m.space().distance(m.apply(*m.fixed_point()), *m.fixed_point());
    EXPECT_LE(resid, 1e-12) << m.name();
  }
}

TEST(Catalog, ValidatesParameters) {
  EXPECT_THROW(make_linear(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(make_linear(0.3, 5.0), std::invalid_argument);       // p outside [lo,hi]
  EXPECT_THROW(make_constant(2.0), std::invalid_argument);          // c outside [lo,hi]
  EXPECT_THROW(make_halfplane_pull(0.4), std::invalid_argument);    // q <= 1/2
  EXPECT_THROW(make_halfplane_pull(1.0), std::invalid_argument);
}

TEST(Catalog, ParseMappingGrammar) {
  auto m = parse_mapping("linear:q=0.25,p=0.5,lo=0,hi=1");
  EXPECT_EQ(m.name(), "linear:q=0.25,p=0.5,lo=0,hi=1");
  EXPECT_EQ(parse_mapping("qc1").name(), "qc1");
  EXPECT_EQ(parse_mapping("halfplane-pull:q=0.75").name(),
            "halfplane-pull:q=0.75,px=0,py=1,r=2");
  EXPECT_THROW(parse_mapping("sphere-pull:q=0.5"), std::invalid_argument);
  EXPECT_THROW(parse_mapping("linear:q=0.25"), std::invalid_argument);  // p missing
  EXPECT_THROW(parse_mapping("qc1:q=0.5"), std::invalid_argument);      // unknown param
  EXPECT_THROW(parse_mapping("linear:q=abc,p=0"), std::invalid_argument);
}

TEST(Classify, LinearContractionHoldsEverywhere) {
  auto m = make_linear(1.0 / 3.0, 0.0, 0.0, 1.0);
  ClassifyParams params;
  params.h = 1.0 / 3.0;
  params.zam = m.zamfirescu_params();
  auto rep = classify_mapping(m, 101, params);
  EXPECT_EQ(rep.pair_count, 101u * 101u);
  EXPECT_TRUE(rep.contraction.holds.value());
  EXPECT_TRUE(rep.cq.holds.value());
  EXPECT_TRUE(rep.generalized_contractive.holds.value());
  EXPECT_TRUE(rep.generalized_cq.holds.value());
  EXPECT_TRUE(rep.zamfirescu.holds.value());
}

TEST(Classify, MinHEstimatesMatchAnalyticValuesForLinear) {
  // T(x) = x/3 on [0,1]. The distance branch gives ratio q; the summed
  // cross-displacement branch grows the denominator to (1+q)|x-y| on the
  // worst pairs, so the two widest classes need only q/(1+q).
  auto m = make_linear(1.0 / 3.0, 0.0, 0.0, 1.0);
  double q = 1.0 / 3.0;
  EXPECT_NEAR(estimate_min_h(m, MappingClass::contraction, 101), q, 1e-12);
  EXPECT_NEAR(estimate_min_h(m, MappingClass::cq, 101), q, 1e-12);
  EXPECT_NEAR(estimate_min_h(m, MappingClass::generalized_contractive, 101), q / (1 + q),
              1e-12);
  EXPECT_NEAR(estimate_min_h(m, MappingClass::generalized_cq, 101), q / (1 + q), 1e-12);
  EXPECT_NEAR(estimate_min_h(m, MappingClass::zamfirescu, 101), q / (1 + q), 1e-12);

  auto oracle = brute_force_min_h([q](double x) { return q * x; }, 0.0, 1.0, 101);
  EXPECT_DOUBLE_EQ(estimate_min_h(m, MappingClass::contraction, 101), oracle.contraction);
  EXPECT_DOUBLE_EQ(estimate_min_h(m, MappingClass::cq, 101), oracle.cq);
  EXPECT_DOUBLE_EQ(estimate_min_h(m, MappingClass::generalized_contractive, 101), oracle.gc);
  EXPECT_DOUBLE_EQ(estimate_min_h(m, MappingClass::generalized_cq, 101), oracle.gcq);
  EXPECT_DOUBLE_EQ(estimate_min_h(m, MappingClass::zamfirescu, 101), oracle.zam);
}

TEST(Classify, ConstantMapNeedsNothing) {
  auto m = make_constant(0.5);
  EXPECT_DOUBLE_EQ(estimate_min_h(m, MappingClass::generalized_cq, 101), 0.0);
  EXPECT_DOUBLE_EQ(estimate_min_h(m, MappingClass::contraction, 101), 0.0);
}

TEST(Classify, Qc1JumpMap) {
  auto m = make_qc1();
  ClassifyParams params;
  params.h = 0.99;  // even close to 1 no Lipschitz constant exists
  params.zam = m.zamfirescu_params();
  auto rep = classify_mapping(m, 257, params);

  EXPECT_FALSE(rep.contraction.holds.value());
  EXPECT_GE(rep.contraction.min_h_estimate, 1.0);
  // Worst offender hugs the jump at 1/2.
  EXPECT_NEAR(rep.contraction.worst_pair.first.coords[0], 0.5, 0.01);

  EXPECT_TRUE(rep.zamfirescu.holds.value());
  EXPECT_TRUE(rep.generalized_cq.holds.value());

  // The widest class needs exactly 1/3 on this grid: on pairs x > 2y below
  // the jump the cross sum is (3/2)(x-y) against a numerator of (x-y)/2.
  EXPECT_DOUBLE_EQ(rep.generalized_cq.min_h_estimate, 1.0 / 3.0);
  EXPECT_LE(rep.generalized_cq.min_h_estimate, 0.5);

  auto oracle =
      brute_force_min_h([](double x) { return x < 0.5 ? 0.5 * x : 0.0; }, 0.0, 1.0, 257);
  EXPECT_DOUBLE_EQ(rep.generalized_cq.min_h_estimate, oracle.gcq);
  EXPECT_DOUBLE_EQ(rep.contraction.min_h_estimate, oracle.contraction);
  EXPECT_DOUBLE_EQ(rep.cq.min_h_estimate, oracle.cq);
  // qc1 is a quasi-contraction in the narrow sense too: cq needs 1/2.
  EXPECT_NEAR(rep.cq.min_h_estimate, 0.5, 0.01);
}

TEST(Classify, IdentityMap) {
  auto m = make_identity();
  ClassifyParams params;
  params.h = 0.99;
  auto rep = classify_mapping(m, 101, params);

  // No contraction factor below 1 exists, and with zero displacements the
  // five-term class collapses to d(x,y) as well.
  EXPECT_FALSE(rep.contraction.holds.value());
  EXPECT_FALSE(rep.cq.holds.value());
  EXPECT_DOUBLE_EQ(rep.contraction.min_h_estimate, 1.0);
  EXPECT_DOUBLE_EQ(rep.cq.min_h_estimate, 1.0);
  EXPECT_GT(rep.contraction.worst_excess, 0.0);

  // The summed cross displacements equal 2 d(x,y), so the two widest classes
  // are satisfied from h = 1/2 on; that is exactly why the lambda gate (not
  // class membership) is what rejects the identity map.
  EXPECT_TRUE(rep.generalized_contractive.holds.value());
  EXPECT_TRUE(rep.generalized_cq.holds.value());
  EXPECT_DOUBLE_EQ(rep.generalized_cq.min_h_estimate, 0.5);
  EXPECT_FALSE(lambda_of(rep.generalized_cq.min_h_estimate).usable);

  ClassifyParams below;
  below.h = 0.49;
  auto rep2 = classify_mapping(m, 101, below);
  EXPECT_FALSE(rep2.generalized_cq.holds.value());
  EXPECT_GT(rep2.generalized_cq.violating_pairs, 0u);
}

TEST(Classify, ZamfirescuDisjunctionIsPerPair) {
  // qc1 needs the distance branch below the jump and the displacement branch
  // across it; no single branch works alone, the disjunction does.
  auto m = make_qc1();
  ClassifyParams crippled;
  crippled.zam = ZamfirescuParams{0.5, 1e-9, 1e-9};  // displacement branches disabled
  auto broken = classify_mapping(m, 257, crippled);
  EXPECT_FALSE(broken.zamfirescu.holds.value());
  EXPECT_GT(broken.zamfirescu.violating_pairs, 0u);

  ClassifyParams params;
  params.zam = ZamfirescuParams{0.5, 0.4, 0.4};
  auto rep = classify_mapping(m, 257, params);
  EXPECT_TRUE(rep.zamfirescu.holds.value());
  EXPECT_EQ(rep.zamfirescu.violating_pairs, 0u);
}

TEST(Classify, HalfplanePullIsAGeodesicContraction) {
  auto m = make_halfplane_pull(0.75);
  ClassifyParams params;
  params.h = 0.25;
  params.zam = m.zamfirescu_params();
  auto rep = classify_mapping(m, default_grid(m), params);
  EXPECT_TRUE(rep.contraction.holds.value());
  EXPECT_TRUE(rep.cq.holds.value());
  EXPECT_TRUE(rep.generalized_cq.holds.value());
  EXPECT_TRUE(rep.zamfirescu.holds.value());
  EXPECT_LE(rep.generalized_cq.min_h_estimate, 0.25 + 1e-12);
}

TEST(Inclusion, WidestClassNeedsTheSmallestParameter) {
  // Pointwise the denominators only grow along the chain, so the required
  // ratios can only shrink. Checked on seeded random piecewise-linear
  // self-maps of [0,1].
  SplitMix64 gen(2024);
  for (int trial = 0; trial < 25; ++trial) {
    int knots = 3 + static_cast<int>(gen.next() % 5);
    std::vector<double> ys(static_cast<std::size_t>(knots));
    for (double& y : ys) y = gen.uniform01();
    auto rule = [ys, knots](double x) {
      double t = x * (knots - 1);
      int seg = std::min(knots - 2, static_cast<int>(t));
      double frac = t - seg;
      return ys[seg] + (ys[seg + 1] - ys[seg]) * frac;
    };
    ContractiveMapping m(
        "polyline", SpaceModel::euclidean(1), Domain::interval(0.0, 1.0),
        [rule](const Point& p) { return scalar_point(rule(p.coords[0])); },
        MappingClass::unclassified, std::nullopt, std::nullopt, std::nullopt);
    double c = estimate_min_h(m, MappingClass::contraction, 41);
    double cq = estimate_min_h(m, MappingClass::cq, 41);
    double gc = estimate_min_h(m, MappingClass::generalized_contractive, 41);
    double gcq = estimate_min_h(m, MappingClass::generalized_cq, 41);
    EXPECT_LE(gcq, gc);
    EXPECT_LE(gc, cq);
    EXPECT_LE(cq, c);
  }
}

TEST(Inclusion, ZamfirescuPassersPassWidestClassWithMaxParameter) {
  std::vector<ContractiveMapping> maps;
  maps.push_back(make_linear(1.0 / 3.0, 0.0, 0.0, 1.0));
  maps.push_back(make_qc1());
  maps.push_back(make_constant(0.5));
  maps.push_back(make_halfplane_pull(0.75));
  for (const auto& m : maps) {
    ASSERT_TRUE(m.zamfirescu_params().has_value()) << m.name();
    ZamfirescuParams z = *m.zamfirescu_params();
    int grid = m.domain().kind == Domain::Kind::interval ? 257 : 17;
    ClassifyParams params;
    params.zam = z;
    params.h = std::max({z.a, z.b, z.c});
    auto rep = classify_mapping(m, grid, params);
    ASSERT_TRUE(rep.zamfirescu.holds.value()) << m.name();
    EXPECT_TRUE(rep.generalized_cq.holds.value()) << m.name();
    EXPECT_EQ(rep.generalized_cq.violating_pairs, 0u) << m.name();
  }
}

TEST(KeyEstimates, HoldForVerifiedMappings) {
  auto linear = make_linear(1.0 / 3.0, 0.0, 0.0, 1.0);
  auto r = verify_key_estimates(linear, 0.5, 101);
  EXPECT_LE(r.self_displacement, 1e-12);
  EXPECT_LE(r.cross_displacement, 1e-12);

  auto constant = make_constant(0.5);
  r = verify_key_estimates(constant, 0.0, 101);
  EXPECT_EQ(r.self_displacement, 0.0);
  EXPECT_EQ(r.cross_displacement, 0.0);
}

TEST(KeyEstimates, IdentityProducesPositiveResidual) {
  auto m = make_identity();
  auto r = verify_key_estimates(m, 0.5, 101);
  // Pair (0,1): d(Tx,Ty) = 1 against 0.5 * 1 + 0 own displacement. The cross
  // variant is satisfied even here, since d(y,Tx) = d(x,y).
  EXPECT_NEAR(r.self_displacement, 0.5, 1e-12);
  EXPECT_EQ(r.cross_displacement, 0.0);
}

TEST(KeyEstimates, ValidatesLambda) {
  auto m = make_identity();
  EXPECT_THROW(verify_key_estimates(m, 1.0, 11), std::invalid_argument);
}

TEST(MappingConstruction, RejectsBrokenDeclarations) {
  SpaceModel e1 = SpaceModel::euclidean(1);
  // Declared fixed point that is not fixed.
  EXPECT_THROW(ContractiveMapping("bad", e1, Domain::interval(0, 1),
                                  [](const Point& p) { return scalar_point(0.5 * p.coords[0]); },
                                  MappingClass::unclassified, std::nullopt, std::nullopt,
                                  scalar_point(0.75)),
               std::invalid_argument);
  // Rule escaping the domain.
  EXPECT_THROW(ContractiveMapping("escape", e1, Domain::interval(0, 1),
                                  [](const Point& p) { return scalar_point(p.coords[0] + 1.0); },
                                  MappingClass::unclassified, std::nullopt, std::nullopt,
                                  std::nullopt),
               std::invalid_argument);
  // Out-of-range parameters.
  EXPECT_THROW(ContractiveMapping("badh", e1, Domain::interval(0, 1),
                                  [](const Point& p) { return p; }, MappingClass::unclassified,
                                  1.5, std::nullopt, std::nullopt),
               std::invalid_argument);
  EXPECT_THROW(ContractiveMapping("badzam", e1, Domain::interval(0, 1),
                                  [](const Point& p) { return p; }, MappingClass::unclassified,
                                  std::nullopt, ZamfirescuParams{0.5, 0.7, 0.2}, std::nullopt),
               std::invalid_argument);
}
