#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "hyperis/ogp.hpp"
#include "hyperis/thresholds.hpp"

using namespace hyperis;

namespace {

VertexPolynomialSet degree1_for(int r, int n, const std::vector<long>& k) {
  return degree1_polynomial(r, n, k, r - 1, Seed{7});
}

}  // namespace

TEST_CASE("incremental tracker agrees with full recomputation") {
  const int r = 2, n = 20;
  VertexPolynomialSet poly = degree1_for(r, n, {5, 5});
  const double p = 0.15;
  InterpolationPath path(poly.coordinate_space, p, 400, Seed{3000});
  PolynomialPathTracker tracker(poly, path.state());
  for (int t = 0; t < 400; ++t) {
    auto delta = path.advance();
    double change = tracker.apply(delta);
    auto full = poly.evaluate(path.state());
    double check = 0.0;
    for (size_t v = 0; v < full.size(); ++v) {
      CHECK(std::fabs(full[v] - tracker.values()[v]) <= 1e-9);
    }
    (void)check;
    CHECK(change >= 0.0);
  }
}

TEST_CASE("c-bad detection") {
  SUBCASE("a constant polynomial has no bad steps") {
    VertexPolynomialSet constant;
    constant.coordinate_space = 16;
    constant.polys.resize(4);
    for (auto& p : constant.polys) p.terms.push_back(Monomial{2.0, {}});
    InterpolationPath path(16, 0.4, 64, Seed{3100});
    CBadReport rep = detect_c_bad(constant, path, 0.001, 16.0);
    CHECK(rep.bad_steps.empty());
    CHECK(rep.max_step_change == 0.0);
  }
  SUBCASE("degree-1 steps are bad exactly when a critical coordinate flips") {
    const int r = 2, n = 10;
    VertexPolynomialSet poly = degree1_for(r, n, {3, 3});
    const double p = 0.3;
    // threshold below 1: every unit change is bad
    InterpolationPath path(poly.coordinate_space, p, poly.coordinate_space, Seed{3200});
    auto base = path.state();
    CBadReport rep = detect_c_bad(poly, path, 0.5, 1.0);
    long flips = 0;
    for (std::uint64_t coord = 0; coord < poly.coordinate_space; ++coord) {
      // critical coordinates: first tuple entry within the prefix block
      std::uint64_t first = coord / n;
      if (first < 3 && (base[coord] != 0) != path.value(coord)) ++flips;
    }
    CHECK(static_cast<long>(rep.bad_steps.size()) == flips);
    CHECK(rep.max_step_change <= 1.0);
  }
}

TEST_CASE("stability estimate against the lower bound") {
  SUBCASE("zero polynomial is always stable") {
    VertexPolynomialSet zero;
    zero.coordinate_space = 32;
    zero.polys.resize(8);
    StabilityReport rep = estimate_stability(zero, 32, 0.2, 1, 0.5, 50, Seed{3300});
    CHECK(rep.probability.value == 1.0);
    CHECK(rep.pass);
  }
  SUBCASE("threshold above the unit change gives probability one") {
    const int r = 2, n = 12;
    VertexPolynomialSet poly = degree1_for(r, n, {3, 3});
    const double p = 4.0 / n;
    double norm = estimate_mean_square_norm(poly, poly.coordinate_space, p, 400, Seed{3400});
    // c * norm > 1 means a single unit flip is never bad
    double c = 1.5 / norm;
    StabilityReport rep = estimate_stability(poly, poly.coordinate_space, p, 1, c, 60, Seed{3500});
    CHECK(rep.probability.value == 1.0);
    CHECK(rep.pass);
  }
  SUBCASE("tight threshold matches the exact product formula") {
    const int r = 2, n = 10;
    const long k1 = 1;
    VertexPolynomialSet poly = degree1_for(r, n, {k1, 1});
    const double p = 0.1;
    double norm = estimate_mean_square_norm(poly, poly.coordinate_space, p, 2000, Seed{3600});
    double c = 0.5 / norm;  // threshold 0.5 < 1: any flip of a critical coordinate is bad
    StabilityReport rep = estimate_stability(poly, poly.coordinate_space, p, 1, c, 2000, Seed{3700});
    const double exact = std::pow(1.0 - 2.0 * p * (1.0 - p), static_cast<double>(k1) * n);
    CHECK(std::fabs(rep.probability.value - exact) <= 4.0 * rep.probability.se);
    CHECK(rep.pass);  // the true probability comfortably exceeds p^{4 Gamma D / c}
  }
}

TEST_CASE("overlap sequence construction") {
  SUBCASE("constant algorithm fails at k = 2") {
    PathExperiment exp;
    exp.model = PathExperiment::Model::partite;
    exp.r = 2;
    exp.n = 12;
    exp.d = 3.0;
    exp.epsilon = 0.3;
    exp.K = 3;
    exp.Gamma = 1;
    exp.seed = Seed{3800};
    exp.algorithm = [](const std::vector<std::uint8_t>&) {
      return VertexSet({0, 1, 2});
    };
    OverlapRecord rec = build_overlap_sequence(exp);
    CHECK(rec.process_failed);
    CHECK(rec.reached_k == 1);
    CHECK(rec.sets.size() == 1);
  }
  SUBCASE("K = 1 records only the base set") {
    PathExperiment exp;
    exp.model = PathExperiment::Model::partite;
    exp.r = 2;
    exp.n = 12;
    exp.d = 3.0;
    exp.K = 1;
    exp.Gamma = 1;
    exp.seed = Seed{3900};
    std::vector<long> k = {3, 3};
    VertexPolynomialSet poly = degree1_for(2, 12, k);
    exp.poly = &poly;
    OverlapRecord rec = build_overlap_sequence(exp);
    CHECK_FALSE(rec.process_failed);
    CHECK(rec.sets.size() == 1);
    CHECK(rec.sets[0].k == 1);
    CHECK(rec.sets[0].independent_ok);
  }
  SUBCASE("degree-1 path has unit steps and first crossings near the window floor") {
    PathExperiment exp;
    exp.model = PathExperiment::Model::partite;
    exp.r = 3;
    exp.n = 40;
    exp.d = 6.0;
    exp.epsilon = 0.25;
    exp.K = 4;
    exp.Gamma = 3;
    exp.seed = Seed{4000};
    TargetSizes ts = target_sizes(GammaVector::uniform(3), 3, 40, 6.0, 0.25,
                                  TargetSide::achievability);
    VertexPolynomialSet poly = degree1_polynomial(3, 40, ts.rounded, 2, Seed{11});
    exp.poly = &poly;
    OverlapRecord rec = build_overlap_sequence(exp);
    CHECK(rec.max_step_hamming <= 1);
    for (const auto& snap : rec.sets) {
      CHECK(snap.independent_ok);
      if (snap.k >= 2) {
        // unit steps land the first crossing within one vertex of the floor
        CHECK(static_cast<double>(snap.new_mass) >= rec.window_lower);
        CHECK(static_cast<double>(snap.new_mass) <= rec.window_lower + 1.0);
      }
    }
    // timestamps strictly increase
    for (size_t i = 1; i < rec.sets.size(); ++i) {
      CHECK(rec.sets[i].t > rec.sets[i - 1].t);
    }
  }
}

TEST_CASE("fixed-set overlap") {
  SUBCASE("empty fixed set has zero overlap") {
    auto alg = [](const Hypergraph& h, Seed) { return VertexSet::all(h.vertex_count()); };
    FixedSetOverlap rep = measure_fixed_set_overlap_uniform(alg, VertexSet(), 30, 3, 5.0, 0.5,
                                                            20, Seed{4100});
    CHECK(rep.max_overlap[0] == 0);
    CHECK(rep.trials_below_threshold == 20);
  }
  SUBCASE("identity algorithm reproduces the fixed set") {
    VertexSet fixed({0, 1, 2, 3, 4});
    auto alg = [&](const Hypergraph&, Seed) { return fixed; };
    FixedSetOverlap rep = measure_fixed_set_overlap_uniform(alg, fixed, 30, 3, 5.0, 0.5, 10,
                                                            Seed{4200});
    CHECK(rep.max_overlap[0] == 5);
    CHECK(rep.mean_overlap[0] == doctest::Approx(5.0));
  }
}
