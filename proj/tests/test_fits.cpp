#include <cmath>
#include <sstream>

#include "adjnet/error.hpp"
#include "adjnet/fits.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adjnet;

namespace {

AsplCurve synthetic_er(double amplitude, double c0, double alpha) {
  AsplCurve c;
  for (auto n : default_schedule(20000)) {
    c.points.push_back({n, er_approx(static_cast<double>(n), amplitude, c0, alpha), 0.0, 1});
  }
  return c;
}

}  // namespace

TEST_CASE("vocabulary growth counts first appearances") {
  const auto ts = tokenize("a b a c b d");
  CHECK(vocabulary_growth(ts) == std::vector<std::size_t>{1, 2, 2, 3, 3, 4});
}

TEST_CASE("Heaps exponent of a planted stream") {
  for (double delta : {0.45, 0.7}) {
    const auto ts = TokenStream::from_words(oracle::heaps_stream(delta, 100000, 3));
    const auto fit = fit_heaps(ts, 100, 100000);
    CHECK(std::abs(fit.delta - delta) < 0.01);
    CHECK(fit.prefactor == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit.points >= 20);
  }
}

TEST_CASE("Heaps fit range checks") {
  const auto ts = TokenStream::from_words(oracle::heaps_stream(0.5, 1000, 1));
  CHECK_THROWS_AS(fit_heaps(ts, 0, 100), InvalidArgument);
  CHECK_THROWS_AS(fit_heaps(ts, 100, 100), InvalidArgument);
  CHECK_THROWS_AS(fit_heaps(ts, 10, 5000), InvalidArgument);
  CHECK_THROWS_AS(fit_heaps(ts, 10, 25), InsufficientData);
}

TEST_CASE("alpha and delta are reciprocal") {
  CHECK(alpha_from_delta(0.5) == 1.0);
  CHECK(alpha_from_delta(1.0) == 0.0);
  CHECK(delta_from_alpha(1.0) == 0.5);
  for (double d : {0.3, 0.55, 0.8}) CHECK(delta_from_alpha(alpha_from_delta(d)) == doctest::Approx(d));
  CHECK_THROWS_AS(alpha_from_delta(0.0), InvalidArgument);
  CHECK_THROWS_AS(alpha_from_delta(1.2), InvalidArgument);
}

TEST_CASE("saturation limit") {
  CHECK(scale_free_aspl_limit(2.5) == doctest::Approx(4.5));
  CHECK(scale_free_aspl_limit(2.2) == doctest::Approx(3.0));
  CHECK(std::isinf(scale_free_aspl_limit(3.0 - 1e-14)));
  CHECK_THROWS_AS(scale_free_aspl_limit(3.0), InvalidArgument);
  CHECK_THROWS_AS(scale_free_aspl_limit(2.0), InvalidArgument);
}

TEST_CASE("closed-form ASPL fit recovers planted parameters") {
  const auto fit = fit_er_approx(synthetic_er(1.0, 0.5, 0.8));
  CHECK_FALSE(fit.poor_fit);
  CHECK(fit.alpha == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(fit.c0 == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fit.residual < 1e-9);

  ErFitOptions fixed;
  fixed.fixed_alpha = 0.6;
  const auto scaled = fit_er_approx(synthetic_er(1.4, 0.3, 0.6), fixed);
  CHECK_FALSE(scaled.poor_fit);
  CHECK(scaled.amplitude == doctest::Approx(1.4).epsilon(1e-6));
  CHECK(scaled.c0 == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("non-declining curves are flagged") {
  AsplCurve flat;
  for (auto n : default_schedule(20000)) flat.points.push_back({n, 3.0, 0.0, 1});
  const auto fit = fit_er_approx(flat);
  CHECK(fit.poor_fit);
  CHECK_FALSE(fit.note.empty());

  AsplCurve few;
  few.points = {{1000, 3.0, 0, 1}, {2000, 2.9, 0, 1}};
  CHECK_THROWS_AS(fit_er_approx(few), InsufficientData);
}

TEST_CASE("reports are key=value lines") {
  std::ostringstream os;
  HeapsFit h;
  h.delta = 0.5;
  write_report(os, h);
  CHECK(os.str().find("heaps.delta=0.5\n") != std::string::npos);
  CHECK(os.str().find("heaps.alpha_equivalent=1\n") != std::string::npos);
}
