#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <iterator>

#include "strobosim/airy.hpp"

using strobosim::airy_ai;

namespace {

// Published values (25-digit arithmetic, truncated to double).
struct AiPoint {
  double x;
  double ai;
};

constexpr AiPoint kTable[] = {
    {-20.0, -0.17640612707798469},
    {-15.5, -0.16644795409041977},
    {-12.0, -0.066555175054373129},
    {-10.0, 0.040241238486443191},
    {-8.0, -0.052705050356386203},
    {-7.2, 0.30585152336862665},
    {-6.9, 0.10168799773976483},
    {-5.0, 0.35076100902411432},
    {-1.0, 0.53556088329235212},
    {-0.5, 0.47572809161053959},
    {0.0, 0.35502805388781724},
    {0.5, 0.23169360648083349},
    {1.0, 0.13529241631288142},
    {2.0, 0.034924130423274379},
    {3.5, 0.002584098786989635},
    {5.0, 0.00010834442813607442},
    {6.9, 9.7861133392660284e-7},
    {7.5, 1.9172560675134308e-7},
    {10.0, 1.1047532552898686e-10},
    {15.0, 2.1649625207379923e-18},
    {20.0, 1.6916728686705403e-27},
};

// First zeros of Ai.
constexpr double kZeros[] = {-2.338107410459767, -4.0879494441309706, -5.5205598280955511,
                             -6.786708090071759, -7.9441335871208531};

}  // namespace

TEST_CASE("airy_ai matches published values to 1e-11 absolute") {
  for (const auto& [x, ai] : kTable) {
    CHECK(std::abs(airy_ai(x) - ai) < 1e-11);
  }
}

TEST_CASE("airy_ai decaying tail keeps relative accuracy") {
  CHECK(airy_ai(10.0) == doctest::Approx(1.1047532552898686e-10).epsilon(1e-9));
  CHECK(airy_ai(20.0) == doctest::Approx(1.6916728686705403e-27).epsilon(1e-9));
  CHECK(airy_ai(150.0) == 0.0);  // underflow region
}

TEST_CASE("airy_ai vanishes at tabulated zeros and alternates sign between them") {
  for (double z : kZeros) {
    CHECK(std::abs(airy_ai(z)) < 1e-11);
  }
  for (size_t k = 0; k + 1 < std::size(kZeros); ++k) {
    const double mid = 0.5 * (kZeros[k] + kZeros[k + 1]);
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    CHECK(sign * airy_ai(mid) > 0.0);
  }
}

TEST_CASE("airy_ai satisfies the defining equation y'' = x y") {
  // central differences around a few points
  const double h = 1e-3;
  for (double x : {-6.0, -2.0, 0.7, 3.0, 8.5}) {
    const double second =
        (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
    CHECK(second == doctest::Approx(x * airy_ai(x)).epsilon(5e-4).scale(1.0));
  }
}
