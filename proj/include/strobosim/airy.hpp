#pragma once

namespace strobosim {

// Airy function of the first kind, Ai(x), in double precision.
// Maclaurin series for |x| < 7, asymptotic expansions beyond; absolute
// accuracy around 1e-11 on [-20, 20] and graceful decay/underflow outside.
double airy_ai(double x);

}  // namespace strobosim
