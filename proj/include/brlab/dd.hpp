#pragma once

#include <cmath>

// Double-double arithmetic, just enough for alternating-series accumulation.
// The Bessel power series cancels down from terms of size I_v(t) (~1e14 at
// t=40), so the accumulator needs ~1e-32 relative error; plain double and
// 80-bit long double both fall short of the 1e-10 absolute contract there.

namespace brlab {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

namespace ddk {

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// requires |a| >= |b|
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD add(DD x, DD y) {
    DD s = two_sum(x.hi, y.hi);
    DD t = two_sum(x.lo, y.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD add(DD x, double y) { return add(x, DD{y, 0.0}); }

inline DD mul(DD x, DD y) {
    DD p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD mul(DD x, double y) {
    DD p = two_prod(x.hi, y);
    p.lo += x.lo * y;
    return quick_two_sum(p.hi, p.lo);
}

inline DD neg(DD x) { return {-x.hi, -x.lo}; }

inline DD div(DD x, DD y) {
    double q1 = x.hi / y.hi;
    DD r = add(x, neg(mul(y, q1)));
    double q2 = r.hi / y.hi;
    r = add(r, neg(mul(y, q2)));
    double q3 = r.hi / y.hi;
    DD q = quick_two_sum(q1, q2);
    return add(q, q3);
}

inline DD from_prod(double a, double b) { return two_prod(a, b); }

}  // namespace ddk

}  // namespace brlab
