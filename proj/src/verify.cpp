#include "homcx/verify.hpp"

namespace homcx {

Mat snake_connecting(const ChainMap& mu, const ChainMap& mu_prime, int n,
                     const Homology& h_quot_n, const Homology& h_sub_prev) {
    const Complex& sub = mu.source();
    const Complex& mid = mu.target();
    const Complex& quot = mu_prime.target();
    (void)quot;
    const std::uint32_t p = sub.algebra()->p();

    Mat out(p, h_sub_prev.dim(), h_quot_n.dim());
    for (int j = 0; j < h_quot_n.dim(); ++j) {
        Mat z = h_quot_n.representatives().col(j);
        // lift the cycle to the middle complex
        auto x = solve(mu_prime.component(n), z);
        check(x.has_value(), "snake: quotient map not surjective");
        Mat dx = mid.diff_at(n) * *x;
        // the boundary comes from the subcomplex
        auto y = solve(mu.component(n - 1), dx);
        check(y.has_value(), "snake: boundary not in the subcomplex");
        check((sub.diff_at(n - 1) * *y).is_zero(), "snake: chased element not a cycle");
        out.set_col(j, h_sub_prev.class_of(*y));
    }
    return out;
}

} // namespace homcx
