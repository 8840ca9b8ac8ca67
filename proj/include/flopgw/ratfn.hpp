#ifndef FLOPGW_RATFN_HPP
#define FLOPGW_RATFN_HPP

#include <string>
#include <vector>

#include "flopgw/errors.hpp"
#include "flopgw/poly.hpp"

namespace flopgw {

// Truncated power series in q1 at a fixed q2-degree.
struct NovikovSeries {
    int d2 = 0;
    std::vector<QQ> coeffs; // index = d1, 0..cutoff

    int cutoff() const { return static_cast<int>(coeffs.size()) - 1; }
    QQ coeff(int d1) const
    {
        if (d1 < 0 || d1 > cutoff())
            return QQ(0);
        return coeffs[static_cast<size_t>(d1)];
    }
};

// Exact rational function in q1 with a q2-monomial prefactor:
//   q2^{q2power} * num(q1) / den(q1),  gcd(num, den) = 1, den(0) = 1.
class RatFn {
public:
    RatFn() : den_(Poly::constant(QQ(1))), q2power_(0) {}
    RatFn(Poly num, Poly den, int q2power);

    static RatFn constant(const QQ& v, int q2power = 0)
    {
        return RatFn(Poly::constant(v), Poly::constant(QQ(1)), q2power);
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int q2power() const { return q2power_; }
    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const RatFn& a, const RatFn& b)
    {
        return (a.is_zero() && b.is_zero()) ||
               (a.num_ == b.num_ && a.den_ == b.den_ && a.q2power_ == b.q2power_);
    }

    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    friend RatFn operator*(const QQ& s, const RatFn& f)
    {
        return RatFn(s * f.num_, f.den_, f.q2power_);
    }

    // q1 d/dq1 acting on num/den (the q2 prefactor is untouched).
    RatFn q_derivative() const;

    // Power-series coefficients of num/den at q1 = 0, indices 0..cutoff.
    std::vector<QQ> expand(int cutoff) const;

    std::string to_string() const;

private:
    Poly num_, den_;
    int q2power_;
};

// Solves num - den * s = 0 (mod q1^{degP+degQ+1}) with den(0) = 1, validates
// against the remaining guard coefficients and returns the reduced fraction.
// Throws NoFitError / ValidationFailedError.
RatFn fit_ratfn(const NovikovSeries& s, int deg_p, int deg_q, int guard);

struct FitBounds {
    int deg_p, deg_q, guard;
};
// Default bound policy: degP = degQ = floor(cutoff/2) - 2, guard = 3.
FitBounds default_fit_bounds(int cutoff);

// Analytic continuation q1 -> 1/q1', q2 -> q1' q2': returns
// q1'^{d2} * f(1/q1') with the same q2power, renormalized to den(0) = 1.
// Throws PoleAtOriginError when the result has a pole at q1' = 0.
RatFn continue_ratfn(const RatFn& f);

} // namespace flopgw

#endif
