#include "flopgw/ratfn.hpp"

#include <sstream>

#include "flopgw/matrix.hpp"

namespace flopgw {

RatFn::RatFn(Poly num, Poly den, int q2power) : num_(std::move(num)), den_(std::move(den)), q2power_(q2power)
{
    if (den_.is_zero())
        throw std::domain_error("RatFn: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(QQ(1));
        q2power_ = q2power;
        return;
    }
    const Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divided_by(g);
        den_ = den_.divided_by(g);
    }
    const QQ c0 = den_.coeff(0);
    if (c0 == 0)
        throw std::domain_error("RatFn: denominator with zero constant term");
    if (c0 != 1) {
        const QQ inv = QQ(1) / c0;
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

RatFn RatFn::operator+(const RatFn& o) const
{
    if (is_zero())
        return o;
    if (o.is_zero())
        return *this;
    if (q2power_ != o.q2power_)
        throw std::domain_error("RatFn: adding different q2 powers");
    return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_, q2power_);
}

RatFn RatFn::operator-(const RatFn& o) const
{
    return *this + RatFn(-o.num_, o.den_, o.q2power_);
}

RatFn RatFn::operator*(const RatFn& o) const
{
    return RatFn(num_ * o.num_, den_ * o.den_, q2power_ + o.q2power_);
}

RatFn RatFn::q_derivative() const
{
    // q (N/D)' = q (N'D - ND') / D^2
    Poly n = num_.derivative() * den_ - num_ * den_.derivative();
    return RatFn(n.shifted(1), den_ * den_, q2power_);
}

std::vector<QQ> RatFn::expand(int cutoff) const
{
    std::vector<QQ> out(static_cast<size_t>(cutoff) + 1, QQ(0));
    // den(0) = 1: s_t = num_t - sum_{j>=1} den_j s_{t-j}
    for (int t = 0; t <= cutoff; ++t) {
        QQ v = num_.coeff(t);
        for (int j = 1; j <= den_.degree() && j <= t; ++j)
            v -= den_.coeff(j) * out[static_cast<size_t>(t - j)];
        out[static_cast<size_t>(t)] = v;
    }
    return out;
}

std::string RatFn::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    const std::string n = num_.to_string("q1");
    const bool multi_term = n.find_first_of("+-", 1) != std::string::npos;
    if (den_.degree() <= 0) {
        if (multi_term && q2power_ > 0)
            os << "(" << n << ")";
        else
            os << n;
    } else {
        if (multi_term)
            os << "(" << n << ")";
        else
            os << n;
        os << "/(" << den_.to_string("q1") << ")";
    }
    if (q2power_ == 1)
        os << "*q2";
    else if (q2power_ > 1)
        os << "*q2^" << q2power_;
    return os.str();
}

FitBounds default_fit_bounds(int cutoff)
{
    int deg = cutoff / 2 - 2;
    if (deg < 0)
        deg = 0;
    return {deg, deg, 3};
}

RatFn fit_ratfn(const NovikovSeries& s, int deg_p, int deg_q, int guard)
{
    if (deg_p < 0 || deg_q < 0)
        throw std::invalid_argument("fit_ratfn: negative degree bound");
    if (guard < 3)
        throw std::invalid_argument("fit_ratfn: guard must be >= 3");
    if (s.cutoff() < deg_p + deg_q + guard)
        throw std::invalid_argument("fit_ratfn: cutoff too small for requested bounds");

    // Unknown den coefficients b_1..b_Q from coefficients degP+1 .. degP+degQ:
    //   0 = c_t + sum_{j=1}^{Q} b_j c_{t-j}
    QMat a(deg_q, deg_q);
    std::vector<QQ> rhs(static_cast<size_t>(deg_q));
    for (int i = 0; i < deg_q; ++i) {
        const int t = deg_p + 1 + i;
        for (int j = 1; j <= deg_q; ++j)
            a.at(i, j - 1) = s.coeff(t - j);
        rhs[static_cast<size_t>(i)] = -s.coeff(t);
    }
    auto sol = solve_linear(a, rhs);
    if (!sol)
        throw NoFitError("fit_ratfn: no rational function at bounds (" + std::to_string(deg_p) +
                         ", " + std::to_string(deg_q) + ")");
    std::vector<QQ> den_c(static_cast<size_t>(deg_q) + 1, QQ(0));
    den_c[0] = 1;
    for (int j = 1; j <= deg_q; ++j)
        den_c[static_cast<size_t>(j)] = (*sol)[static_cast<size_t>(j - 1)];
    Poly den(std::move(den_c));
    // num_t = (den * s)_t for t <= degP
    std::vector<QQ> num_c(static_cast<size_t>(deg_p) + 1, QQ(0));
    for (int t = 0; t <= deg_p; ++t) {
        QQ v(0);
        for (int j = 0; j <= den.degree() && j <= t; ++j)
            v += den.coeff(j) * s.coeff(t - j);
        num_c[static_cast<size_t>(t)] = v;
    }
    RatFn fit(Poly(std::move(num_c)), den, s.d2);
    // Validation: the fit must reproduce every available coefficient.
    const std::vector<QQ> back = fit.expand(s.cutoff());
    for (int t = 0; t <= s.cutoff(); ++t)
        if (back[static_cast<size_t>(t)] != s.coeff(t))
            throw ValidationFailedError("fit_ratfn: candidate fails at q1^" + std::to_string(t) +
                                        "; raise bounds or cutoff");
    return fit;
}

RatFn continue_ratfn(const RatFn& f)
{
    if (f.is_zero())
        return f;
    const int p = f.num().degree();
    const int q = f.den().degree();
    const int m = std::max(p, q);
    // f(1/q') = [sum a_i q'^{m-i}] / [sum b_j q'^{m-j}]
    Poly num = f.num().reversed(m);
    Poly den = f.den().reversed(m);
    const int net = f.q2power() + num.valuation() - den.valuation();
    if (net < 0)
        throw PoleAtOriginError("continue_ratfn: pole of order " + std::to_string(-net) +
                                " at q1' = 0 (d2 = " + std::to_string(f.q2power()) + ")");
    Poly num_shift(std::vector<QQ>(num.coeffs().begin() + num.valuation(), num.coeffs().end()));
    Poly den_shift(std::vector<QQ>(den.coeffs().begin() + den.valuation(), den.coeffs().end()));
    return RatFn(num_shift.shifted(net), den_shift, f.q2power());
}

} // namespace flopgw
