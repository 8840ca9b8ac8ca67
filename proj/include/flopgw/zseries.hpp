#ifndef FLOPGW_ZSERIES_HPP
#define FLOPGW_ZSERIES_HPP

#include <map>

#include "flopgw/ring.hpp"

namespace flopgw {

// Laurent series in z with CohClass coefficients, truncated below at
// z^{min_order}.  Exponents above the truncation are finitely many because
// every positive-degree class in the ring is nilpotent.
class ZSeries {
public:
    ZSeries(const Ring& ring, int min_order) : ring_(&ring), min_order_(min_order) {}

    static ZSeries unit(const Ring& ring, int min_order)
    {
        ZSeries s(ring, min_order);
        s.add(0, ring.one());
        return s;
    }

    const Ring& ring() const { return *ring_; }
    int min_order() const { return min_order_; }

    void add(int exponent, const CohClass& cls)
    {
        if (exponent < min_order_ || cls.is_zero())
            return;
        auto it = c_.find(exponent);
        if (it == c_.end())
            c_.emplace(exponent, cls);
        else
            it->second += cls;
    }

    CohClass coeff(int exponent) const
    {
        auto it = c_.find(exponent);
        return it == c_.end() ? ring_->zero() : it->second;
    }

    bool empty_above_truncation() const
    {
        for (const auto& [e, cls] : c_)
            if (!cls.is_zero())
                return false;
        return true;
    }

    int lowest_nonzero() const
    {
        for (const auto& [e, cls] : c_)
            if (!cls.is_zero())
                return e;
        return min_order_ - 1;
    }

    ZSeries mul(const ZSeries& o) const
    {
        ZSeries out(*ring_, min_order_);
        for (const auto& [e1, c1] : c_) {
            if (c1.is_zero())
                continue;
            for (const auto& [e2, c2] : o.c_) {
                if (e1 + e2 < min_order_)
                    continue;
                out.add(e1 + e2, c1 * c2);
            }
        }
        return out;
    }

    // Multiplies by (c0 + m z)^power.  For power < 0 requires m != 0; the
    // expansion is finite since c0 is nilpotent.
    ZSeries mul_linear_power(const CohClass& c0, long m, long power) const
    {
        ZSeries factor(*ring_, min_order_ - highest_exponent());
        if (power >= 0) {
            CohClass c0t = ring_->one();
            for (long t = 0; t <= power; ++t) {
                // C(power, t) * c0^t * (m z)^{power - t}
                if (!c0t.is_zero())
                    factor.add(static_cast<int>(power - t),
                               QQ(binomial(power, t)) * int_pow(m, power - t) * c0t);
                if (t < power)
                    c0t = c0t * c0;
            }
        } else {
            const long p = -power;
            CohClass c0t = ring_->one();
            for (long t = 0;; ++t) {
                const int expo = static_cast<int>(-p - t);
                if (expo < factor.min_order_ || c0t.is_zero())
                    break;
                // C(-p, t) = (-1)^t C(p+t-1, t)
                QQ coeff = QQ(binomial(p + t - 1, t)) * int_pow(m, -p - t);
                if (t % 2 != 0)
                    coeff = -coeff;
                factor.add(expo, coeff * c0t);
                c0t = c0t * c0;
            }
        }
        return mul(factor);
    }

    const std::map<int, CohClass>& terms() const { return c_; }

private:
    int highest_exponent() const
    {
        return c_.empty() ? 0 : c_.rbegin()->first;
    }

    const Ring* ring_;
    int min_order_;
    std::map<int, CohClass> c_;
};

} // namespace flopgw

#endif
