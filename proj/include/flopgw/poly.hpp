#ifndef FLOPGW_POLY_HPP
#define FLOPGW_POLY_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flopgw/rational.hpp"

namespace flopgw {

// Univariate polynomial over QQ, coefficients stored ascending, trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<QQ> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const QQ& v)
    {
        Poly p;
        if (v != 0)
            p.c_ = {v};
        return p;
    }
    static Poly monomial(const QQ& v, int e)
    {
        Poly p;
        if (v != 0) {
            p.c_.assign(static_cast<size_t>(e) + 1, QQ(0));
            p.c_.back() = v;
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    int valuation() const
    {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0)
                return static_cast<int>(i);
        return -1;
    }
    QQ coeff(int e) const
    {
        if (e < 0 || e >= static_cast<int>(c_.size()))
            return QQ(0);
        return c_[static_cast<size_t>(e)];
    }
    const std::vector<QQ>& coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<QQ> out(std::max(a.c_.size(), b.c_.size()), QQ(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            out[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i)
            out[i] += b.c_[i];
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& a, const Poly& b)
    {
        std::vector<QQ> out(std::max(a.c_.size(), b.c_.size()), QQ(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            out[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i)
            out[i] -= b.c_[i];
        return Poly(std::move(out));
    }
    Poly operator-() const
    {
        Poly out(*this);
        for (QQ& q : out.c_)
            q = -q;
        return out;
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly();
        std::vector<QQ> out(a.c_.size() + b.c_.size() - 1, QQ(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    friend Poly operator*(const QQ& s, Poly a)
    {
        for (QQ& q : a.c_)
            q *= s;
        a.trim();
        return a;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly shifted(int e) const // * q^e, e >= 0
    {
        if (is_zero())
            return Poly();
        std::vector<QQ> out(static_cast<size_t>(e), QQ(0));
        out.insert(out.end(), c_.begin(), c_.end());
        return Poly(std::move(out));
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return Poly();
        std::vector<QQ> out(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            out[i - 1] = QQ(static_cast<long>(i)) * c_[i];
        return Poly(std::move(out));
    }

    // Reversal: q^deg * p(1/q).
    Poly reversed(int deg) const
    {
        std::vector<QQ> out(static_cast<size_t>(deg) + 1, QQ(0));
        for (size_t i = 0; i < c_.size(); ++i)
            out[static_cast<size_t>(deg) - i] = c_[i];
        return Poly(std::move(out));
    }

    // Euclidean division; throws when the remainder of an exact division is
    // requested implicitly through divided_by.
    static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem)
    {
        if (b.is_zero())
            throw std::domain_error("Poly: division by zero");
        std::vector<QQ> r = a.c_;
        const int db = b.degree();
        std::vector<QQ> q(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1, QQ(0));
        for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
            if (r[static_cast<size_t>(i)] == 0)
                continue;
            const QQ f = r[static_cast<size_t>(i)] / b.c_[static_cast<size_t>(db)];
            q[static_cast<size_t>(i - db)] = f;
            for (int j = 0; j <= db; ++j)
                r[static_cast<size_t>(i - db + j)] -= f * b.c_[static_cast<size_t>(j)];
        }
        quot = Poly(std::move(q));
        rem = Poly(std::move(r));
    }

    Poly divided_by(const Poly& b) const
    {
        Poly q, r;
        divmod(*this, b, q, r);
        if (!r.is_zero())
            throw std::domain_error("Poly: inexact division");
        return q;
    }

    static Poly gcd(Poly a, Poly b)
    {
        while (!b.is_zero()) {
            Poly q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        if (!a.is_zero()) {
            const QQ lead = a.c_.back();
            for (QQ& q : a.c_)
                q /= lead;
        }
        return a;
    }

    std::string to_string(const std::string& var) const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            const QQ& q = c_[i];
            if (q == 0)
                continue;
            if (!first)
                os << (q > 0 ? "+" : "-");
            else if (q < 0)
                os << "-";
            QQ abs = q > 0 ? q : QQ(-q);
            if (i == 0)
                os << abs.get_str();
            else {
                if (abs != 1)
                    os << abs.get_str() << "*";
                os << var;
                if (i > 1)
                    os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<QQ> c_;
};

} // namespace flopgw

#endif
