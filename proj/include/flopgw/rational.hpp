#ifndef FLOPGW_RATIONAL_HPP
#define FLOPGW_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace flopgw {

using ZZ = mpz_class;
using QQ = mpq_class;

inline QQ qq(long num, long den = 1)
{
    QQ q(num, den);
    q.canonicalize();
    return q;
}

// C(n, k) for n >= 0; zero outside 0 <= k <= n.
inline ZZ binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return ZZ(0);
    ZZ out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

inline ZZ factorial(long n)
{
    ZZ out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return out;
}

inline int sign_pow(long e)
{
    return (e % 2 == 0) ? 1 : -1;
}

// d^e with d a nonzero integer and e of either sign.
inline QQ int_pow(long d, long e)
{
    ZZ p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d < 0 ? -d : d),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    if (d < 0 && (e % 2 != 0))
        p = -p;
    QQ q;
    if (e >= 0)
        q = p;
    else {
        q = QQ(ZZ(1), p);
        q.canonicalize();
    }
    return q;
}

inline QQ qq_pow(const QQ& b, long e)
{
    QQ acc(1);
    for (long i = 0; i < e; ++i)
        acc *= b;
    return acc;
}

// (n; k_1,...,k_m) with sum k_i = n.
inline QQ multinomial(long n, const std::vector<long>& parts)
{
    QQ out(factorial(n));
    for (long p : parts)
        out /= QQ(factorial(p));
    return out;
}

inline std::string to_string(const QQ& q)
{
    return q.get_str();
}

} // namespace flopgw

#endif
