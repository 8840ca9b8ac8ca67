#include "flopgw/extremal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "flopgw/classical.hpp"

namespace flopgw {

namespace {

bool primary_filter_ok(int r, const std::vector<int>& degrees)
{
    long total = 0;
    for (int l : degrees) {
        if (l < 1 || l > r)
            return false;
        total += l;
    }
    const int n = static_cast<int>(degrees.size());
    return total == 2L * r + n - 2;
}

} // namespace

QQ one_point_descendent(int r, int k, int l, int d)
{
    if (d < 1)
        throw std::invalid_argument("one_point_descendent: d >= 1 required");
    if (l + k != 2 * r - 1 || l < 1 || l > r || k < 0)
        return QQ(0);
    QQ v = QQ(binomial(k + 1, r)) * int_pow(d, -(k + 2));
    if (sign_pow(static_cast<long>(d) * (r + 1) + k) < 0)
        v = -v;
    return v;
}

ZSeries j_small(int r, int d, int z_order)
{
    const Ring& ring = Ring::get(ModelSpec::z_only(r));
    ZSeries s = ZSeries::unit(ring, -z_order);
    s = s.mul_linear_power(ring.monomial(1, 0), d, -(r + 1));
    if (sign_pow(static_cast<long>(d - 1) * (r + 1)) < 0) {
        ZSeries neg(ring, -z_order);
        for (const auto& [e, c] : s.terms())
            neg.add(e, QQ(-1) * c);
        return neg;
    }
    return s;
}

QQ one_point_from_j(int r, int k, int l, int d)
{
    if (l > r || l < 0)
        return QQ(0);
    const ZSeries s = j_small(r, d, k + 2);
    const Ring& ring = Ring::get(ModelSpec::z_only(r));
    return ring.integrate(ring.monomial(l, 0) * s.coeff(-(k + 2)));
}

QQ two_point_descendent(int r, int k1, int l1, int k2, int l2, int d)
{
    if (d < 1)
        throw std::invalid_argument("two_point_descendent: d >= 1 required");
    if (l1 < 1 || l1 > r || l2 < 1 || l2 > r || k1 < 0 || k2 < 0)
        return QQ(0);
    if (k1 + k2 + l1 + l2 != 2 * r)
        return QQ(0);
    QQ v = QQ(binomial(2 * r - (l1 + l2), r - l1)) * int_pow(d, -(k1 + k2 + 1));
    if (sign_pow(static_cast<long>(d) * (r + 1) + l1 + k2 + 1) < 0)
        v = -v;
    return v;
}

QQ three_point_descendent(int r, int l1, int l2, int k3, int l3, int d)
{
    if (d < 1)
        throw std::invalid_argument("three_point_descendent: d >= 1 required");
    if (l1 + l2 + l3 + k3 != 2 * r + 1)
        return QQ(0);
    if (k3 == 0)
        return n_point_extremal(r, {l1, l2, l3}, d);
    if (r - (l1 + l2) < 0)
        return QQ(0);
    // <tau_{k3-1} h^{l3}, h^{l1+l2}>_d through the two-point closed form
    QQ v = QQ(binomial(k3 - 1, r - (l1 + l2))) * int_pow(d, -k3);
    if (sign_pow(static_cast<long>(d) * (r + 1) + l3 + 1) < 0)
        v = -v;
    return v;
}

// Divisor-relation recursion from the three-term identity
//   <h^{a+1}, h^{l2}, h^{l3}, ...> = <h^a, h^{l2+1}, h^{l3}, ...>
//       + d <h^{a+l3}, h^{l2}, ...> - d <h^a, h^{l2+l3}, ...>,
// applied to the smallest degree with recipient the second-smallest and
// companion the largest; insertions of degree > r vanish.
QQ extremal_primary(int r, std::vector<int> degrees, int d)
{
    if (d < 1)
        throw std::invalid_argument("extremal_primary: d >= 1 required");
    const int n = static_cast<int>(degrees.size());
    long total = 0;
    for (int l : degrees) {
        if (l > r || l < 0)
            return QQ(0); // vanishing lemma / ring truncation
        if (l == 0)
            return QQ(0); // fundamental class, string equation
        total += l;
    }
    if (total != 2L * r + n - 2)
        return QQ(0);
    if (n == 0)
        return QQ(0);
    if (n == 1)
        return one_point_descendent(r, 0, degrees[0], d);
    std::sort(degrees.begin(), degrees.end());
    if (n == 2) {
        if (degrees[0] == r && degrees[1] == r) {
            QQ v = int_pow(d, -1);
            if (sign_pow(static_cast<long>(d - 1) * (r + 1)) < 0)
                v = -v;
            return v;
        }
        return QQ(0);
    }
    if (degrees[0] == 1) {
        std::vector<int> rest(degrees.begin() + 1, degrees.end());
        return QQ(d) * extremal_primary(r, std::move(rest), d);
    }
    // degrees[0] >= 2: reduce it against degrees[1], companion degrees.back()
    std::vector<int> main = degrees;
    main[0] -= 1;
    main[1] += 1;
    std::vector<int> merged_first(degrees.begin(), degrees.end() - 1);
    merged_first[0] = degrees[0] - 1 + degrees.back();
    std::vector<int> merged_second(degrees.begin(), degrees.end() - 1);
    merged_second[0] = degrees[0] - 1;
    merged_second[1] = degrees[1] + degrees.back();
    return extremal_primary(r, std::move(main), d) +
           QQ(d) * extremal_primary(r, std::move(merged_first), d) -
           QQ(d) * extremal_primary(r, std::move(merged_second), d);
}

QQ compute_N(int r, const std::vector<int>& degrees)
{
    if (!primary_filter_ok(r, degrees))
        throw std::invalid_argument("compute_N: inadmissible degree vector");
    std::vector<int> key = degrees;
    std::sort(key.begin(), key.end());

    static std::mutex mu;
    static std::map<std::pair<int, std::vector<int>>, QQ> table;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = table.find({r, key});
        if (it != table.end())
            return it->second;
    }
    const int n = static_cast<int>(key.size());
    QQ n_value;
    if (n == 2) {
        n_value = QQ(1);
    } else {
        // N = <...>_d * (-1)^{(d-1)(r+1)} / d^{n-3}; must agree at d = 1, 2.
        QQ at_d[2];
        for (int d = 1; d <= 2; ++d) {
            QQ v = extremal_primary(r, key, d) * int_pow(d, -(n - 3));
            if (sign_pow(static_cast<long>(d - 1) * (r + 1)) < 0)
                v = -v;
            at_d[d - 1] = v;
        }
        if (at_d[0] != at_d[1])
            throw std::runtime_error("compute_N: recursion is d-dependent (bookkeeping bug)");
        n_value = at_d[0];
    }
    std::lock_guard<std::mutex> lock(mu);
    table.emplace(std::make_pair(r, std::move(key)), n_value);
    return n_value;
}

QQ n_point_extremal(int r, const std::vector<int>& degrees, int d)
{
    if (d < 1)
        throw std::invalid_argument("n_point_extremal: d >= 1 required");
    if (degrees.size() < 2 || !primary_filter_ok(r, degrees))
        return QQ(0);
    const int n = static_cast<int>(degrees.size());
    QQ v = compute_N(r, degrees) * int_pow(d, n - 3);
    if (sign_pow(static_cast<long>(d - 1) * (r + 1)) < 0)
        v = -v;
    return v;
}

QQ extremal_descendent(int r, std::vector<std::pair<int, int>> ins, int d)
{
    if (d < 1)
        throw std::invalid_argument("extremal_descendent: d >= 1 required");
    const int n = static_cast<int>(ins.size());
    long total = 0;
    for (auto& [k, l] : ins) {
        if (l < 0 || k < 0)
            return QQ(0);
        if (l > r)
            return QQ(0); // vanishing lemma
        total += l + k;
    }
    if (total != 2L * r + n - 2)
        return QQ(0);
    // fundamental-class slots: string / dilaton
    for (int i = 0; i < n; ++i) {
        if (ins[static_cast<size_t>(i)].second != 0)
            continue;
        const int k = ins[static_cast<size_t>(i)].first;
        std::vector<std::pair<int, int>> rest;
        for (int j = 0; j < n; ++j)
            if (j != i)
                rest.push_back(ins[static_cast<size_t>(j)]);
        if (k == 0) {
            QQ v(0);
            for (size_t j = 0; j < rest.size(); ++j)
                if (rest[j].first >= 1) {
                    auto lowered = rest;
                    lowered[j].first -= 1;
                    v += extremal_descendent(r, std::move(lowered), d);
                }
            return v;
        }
        if (k == 1)
            return QQ(static_cast<int>(rest.size()) - 2) * extremal_descendent(r, std::move(rest), d);
        throw std::domain_error("extremal_descendent: tau_k(1) with k >= 2 unsupported");
    }
    if (n == 1)
        return one_point_descendent(r, ins[0].first, ins[0].second, d);
    if (n == 2)
        return two_point_descendent(r, ins[0].first, ins[0].second, ins[1].first, ins[1].second, d);
    // n >= 3: sort so descendent-free slots come first
    std::sort(ins.begin(), ins.end());
    if (ins.back().first == 0) {
        std::vector<int> degrees;
        for (auto& [k, l] : ins)
            degrees.push_back(l);
        return n_point_extremal(r, degrees, d);
    }
    if (ins[1].first != 0)
        return QQ(0); // fewer than two descendent-free insertions
    // merge the two free slots, lower the top descendent by one
    std::vector<std::pair<int, int>> next;
    next.emplace_back(ins.back().first - 1, ins.back().second);
    next.emplace_back(0, ins[0].second + ins[1].second);
    for (int j = 2; j < n - 1; ++j)
        next.push_back(ins[static_cast<size_t>(j)]);
    return extremal_descendent(r, std::move(next), d);
}

RatFn extremal_series(int r, const std::vector<int>& degrees)
{
    if (degrees.size() < 3 || !primary_filter_ok(r, degrees))
        throw std::invalid_argument("extremal_series: admissible degrees with n >= 3 required");
    const int n = static_cast<int>(degrees.size());
    // q / (1 - (-1)^{r+1} q)
    Poly den({QQ(1), (r % 2 == 0) ? QQ(1) : QQ(-1)});
    RatFn f(Poly::monomial(QQ(1), 1), den, 0);
    for (int i = 0; i < n - 3; ++i)
        f = f.q_derivative();
    return compute_N(r, degrees) * f;
}

ExtremalInvarianceReport verify_extremal_invariance(int r, const std::vector<int>& degrees)
{
    if (!primary_filter_ok(r, degrees) || degrees.size() < 3)
        throw std::invalid_argument("verify_extremal_invariance: admissible degrees, n >= 3");
    const int n = static_cast<int>(degrees.size());
    ExtremalInvarianceReport rep;
    rep.x_side = extremal_series(r, degrees);
    // (F a_i . h'^{r-l_i}) = (-1)^{l_i} (a_i . h^{r-l_i}); the product over i
    // contributes (-1)^{sum l_i} = (-1)^n on the transformed side.
    rep.f_side = (n % 2 == 0 ? QQ(1) : QQ(-1)) * rep.x_side;
    rep.continued = continue_ratfn(rep.x_side);
    if (n == 3) {
        const Ring& ring = Ring::get(ModelSpec::flop_local(r));
        QQ prod(1);
        for (int l : degrees)
            prod *= center_pairing(ring.monomial(l, 0), r - l);
        rep.defect = (r % 2 == 0) ? prod : QQ(-prod);
        rep.pass = (rep.continued - rep.f_side - RatFn::constant(rep.defect)).is_zero();
    } else {
        rep.pass = (rep.continued == rep.f_side);
    }
    return rep;
}

} // namespace flopgw
