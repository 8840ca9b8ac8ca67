#include "flopgw/classical.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace flopgw {

ModelSpec transformed_model(const ModelSpec& spec)
{
    if (spec.kind != ModelKind::FlopLocal && spec.kind != ModelKind::FlipLocal)
        throw std::invalid_argument("transformed_model: flop/flip models only");
    ModelSpec out = spec;
    out.r = spec.rprime;
    out.rprime = spec.r;
    return out;
}

const QMat& flop_matrix(const ModelSpec& spec)
{
    static std::mutex mu;
    static std::map<ModelSpec, QMat> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(spec);
    if (it != cache.end())
        return it->second;

    const Ring& src = Ring::get(spec);
    const Ring& dst = Ring::get(transformed_model(spec));
    QMat m(dst.basis_size(), src.basis_size());
    for (int idx = 0; idx < src.basis_size(); ++idx) {
        auto [i, j] = src.basis_exponents(idx);
        // (xi' - h')^i xi'^j
        std::vector<std::tuple<QQ, int, int>> terms;
        for (int t = 0; t <= i; ++t) {
            QQ c(binomial(i, t));
            if ((i - t) % 2 != 0)
                c = -c;
            terms.emplace_back(c, i - t, t + j);
        }
        const CohClass img = dst.normalize_terms(terms);
        for (int row = 0; row < dst.basis_size(); ++row)
            m.at(row, idx) = img.coord(row);
    }
    return cache.emplace(spec, std::move(m)).first->second;
}

CohClass flop_transform(const CohClass& c)
{
    const ModelSpec& spec = c.ring().spec();
    const QMat& m = flop_matrix(spec);
    const Ring& dst = Ring::get(transformed_model(spec));
    std::vector<QQ> out(static_cast<size_t>(dst.basis_size()), QQ(0));
    for (int col = 0; col < c.ring().basis_size(); ++col) {
        const QQ& v = c.coord(col);
        if (v == 0)
            continue;
        for (int row = 0; row < dst.basis_size(); ++row)
            if (m.at(row, col) != 0)
                out[static_cast<size_t>(row)] += v * m.at(row, col);
    }
    return CohClass(dst, std::move(out));
}

IsometryReport verify_isometry(const ModelSpec& spec)
{
    if (spec.r != spec.rprime)
        throw std::invalid_argument("verify_isometry: flop case (r == rprime) only");
    const Ring& ring = Ring::get(spec);
    const QMat& m = flop_matrix(spec);
    const QMat lhs = m.transposed() * Ring::get(transformed_model(spec)).gram() * m;
    const QMat& g = ring.gram();
    IsometryReport rep;
    for (int a = 0; a < ring.basis_size(); ++a)
        for (int b = 0; b < ring.basis_size(); ++b)
            if (lhs.at(a, b) != g.at(a, b)) {
                rep.pass = false;
                rep.bad_a = a;
                rep.bad_b = b;
                return rep;
            }
    rep.pass = true;
    return rep;
}

QQ center_pairing(const CohClass& a, int power)
{
    const Ring& ring = a.ring();
    const int rp = ring.spec().rprime;
    // h^power * (xi - h)^{rp+1}
    std::vector<std::tuple<QQ, int, int>> terms;
    for (int t = 0; t <= rp + 1; ++t) {
        QQ c(binomial(rp + 1, t));
        if (t % 2 != 0)
            c = -c;
        terms.emplace_back(c, power + t, rp + 1 - t);
    }
    return ring.integrate(a * ring.normalize_terms(terms));
}

QQ triple_defect(const CohClass& a1, const CohClass& a2, const CohClass& a3)
{
    const Ring& ring = a1.ring();
    const int r = ring.spec().r;
    const int rp = ring.spec().rprime;
    const int minr = r < rp ? r : rp;
    int total = 0;
    for (const CohClass* a : {&a1, &a2, &a3}) {
        const int l = a->homogeneous_degree();
        if (l < 0 || l > minr)
            throw std::invalid_argument("triple_defect: insertions must be homogeneous of degree <= min(r, rprime)");
        total += l;
    }
    if (total != r + rp + 1)
        throw std::invalid_argument("triple_defect: degrees must sum to dim X");
    const QQ classical = (a1 * a2 * a3).integrate();
    const QQ primed = (flop_transform(a1) * flop_transform(a2) * flop_transform(a3)).integrate();
    return primed - classical;
}

QQ triple_defect_predicted(const CohClass& a1, const CohClass& a2, const CohClass& a3)
{
    const Ring& ring = a1.ring();
    const int r = ring.spec().r;
    const int rp = ring.spec().rprime;
    QQ prod(1);
    for (const CohClass* a : {&a1, &a2, &a3})
        prod *= center_pairing(*a, r - a->homogeneous_degree());
    if (rp % 2 != 0)
        prod = -prod;
    return prod;
}

ChernReport excess_chern_check(int r, int rprime)
{
    const Ring& e = Ring::get(ModelSpec::e_only(r, rprime));
    // degree-rprime part of (1-x)^{rprime+1} * sum_t (x+y)^t; the exponent is
    // the rank of the pulled-back normal bundle
    std::vector<std::tuple<QQ, int, int>> terms;
    for (int i = 0; i <= rprime + 1 && i <= rprime; ++i) {
        QQ ci(binomial(rprime + 1, i));
        if (i % 2 != 0)
            ci = -ci;
        const int t = rprime - i; // (x+y)^t part contributes degree t
        for (int s = 0; s <= t; ++s)
            terms.emplace_back(ci * QQ(binomial(t, s)), i + s, t - s);
    }
    ChernReport rep;
    rep.expanded = e.normalize_terms(terms);
    std::vector<std::tuple<QQ, int, int>> expect;
    for (int t = 0; t <= rprime; ++t) {
        QQ c(1);
        if (t % 2 != 0)
            c = -c;
        expect.emplace_back(c, t, rprime - t);
    }
    rep.expected = e.normalize_terms(expect);
    rep.pass = rep.expanded == rep.expected;

    rep.pushforward_signs_pass = true;
    if (r == rprime) {
        // x^r y^l coefficient of c_r * x^l must be (-1)^{r-l}
        for (int l = 0; l <= r; ++l) {
            const CohClass prod = rep.expanded * e.monomial(l, 0);
            const int idx = e.basis_index(r, l);
            QQ want(1);
            if ((r - l) % 2 != 0)
                want = -want;
            if (prod.coord(idx) != want) {
                rep.pushforward_signs_pass = false;
                break;
            }
        }
    }
    return rep;
}

CohClass exceptional_correction(const CohClass& a)
{
    const Ring& ring = a.ring();
    const int r = ring.spec().r;
    const int rp = ring.spec().rprime;
    const int l = a.homogeneous_degree();
    if (l < 0 || l > r)
        throw std::invalid_argument("exceptional_correction: need homogeneous degree <= r");
    const QQ scale = center_pairing(a, r - l);
    const Ring& e = Ring::get(ModelSpec::e_only(r, rp));
    // (x^l - (-y)^l)/(x+y) = sum_{t=0}^{l-1} (-1)^t x^{l-1-t} y^t
    std::vector<std::tuple<QQ, int, int>> terms;
    for (int t = 0; t < l; ++t) {
        QQ c = scale;
        if (t % 2 != 0)
            c = -c;
        terms.emplace_back(c, l - 1 - t, t);
    }
    if (l == 0)
        return e.zero();
    return e.normalize_terms(terms);
}

} // namespace flopgw
