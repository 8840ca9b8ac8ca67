#include "flopgw/ring.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace flopgw {

void ModelSpec::validate() const
{
    if (r < 1)
        throw std::invalid_argument("ModelSpec: r must be >= 1");
    if (kind != ModelKind::ZOnly && rprime < 1)
        throw std::invalid_argument("ModelSpec: rprime must be >= 1");
    if (kind == ModelKind::FlopLocal && rprime != r)
        throw std::invalid_argument("ModelSpec: flop requires rprime == r");
}

const Ring& Ring::get(const ModelSpec& spec)
{
    static std::mutex mu;
    static std::map<ModelSpec, std::unique_ptr<Ring>> registry;
    spec.validate();
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(spec);
    if (it == registry.end())
        it = registry.emplace(spec, std::unique_ptr<Ring>(new Ring(spec))).first;
    return *it->second;
}

Ring::Ring(const ModelSpec& spec) : spec_(spec)
{
    int e1max = 0, e2max = 0;
    switch (spec_.kind) {
    case ModelKind::FlopLocal:
    case ModelKind::FlipLocal:
        e1max = spec_.r;
        e2max = spec_.rprime + 1;
        break;
    case ModelKind::ZOnly:
        e1max = spec_.r;
        e2max = 0;
        break;
    case ModelKind::EOnly:
        e1max = spec_.r;
        e2max = spec_.rprime;
        break;
    }
    index_.assign(static_cast<size_t>(e1max) + 1, std::vector<int>(static_cast<size_t>(e2max) + 1, -1));
    by_degree_.assign(static_cast<size_t>(spec_.dim()) + 1, {});
    for (int a = 0; a <= e1max; ++a)
        for (int b = 0; b <= e2max; ++b) {
            const int idx = static_cast<int>(basis_.size());
            basis_.emplace_back(a, b);
            index_[static_cast<size_t>(a)][static_cast<size_t>(b)] = idx;
            by_degree_[static_cast<size_t>(a + b)].push_back(idx);
        }
    top_ = index_[static_cast<size_t>(e1max)][static_cast<size_t>(e2max)];

    const int n = basis_size();
    mul_table_.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [a1, b1] = basis_exponents(i);
            auto [a2, b2] = basis_exponents(j);
            std::vector<QQ> acc(basis_.size(), QQ(0));
            reduce_into(acc, QQ(1), a1 + a2, b1 + b2);
            mul_table_[static_cast<size_t>(i) * n + j] = std::move(acc);
        }

    gram_ = QMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            QQ v = integrate(mul_basis(i, j));
            gram_.at(i, j) = v;
            gram_.at(j, i) = v;
        }
    try {
        gram_inv_ = gram_.inverse();
    } catch (const std::runtime_error&) {
        throw std::runtime_error("Ring: singular Gram matrix (normal-form bug)");
    }
    dual_pairs_.assign(static_cast<size_t>(dim()) + 1, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (gram_inv_.at(i, j) != 0)
                dual_pairs_[static_cast<size_t>(basis_degree(i))].emplace_back(i, j, gram_inv_.at(i, j));
}

int Ring::basis_index(int e1, int e2) const
{
    if (e1 < 0 || e2 < 0 || e1 >= static_cast<int>(index_.size()) ||
        e2 >= static_cast<int>(index_[0].size()))
        return -1;
    return index_[static_cast<size_t>(e1)][static_cast<size_t>(e2)];
}

const std::vector<int>& Ring::basis_of_degree(int deg) const
{
    static const std::vector<int> empty;
    if (deg < 0 || deg > spec_.dim())
        return empty;
    return by_degree_[static_cast<size_t>(deg)];
}

std::string Ring::basis_name(int idx) const
{
    auto [a, b] = basis_exponents(idx);
    const bool eonly = spec_.kind == ModelKind::EOnly;
    const char* g1 = eonly ? "x" : "h";
    const char* g2 = eonly ? "y" : "xi";
    std::ostringstream os;
    if (a == 0 && b == 0)
        return "1";
    if (a > 0) {
        os << g1;
        if (a > 1)
            os << "^" << a;
    }
    if (b > 0 && spec_.kind != ModelKind::ZOnly) {
        if (a > 0)
            os << "*";
        os << g2;
        if (b > 1)
            os << "^" << b;
    }
    return os.str();
}

// Rewrites coeff * g1^e1 * g2^e2 into basis coordinates.  The only non-free
// rule is xi^{rp+2} = sum_{k=1}^{rp+1} (-1)^{k+1} C(rp+1,k) h^k xi^{rp+2-k},
// from xi*(xi-h)^{rp+1} = 0; the xi-exponent drops at each application.
void Ring::reduce_into(std::vector<QQ>& acc, const QQ& coeff, int e1, int e2) const
{
    if (coeff == 0)
        return;
    switch (spec_.kind) {
    case ModelKind::ZOnly:
        if (e1 > spec_.r || e2 != 0)
            return;
        break;
    case ModelKind::EOnly:
        if (e1 > spec_.r || e2 > spec_.rprime)
            return;
        break;
    case ModelKind::FlopLocal:
    case ModelKind::FlipLocal: {
        if (e1 > spec_.r)
            return;
        const int rp = spec_.rprime;
        if (e2 > rp + 1) {
            for (int k = 1; k <= rp + 1; ++k) {
                QQ c = coeff * QQ(binomial(rp + 1, k));
                if (k % 2 == 0)
                    c = -c;
                reduce_into(acc, c, e1 + k, e2 - k);
            }
            return;
        }
        break;
    }
    }
    acc[static_cast<size_t>(basis_index(e1, e2))] += coeff;
}

CohClass Ring::monomial(int e1, int e2, const QQ& coeff) const
{
    if (e1 < 0 || e2 < 0)
        throw std::invalid_argument("Ring: negative exponent");
    std::vector<QQ> acc(basis_.size(), QQ(0));
    reduce_into(acc, coeff, e1, e2);
    return CohClass(*this, std::move(acc));
}

CohClass Ring::basis_element(int idx) const
{
    std::vector<QQ> acc(basis_.size(), QQ(0));
    acc[static_cast<size_t>(idx)] = 1;
    return CohClass(*this, std::move(acc));
}

CohClass Ring::normalize_terms(const std::vector<std::tuple<QQ, int, int>>& terms) const
{
    std::vector<QQ> acc(basis_.size(), QQ(0));
    for (const auto& [coeff, e1, e2] : terms) {
        if (e1 < 0 || e2 < 0)
            throw std::invalid_argument("Ring: negative exponent");
        reduce_into(acc, coeff, e1, e2);
    }
    return CohClass(*this, std::move(acc));
}

CohClass Ring::mul_basis(int i, int j) const
{
    return CohClass(*this, mul_table_[static_cast<size_t>(i) * basis_.size() + static_cast<size_t>(j)]);
}

CohClass Ring::mul(const CohClass& a, const CohClass& b) const
{
    std::vector<QQ> acc(basis_.size(), QQ(0));
    for (int i = 0; i < basis_size(); ++i) {
        if (a.coord(i) == 0)
            continue;
        for (int j = 0; j < basis_size(); ++j) {
            if (b.coord(j) == 0)
                continue;
            const QQ f = a.coord(i) * b.coord(j);
            const CohClass prod = mul_basis(i, j);
            for (int t = 0; t < basis_size(); ++t)
                if (prod.coord(t) != 0)
                    acc[static_cast<size_t>(t)] += f * prod.coord(t);
        }
    }
    return CohClass(*this, std::move(acc));
}

QQ Ring::integrate(const CohClass& a) const
{
    return a.coord(top_);
}

const QMat& Ring::gram() const
{
    return gram_;
}

const QMat& Ring::gram_inverse() const
{
    return gram_inv_;
}

CohClass Ring::dual_basis(int idx) const
{
    std::vector<QQ> acc(basis_.size(), QQ(0));
    for (int c = 0; c < basis_size(); ++c)
        acc[static_cast<size_t>(c)] = gram_inv_.at(idx, c);
    return CohClass(*this, std::move(acc));
}

const std::vector<std::tuple<int, int, QQ>>& Ring::dual_pairs_of_degree(int deg) const
{
    static const std::vector<std::tuple<int, int, QQ>> empty;
    if (deg < 0 || deg > dim())
        return empty;
    return dual_pairs_[static_cast<size_t>(deg)];
}

int CohClass::homogeneous_degree() const
{
    int deg = -1;
    for (int i = 0; i < ring_->basis_size(); ++i) {
        if (c_[static_cast<size_t>(i)] == 0)
            continue;
        const int d = ring_->basis_degree(i);
        if (deg < 0)
            deg = d;
        else if (deg != d)
            return -1;
    }
    return deg;
}

CohClass& CohClass::operator+=(const CohClass& o)
{
    if (ring_ != o.ring_)
        throw std::invalid_argument("CohClass: mixed models");
    for (size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

CohClass& CohClass::operator-=(const CohClass& o)
{
    if (ring_ != o.ring_)
        throw std::invalid_argument("CohClass: mixed models");
    for (size_t i = 0; i < c_.size(); ++i)
        c_[i] -= o.c_[i];
    return *this;
}

CohClass& CohClass::operator*=(const QQ& s)
{
    for (QQ& q : c_)
        q *= s;
    return *this;
}

CohClass operator*(const CohClass& a, const CohClass& b)
{
    if (&a.ring() != &b.ring())
        throw std::invalid_argument("CohClass: mixed models");
    return a.ring().mul(a, b);
}

QQ CohClass::integrate() const
{
    return ring_->integrate(*this);
}

std::string CohClass::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < ring_->basis_size(); ++i) {
        const QQ& q = c_[static_cast<size_t>(i)];
        if (q == 0)
            continue;
        if (!first)
            os << (q > 0 ? " + " : " - ");
        else if (q < 0)
            os << "-";
        QQ abs = q > 0 ? q : QQ(-q);
        const std::string name = ring_->basis_name(i);
        if (abs != 1 || name == "1") {
            os << abs.get_str();
            if (name != "1")
                os << "*";
        }
        if (name != "1")
            os << name;
        first = false;
    }
    if (first)
        return "0";
    return os.str();
}

} // namespace flopgw
