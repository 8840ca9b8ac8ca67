#ifndef FLOPGW_RING_HPP
#define FLOPGW_RING_HPP

#include <string>
#include <tuple>
#include <vector>

#include "flopgw/matrix.hpp"
#include "flopgw/rational.hpp"

namespace flopgw {

enum class ModelKind { FlopLocal, FlipLocal, ZOnly, EOnly };

// Which graded quotient ring we are working in.
//
//   FlopLocal / FlipLocal:  Q[h,xi] / (h^{r+1}, xi*(xi-h)^{rprime+1})
//   ZOnly:                  Q[h]    / (h^{r+1})
//   EOnly:                  Q[x,y]  / (x^{r+1}, y^{rprime+1})
struct ModelSpec {
    ModelKind kind = ModelKind::FlopLocal;
    int r = 1;
    int rprime = 1;

    static ModelSpec flop_local(int r) { return {ModelKind::FlopLocal, r, r}; }
    static ModelSpec flip_local(int r, int rprime) { return {ModelKind::FlipLocal, r, rprime}; }
    static ModelSpec z_only(int r) { return {ModelKind::ZOnly, r, 0}; }
    static ModelSpec e_only(int r, int rprime) { return {ModelKind::EOnly, r, rprime}; }

    // Complex dimension of the underlying space.
    int dim() const
    {
        switch (kind) {
        case ModelKind::FlopLocal:
        case ModelKind::FlipLocal:
            return r + rprime + 1;
        case ModelKind::ZOnly:
            return r;
        case ModelKind::EOnly:
            return r + rprime;
        }
        return 0;
    }

    void validate() const;

    friend bool operator==(const ModelSpec& a, const ModelSpec& b)
    {
        return a.kind == b.kind && a.r == b.r && a.rprime == b.rprime;
    }
    friend bool operator<(const ModelSpec& a, const ModelSpec& b)
    {
        return std::tie(a.kind, a.r, a.rprime) < std::tie(b.kind, b.r, b.rprime);
    }
};

class Ring;

// Ring element in normal form: exact rational coordinates over the fixed
// monomial basis of the model.
class CohClass {
public:
    CohClass() : ring_(nullptr) {}
    CohClass(const Ring& ring, std::vector<QQ> coords) : ring_(&ring), c_(std::move(coords)) {}

    const Ring& ring() const { return *ring_; }
    const std::vector<QQ>& coords() const { return c_; }
    const QQ& coord(int idx) const { return c_[static_cast<size_t>(idx)]; }

    bool is_zero() const
    {
        for (const QQ& q : c_)
            if (q != 0)
                return false;
        return true;
    }

    // -1 for zero or non-homogeneous classes.
    int homogeneous_degree() const;

    CohClass& operator+=(const CohClass& o);
    CohClass& operator-=(const CohClass& o);
    CohClass& operator*=(const QQ& s);
    friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
    friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
    friend CohClass operator*(const QQ& s, CohClass a) { return a *= s; }
    friend CohClass operator*(const CohClass& a, const CohClass& b);
    friend bool operator==(const CohClass& a, const CohClass& b)
    {
        return a.ring_ == b.ring_ && a.c_ == b.c_;
    }

    QQ integrate() const;
    std::string to_string() const;

private:
    const Ring* ring_;
    std::vector<QQ> c_;
};

// Interned per ModelSpec; owns the basis layout, the rewriting rules and the
// pairing data.
class Ring {
public:
    static const Ring& get(const ModelSpec& spec);

    const ModelSpec& spec() const { return spec_; }
    int dim() const { return spec_.dim(); }
    int basis_size() const { return static_cast<int>(basis_.size()); }

    // Exponents (e1, e2) of the idx-th basis monomial: (h, xi), (x, y) or (h, -).
    std::pair<int, int> basis_exponents(int idx) const { return basis_[static_cast<size_t>(idx)]; }
    int basis_degree(int idx) const
    {
        auto [a, b] = basis_[static_cast<size_t>(idx)];
        return a + b;
    }
    // -1 when (e1, e2) is not a basis monomial.
    int basis_index(int e1, int e2) const;
    int unit_index() const { return basis_index(0, 0); }
    int top_index() const { return top_; }
    const std::vector<int>& basis_of_degree(int deg) const;
    std::string basis_name(int idx) const;

    CohClass zero() const { return CohClass(*this, std::vector<QQ>(basis_.size(), QQ(0))); }
    CohClass one() const { return monomial(0, 0); }
    // Normal form of coeff * g1^e1 * g2^e2.
    CohClass monomial(int e1, int e2, const QQ& coeff = QQ(1)) const;
    CohClass basis_element(int idx) const;
    // Normal form of a finite Q-combination of generator monomials.
    CohClass normalize_terms(const std::vector<std::tuple<QQ, int, int>>& terms) const;

    CohClass mul(const CohClass& a, const CohClass& b) const;
    CohClass mul_basis(int i, int j) const; // product of two basis monomials

    // Coefficient of the top basis monomial after normalization.
    QQ integrate(const CohClass& a) const;

    // Poincare pairing data over the monomial basis.
    const QMat& gram() const;
    const QMat& gram_inverse() const;
    CohClass dual_basis(int idx) const; // T^idx with integrate(T^idx * B_j) = delta_{ij}
    // Nonzero (i, j, ginv[i][j]) with basis_degree(i) == deg (and j complementary).
    const std::vector<std::tuple<int, int, QQ>>& dual_pairs_of_degree(int deg) const;

private:
    explicit Ring(const ModelSpec& spec);
    void reduce_into(std::vector<QQ>& acc, const QQ& coeff, int e1, int e2) const;

    ModelSpec spec_;
    std::vector<std::pair<int, int>> basis_;
    std::vector<std::vector<int>> index_; // index_[e1][e2] -> basis idx or -1
    std::vector<std::vector<int>> by_degree_;
    int top_ = -1;

    // built eagerly; the ring is immutable after construction
    std::vector<std::vector<QQ>> mul_table_; // flattened per (i,j)
    QMat gram_, gram_inv_;
    std::vector<std::vector<std::tuple<int, int, QQ>>> dual_pairs_;
};

} // namespace flopgw

#endif
