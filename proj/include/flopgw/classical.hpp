#ifndef FLOPGW_CLASSICAL_HPP
#define FLOPGW_CLASSICAL_HPP

#include "flopgw/ring.hpp"

namespace flopgw {

// Primed-side model of a flop/flip: r and rprime swap (identical for flops).
ModelSpec transformed_model(const ModelSpec& spec);

// Correspondence matrix on the monomial basis, column idx = image of the
// idx-th basis monomial h^i xi^j, namely (xi'-h')^i xi'^j in normal form.
const QMat& flop_matrix(const ModelSpec& spec);

// Image of a class under the correspondence, in the primed model.
CohClass flop_transform(const CohClass& c);

struct IsometryReport {
    bool pass = false;
    int bad_a = -1, bad_b = -1; // first failing basis pair when !pass
};
// Checks M^T G M = G exactly (flop case).
IsometryReport verify_isometry(const ModelSpec& spec);

// (a . h^power)_Z = integral of a * h^power * (xi-h)^{rprime+1}.
QQ center_pairing(const CohClass& a, int power);

// (Fa1.Fa2.Fa3) - (a1.a2.a3); requires homogeneous a_i of degrees
// l_i <= min(r, rprime) with l_1+l_2+l_3 = r+rprime+1.
QQ triple_defect(const CohClass& a1, const CohClass& a2, const CohClass& a3);

// Predicted value (-1)^{rprime} * prod (a_i . h^{r-l_i})_Z.
QQ triple_defect_predicted(const CohClass& a1, const CohClass& a2, const CohClass& a3);

struct ChernReport {
    bool pass = false;
    CohClass expanded;  // degree-rprime part of (1-x)^{r+1} (1-x-y)^{-1}
    CohClass expected;  // sum_t (-1)^t x^t y^{rprime-t}
    bool pushforward_signs_pass = false; // flop case only; true otherwise
};
// Verifies the excess-bundle Chern identity in the exceptional-locus ring,
// and (for rprime == r) the sign rule it implies on classes of Z.
ChernReport excess_chern_check(int r, int rprime);

// (a . h^{r-l})_Z * (x^l - (-y)^l)/(x+y) as an exact polynomial in the
// exceptional-locus ring; a homogeneous of degree l <= r.
CohClass exceptional_correction(const CohClass& a);

} // namespace flopgw

#endif
