#ifndef FLOPGW_EXTREMAL_HPP
#define FLOPGW_EXTREMAL_HPP

#include <utility>
#include <vector>

#include "flopgw/ratfn.hpp"
#include "flopgw/zseries.hpp"

namespace flopgw {

// Closed formulas and recursion for genus-zero invariants attached to the
// extremal ray (d2 = 0).

// <tau_k h^l>_d: zero unless l + k = 2r - 1 and 1 <= l <= r, otherwise
// (-1)^{d(r+1)+k} / d^{k+2} * C(k+1, r).
QQ one_point_descendent(int r, int k, int l, int d);

// Finite 1/z-expansion of (-1)^{(d-1)(r+1)} / (h + dz)^{r+1} in Q[h]/(h^{r+1}).
ZSeries j_small(int r, int d, int z_order);

// Independent oracle: z^{-(k+2)} coefficient of the h^l pairing against j_small.
QQ one_point_from_j(int r, int k, int l, int d);

// <tau_{k1} h^{l1}, tau_{k2} h^{l2}>_d, 1 <= l_i <= r: zero unless
// k1+k2+l1+l2 = 2r, otherwise (-1)^{d(r+1)+l1+k2+1}/d^{k1+k2+1} * C(2r-l1-l2, r-l1).
QQ two_point_descendent(int r, int k1, int l1, int k2, int l2, int d);

// <h^{l1}, h^{l2}, tau_{k3} h^{l3}>_d with l1+l2+l3+k3 = 2r+1:
// (-1)^{d(r+1)+l3+1}/d^{k3} * C(k3+1, r-(l1+l2)), C(m, n) = 0 for n < 0.
QQ three_point_descendent(int r, int l1, int l2, int k3, int l3, int d);

// Defining divisor-relation recursion for primary extremal invariants
// <h^{l1},...,h^{ln}>_d; the oracle behind compute_N.
QQ extremal_primary(int r, std::vector<int> degrees, int d);

// Universal constant N_{l1,...,ln}; memoized on the sorted degree vector and
// cross-checked at two values of d.  Throws on inadmissible vectors.
QQ compute_N(int r, const std::vector<int>& degrees);

// <h^{l1},...,h^{ln}>_d = (-1)^{(d-1)(r+1)} N d^{n-3} under the dimension
// filter sum l_i = 2r + n - 2, 1 <= l_i <= r; zero otherwise.
QQ n_point_extremal(int r, const std::vector<int>& degrees, int d);

// General extremal invariant with descendents, insertions (k_i, l_i).
QQ extremal_descendent(int r, std::vector<std::pair<int, int>> ins, int d);

// Closed rational form of sum_{d>=1} (-1)^{(d-1)(r+1)} d^{n-3} q^d scaled by
// N_{l_1..l_n}: N * (q d/dq)^{n-3} applied to q/(1 - (-1)^{r+1} q).
RatFn extremal_series(int r, const std::vector<int>& degrees);

struct ExtremalInvarianceReport {
    bool pass = false;
    RatFn x_side;        // series on X
    RatFn f_side;        // series on X' with transformed insertions
    RatFn continued;     // analytic continuation of the X side
    QQ defect = QQ(0);   // classical triple-product defect (n = 3 only)
};

// n = 3: checks continued - f_side - defect = 0; n >= 4: continued == f_side.
ExtremalInvarianceReport verify_extremal_invariance(int r, const std::vector<int>& degrees);

} // namespace flopgw

#endif
