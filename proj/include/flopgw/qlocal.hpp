#ifndef FLOPGW_QLOCAL_HPP
#define FLOPGW_QLOCAL_HPP

#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include "flopgw/ratfn.hpp"
#include "flopgw/ring.hpp"
#include "flopgw/zseries.hpp"

namespace flopgw {

// Point of the Mori lattice: d1 along the line class in Z, d2 along the
// fiber line class.
struct CurveDegree {
    int d1 = 0, d2 = 0;
};

// tau_k applied to a class of the flop local model.
struct Insertion {
    int k = 0;
    CohClass cls;
};

// Hypergeometric 1/z-expansion of the one-point generating series at degree
// (d1, d2), to z_order, with the infinite products cancelled.  Throws when
// z_order cannot hold any nonzero coefficient.
ZSeries p_beta(int r, int d1, int d2, int z_order);

// z^{-(k+2)} coefficient of the pairing of cls against p_beta; zero when the
// dimension filter fails.
QQ one_point_local(int r, int k, const CohClass& cls, int d1, int d2);

// Virtual dimension (r+2) d2 + 2r + n - 2.
long virtual_dimension(int r, int n, int d2);

// Memoized reconstruction engine for genus-zero invariants of the local
// model; one instance per rank r.  The table supports concurrent reads with
// exclusive insert; recomputation is idempotent.
class GwEngine {
public:
    // Slot-selection policies, overridable for the order-independence tests.
    // Both sink choices keep the absorbing slot maximal while it absorbs
    // divisors, which is what makes the reduction terminate.
    enum class SinkPolicy { MaxDescendent, MaxClass };
    enum class SlotPolicy { First, Last };

    explicit GwEngine(int r, SinkPolicy sink = SinkPolicy::MaxDescendent,
                      SlotPolicy slot = SlotPolicy::First);

    // Shared per-r engine with default policies.
    static GwEngine& shared(int r);

    int rank() const { return r_; }
    const Ring& ring() const { return *ring_; }

    // <tau_{k_1} a_1, ..., tau_{k_n} a_n>_{(d1, d2)}; classes expand
    // multilinearly over the monomial basis.
    QQ invariant(const std::vector<Insertion>& ins, CurveDegree deg);

    // The unique d2 >= 0 admitted by the dimension filter, or -1.
    int admissible_d2(const std::vector<Insertion>& ins) const;

    // Coefficients d1 = 0..d1_max at the admissible d2.
    // Throws NoAdmissibleD2Error.
    NovikovSeries n_point_series(const std::vector<Insertion>& ins, int d1_max);

    // Same invariant computed through the divisor-axiom normalization
    // <a> = (<a, xi> - corrections)/d2; used by the closure property test.
    QQ invariant_via_divisor_normalization(const std::vector<Insertion>& ins, CurveDegree deg);

private:
    struct MonoIns {
        int k;
        int b; // basis index
        friend bool operator<(const MonoIns& a, const MonoIns& b)
        {
            return a.k != b.k ? a.k < b.k : a.b < b.b;
        }
        friend bool operator==(const MonoIns& a, const MonoIns& b)
        {
            return a.k == b.k && a.b == b.b;
        }
    };
    struct Key {
        std::vector<MonoIns> ins;
        int d1, d2;
        friend bool operator<(const Key& a, const Key& b)
        {
            if (a.d2 != b.d2)
                return a.d2 < b.d2;
            if (a.d1 != b.d1)
                return a.d1 < b.d1;
            return a.ins < b.ins;
        }
    };

    QQ mono_invariant(std::vector<MonoIns> ins, int d1, int d2);
    QQ compute(const Key& key);
    QQ degree_zero(const Key& key) const;
    QQ extremal_dispatch(const Key& key) const;
    QQ divisor_normalization(const Key& key);
    QQ psi_step(const Key& key, int slot, int sink);
    QQ generator_step(const Key& key, int slot, int sink, bool move_h);
    QQ divisor_axiom(const Key& key, int slot, bool gen_is_h);
    // Sum over boundary splittings D_{slot1 | sink} with left weight w(b1).
    QQ splitting_sum(const Key& key, const std::vector<MonoIns>& left_fixed,
                     const std::vector<MonoIns>& right_fixed, const std::vector<MonoIns>& mid,
                     int weight_kind /*0: 1, 1: d1 of left, 2: d2 of left*/);
    // Invariant of a slot list where slot `which` carries an arbitrary class.
    QQ expanded(std::vector<MonoIns> ins, int which, const CohClass& cls, int k, int d1, int d2);

    int xi_exp(int b) const { return ring_->basis_exponents(b).second; }
    int h_exp(int b) const { return ring_->basis_exponents(b).first; }

    int r_;
    const Ring* ring_;
    SinkPolicy sink_policy_;
    SlotPolicy slot_policy_;

    // Concurrent readers with exclusive insert; duplicate recomputation is
    // idempotent.  Cycle/depth guards are tracked per thread.
    struct ThreadState {
        std::set<Key> inflight;
        int depth = 0;
    };
    std::map<Key, QQ> table_;
    std::map<std::thread::id, ThreadState> thread_state_;
    std::mutex table_mu_;
};

struct FlopInvarianceReport {
    bool pass = false;
    int d2 = 0;
    NovikovSeries series_x, series_f;
    RatFn fit_x, fit_f, continued;
};

// Computes the n-point series for the insertions and for their slotwise
// transforms, fits both and checks exact equality after continuation.
FlopInvarianceReport verify_flop_invariance(int r, const std::vector<Insertion>& ins, int d1_max);
FlopInvarianceReport verify_flop_invariance(int r, const std::vector<Insertion>& ins, int d1_max,
                                            const FitBounds& bounds);

struct BatyrevReport {
    bool pass = false;
};
// Symbolic check that the correspondence maps the quantum-ring ideal of X
// into the ideal of X' under q1 -> 1/q1', q2 -> q1' q2'.
BatyrevReport batyrev_check(int r);

// delta_H: multiplies the (d1, d2) coefficient by (H.l) d1 + (H.gamma) d2.
// H must be a combination of the two divisor generators.
NovikovSeries delta_H(const NovikovSeries& s, const CohClass& h_class);
RatFn delta_H(const RatFn& f, const CohClass& h_class);

} // namespace flopgw

#endif
