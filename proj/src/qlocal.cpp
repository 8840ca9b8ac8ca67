#include "flopgw/qlocal.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <stdexcept>

#include "flopgw/classical.hpp"
#include "flopgw/errors.hpp"
#include "flopgw/extremal.hpp"

namespace flopgw {

long virtual_dimension(int r, int n, int d2)
{
    return static_cast<long>(r + 2) * d2 + 2L * r + n - 2;
}

namespace {

// Most negative z-exponent carrying a nonzero coefficient of p_beta.
int p_beta_leading_order(int r, int d1, int d2)
{
    if (d1 <= d2)
        return d2 * (r + 2);
    return d2 * (r + 2) + r + 1;
}

} // namespace

ZSeries p_beta(int r, int d1, int d2, int z_order)
{
    if (d1 < 0 || d2 < 0 || (d1 == 0 && d2 == 0))
        throw std::invalid_argument("p_beta: degree must be effective and nonzero");
    if (z_order < p_beta_leading_order(r, d1, d2))
        throw std::invalid_argument("p_beta: z_order too small to hold any nonzero coefficient");
    const Ring& ring = Ring::get(ModelSpec::flop_local(r));
    const CohClass h = ring.monomial(1, 0);
    const CohClass xi = ring.monomial(0, 1);
    const CohClass xmh = xi - h;
    ZSeries s = ZSeries::unit(ring, -z_order);
    if (d1 > d2) {
        // numerator picks up prod_{m=0}^{d1-d2-1} (xi - h - m z)^{r+1}
        for (int m = 0; m <= d1 - d2 - 1; ++m)
            s = s.mul_linear_power(xmh, -m, r + 1);
    }
    for (int m = 1; m <= d1; ++m)
        s = s.mul_linear_power(h, m, -(r + 1));
    if (d1 <= d2)
        for (int m = 1; m <= d2 - d1; ++m)
            s = s.mul_linear_power(xmh, m, -(r + 1));
    for (int m = 1; m <= d2; ++m)
        s = s.mul_linear_power(xi, m, -1);
    return s;
}

QQ one_point_local(int r, int k, const CohClass& cls, int d1, int d2)
{
    if (d1 == 0 && d2 == 0)
        throw std::invalid_argument("one_point_local: degree must be nonzero");
    if (d1 < 0 || d2 < 0 || k < 0)
        return QQ(0);
    const Ring& ring = cls.ring();
    const long need_deg = virtual_dimension(r, 1, d2) - k;
    if (need_deg < 0 || need_deg > ring.dim())
        return QQ(0);
    std::vector<QQ> piece(static_cast<size_t>(ring.basis_size()), QQ(0));
    bool any = false;
    for (int i = 0; i < ring.basis_size(); ++i)
        if (cls.coord(i) != 0 && ring.basis_degree(i) == need_deg) {
            piece[static_cast<size_t>(i)] = cls.coord(i);
            any = true;
        }
    if (!any)
        return QQ(0);
    if (k + 2 < p_beta_leading_order(r, d1, d2))
        return QQ(0);
    const ZSeries s = p_beta(r, d1, d2, k + 2);
    return ring.integrate(CohClass(ring, std::move(piece)) * s.coeff(-(k + 2)));
}

GwEngine::GwEngine(int r, SinkPolicy sink, SlotPolicy slot)
    : r_(r), ring_(&Ring::get(ModelSpec::flop_local(r))), sink_policy_(sink), slot_policy_(slot)
{
}

GwEngine& GwEngine::shared(int r)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GwEngine>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(r);
    if (it == registry.end())
        it = registry.emplace(r, std::make_unique<GwEngine>(r)).first;
    return *it->second;
}

QQ GwEngine::invariant(const std::vector<Insertion>& ins, CurveDegree deg)
{
    // multilinear expansion over the monomial basis
    std::vector<MonoIns> mono;
    QQ total(0);
    const auto expand = [&](auto&& self, size_t slot, const QQ& coeff) -> void {
        if (coeff == 0)
            return;
        if (slot == ins.size()) {
            total += coeff * mono_invariant(mono, deg.d1, deg.d2);
            return;
        }
        const Insertion& is = ins[slot];
        if (&is.cls.ring() != ring_)
            throw std::invalid_argument("GwEngine: insertion from a different model");
        if (is.k < 0)
            throw std::invalid_argument("GwEngine: negative descendent level");
        for (int b = 0; b < ring_->basis_size(); ++b) {
            if (is.cls.coord(b) == 0)
                continue;
            mono.push_back({is.k, b});
            self(self, slot + 1, coeff * is.cls.coord(b));
            mono.pop_back();
        }
    };
    expand(expand, 0, QQ(1));
    return total;
}

int GwEngine::admissible_d2(const std::vector<Insertion>& ins) const
{
    long total = 0;
    for (const Insertion& is : ins) {
        const int deg = is.cls.homogeneous_degree();
        if (deg < 0)
            throw std::invalid_argument("admissible_d2: insertions must be homogeneous and nonzero");
        total += deg + is.k;
    }
    const long base = total - 2L * r_ - static_cast<long>(ins.size()) + 2;
    if (base < 0 || base % (r_ + 2) != 0)
        return -1;
    return static_cast<int>(base / (r_ + 2));
}

NovikovSeries GwEngine::n_point_series(const std::vector<Insertion>& ins, int d1_max)
{
    const int d2 = admissible_d2(ins);
    if (d2 < 0)
        throw NoAdmissibleD2Error("n_point_series: dimension filter admits no d2 >= 0");
    NovikovSeries s;
    s.d2 = d2;
    s.coeffs.resize(static_cast<size_t>(d1_max) + 1);
    for (int d1 = 0; d1 <= d1_max; ++d1)
        s.coeffs[static_cast<size_t>(d1)] = invariant(ins, {d1, d2});
    return s;
}

QQ GwEngine::invariant_via_divisor_normalization(const std::vector<Insertion>& ins, CurveDegree deg)
{
    if (deg.d2 < 1)
        throw std::invalid_argument("divisor normalization needs d2 >= 1");
    std::vector<Insertion> plus = ins;
    plus.push_back({0, ring_->monomial(0, 1)});
    QQ v = invariant(plus, deg);
    for (size_t j = 0; j < ins.size(); ++j)
        if (ins[j].k >= 1) {
            std::vector<Insertion> corr = ins;
            corr[j].k -= 1;
            corr[j].cls = corr[j].cls * ring_->monomial(0, 1);
            v -= invariant(corr, deg);
        }
    return v / QQ(deg.d2);
}

QQ GwEngine::mono_invariant(std::vector<MonoIns> ins, int d1, int d2)
{
    std::sort(ins.begin(), ins.end());
    Key key{std::move(ins), d1, d2};
    const std::thread::id tid = std::this_thread::get_id();
    {
        std::lock_guard<std::mutex> lock(table_mu_);
        auto it = table_.find(key);
        if (it != table_.end())
            return it->second;
        ThreadState& st = thread_state_[tid];
        if (st.inflight.count(key))
            throw NonTerminationError("GwEngine: reduction cycle detected");
        if (++st.depth > 20000)
            throw NonTerminationError("GwEngine: recursion depth bound exceeded");
        st.inflight.insert(key);
    }
    const auto leave = [&](bool cleanup) {
        std::lock_guard<std::mutex> lock(table_mu_);
        ThreadState& st = thread_state_[tid];
        st.inflight.erase(key);
        if (--st.depth == 0 && cleanup)
            thread_state_.erase(tid);
    };
    QQ v;
    try {
        v = compute(key);
    } catch (...) {
        leave(true);
        throw;
    }
    std::lock_guard<std::mutex> lock(table_mu_);
    ThreadState& st = thread_state_[tid];
    st.inflight.erase(key);
    if (--st.depth == 0)
        thread_state_.erase(tid);
    auto [it, inserted] = table_.emplace(key, v);
    if (!inserted && it->second != v)
        throw std::logic_error("GwEngine: non-idempotent recomputation");
    return v;
}

QQ GwEngine::degree_zero(const Key& key) const
{
    const int n = static_cast<int>(key.ins.size());
    if (n < 3)
        return QQ(0);
    long ksum = 0;
    std::vector<long> ks;
    for (const MonoIns& m : key.ins) {
        ksum += m.k;
        ks.push_back(m.k);
    }
    if (ksum != n - 3)
        return QQ(0);
    CohClass prod = ring_->one();
    for (const MonoIns& m : key.ins)
        prod = prod * ring_->basis_element(m.b);
    return multinomial(n - 3, ks) * ring_->integrate(prod);
}

QQ GwEngine::extremal_dispatch(const Key& key) const
{
    std::vector<std::pair<int, int>> ins;
    for (const MonoIns& m : key.ins) {
        if (xi_exp(m.b) >= 1)
            return QQ(0); // restriction to Z kills xi-divisible classes
        ins.emplace_back(m.k, h_exp(m.b));
    }
    return extremal_descendent(r_, std::move(ins), key.d1);
}

QQ GwEngine::expanded(std::vector<MonoIns> ins, int which, const CohClass& cls, int k, int d1, int d2)
{
    QQ total(0);
    for (int b = 0; b < ring_->basis_size(); ++b) {
        if (cls.coord(b) == 0)
            continue;
        ins[static_cast<size_t>(which)] = {k, b};
        total += cls.coord(b) * mono_invariant(ins, d1, d2);
    }
    return total;
}

QQ GwEngine::divisor_normalization(const Key& key)
{
    const CohClass xi = ring_->monomial(0, 1);
    std::vector<MonoIns> plus = key.ins;
    plus.push_back({0, ring_->basis_index(0, 1)});
    QQ v = mono_invariant(plus, key.d1, key.d2);
    for (size_t j = 0; j < key.ins.size(); ++j)
        if (key.ins[j].k >= 1) {
            const CohClass lowered = ring_->basis_element(key.ins[j].b) * xi;
            v -= expanded(key.ins, static_cast<int>(j), lowered, key.ins[j].k - 1, key.d1, key.d2);
        }
    return v / QQ(key.d2);
}

QQ GwEngine::splitting_sum(const Key& key, const std::vector<MonoIns>& left_fixed,
                           const std::vector<MonoIns>& right_fixed, const std::vector<MonoIns>& mid,
                           int weight_kind)
{
    QQ total(0);
    const int nmid = static_cast<int>(mid.size());
    long fixed_left_content = 0;
    for (const MonoIns& m : left_fixed)
        fixed_left_content += ring_->basis_degree(m.b) + m.k;
    for (int e1 = 0; e1 <= key.d1; ++e1)
        for (int e2 = 0; e2 <= key.d2; ++e2) {
            QQ w(1);
            if (weight_kind == 1)
                w = QQ(e1);
            else if (weight_kind == 2)
                w = QQ(e2);
            if (w == 0)
                continue;
            const int f1 = key.d1 - e1;
            const int f2 = key.d2 - e2;
            for (int mask = 0; mask < (1 << nmid); ++mask) {
                std::vector<MonoIns> left = left_fixed;
                std::vector<MonoIns> right = right_fixed;
                long left_content = fixed_left_content;
                for (int t = 0; t < nmid; ++t) {
                    const MonoIns& m = mid[static_cast<size_t>(t)];
                    if (mask & (1 << t)) {
                        left.push_back(m);
                        left_content += ring_->basis_degree(m.b) + m.k;
                    } else {
                        right.push_back(m);
                    }
                }
                const int n1 = static_cast<int>(left.size()) + 1;
                const int n2 = static_cast<int>(right.size()) + 1;
                if (e1 == 0 && e2 == 0 && n1 < 3)
                    continue; // no constant maps with fewer than three marks
                if (f1 == 0 && f2 == 0 && n2 < 3)
                    continue;
                const long node_deg = virtual_dimension(r_, n1, e2) - left_content;
                if (node_deg < 0 || node_deg > ring_->dim())
                    continue;
                for (const auto& [bi, bj, gij] : ring_->dual_pairs_of_degree(static_cast<int>(node_deg))) {
                    left.push_back({0, bi});
                    const QQ lv = mono_invariant(left, e1, e2);
                    left.pop_back();
                    if (lv == 0)
                        continue;
                    right.push_back({0, bj});
                    const QQ rv = mono_invariant(right, f1, f2);
                    right.pop_back();
                    if (rv == 0)
                        continue;
                    total += w * gij * lv * rv;
                }
            }
        }
    return total;
}

QQ GwEngine::psi_step(const Key& key, int slot, int sink)
{
    std::vector<MonoIns> down = key.ins;
    down[static_cast<size_t>(slot)].k -= 1;
    std::vector<MonoIns> main = down;
    main[static_cast<size_t>(sink)].k += 1;
    const QQ main_v = -mono_invariant(main, key.d1, key.d2);

    std::vector<MonoIns> left_fixed = {down[static_cast<size_t>(slot)]};
    std::vector<MonoIns> right_fixed = {key.ins[static_cast<size_t>(sink)]};
    std::vector<MonoIns> mid;
    for (size_t i = 0; i < key.ins.size(); ++i)
        if (static_cast<int>(i) != slot && static_cast<int>(i) != sink)
            mid.push_back(key.ins[i]);
    return main_v + splitting_sum(key, left_fixed, right_fixed, mid, 0);
}

QQ GwEngine::divisor_axiom(const Key& key, int slot, bool gen_is_h)
{
    const CohClass gen = gen_is_h ? ring_->monomial(1, 0) : ring_->monomial(0, 1);
    std::vector<MonoIns> rest;
    for (size_t i = 0; i < key.ins.size(); ++i)
        if (static_cast<int>(i) != slot)
            rest.push_back(key.ins[i]);
    QQ v = QQ(gen_is_h ? key.d1 : key.d2) * mono_invariant(rest, key.d1, key.d2);
    for (size_t j = 0; j < rest.size(); ++j)
        if (rest[j].k >= 1) {
            const CohClass lowered = ring_->basis_element(rest[j].b) * gen;
            v += expanded(rest, static_cast<int>(j), lowered, rest[j].k - 1, key.d1, key.d2);
        }
    return v;
}

QQ GwEngine::generator_step(const Key& key, int slot, int sink, bool move_h)
{
    const MonoIns s1 = key.ins[static_cast<size_t>(slot)];
    auto [a, c] = ring_->basis_exponents(s1.b);
    if (move_h ? (a == 1 && c == 0) : (a == 0 && c == 1))
        return divisor_axiom(key, slot, move_h);

    const int bred = move_h ? ring_->basis_index(a - 1, c) : ring_->basis_index(a, c - 1);
    const CohClass gen = move_h ? ring_->monomial(1, 0) : ring_->monomial(0, 1);
    const MonoIns sink_ins = key.ins[static_cast<size_t>(sink)];

    // e_1^* gen = e_n^* gen + (beta.gen) psi_n - sum (beta_1.gen) [D_{1|n}]
    std::vector<MonoIns> base = key.ins;
    base[static_cast<size_t>(slot)] = {0, bred};
    const CohClass sink_mult = ring_->basis_element(sink_ins.b) * gen;
    const QQ t1 = expanded(base, sink, sink_mult, sink_ins.k, key.d1, key.d2);

    std::vector<MonoIns> bumped = base;
    bumped[static_cast<size_t>(sink)].k += 1;
    const QQ t2 = QQ(move_h ? key.d1 : key.d2) * mono_invariant(bumped, key.d1, key.d2);

    std::vector<MonoIns> left_fixed = {{0, bred}};
    std::vector<MonoIns> right_fixed = {sink_ins};
    std::vector<MonoIns> mid;
    for (size_t i = 0; i < key.ins.size(); ++i)
        if (static_cast<int>(i) != slot && static_cast<int>(i) != sink)
            mid.push_back(key.ins[i]);
    const QQ t3 = splitting_sum(key, left_fixed, right_fixed, mid, move_h ? 1 : 2);
    return t1 + t2 - t3;
}

QQ GwEngine::compute(const Key& key)
{
    const int n = static_cast<int>(key.ins.size());
    if (n == 0)
        return QQ(0);
    if (key.d1 < 0 || key.d2 < 0)
        return QQ(0);
    long total = 0;
    for (const MonoIns& m : key.ins)
        total += ring_->basis_degree(m.b) + m.k;
    if (total != virtual_dimension(r_, n, key.d2))
        return QQ(0);
    if (key.d1 == 0 && key.d2 == 0)
        return degree_zero(key);

    // fundamental-class slots: string / dilaton
    const int unit = ring_->unit_index();
    for (int i = 0; i < n; ++i) {
        if (key.ins[static_cast<size_t>(i)].b != unit)
            continue;
        const int k = key.ins[static_cast<size_t>(i)].k;
        std::vector<MonoIns> rest;
        for (int j = 0; j < n; ++j)
            if (j != i)
                rest.push_back(key.ins[static_cast<size_t>(j)]);
        if (k == 0) {
            if (rest.empty())
                return QQ(0);
            QQ v(0);
            for (size_t j = 0; j < rest.size(); ++j)
                if (rest[j].k >= 1) {
                    auto lowered = rest;
                    lowered[j].k -= 1;
                    v += mono_invariant(lowered, key.d1, key.d2);
                }
            return v;
        }
        if (k == 1) {
            if (rest.empty())
                return QQ(0);
            return QQ(static_cast<int>(rest.size()) - 2) * mono_invariant(rest, key.d1, key.d2);
        }
        throw std::domain_error("GwEngine: tau_k(1) with k >= 2 is outside the reduction scheme");
    }

    if (key.d2 == 0)
        return extremal_dispatch(key);
    if (n == 1)
        return one_point_local(r_, key.ins[0].k, ring_->basis_element(key.ins[0].b), key.d1, key.d2);

    std::vector<int> sinks;
    for (int i = 0; i < n; ++i)
        if (xi_exp(key.ins[static_cast<size_t>(i)].b) >= 1)
            sinks.push_back(i);
    if (sinks.empty())
        return divisor_normalization(key);
    int sink = sinks.front();
    if (sink_policy_ == SinkPolicy::MaxDescendent) {
        sink = sinks.back(); // keys are sorted by (k, b)
    } else {
        for (int cand : sinks) {
            const MonoIns& c = key.ins[static_cast<size_t>(cand)];
            const MonoIns& s = key.ins[static_cast<size_t>(sink)];
            if (std::pair(c.b, c.k) > std::pair(s.b, s.k))
                sink = cand;
        }
    }

    const auto pick = [&](auto&& pred) -> int {
        if (slot_policy_ == SlotPolicy::First) {
            for (int i = 0; i < n; ++i)
                if (i != sink && pred(key.ins[static_cast<size_t>(i)]))
                    return i;
        } else {
            for (int i = n - 1; i >= 0; --i)
                if (i != sink && pred(key.ins[static_cast<size_t>(i)]))
                    return i;
        }
        return -1;
    };
    int slot = pick([&](const MonoIns& m) { return m.k >= 1; });
    if (slot >= 0)
        return psi_step(key, slot, sink);
    slot = pick([&](const MonoIns& m) { return h_exp(m.b) >= 1; });
    if (slot >= 0)
        return generator_step(key, slot, sink, true);
    slot = pick([&](const MonoIns& m) { return xi_exp(m.b) >= 1; });
    if (slot >= 0)
        return generator_step(key, slot, sink, false);
    throw std::logic_error("GwEngine: no reducible slot (unit slots should be stripped)");
}

FlopInvarianceReport verify_flop_invariance(int r, const std::vector<Insertion>& ins, int d1_max)
{
    return verify_flop_invariance(r, ins, d1_max, default_fit_bounds(d1_max));
}

FlopInvarianceReport verify_flop_invariance(int r, const std::vector<Insertion>& ins, int d1_max,
                                            const FitBounds& bounds)
{
    GwEngine& engine = GwEngine::shared(r);
    FlopInvarianceReport rep;
    rep.series_x = engine.n_point_series(ins, d1_max);
    rep.d2 = rep.series_x.d2;
    std::vector<Insertion> transformed;
    for (const Insertion& is : ins)
        transformed.push_back({is.k, flop_transform(is.cls)});
    rep.series_f = engine.n_point_series(transformed, d1_max);
    rep.fit_x = fit_ratfn(rep.series_x, bounds.deg_p, bounds.deg_q, bounds.guard);
    rep.fit_f = fit_ratfn(rep.series_f, bounds.deg_p, bounds.deg_q, bounds.guard);
    rep.continued = continue_ratfn(rep.fit_x);
    rep.pass = (rep.continued == rep.fit_f);
    return rep;
}

namespace {

// Free polynomial in (h', xi', q1'^{+-1}, q2') used by the Batyrev check.
struct FreePoly {
    std::map<std::array<int, 4>, QQ> t;

    static FreePoly term(const QQ& c, int h, int xi, int q1, int q2)
    {
        FreePoly p;
        if (c != 0)
            p.t[{h, xi, q1, q2}] = c;
        return p;
    }
    FreePoly operator+(const FreePoly& o) const
    {
        FreePoly out = *this;
        for (const auto& [e, c] : o.t) {
            out.t[e] += c;
            if (out.t[e] == 0)
                out.t.erase(e);
        }
        return out;
    }
    FreePoly operator-() const
    {
        FreePoly out = *this;
        for (auto& [e, c] : out.t)
            c = -c;
        return out;
    }
    FreePoly operator-(const FreePoly& o) const { return *this + (-o); }
    FreePoly operator*(const FreePoly& o) const
    {
        FreePoly out;
        for (const auto& [e1, c1] : t)
            for (const auto& [e2, c2] : o.t) {
                const std::array<int, 4> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
                out.t[e] += c1 * c2;
                if (out.t[e] == 0)
                    out.t.erase(e);
            }
        return out;
    }
    friend bool operator==(const FreePoly& a, const FreePoly& b) { return a.t == b.t; }
};

FreePoly power(const FreePoly& base, int e)
{
    FreePoly out = FreePoly::term(QQ(1), 0, 0, 0, 0);
    for (int i = 0; i < e; ++i)
        out = out * base;
    return out;
}

} // namespace

BatyrevReport batyrev_check(int r)
{
    const FreePoly hp = FreePoly::term(QQ(1), 1, 0, 0, 0);
    const FreePoly xip = FreePoly::term(QQ(1), 0, 1, 0, 0);
    const FreePoly q1p = FreePoly::term(QQ(1), 0, 0, 1, 0);
    const FreePoly q1p_inv = FreePoly::term(QQ(1), 0, 0, -1, 0);
    const FreePoly q2p = FreePoly::term(QQ(1), 0, 0, 0, 1);

    // F h = xi' - h', F xi = xi', F q1 = q1'^{-1}, F q2 = q1' q2'
    const FreePoly fh = xip - hp;
    const FreePoly fxi = xip;

    // F(h^{r+1} - q1 (xi-h)^{r+1}) = (xi'-h')^{r+1} - q1'^{-1} h'^{r+1}
    const FreePoly lhs1 = power(fh, r + 1) - q1p_inv * power(fxi - fh, r + 1);
    const FreePoly rhs1 = -(q1p_inv * (power(hp, r + 1) - q1p * power(xip - hp, r + 1)));

    // F((xi-h)^{r+1} xi - q2) = h'^{r+1} xi' - q1' q2'
    const FreePoly lhs2 = power(fxi - fh, r + 1) * fxi - q1p * q2p;
    const FreePoly rhs2 = (power(hp, r + 1) - q1p * power(xip - hp, r + 1)) * xip +
                          q1p * (power(xip - hp, r + 1) * xip - q2p);

    BatyrevReport rep;
    rep.pass = (lhs1 == rhs1) && (lhs2 == rhs2);
    return rep;
}

namespace {

void divisor_coefficients(const CohClass& h_class, QQ& dot_l, QQ& dot_gamma)
{
    const Ring& ring = h_class.ring();
    const int hb = ring.basis_index(1, 0);
    const int xib = ring.basis_index(0, 1);
    for (int i = 0; i < ring.basis_size(); ++i)
        if (h_class.coord(i) != 0 && i != hb && i != xib)
            throw std::invalid_argument("delta_H: H must be a combination of the divisor generators");
    dot_l = h_class.coord(hb);      // (h.l) = 1, (xi.l) = 0
    dot_gamma = h_class.coord(xib); // (h.gamma) = 0, (xi.gamma) = 1
}

} // namespace

NovikovSeries delta_H(const NovikovSeries& s, const CohClass& h_class)
{
    QQ dot_l, dot_gamma;
    divisor_coefficients(h_class, dot_l, dot_gamma);
    NovikovSeries out = s;
    for (int d1 = 0; d1 <= s.cutoff(); ++d1)
        out.coeffs[static_cast<size_t>(d1)] *= dot_l * QQ(d1) + dot_gamma * QQ(s.d2);
    return out;
}

RatFn delta_H(const RatFn& f, const CohClass& h_class)
{
    QQ dot_l, dot_gamma;
    divisor_coefficients(h_class, dot_l, dot_gamma);
    RatFn out = dot_l * f.q_derivative();
    RatFn scaled = (dot_gamma * QQ(f.q2power())) * f;
    if (out.is_zero())
        return scaled;
    if (scaled.is_zero())
        return out;
    return out + scaled;
}

} // namespace flopgw
