#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmgrowth/pbw.hpp"

namespace kmgrowth {

class ThresholdNotMet : public std::domain_error {
public:
    ThresholdNotMet(int threshold, int have)
        : std::domain_error("threshold not met: smallest t-exponent " + std::to_string(have) + " must exceed " +
                            std::to_string(threshold)),
          threshold(threshold) {}
    int threshold;
};

class EngineInvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct TraceStep {
    enum class Kind { Bracket, Multiply };
    Kind kind = Kind::Bracket;
    Element operand;  // Bracket: a combination of letters; Multiply: a monomial
};

// Certified derivation of an ideal element from a generator.
struct ReductionTrace {
    Element generator;
    std::vector<TraceStep> steps;

    void bracket(const Element& x) { steps.push_back({TraceStep::Kind::Bracket, x}); }
    void multiply(const Element& m) { steps.push_back({TraceStep::Kind::Multiply, m}); }
    void append(const ReductionTrace& other) { steps.insert(steps.end(), other.steps.begin(), other.steps.end()); }
    std::size_t bracket_count() const {
        return static_cast<std::size_t>(
            std::count_if(steps.begin(), steps.end(), [](const TraceStep& s) { return s.kind == TraceStep::Kind::Bracket; }));
    }
    // Smallest exponent among letters used in bracket steps.
    int min_acting_exponent() const {
        int v = INT32_MAX;
        for (const auto& s : steps)
            if (s.kind == TraceStep::Kind::Bracket) v = std::min(v, s.operand.min_exponent());
        return v;
    }
};

// Replays a trace in S (Poisson bracket, commutative product).
inline Element replay_s(const AlgebraSpec& spec, const ReductionTrace& t, const Element& start) {
    Element f = start;
    for (const auto& s : t.steps) {
        if (s.kind == TraceStep::Kind::Bracket) f = poisson_bracket(spec, PoissonMode::SLambda, s.operand, f);
        else f = multiply_s(s.operand, f);
    }
    return f;
}
inline Element replay_s(const AlgebraSpec& spec, const ReductionTrace& t) { return replay_s(spec, t, t.generator); }

// Replays a trace in U (commutators, associative product).
inline Element replay_u(const AlgebraSpec& spec, const ReductionTrace& t, const Element& start) {
    Element f = start;
    for (const auto& s : t.steps) {
        if (s.kind == TraceStep::Kind::Bracket) f = commutator_u(spec, s.operand, f);
        else f = multiply_u(spec, s.operand, f);
    }
    return f;
}

struct KillResult {
    Element g;
    ReductionTrace trace;
    int rounds = 0;
    int round_bound = 0;
};

struct RealizeResult {
    Element g;
    ReductionTrace trace;
    std::vector<int> exponents;  // k_1..k_m of LT_prec(G)
    int stages = 0;              // per-position stages performed
};

struct ConstructResult {
    Element h;
    ReductionTrace trace;
    int threshold = 0;  // n_M
    int ell = 0;        // smallest t-exponent of the generator
    Scalar lead_coefficient;
};

struct ProjectResult {
    Element h;
    ReductionTrace trace;
};

// The constructive reduction machinery over a twisted loop algebra (Poisson side).
class ReductionEngine {
public:
    explicit ReductionEngine(std::shared_ptr<const EquivariantBasis> basis)
        : spec_(std::move(basis), Flavor::Loop) {}

    const AlgebraSpec& spec() const { return spec_; }
    const EquivariantBasis& basis() const { return spec_.basis(); }

    Element act(int b, int exp) const { return Element::letter(Letter::loop(b, exp)); }
    Element act(const SparseVec& v, int exp) const {
        Element e;
        for (const auto& [k, c] : v) e.add(Monomial{Letter::loop(k, exp)}, c);
        return e;
    }

    static int length_of(const Element& f) {
        if (f.is_zero()) throw std::invalid_argument("generator is zero");
        int m = -1;
        for (const auto& [mono, c] : f.terms()) {
            if (m >= 0 && len(mono) != m)
                throw std::invalid_argument("generator is not length-homogeneous; pass its top-length part gr_len(F)");
            m = len(mono);
        }
        return m;
    }

    void check_generator(const Element& f) const {
        int m = length_of(f);
        if (m == 0) throw std::invalid_argument("generator must have positive length");
        if (f.has_d()) throw std::invalid_argument("generator must not contain d");
        spec_.check(f);
    }

    // Repeatedly bracket with g t^q, g in Delta^sign, q the smallest admissible exponent exceeding the
    // total absolute t-degree, until every such bracket vanishes.
    KillResult kill_positive_action(const Element& f, Positivity sign) const {
        check_generator(f);
        const int m = length_of(f);
        KillResult out;
        out.g = f;
        out.trace.generator = f;
        int min_height = INT32_MAX;
        for (const auto& [mono, c] : f.terms()) min_height = std::min(min_height, height_of(mono));
        if (sign == Positivity::Positive) out.round_bound = m * basis().theta_height() - min_height;
        else out.round_bound = m * basis().theta_height() + max_height(f);
        while (true) {
            int q0 = abs_degree(out.g) + 1;
            bool moved = false;
            for (int y = 0; y < basis().dim() && !moved; ++y) {
                if (basis()[y].positivity != sign) continue;
                int q = spec_.next_exponent(basis()[y].weight, std::max(q0, 1));
                Element x = act(y, q);
                Element g = poisson_bracket(spec_, PoissonMode::SLambda, x, out.g);
                if (g.is_zero()) continue;
                out.g = std::move(g);
                out.trace.bracket(x);
                moved = true;
            }
            if (!moved) break;
            if (++out.rounds > out.round_bound) throw EngineInvariantViolation("kill_positive_action exceeded its round bound");
        }
        const int line = sign == Positivity::Positive ? basis().theta() : basis().minus_theta();
        for (const auto& [mono, c] : out.g.terms())
            for (const Letter& l : mono)
                if (l.idx != line) throw EngineInvariantViolation("killed element is not supported on the theta line");
        return out;
    }

    RealizeResult realize_congruence_class(const Element& f, const std::vector<int>& target) const {
        const int m = length_of(f);
        if (static_cast<int>(target.size()) != m) throw std::invalid_argument("target class length differs from generator length");
        for (int g : target)
            if (!basis().is_root_element(g)) throw std::invalid_argument("target entries must lie in B_Delta");
        const int r = spec_.order();
        const int d = basis().theta_height();
        const int th = basis().theta(), mth = basis().minus_theta();
        const int st = basis().theta_weight();
        const int up = r + st;                // exponent of g_theta letters in the sweeps
        const int down = st == 0 ? r : r - st;  // exponent of g_{-theta} letters

        KillResult killed = kill_positive_action(f, Positivity::Negative);
        RealizeResult out;
        out.trace = killed.trace;
        Element g = std::move(killed.g);
        Monomial lead = leading_term(g, MonomialOrder::RevLex);
        std::vector<int> cls(m), ks(m);
        for (int i = 0; i < m; ++i) {
            cls[i] = mth;
            ks[i] = lead[i].exp;
        }

        auto apply = [&](const Element& x, int times) {
            for (int t = 0; t < times; ++t) {
                g = poisson_bracket(spec_, PoissonMode::SLambda, x, g);
                out.trace.bracket(x);
            }
        };

        for (int i = 1; i <= m; ++i) {
            apply(act(th, i * r * d + st), 2);
            cls[i - 1] = th;
            ks[i - 1] += 2 * (i * r * d + st);
        }
        verify_stage(g, cls, ks, 0, r * d);

        for (int n = 0; n < m; ++n) {
            if (cls == target) break;
            const int target_g = target[n];
            const Positivity p = basis()[target_g].positivity;
            std::vector<int> chain = basis().opposite_chain(target_g);
            int chain_exp = 0;
            for (int y : chain) chain_exp += chain_exponent(y);
            if (p == Positivity::Negative) {
                apply(act(mth, down), 2 * (m - n));
                for (int i = n; i < m; ++i) {
                    cls[i] = mth;
                    ks[i] += 2 * down;
                }
                apply(act(th, up), 2 * (m - n - 1));
                for (int i = n + 1; i < m; ++i) {
                    cls[i] = th;
                    ks[i] += 2 * up;
                }
                for (int y : chain) apply(act(y, chain_exponent(y)), 1);
                cls[n] = target_g;
                ks[n] += chain_exp;
            } else {
                apply(act(mth, down), 2 * (m - n - 1));
                for (int i = n + 1; i < m; ++i) {
                    cls[i] = mth;
                    ks[i] += 2 * down;
                }
                for (int y : chain) apply(act(y, chain_exponent(y)), 1);
                cls[n] = target_g;
                ks[n] += chain_exp;
                apply(act(th, up), 2 * (m - n - 1));
                for (int i = n + 1; i < m; ++i) {
                    cls[i] = th;
                    ks[i] += 2 * up;
                }
            }
            verify_stage(g, cls, ks, n + 1, r * d);
            ++out.stages;
        }
        out.g = std::move(g);
        out.exponents = ks;
        return out;
    }

    struct Partner {
        int gprime;
        SparseVec gsecond;
        int gsecond_weight;
    };

    // H_M = {g''_1 t^{i_m - a_1}, {..., {g''_m t^{i_1 - a_m}, G}}}.
    ConstructResult lift_leading_term(const Element& g, const std::vector<int>& a, int s, const Monomial& target,
                                      const std::vector<Partner>& partners) const {
        const int m = static_cast<int>(target.size());
        if (static_cast<int>(a.size()) != m || static_cast<int>(partners.size()) != m)
            throw std::invalid_argument("lift_leading_term: inconsistent lengths");
        const int threshold = std::max(0, 2 * a[m - 1] - s);
        if (target[0].exp <= threshold) throw ThresholdNotMet(threshold, target[0].exp);
        ConstructResult out;
        out.threshold = threshold;
        out.trace.generator = g;
        Element h = g;
        for (int j = m; j >= 1; --j) {
            const int e = target[m - j].exp - a[j - 1];
            if (e < 1) throw EngineInvariantViolation("lift exponent is not positive");
            Element x = act(partners[j - 1].gsecond, e);
            spec_.check(x);
            h = poisson_bracket(spec_, PoissonMode::SLambda, x, h);
            out.trace.bracket(x);
        }
        out.h = std::move(h);
        out.lead_coefficient = out.h.coefficient(target);
        if (out.h.is_zero() || leading_term(out.h) != target || out.lead_coefficient.is_zero())
            throw EngineInvariantViolation("lifted element does not have the prescribed leading term");
        return out;
    }

    std::vector<Partner> partners_for(const Monomial& target) const {
        const int m = static_cast<int>(target.size());
        std::vector<Partner> out;
        for (int j = 1; j <= m; ++j) {
            const Letter& l = target[m - j];
            if (l.is_d()) throw std::invalid_argument("target contains d");
            Sl2Partner p = basis().sl2_partner(l.idx);
            out.push_back({p.gprime, p.gsecond, p.gsecond_weight});
        }
        return out;
    }

    // Per-class threshold and G for a target; cached by congruence class.
    const RealizeResult& realized(const Element& f, const std::vector<int>& cls) const {
        auto key = std::make_pair(cache_key(f), cls);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, realize_congruence_class(f, cls)).first->second;
    }

    int threshold_for(const Element& f, const Monomial& target) const {
        auto parts = partners_for(target);
        std::vector<int> cls;
        for (const auto& p : parts) cls.push_back(p.gprime);
        const RealizeResult& rr = realized(f, cls);
        return std::max(0, 2 * rr.exponents.back() - rr.g.min_exponent());
    }

    ConstructResult construct_h_m(const Element& f, const Monomial& target) const {
        check_generator(f);
        const int m = length_of(f);
        if (len(target) != m) throw std::invalid_argument("target length differs from generator length");
        if (!is_standard(target)) throw std::invalid_argument("target is not a standard monomial");
        for (const Letter& l : target) spec_.check(l);
        auto parts = partners_for(target);
        std::vector<int> cls;
        for (const auto& p : parts) cls.push_back(p.gprime);
        const RealizeResult& rr = realized(f, cls);
        const int s = rr.g.min_exponent();
        ConstructResult lifted = lift_leading_term(rr.g, rr.exponents, s, target, parts);
        ConstructResult out;
        out.h = std::move(lifted.h);
        out.trace = rr.trace;
        out.trace.generator = f;
        out.trace.append(lifted.trace);
        out.threshold = lifted.threshold;
        out.ell = f.min_exponent();
        out.lead_coefficient = lifted.lead_coefficient;
        if (out.h.min_exponent() < out.ell) throw EngineInvariantViolation("t-exponent below the generator's minimum");
        if (out.trace.min_acting_exponent() < 1) throw EngineInvariantViolation("non-positive acting exponent");
        return out;
    }

    // Max over all classes in B_Delta^m of the per-class threshold (m <= 2 only).
    int uniform_threshold(const Element& f) const {
        const int m = length_of(f);
        if (m > 2) throw std::invalid_argument("uniform threshold is only available for m <= 2");
        std::vector<int> delta;
        for (int i = 0; i < basis().dim(); ++i)
            if (basis().is_root_element(i)) delta.push_back(i);
        int best = 0;
        std::vector<int> cls(m);
        std::vector<std::size_t> pos(m, 0);
        while (true) {
            for (int i = 0; i < m; ++i) cls[i] = delta[pos[i]];
            const RealizeResult& rr = realized(f, cls);
            best = std::max(best, 2 * rr.exponents.back() - rr.g.min_exponent());
            int i = 0;
            while (i < m && ++pos[i] == delta.size()) pos[i++] = 0;
            if (i == m) break;
        }
        return best;
    }

private:
    int chain_exponent(int y) const {
        int w = basis()[y].weight;
        return w > 0 ? w : spec_.order();
    }

    int height_of(const Monomial& mono) const {
        int h = 0;
        for (const Letter& l : mono) h += basis()[l.idx].height;
        return h;
    }
    int max_height(const Element& f) const {
        int v = INT32_MIN;
        for (const auto& [mono, c] : f.terms()) v = std::max(v, height_of(mono));
        return v;
    }
    static int abs_degree(const Element& f) {
        int v = 0;
        for (const auto& [mono, c] : f.terms()) {
            int s = 0;
            for (const Letter& l : mono) s += l.exp < 0 ? -l.exp : l.exp;
            v = std::max(v, s);
        }
        return v;
    }

    // Inductive properties after stage n: class prefix, gap condition beyond position n, strict increase up to n.
    void verify_stage(const Element& g, const std::vector<int>& cls, const std::vector<int>& ks, int n, int rd) const {
        if (g.is_zero()) throw EngineInvariantViolation("congruence-class construction produced zero");
        Monomial lead = leading_term(g, MonomialOrder::RevLex);
        const int m = static_cast<int>(cls.size());
        for (int i = 0; i < m; ++i)
            if (lead[i].idx != cls[i] || lead[i].exp != ks[i])
                throw EngineInvariantViolation("LT_prec differs from the predicted monomial at stage " + std::to_string(n));
        for (int i = n; i + 1 < m; ++i)
            if (ks[i] + 2 * rd > ks[i + 1]) throw EngineInvariantViolation("gap condition fails at stage " + std::to_string(n));
        for (int i = 0; i + 1 < std::min(n + 1, m); ++i)
            if (ks[i] >= ks[i + 1]) throw EngineInvariantViolation("exponents not increasing at stage " + std::to_string(n));
    }

    static std::vector<std::pair<Monomial, std::string>> cache_key(const Element& f) {
        std::vector<std::pair<Monomial, std::string>> key;
        for (const auto& [m, c] : f.terms()) key.emplace_back(m, c.str());
        std::sort(key.begin(), key.end());
        return key;
    }

    AlgebraSpec spec_;
    mutable std::map<std::pair<std::vector<std::pair<Monomial, std::string>>, std::vector<int>>, RealizeResult> cache_;
};

// Brackets with g_theta t^e (e admissible, positive) until the element is d-free.
inline ProjectResult project_to_derived(const AlgebraSpec& spec, const Element& f) {
    if (f.is_zero()) throw std::invalid_argument("element is zero");
    if (!spec.has_d()) throw std::invalid_argument("project_to_derived needs the affine flavor");
    spec.check(f);
    const EquivariantBasis& b = spec.basis();
    const int th = b.theta(), s = b.theta_weight(), r = spec.order();
    ProjectResult out;
    out.h = f;
    out.trace.generator = f;
    while (out.h.has_d()) {
        int sumabs = 0;
        for (const auto& [mono, c] : out.h.terms()) {
            int v = 0;
            for (const Letter& l : mono)
                if (!l.is_d()) v += l.exp < 0 ? -l.exp : l.exp;
            sumabs = std::max(sumabs, v);
        }
        bool moved = false;
        int beyond = 0;
        for (int e = spec.next_exponent(s, 1); beyond < 2; e += r) {
            if (e > sumabs) ++beyond;
            Element x = Element::letter(Letter::loop(th, e));
            Element g = poisson_bracket(spec, PoissonMode::SLambda, x, out.h);
            if (g.is_zero()) continue;
            out.h = std::move(g);
            out.trace.bracket(x);
            moved = true;
            break;
        }
        if (!moved) throw EngineInvariantViolation("theta-line brackets vanish on an element containing d");
    }
    return out;
}

// Replays an S-side trace as commutators in U_lambda starting from H with gr_len(H) = trace generator.
inline Element lift_to_u(const AlgebraSpec& uspec, const Element& h, const ReductionTrace& trace) {
    if (gr_len(h) != trace.generator) throw std::invalid_argument("gr_len mismatch between H and the trace generator");
    for (const auto& s : trace.steps)
        if (s.kind == TraceStep::Kind::Bracket && s.operand.min_exponent() < 0)
            throw std::invalid_argument("trace uses negative exponents");
    return replay_u(uspec, trace, h);
}

}  // namespace kmgrowth
