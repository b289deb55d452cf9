#pragma once
/**
 * @file paige_loop.hpp
 * @brief The Moufang loop M0(GF(q)) of norm-one Zorn matrices and the simple
 * Paige loop M(GF(q)) = M0 / <-1>.
 */

#include <paige/field.hpp>
#include <paige/loop.hpp>
#include <paige/zorn.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace paige {

/// Raised when an enumeration exceeds the desk-scale guard without an override.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest field order enumerated without an explicit override (5^8 = 390625 tuples).
inline constexpr std::uint32_t kDefaultMaxOrder = 5;
/// Largest field order for which full simplicity sweeps are run.
inline constexpr std::uint32_t kFullSimplicityMaxOrder = 3;

struct BuildOptions {
    bool force = false;  // lift the q <= 5 guard
    std::size_t table_cutoff = kTableCutoff;
    std::uint64_t verification_samples = 20000;  // normality / quotient checks on oracle-backed loops
    std::uint64_t seed = 0;
};

/// q^3 (q^4 - 1); a cross-check label only, the enumeration is the ground truth.
inline std::uint64_t m0_order_formula(std::uint64_t q) { return q * q * q * (q * q * q * q - 1); }

inline void check_enumeration_guard(const FieldSpec& spec, bool force) {
    if (!spec.is_finite()) throw FieldError("M0 can only be enumerated over a finite field");
    if (!force && spec.order() > kDefaultMaxOrder)
        throw GuardError("enumerating C(GF(" + std::to_string(spec.order()) + ")) exceeds the q <= " +
                         std::to_string(kDefaultMaxOrder) + " guard; pass --force to override");
}

namespace detail {

/// Position of a matrix among all q^8 tuples, a1 the most significant digit.
inline std::uint64_t zorn_code(const ZornMatrix& a, std::uint64_t q) {
    std::uint64_t c = a.a1.code();
    for (const auto* v : {&a.v12, &a.v21}) {
        c = c * q + v->x.code();
        c = c * q + v->y.code();
        c = c * q + v->z.code();
    }
    return c * q + a.a2.code();
}

class CodeIndex {
public:
    static constexpr Index kMissing = ~Index{0};

    CodeIndex(std::uint64_t universe, const std::vector<std::uint64_t>& codes) {
        if (universe <= (std::uint64_t{1} << 26)) {
            dense_.assign(universe, kMissing);
            for (Index i = 0; i < codes.size(); ++i) dense_[codes[i]] = i;
        } else {
            for (Index i = 0; i < codes.size(); ++i) sparse_.emplace(codes[i], i);
        }
    }

    [[nodiscard]] Index find(std::uint64_t code) const {
        if (!dense_.empty()) return code < dense_.size() ? dense_[code] : kMissing;
        auto it = sparse_.find(code);
        return it == sparse_.end() ? kMissing : it->second;
    }

private:
    std::vector<Index> dense_;
    std::unordered_map<std::uint64_t, Index> sparse_;
};

struct M0State {
    std::uint64_t q = 0;
    std::vector<ZornMatrix> elements;
    CodeIndex index;

    Index lookup(const ZornMatrix& a) const {
        const Index i = index.find(zorn_code(a, q));
        if (i == CodeIndex::kMissing) throw LoopError("product left the norm-one set: " + to_string(a));
        return i;
    }
    Index product(Index a, Index b) const { return lookup(zorn_mul(elements[a], elements[b])); }
};

}  // namespace detail

/// Every norm-one matrix of C(GF(q)), found by scanning all q^8 tuples; ascending
/// in the (a1, v12, v21, a2) component order under field enumeration order.
inline std::vector<ZornMatrix> enumerate_m0(const FieldSpec& spec, bool force = false) {
    check_enumeration_guard(spec, force);
    const auto f = enumerate_elements(spec);
    const std::size_t q = f.size();
    std::vector<ZornMatrix> out;
    std::size_t d[8] = {};
    while (true) {
        const auto n = f[d[0]] * f[d[7]] - (f[d[1]] * f[d[4]] + f[d[2]] * f[d[5]] + f[d[3]] * f[d[6]]);
        if (n.is_one())
            out.push_back({f[d[0]], {f[d[1]], f[d[2]], f[d[3]]}, {f[d[4]], f[d[5]], f[d[6]]}, f[d[7]]});
        int i = 7;
        while (i >= 0 && ++d[i] == q) d[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

/// M0(GF(q)) as a FiniteLoop together with its matrices.
struct M0Loop {
    FieldSpec spec;
    std::shared_ptr<const detail::M0State> state;
    FiniteLoop loop;
    Index identity = 0;
    Index minus_one = 0;

    [[nodiscard]] const std::vector<ZornMatrix>& elements() const noexcept { return state->elements; }
    [[nodiscard]] const ZornMatrix& element(Index i) const { return state->elements.at(i); }
    [[nodiscard]] std::size_t size() const noexcept { return state->elements.size(); }
    /// Index of a matrix, or nullopt when it is not of norm one.
    [[nodiscard]] std::optional<Index> index_of(const ZornMatrix& a) const {
        if (!(a.field() == spec) || !is_norm_one(a)) return std::nullopt;
        return state->index.find(detail::zorn_code(a, state->q));
    }
};

/// Builds the loop of norm-one matrices under zorn_mul. Up to `table_cutoff`
/// elements the full Cayley table is computed (which also verifies closure for
/// every pair); above it the loop is oracle-backed, with divisions a\b = a^-1 b
/// and b/a = b a^-1 from the inverse property.
inline M0Loop build_m0_loop(const FieldSpec& spec, const BuildOptions& options = {}) {
    auto elements = enumerate_m0(spec, options.force);
    const std::uint64_t q = spec.order();
    std::vector<std::uint64_t> codes;
    codes.reserve(elements.size());
    for (const auto& a : elements) codes.push_back(detail::zorn_code(a, q));
    std::uint64_t universe = 1;
    for (int i = 0; i < 8; ++i) universe *= q;
    auto state = std::make_shared<detail::M0State>(detail::M0State{q, std::move(elements), detail::CodeIndex(universe, codes)});
    const std::size_t n = state->elements.size();
    const Index identity = state->lookup(ZornMatrix::identity(spec));
    const Index minus_one = state->lookup(zorn_neg(ZornMatrix::identity(spec)));
    auto labeler = [state](Index i) { return to_string(state->elements[i]); };

    if (n <= options.table_cutoff) {
        std::vector<Index> table(n * n);
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b) table[std::size_t{a} * n + b] = state->product(a, b);
        auto loop = FiniteLoop::from_table(n, identity, std::move(table), labeler);
        return {spec, state, std::move(loop), identity, minus_one};
    }

    auto inverses = std::make_shared<std::vector<Index>>(n);
    for (Index i = 0; i < n; ++i) (*inverses)[i] = state->lookup(inverse(state->elements[i]));
    FiniteLoop::OracleOptions opts;
    opts.left_divide = [state, inverses](Index a, Index b) { return state->product((*inverses)[a], b); };
    opts.right_divide = [state, inverses](Index a, Index b) { return state->product(b, (*inverses)[a]); };
    opts.labeler = labeler;
    opts.seed = options.seed;
    auto loop = FiniteLoop::from_oracle(n, identity, [state](Index a, Index b) { return state->product(a, b); },
                                        std::move(opts));
    return {spec, state, std::move(loop), identity, minus_one};
}

/// M0 together with M = M0 / <-1>.
struct PaigeDescriptor {
    M0Loop m0;
    SubloopHandle minus_one_subloop;  // <-1>, built by closure
    FiniteLoop quotient_loop;         // the same loop as m0.loop in characteristic 2
    std::vector<Index> coset_of;
    std::vector<Index> representatives;
    bool quotient_taken = false;
    std::string caveat;

    [[nodiscard]] const FieldSpec& spec() const noexcept { return m0.spec; }
};

/// Builds M0 and quotients by <-1> = subloop_closure({-I}); in characteristic 2
/// -I = I and M0 itself is returned. Oracle-backed parents get sampled
/// normality and coset checks, recorded in `caveat`.
inline PaigeDescriptor build_paige_loop(const FieldSpec& spec, const BuildOptions& options = {}) {
    auto m0 = build_m0_loop(spec, options);
    auto minus = subloop_closure(m0.loop, {m0.minus_one});
    if (minus.is_trivial()) {
        std::vector<Index> identity_map(m0.size());
        std::iota(identity_map.begin(), identity_map.end(), Index{0});
        FiniteLoop same = m0.loop;
        return {std::move(m0), std::move(minus), std::move(same), identity_map, identity_map, false, {}};
    }
    QuotientOptions qopts;
    std::string caveat;
    if (!m0.loop.is_table_backed()) {
        qopts.verification = Sampled{options.verification_samples, options.seed};
        caveat = "normality of <-1> and coset-product independence checked on " +
                 std::to_string(options.verification_samples) + " seeded samples";
    }
    auto q = quotient(m0.loop, minus, qopts);
    return {std::move(m0), std::move(minus), std::move(q.loop), std::move(q.coset_of), std::move(q.representatives),
            true, std::move(caveat)};
}

struct F5WitnessReport {
    FieldElement alpha;
    FieldElement alpha_inverse;
    ZornMatrix x;
    FieldElement norm_x;
    ZornMatrix x_squared;
    ZornMatrix minus_one;
    std::vector<ZornMatrix> powers;  // x, x^2, ... up to the identity
    bool alpha_generates = false;
    bool x_in_m0 = false;
    bool squares_to_minus_one = false;
    bool negated_squares_to_minus_one = false;
    bool minus_one_in_cyclic = false;

    [[nodiscard]] bool passed() const noexcept {
        return alpha_generates && x_in_m0 && squares_to_minus_one && negated_squares_to_minus_one && minus_one_in_cyclic;
    }
};

/// Over GF(5): alpha generates GF(5)*, x = diag(alpha^-1, alpha) has norm one and
/// x^2 = (-x)^2 = -1, so whichever of +-x lies in a would-be direct complement H
/// of the center puts -1 into H as well.
inline F5WitnessReport f5_direct_factor_witness() {
    const auto f = FieldSpec::prime(5);
    const auto alpha = multiplicative_generator(f);
    const auto alpha_inv = inv(alpha);
    const auto x = ZornMatrix::diag(alpha_inv, alpha);
    const auto minus_one = zorn_neg(ZornMatrix::identity(f));
    const auto x2 = zorn_mul(x, x);
    F5WitnessReport r{alpha, alpha_inv, x, norm(x), x2, minus_one, {}, false, false, false, false, false};
    r.alpha_generates = multiplicative_order(alpha) == f.order() - 1;
    r.x_in_m0 = is_norm_one(x) && is_norm_one(zorn_neg(x));
    r.squares_to_minus_one = x2 == minus_one;
    r.negated_squares_to_minus_one = zorn_mul(zorn_neg(x), zorn_neg(x)) == minus_one;
    auto power = x;
    const auto one = ZornMatrix::identity(f);
    for (int i = 0; i < 64; ++i) {
        r.powers.push_back(power);
        if (power == minus_one) r.minus_one_in_cyclic = true;
        if (power == one) break;
        power = zorn_mul(power, x);
    }
    return r;
}

struct CenterDichotomyReport {
    std::string field;
    std::uint32_t characteristic = 0;
    std::size_t m0_order = 0;
    std::vector<std::string> center;  // element renderings
    std::size_t expected_order = 0;
    bool matches = false;
    std::string caveat;
};

/// Computes center(M0(GF(q))) and compares it with {I} (characteristic 2) or
/// {I, -I} (otherwise). `associator_sample` samples the associator phase for
/// commutant survivors other than the identity.
inline CenterDichotomyReport center_dichotomy_check(const FieldSpec& spec, const BuildOptions& options = {},
                                                    const std::optional<Sampled>& associator_sample = std::nullopt) {
    auto m0 = build_m0_loop(spec, options);
    const auto z = center(m0.loop, associator_sample);
    CenterDichotomyReport r;
    r.field = spec.to_string();
    r.characteristic = spec.characteristic();
    r.m0_order = m0.size();
    for (auto i : z.members()) r.center.push_back(to_string(m0.element(i)));
    std::vector<Index> expected{m0.identity};
    if (spec.characteristic() != 2) expected.push_back(m0.minus_one);
    std::sort(expected.begin(), expected.end());
    r.expected_order = expected.size();
    r.matches = z.members() == expected;
    if (associator_sample)
        r.caveat = "associator phase sampled with " + std::to_string(associator_sample->count) + " pairs per survivor";
    return r;
}

}  // namespace paige
