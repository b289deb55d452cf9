#pragma once
/**
 * @file identities.hpp
 * @brief Sweeps of the defining identities of C(F): quadratic identity,
 * composition, alternativity, flexibility and the conjugation laws.
 */

#include <paige/zorn.hpp>

#include <functional>
#include <string>
#include <vector>

namespace paige {

struct IdentityCheck {
    std::string name;
    std::uint64_t tested = 0;
    std::uint64_t failures = 0;
    std::string counterexample;  // first failing arguments, empty when passed

    [[nodiscard]] bool passed() const noexcept { return failures == 0; }
};

struct IdentitySweepReport {
    std::string field;
    bool exhaustive = false;
    std::uint64_t samples = 0;  // elements (exhaustive) or random pairs (sampled)
    std::vector<IdentityCheck> checks;

    [[nodiscard]] bool passed() const noexcept {
        for (const auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }
};

namespace detail {

struct PairIdentity {
    const char* name;
    std::function<bool(const ZornMatrix&, const ZornMatrix&)> holds;
};

inline std::vector<PairIdentity> algebra_identities() {
    return {
        {"quadratic",
         [](const ZornMatrix& a, const ZornMatrix&) {
             return (zorn_mul(a, a) - trace(a) * a + ZornMatrix::scalar(norm(a))).is_zero();
         }},
        {"composition", [](const ZornMatrix& a, const ZornMatrix& b) { return norm(zorn_mul(a, b)) == norm(a) * norm(b); }},
        {"left_alternative", [](const ZornMatrix& a, const ZornMatrix& b) { return algebra_associator(a, a, b).is_zero(); }},
        {"right_alternative",
         [](const ZornMatrix& a, const ZornMatrix& b) { return algebra_associator(b, a, a).is_zero(); }},
        {"flexible", [](const ZornMatrix& a, const ZornMatrix& b) { return algebra_associator(a, b, a).is_zero(); }},
        {"conjugate_norm",
         [](const ZornMatrix& a, const ZornMatrix&) {
             const auto n = ZornMatrix::scalar(norm(a));
             return zorn_mul(a, conjugate(a)) == n && zorn_mul(conjugate(a), a) == n;
         }},
        {"conjugate_involution", [](const ZornMatrix& a, const ZornMatrix&) { return conjugate(conjugate(a)) == a; }},
        {"conjugate_antiautomorphism",
         [](const ZornMatrix& a, const ZornMatrix& b) {
             return conjugate(zorn_mul(a, b)) == zorn_mul(conjugate(b), conjugate(a));
         }},
        {"norm_scaling",
         [](const ZornMatrix& a, const ZornMatrix& b) {
             // b.a1 serves as the scalar
             const auto& s = b.a1;
             return norm(zorn_scale(s, a)) == s * s * norm(a);
         }},
        {"trace_linear",
         [](const ZornMatrix& a, const ZornMatrix& b) {
             const auto& s = b.a2;
             return trace(zorn_add(zorn_scale(s, a), b)) == s * trace(a) + trace(b);
         }},
    };
}

inline void record(IdentityCheck& check, bool ok, const ZornMatrix& a, const ZornMatrix& b) {
    ++check.tested;
    if (ok) return;
    if (check.failures++ == 0) check.counterexample = "a=" + to_string(a) + " b=" + to_string(b);
}

}  // namespace detail

/// Runs every identity over all pairs of C(GF(q)) (exhaustive) or over `count`
/// seeded random pairs. Exhaustive mode is meant for q = 2, where it covers
/// 256^2 pairs per identity.
inline IdentitySweepReport run_identity_sweep(const FieldSpec& f, const SweepMode& mode) {
    IdentitySweepReport report;
    report.field = f.to_string();
    const auto identities = detail::algebra_identities();
    for (const auto& id : identities) report.checks.push_back({id.name, 0, 0, {}});

    auto check_pair = [&](const ZornMatrix& a, const ZornMatrix& b) {
        for (std::size_t i = 0; i < identities.size(); ++i) detail::record(report.checks[i], identities[i].holds(a, b), a, b);
    };

    if (is_exhaustive(mode)) {
        report.exhaustive = true;
        const auto all = enumerate_algebra(f);
        report.samples = all.size();
        for (const auto& a : all)
            for (const auto& b : all) check_pair(a, b);
    } else {
        const auto& s = std::get<Sampled>(mode);
        SampleStream rng(s.seed);
        report.samples = s.count;
        for (std::uint64_t i = 0; i < s.count; ++i) {
            auto a = random_zorn(f, rng);
            auto b = random_zorn(f, rng);
            check_pair(a, b);
        }
    }
    return report;
}

/// Searches C(F) for a triple with nonzero algebra associator, scanning basis-like
/// elements first. Returns the triple rendered as text, or empty if none is found.
inline std::string find_nonassociative_triple(const FieldSpec& f) {
    std::vector<ZornMatrix> basis;
    basis.push_back(ZornMatrix::diag(f.one(), f.zero()));
    basis.push_back(ZornMatrix::diag(f.zero(), f.one()));
    for (int i = 0; i < 3; ++i) {
        basis.push_back({f.zero(), Vec3::unit(f, i), Vec3::zero(f), f.zero()});
        basis.push_back({f.zero(), Vec3::zero(f), Vec3::unit(f, i), f.zero()});
    }
    for (const auto& a : basis)
        for (const auto& b : basis)
            for (const auto& c : basis)
                if (!algebra_associator(a, b, c).is_zero())
                    return "a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(c);
    return {};
}

}  // namespace paige
