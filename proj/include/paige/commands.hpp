#pragma once
/**
 * @file commands.hpp
 * @brief Subcommands behind the `paige` executable, callable from tests.
 *
 * Each command writes a line-oriented "key = value" report (or one JSON
 * object with the same keys when `json` is set) and returns an exit code.
 */

#include <paige/identities.hpp>
#include <paige/paige_loop.hpp>
#include <paige/table_io.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace paige {

enum ExitCode : int {
    kExitPass = 0,
    kExitFailure = 1,  // a requested verification failed
    kExitUsage = 2,    // bad flags, field spec or element text
    kExitGuard = 3,    // feasibility guard, or an export that needs a table
};

struct CommandConfig {
    std::string subcommand;
    std::string field = "gf:2";
    bool exhaustive = false;
    std::optional<std::uint64_t> sample;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> checks;
    std::string out;
    bool force = false;
    bool json = false;
    std::vector<std::string> operands;  // mul: lhs, rhs
};

/// Loop sweeps above this many triples need --sample or --force.
inline constexpr std::uint64_t kMaxExhaustiveTriples = 1'000'000'000;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered key/value report.
class Report {
public:
    void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }

    void write(std::ostream& out, bool json) const {
        if (!json) {
            for (const auto& [k, v] : rows_) out << k << " = " << v << '\n';
            return;
        }
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [k, v] : rows_) j[k] = v;
        out << j.dump(2) << '\n';
    }

    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& rows() const noexcept { return rows_; }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

namespace detail {

inline std::optional<Sampled> sample_mode(const CommandConfig& cfg) {
    if (cfg.exhaustive && cfg.sample) throw UsageError("--exhaustive and --sample are mutually exclusive");
    if (cfg.sample && !cfg.seed) throw UsageError("--sample requires --seed");
    if (cfg.sample && *cfg.sample == 0) throw UsageError("--sample must be positive");
    if (cfg.sample) return Sampled{*cfg.sample, *cfg.seed};
    return std::nullopt;
}

inline std::string render_set(const std::vector<std::string>& items) {
    std::string s = "{";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
    return s + "}";
}

inline std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

inline std::string render_witness(const M0Loop& m, const std::vector<Index>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + to_string(m.element(w[i]));
    return s;
}

inline bool report_loop_checks(Report& r, const std::string& prefix, const LoopCheckReport& rep, const M0Loop& m) {
    for (const auto& c : rep.checks) {
        r.add(prefix + "." + c.name, verdict(c.passed()) + " (" + std::to_string(c.tested) + " tested, " +
                                         std::to_string(c.failures) + " failures)");
        if (!c.passed()) r.add(prefix + "." + c.name + ".witness", render_witness(m, c.witness));
    }
    r.add(prefix, verdict(rep.passed()));
    return rep.passed();
}

template <class Body>
int guarded(std::ostream& out, std::ostream& err, bool json, Body body) {
    Report r;
    int code = kExitPass;
    try {
        code = body(r);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error at position " << e.position() << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const GuardError& e) {
        err << "guard: " << e.what() << '\n';
        return kExitGuard;
    } catch (const FieldError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    r.write(out, json);
    return code;
}

}  // namespace detail

/// identities: runs the algebra identity sweep.
inline int cmd_identities(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(out, err, cfg.json, [&](Report& r) {
        const auto spec = parse_field_spec(cfg.field);
        const auto sample = detail::sample_mode(cfg);
        if (!cfg.exhaustive && !sample) throw UsageError("choose --exhaustive or --sample N --seed S");
        if (cfg.exhaustive) {
            if (!spec.is_finite()) throw UsageError("--exhaustive needs a finite field");
            if (spec.order() > 2 && !cfg.force)
                throw GuardError("exhaustive pair sweep over " + spec.to_string() + " has " +
                                 std::to_string(spec.order()) + "^16 pairs; use --sample or --force");
        }
        const auto rep = cfg.exhaustive ? run_identity_sweep(spec, Exhaustive{}) : run_identity_sweep(spec, *sample);
        r.add("field", rep.field);
        r.add("mode", rep.exhaustive ? "exhaustive" : "sampled");
        r.add(rep.exhaustive ? "elements" : "samples", rep.samples);
        if (sample) r.add("seed", sample->seed);
        for (const auto& c : rep.checks) {
            r.add(c.name, detail::verdict(c.passed()) + " (" + std::to_string(c.tested) + " tested, " +
                              std::to_string(c.failures) + " failures)");
            if (!c.passed()) r.add(c.name + ".counterexample", c.counterexample);
        }
        r.add("result", detail::verdict(rep.passed()));
        return rep.passed() ? kExitPass : kExitFailure;
    });
}

/// paige: builds M0 and M and runs the requested checks
/// (order, moufang, center, simple, antiautomorphism, nonassociative).
inline int cmd_paige(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(out, err, cfg.json, [&](Report& r) {
        const auto spec = parse_field_spec(cfg.field);
        const auto sample = detail::sample_mode(cfg);
        auto checks = cfg.checks.empty() ? std::vector<std::string>{"order"} : cfg.checks;
        for (const auto& c : checks)
            if (c != "order" && c != "moufang" && c != "center" && c != "simple" && c != "antiautomorphism" &&
                c != "nonassociative")
                throw UsageError("unknown check '" + c + "'");
        if (!spec.is_finite()) throw UsageError("paige needs a finite field");
        check_enumeration_guard(spec, cfg.force);

        BuildOptions opts;
        opts.force = cfg.force;
        opts.seed = cfg.seed.value_or(0);
        const auto d = build_paige_loop(spec, opts);
        const auto& m = d.m0;
        const std::uint64_t n = m.size();
        const bool small_cube = n * n * n <= kMaxExhaustiveTriples;
        auto loop_mode = [&](const char* what) -> SweepMode {
            if (sample) return *sample;
            if (!small_cube && !cfg.force)
                throw GuardError(std::string(what) + " over " + std::to_string(n) +
                                 " elements is too large for an exhaustive sweep; use --sample N --seed S or --force");
            return Exhaustive{};
        };

        r.add("field", spec.to_string());
        bool ok = true;
        for (const auto& c : checks) {
            if (c == "order") {
                r.add("m0_order", n);
                r.add("m0_order_formula", m0_order_formula(spec.order()));
                r.add("paige_order", static_cast<std::uint64_t>(d.quotient_loop.size()));
                r.add("quotient_taken", d.quotient_taken);
                ok = ok && n == m0_order_formula(spec.order());
            } else if (c == "moufang") {
                ok = detail::report_loop_checks(r, "moufang", check_moufang(m.loop, loop_mode("moufang")), m) && ok;
            } else if (c == "antiautomorphism") {
                ok = detail::report_loop_checks(r, "antiautomorphism",
                                                inverse_antiautomorphism_check(m.loop, loop_mode("antiautomorphism")), m) &&
                     ok;
            } else if (c == "center") {
                std::optional<Sampled> assoc = sample;
                if (!assoc && !m.loop.is_table_backed() && !cfg.force)
                    throw GuardError("center of an oracle-backed loop needs --sample N --seed S or --force");
                const auto z = center(m.loop, assoc);
                std::vector<std::string> items;
                for (auto i : z.members()) items.push_back(to_string(m.element(i)));
                const std::size_t expected = spec.characteristic() == 2 ? 1 : 2;
                const bool matches = z.size() == expected && z.contains(m.identity) && z.contains(m.minus_one);
                r.add("center", detail::render_set(items));
                r.add("center_order", static_cast<std::uint64_t>(z.size()));
                r.add("center_expected_order", static_cast<std::uint64_t>(expected));
                r.add("center_check", detail::verdict(matches));
                if (assoc) r.add("center_caveat", "associator phase sampled");
                ok = ok && matches;
            } else if (c == "simple") {
                std::optional<Sampled> gens = sample;
                if (!gens && spec.order() > kFullSimplicityMaxOrder && !cfg.force)
                    throw GuardError("full simplicity sweep is limited to q <= " +
                                     std::to_string(kFullSimplicityMaxOrder) + "; use --sample N --seed S or --force");
                const auto s = is_simple(d.quotient_loop, gens);
                r.add("simple", s.simple ? "simple" : "not simple");
                r.add("simple_generators_tested", s.generators_tested);
                if (s.witness) r.add("simple_witness_order", static_cast<std::uint64_t>(s.witness->size()));
                if (!s.caveat.empty()) r.add("simple_caveat", s.caveat);
                ok = ok && s.simple;
            } else if (c == "nonassociative") {
                std::optional<std::vector<Index>> found;
                const Index limit = static_cast<Index>(std::min<std::uint64_t>(n, 64));
                for (Index a = 0; a < limit && !found; ++a)
                    for (Index b = 0; b < limit && !found; ++b)
                        for (Index cc = 0; cc < n && !found; ++cc) {
                            const Index u = loop_associator(m.loop, a, b, cc);
                            if (u != m.identity) found = std::vector<Index>{a, b, cc, u};
                        }
                if (found) {
                    const auto& w = *found;
                    r.add("nonassociative", "pass");
                    r.add("nonassociative.triple", detail::render_witness(m, {w[0], w[1], w[2]}));
                    r.add("nonassociative.associator", to_string(m.element(w[3])));
                    r.add("nonassociative.associator_norm", norm(m.element(w[3])).to_string());
                } else {
                    r.add("nonassociative", "fail");
                    ok = false;
                }
            }
        }
        if (!d.caveat.empty()) r.add("caveat", d.caveat);
        r.add("result", detail::verdict(ok));
        return ok ? kExitPass : kExitFailure;
    });
}

/// export: writes the M0 Cayley table to `out`, and M to `out + ".M"` when a
/// quotient was taken.
inline int cmd_export(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(out, err, cfg.json, [&](Report& r) {
        if (cfg.out.empty()) throw UsageError("export needs --out PATH");
        const auto spec = parse_field_spec(cfg.field);
        if (!spec.is_finite()) throw UsageError("export needs a finite field");
        BuildOptions opts;
        opts.force = cfg.force;
        const auto d = build_paige_loop(spec, opts);
        if (!d.m0.loop.is_table_backed())
            throw GuardError("M0 over " + spec.to_string() + " has " + std::to_string(d.m0.size()) +
                             " elements, above the table cutoff; nothing to export");
        auto write = [&](const FiniteLoop& loop, const std::string& path) {
            std::ofstream f(path);
            if (!f) throw UsageError("cannot open " + path + " for writing");
            write_cayley_table(loop, f);
            f.close();
            if (!f) throw UsageError("write to " + path + " failed");
        };
        write(d.m0.loop, cfg.out);
        r.add("field", spec.to_string());
        r.add("m0", cfg.out);
        r.add("m0_order", static_cast<std::uint64_t>(d.m0.size()));
        if (d.quotient_taken) {
            write(d.quotient_loop, cfg.out + ".M");
            r.add("paige", cfg.out + ".M");
            r.add("paige_order", static_cast<std::uint64_t>(d.quotient_loop.size()));
        }
        return kExitPass;
    });
}

/// mul: product of two matrices given in text form.
inline int cmd_mul(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.operands.size() != 2) {
        err << "usage error: mul takes exactly two matrices\n";
        return kExitUsage;
    }
    FieldSpec spec = FieldSpec::rational();
    try {
        spec = parse_field_spec(cfg.field);
    } catch (const ParseError& e) {
        err << "parse error in --field at position " << e.position() << ": " << e.what() << '\n';
        return kExitUsage;
    }
    ZornMatrix product = ZornMatrix::zero(spec);
    for (int k = 0; k < 2; ++k) {
        try {
            const auto m = parse_zorn(spec, cfg.operands[k]);
            product = k == 0 ? m : zorn_mul(product, m);
        } catch (const ParseError& e) {
            err << "parse error in operand " << k + 1 << " at position " << e.position() << ": " << e.what() << '\n';
            return kExitUsage;
        } catch (const FieldError& e) {
            err << "error in operand " << k + 1 << ": " << e.what() << '\n';
            return kExitUsage;
        }
    }
    if (cfg.json) {
        Report r;
        r.add("product", to_string(product));
        r.write(out, true);
    } else {
        out << to_string(product) << '\n';
    }
    return kExitPass;
}

/// Prints a witness report; nonzero when any of its checks failed.
inline int emit_f5_witness(const F5WitnessReport& w, std::ostream& out, bool json = false) {
    Report r;
    r.add("field", w.alpha.spec().to_string());
    r.add("alpha", w.alpha.to_string());
    r.add("alpha_generates", w.alpha_generates);
    r.add("alpha^-1", w.alpha_inverse.to_string());
    r.add("x", to_string(w.x));
    r.add("norm(x)", w.norm_x.to_string());
    r.add("x^2", w.squares_to_minus_one ? std::string("-1") : to_string(w.x_squared));
    r.add("x^2_matrix", to_string(w.x_squared));
    r.add("(-x)^2", w.negated_squares_to_minus_one ? "-1" : "not -1");
    r.add("order(x)", static_cast<std::uint64_t>(w.powers.size()));
    r.add("-1_in_<x>", w.minus_one_in_cyclic);
    r.add("x_in_m0", w.x_in_m0);
    r.add("result", detail::verdict(w.passed()));
    r.write(out, json);
    return w.passed() ? kExitPass : kExitFailure;
}

inline int cmd_f5_witness(const CommandConfig& cfg, std::ostream& out, std::ostream&) {
    return emit_f5_witness(f5_direct_factor_witness(), out, cfg.json);
}

/// field-info: characteristic, order, modulus and a multiplicative generator.
inline int cmd_field_info(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(out, err, cfg.json, [&](Report& r) {
        const auto spec = parse_field_spec(cfg.field);
        r.add("field", spec.to_string());
        r.add("kind", spec.kind() == FieldKind::rational ? "rational"
                      : spec.kind() == FieldKind::prime  ? "prime"
                                                         : "extension");
        r.add("characteristic", static_cast<std::uint64_t>(spec.characteristic()));
        if (!spec.is_finite()) {
            r.add("order", "infinite");
            return kExitPass;
        }
        r.add("order", static_cast<std::uint64_t>(spec.order()));
        r.add("degree", static_cast<std::uint64_t>(spec.degree()));
        if (spec.degree() > 1) {
            std::string poly;
            const auto& mod = spec.modulus();
            for (std::size_t i = 0; i < mod.size(); ++i) poly += (i ? "," : "") + std::to_string(mod[i]);
            r.add("modulus", poly);
        }
        const auto g = multiplicative_generator(spec);
        r.add("generator", g.to_string());
        if (spec.order() <= kDefaultMaxOrder || cfg.force) r.add("m0_order", m0_order_formula(spec.order()));
        return kExitPass;
    });
}

inline int run_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.subcommand == "identities") return cmd_identities(cfg, out, err);
    if (cfg.subcommand == "paige") return cmd_paige(cfg, out, err);
    if (cfg.subcommand == "export") return cmd_export(cfg, out, err);
    if (cfg.subcommand == "mul") return cmd_mul(cfg, out, err);
    if (cfg.subcommand == "f5-witness") return cmd_f5_witness(cfg, out, err);
    if (cfg.subcommand == "field-info") return cmd_field_info(cfg, out, err);
    err << "usage error: unknown subcommand '" << cfg.subcommand << "'\n";
    return kExitUsage;
}

}  // namespace paige
