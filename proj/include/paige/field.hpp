#pragma once
/**
 * @file field.hpp
 * @brief Exact arithmetic over GF(p), GF(p^k) and the rationals.
 *
 * A FieldSpec is a cheap handle to an interned, immutable field description.
 * Two specs compare equal iff they describe the same field (same kind,
 * characteristic, degree and modulus), and equal specs share one descriptor,
 * so field checks on the arithmetic hot path are a pointer comparison.
 *
 * Finite field elements are stored as a code in [0, q): the element
 * c0 + c1 t + ... + c_{k-1} t^{k-1} has code c0 + c1 p + ... + c_{k-1} p^{k-1}.
 * Ascending code order is the enumeration order of the field.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace paige {

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public FieldError {
public:
    DivisionByZero() : FieldError("division by zero") {}
};

/// Malformed text input; carries the 0-based offset of the offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

enum class FieldKind { prime, extension, rational };

namespace detail {

// Finite fields above this order fall back to direct polynomial arithmetic.
inline constexpr std::uint64_t kTableOrderLimit = 256;
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 31;

struct FieldData {
    FieldKind kind = FieldKind::rational;
    std::uint32_t p = 0;
    std::uint32_t k = 1;
    std::vector<std::uint32_t> modulus;  // c0..ck, monic; extension only
    std::uint32_t order = 0;             // p^k, 0 for the rationals
    std::vector<std::uint32_t> powers;   // p^i for i < k
    std::vector<std::uint32_t> add_table;
    std::vector<std::uint32_t> mul_table;
    std::vector<std::uint32_t> inv_table;
    std::string text;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<std::uint32_t>;  // low degree first

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0: a^(p-2)
    std::uint64_t result = 1, base = a % p;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of f modulo g over GF(p); g nonzero.
inline Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    const std::uint64_t lead_inv = inv_mod(g.back(), p);
    while (f.size() >= g.size()) {
        const std::uint64_t c = f.back() * lead_inv % p;
        const std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i <= dg; ++i) {
            const std::uint64_t sub = c * g[i] % p;
            f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
        }
        trim(f);
    }
    return f;
}

/// True iff the monic polynomial f has no monic factor of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return deg == 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

inline std::vector<std::uint32_t> digits(const FieldData& f, std::uint32_t code) {
    std::vector<std::uint32_t> d(f.k);
    for (std::uint32_t i = 0; i < f.k; ++i) {
        d[i] = code % f.p;
        code /= f.p;
    }
    return d;
}

inline std::uint32_t from_digits(const FieldData& f, const std::vector<std::uint32_t>& d) {
    std::uint64_t code = 0;
    for (std::uint32_t i = f.k; i-- > 0;) code = code * f.p + (i < d.size() ? d[i] : 0);
    return static_cast<std::uint32_t>(code);
}

inline std::uint32_t raw_add(const FieldData& f, std::uint32_t a, std::uint32_t b) {
    if (f.kind == FieldKind::prime) {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= f.p ? s - f.p : s);
    }
    if (!f.add_table.empty()) return f.add_table[std::size_t{a} * f.order + b];
    std::uint64_t code = 0;
    for (std::uint32_t i = f.k; i-- > 0;) {
        const std::uint32_t da = a / f.powers[i] % f.p;
        const std::uint32_t db = b / f.powers[i] % f.p;
        code = code * f.p + (da + db) % f.p;
    }
    return static_cast<std::uint32_t>(code);
}

inline std::uint32_t raw_neg(const FieldData& f, std::uint32_t a) {
    if (f.kind == FieldKind::prime) return a == 0 ? 0 : f.p - a;
    std::uint64_t code = 0;
    for (std::uint32_t i = f.k; i-- > 0;) {
        const std::uint32_t da = a / f.powers[i] % f.p;
        code = code * f.p + (da == 0 ? 0 : f.p - da);
    }
    return static_cast<std::uint32_t>(code);
}

inline std::uint32_t poly_mul_code(const FieldData& f, std::uint32_t a, std::uint32_t b) {
    const auto da = digits(f, a);
    const auto db = digits(f, b);
    Poly prod(2 * f.k - 1, 0);
    for (std::uint32_t i = 0; i < f.k; ++i)
        for (std::uint32_t j = 0; j < f.k; ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % f.p);
    return from_digits(f, poly_mod(std::move(prod), f.modulus, f.p));
}

inline std::uint32_t raw_mul(const FieldData& f, std::uint32_t a, std::uint32_t b) {
    if (f.kind == FieldKind::prime) return static_cast<std::uint32_t>(std::uint64_t{a} * b % f.p);
    if (!f.mul_table.empty()) return f.mul_table[std::size_t{a} * f.order + b];
    return poly_mul_code(f, a, b);
}

inline std::uint32_t raw_inv(const FieldData& f, std::uint32_t a) {
    if (a == 0) throw DivisionByZero();
    if (f.kind == FieldKind::prime) return inv_mod(a, f.p);
    if (!f.inv_table.empty()) return f.inv_table[a];
    std::uint32_t result = 1, base = a;
    for (std::uint64_t e = f.order - 2; e > 0; e >>= 1) {
        if (e & 1) result = raw_mul(f, result, base);
        base = raw_mul(f, base, base);
    }
    return result;
}

inline void build_tables(FieldData& f) {
    if (f.kind != FieldKind::extension || f.order > kTableOrderLimit) return;
    const std::size_t q = f.order;
    std::vector<std::uint32_t> add(q * q), mul(q * q), inv(q, 0);
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
            add[a * q + b] = raw_add(f, a, b);
            mul[a * q + b] = poly_mul_code(f, a, b);
        }
    for (std::uint32_t a = 1; a < q; ++a)
        for (std::uint32_t b = 1; b < q; ++b)
            if (mul[a * q + b] == 1) inv[a] = b;
    f.add_table = std::move(add);
    f.mul_table = std::move(mul);
    f.inv_table = std::move(inv);
}

inline std::string describe(FieldKind kind, std::uint32_t p, std::uint32_t k, const Poly& modulus) {
    if (kind == FieldKind::rational) return "q";
    std::string s = "gf:" + std::to_string(p);
    if (kind == FieldKind::prime) return s;
    s += "^" + std::to_string(k) + ":";
    for (std::size_t i = 0; i < modulus.size(); ++i) s += (i ? "," : "") + std::to_string(modulus[i]);
    return s;
}

/// Interned descriptors live for the whole program, so elements may hold raw pointers.
inline const FieldData* intern(FieldKind kind, std::uint32_t p, std::uint32_t k, Poly modulus) {
    static std::mutex mutex;
    static std::map<std::string, std::unique_ptr<FieldData>> registry;
    std::string key = describe(kind, p, k, modulus);
    std::lock_guard lock(mutex);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second.get();
    auto data = std::make_unique<FieldData>();
    data->kind = kind;
    data->p = p;
    data->k = k;
    data->modulus = std::move(modulus);
    data->text = key;
    if (kind != FieldKind::rational) {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            data->powers.push_back(static_cast<std::uint32_t>(q));
            q *= p;
        }
        data->order = static_cast<std::uint32_t>(q);
    }
    build_tables(*data);
    return registry.emplace(std::move(key), std::move(data)).first->second.get();
}

}  // namespace detail

class FieldElement;

/// Handle to an exact field: GF(p), GF(p^k) with a monic irreducible modulus, or Q.
class FieldSpec {
public:
    static FieldSpec rational() { return FieldSpec(detail::intern(FieldKind::rational, 0, 1, {})); }

    static FieldSpec prime(std::uint64_t p) {
        if (!detail::is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
        if (p >= detail::kMaxFieldOrder) throw FieldError("characteristic too large");
        return FieldSpec(detail::intern(FieldKind::prime, static_cast<std::uint32_t>(p), 1, {}));
    }

    /// GF(p^k); without a modulus the lexicographically smallest monic irreducible
    /// (coefficients compared c0 first) is used.
    static FieldSpec extension(std::uint64_t p, std::uint32_t k,
                               std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
        if (!detail::is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
        if (k == 0) throw FieldError("extension degree must be at least 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            q *= p;
            if (q >= detail::kMaxFieldOrder) throw FieldError("field order too large");
        }
        const auto p32 = static_cast<std::uint32_t>(p);
        if (k == 1) return prime(p);
        if (!modulus) return FieldSpec(detail::intern(FieldKind::extension, p32, k, default_modulus(p32, k)));
        auto& m = *modulus;
        if (m.size() != k + 1) throw FieldError("modulus must have exactly k+1 coefficients");
        for (auto c : m)
            if (c >= p) throw FieldError("modulus coefficient out of range");
        if (m.back() != 1) throw FieldError("modulus is not monic");
        if (!detail::is_irreducible(m, p32)) throw FieldError("modulus is reducible");
        return FieldSpec(detail::intern(FieldKind::extension, p32, k, std::move(m)));
    }

    [[nodiscard]] FieldKind kind() const noexcept { return data_->kind; }
    [[nodiscard]] bool is_finite() const noexcept { return data_->kind != FieldKind::rational; }
    /// p for finite fields, 0 for Q.
    [[nodiscard]] std::uint32_t characteristic() const noexcept { return data_->p; }
    [[nodiscard]] std::uint32_t degree() const noexcept { return data_->k; }
    [[nodiscard]] const std::vector<std::uint32_t>& modulus() const noexcept { return data_->modulus; }
    /// Number of elements; throws for Q.
    [[nodiscard]] std::uint32_t order() const {
        if (!is_finite()) throw FieldError("infinite field");
        return data_->order;
    }
    /// Canonical spec text, accepted back by parse_field_spec.
    [[nodiscard]] const std::string& to_string() const noexcept { return data_->text; }

    [[nodiscard]] FieldElement zero() const;
    [[nodiscard]] FieldElement one() const;
    [[nodiscard]] FieldElement from_integer(long long n) const;
    /// Finite fields only: the element with the given code.
    [[nodiscard]] FieldElement from_code(std::uint64_t code) const;
    /// Rationals only.
    [[nodiscard]] FieldElement from_rational(const mpq_class& value) const;

    [[nodiscard]] const detail::FieldData* data() const noexcept { return data_; }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept { return a.data_ == b.data_; }

private:
    friend class FieldElement;

    explicit FieldSpec(const detail::FieldData* data) : data_(data) {}

    static std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k) {
        // Odometer with c0 as the most significant digit gives lexicographic order, c0 first.
        std::vector<std::uint32_t> m(k + 1, 0);
        m[k] = 1;
        while (true) {
            if (detail::is_irreducible(m, p)) return m;
            std::int64_t i = k - 1;
            while (i >= 0 && ++m[i] == p) m[i--] = 0;
            if (i < 0) throw FieldError("no irreducible polynomial found");
        }
    }

    const detail::FieldData* data_;
};

class FieldElement {
public:
    [[nodiscard]] FieldSpec spec() const noexcept { return FieldSpec(field_); }
    [[nodiscard]] const detail::FieldData* field() const noexcept { return field_; }

    [[nodiscard]] bool is_zero() const noexcept {
        if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 0;
        return sgn(std::get<mpq_class>(value_)) == 0;
    }
    [[nodiscard]] bool is_one() const noexcept {
        if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 1;
        return std::get<mpq_class>(value_) == 1;
    }

    /// Code in [0, q); finite fields only.
    [[nodiscard]] std::uint32_t code() const {
        if (auto c = std::get_if<std::uint32_t>(&value_)) return *c;
        throw FieldError("rational elements have no code");
    }
    /// Rationals only.
    [[nodiscard]] const mpq_class& rational() const {
        if (auto r = std::get_if<mpq_class>(&value_)) return *r;
        throw FieldError("finite field elements are not rationals");
    }

    [[nodiscard]] std::string to_string() const {
        if (auto r = std::get_if<mpq_class>(&value_)) return r->get_str();
        const auto c = std::get<std::uint32_t>(value_);
        if (field_->kind == FieldKind::prime) return std::to_string(c);
        const auto d = detail::digits(*field_, c);
        std::string s = std::to_string(d[0]);
        for (std::uint32_t i = 1; i < field_->k; ++i) {
            s += "+" + std::to_string(d[i]) + "*t";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        same_field(a, b);
        if (auto ca = std::get_if<std::uint32_t>(&a.value_))
            return {a.field_, detail::raw_add(*a.field_, *ca, std::get<std::uint32_t>(b.value_))};
        return {a.field_, mpq_class(std::get<mpq_class>(a.value_) + std::get<mpq_class>(b.value_))};
    }
    friend FieldElement operator-(const FieldElement& a) {
        if (auto ca = std::get_if<std::uint32_t>(&a.value_)) return {a.field_, detail::raw_neg(*a.field_, *ca)};
        return {a.field_, mpq_class(-std::get<mpq_class>(a.value_))};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        same_field(a, b);
        if (auto ca = std::get_if<std::uint32_t>(&a.value_)) {
            const auto nb = detail::raw_neg(*a.field_, std::get<std::uint32_t>(b.value_));
            return {a.field_, detail::raw_add(*a.field_, *ca, nb)};
        }
        return {a.field_, mpq_class(std::get<mpq_class>(a.value_) - std::get<mpq_class>(b.value_))};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        same_field(a, b);
        if (auto ca = std::get_if<std::uint32_t>(&a.value_))
            return {a.field_, detail::raw_mul(*a.field_, *ca, std::get<std::uint32_t>(b.value_))};
        return {a.field_, mpq_class(std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_))};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * inv(b); }

    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    /// Multiplicative inverse; throws DivisionByZero for 0.
    friend FieldElement inv(const FieldElement& a) {
        if (auto ca = std::get_if<std::uint32_t>(&a.value_)) return {a.field_, detail::raw_inv(*a.field_, *ca)};
        const auto& r = std::get<mpq_class>(a.value_);
        if (sgn(r) == 0) throw DivisionByZero();
        return {a.field_, mpq_class(1 / r)};
    }

    /// Equal iff same field and identical canonical representative.
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

private:
    friend class FieldSpec;

    FieldElement(const detail::FieldData* field, std::uint32_t code) : field_(field), value_(code) {}
    FieldElement(const detail::FieldData* field, mpq_class value) : field_(field), value_(std::move(value)) {
        std::get<mpq_class>(value_).canonicalize();
    }

    static void same_field(const FieldElement& a, const FieldElement& b) {
        if (a.field_ != b.field_) throw FieldError("mismatched fields: " + a.field_->text + " vs " + b.field_->text);
    }

    const detail::FieldData* field_;
    std::variant<std::uint32_t, mpq_class> value_;
};

inline FieldElement FieldSpec::zero() const { return from_integer(0); }
inline FieldElement FieldSpec::one() const { return from_integer(1); }

inline FieldElement FieldSpec::from_integer(long long n) const {
    if (!is_finite()) return FieldElement(data_, mpq_class(static_cast<long>(n)));
    const long long p = data_->p;
    return FieldElement(data_, static_cast<std::uint32_t>(((n % p) + p) % p));
}

inline FieldElement FieldSpec::from_code(std::uint64_t code) const {
    if (!is_finite()) throw FieldError("rational field has no element codes");
    if (code >= data_->order) throw FieldError("element code out of range");
    return FieldElement(data_, static_cast<std::uint32_t>(code));
}

inline FieldElement FieldSpec::from_rational(const mpq_class& value) const {
    if (is_finite()) throw FieldError("not a rational field");
    return FieldElement(data_, value);
}

/// p for finite fields, 0 for Q.
inline std::uint32_t characteristic(const FieldSpec& spec) noexcept { return spec.characteristic(); }

/// All q elements in code order (0 first, then 1). Throws for Q.
inline std::vector<FieldElement> enumerate_elements(const FieldSpec& spec) {
    if (!spec.is_finite()) throw FieldError("infinite field cannot be enumerated");
    std::vector<FieldElement> out;
    out.reserve(spec.order());
    for (std::uint32_t c = 0; c < spec.order(); ++c) out.push_back(spec.from_code(c));
    return out;
}

/// Multiplicative order of a nonzero finite field element.
inline std::uint64_t multiplicative_order(const FieldElement& a) {
    if (a.is_zero()) throw DivisionByZero();
    std::uint64_t order = 1;
    FieldElement x = a;
    while (!x.is_one()) {
        x *= a;
        ++order;
    }
    return order;
}

/// Smallest element (in enumeration order) generating the multiplicative group.
inline FieldElement multiplicative_generator(const FieldSpec& spec) {
    if (!spec.is_finite()) throw FieldError("infinite field has no multiplicative generator");
    const std::uint64_t target = spec.order() - 1;
    for (std::uint32_t c = 1; c < spec.order(); ++c) {
        auto g = spec.from_code(c);
        if (multiplicative_order(g) == target) return g;
    }
    throw FieldError("no generator found");
}

namespace detail {

class Cursor {
public:
    Cursor(std::string_view text, std::size_t base) : text_(text), base_(base) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[nodiscard]] bool done() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return done() ? '\0' : text_[pos_]; }
    bool accept(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string digits() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }
    unsigned long long number() {
        const std::size_t at = pos_;
        auto d = digits();
        if (d.size() > 18) throw ParseError("number too large", base_ + at);
        return std::stoull(d);
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + pos_); }
    [[nodiscard]] std::size_t pos() const { return pos_; }

private:
    std::string_view text_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `q` | `gf:p` | `gf:p^k` | `gf:p^k:c0,c1,...,ck`.
inline FieldSpec parse_field_spec(std::string_view text) {
    detail::Cursor cur(text, 0);
    cur.skip_ws();
    if (cur.accept('q')) {
        cur.skip_ws();
        if (!cur.done()) cur.fail("unexpected trailing input");
        return FieldSpec::rational();
    }
    if (!(cur.accept('g') && cur.accept('f') && cur.accept(':'))) cur.fail("expected 'q' or 'gf:'");
    const auto p = cur.number();
    std::uint32_t k = 1;
    std::optional<std::vector<std::uint32_t>> modulus;
    if (cur.accept('^')) {
        const auto kk = cur.number();
        if (kk == 0 || kk > 64) cur.fail("extension degree out of range");
        k = static_cast<std::uint32_t>(kk);
        if (cur.accept(':')) {
            std::vector<std::uint32_t> m;
            do {
                const auto c = cur.number();
                if (c > 0xffffffffULL) cur.fail("modulus coefficient too large");
                m.push_back(static_cast<std::uint32_t>(c));
            } while (cur.accept(','));
            modulus = std::move(m);
        }
    }
    cur.skip_ws();
    if (!cur.done()) cur.fail("unexpected trailing input");
    if (k == 1 && !modulus) return FieldSpec::prime(p);
    return FieldSpec::extension(p, k, std::move(modulus));
}

/// Parses one element rendering: an integer (finite fields), a polynomial in t such as
/// `1+2*t^2` (extension fields), or `n` / `n/d` (rationals). `base` offsets error positions.
inline FieldElement parse_element(const FieldSpec& spec, std::string_view text, std::size_t base = 0) {
    detail::Cursor cur(text, base);
    cur.skip_ws();
    if (cur.done()) cur.fail("empty element");
    if (!spec.is_finite()) {
        std::string s;
        if (cur.accept('-')) s += '-';
        s += cur.digits();
        if (cur.accept('/')) {
            auto d = cur.digits();
            if (d.find_first_not_of('0') == std::string::npos) cur.fail("zero denominator");
            s += "/" + d;
        }
        cur.skip_ws();
        if (!cur.done()) cur.fail("unexpected trailing input");
        return spec.from_rational(mpq_class(s));
    }
    const auto p = spec.characteristic();
    FieldElement t = spec.degree() > 1 ? spec.from_code(p) : spec.zero();
    FieldElement acc = spec.zero();
    bool first = true;
    while (true) {
        cur.skip_ws();
        bool negative = false;
        if (cur.accept('-')) {
            negative = true;
        } else if (!first) {
            if (!cur.accept('+')) break;
            if (cur.accept('-')) negative = true;
        }
        first = false;
        cur.skip_ws();
        FieldElement coeff = spec.one();
        bool has_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coeff = spec.from_integer(static_cast<long long>(cur.number() % p));
            has_coeff = true;
        }
        FieldElement term = coeff;
        bool has_var = false;
        if (has_coeff ? cur.accept('*') : true) {
            if (cur.accept('t')) {
                if (spec.degree() == 1) cur.fail("prime field elements have no variable");
                has_var = true;
                unsigned long long e = 1;
                if (cur.accept('^')) e = cur.number();
                FieldElement power = spec.one();
                for (unsigned long long i = 0; i < e; ++i) power *= t;
                term = coeff * power;
            } else if (has_coeff) {
                cur.fail("expected 't'");
            }
        }
        if (!has_coeff && !has_var) cur.fail("expected a term");
        acc += negative ? -term : term;
    }
    cur.skip_ws();
    if (!cur.done()) cur.fail("unexpected input");
    return acc;
}

}  // namespace paige
