#pragma once
/**
 * @file zorn.hpp
 * @brief The split octonions C(F) as Zorn vector matrices.
 *
 * An element is a 2x2 matrix with scalars on the diagonal and vectors in F^3
 * off the diagonal:
 *
 *     [ a1   v12 ]
 *     [ v21  a2  ]
 *
 * The product uses the scalar and vector products of F^3:
 *
 *     a1 b1 + (v12, w21)          a1 w12 + b2 v12 - v21 x w21
 *     b1 v21 + a2 w21 + v12 x w12  a2 b2 + (v21, w12)
 *
 * with trace t(a) = a1 + a2 and norm n(a) = a1 a2 - (v12, v21). Every element
 * satisfies a^2 - t(a) a + n(a) = 0, and n(ab) = n(a) n(b).
 */

#include <paige/field.hpp>
#include <paige/sampling.hpp>

#include <string>
#include <string_view>

namespace paige {

struct Vec3 {
    FieldElement x;
    FieldElement y;
    FieldElement z;

    Vec3(FieldElement x_, FieldElement y_, FieldElement z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
        if (x.field() != y.field() || x.field() != z.field()) throw FieldError("vector components in different fields");
    }

    static Vec3 zero(const FieldSpec& f) { return {f.zero(), f.zero(), f.zero()}; }
    /// Standard basis vector e_axis, axis in {0, 1, 2}.
    static Vec3 unit(const FieldSpec& f, int axis) {
        return {axis == 0 ? f.one() : f.zero(), axis == 1 ? f.one() : f.zero(), axis == 2 ? f.one() : f.zero()};
    }

    [[nodiscard]] FieldSpec field() const { return x.spec(); }
    [[nodiscard]] bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }

    friend bool operator==(const Vec3&, const Vec3&) = default;
    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(const FieldElement& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
};

/// Scalar product (g, d) = g1 d1 + g2 d2 + g3 d3.
inline FieldElement dot(const Vec3& g, const Vec3& d) { return g.x * d.x + g.y * d.y + g.z * d.z; }

/// Vector product g x d = (g2 d3 - g3 d2, g3 d1 - g1 d3, g1 d2 - g2 d1).
inline Vec3 cross(const Vec3& g, const Vec3& d) {
    return {g.y * d.z - g.z * d.y, g.z * d.x - g.x * d.z, g.x * d.y - g.y * d.x};
}

/// Element of C(F). Component order (a1, v12, v21, a2) is also the serialization order.
struct ZornMatrix {
    FieldElement a1;
    Vec3 v12;
    Vec3 v21;
    FieldElement a2;

    ZornMatrix(FieldElement a1_, Vec3 v12_, Vec3 v21_, FieldElement a2_)
        : a1(std::move(a1_)), v12(std::move(v12_)), v21(std::move(v21_)), a2(std::move(a2_)) {
        const auto* f = a1.field();
        if (a2.field() != f || v12.x.field() != f || v21.x.field() != f)
            throw FieldError("matrix components in different fields");
    }

    static ZornMatrix zero(const FieldSpec& f) { return {f.zero(), Vec3::zero(f), Vec3::zero(f), f.zero()}; }
    static ZornMatrix identity(const FieldSpec& f) { return scalar(f.one()); }
    static ZornMatrix scalar(const FieldElement& s) { return diag(s, s); }
    static ZornMatrix diag(const FieldElement& d1, const FieldElement& d2) {
        const auto f = d1.spec();
        return {d1, Vec3::zero(f), Vec3::zero(f), d2};
    }

    [[nodiscard]] FieldSpec field() const { return a1.spec(); }
    [[nodiscard]] bool is_zero() const { return a1.is_zero() && a2.is_zero() && v12.is_zero() && v21.is_zero(); }

    friend bool operator==(const ZornMatrix&, const ZornMatrix&) = default;
};

inline ZornMatrix zorn_mul(const ZornMatrix& a, const ZornMatrix& b) {
    return {a.a1 * b.a1 + dot(a.v12, b.v21),
            a.a1 * b.v12 + b.a2 * a.v12 - cross(a.v21, b.v21),
            b.a1 * a.v21 + a.a2 * b.v21 + cross(a.v12, b.v12),
            a.a2 * b.a2 + dot(a.v21, b.v12)};
}

inline ZornMatrix zorn_add(const ZornMatrix& a, const ZornMatrix& b) {
    return {a.a1 + b.a1, a.v12 + b.v12, a.v21 + b.v21, a.a2 + b.a2};
}

inline ZornMatrix zorn_neg(const ZornMatrix& a) { return {-a.a1, -a.v12, -a.v21, -a.a2}; }

inline ZornMatrix zorn_sub(const ZornMatrix& a, const ZornMatrix& b) {
    return {a.a1 - b.a1, a.v12 - b.v12, a.v21 - b.v21, a.a2 - b.a2};
}

inline ZornMatrix zorn_scale(const FieldElement& s, const ZornMatrix& a) {
    return {s * a.a1, s * a.v12, s * a.v21, s * a.a2};
}

inline ZornMatrix operator*(const ZornMatrix& a, const ZornMatrix& b) { return zorn_mul(a, b); }
inline ZornMatrix operator+(const ZornMatrix& a, const ZornMatrix& b) { return zorn_add(a, b); }
inline ZornMatrix operator-(const ZornMatrix& a, const ZornMatrix& b) { return zorn_sub(a, b); }
inline ZornMatrix operator-(const ZornMatrix& a) { return zorn_neg(a); }
inline ZornMatrix operator*(const FieldElement& s, const ZornMatrix& a) { return zorn_scale(s, a); }

inline FieldElement trace(const ZornMatrix& a) { return a.a1 + a.a2; }

inline FieldElement norm(const ZornMatrix& a) { return a.a1 * a.a2 - dot(a.v12, a.v21); }

/// t(a) 1 - a: swaps the diagonal and negates both vector blocks.
inline ZornMatrix conjugate(const ZornMatrix& a) { return zorn_sub(ZornMatrix::scalar(trace(a)), a); }

class NotInvertible : public FieldError {
public:
    NotInvertible() : FieldError("non-invertible element (norm is zero)") {}
};

/// n(a)^-1 conj(a); throws NotInvertible when n(a) = 0.
inline ZornMatrix inverse(const ZornMatrix& a) {
    const auto n = norm(a);
    if (n.is_zero()) throw NotInvertible();
    return zorn_scale(inv(n), conjugate(a));
}

/// (ab)c - a(bc).
inline ZornMatrix algebra_associator(const ZornMatrix& a, const ZornMatrix& b, const ZornMatrix& c) {
    return zorn_sub(zorn_mul(zorn_mul(a, b), c), zorn_mul(a, zorn_mul(b, c)));
}

/// Membership in M0(F).
inline bool is_norm_one(const ZornMatrix& a) { return norm(a).is_one(); }

/// Renders `[a1;x,y,z|x,y,z;a2]`.
inline std::string to_string(const ZornMatrix& a) {
    auto vec = [](const Vec3& v) { return v.x.to_string() + "," + v.y.to_string() + "," + v.z.to_string(); };
    return "[" + a.a1.to_string() + ";" + vec(a.v12) + "|" + vec(a.v21) + ";" + a.a2.to_string() + "]";
}

/// Parses `[a1; x,y,z | x,y,z; a2]` (whitespace optional). Errors carry the offending offset.
inline ZornMatrix parse_zorn(const FieldSpec& f, std::string_view text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != '[') throw ParseError("expected '['", pos);
    ++pos;
    // Reads one scalar up to the given terminator; structural characters never occur inside a scalar.
    auto scalar = [&](char terminator) {
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != terminator) {
            const char c = text[pos];
            if (c == '[' || c == ']' || c == ';' || c == ',' || c == '|')
                throw ParseError(std::string("expected '") + terminator + "'", pos);
            ++pos;
        }
        if (pos >= text.size()) throw ParseError(std::string("expected '") + terminator + "'", pos);
        auto e = parse_element(f, text.substr(start, pos - start), start);
        ++pos;
        return e;
    };
    auto a1 = scalar(';');
    auto x12 = scalar(',');
    auto y12 = scalar(',');
    auto z12 = scalar('|');
    auto x21 = scalar(',');
    auto y21 = scalar(',');
    auto z21 = scalar(';');
    auto a2 = scalar(']');
    skip();
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    return {a1, {x12, y12, z12}, {x21, y21, z21}, a2};
}

/// Random element drawn from the shared sample stream. Components are drawn in
/// storage order; finite components take one draw (code below q), rational
/// components take two (numerator in [-9, 9], then denominator in [1, 9]).
inline ZornMatrix random_zorn(const FieldSpec& f, SampleStream& rng) {
    auto scalar = [&]() {
        if (f.is_finite()) return f.from_code(rng.below(f.order()));
        const auto num = rng.between(-9, 9);
        const auto den = rng.between(1, 9);
        return f.from_rational(mpq_class(static_cast<long>(num), static_cast<unsigned long>(den)));
    };
    auto a1 = scalar();
    auto x12 = scalar(), y12 = scalar(), z12 = scalar();
    auto x21 = scalar(), y21 = scalar(), z21 = scalar();
    auto a2 = scalar();
    return {a1, {x12, y12, z12}, {x21, y21, z21}, a2};
}

/// All q^8 elements of C(GF(q)) in code order, a1 the most significant digit.
/// Intended for q = 2 (256 elements).
inline std::vector<ZornMatrix> enumerate_algebra(const FieldSpec& f) {
    const auto elems = enumerate_elements(f);
    const std::uint64_t q = elems.size();
    std::uint64_t total = 1;
    for (int i = 0; i < 8; ++i) total *= q;
    std::vector<ZornMatrix> out;
    out.reserve(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t d[8];
        std::uint64_t c = code;
        for (int i = 7; i >= 0; --i) {
            d[i] = c % q;
            c /= q;
        }
        out.push_back({elems[d[0]], {elems[d[1]], elems[d[2]], elems[d[3]]}, {elems[d[4]], elems[d[5]], elems[d[6]]},
                       elems[d[7]]});
    }
    return out;
}

}  // namespace paige
