#pragma once
/**
 * @file loop.hpp
 * @brief Finite loops on indices 0..n-1: divisions, associators, Moufang
 * checks, subloop and normal closures, center, quotients and simplicity.
 *
 * A FiniteLoop is either table-backed (full n x n Cayley table plus both
 * division tables, validated as a Latin square on construction) or
 * oracle-backed (a product callback memoized on demand, spot-checked on
 * construction). Copies share the underlying data.
 */

#include <paige/sampling.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace paige {

using Index = std::uint32_t;

class LoopError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Loops up to this order are stored as full tables.
inline constexpr std::size_t kTableCutoff = 4096;

namespace detail {

struct ProductMemo {
    std::shared_mutex mutex;
    std::unordered_map<std::uint64_t, Index> products;
    std::size_t limit = 0;
};

struct LoopData {
    std::size_t n = 0;
    Index identity = 0;
    std::vector<Index> table;
    std::vector<Index> ldiv;
    std::vector<Index> rdiv;
    std::function<Index(Index, Index)> product;
    std::function<Index(Index, Index)> left_divide;
    std::function<Index(Index, Index)> right_divide;
    std::vector<Index> inverses;
    std::function<std::string(Index)> labeler;
    std::unique_ptr<ProductMemo> memo;
};

}  // namespace detail

class FiniteLoop {
public:
    using Operation = std::function<Index(Index, Index)>;
    using Labeler = std::function<std::string(Index)>;

    struct OracleOptions {
        Operation left_divide;   // u with a*u = b; falls back to a row scan
        Operation right_divide;  // u with u*a = b; falls back to a column scan
        std::size_t spot_checks = 1000;
        std::uint64_t seed = 0;
        std::size_t memo_limit = std::size_t{1} << 24;
        Labeler labeler;
    };

    /// Table-backed loop; `table[i * n + j]` is i*j. Throws LoopError unless the
    /// table is a Latin square with two-sided identity `identity`.
    static FiniteLoop from_table(std::size_t n, Index identity, std::vector<Index> table, Labeler labeler = {}) {
        if (n == 0) throw LoopError("loop must be non-empty");
        if (table.size() != n * n) throw LoopError("table has wrong size");
        if (identity >= n) throw LoopError("identity index out of range");
        auto d = std::make_shared<detail::LoopData>();
        d->n = n;
        d->identity = identity;
        d->ldiv.assign(n * n, kUnset);
        d->rdiv.assign(n * n, kUnset);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const Index c = table[a * n + b];
                if (c >= n) throw LoopError("entry out of range at row " + std::to_string(a) + ", column " + std::to_string(b));
                if (d->ldiv[a * n + c] != kUnset)
                    throw LoopError("not a Latin square: row " + std::to_string(a) + " repeats " + std::to_string(c));
                d->ldiv[a * n + c] = static_cast<Index>(b);
                if (d->rdiv[b * n + c] != kUnset)
                    throw LoopError("not a Latin square: column " + std::to_string(b) + " repeats " + std::to_string(c));
                d->rdiv[b * n + c] = static_cast<Index>(a);
            }
        for (std::size_t i = 0; i < n; ++i)
            if (table[identity * n + i] != i || table[i * n + identity] != i)
                throw LoopError("index " + std::to_string(identity) + " is not a two-sided identity");
        d->table = std::move(table);
        d->inverses.resize(n);
        for (std::size_t i = 0; i < n; ++i) d->inverses[i] = d->ldiv[i * n + identity];
        d->labeler = std::move(labeler);
        return FiniteLoop(std::move(d));
    }

    /// Oracle-backed loop. Checks the identity law and the division oracles on
    /// `spot_checks` random cells; throws LoopError on a violation.
    static FiniteLoop from_oracle(std::size_t n, Index identity, Operation product) {
        return from_oracle(n, identity, std::move(product), OracleOptions{});
    }
    static FiniteLoop from_oracle(std::size_t n, Index identity, Operation product, OracleOptions options) {
        if (n == 0) throw LoopError("loop must be non-empty");
        if (identity >= n) throw LoopError("identity index out of range");
        auto d = std::make_shared<detail::LoopData>();
        d->n = n;
        d->identity = identity;
        d->product = std::move(product);
        d->left_divide = std::move(options.left_divide);
        d->right_divide = std::move(options.right_divide);
        d->labeler = std::move(options.labeler);
        d->memo = std::make_unique<detail::ProductMemo>();
        d->memo->limit = options.memo_limit;
        FiniteLoop loop(std::move(d));
        SampleStream rng(options.seed);
        for (std::size_t s = 0; s < options.spot_checks; ++s) {
            const auto a = static_cast<Index>(rng.below(n));
            const auto b = static_cast<Index>(rng.below(n));
            const Index c = loop.mul(a, b);
            if (c >= n) throw LoopError("oracle product out of range");
            if (loop.mul(identity, a) != a || loop.mul(a, identity) != a)
                throw LoopError("index " + std::to_string(identity) + " is not a two-sided identity");
            if (loop.mul(a, loop.left_divide(a, c)) != c || loop.mul(loop.right_divide(b, c), b) != c)
                throw LoopError("oracle divisions inconsistent with the product");
        }
        auto& inv = loop.data_->inverses;
        inv.resize(n);
        for (std::size_t i = 0; i < n; ++i) inv[i] = loop.left_divide(static_cast<Index>(i), identity);
        return loop;
    }

    [[nodiscard]] std::size_t size() const noexcept { return data_->n; }
    [[nodiscard]] Index identity() const noexcept { return data_->identity; }
    [[nodiscard]] bool is_table_backed() const noexcept { return !data_->table.empty(); }
    /// Row-major Cayley table; empty for oracle-backed loops.
    [[nodiscard]] const std::vector<Index>& table() const noexcept { return data_->table; }

    [[nodiscard]] Index mul(Index a, Index b) const {
        if (!data_->table.empty()) return data_->table[std::size_t{a} * data_->n + b];
        return memoized(a, b);
    }

    /// Unique u with a*u = b.
    [[nodiscard]] Index left_divide(Index a, Index b) const {
        if (!data_->ldiv.empty()) return data_->ldiv[std::size_t{a} * data_->n + b];
        if (data_->left_divide) return data_->left_divide(a, b);
        for (Index u = 0; u < data_->n; ++u)
            if (mul(a, u) == b) return u;
        throw LoopError("left division has no solution");
    }

    /// Unique u with u*a = b.
    [[nodiscard]] Index right_divide(Index a, Index b) const {
        if (!data_->rdiv.empty()) return data_->rdiv[std::size_t{a} * data_->n + b];
        if (data_->right_divide) return data_->right_divide(a, b);
        for (Index u = 0; u < data_->n; ++u)
            if (mul(u, a) == b) return u;
        throw LoopError("right division has no solution");
    }

    /// Right inverse: i * inverse(i) = e.
    [[nodiscard]] Index inverse(Index i) const { return data_->inverses[i]; }

    [[nodiscard]] bool has_labels() const noexcept { return static_cast<bool>(data_->labeler); }
    [[nodiscard]] std::string label(Index i) const { return data_->labeler ? data_->labeler(i) : std::to_string(i); }

    /// True iff both handles share the same underlying loop.
    [[nodiscard]] bool same_as(const FiniteLoop& other) const noexcept { return data_ == other.data_; }

private:
    static constexpr Index kUnset = ~Index{0};

    explicit FiniteLoop(std::shared_ptr<detail::LoopData> d) : data_(std::move(d)) {}

    Index memoized(Index a, Index b) const {
        auto& memo = *data_->memo;
        const std::uint64_t key = std::uint64_t{a} * data_->n + b;
        {
            std::shared_lock lock(memo.mutex);
            auto it = memo.products.find(key);
            if (it != memo.products.end()) return it->second;
        }
        const Index c = data_->product(a, b);
        std::unique_lock lock(memo.mutex);
        if (memo.products.size() < memo.limit) memo.products.emplace(key, c);
        return c;
    }

    std::shared_ptr<detail::LoopData> data_;
};

/// Exhaustive Latin-square test through the public product.
inline bool is_latin_square(const FiniteLoop& loop) {
    const std::size_t n = loop.size();
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t stamp = 0;
    for (Index a = 0; a < n; ++a) {
        ++stamp;
        for (Index b = 0; b < n; ++b) {
            auto& s = seen[loop.mul(a, b)];
            if (s == stamp) return false;
            s = stamp;
        }
        ++stamp;
        for (Index b = 0; b < n; ++b) {
            auto& s = seen[loop.mul(b, a)];
            if (s == stamp) return false;
            s = stamp;
        }
    }
    return true;
}

/// Unique u with ab*c = (a*bc)*u.
inline Index loop_associator(const FiniteLoop& loop, Index a, Index b, Index c) {
    return loop.left_divide(loop.mul(a, loop.mul(b, c)), loop.mul(loop.mul(a, b), c));
}

/// Unique u with ab = (ba)*u.
inline Index commutator(const FiniteLoop& loop, Index a, Index b) {
    return loop.left_divide(loop.mul(b, a), loop.mul(a, b));
}

struct LoopCheck {
    std::string name;
    std::uint64_t tested = 0;
    std::uint64_t failures = 0;
    std::vector<Index> witness;  // first failing arguments

    [[nodiscard]] bool passed() const noexcept { return failures == 0; }
};

struct LoopCheckReport {
    bool exhaustive = true;
    std::vector<LoopCheck> checks;

    [[nodiscard]] bool passed() const noexcept {
        return std::all_of(checks.begin(), checks.end(), [](const LoopCheck& c) { return c.passed(); });
    }
};

namespace detail {

inline void record(LoopCheck& check, bool ok, std::vector<Index> args) {
    ++check.tested;
    if (!ok && check.failures++ == 0) check.witness = std::move(args);
}

template <class Visit>
void for_each_triple(std::size_t n, const SweepMode& mode, Visit&& visit) {
    if (is_exhaustive(mode)) {
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                for (Index z = 0; z < n; ++z) visit(x, y, z);
        return;
    }
    const auto& s = std::get<Sampled>(mode);
    SampleStream rng(s.seed);
    for (std::uint64_t i = 0; i < s.count; ++i) {
        const auto x = static_cast<Index>(rng.below(n));
        const auto y = static_cast<Index>(rng.below(n));
        const auto z = static_cast<Index>(rng.below(n));
        visit(x, y, z);
    }
}

template <class Visit>
void for_each_pair(std::size_t n, const SweepMode& mode, Visit&& visit) {
    if (is_exhaustive(mode)) {
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) visit(x, y);
        return;
    }
    const auto& s = std::get<Sampled>(mode);
    SampleStream rng(s.seed);
    for (std::uint64_t i = 0; i < s.count; ++i) {
        const auto x = static_cast<Index>(rng.below(n));
        const auto y = static_cast<Index>(rng.below(n));
        visit(x, y);
    }
}

}  // namespace detail

/// Checks the four standard forms of the Moufang law, each reported separately:
///   x(y(xz)) = ((xy)x)z,  z(x(yx)) = ((zx)y)x,  (xy)(zx) = x((yz)x),  (xy)(zx) = (x(yz))x.
inline LoopCheckReport check_moufang(const FiniteLoop& loop, const SweepMode& mode) {
    LoopCheckReport report;
    report.exhaustive = is_exhaustive(mode);
    report.checks = {{"x(y(xz))=((xy)x)z", 0, 0, {}},
                     {"z(x(yx))=((zx)y)x", 0, 0, {}},
                     {"(xy)(zx)=x((yz)x)", 0, 0, {}},
                     {"(xy)(zx)=(x(yz))x", 0, 0, {}}};
    auto m=[&](Index a, Index b) { return loop.mul(a, b); };
    detail::for_each_triple(loop.size(), mode, [&](Index x, Index y, Index z) {
        const Index xy=m(x, y), zx = m(z, x), yz = m(y, z);
        const Index xy_zx=m(xy, zx);
        detail::record(report.checks[0], m(x, m(y, m(x, z))) == m(m(xy, x), z), {x, y, z});
        detail::record(report.checks[1], m(z, m(x, m(y, x))) == m(m(zx, y), x), {x, y, z});
        detail::record(report.checks[2], xy_zx == m(x, m(yz, x)), {x, y, z});
        detail::record(report.checks[3], xy_zx == m(m(x, yz), x), {x, y, z});
    });
    return report;
}

/// Checks (xy)^-1=y^-1 x^-1.
inline LoopCheckReport inverse_antiautomorphism_check(const FiniteLoop& loop, const SweepMode& mode) {
    LoopCheckReport report;
    report.exhaustive=is_exhaustive(mode);
    report.checks = {{"(xy)^-1=y^-1x^-1", 0, 0, {}}};
    detail::for_each_pair(loop.size(), mode, [&](Index x, Index y) {
        detail::record(report.checks[0],
                       loop.inverse(loop.mul(x, y)) == loop.mul(loop.inverse(y), loop.inverse(x)), {x, y});
    });
    return report;
}

/// Sorted member set of a subloop, tied to its parent loop.
class SubloopHandle {
public:
    /// Validates that `members` contains the identity and is closed under products and inverses.
    static SubloopHandle from_members(const FiniteLoop& parent, std::vector<Index> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        std::vector<char> in(parent.size(), 0);
        for (auto m : members) {
            if (m >= parent.size()) throw LoopError("member index out of range");
            in[m] = 1;
        }
        if (!in[parent.identity()]) throw LoopError("subloop must contain the identity");
        for (auto a : members) {
            if (!in[parent.inverse(a)]) throw LoopError("not closed under inverses");
            for (auto b : members)
                if (!in[parent.mul(a, b)]) throw LoopError("not closed under multiplication");
        }
        return SubloopHandle(parent, std::move(members));
    }

    [[nodiscard]] const std::vector<Index>& members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool contains(Index i) const { return std::binary_search(members_.begin(), members_.end(), i); }
    [[nodiscard]] const FiniteLoop& parent() const noexcept { return parent_; }
    [[nodiscard]] bool is_trivial() const noexcept { return members_.size() == 1; }
    [[nodiscard]] bool is_whole() const noexcept { return members_.size() == parent_.size(); }

    [[nodiscard]] std::vector<char> membership() const {
        std::vector<char> in(parent_.size(), 0);
        for (auto m : members_) in[m] = 1;
        return in;
    }

    friend bool operator==(const SubloopHandle& a, const SubloopHandle& b) {
        return a.parent_.same_as(b.parent_) && a.members_ == b.members_;
    }

private:
    friend SubloopHandle subloop_closure(const FiniteLoop&, const std::vector<Index>&);
    friend SubloopHandle normal_closure(const FiniteLoop&, const std::vector<Index>&);
    friend SubloopHandle center(const FiniteLoop&, const std::optional<Sampled>&);

    SubloopHandle(FiniteLoop parent, std::vector<Index> members)
        : parent_(std::move(parent)), members_(std::move(members)) {}

    FiniteLoop parent_;
    std::vector<Index> members_;
};

/// Smallest subloop containing the generators, by worklist saturation.
inline SubloopHandle subloop_closure(const FiniteLoop& loop, const std::vector<Index>& generators) {
    if (generators.empty()) throw LoopError("closure needs at least one generator");
    std::vector<char> in(loop.size(), 0);
    std::vector<Index> members;
    auto add = [&](Index i) {
        if (!in[i]) {
            in[i] = 1;
            members.push_back(i);
        }
    };
    add(loop.identity());
    for (auto g : generators) {
        if (g >= loop.size()) throw LoopError("generator index out of range");
        add(g);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Index u = members[i];
        add(loop.inverse(u));
        for (std::size_t j = 0; j <= i; ++j) {
            const Index v = members[j];
            add(loop.mul(u, v));
            add(loop.mul(v, u));
        }
    }
    std::sort(members.begin(), members.end());
    return SubloopHandle(loop, std::move(members));
}

/// Inner mappings:
///   T(x):   u -> right_divide(x, x*u), the w with w*x = x*u
///   L(x,y): u -> left_divide(y*x, y*(x*u))
///   R(x,y): u -> right_divide(x*y, (u*x)*y)
struct InnerMap {
    enum class Kind { T, L, R };
    Kind kind = Kind::T;
    Index x = 0;
    Index y = 0;
};

inline Index apply_inner_map(const FiniteLoop& loop, const InnerMap& map, Index u) {
    switch (map.kind) {
        case InnerMap::Kind::T:
            return loop.right_divide(map.x, loop.mul(map.x, u));
        case InnerMap::Kind::L:
            return loop.left_divide(loop.mul(map.y, map.x), loop.mul(map.y, loop.mul(map.x, u)));
        case InnerMap::Kind::R:
            return loop.right_divide(loop.mul(map.x, map.y), loop.mul(loop.mul(u, map.x), map.y));
    }
    return u;
}

/// True iff `sub` is invariant under every T(x), L(x,y), R(x,y) with x, y over the
/// whole loop; early exit on the first escape. Sampled mode draws random
/// (map, member) pairs instead and can only prove non-normality.
inline bool is_normal(const FiniteLoop& loop, const SubloopHandle& sub, const SweepMode& mode = Exhaustive{}) {
    if (!sub.parent().same_as(loop)) throw LoopError("subloop belongs to a different loop");
    if (sub.is_whole()) return true;
    const auto in = sub.membership();
    const auto& members = sub.members();
    const std::size_t n = loop.size();
    if (!is_exhaustive(mode)) {
        const auto& s = std::get<Sampled>(mode);
        SampleStream rng(s.seed);
        for (std::uint64_t i = 0; i < s.count; ++i) {
            InnerMap map{static_cast<InnerMap::Kind>(rng.below(3)), static_cast<Index>(rng.below(n)),
                         static_cast<Index>(rng.below(n))};
            const Index u = members[rng.below(members.size())];
            if (!in[apply_inner_map(loop, map, u)]) return false;
        }
        return true;
    }
    for (Index x = 0; x < n; ++x)
        for (auto u : members)
            if (!in[apply_inner_map(loop, {InnerMap::Kind::T, x, 0}, u)]) return false;
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            for (auto u : members) {
                if (!in[apply_inner_map(loop, {InnerMap::Kind::L, x, y}, u)]) return false;
                if (!in[apply_inner_map(loop, {InnerMap::Kind::R, x, y}, u)]) return false;
            }
    return true;
}

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), classes_(n) {
        std::iota(parent_.begin(), parent_.end(), Index{0});
    }
    Index find(Index a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    bool unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --classes_;
        return true;
    }
    [[nodiscard]] std::size_t classes() const noexcept { return classes_; }

private:
    std::vector<Index> parent_;
    std::vector<std::size_t> size_;
    std::size_t classes_;
};

}  // namespace detail

/// Smallest normal subloop containing the generators.
///
/// Computed as the identity class of the smallest congruence identifying every
/// generator with e: a union-find over the elements, where each merged pair
/// (a, b) is pushed through every left and right translation. Normal subloops
/// of a finite loop are exactly the identity classes of congruences, and a
/// relation stable under all translations is stable under the whole
/// multiplication group, hence under every inner mapping.
inline SubloopHandle normal_closure(const FiniteLoop& loop, const std::vector<Index>& generators) {
    if (generators.empty()) throw LoopError("closure needs at least one generator");
    const std::size_t n = loop.size();
    const Index e = loop.identity();
    detail::UnionFind classes(n);
    std::vector<std::pair<Index, Index>> pending;
    auto merge = [&](Index a, Index b) {
        if (classes.unite(a, b)) pending.emplace_back(a, b);
    };
    for (auto g : generators) {
        if (g >= n) throw LoopError("generator index out of range");
        merge(e, g);
    }
    while (!pending.empty() && classes.classes() > 1) {
        const auto [a, b] = pending.back();
        pending.pop_back();
        for (Index x = 0; x < n && classes.classes() > 1; ++x) {
            merge(loop.mul(x, a), loop.mul(x, b));
            merge(loop.mul(a, x), loop.mul(b, x));
        }
    }
    std::vector<Index> members;
    const Index root = classes.find(e);
    for (Index i = 0; i < n; ++i)
        if (classes.find(i) == root) members.push_back(i);
    return SubloopHandle(loop, std::move(members));
}

/// Elements that commute and associate with everything. A commutant filter runs
/// first; the survivors then get the full associator test in all three positions,
/// over all pairs or over a seeded sample of pairs when `associator_sample` is set.
inline SubloopHandle center(const FiniteLoop& loop, const std::optional<Sampled>& associator_sample = std::nullopt) {
    const std::size_t n = loop.size();
    const Index e = loop.identity();
    std::vector<Index> members;
    for (Index z = 0; z < n; ++z) {
        if (z == e) {
            members.push_back(z);  // central by the identity law
            continue;
        }
        bool commutes = true;
        for (Index x = 0; x < n && commutes; ++x) commutes = loop.mul(z, x) == loop.mul(x, z);
        if (!commutes) continue;
        auto associates = [&](Index x, Index y) {
            auto m = [&](Index a, Index b) { return loop.mul(a, b); };
            return m(m(z, x), y) == m(z, m(x, y)) && m(m(x, z), y) == m(x, m(z, y)) && m(m(x, y), z) == m(x, m(y, z));
        };
        bool central = true;
        if (associator_sample) {
            SampleStream rng(associator_sample->seed ^ z);
            for (std::uint64_t i = 0; i < associator_sample->count && central; ++i)
                central = associates(static_cast<Index>(rng.below(n)), static_cast<Index>(rng.below(n)));
        } else {
            for (Index x = 0; x < n && central; ++x)
                for (Index y = 0; y < n && central; ++y) central = associates(x, y);
        }
        if (central) members.push_back(z);
    }
    return SubloopHandle(loop, std::move(members));
}

/// Quotient loop with its coset bookkeeping.
struct QuotientLoop {
    FiniteLoop loop;
    std::vector<Index> coset_of;         // parent index -> quotient index
    std::vector<Index> representatives;  // quotient index -> minimal parent index
};

struct QuotientOptions {
    /// When set, normality and representative independence are checked on a
    /// seeded sample instead of exhaustively (for oracle-backed parents).
    std::optional<Sampled> verification;
};

/// loop / sub. Cosets are represented by their minimal index. Throws LoopError
/// ("quotient undefined") when sub is not normal or the coset product depends
/// on representatives.
inline QuotientLoop quotient(const FiniteLoop& loop, const SubloopHandle& sub, const QuotientOptions& options = {}) {
    const SweepMode mode = options.verification ? SweepMode{*options.verification} : SweepMode{Exhaustive{}};
    if (!is_normal(loop, sub, mode)) throw LoopError("quotient undefined: subloop is not normal");
    const std::size_t n = loop.size();
    constexpr Index unset = ~Index{0};
    std::vector<Index> coset_of(n, unset);
    std::vector<Index> reps;
    for (Index i = 0; i < n; ++i) {
        if (coset_of[i] != unset) continue;
        const auto id = static_cast<Index>(reps.size());
        reps.push_back(i);
        for (auto s : sub.members()) {
            const Index j = loop.mul(i, s);
            if (coset_of[j] != unset) throw LoopError("quotient undefined: cosets overlap");
            coset_of[j] = id;
        }
    }
    const std::size_t m = reps.size();
    const Index e = coset_of[loop.identity()];
    auto labeler = [loop, reps](Index c) { return loop.label(reps[c]); };

    FiniteLoop result = [&] {
        if (m <= kTableCutoff) {
            std::vector<Index> table(m * m);
            for (Index a = 0; a < m; ++a)
                for (Index b = 0; b < m; ++b) table[std::size_t{a} * m + b] = coset_of[loop.mul(reps[a], reps[b])];
            return FiniteLoop::from_table(m, e, std::move(table), labeler);
        }
        auto shared_cosets = std::make_shared<const std::vector<Index>>(coset_of);
        auto shared_reps = std::make_shared<const std::vector<Index>>(reps);
        FiniteLoop::OracleOptions opts;
        opts.left_divide = [loop, shared_cosets, shared_reps](Index a, Index b) {
            return (*shared_cosets)[loop.left_divide((*shared_reps)[a], (*shared_reps)[b])];
        };
        opts.right_divide = [loop, shared_cosets, shared_reps](Index a, Index b) {
            return (*shared_cosets)[loop.right_divide((*shared_reps)[a], (*shared_reps)[b])];
        };
        opts.labeler = labeler;
        opts.spot_checks = options.verification ? options.verification->count : 1000;
        opts.seed = options.verification ? options.verification->seed : 0;
        return FiniteLoop::from_oracle(
            m, e,
            [loop, shared_cosets, shared_reps](Index a, Index b) {
                return (*shared_cosets)[loop.mul((*shared_reps)[a], (*shared_reps)[b])];
            },
            std::move(opts));
    }();

    bool consistent = true;
    detail::for_each_pair(n, mode, [&](Index a, Index b) {
        if (consistent) consistent = coset_of[loop.mul(a, b)] == result.mul(coset_of[a], coset_of[b]);
    });
    if (!consistent) throw LoopError("quotient undefined: coset product depends on representatives");
    return {std::move(result), std::move(coset_of), std::move(reps)};
}

struct SimplicityReport {
    bool simple = true;
    std::optional<SubloopHandle> witness;  // proper non-trivial normal subloop, when not simple
    std::optional<Index> witness_generator;
    std::uint64_t generators_tested = 0;
    bool sampled = false;
    std::string caveat;
};

/// True iff normal_closure({x}) is the whole loop for every x != e, scanned in
/// index order. With `sample` set, only that many random non-identity elements
/// are tested and the report carries a caveat.
inline SimplicityReport is_simple(const FiniteLoop& loop, const std::optional<Sampled>& sample = std::nullopt) {
    const std::size_t n = loop.size();
    if (n < 2) throw LoopError("simplicity is defined for loops of order at least 2");
    SimplicityReport report;
    auto test = [&](Index x) {
        ++report.generators_tested;
        auto closure = normal_closure(loop, {x});
        if (closure.is_whole()) return true;
        report.simple = false;
        report.witness = std::move(closure);
        report.witness_generator = x;
        return false;
    };
    if (!sample) {
        for (Index x = 0; x < n; ++x)
            if (x != loop.identity() && !test(x)) break;
        return report;
    }
    report.sampled = true;
    SampleStream rng(sample->seed);
    for (std::uint64_t i = 0; i < sample->count; ++i) {
        Index x = static_cast<Index>(rng.below(n - 1));
        if (x >= loop.identity()) ++x;  // skip e
        if (!test(x)) break;
    }
    if (report.simple)
        report.caveat = "sampled: " + std::to_string(report.generators_tested) + " of " + std::to_string(n - 1) +
                        " non-identity generators tested; a proper normal subloop avoiding all of them is not excluded";
    return report;
}

}  // namespace paige
