#pragma once

// Truncated multivariate polynomial rings Z[x_0..x_{r-1}] / (x_0^{c_0}, ..., x_{r-1}^{c_{r-1}})
// with arbitrary-precision integer coefficients. These are the Chow rings of products
// of projective spaces (plus the hyperplane class h of the ambient tensor space).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace kalman {

/// Variable names and truncation caps. A variable with cap c satisfies x^c = 0.
/// The distinguished variable "h", if present, must come first.
class RingSpec {
public:
    RingSpec(std::vector<std::string> names, std::vector<unsigned> caps)
        : names_(std::move(names)), caps_(std::move(caps)) {
        if (names_.size() != caps_.size())
            throw ParameterError("ring: names and caps differ in length");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (caps_[i] < 1)
                throw ParameterError("ring: cap of '" + names_[i] + "' must be >= 1");
            if (names_[i].empty())
                throw ParameterError("ring: empty variable name");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[j] == names_[i])
                    throw ParameterError("ring: duplicate variable '" + names_[i] + "'");
            if (names_[i] == "h" && i != 0)
                throw ParameterError("ring: variable 'h' must be first");
        }
        strides_.resize(caps_.size());
        std::uint64_t stride = 1;
        // Last variable varies fastest, so packed keys order like exponent vectors.
        for (std::size_t i = caps_.size(); i-- > 0;) {
            strides_[i] = stride;
            if (stride > std::numeric_limits<std::uint64_t>::max() / caps_[i])
                throw ParameterError("ring: too many monomials to index");
            stride *= caps_[i];
        }
        size_ = stride;

        unsigned offset = 0;
        guard_shift_.resize(caps_.size());
        for (std::size_t i = 0; i < caps_.size(); ++i) {
            const unsigned w = static_cast<unsigned>(std::bit_width(caps_[i] - 1u));
            const unsigned width = std::max(w, 1u);
            // field value e + (2^width - cap) stays below 2^(width+1)
            guard_shift_[i] = offset;
            offset += width + 1;
            if (offset > 64) {
                guard_usable_ = false;
                break;
            }
            guard_mask_ |= std::uint64_t{1} << (guard_shift_[i] + width);
            guard_bias_ += ((std::uint64_t{1} << width) - caps_[i]) << guard_shift_[i];
        }
    }

    std::size_t num_vars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<unsigned>& caps() const { return caps_; }
    unsigned cap(std::size_t i) const { return caps_[i]; }
    bool has_h() const { return !names_.empty() && names_.front() == "h"; }

    /// Number of monomials not killed by the caps.
    std::uint64_t monomial_count() const { return size_; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return i;
        throw ParameterError("ring: unknown variable '" + name + "'");
    }

    std::uint64_t stride(std::size_t i) const { return strides_[i]; }

    // Exponent fields with guard bits, for a branch-free cap test in products.
    bool guard_usable() const { return guard_usable_; }
    std::uint64_t guard_mask() const { return guard_mask_; }
    std::uint64_t guard_bias() const { return guard_bias_; }
    std::uint64_t spread(const unsigned* exps) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < guard_shift_.size(); ++i)
            s |= std::uint64_t{exps[i]} << guard_shift_[i];
        return s;
    }

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.names_ == b.names_ && a.caps_ == b.caps_;
    }

private:
    std::vector<std::string> names_;
    std::vector<unsigned> caps_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t size_ = 1;
    std::vector<unsigned> guard_shift_;
    std::uint64_t guard_mask_ = 0;
    std::uint64_t guard_bias_ = 0;
    bool guard_usable_ = true;
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline RingPtr make_ring(std::vector<std::string> names, std::vector<unsigned> caps) {
    return std::make_shared<const RingSpec>(std::move(names), std::move(caps));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

/// Exponent vector; every exponent is strictly below its variable's cap.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<unsigned> exponents) : exps_(std::move(exponents)) {}

    const std::vector<unsigned>& exponents() const { return exps_; }
    unsigned operator[](std::size_t i) const { return exps_[i]; }
    std::size_t size() const { return exps_.size(); }
    unsigned degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

    bool valid_for(const RingSpec& ring) const {
        if (exps_.size() != ring.num_vars())
            return false;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] >= ring.cap(i))
                return false;
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<unsigned> exps_;
};

namespace detail {

inline std::uint64_t pack(const RingSpec& ring, const Monomial& m) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        key += m[i] * ring.stride(i);
    return key;
}

inline void unpack(const RingSpec& ring, std::uint64_t key, unsigned* out) {
    for (std::size_t i = 0; i < ring.num_vars(); ++i) {
        out[i] = static_cast<unsigned>(key / ring.stride(i));
        key %= ring.stride(i);
    }
}

// Rings up to this many monomials may accumulate products in a dense buffer.
inline constexpr std::uint64_t dense_accumulate_limit = std::uint64_t{1} << 18;

} // namespace detail

/// Element of a truncated ring in canonical form: terms sorted by packed monomial key,
/// no zero coefficients, every monomial below the caps. The zero polynomial has no terms.
class TruncatedPolynomial {
public:
    using Term = std::pair<std::uint64_t, BigInt>;

    explicit TruncatedPolynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static TruncatedPolynomial zero(RingPtr ring) { return TruncatedPolynomial(std::move(ring)); }

    static TruncatedPolynomial constant(RingPtr ring, BigInt c) {
        TruncatedPolynomial p(std::move(ring));
        if (c != 0)
            p.terms_.emplace_back(0, std::move(c));
        return p;
    }

    static TruncatedPolynomial one(RingPtr ring) { return constant(std::move(ring), 1); }

    /// c * m; if m reaches a cap the result is zero.
    static TruncatedPolynomial monomial(RingPtr ring, const Monomial& m, BigInt c = 1) {
        if (m.size() != ring->num_vars())
            throw ParameterError("monomial: wrong number of exponents");
        TruncatedPolynomial p(ring);
        if (c != 0 && m.valid_for(*ring))
            p.terms_.emplace_back(detail::pack(*ring, m), std::move(c));
        return p;
    }

    /// c * name (degree one in a single variable).
    static TruncatedPolynomial variable(RingPtr ring, const std::string& name, BigInt c = 1) {
        std::vector<unsigned> e(ring->num_vars(), 0);
        e[ring->index_of(name)] = 1;
        return monomial(ring, Monomial(std::move(e)), std::move(c));
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Monomial monomial_of(const Term& t) const {
        std::vector<unsigned> e(ring_->num_vars());
        detail::unpack(*ring_, t.first, e.data());
        return Monomial(std::move(e));
    }

    /// Coefficient of m (zero if absent). Throws if m is not a valid monomial of the ring.
    BigInt coefficient(const Monomial& m) const {
        if (!m.valid_for(*ring_))
            throw ParameterError("coefficient: monomial invalid for ring");
        const auto key = detail::pack(*ring_, m);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, std::uint64_t k) { return t.first < k; });
        return (it != terms_.end() && it->first == key) ? it->second : BigInt(0);
    }

    BigInt constant_term() const {
        return (!terms_.empty() && terms_.front().first == 0) ? terms_.front().second : BigInt(0);
    }

    TruncatedPolynomial& operator+=(const TruncatedPolynomial& b) { return *this = *this + b; }
    TruncatedPolynomial& operator-=(const TruncatedPolynomial& b) { return *this = *this - b; }
    TruncatedPolynomial& operator*=(const TruncatedPolynomial& b) { return *this = *this * b; }

    friend TruncatedPolynomial operator+(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
        return combine(a, b, false);
    }
    friend TruncatedPolynomial operator-(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
        return combine(a, b, true);
    }
    friend TruncatedPolynomial operator-(const TruncatedPolynomial& a) {
        TruncatedPolynomial r = a;
        for (auto& t : r.terms_)
            t.second = -t.second;
        return r;
    }
    friend TruncatedPolynomial operator*(const TruncatedPolynomial& a, const TruncatedPolynomial& b);

    TruncatedPolynomial scaled(const BigInt& c) const {
        TruncatedPolynomial r(ring_);
        if (c == 0)
            return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_)
            t.second *= c;
        return r;
    }

    friend bool operator==(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    /// Re-express in another ring over the same variables, dropping terms at/above its caps.
    TruncatedPolynomial truncated_to(RingPtr target) const {
        if (target->names() != ring_->names())
            throw RingMismatch("truncated_to: variable lists differ");
        TruncatedPolynomial r(target);
        std::vector<unsigned> e(ring_->num_vars());
        for (const auto& t : terms_) {
            detail::unpack(*ring_, t.first, e.data());
            Monomial m(e);
            if (m.valid_for(*target))
                r.terms_.emplace_back(detail::pack(*target, m), t.second);
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

private:
    static void check_ring(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
        if (!same_ring(a.ring_, b.ring_))
            throw RingMismatch("operands belong to different rings");
    }

    static TruncatedPolynomial combine(const TruncatedPolynomial& a, const TruncatedPolynomial& b,
                                       bool subtract) {
        check_ring(a, b);
        TruncatedPolynomial r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.emplace_back(j->first, subtract ? BigInt(-j->second) : j->second);
                ++j;
            } else {
                BigInt c = subtract ? BigInt(i->second - j->second) : BigInt(i->second + j->second);
                if (c != 0)
                    r.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

namespace detail {

using Wide = __int128;

inline unsigned bit_length(const BigInt& x) { return x == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(abs(x))) + 1; }

inline BigInt from_wide(Wide x) {
    const bool neg = x < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
}

inline unsigned max_bits(const std::vector<TruncatedPolynomial::Term>& terms) {
    unsigned m = 0;
    for (const auto& t : terms)
        m = std::max(m, bit_length(t.second));
    return m;
}

// Product kernel over accumulator type Acc. Coef(j) yields the operand coefficient as Acc-compatible.
template <class Acc, class CoefA, class CoefB, class Fits, class Emit>
void multiply_terms(const std::vector<TruncatedPolynomial::Term>& a, const std::vector<TruncatedPolynomial::Term>& b,
                    std::uint64_t ring_size, CoefA coef_a, CoefB coef_b, Fits fits, Emit emit) {
    const std::uint64_t pairs = std::uint64_t(a.size()) * b.size();
    if (ring_size <= dense_accumulate_limit && 4 * pairs >= ring_size) {
        std::vector<Acc> acc(ring_size);
        std::vector<char> touched(ring_size, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto& ca = coef_a(i);
            const auto ka = a[i].first;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (!fits(i, j))
                    continue;
                const auto key = ka + b[j].first;
                acc[key] += ca * coef_b(j);
                touched[key] = 1;
            }
        }
        for (std::uint64_t k = 0; k < ring_size; ++k)
            if (touched[k] && acc[k] != 0)
                emit(k, acc[k]);
        return;
    }
    // Sparse product: collect, sort by key, merge equal keys.
    std::vector<std::pair<std::uint64_t, Acc>> raw;
    raw.reserve(pairs);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ca = coef_a(i);
        const auto ka = a[i].first;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (fits(i, j))
                raw.emplace_back(ka + b[j].first, ca * coef_b(j));
    }
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j].first == raw[i].first)
            raw[i].second += raw[j++].second;
        if (raw[i].second != 0)
            emit(raw[i].first, raw[i].second);
        i = j;
    }
}

} // namespace detail

inline TruncatedPolynomial operator*(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
    TruncatedPolynomial::check_ring(a, b);
    const RingSpec& ring = *a.ring_;
    TruncatedPolynomial r(a.ring_);
    if (a.is_zero() || b.is_zero())
        return r;

    const std::size_t nv = ring.num_vars();
    const std::size_t na = a.terms_.size(), nb = b.terms_.size();
    std::vector<unsigned> ea(na * nv), eb(nb * nv);
    for (std::size_t i = 0; i < na; ++i)
        detail::unpack(ring, a.terms_[i].first, &ea[i * nv]);
    for (std::size_t j = 0; j < nb; ++j)
        detail::unpack(ring, b.terms_[j].first, &eb[j * nv]);

    // Guard-bit test: field_i(ga + gb) = e_a + e_b + (2^w - cap) sets bit w iff e_a + e_b >= cap.
    const bool guarded = ring.guard_usable();
    std::vector<std::uint64_t> ga, gb;
    if (guarded) {
        ga.resize(na);
        gb.resize(nb);
        for (std::size_t i = 0; i < na; ++i)
            ga[i] = ring.spread(&ea[i * nv]) + ring.guard_bias();
        for (std::size_t j = 0; j < nb; ++j)
            gb[j] = ring.spread(&eb[j * nv]);
    }
    const std::uint64_t mask = ring.guard_mask();
    const auto& caps = ring.caps();
    auto fits = [&](std::size_t i, std::size_t j) {
        if (guarded)
            return ((ga[i] + gb[j]) & mask) == 0;
        const unsigned* x = &ea[i * nv];
        const unsigned* y = &eb[j * nv];
        for (std::size_t v = 0; v < nv; ++v)
            if (x[v] + y[v] >= caps[v])
                return false;
        return true;
    };

    // Each output coefficient sums at most min(na, nb) products, so this bound rules out overflow.
    const unsigned bits_a = detail::max_bits(a.terms_), bits_b = detail::max_bits(b.terms_);
    const unsigned bits_n = static_cast<unsigned>(std::bit_width(std::min(na, nb)));
    if (bits_a <= 62 && bits_b <= 62 && bits_a + bits_b + bits_n <= 125) {
        std::vector<detail::Wide> wa(na), wb(nb);
        for (std::size_t i = 0; i < na; ++i)
            wa[i] = static_cast<std::int64_t>(a.terms_[i].second);
        for (std::size_t j = 0; j < nb; ++j)
            wb[j] = static_cast<std::int64_t>(b.terms_[j].second);
        detail::multiply_terms<detail::Wide>(
            a.terms_, b.terms_, ring.monomial_count(), [&](std::size_t i) -> const detail::Wide& { return wa[i]; },
            [&](std::size_t j) -> const detail::Wide& { return wb[j]; }, fits,
            [&](std::uint64_t k, detail::Wide c) { r.terms_.emplace_back(k, detail::from_wide(c)); });
        return r;
    }
    detail::multiply_terms<BigInt>(
        a.terms_, b.terms_, ring.monomial_count(), [&](std::size_t i) -> const BigInt& { return a.terms_[i].second; },
        [&](std::size_t j) -> const BigInt& { return b.terms_[j].second; }, fits,
        [&](std::uint64_t k, BigInt& c) { r.terms_.emplace_back(k, std::move(c)); });
    return r;
}

/// Coefficient of m in a * b without forming the product.
inline BigInt product_coefficient(const TruncatedPolynomial& a, const TruncatedPolynomial& b, const Monomial& m) {
    if (!same_ring(a.ring(), b.ring()))
        throw RingMismatch("product_coefficient: operands belong to different rings");
    const RingSpec& ring = *a.ring();
    if (!m.valid_for(ring))
        throw ParameterError("product_coefficient: monomial invalid for ring");
    std::vector<unsigned> e(ring.num_vars()), rest(ring.num_vars());
    BigInt sum = 0;
    for (const auto& t : a.terms()) {
        detail::unpack(ring, t.first, e.data());
        bool divides = true;
        for (std::size_t i = 0; i < e.size() && divides; ++i) {
            divides = e[i] <= m[i];
            rest[i] = m[i] - e[i];
        }
        if (divides)
            sum += t.second * b.coefficient(Monomial(rest));
    }
    return sum;
}

inline TruncatedPolynomial poly_add(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
    return a + b;
}

inline TruncatedPolynomial poly_mul(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
    return a * b;
}

namespace detail {

// Operands with at most this many terms are multiplied in repeatedly instead of squared.
inline constexpr std::size_t sparse_operand_terms = 16;

} // namespace detail

/// a^e; a^0 = 1. Sparse bases are multiplied in e times, dense ones by binary powering.
inline TruncatedPolynomial poly_pow(const TruncatedPolynomial& a, unsigned e) {
    TruncatedPolynomial result = TruncatedPolynomial::one(a.ring());
    if (a.num_terms() <= detail::sparse_operand_terms) {
        for (unsigned i = 0; i < e && !result.is_zero(); ++i)
            result = result * a;
        return result;
    }
    TruncatedPolynomial base = a;
    while (e > 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result;
}

/// Two-sided inverse of a polynomial with constant term c = +1 or -1. Writing a = c (1 + w)
/// with w nilpotent, a^{-1} = c sum_j (-w)^j. Sparse w: Horner s <- 1 - w s until fixed.
/// Dense w: Newton b <- b (1 + e), e = 1 - a b, whose error order doubles each step.
inline TruncatedPolynomial poly_inverse(const TruncatedPolynomial& a) {
    const BigInt c0 = a.constant_term();
    if (c0 != 1 && c0 != -1)
        throw ArithmeticError("poly_inverse: constant term " + c0.str() + " is not a unit");
    const auto one = TruncatedPolynomial::one(a.ring());
    const auto w = (a - TruncatedPolynomial::constant(a.ring(), c0)).scaled(c0);
    if (w.num_terms() <= detail::sparse_operand_terms) {
        TruncatedPolynomial s = one;
        for (;;) {
            TruncatedPolynomial next = one - w * s;
            if (next == s)
                return s.scaled(c0);
            s = std::move(next);
        }
    }
    TruncatedPolynomial b = TruncatedPolynomial::constant(a.ring(), c0);
    for (;;) {
        TruncatedPolynomial err = one - a * b;
        if (err.is_zero())
            return b;
        b = b * (one + err);
    }
}

/// sum_{j=0}^{n-1} a^{n-1-j} b^j, the exact quotient (a^n - b^n) / (a - b).
inline TruncatedPolynomial geom_sum(const TruncatedPolynomial& a, const TruncatedPolynomial& b, unsigned n) {
    if (!same_ring(a.ring(), b.ring()))
        throw RingMismatch("geom_sum: operands belong to different rings");
    if (n == 0)
        throw ParameterError("geom_sum: n must be positive");
    // Horner on s_{t+1} = a s_t + b^t, s_1 = 1.
    TruncatedPolynomial s = TruncatedPolynomial::one(a.ring());
    TruncatedPolynomial bpow = TruncatedPolynomial::one(a.ring());
    for (unsigned t = 1; t < n; ++t) {
        bpow = bpow * b;
        s = a * s + bpow;
    }
    return s;
}

inline BigInt coefficient(const TruncatedPolynomial& p, const Monomial& m) { return p.coefficient(m); }

/// Graded-lexicographic order: lower total degree first; within a degree, larger
/// exponent of earlier variables first (h^2 before h v1 before v1^2).
inline bool graded_lex_less(const Monomial& x, const Monomial& y) {
    const auto dx = x.degree(), dy = y.degree();
    if (dx != dy)
        return dx < dy;
    return x.exponents() > y.exponents();
}

/// Stable text form, e.g. "1 - 1 * v + 2 * h v^2". Zero prints as "0".
inline std::string to_string(const TruncatedPolynomial& p) {
    if (p.is_zero())
        return "0";
    std::vector<std::pair<Monomial, const BigInt*>> items;
    for (const auto& t : p.terms())
        items.emplace_back(p.monomial_of(t), &t.second);
    std::sort(items.begin(), items.end(),
              [](const auto& x, const auto& y) { return graded_lex_less(x.first, y.first); });
    const auto& names = p.ring()->names();
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : items) {
        const bool neg = *c < 0;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        os << (neg ? BigInt(-*c) : *c);
        bool star = false;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            os << (star ? " " : " * ") << names[i];
            star = true;
            if (m[i] > 1)
                os << '^' << m[i];
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const TruncatedPolynomial& p) { return os << to_string(p); }

} // namespace kalman
