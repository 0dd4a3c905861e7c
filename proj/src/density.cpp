#include "subsetcodec/density.hpp"

#include <bit>

#include "subsetcodec/error.hpp"

namespace subsetcodec {

namespace {
using i128 = __int128;
using u128 = unsigned __int128;
}  // namespace

Rational DensityProfile::value(std::uint64_t n) const {
    return Rational(static_cast<std::int64_t>(counts_.at(n)), static_cast<std::int64_t>(n + 1));
}

bool DensityProfile::satisfies_recurrence(const FinitePrefixSet& a) const {
    if (counts_.size() != a.horizon()) return false;
    if (counts_.empty()) return true;
    if (counts_[0] != (a.test(0) ? 1U : 0U)) return false;
    for (std::uint64_t n = 0; n < counts_.size(); ++n) {
        if (counts_[n] > n + 1) return false;  // value in [0, 1]
        if (n + 1 < counts_.size()) {
            // value(n+1)·(n+2) == value(n)·(n+1) + A(n+1)
            if (counts_[n + 1] != counts_[n] + (a.test(n + 1) ? 1U : 0U)) return false;
        }
    }
    return true;
}

LowerBound LowerBound::constant(Rational value) {
    if (value < 0 || value > 1) fail(ErrorKind::parameter, "lower bound must lie in [0, 1]");
    LowerBound f;
    f.kind_ = Kind::constant;
    f.constant_ = value;
    return f;
}

LowerBound LowerBound::sampled(std::vector<Rational> values) {
    for (const auto& v : values) {
        if (v < 0 || v > 1) fail(ErrorKind::parameter, "lower bound must lie in [0, 1]");
    }
    LowerBound f;
    f.kind_ = Kind::sampled;
    f.table_ = std::move(values);
    return f;
}

LowerBound LowerBound::inverse_sqrt() {
    LowerBound f;
    f.kind_ = Kind::inverse_sqrt;
    return f;
}

LowerBound LowerBound::from_function(std::function<Rational(std::uint64_t)> fn, std::string name) {
    LowerBound f;
    f.kind_ = Kind::function;
    f.fn_ = std::move(fn);
    f.name_ = std::move(name);
    return f;
}

LowerBound LowerBound::parse(const std::string& descriptor) {
    if (descriptor == "inv_sqrt") return inverse_sqrt();
    if (descriptor.rfind("const:", 0) == 0) return constant(parse_rational(descriptor.substr(6)));
    fail(ErrorKind::parameter, "unknown lower bound '" + descriptor + "' (expected inv_sqrt or const:p/q)");
}

std::string LowerBound::describe() const {
    switch (kind_) {
        case Kind::constant: return "const:" + to_string(constant_);
        case Kind::sampled: return "sampled";
        case Kind::inverse_sqrt: return "inv_sqrt";
        case Kind::function: return name_;
    }
    return {};
}

Rational LowerBound::rational_at(std::uint64_t n) const {
    switch (kind_) {
        case Kind::constant: return constant_;
        case Kind::sampled:
            if (n >= table_.size()) {
                fail(ErrorKind::window, "sampled bound has no value at " + std::to_string(n));
            }
            return table_[n];
        case Kind::function: return fn_(n);
        case Kind::inverse_sqrt: break;
    }
    fail(ErrorKind::parameter, "bound has no rational values");
}

bool LowerBound::satisfied_by(std::uint64_t count, std::uint64_t n) const {
    if (kind_ == Kind::inverse_sqrt) {
        // count/(n+1) >= 1/sqrt(n+1)  <=>  count^2 >= n+1
        return static_cast<u128>(count) * count >= static_cast<u128>(n) + 1;
    }
    return at_least_fraction_of(count, n + 1, rational_at(n));
}

bool LowerBound::at_most(std::uint64_t n, const Rational& r) const {
    if (kind_ == Kind::inverse_sqrt) {
        // 1/sqrt(n+1) <= p/q  <=>  q^2 <= p^2 (n+1), for p > 0
        if (r <= 0) return false;
        const u128 p = static_cast<u128>(r.numerator());
        const u128 q = static_cast<u128>(r.denominator());
        const u128 lhs = q * q;
        const u128 p2 = p * p;
        // p2 * (n+1) may overflow 128 bits only when it is astronomically larger than lhs
        if (p2 != 0 && (static_cast<u128>(n) + 1) > (~u128{0}) / p2) return true;
        return lhs <= p2 * (static_cast<u128>(n) + 1);
    }
    return rational_at(n) <= r;
}

Rational density_at(const FinitePrefixSet& a, std::uint64_t n) {
    const std::uint64_t c = a.count_through(n);
    return Rational(static_cast<std::int64_t>(c), static_cast<std::int64_t>(n + 1));
}

bool is_dense_at(const FinitePrefixSet& a, const Rational& delta, std::uint64_t n) {
    return at_least_fraction_of(a.count_through(n), n + 1, delta);
}

bool is_delta_dense_along(const FinitePrefixSet& a, const Rational& delta, const FinitePrefixSet& d) {
    if (d.horizon() > a.horizon()) {
        fail(ErrorKind::window, "density points extend beyond the set's window");
    }
    std::uint64_t count = 0;
    std::uint64_t next = 0;
    for (auto n : d.members()) {
        for (; next <= n; ++next) count += a.test(next) ? 1U : 0U;
        if (!at_least_fraction_of(count, n + 1, delta)) return false;
    }
    return true;
}

bool is_delta_dense(const FinitePrefixSet& a, const Rational& delta) {
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n < a.horizon(); ++n) {
        count += a.test(n) ? 1U : 0U;
        if (!at_least_fraction_of(count, n + 1, delta)) return false;
    }
    return true;
}

DensityProfile density_profile(const FinitePrefixSet& a) {
    std::vector<std::uint64_t> counts(a.horizon());
    std::uint64_t c = 0;
    for (std::uint64_t n = 0; n < a.horizon(); ++n) {
        c += a.test(n) ? 1U : 0U;
        counts[n] = c;
    }
    return DensityProfile(std::move(counts));
}

std::optional<std::uint64_t> first_f_violation(const FinitePrefixSet& a, const LowerBound& f) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 0; n < a.horizon(); ++n) {
        c += a.test(n) ? 1U : 0U;
        if (!f.satisfied_by(c, n)) return n;
    }
    return std::nullopt;
}

bool is_f_dense(const FinitePrefixSet& a, const LowerBound& f) { return !first_f_violation(a, f).has_value(); }

}  // namespace subsetcodec
