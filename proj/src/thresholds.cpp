#include "subsetcodec/thresholds.hpp"

#include <algorithm>

#include "json.hpp"
#include "subsetcodec/error.hpp"

namespace subsetcodec {

namespace {

using u128 = unsigned __int128;

[[noreturn]] void bad_threshold(const ThresholdSequence& seq, std::size_t i, const std::string& why) {
    fail(ErrorKind::invalid_threshold, to_string(seq.scheme) + " threshold n_" + std::to_string(i) + " = " +
                                           std::to_string(seq.values.at(i)) + ": " + why);
}

void check_increasing(const ThresholdSequence& seq) {
    for (std::size_t i = 1; i < seq.values.size(); ++i) {
        if (seq.values[i] <= seq.values[i - 1]) bad_threshold(seq, i, "sequence must be strictly increasing");
    }
}

// 1 / (5 · 2^{2i+1})
Rational slowdecay_level(std::size_t i) {
    return Rational(1, static_cast<std::int64_t>(5) << (2 * i + 1));
}

void validate_slowdecay_structure(const ThresholdSequence& seq) {
    if (seq.values.empty()) return;
    if (seq.values[0] != 0) bad_threshold(seq, 0, "slow-decay sequences start at 0");
    for (std::size_t i = 1; i < seq.values.size(); ++i) {
        if (2 * i + 1 > 62) bad_threshold(seq, i, "interval index too large for 64-bit residues");
        const std::uint64_t floor = std::uint64_t{1} << (2 * i - 1);
        if (seq.values[i] <= floor) bad_threshold(seq, i, "must exceed 2^(2i-1) = " + std::to_string(floor));
        if (i + 1 < seq.values.size()) {
            const std::uint64_t period = std::uint64_t{1} << (2 * i + 1);
            if ((seq.values[i + 1] - seq.values[i]) % period != 0) {
                bad_threshold(seq, i + 1, "n_{i+1} - n_i must be divisible by " + std::to_string(period));
            }
        }
    }
}

}  // namespace

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::interval: return "interval";
        case Scheme::slowdecay: return "slowdecay";
        case Scheme::parity: return "parity";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "interval") return Scheme::interval;
    if (name == "slowdecay") return Scheme::slowdecay;
    if (name == "parity") return Scheme::parity;
    fail(ErrorKind::parameter, "unknown threshold scheme '" + name + "'");
}

std::optional<std::size_t> ThresholdSequence::interval_of(std::uint64_t m) const {
    if (values.size() < 2 || m < values.front() || m >= values.back()) return std::nullopt;
    auto it = std::upper_bound(values.begin(), values.end(), m);
    return static_cast<std::size_t>(it - values.begin()) - 1;
}

Rational DyadicPair::density() const { return Rational(1, std::int64_t{1} << (exponent + 1)); }

DyadicPair PairEnumeration::at(std::uint64_t i) {
    // w = largest with w(w+1)/2 <= i
    std::uint64_t w = 0;
    std::uint64_t lo = 0, hi = std::uint64_t{1} << 32;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (static_cast<u128>(mid) * (mid + 1) / 2 <= i) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    w = lo;
    const std::uint64_t t = i - w * (w + 1) / 2;
    if (t > 61) fail(ErrorKind::parameter, "pair index " + std::to_string(i) + " has density below 2^-62");
    return DyadicPair{w - t, static_cast<std::uint32_t>(t)};
}

std::uint64_t PairEnumeration::index_of(std::uint64_t j, std::uint32_t t) {
    const std::uint64_t w = j + t;
    return w * (w + 1) / 2 + t;
}

void extend_interval(ThresholdSequence& seq, std::size_t count, std::uint64_t until) {
    seq.scheme = Scheme::interval;
    if (seq.values.empty() && count > 0) seq.values.push_back(1);
    while (seq.values.size() < count && seq.values.back() < until) {
        const std::uint64_t i = seq.values.size() - 1;
        const u128 next = static_cast<u128>(std::max<std::uint64_t>(i, 1)) * seq.values.back() + 1;
        if (next > UINT64_MAX) fail(ErrorKind::parameter, "interval thresholds overflow 64 bits");
        seq.values.push_back(static_cast<std::uint64_t>(next));
    }
}

ThresholdSequence interval_thresholds_covering(std::uint64_t horizon) {
    ThresholdSequence seq;
    extend_interval(seq, SIZE_MAX, std::max<std::uint64_t>(horizon, 2));
    if (seq.values.size() < 2) extend_interval(seq, 2);
    return seq;
}

void extend_parity(ThresholdSequence& seq, std::size_t count, std::uint64_t until) {
    seq.scheme = Scheme::parity;
    if (seq.values.empty() && count > 0) seq.values.push_back(0);
    while (seq.values.size() < count && seq.values.back() < until) {
        const std::uint64_t i = seq.values.size() - 1;
        const std::uint64_t n = seq.values.back();
        const DyadicPair p = PairEnumeration::at(i);
        // least even value > n and > n·2^{t+1}; n is even, so n·2^{t+1} + 2
        const u128 next = n == 0 ? u128{2} : (static_cast<u128>(n) << (p.exponent + 1)) + 2;
        if (next > UINT64_MAX) fail(ErrorKind::parameter, "parity thresholds overflow 64 bits");
        seq.values.push_back(static_cast<std::uint64_t>(next));
    }
}

ThresholdSequence parity_thresholds_covering(std::uint64_t horizon) {
    ThresholdSequence seq;
    extend_parity(seq, SIZE_MAX, std::max<std::uint64_t>(horizon, 1));
    return seq;
}

void extend_slowdecay(ThresholdSequence& seq, const LowerBound& f, std::size_t count, std::uint64_t search_limit) {
    seq.scheme = Scheme::slowdecay;
    seq.bound = f.describe();
    if (seq.values.empty() && count > 0) seq.values.push_back(0);
    while (seq.values.size() < count) {
        const std::size_t i = seq.values.size();
        if (2 * i + 1 > 62) {
            fail(ErrorKind::threshold_search_exhausted, "interval " + std::to_string(i) + " needs residues beyond 64 bits");
        }
        const std::uint64_t prev = seq.values.back();
        const std::uint64_t lower = std::max(prev + 1, (std::uint64_t{1} << (2 * i - 1)) + 1);
        const Rational level = slowdecay_level(i);
        auto exhausted = [&] {
            fail(ErrorKind::threshold_search_exhausted,
                 "f(m) stays above " + to_string(level) + " for all m <= " + std::to_string(search_limit) +
                     " (n_" + std::to_string(i) + ")");
        };
        if (lower > search_limit) exhausted();

        // f is non-increasing: gallop to a bracketing point, then bisect.
        std::uint64_t m = lower;
        if (!f.at_most(lower, level)) {
            std::uint64_t bad = lower;
            std::uint64_t step = 1;
            std::uint64_t good = 0;
            while (true) {
                const std::uint64_t probe = bad + step;
                if (probe > search_limit || probe < bad) {
                    if (!f.at_most(search_limit, level)) exhausted();
                    good = search_limit;
                    break;
                }
                if (f.at_most(probe, level)) {
                    good = probe;
                    break;
                }
                bad = probe;
                step *= 2;
            }
            while (good - bad > 1) {
                const std::uint64_t mid = bad + (good - bad) / 2;
                if (f.at_most(mid, level)) {
                    good = mid;
                } else {
                    bad = mid;
                }
            }
            m = good;
        }
        if (i >= 2) {
            const std::uint64_t period = std::uint64_t{1} << (2 * (i - 1) + 1);
            const std::uint64_t rem = (m - prev) % period;
            if (rem != 0) m += period - rem;
        }
        if (m > search_limit) exhausted();
        seq.values.push_back(m);
    }
}

void validate(const ThresholdSequence& seq) {
    check_increasing(seq);
    switch (seq.scheme) {
        case Scheme::interval:
            for (std::size_t i = 0; i + 1 < seq.values.size(); ++i) {
                if (static_cast<u128>(seq.values[i + 1]) <= static_cast<u128>(i) * seq.values[i]) {
                    bad_threshold(seq, i + 1, "must exceed i*n_i");
                }
            }
            break;
        case Scheme::parity:
            if (!seq.values.empty() && seq.values[0] != 0) bad_threshold(seq, 0, "parity sequences start at 0");
            for (std::size_t i = 0; i < seq.values.size(); ++i) {
                if (seq.values[i] % 2 != 0) bad_threshold(seq, i, "must be even");
                if (i + 1 < seq.values.size()) {
                    const DyadicPair p = PairEnumeration::at(i);
                    if (static_cast<u128>(seq.values[i + 1]) <= static_cast<u128>(seq.values[i]) << (p.exponent + 1)) {
                        bad_threshold(seq, i + 1, "delta_i * n_{i+1} must exceed n_i (delta_i = " +
                                                      to_string(p.density()) + ")");
                    }
                }
            }
            break;
        case Scheme::slowdecay:
            validate_slowdecay_structure(seq);
            if (seq.bound) validate(seq, LowerBound::parse(*seq.bound));
            break;
    }
}

void validate(const ThresholdSequence& seq, const LowerBound& f) {
    check_increasing(seq);
    if (seq.scheme != Scheme::slowdecay) {
        validate(seq);
        return;
    }
    validate_slowdecay_structure(seq);
    for (std::size_t i = 1; i < seq.values.size(); ++i) {
        if (!f.at_most(seq.values[i], slowdecay_level(i))) {
            bad_threshold(seq, i, "f(n_i) must be at most " + to_string(slowdecay_level(i)));
        }
    }
}

std::string thresholds_to_json(const ThresholdSequence& seq) {
    nlohmann::ordered_json j;
    j["scheme"] = to_string(seq.scheme);
    j["values"] = seq.values;
    if (seq.bound) j["bound"] = *seq.bound;
    return j.dump() + "\n";
}

ThresholdSequence thresholds_from_json(const std::string& text) {
    ThresholdSequence seq;
    try {
        const auto j = nlohmann::json::parse(text);
        seq.scheme = parse_scheme(j.at("scheme").get<std::string>());
        seq.values = j.at("values").get<std::vector<std::uint64_t>>();
        if (j.contains("bound")) seq.bound = j.at("bound").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::format, std::string("threshold JSON: ") + e.what());
    }
    if (seq.bound) {
        validate(seq, LowerBound::parse(*seq.bound));
    } else {
        validate(seq);
    }
    return seq;
}

}  // namespace subsetcodec
