#include "subsetcodec/codecs.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "subsetcodec/error.hpp"
#include "subsetcodec/string_index.hpp"

namespace subsetcodec {

namespace {

void require_scheme(const ThresholdSequence& t, Scheme s) {
    if (t.scheme != s) {
        fail(ErrorKind::parameter, "expected " + to_string(s) + " thresholds, got " + to_string(t.scheme));
    }
}

}  // namespace

// ---------------------------------------------------------------------------

FinitePrefixSet dm_encode(const Bitstring& message, std::uint64_t horizon) {
    const auto needed = static_cast<std::size_t>(std::bit_width(horizon));
    if (message.size() < needed) {
        fail(ErrorKind::source_exhausted, "window " + std::to_string(horizon) + " needs " + std::to_string(needed) +
                                              " message bits, got " + std::to_string(message.size()));
    }
    FinitePrefixSet a(horizon);
    for (std::size_t len = 0; len <= std::min<std::size_t>(message.size(), 63); ++len) {
        if (first_index_of_length(len) >= horizon) break;
        const std::uint64_t idx = index_of(message.prefix(len));
        if (idx < horizon) a.set(idx);
    }
    return a;
}

bool dm_decode(const FinitePrefixSet& sample, std::size_t i) {
    std::vector<Bitstring> named;
    for (auto m : sample.members()) named.push_back(string_at(m));
    if (named.empty()) fail(ErrorKind::insufficient_sample, "empty sample");
    const auto longest = std::max_element(named.begin(), named.end(),
                                          [](const Bitstring& a, const Bitstring& b) { return a.size() < b.size(); });
    for (const auto& s : named) {
        if (!s.is_prefix_of(*longest)) {
            fail(ErrorKind::invalid_sample, "'" + s.to_string() + "' and '" + longest->to_string() +
                                                "' are not initial segments of one message");
        }
    }
    if (longest->size() <= i) {
        fail(ErrorKind::insufficient_sample, "longest named string has " + std::to_string(longest->size()) +
                                                 " bits, bit " + std::to_string(i) + " requested");
    }
    return (*longest)[i];
}

// ---------------------------------------------------------------------------

FinitePrefixSet interval_encode(const std::function<bool(std::uint64_t)>& indices, const ThresholdSequence& thresholds,
                                std::uint64_t horizon) {
    require_scheme(thresholds, Scheme::interval);
    validate(thresholds);
    if (thresholds.values.size() < 2 || thresholds.values.back() < horizon) {
        fail(ErrorKind::horizon, "interval thresholds end before the window does");
    }
    FinitePrefixSet a(horizon);
    for (std::size_t i = 0; i < thresholds.intervals(); ++i) {
        const std::uint64_t lo = thresholds.values[i];
        if (lo >= horizon) break;
        if (!indices(i)) continue;
        const std::uint64_t hi = std::min(thresholds.values[i + 1], horizon);
        for (std::uint64_t m = lo; m < hi; ++m) a.set(m);
    }
    return a;
}

std::vector<std::uint64_t> interval_decode(const FinitePrefixSet& sample, const ThresholdSequence& thresholds) {
    require_scheme(thresholds, Scheme::interval);
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < thresholds.intervals(); ++i) {
        const auto m = sample.next_member(thresholds.values[i]);
        if (m && *m < thresholds.values[i + 1]) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::uint64_t slowdecay_suffix(const Bitstring& message, std::size_t i) {
    if (2 * i + 1 > 63) fail(ErrorKind::parameter, "suffix longer than 63 bits");
    return (message.prefix(i).to_uint() << (i + 1)) | (std::uint64_t{1} << i);
}

SlowDecayCode slowdecay_encode(const Bitstring& message, const LowerBound& f, std::size_t count,
                               std::uint64_t horizon) {
    if (count == 0) fail(ErrorKind::parameter, "slow-decay coding needs at least one interval");
    ThresholdSequence seq;
    extend_slowdecay(seq, f, count + 1);
    if (seq.values.back() < horizon) {
        fail(ErrorKind::horizon, std::to_string(count) + " intervals end at " + std::to_string(seq.values.back()) +
                                       ", before the window end " + std::to_string(horizon));
    }
    FinitePrefixSet a(horizon);
    const std::uint64_t n1 = std::min(seq.values[1], horizon);
    for (std::uint64_t m = 0; m < n1; ++m) a.set(m);
    for (std::size_t i = 1; i < count; ++i) {
        const std::uint64_t lo = seq.values[i];
        if (lo >= horizon) break;
        const std::uint64_t hi = std::min(seq.values[i + 1], horizon);
        const std::uint64_t period = std::uint64_t{1} << (2 * i + 1);
        const std::uint64_t residue = slowdecay_suffix(message, i);
        std::uint64_t m = lo + (residue + period - lo % period) % period;
        for (; m < hi; m += period) a.set(m);
    }
    return SlowDecayCode{std::move(a), std::move(seq)};
}

bool slowdecay_decode(const FinitePrefixSet& sample, std::uint64_t n1, std::size_t i) {
    for (auto m = sample.next_member(std::max<std::uint64_t>(n1, 1)); m; m = sample.next_member(*m + 1)) {
        const auto k = static_cast<std::size_t>(std::countr_zero(*m));
        if (k <= i || 2 * k >= 64) continue;
        return ((*m >> (2 * k - i)) & 1U) != 0;
    }
    fail(ErrorKind::insufficient_sample,
         "no member >= " + std::to_string(n1) + " ends with more than " + std::to_string(i) + " zeros");
}

// ---------------------------------------------------------------------------

namespace {

ParityCode parity_fill(const Bitstring& message, ThresholdSequence seq, std::uint64_t horizon) {
    FinitePrefixSet a(horizon);
    for (std::size_t i = 0; i < seq.intervals(); ++i) {
        const std::uint64_t lo = seq.values[i];
        if (lo >= horizon) break;
        const std::uint64_t j = PairEnumeration::at(i).message_index;
        if (j >= message.size()) {
            fail(ErrorKind::source_exhausted, "interval " + std::to_string(i) + " carries message bit " +
                                                  std::to_string(j) + ", message has " +
                                                  std::to_string(message.size()) + " bits");
        }
        const std::uint64_t hi = std::min(seq.values[i + 1], horizon);
        const std::uint64_t parity = message[static_cast<std::size_t>(j)] ? 1 : 0;
        for (std::uint64_t m = lo + parity; m < hi; m += 2) a.set(m);  // lo is even
    }
    return ParityCode{std::move(a), std::move(seq)};
}

}  // namespace

ParityCode parity_encode(const Bitstring& message, std::uint64_t horizon) {
    return parity_fill(message, parity_thresholds_covering(horizon), horizon);
}

ParityCode parity_encode(const Bitstring& message, std::size_t count, std::uint64_t horizon) {
    ThresholdSequence seq;
    extend_parity(seq, count + 1);
    if (seq.values.back() < horizon) {
        fail(ErrorKind::horizon, std::to_string(count) + " intervals end at " + std::to_string(seq.values.back()) +
                                       ", before the window end " + std::to_string(horizon));
    }
    return parity_fill(message, std::move(seq), horizon);
}

std::vector<std::uint64_t> parity_covered_indices(const ThresholdSequence& thresholds, std::uint64_t horizon) {
    std::set<std::uint64_t> js;
    for (std::size_t i = 0; i < thresholds.intervals() && thresholds.values[i] < horizon; ++i) {
        js.insert(PairEnumeration::at(i).message_index);
    }
    return {js.begin(), js.end()};
}

bool parity_decode(const FinitePrefixSet& sample, std::uint64_t j, const ThresholdSequence& thresholds) {
    require_scheme(thresholds, Scheme::parity);
    std::optional<bool> bit;
    std::uint64_t first_witness = 0;
    for (std::size_t i = 0; i < thresholds.intervals(); ++i) {
        const std::uint64_t lo = thresholds.values[i];
        if (lo >= sample.horizon()) break;
        if (PairEnumeration::at(i).message_index != j) continue;
        const std::uint64_t hi = thresholds.values[i + 1];
        for (auto m = sample.next_member(lo); m && *m < hi; m = sample.next_member(*m + 1)) {
            const bool b = (*m & 1U) != 0;
            if (!bit) {
                bit = b;
                first_witness = *m;
            } else if (*bit != b) {
                fail(ErrorKind::invalid_sample, "elements " + std::to_string(first_witness) + " and " +
                                                    std::to_string(*m) + " disagree on bit " + std::to_string(j));
            }
        }
    }
    if (!bit) {
        fail(ErrorKind::insufficient_sample, "sample meets no interval carrying bit " + std::to_string(j));
    }
    return *bit;
}

// ---------------------------------------------------------------------------

std::uint32_t residue_bits(const Rational& delta) {
    if (delta <= 0 || delta > 1) fail(ErrorKind::parameter, "density must lie in (0, 1], got " + to_string(delta));
    std::uint32_t m = 0;
    // largest m with δ <= 2^{-m}
    while (m < 62 && delta <= Rational(1, std::int64_t{1} << (m + 1))) ++m;
    return m;
}

Bitstring residue_pad(const Bitstring& rho, std::uint32_t m) {
    if (rho.size() >= m) return rho;
    Bitstring out = rho;
    out.push_back(true);
    while (out.size() < m) out.push_back(false);
    return out;
}

FinitePrefixSet residue_encode(const Bitstring& rho, std::uint64_t floor_n, const Rational& delta,
                               std::uint64_t horizon) {
    const std::uint32_t m = residue_bits(delta);
    const std::uint64_t modulus = std::uint64_t{1} << m;
    const std::uint64_t residue = residue_pad(rho, m).prefix(m).to_uint();
    FinitePrefixSet a(horizon);
    if (floor_n >= horizon) return a;
    for (std::uint64_t n = floor_n + (residue + modulus - floor_n % modulus) % modulus; n < horizon; n += modulus) {
        a.set(n);
    }
    return a;
}

ResidueDecoding residue_decode(std::uint64_t n, std::uint64_t floor_n, std::uint32_t m) {
    if (n < floor_n) {
        fail(ErrorKind::invalid_sample, std::to_string(n) + " lies below the floor " + std::to_string(floor_n));
    }
    if (m > 63) fail(ErrorKind::parameter, "residue width above 63 bits");
    const std::uint64_t r = m == 0 ? 0 : n & ((std::uint64_t{1} << m) - 1);
    return ResidueDecoding{Bitstring::from_uint(r, m), n};
}

// ---------------------------------------------------------------------------

FinitePrefixSet evenodd_split(const FinitePrefixSet& a) {
    FinitePrefixSet b(2 * a.horizon());
    for (std::uint64_t n = 0; n < a.horizon(); ++n) b.set(a.test(n) ? 2 * n : 2 * n + 1);
    return b;
}

EvenOddParts evenodd_extract(const FinitePrefixSet& c) {
    const std::uint64_t h = (c.horizon() + 1) / 2;
    EvenOddParts parts{FinitePrefixSet(h), FinitePrefixSet(h), {}};
    for (auto m : c.members()) {
        const std::uint64_t n = m / 2;
        if (m % 2 == 0) {
            if (c.test(m + 1)) {
                fail(ErrorKind::inconsistent_sample, "both " + std::to_string(m) + " and " + std::to_string(m + 1) +
                                                         " are present");
            }
            parts.even.set(n);
            parts.f.define(n, true);
        } else {
            parts.odd.set(n);
            parts.f.define(n, false);
        }
    }
    return parts;
}

}  // namespace subsetcodec
