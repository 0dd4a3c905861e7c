#include "subsetcodec/pa_diag.hpp"

#include <bit>
#include <stdexcept>

#include "json.hpp"
#include "subsetcodec/density.hpp"
#include "subsetcodec/error.hpp"
#include "subsetcodec/sampling.hpp"
#include "subsetcodec/string_index.hpp"

namespace subsetcodec {

void SteppedMachineTable::add(const Entry& e) {
    if (e.stage > budget_) {
        fail(ErrorKind::parameter, "machine " + std::to_string(e.machine) + " converges at stage " +
                                       std::to_string(e.stage) + ", beyond the budget " + std::to_string(budget_));
    }
    const auto [it, inserted] = entries_.emplace(std::make_pair(e.machine, e.input), Convergence{e.output, e.stage});
    if (!inserted) {
        fail(ErrorKind::parameter, "duplicate entry for machine " + std::to_string(e.machine) + " on input " +
                                       std::to_string(e.input));
    }
}

std::vector<SteppedMachineTable::Entry> SteppedMachineTable::entries() const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [key, c] : entries_) out.push_back(Entry{key.first, key.second, c.output, c.stage});
    return out;
}

std::optional<SteppedMachineTable::Convergence> SteppedMachineTable::converges(std::uint64_t machine,
                                                                               std::uint64_t input) const {
    auto it = entries_.find({machine, input});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<bool> SteppedMachineTable::run(std::uint64_t machine, std::uint64_t input, std::uint64_t stages) const {
    auto c = converges(machine, input);
    if (!c || c->stage > stages) return std::nullopt;
    return c->output;
}

SteppedMachineTable SteppedMachineTable::from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        SteppedMachineTable table(j.at("budget").get<std::uint64_t>());
        for (const auto& e : j.at("entries")) {
            const int out = e.at("output").get<int>();
            if (out != 0 && out != 1) fail(ErrorKind::format, "machine outputs must be 0 or 1");
            table.add(Entry{e.at("machine").get<std::uint64_t>(), e.at("input").get<std::uint64_t>(), out == 1,
                            e.at("stage").get<std::uint64_t>()});
        }
        return table;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::format, std::string("machine table JSON: ") + e.what());
    }
}

std::string SteppedMachineTable::to_json() const {
    nlohmann::ordered_json j;
    j["budget"] = budget_;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries()) {
        j["entries"].push_back({{"machine", e.machine}, {"input", e.input}, {"output", e.output ? 1 : 0}, {"stage", e.stage}});
    }
    return j.dump(2) + "\n";
}

std::uint32_t fiber_of(std::uint64_t x) {
    return static_cast<std::uint32_t>(std::countr_zero(x + 1));  // x = 2^64-1 maps to 64
}

std::uint64_t next_in_fiber(std::uint64_t after, std::uint32_t v) {
    if (v > 62) fail(ErrorKind::parameter, "fiber index too large");
    // x + 1 ≡ 2^v (mod 2^{v+1}) with x + 1 >= after + 2
    const std::uint64_t period = std::uint64_t{1} << (v + 1);
    const std::uint64_t target = std::uint64_t{1} << v;
    const std::uint64_t y0 = after + 2;
    const std::uint64_t y = y0 + (target + period - y0 % period) % period;
    return y - 1;
}

namespace {

// Indices i whose constraint is live at length ℓ: Φ_i(x_i)↓, Φ_{i,ℓ}(x_i)↑, x_i < ℓ.
std::uint64_t blocking_at(const PaConstruction& pc, std::uint64_t length) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < pc.xs.size(); ++i) {
        if (pc.stages[i] && *pc.stages[i] > length && pc.xs[i] < length) ++count;
    }
    return count;
}

}  // namespace

bool pa_member(const PaConstruction& pc, const SteppedMachineTable& /*table*/, const Bitstring& sigma) {
    for (std::size_t i = 0; i < pc.xs.size(); ++i) {
        if (!pc.stages[i] || *pc.stages[i] <= sigma.size()) continue;
        const std::uint64_t x = pc.xs[i];
        if (x >= sigma.size()) continue;
        if (sigma[static_cast<std::size_t>(x)] != *pc.f(x)) return false;
    }
    return true;
}

PaConstruction pa_construct(const SteppedMachineTable& table, std::size_t k, std::uint64_t horizon) {
    PaConstruction pc;
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (x >= horizon) {
            fail(ErrorKind::horizon, "x_" + std::to_string(i) + " = " + std::to_string(x) + " falls outside [0, " +
                                         std::to_string(horizon) + ")");
        }
        pc.xs.push_back(x);
        const auto c = table.converges(i, x);
        if (c) {
            pc.f.define(x, !c->output);
            pc.stages.push_back(c->stage);
        } else {
            pc.stages.push_back(std::nullopt);
        }
        if (i + 1 < k) x = next_in_fiber(c ? c->stage : x, static_cast<std::uint32_t>(i + 1));
    }

    pc.a = FinitePrefixSet(horizon);
    for (std::uint64_t idx = 0; idx < horizon; ++idx) {
        if (pa_member(pc, table, string_at(idx))) pc.a.set(idx);
    }

    const std::uint64_t max_len = horizon == 0 ? 0 : string_length_at(horizon - 1);
    for (std::uint64_t len = 0; len <= max_len; ++len) {
        pc.max_blocking_per_length = std::max(pc.max_blocking_per_length, blocking_at(pc, len));
    }
    if (pc.max_blocking_per_length > 1) {
        throw std::logic_error("two diagonalization constraints live at one string length");
    }
    return pc;
}

std::uint64_t pa_decodable_limit(const FinitePrefixSet& b) {
    const auto top = b.max_member();
    return top ? string_length_at(*top) : 0;
}

bool pa_decode(const FinitePrefixSet& b, const SteppedMachineTable& table, std::uint64_t x) {
    // strings are listed by length, so the first index of length x+1 bounds the search
    const std::uint64_t start = x >= 63 ? UINT64_MAX : first_index_of_length(x + 1);
    const auto idx = b.next_member(start);
    if (!idx) {
        fail(ErrorKind::insufficient_sample, "no string in the sample is longer than " + std::to_string(x));
    }
    const Bitstring sigma = string_at(*idx);
    const auto out = table.run(fiber_of(x), x, sigma.size());
    if (out) return !*out;
    return sigma[static_cast<std::size_t>(x)];
}

PaReport pa_verify(const PaConstruction& pc, const SteppedMachineTable& table, std::size_t samples,
                   std::uint64_t seed) {
    PaReport report;
    report.max_blocking_per_length = pc.max_blocking_per_length;
    const Rational quarter(1, 4);
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n < pc.a.horizon(); ++n) {
        count += pc.a.test(n) ? 1U : 0U;
        if (n < 3) continue;
        const Rational d(static_cast<std::int64_t>(count), static_cast<std::int64_t>(n + 1));
        report.min_density = std::min(report.min_density, d);
        if (d < quarter && report.density_ok) {
            report.density_ok = false;
            report.first_density_violation = n;
        }
    }

    static const Rational kKeep[] = {Rational(1, 2), Rational(1, 4), Rational(1, 8)};
    for (std::size_t s = 0; s < samples; ++s) {
        FinitePrefixSet b;
        if (s % 4 == 0) {
            const std::uint64_t stride = 2 + (s / 4) % 3;
            b = stride_sample(pc.a, stride, (s / 4) % stride);
        } else {
            b = bernoulli_sample(pc.a, kKeep[s % 3], seed + s);
        }
        ++report.samples;
        const std::uint64_t limit = pa_decodable_limit(b);
        for (std::uint64_t x = 0; x < limit; ++x) {
            const bool g = pa_decode(b, table, x);
            ++report.checked_points;
            const auto fx = pc.f(x);
            if (fx && *fx != g) ++report.completion_failures;
        }
        for (std::size_t i = 0; i < pc.xs.size(); ++i) {
            if (!pc.stages[i] || pc.xs[i] >= limit) continue;
            const bool g = pa_decode(b, table, pc.xs[i]);
            const bool phi = table.converges(i, pc.xs[i])->output;
            if (g != !phi) ++report.diagonal_failures;
        }
    }
    return report;
}

SteppedMachineTable fixed_pa_table() {
    SteppedMachineTable t(512);
    // Diagonal inputs x_0..x_7 produced by the construction: 0, 5, 11, 23, 47, 95, 191, 383.
    t.add({0, 0, false, 2});
    t.add({1, 5, true, 8});
    t.add({2, 11, false, 14});
    // machine 3 diverges on 23
    t.add({4, 47, true, 50});
    // machine 5 diverges on 95
    t.add({6, 191, false, 200});
    t.add({7, 383, true, 400});
    // Off-diagonal convergences that the decoder must also respect.
    t.add({0, 2, true, 4});
    t.add({1, 1, true, 3});
    t.add({2, 3, false, 6});
    t.add({3, 7, true, 9});
    return t;
}

}  // namespace subsetcodec
