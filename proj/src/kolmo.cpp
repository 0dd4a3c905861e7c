#include "subsetcodec/kolmo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <set>
#include <string>

#include "subsetcodec/density.hpp"
#include "subsetcodec/error.hpp"

namespace subsetcodec {

namespace {

// Output of a short run: at most 64 bits, first emitted bit most significant.
struct ShortOutput {
    std::uint32_t length = 0;
    std::uint64_t bits = 0;

    friend bool operator==(const ShortOutput&, const ShortOutput&) = default;
    friend auto operator<=>(const ShortOutput&, const ShortOutput&) = default;

    Bitstring to_bitstring() const { return Bitstring::from_uint(bits, length); }
};

// Shared interpreter. `slot(j)` is the j-th 3-bit field, `slots` how many
// complete fields exist. `emit(bit)` and `query(pos)` are callbacks.
template <class Slot, class Emit, class Query>
bool interpret(std::uint64_t slots, Slot slot, std::uint64_t max_steps, std::uint64_t max_query, Emit emit,
               Query query, std::uint64_t& steps, std::uint64_t& queries) {
    if (slots == 0) {
        // Only the empty program halts without executing anything; a lone
        // partial opcode runs off the end.
        return true;
    }
    std::uint64_t pc = 0;
    std::uint64_t pointer = 0;
    for (;;) {
        if (pc >= slots) return false;
        if (steps == max_steps) return false;
        ++steps;
        switch (static_cast<Opcode>(slot(pc))) {
            case Opcode::emit0:
                emit(false);
                ++pc;
                break;
            case Opcode::emit1:
                emit(true);
                ++pc;
                break;
            case Opcode::halt:
                return true;
            case Opcode::query_branch: {
                if (pc + 2 >= slots) return false;
                if (pointer > max_query) return false;
                ++queries;
                const bool bit = query(pointer);
                pc = pc + 3 + (bit ? slot(pc + 1) : slot(pc + 2));
                break;
            }
            case Opcode::inc_pointer:
                ++pointer;
                ++pc;
                break;
            case Opcode::jump_back: {
                if (pc + 1 >= slots) return false;
                const std::uint64_t k = slot(pc + 1);
                if (k > pc) return false;
                pc -= k;
                break;
            }
            case Opcode::nop:
                ++pc;
                break;
            case Opcode::reserved:
                return false;
        }
    }
}

// Fast path for programs of at most 63 bits against an oracle inside [0, 64).
bool run_short(std::uint64_t code, std::uint32_t length, std::uint64_t oracle_mask, std::uint64_t budget,
               ShortOutput& out) {
    if (length == 0) {
        out = {};
        return true;
    }
    const std::uint64_t slots = length / 3;
    if (slots == 0) return false;
    auto slot = [&](std::uint64_t j) { return static_cast<unsigned>((code >> (length - 3 * j - 3)) & 7U); };
    out = {};
    std::uint64_t steps = 0, queries = 0;
    return interpret(
        slots, slot, budget, budget,
        [&](bool b) {
            out.bits = (out.bits << 1) | (b ? 1U : 0U);
            ++out.length;
        },
        [&](std::uint64_t pos) { return pos < 64 && ((oracle_mask >> pos) & 1U) != 0; }, steps, queries);
}

std::uint64_t oracle_max(const FinitePrefixSet& s) {
    const auto m = s.max_member();
    if (*m > kMaxOracleMax) {
        fail(ErrorKind::budget, "C^s enumeration is capped at max(s) <= " + std::to_string(kMaxOracleMax) +
                                    ", got " + std::to_string(*m));
    }
    return *m;
}

std::uint64_t oracle_mask(const FinitePrefixSet& s) {
    const auto w = s.words();
    return w.empty() ? 0 : w[0];
}

// Least length < length_bound of a qualifying program for each output.
std::map<ShortOutput, std::uint64_t> short_table(std::uint64_t mask, std::uint64_t budget, std::uint64_t length_bound,
                                                 Exec exec) {
    std::map<ShortOutput, std::uint64_t> table;
    for (std::uint64_t len = 0; len < length_bound; ++len) {
        const auto count = static_cast<std::int64_t>(std::uint64_t{1} << len);
        const auto l = static_cast<std::uint32_t>(len);
        if (exec == Exec::serial || count < 256) {
            ShortOutput out;
            for (std::int64_t code = 0; code < count; ++code) {
                if (run_short(static_cast<std::uint64_t>(code), l, mask, budget, out)) table.emplace(out, len);
            }
        } else {
#pragma omp parallel
            {
                std::set<ShortOutput> local;
                ShortOutput out;
#pragma omp for schedule(static) nowait
                for (std::int64_t code = 0; code < count; ++code) {
                    if (run_short(static_cast<std::uint64_t>(code), l, mask, budget, out)) local.insert(out);
                }
#pragma omp critical(subsetcodec_kolmo_merge)
                for (const auto& o : local) table.emplace(o, len);
            }
        }
    }
    return table;
}

}  // namespace

RunResult run_program(const Bitstring& program, const FinitePrefixSet& oracle, std::uint64_t max_steps,
                      std::uint64_t max_query) {
    RunResult r;
    Bitstring out;
    if (program.empty()) {
        r.output = out;
        return r;
    }
    const std::uint64_t slots = program.size() / 3;
    if (slots == 0) return r;
    auto slot = [&](std::uint64_t j) {
        return static_cast<unsigned>((program[3 * j] ? 4U : 0U) | (program[3 * j + 1] ? 2U : 0U) |
                                     (program[3 * j + 2] ? 1U : 0U));
    };
    const bool halted = interpret(
        slots, slot, max_steps, max_query, [&](bool b) { out.push_back(b); },
        [&](std::uint64_t pos) {
            r.queried.push_back(pos);
            return oracle.test(pos);
        },
        r.steps, r.queries);
    if (halted) r.output = std::move(out);
    return r;
}

Bitstring literal_program(const Bitstring& sigma) {
    Bitstring p;
    auto put = [&](Opcode op) {
        const auto v = static_cast<unsigned>(op);
        p.push_back((v & 4U) != 0);
        p.push_back((v & 2U) != 0);
        p.push_back((v & 1U) != 0);
    };
    for (std::size_t i = 0; i < sigma.size(); ++i) put(sigma[i] ? Opcode::emit1 : Opcode::emit0);
    put(Opcode::halt);
    return p;
}

Bitstring program_from_code(std::uint64_t code, std::uint32_t length) {
    if (length > 64) fail(ErrorKind::parameter, "program codes are limited to 64 bits");
    return Bitstring::from_uint(code, length);
}

Complexity c_finite(const FinitePrefixSet& s, const Bitstring& sigma, Exec exec) {
    if (s.empty()) return std::nullopt;
    const std::uint64_t m = oracle_max(s);
    // Emitting σ and halting takes |σ|+1 steps.
    if (sigma.size() + 1 > m && !sigma.empty()) return std::nullopt;
    if (sigma.empty()) return 0;  // the empty program
    const std::uint64_t mask = oracle_mask(s);
    const ShortOutput target{static_cast<std::uint32_t>(sigma.size()), sigma.to_uint()};

    for (std::uint64_t len = 1; len <= m; ++len) {
        const auto count = static_cast<std::int64_t>(std::uint64_t{1} << len);
        const auto l = static_cast<std::uint32_t>(len);
        bool found = false;
        if (exec == Exec::serial || count < 256) {
            ShortOutput out;
            for (std::int64_t code = 0; code < count && !found; ++code) {
                found = run_short(static_cast<std::uint64_t>(code), l, mask, m, out) && out == target;
            }
        } else {
            std::atomic<bool> hit{false};
#pragma omp parallel for schedule(static)
            for (std::int64_t code = 0; code < count; ++code) {
                if (hit.load(std::memory_order_relaxed)) continue;
                ShortOutput out;
                if (run_short(static_cast<std::uint64_t>(code), l, mask, m, out) && out == target) hit = true;
            }
            found = hit.load();
        }
        if (found) return len;
    }
    return std::nullopt;
}

std::map<Bitstring, std::uint64_t> complexity_table(const FinitePrefixSet& s, std::uint64_t length_bound, Exec exec) {
    std::map<Bitstring, std::uint64_t> result;
    if (s.empty()) return result;
    const std::uint64_t m = oracle_max(s);
    for (const auto& [out, len] : short_table(oracle_mask(s), m, std::min(length_bound, m + 1), exec)) {
        result.emplace(out.to_bitstring(), len);
    }
    return result;
}

std::vector<Bitstring> low_complexity_strings(const FinitePrefixSet& s, std::uint32_t k, Exec exec) {
    std::vector<Bitstring> result;
    for (const auto& [tau, len] : complexity_table(s, k, exec)) result.push_back(tau);
    return result;
}

Complexity c_family(const Bitstring& sigma, std::span<const FinitePrefixSet> family) {
    if (family.empty()) fail(ErrorKind::parameter, "family must be nonempty");
    std::uint64_t worst = 0;
    for (const auto& s : family) {
        const auto c = c_finite(s, sigma);
        if (!c) return std::nullopt;
        worst = std::max(worst, *c);
    }
    return worst;
}

CountingSweep counting_bound_sweep(std::uint64_t max_oracle_max, std::uint32_t max_k, Exec exec) {
    if (max_oracle_max > kMaxOracleMax) fail(ErrorKind::budget, "max(s) is capped at 16");
    if (max_k > 7) fail(ErrorKind::parameter, "k is limited to 7");
    const auto oracles = static_cast<std::int64_t>((std::uint64_t{1} << (max_oracle_max + 1)) - 1);

    auto check = [&](std::uint64_t mask, CountingSweep& acc) {
        const std::uint64_t m = static_cast<std::uint64_t>(std::bit_width(mask)) - 1;
        const auto table = short_table(mask, m, std::min<std::uint64_t>(max_k, m + 1), Exec::serial);
        ++acc.oracles;
        for (std::uint32_t k = 0; k <= max_k; ++k) {
            const auto count = static_cast<std::uint64_t>(
                std::count_if(table.begin(), table.end(), [&](const auto& e) { return e.second < k; }));
            ++acc.checks;
            if (count >= (std::uint64_t{1} << k)) ++acc.violations;
            acc.max_count[k] = std::max(acc.max_count[k], count);
        }
    };
    auto merge = [](CountingSweep& into, const CountingSweep& from) {
        into.oracles += from.oracles;
        into.checks += from.checks;
        into.violations += from.violations;
        for (int k = 0; k < 8; ++k) into.max_count[k] = std::max(into.max_count[k], from.max_count[k]);
    };

    CountingSweep total;
    if (exec == Exec::serial) {
        for (std::int64_t mask = 1; mask <= oracles; ++mask) check(static_cast<std::uint64_t>(mask), total);
    } else {
#pragma omp parallel
        {
            CountingSweep local;
#pragma omp for schedule(dynamic, 64) nowait
            for (std::int64_t mask = 1; mask <= oracles; ++mask) check(static_cast<std::uint64_t>(mask), local);
#pragma omp critical(subsetcodec_counting_merge)
            merge(total, local);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------

namespace {

void validate_family(const KSafeInstance& inst) {
    std::set<Bitstring> seen;
    for (const auto& t : inst.family) {
        if (!seen.insert(t).second) fail(ErrorKind::parameter, "duplicate string in F: " + t.to_string());
    }
    if (inst.universe > kMaxOracleMax + 1) {
        fail(ErrorKind::budget, "universe is capped at " + std::to_string(kMaxOracleMax + 1) + " positions");
    }
    for (const auto& p : inst.pieces) {
        if (p.horizon() != inst.universe) fail(ErrorKind::parameter, "pieces must share the window [0, universe)");
    }
}

// Visits every nonempty s ⊆ `piece` with |s| >= m; stops at the first s for
// which `violates` holds and returns it.
template <class Violates>
std::optional<std::uint64_t> scan_subsets(std::uint64_t piece, std::uint64_t m, std::uint64_t& checked,
                                          Violates violates) {
    for (std::uint64_t s = piece; s != 0; s = (s - 1) & piece) {
        if (static_cast<std::uint64_t>(std::popcount(s)) < m) continue;
        ++checked;
        if (violates(s)) return s;
    }
    return std::nullopt;
}

std::uint64_t low_count_with(std::uint64_t s_mask, std::uint64_t universe, std::uint32_t k,
                             const std::vector<const Bitstring*>& extra) {
    const auto s = FinitePrefixSet::from_mask(universe, s_mask);
    std::set<Bitstring> all;
    for (auto& t : low_complexity_strings(s, k)) all.insert(std::move(t));
    for (const auto* t : extra) all.insert(*t);
    return all.size();
}

void check_budget(std::uint64_t needed, std::uint64_t budget, const std::string& what) {
    if (needed > budget) {
        fail(ErrorKind::budget, what + " needs " + std::to_string(needed) + " oracle subsets, budget is " +
                                    std::to_string(budget) + " (set SUBSETCODEC_BUDGET to raise it)");
    }
}

std::uint64_t two_pow_k(std::uint32_t k) {
    return k >= 63 ? UINT64_MAX : std::uint64_t{1} << k;
}

}  // namespace

KSafeVerdict k_safe_check(const KSafeInstance& inst, std::uint64_t budget) {
    validate_family(inst);
    FinitePrefixSet cover(inst.universe);
    for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
        if (!inst.pieces[i].is_disjoint_from(cover)) {
            fail(ErrorKind::invalid_partition, "piece " + std::to_string(i) + " overlaps an earlier piece");
        }
        for (auto x : inst.pieces[i].members()) cover.set(x);
    }
    if (!(cover == FinitePrefixSet::full(inst.universe))) {
        fail(ErrorKind::invalid_partition, "pieces do not cover [0, " + std::to_string(inst.universe) + ")");
    }

    std::uint64_t needed = 0;
    for (const auto& p : inst.pieces) needed += std::uint64_t{1} << p.size();
    check_budget(needed, budget, "k-safe check");

    std::vector<const Bitstring*> all_f;
    for (const auto& t : inst.family) all_f.push_back(&t);
    const std::uint64_t bound = two_pow_k(inst.k);

    KSafeVerdict v;
    for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
        std::uint64_t low = 0;
        const auto bad = scan_subsets(oracle_mask(inst.pieces[i]), inst.m, v.oracles_checked, [&](std::uint64_t s) {
            low = low_count_with(s, inst.universe, inst.k, all_f);
            return low > bound;
        });
        if (bad) {
            v.safe = false;
            v.pieces = {i};
            v.oracle = FinitePrefixSet::from_mask(inst.universe, *bad);
            v.low_complexity = low;
            return v;
        }
    }
    return v;
}

KSafeVerdict k_safe_density_check(const KSafeInstance& inst, const Rational& delta, std::uint64_t budget) {
    validate_family(inst);
    if (inst.pieces.size() != inst.family.size()) {
        fail(ErrorKind::parameter, "need exactly one piece per string of F");
    }
    if (inst.pieces.size() > 20) fail(ErrorKind::budget, "at most 20 pieces");
    for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
        if (!is_delta_dense(inst.pieces[i], delta)) {
            fail(ErrorKind::precondition, "piece " + std::to_string(i) + " is not " + to_string(delta) + "-dense");
        }
    }

    const std::uint64_t subfamilies = std::uint64_t{1} << inst.pieces.size();
    auto intersection = [&](std::uint64_t index_set) {
        std::uint64_t mask = inst.universe == 0 ? 0 : (std::uint64_t{1} << inst.universe) - 1;
        for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
            if ((index_set >> i) & 1U) mask &= oracle_mask(inst.pieces[i]);
        }
        return mask;
    };
    std::uint64_t needed = 0;
    for (std::uint64_t index_set = 1; index_set < subfamilies; ++index_set) {
        needed += std::uint64_t{1} << std::popcount(intersection(index_set));
    }
    check_budget(needed, budget, "k-safe density check");

    const std::uint64_t bound = two_pow_k(inst.k);
    KSafeVerdict v;
    for (std::uint64_t index_set = 1; index_set < subfamilies; ++index_set) {
        std::vector<const Bitstring*> chosen;
        for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
            if ((index_set >> i) & 1U) chosen.push_back(&inst.family[i]);
        }
        std::uint64_t low = 0;
        const auto bad = scan_subsets(intersection(index_set), inst.m, v.oracles_checked, [&](std::uint64_t s) {
            low = low_count_with(s, inst.universe, inst.k, chosen);
            return low > bound;
        });
        if (bad) {
            v.safe = false;
            for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
                if ((index_set >> i) & 1U) v.pieces.push_back(i);
            }
            v.oracle = FinitePrefixSet::from_mask(inst.universe, *bad);
            v.low_complexity = low;
            return v;
        }
    }
    return v;
}

}  // namespace subsetcodec
