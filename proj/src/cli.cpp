#include "subsetcodec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "subsetcodec/checks.hpp"
#include "subsetcodec/codecs.hpp"
#include "subsetcodec/density.hpp"
#include "subsetcodec/error.hpp"
#include "subsetcodec/exec.hpp"
#include "subsetcodec/kolmo.hpp"
#include "subsetcodec/lemmas.hpp"
#include "subsetcodec/pa_diag.hpp"
#include "subsetcodec/sampling.hpp"
#include "subsetcodec/set_io.hpp"
#include "subsetcodec/string_index.hpp"

namespace subsetcodec {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorKind::parameter, "not a natural number: '" + item + "'");
        }
    }
    return out;
}

Json set_summary(const FinitePrefixSet& a) {
    Json j;
    j["horizon"] = a.horizon();
    j["size"] = a.size();
    return j;
}

void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::parameter, what);
}

// ---------------------------------------------------------------------------

struct EncodeArgs {
    std::string scheme;
    std::string message;
    std::uint64_t horizon = 0;
    std::string out;
    std::string indices;
    std::size_t count = 0;
    std::string bound = "inv_sqrt";
    std::string delta;
    std::uint64_t floor_n = 0;
    std::string in;
    std::string table;
    std::size_t machines = 8;
    std::string thresholds_out;
    std::string profile_out;
};

int run_encode(const EncodeArgs& a, std::ostream& out) {
    require(a.horizon > 0, "--horizon must be positive");
    FinitePrefixSet set;
    std::optional<ThresholdSequence> thresholds;
    Json report;
    report["scheme"] = a.scheme;

    auto message = [&] {
        require(!a.message.empty(), "--message is required for scheme " + a.scheme);
        return Bitstring::parse(a.message);
    };

    if (a.scheme == "dm") {
        set = dm_encode(message(), a.horizon);
    } else if (a.scheme == "interval") {
        const auto list = parse_list(a.indices);
        const std::set<std::uint64_t> idx(list.begin(), list.end());
        auto t = interval_thresholds_covering(a.horizon);
        set = interval_encode([&](std::uint64_t i) { return idx.count(i) != 0; }, t, a.horizon);
        thresholds = std::move(t);
    } else if (a.scheme == "slowdecay") {
        const auto f = LowerBound::parse(a.bound);
        auto code = slowdecay_encode(message(), f, a.count == 0 ? 3 : a.count, a.horizon);
        set = std::move(code.set);
        thresholds = std::move(code.thresholds);
    } else if (a.scheme == "parity") {
        auto code = a.count == 0 ? parity_encode(message(), a.horizon) : parity_encode(message(), a.count, a.horizon);
        report["covered_indices"] = parity_covered_indices(code.thresholds, a.horizon);
        set = std::move(code.set);
        thresholds = std::move(code.thresholds);
    } else if (a.scheme == "residue") {
        require(!a.delta.empty(), "--delta is required for scheme residue");
        const auto delta = parse_rational(a.delta);
        set = residue_encode(message(), a.floor_n, delta, a.horizon);
        report["m"] = residue_bits(delta);
    } else if (a.scheme == "evenodd") {
        require(!a.in.empty(), "--in is required for scheme evenodd");
        const auto source = read_set(a.in);
        set = evenodd_split(source).resized(a.horizon);
    } else if (a.scheme == "pa") {
        const auto table = a.table.empty() ? fixed_pa_table() : SteppedMachineTable::from_json(read_text(a.table));
        const auto pc = pa_construct(table, a.machines, a.horizon);
        report["xs"] = pc.xs;
        set = pc.a;
    } else {
        fail(ErrorKind::parameter, "unknown scheme '" + a.scheme + "'");
    }
    if (!a.thresholds_out.empty() && !thresholds) {
        fail(ErrorKind::parameter, "scheme " + a.scheme + " has no threshold sequence");
    }

    write_set(a.out, set);
    if (thresholds && !a.thresholds_out.empty()) write_file_atomically(a.thresholds_out, thresholds_to_json(*thresholds) + "\n");
    if (!a.profile_out.empty()) write_profile_csv(a.profile_out, density_profile(set));

    report.update(set_summary(set));
    if (thresholds) report["thresholds"] = thresholds->values;
    report["out"] = a.out;
    out << report.dump() << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct DecodeArgs {
    std::string scheme;
    std::string in;
    std::string thresholds;
    std::optional<std::uint64_t> j;
    std::optional<std::uint64_t> i;
    std::optional<std::uint64_t> x;
    std::string delta;
    std::uint64_t floor_n = 0;
    std::string table;
    std::uint64_t stride = 0;
    std::uint64_t offset = 0;
    std::string thin;
    std::string thin_floor;
    std::uint64_t seed = 0;
};

int run_decode(const DecodeArgs& a, std::ostream& out) {
    const std::set<std::string> known{"dm", "interval", "slowdecay", "parity", "residue", "evenodd", "pa"};
    require(known.count(a.scheme) != 0, "unknown scheme '" + a.scheme + "'");
    const bool needs_thresholds = a.scheme == "interval" || a.scheme == "slowdecay" || a.scheme == "parity";
    require(!needs_thresholds || !a.thresholds.empty(), "--thresholds is required for scheme " + a.scheme);
    require(a.scheme != "parity" || a.j.has_value(), "--j is required for scheme parity");
    require((a.scheme != "dm" && a.scheme != "slowdecay") || a.i.has_value(), "--i is required for scheme " + a.scheme);
    require(a.scheme != "pa" || a.x.has_value(), "--x is required for scheme pa");
    require(a.scheme != "residue" || !a.delta.empty(), "--delta is required for scheme residue");
    require(a.thin_floor.empty() || !a.thin.empty(), "--thin-floor needs --thin");

    FinitePrefixSet sample = read_set(a.in);
    std::optional<ThresholdSequence> t;
    if (needs_thresholds) t = thresholds_from_json(read_text(a.thresholds));
    if (a.stride > 0) sample = stride_sample(sample, a.stride, a.offset);
    if (!a.thin.empty()) {
        const auto p = parse_rational(a.thin);
        sample = a.thin_floor.empty() ? bernoulli_sample(sample, p, a.seed)
                                      : bernoulli_sample_with_floor(sample, p, parse_rational(a.thin_floor), a.seed);
    }

    if (a.scheme == "dm") {
        out << dm_decode(sample, *a.i) << "\n";
    } else if (a.scheme == "interval") {
        Json j;
        j["indices"] = interval_decode(sample, *t);
        out << j.dump() << "\n";
    } else if (a.scheme == "slowdecay") {
        require(t->values.size() >= 2, "threshold sequence has no n_1");
        out << slowdecay_decode(sample, t->values[1], *a.i) << "\n";
    } else if (a.scheme == "parity") {
        out << parity_decode(sample, *a.j, *t) << "\n";
    } else if (a.scheme == "residue") {
        const auto m = residue_bits(parse_rational(a.delta));
        const auto first = sample.next_member(a.floor_n);
        if (!first) fail(ErrorKind::insufficient_sample, "no element at or above " + std::to_string(a.floor_n));
        const auto d = residue_decode(*first, a.floor_n, m);
        Json j;
        j["prefix"] = d.prefix.to_string();
        j["witness"] = d.witness;
        out << j.dump() << "\n";
    } else if (a.scheme == "evenodd") {
        const auto parts = evenodd_extract(sample);
        Json j;
        j["even"] = parts.even.members();
        j["odd"] = parts.odd.members();
        out << j.dump() << "\n";
    } else {
        const auto table = a.table.empty() ? fixed_pa_table() : SteppedMachineTable::from_json(read_text(a.table));
        out << pa_decode(sample, table, *a.x) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct DensityArgs {
    std::string in;
    std::string delta;
    std::string bound;
    std::string csv;
};

int run_density(const DensityArgs& a, std::ostream& out) {
    require(a.delta.empty() || a.bound.empty(), "give at most one of --delta and --bound");
    std::optional<LowerBound> f;
    if (!a.delta.empty()) f = LowerBound::constant(parse_rational(a.delta));
    if (!a.bound.empty()) f = LowerBound::parse(a.bound);
    const auto set = read_set(a.in);
    const auto profile = density_profile(set);

    Json j = set_summary(set);
    if (set.horizon() > 0) {
        std::uint64_t arg = 0;
        for (std::uint64_t n = 1; n < set.horizon(); ++n) {
            if (profile.value(n) < profile.value(arg)) arg = n;
        }
        j["min_density"] = to_string(profile.value(arg));
        j["min_density_at"] = arg;
        j["final_density"] = to_string(profile.value(set.horizon() - 1));
    }
    bool ok = true;
    if (f) {
        const auto bad = first_f_violation(set, *f);
        ok = !bad;
        j["bound"] = f->describe();
        j["dense"] = ok;
        j["first_violation"] = bad ? Json(*bad) : Json(nullptr);
    }
    if (!a.csv.empty()) write_profile_csv(a.csv, profile);
    out << j.dump() << "\n";
    return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct LemmaArgs {
    std::string which;
    std::string delta = "1/2";
    std::optional<std::uint64_t> n;
    std::optional<std::size_t> k;
    bool exhaustive = false;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    bool serial = false;
    std::optional<std::uint64_t> budget;
};

Json sweep_json(const VarianceSweep& s) {
    Json j;
    j["families"] = s.families;
    j["half_square_checked"] = s.half_square_checked;
    j["half_square_violations"] = s.half_square_violations;
    j["gap_violations"] = s.gap_violations;
    j["variance_violations"] = s.variance_violations;
    return j;
}

// {lemma, params, witness, ratio_num, ratio_den, verdict, ...details}
int run_lemma(const LemmaArgs& a, std::ostream& out) {
    const Exec exec = a.serial ? Exec::serial : Exec::parallel;
    Json params, witness = nullptr, details;
    std::optional<Rational> ratio;
    bool verdict = true;
    if (a.which == "variance") {
        const std::uint64_t budget = a.budget.value_or(enumeration_budget(kDefaultFamilyBudget));
        if (a.exhaustive) {
            const auto delta = parse_rational(a.delta);
            const std::uint64_t n = a.n.value_or(8);
            const std::size_t k_lo = a.k.value_or(2), k_hi = a.k.value_or(4);
            params["delta"] = to_string(delta);
            params["n"] = n;
            params["k"] = a.k ? Json(*a.k) : Json(std::vector<std::size_t>{k_lo, k_hi});
            params["mode"] = "exhaustive";
            details["runs"] = Json::array();
            for (std::size_t k = k_lo; k <= k_hi; ++k) {
                const auto s = exhaustive_variance(n, k, delta, exec, budget);
                Json r = sweep_json(s);
                r["k"] = k;
                r["min_ratio"] = to_string(s.min_ratio);
                details["runs"].push_back(r);
                verdict = verdict && s.clean();
                ratio = ratio ? std::min(*ratio, s.min_ratio) : s.min_ratio;
            }
        } else {
            const std::uint64_t n = a.n.value_or(64);
            const auto s = random_variance(n, a.trials, a.seed, exec);
            params["n"] = n;
            params["trials"] = a.trials;
            params["seed"] = a.seed;
            params["mode"] = "random";
            details = sweep_json(s);
            verdict = s.clean();
            ratio = s.min_ratio;
        }
    } else if (a.which == "disjoint") {
        const auto delta = parse_rational(a.delta);
        const std::uint64_t n = a.n.value_or(12);
        const auto best = max_disjoint_dense_family(n, delta);
        verdict = Rational(static_cast<std::int64_t>(best)) * delta <= 2;
        params["delta"] = to_string(delta);
        params["n"] = n;
        witness = best;
        details["bound"] = to_string(Rational(2) / delta);
    } else if (a.which == "partition") {
        const std::uint64_t n = a.n.value_or(10);
        const std::size_t k = a.k.value_or(3);
        const auto s = exhaustive_partition(n, k, exec);
        verdict = s.failures == 0;
        params["n"] = n;
        params["k"] = k;
        details["instances"] = s.instances;
        details["failures"] = s.failures;
    } else {
        fail(ErrorKind::parameter, "unknown lemma '" + a.which + "' (variance, disjoint, partition)");
    }
    Json j;
    j["lemma"] = a.which;
    j["params"] = params;
    j["witness"] = witness;
    j["ratio_num"] = ratio ? Json(ratio->numerator()) : Json(nullptr);
    j["ratio_den"] = ratio ? Json(ratio->denominator()) : Json(nullptr);
    j["verdict"] = verdict;
    j["details"] = details;
    out << j.dump() << "\n";
    return verdict ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct KolmoArgs {
    std::string action;
    std::string program;
    std::string sigma;
    std::string oracle;
    std::string oracle_file;
    std::optional<std::uint64_t> max_steps;
    std::optional<std::uint64_t> max_query;
    std::uint64_t max_oracle = 12;
    std::uint32_t k = 6;
    std::string config;
    bool serial = false;
    std::optional<std::uint64_t> budget;
};

FinitePrefixSet load_oracle(const KolmoArgs& a) {
    require(a.oracle.empty() || a.oracle_file.empty(), "give at most one of --oracle and --oracle-file");
    if (!a.oracle_file.empty()) return read_set(a.oracle_file);
    const auto members = parse_list(a.oracle);
    std::uint64_t h = 0;
    for (auto m : members) h = std::max(h, m + 1);
    return FinitePrefixSet::from_members(h, members);
}

Json complexity_json(const Complexity& c) { return c ? Json(*c) : Json(nullptr); }

int run_kolmo(const KolmoArgs& a, std::ostream& out) {
    const Exec exec = a.serial ? Exec::serial : Exec::parallel;
    Json j;
    j["action"] = a.action;
    if (a.action == "run") {
        const auto program = Bitstring::parse(a.program);
        const auto oracle = load_oracle(a);
        const std::uint64_t cap = oracle.max_member().value_or(0);
        const auto r = run_program(program, oracle, a.max_steps.value_or(cap), a.max_query.value_or(cap));
        j["halted"] = r.halted();
        j["output"] = r.output ? Json(r.output->to_string()) : Json(nullptr);
        j["steps"] = r.steps;
        j["queries"] = r.queries;
        j["queried"] = r.queried;
    } else if (a.action == "complexity") {
        const auto sigma = Bitstring::parse(a.sigma);
        const auto oracle = load_oracle(a);
        j["sigma"] = sigma.to_string();
        j["oracle"] = oracle.members();
        j["complexity"] = complexity_json(c_finite(oracle, sigma, exec));
    } else if (a.action == "counting") {
        const auto s = counting_bound_sweep(a.max_oracle, a.k, exec);
        j["max_oracle"] = a.max_oracle;
        j["k"] = a.k;
        j["oracles"] = s.oracles;
        j["checks"] = s.checks;
        j["violations"] = s.violations;
        j["max_count"] = std::vector<std::uint64_t>(s.max_count, s.max_count + a.k + 1);
        j["holds"] = s.violations == 0;
        out << j.dump() << "\n";
        return s.violations == 0 ? kOk : kFailed;
    } else if (a.action == "ksafe") {
        require(!a.config.empty(), "--config is required for kolmo ksafe");
        Json c;
        try {
            c = Json::parse(read_text(a.config));
        } catch (const Json::exception& e) {
            fail(ErrorKind::format, a.config + ": " + e.what());
        }
        KSafeInstance inst;
        try {
            for (const auto& s : c.at("family")) inst.family.push_back(Bitstring::parse(s.get<std::string>()));
            inst.universe = c.at("universe").get<std::uint64_t>();
            for (const auto& p : c.at("pieces")) {
                inst.pieces.push_back(FinitePrefixSet::from_members(inst.universe, p.get<std::vector<std::uint64_t>>()));
            }
            inst.m = c.value("m", std::uint64_t{0});
            inst.k = c.at("k").get<std::uint32_t>();
        } catch (const Json::exception& e) {
            fail(ErrorKind::format, a.config + ": " + e.what());
        }
        const std::uint64_t budget = a.budget.value_or(enumeration_budget(kDefaultSubsetBudget));
        const auto v = c.contains("delta")
                           ? k_safe_density_check(inst, parse_rational(c["delta"].get<std::string>()), budget)
                           : k_safe_check(inst, budget);
        j["safe"] = v.safe;
        j["oracles_checked"] = v.oracles_checked;
        if (!v.safe) {
            j["pieces"] = v.pieces;
            j["oracle"] = v.oracle->members();
            j["low_complexity"] = v.low_complexity;
        }
        out << j.dump() << "\n";
        return v.safe ? kOk : kFailed;
    } else {
        fail(ErrorKind::parameter, "unknown kolmo action '" + a.action + "' (run, complexity, counting, ksafe)");
    }
    out << j.dump() << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct PaArgs {
    std::string table;
    std::size_t machines = 8;
    std::uint64_t horizon = 4096;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    std::string out;
    std::string table_out;
};

int run_pa(const PaArgs& a, std::ostream& out) {
    const auto table = a.table.empty() ? fixed_pa_table() : SteppedMachineTable::from_json(read_text(a.table));
    const auto pc = pa_construct(table, a.machines, a.horizon);
    const auto r = pa_verify(pc, table, a.samples, a.seed);
    if (!a.out.empty()) write_set(a.out, pc.a);
    if (!a.table_out.empty()) write_file_atomically(a.table_out, table.to_json() + "\n");

    Json j;
    j["machines"] = a.machines;
    j["horizon"] = a.horizon;
    j["xs"] = pc.xs;
    Json stages = Json::array();
    for (const auto& s : pc.stages) stages.push_back(s ? Json(*s) : Json(nullptr));
    j["stages"] = stages;
    j["size"] = pc.a.size();
    j["density_ok"] = r.density_ok;
    j["first_density_violation"] = r.first_density_violation ? Json(*r.first_density_violation) : Json(nullptr);
    j["min_density"] = to_string(r.min_density);
    j["samples"] = r.samples;
    j["checked_points"] = r.checked_points;
    j["completion_failures"] = r.completion_failures;
    j["diagonal_failures"] = r.diagonal_failures;
    j["max_blocking_per_length"] = r.max_blocking_per_length;
    j["ok"] = r.ok();
    out << j.dump() << "\n";
    return r.ok() ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int run_verify_all(std::uint64_t seed, const std::string& only, std::ostream& out) {
    bool any = false, all = true;
    for (const auto& c : acceptance_checks()) {
        if (!only.empty() && c.id != only) continue;
        any = true;
        const auto r = run_check(c, seed);
        out << format_result(r) << std::endl;
        all = all && r.passed;
    }
    if (!any) fail(ErrorKind::parameter, "unknown criterion '" + only + "'");
    return all ? kOk : kFailed;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::insufficient_sample:
        case ErrorKind::invalid_sample:
        case ErrorKind::inconsistent_sample:
            return kFailed;
        default:
            return kUsage;
    }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Encode messages into sets of naturals, decode them from subsets, and check the supporting lemmas.",
                 "subsetcodec"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    EncodeArgs enc;
    auto* encode = app.add_subcommand("encode", "encode a message as a set and write it in SUBSET01 format");
    encode->add_option("--scheme", enc.scheme, "dm, interval, slowdecay, parity, residue, evenodd, pa")->required();
    encode->add_option("--message", enc.message, "message bits (rho for residue)");
    encode->add_option("--horizon", enc.horizon, "window size")->required();
    encode->add_option("--out", enc.out, "output set file")->required();
    encode->add_option("--indices", enc.indices, "interval: comma-separated interval indices");
    encode->add_option("--count", enc.count, "slowdecay/parity: number of intervals");
    encode->add_option("--bound", enc.bound, "slowdecay: lower bound f (inv_sqrt or const:p/q)");
    encode->add_option("--delta", enc.delta, "residue: density p/q");
    encode->add_option("--floor", enc.floor_n, "residue: least element N");
    encode->add_option("--in", enc.in, "evenodd: source set file");
    encode->add_option("--table", enc.table, "pa: machine table JSON (default: built-in table)");
    encode->add_option("--machines", enc.machines, "pa: machines to diagonalize against");
    encode->add_option("--thresholds-out", enc.thresholds_out, "write the threshold sequence as JSON");
    encode->add_option("--profile-out", enc.profile_out, "write the density profile as CSV");

    DecodeArgs dec;
    auto* decode = app.add_subcommand("decode", "decode from a sample of an encoded set");
    decode->add_option("--scheme", dec.scheme, "dm, interval, slowdecay, parity, residue, evenodd, pa")->required();
    decode->add_option("--in", dec.in, "sample set file")->required();
    decode->add_option("--thresholds", dec.thresholds, "threshold JSON (interval, slowdecay, parity)");
    decode->add_option("--j", dec.j, "parity: message index");
    decode->add_option("--i", dec.i, "dm/slowdecay: message bit");
    decode->add_option("--x", dec.x, "pa: argument of the completion");
    decode->add_option("--delta", dec.delta, "residue: density p/q");
    decode->add_option("--floor", dec.floor_n, "residue: least element N");
    decode->add_option("--table", dec.table, "pa: machine table JSON");
    decode->add_option("--stride", dec.stride, "keep every stride-th element first");
    decode->add_option("--offset", dec.offset, "offset for --stride");
    decode->add_option("--thin", dec.thin, "Bernoulli keep probability p/q");
    decode->add_option("--thin-floor", dec.thin_floor, "redraw thinning until {0} ∪ sample has this density");
    decode->add_option("--seed", dec.seed, "seed for --thin");

    DensityArgs den;
    auto* density = app.add_subcommand("density", "report the density profile of a set");
    density->add_option("--in", den.in, "set file")->required();
    density->add_option("--delta", den.delta, "check δ-density at every point");
    density->add_option("--bound", den.bound, "check f-density (inv_sqrt or const:p/q)");
    density->add_option("--csv", den.csv, "write the profile as CSV");

    LemmaArgs lem;
    auto* lemma = app.add_subcommand("lemma", "check a combinatorial lemma by enumeration or sampling");
    lemma->add_option("which", lem.which, "variance, disjoint, partition")->required();
    lemma->add_option("--delta", lem.delta, "density p/q");
    lemma->add_option("--n", lem.n, "universe parameter");
    lemma->add_option("--k", lem.k, "family size or number of parts");
    lemma->add_flag("--exhaustive", lem.exhaustive, "variance: enumerate every family");
    lemma->add_option("--trials", lem.trials, "variance: random trials");
    lemma->add_option("--seed", lem.seed, "variance: seed for random trials");
    lemma->add_flag("--serial", lem.serial, "use the serial reference kernel");
    lemma->add_option("--budget", lem.budget, "variance: most families to enumerate (default SUBSETCODEC_BUDGET or 2^30)");

    KolmoArgs kol;
    auto* kolmo = app.add_subcommand("kolmo", "run toy programs and compute finite-oracle complexities");
    kolmo->add_option("action", kol.action, "run, complexity, counting, ksafe")->required();
    kolmo->add_option("--program", kol.program, "run: program bits");
    kolmo->add_option("--sigma", kol.sigma, "complexity: target string");
    kolmo->add_option("--oracle", kol.oracle, "oracle members, comma-separated");
    kolmo->add_option("--oracle-file", kol.oracle_file, "oracle as a set file");
    kolmo->add_option("--max-steps", kol.max_steps, "run: step budget (default max(s))");
    kolmo->add_option("--max-query", kol.max_query, "run: largest queryable position (default max(s))");
    kolmo->add_option("--max-oracle", kol.max_oracle, "counting: largest max(s)");
    kolmo->add_option("--k", kol.k, "counting: largest k");
    kolmo->add_option("--config", kol.config, "ksafe: instance JSON");
    kolmo->add_flag("--serial", kol.serial, "use the serial reference kernel");
    kolmo->add_option("--budget", kol.budget, "ksafe: most oracle subsets to examine (default SUBSETCODEC_BUDGET or 2^22)");

    PaArgs pa;
    auto* pa_cmd = app.add_subcommand("pa", "build the diagonal set and check decoding from samples");
    pa_cmd->add_option("--table", pa.table, "machine table JSON (default: built-in table)");
    pa_cmd->add_option("--machines", pa.machines, "machines to diagonalize against");
    pa_cmd->add_option("--horizon", pa.horizon, "string indices in the window");
    pa_cmd->add_option("--samples", pa.samples, "random samples to decode");
    pa_cmd->add_option("--seed", pa.seed, "sampler seed");
    pa_cmd->add_option("--out", pa.out, "write A as a set file");
    pa_cmd->add_option("--table-out", pa.table_out, "write the machine table as JSON");

    std::uint64_t verify_seed = 0;
    std::string verify_only;
    auto* verify = app.add_subcommand("verify-all", "run every acceptance check");
    verify->add_option("--seed", verify_seed, "seed for randomized checks");
    verify->add_option("--only", verify_only, "run one check by id");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* failed = &app;
        for (auto* sub : app.get_subcommands()) failed = sub;
        err << failed->help();
        return kUsage;
    }

    try {
        if (*encode) return run_encode(enc, out);
        if (*decode) return run_decode(dec, out);
        if (*density) return run_density(den, out);
        if (*lemma) return run_lemma(lem, out);
        if (*kolmo) return run_kolmo(kol, out);
        if (*pa_cmd) return run_pa(pa, out);
        return run_verify_all(verify_seed, verify_only, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace subsetcodec
