#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "subsetcodec/cli.hpp"
#include "subsetcodec/set_io.hpp"
#include "support.hpp"

using namespace subsetcodec;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "subsetcodec");
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("subsetcodec_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct CsvRow {
    std::uint64_t n, count, num, den;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "n,count,density_num,density_den");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        CsvRow r{};
        char c1, c2, c3;
        std::istringstream ls(line);
        ls >> r.n >> c1 >> r.count >> c2 >> r.num >> c3 >> r.den;
        REQUIRE(ls);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parity encode and decode through files") {
    TempDir tmp;
    const std::string msg = "1011";
    const auto enc = cli({"encode", "--scheme", "parity", "--message", msg, "--horizon", "100000", "--out", tmp / "a.set",
                          "--thresholds-out", tmp / "t.json"});
    REQUIRE(enc.code == 0);
    const auto a = read_set(tmp / "a.set");
    CHECK(a.horizon() == 100000);
    CHECK(slurp(tmp / "a.set").substr(0, 8) == "SUBSET01");

    for (std::uint64_t j = 0; j < msg.size(); ++j) {
        for (const char* stride : {"1", "2", "5"}) {
            const auto dec = cli({"decode", "--scheme", "parity", "--in", tmp / "a.set", "--thresholds", tmp / "t.json",
                                  "--j", std::to_string(j), "--stride", stride});
            CHECK(dec.code == 0);
            CHECK(dec.out == std::string(1, msg[j]) + "\n");
        }
    }
    const auto beyond = cli({"decode", "--scheme", "parity", "--in", tmp / "a.set", "--thresholds", tmp / "t.json", "--j", "9"});
    CHECK(beyond.code == 1);
}

TEST_CASE("density CSV") {
    TempDir tmp;
    REQUIRE(cli({"encode", "--scheme", "parity", "--message", "1011", "--horizon", "4000", "--out", tmp / "p.set",
                 "--count", "8"})
                .code == 0);
    REQUIRE(cli({"density", "--in", tmp / "p.set", "--csv", tmp / "p.csv"}).code == 0);
    const auto set = read_set(tmp / "p.set");
    const auto rows = parse_csv(slurp(tmp / "p.csv"));
    REQUIRE(rows.size() == 4000);
    for (const auto& r : rows) {
        CHECK(r.count == test::naive_count(set, r.n));
        CHECK(r.num * (r.n + 1) == r.count * r.den);
        if (r.n % 2 == 1) CHECK((r.num == 1 && r.den == 2));
    }

    // empty set: every row has count 0
    write_set(tmp / "e.set", FinitePrefixSet(5));
    REQUIRE(cli({"density", "--in", tmp / "e.set", "--csv", tmp / "e.csv"}).code == 0);
    CHECK(slurp(tmp / "e.csv") == "n,count,density_num,density_den\n0,0,0,1\n1,0,0,1\n2,0,0,1\n3,0,0,1\n4,0,0,1\n");

    // residue set with m = 3: exactly 1/8 at aligned points past the floor block
    REQUIRE(cli({"encode", "--scheme", "residue", "--message", "101", "--delta", "1/8", "--floor", "16", "--horizon", "2048",
                 "--out", tmp / "r.set", "--profile-out", tmp / "r.csv"})
                .code == 0);
    const auto rrows = parse_csv(slurp(tmp / "r.csv"));
    for (std::uint64_t n = 15; n < 2048; n += 8) {
        const auto& r = rrows[n];
        CHECK(r.count * 8 <= n + 1);
        if (n >= 1023) CHECK(r.den * (r.n + 1) <= 8 * r.num * (r.n + 1) + 16 * r.den);  // within 2/(n+1) of 1/8
    }

    // byte-identical reruns
    const auto first = slurp(tmp / "r.csv");
    REQUIRE(cli({"density", "--in", tmp / "r.set", "--csv", tmp / "r2.csv"}).code == 0);
    CHECK(slurp(tmp / "r2.csv") == first);
}

TEST_CASE("lemma verdicts") {
    const auto v = cli({"lemma", "variance", "--delta", "1/2", "--n", "6", "--exhaustive"});
    REQUIRE(v.code == 0);
    const auto j = nlohmann::json::parse(v.out);
    CHECK(j["lemma"] == "variance");
    CHECK(j["verdict"] == true);
    for (const char* key : {"params", "witness", "ratio_num", "ratio_den", "details"}) CHECK(j.contains(key));

    const auto d = cli({"lemma", "disjoint", "--delta", "1/2", "--n", "9"});
    CHECK(d.code == 0);
    CHECK(nlohmann::json::parse(d.out)["verdict"] == true);

    CHECK(cli({"lemma", "variance", "--delta", "1/2", "--n", "8", "--exhaustive", "--budget", "10"}).code == 2);
    CHECK(cli({"lemma", "variance", "--delta", "3/2", "--n", "8", "--exhaustive"}).code == 2);
    CHECK(cli({"lemma", "nonsense"}).code == 2);

    // randomized mode is reproducible from the seed
    const auto r1 = cli({"lemma", "variance", "--n", "24", "--trials", "200", "--seed", "5"});
    const auto r2 = cli({"lemma", "variance", "--n", "24", "--trials", "200", "--seed", "5", "--serial"});
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
}

TEST_CASE("kolmo subcommands") {
    const auto r = cli({"kolmo", "run", "--program", "001000010", "--oracle", "3"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["output"] == "10");
    CHECK(j["steps"] == 3);

    const auto c = cli({"kolmo", "complexity", "--sigma", "0", "--oracle", "6"});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(c.out)["complexity"] == 6);
    const auto inf = cli({"kolmo", "complexity", "--sigma", "0", "--oracle", "5"});
    REQUIRE(inf.code == 0);
    CHECK(nlohmann::json::parse(inf.out)["complexity"].is_null());
    CHECK(cli({"kolmo", "complexity", "--sigma", "0", "--oracle", "17"}).code == 2);

    TempDir tmp;
    std::ofstream(tmp / "k.json") << R"({"family":["00","01","10"],"universe":8,"pieces":[[0,1,2,3],[4,5,6,7]],"m":1,"k":1})";
    const auto ks = cli({"kolmo", "ksafe", "--config", tmp / "k.json"});
    CHECK(ks.code == 1);
    CHECK(nlohmann::json::parse(ks.out)["safe"] == false);
    std::ofstream(tmp / "bad.json") << R"({"family":[],"universe":8,"pieces":[[0,1,2,3,4],[4,5,6,7]],"m":1,"k":1})";
    CHECK(cli({"kolmo", "ksafe", "--config", tmp / "bad.json"}).code == 2);
}

TEST_CASE("usage errors and side effects") {
    TempDir tmp;
    const auto bogus = cli({"encode", "--scheme", "parity", "--message", "1", "--horizon", "100", "--out", tmp / "x.set", "--bogus"});
    CHECK(bogus.code == 2);
    CHECK(bogus.err.find("Usage") != std::string::npos);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);

    // parameter errors leave nothing behind
    CHECK(cli({"encode", "--scheme", "residue", "--message", "1", "--delta", "0", "--floor", "0", "--horizon", "64",
               "--out", tmp / "bad.set", "--profile-out", tmp / "bad.csv"})
              .code == 2);
    CHECK(cli({"encode", "--scheme", "parity", "--message", "1011", "--count", "2", "--horizon", "100", "--out", tmp / "short.set",
               "--thresholds-out", tmp / "short.json"})
              .code == 2);
    CHECK(cli({"encode", "--scheme", "dm", "--message", "10x", "--horizon", "64", "--out", tmp / "dm.set"}).code == 2);
    CHECK(cli({"decode", "--scheme", "dm", "--in", tmp / "missing.set", "--i", "0"}).code == 2);
    CHECK(fs::is_empty(tmp.path));
}

TEST_CASE("deterministic outputs") {
    TempDir tmp;
    for (const char* name : {"1", "2"}) {
        REQUIRE(cli({"pa", "--horizon", "2048", "--samples", "4", "--seed", "9", "--out", tmp / (std::string("pa") + name + ".set")})
                    .code == 0);
        REQUIRE(cli({"encode", "--scheme", "slowdecay", "--message", "1011", "--horizon", "30000", "--count", "3", "--bound",
                     "inv_sqrt", "--out", tmp / (std::string("s") + name + ".set"), "--thresholds-out",
                     tmp / (std::string("s") + name + ".json")})
                    .code == 0);
    }
    CHECK(slurp(tmp / "pa1.set") == slurp(tmp / "pa2.set"));
    CHECK(slurp(tmp / "s1.set") == slurp(tmp / "s2.set"));
    CHECK(slurp(tmp / "s1.json") == slurp(tmp / "s2.json"));
    const auto a = cli({"decode", "--scheme", "slowdecay", "--in", tmp / "s1.set", "--thresholds", tmp / "s1.json", "--i", "0",
                        "--thin", "1/2", "--seed", "3"});
    const auto b = cli({"decode", "--scheme", "slowdecay", "--in", tmp / "s1.set", "--thresholds", tmp / "s1.json", "--i", "0",
                        "--thin", "1/2", "--seed", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == "1\n");
    CHECK(cli({"decode", "--scheme", "slowdecay", "--in", tmp / "s1.set", "--thresholds", tmp / "s1.json", "--i", "1",
               "--thin", "1/2", "--seed", "3"})
              .out == "0\n");
}

}  // TEST_SUITE
