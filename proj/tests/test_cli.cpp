#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "homolpn/attack.hpp"
#include "support.hpp"

using namespace homolpn;
using namespace homolpn::testing;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("homolpn_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& leaf) const { return (dir / leaf).string(); }
};

}  // namespace

TEST_CASE("cli build") {
    Scratch s("build");
    const auto r = invoke({"build", "--l", "2", "--m", "4", "--w", "1", "--ecc", "hamming74", "--out", s / "b"});
    REQUIRE(r.code == cli::exit_ok);
    CHECK(BitMatrix::from_text(slurp(s / "b/gh.txt")) == example1_g_h());
    CHECK(BitMatrix::from_text(slurp(s / "b/gh_inv.txt")) == example1_g_h_inv());
    CHECK(BitMatrix::from_text(slurp(s / "b/g.txt")) == example1_g());
    const auto report = json::parse(slurp(s / "b/report.json"));
    CHECK(report["passes_strict"] == true);
    CHECK(report["g_star_rank"] == 2);
    const auto manifest = json::parse(slurp(s / "b/manifest.json"));
    CHECK(manifest["command"] == "build");
    CHECK(manifest["params"]["n"] == 7);
    CHECK(manifest.contains("version"));
    CHECK(manifest.contains("timestamp"));

    CHECK(invoke({"build", "--l", "2", "--m", "5", "--out", s / "x"}).code == cli::exit_input);
    const auto w3 = invoke({"build", "--l", "2", "--w", "3", "--out", s / "x"});
    CHECK(w3.code == cli::exit_input);
    CHECK(w3.err.find("w + 1") != std::string::npos);
    CHECK(invoke({"build", "--out", s / "x"}).code == cli::exit_input);  // --l missing
}

TEST_CASE("cli build with a generator file") {
    Scratch s("build_file");
    spit(s / "ecc.txt", hamming_generator().to_text());
    CHECK(invoke({"build", "--l", "2", "--ecc", s / "ecc.txt", "--out", s / "b"}).code == cli::exit_ok);
    CHECK(invoke({"build", "--l", "2", "--ecc", s / "missing.txt", "--out", s / "b"}).code == cli::exit_input);
}

TEST_CASE("cli validate") {
    Scratch s("validate");
    spit(s / "ex1.txt", example1_g_h().to_text());
    spit(s / "ex2.txt", example2_g_h().to_text());
    spit(s / "corrupt.txt", "4 4\n0010\n0001\n10\n");

    const auto r1 = invoke({"validate", "--code", s / "ex1.txt", "--ecc", "hamming74", "--w", "1"});
    CHECK(r1.code == cli::exit_ok);
    CHECK(json::parse(r1.out)["l"] == 2);

    const auto r2 = invoke({"validate", "--code", s / "ex2.txt", "--w", "2"});
    CHECK(r2.code == cli::exit_criteria);
    const auto report = json::parse(r2.out);
    CHECK(report["passes_lenient"] == true);
    CHECK(report["passes_strict"] == false);
    CHECK(report["min_column_weight"] == 2);

    CHECK(invoke({"validate", "--code", s / "corrupt.txt", "--w", "1"}).code == cli::exit_input);
    CHECK(invoke({"validate", "--code", s / "nope.txt", "--w", "1"}).code == cli::exit_input);

    // Identity has no generic layout to infer l from.
    spit(s / "id.txt", BitMatrix::identity(4).to_text());
    CHECK(invoke({"validate", "--code", s / "id.txt", "--w", "1"}).code == cli::exit_input);
    spit(s / "singular.txt", BitMatrix::from_strings({"0010", "0010", "1010", "0101"}).to_text());
    CHECK(invoke({"validate", "--code", s / "singular.txt", "--w", "1", "--l", "2"}).code == cli::exit_criteria);
}

TEST_CASE("cli simulate") {
    Scratch s("simulate");
    SUBCASE("p = 0 needs one attempt per block") {
        REQUIRE(invoke({"simulate", "--p", "0", "--tau", "50", "--seed", "1", "--out", s / "a"}).code == cli::exit_ok);
        std::istringstream summary(slurp(s / "a/summary.csv"));
        std::string line;
        std::getline(summary, line);
        CHECK(line == "t,attempts,ack");
        int rows = 0;
        while (std::getline(summary, line)) {
            CHECK(line.ends_with(",1,1"));
            ++rows;
        }
        CHECK(rows == 50);
        for (const char* f : {"records.txt", "manifest.json", "code.txt", "ecc.txt", "state.txt", "key.txt"}) {
            CHECK(fs::exists(s.dir / "a" / f));
        }
    }
    SUBCASE("fixed seed twice gives identical records") {
        const std::vector<std::string> base{"simulate", "--p", "0.1", "--tau", "100", "--seed", "9", "--key-seed", "4"};
        auto a = base, b = base;
        a.insert(a.end(), {"--out", s / "a"});
        b.insert(b.end(), {"--out", s / "b"});
        REQUIRE(invoke(a).code == cli::exit_ok);
        REQUIRE(invoke(b).code == cli::exit_ok);
        CHECK(slurp(s / "a/records.txt") == slurp(s / "b/records.txt"));
        auto c = base;
        c[6] = "10";
        c.insert(c.end(), {"--out", s / "c"});
        REQUIRE(invoke(c).code == cli::exit_ok);
        CHECK(slurp(s / "a/records.txt") != slurp(s / "c/records.txt"));
    }
    SUBCASE("ACK-per-attempt rate at p = 0.02") {
        REQUIRE(invoke({"simulate", "--p", "0.02", "--tau", "500", "--seed", "11", "--out", s / "a"}).code ==
                cli::exit_ok);
        std::istringstream summary(slurp(s / "a/summary.csv"));
        std::string line;
        std::getline(summary, line);
        std::size_t total = 0, acks = 0;
        while (std::getline(summary, line)) {
            ++total;
            acks += line.back() == '1' ? 1 : 0;
        }
        const double p = 0.02;
        const double expected = std::pow(1 - p, 7) + 7 * p * std::pow(1 - p, 6);
        const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(total));
        CHECK(std::abs(static_cast<double>(acks) / static_cast<double>(total) - expected) <= 3 * sigma);
    }
    SUBCASE("supplied code, key and state files") {
        spit(s / "code.txt", example2_g_h().to_text());
        spit(s / "key.txt", "1010101\n");
        spit(s / "state.txt", BitMatrix::identity(7).to_text());
        REQUIRE(invoke({"simulate", "--p", "0", "--tau", "5", "--code", s / "code.txt", "--w", "2", "--key",
                     s / "key.txt", "--state", s / "state.txt", "--out", s / "a"})
                    .code == cli::exit_ok);
        CHECK(slurp(s / "a/key.txt") == "1010101\n");
        CHECK(BitMatrix::from_text(slurp(s / "a/code.txt")) == example2_g_h());
        spit(s / "short.txt", "101\n");
        CHECK(invoke({"simulate", "--p", "0", "--tau", "5", "--key", s / "short.txt", "--out", s / "b"}).code ==
              cli::exit_input);
    }
    SUBCASE("retry exhaustion and bad input") {
        CHECK(invoke({"simulate", "--p", "0.45", "--tau", "200", "--max-retries", "1", "--out", s / "a"}).code ==
              cli::exit_protocol);
        CHECK(invoke({"simulate", "--p", "0.6", "--tau", "5", "--out", s / "a"}).code == cli::exit_input);
        CHECK(invoke({"simulate", "--p", "0.1", "--tau", "5", "--mode", "chosen", "--out", s / "a"}).code ==
              cli::exit_input);
    }
}

TEST_CASE("cli attack") {
    Scratch s("attack");
    SUBCASE("noiseless transcript recovers the session key") {
        REQUIRE(invoke({"simulate", "--p", "0", "--tau", "10", "--mode", "zero", "--key-seed", "77", "--out", s / "t"})
                    .code == cli::exit_ok);
        const auto r = invoke({"attack", "--transcript", s / "t", "--recover", "--true-key", s / "t/key.txt"});
        REQUIRE(r.code == cli::exit_ok);
        const auto j = json::parse(r.out);
        CHECK(j["equations"] == 50);
        CHECK(j["expected_equations"] == 50);
        CHECK(j["empirical_noise"] == 0.0);
        CHECK(j["key_correct"] == true);
        std::string key = slurp(s / "t/key.txt");
        key.pop_back();
        CHECK(j["recovered_key"] == key);
    }
    SUBCASE("seeded p = 0.05 run recovers the key") {
        REQUIRE(invoke({"simulate", "--p", "0.05", "--tau", "400", "--seed", "21", "--mode", "zero", "--out", s / "t"})
                    .code == cli::exit_ok);
        const auto r = invoke({"attack", "--transcript", s / "t", "--recover", "--true-key", s / "t/key.txt", "--export",
                            s / "lpn.csv"});
        REQUIRE(r.code == cli::exit_ok);
        const auto j = json::parse(r.out);
        CHECK(j["key_correct"] == true);
        CHECK(j["p"] == 0.05);

        std::istringstream csv(slurp(s / "lpn.csv"));
        const auto instance = import_lpn(csv);
        CHECK(instance.size() == j["equations"].get<std::size_t>());
        CHECK(instance.n == 7);
    }
    SUBCASE("--tau truncates the transcript") {
        REQUIRE(invoke({"simulate", "--p", "0.1", "--tau", "30", "--mode", "zero", "--out", s / "t"}).code ==
                cli::exit_ok);
        const auto r = invoke({"attack", "--transcript", s / "t", "--tau", "7"});
        REQUIRE(r.code == cli::exit_ok);
        CHECK(json::parse(r.out)["equations"] == 35);
        CHECK(invoke({"attack", "--transcript", s / "t", "--tau", "100000"}).code == cli::exit_input);
    }
    SUBCASE("random-plaintext transcripts are rejected") {
        REQUIRE(invoke({"simulate", "--p", "0", "--tau", "20", "--mode", "random", "--out", s / "t"}).code ==
                cli::exit_ok);
        CHECK(invoke({"attack", "--transcript", s / "t"}).code == cli::exit_input);
    }
    SUBCASE("malformed and missing transcripts") {
        CHECK(invoke({"attack", "--transcript", s / "missing"}).code == cli::exit_input);
        REQUIRE(invoke({"simulate", "--p", "0", "--tau", "3", "--mode", "zero", "--out", s / "t"}).code == cli::exit_ok);
        spit(s / "t/records.txt", "# n=7,m=4,l=2\nt,attempts,ack,a,u,y,v,z\n1,1,1,0,0\n");
        CHECK(invoke({"attack", "--transcript", s / "t"}).code == cli::exit_input);
    }
    SUBCASE("brute force refuses n > 24") {
        // (26, 10) code: 16 parity bits keeps the syndrome table within its cap.
        Rng rng(3);
        spit(s / "ecc.txt", BitMatrix::identity(10).hconcat(random_matrix(10, 16, rng)).to_text());
        REQUIRE(invoke({"simulate", "--p", "0", "--tau", "2", "--mode", "zero", "--ecc", s / "ecc.txt", "--out",
                     s / "t"})
                    .code == cli::exit_ok);
        CHECK(invoke({"attack", "--transcript", s / "t", "--recover"}).code == cli::exit_resource);
        CHECK(invoke({"attack", "--transcript", s / "t"}).code == cli::exit_ok);
    }
}

TEST_CASE("cli noise-curve") {
    Scratch s("noise");
    const auto r = invoke({"noise-curve", "--p-grid", "0.1,0.2", "--w-grid", "0,2", "--trials", "100000", "--seed", "3",
                        "--out", s / "curve.csv"});
    REQUIRE(r.code == cli::exit_ok);
    std::istringstream csv(slurp(s / "curve.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "p,w,formula_pw,empirical_pw,abs_error");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string p, w, formula, empirical, err;
        std::getline(fields, p, ',');
        std::getline(fields, w, ',');
        std::getline(fields, formula, ',');
        std::getline(fields, empirical, ',');
        std::getline(fields, err, ',');
        if (w == "0") CHECK(std::stod(formula) == doctest::Approx(std::stod(p)));
        if (p == "0.1" && w == "2") CHECK(std::stod(formula) == doctest::Approx(0.244));
        CHECK(std::stod(err) < 0.01);
    }
    CHECK(rows == 4);
    CHECK(fs::exists(s / "curve.csv.manifest.json"));

    CHECK(invoke({"noise-curve", "--p-grid", "", "--w-grid", "1"}).code == cli::exit_input);
    CHECK(invoke({"noise-curve", "--p-grid", "0.1,", "--w-grid", "1"}).code == cli::exit_input);
    CHECK(invoke({"noise-curve", "--p-grid", "0.1", "--w-grid", "1.5"}).code == cli::exit_input);
}

TEST_CASE("cli replay reproduces artifacts bit-exactly") {
    Scratch s("replay");
    REQUIRE(invoke({"simulate", "--p", "0.07", "--tau", "60", "--seed", "5", "--mode", "zero", "--out", s / "a"}).code ==
            cli::exit_ok);
    REQUIRE(invoke({"replay", "--manifest", s / "a/manifest.json", "--out", s / "b"}).code == cli::exit_ok);
    for (const char* f : {"records.txt", "summary.csv", "code.txt", "ecc.txt", "state.txt", "key.txt"}) {
        CHECK(slurp(s.dir / "a" / f) == slurp(s.dir / "b" / f));
    }
    const auto ma = json::parse(slurp(s / "a/manifest.json"));
    const auto mb = json::parse(slurp(s / "b/manifest.json"));
    CHECK(ma["params"]["seed"] == mb["params"]["seed"]);

    REQUIRE(invoke({"noise-curve", "--p-grid", "0.05", "--w-grid", "1,3", "--trials", "20000", "--out", s / "c.csv"})
                .code == cli::exit_ok);
    REQUIRE(invoke({"replay", "--manifest", s / "c.csv.manifest.json", "--out", s / "d.csv"}).code == cli::exit_ok);
    CHECK(slurp(s / "c.csv") == slurp(s / "d.csv"));

    spit(s / "junk.json", "{\"hello\": 1}");
    CHECK(invoke({"replay", "--manifest", s / "junk.json"}).code == cli::exit_input);
}

TEST_CASE("cli usage errors") {
    CHECK(invoke({}).code == cli::exit_input);
    CHECK(invoke({"frobnicate"}).code == cli::exit_input);
    CHECK(invoke({"--help"}).code == cli::exit_ok);
    CHECK(invoke({"--version"}).out.find(cli::version) != std::string::npos);
}
