#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "homolpn/attack.hpp"
#include "homolpn/channel.hpp"
#include "homolpn/ecc.hpp"
#include "homolpn/homophonic.hpp"
#include "homolpn/keystream.hpp"

namespace homolpn::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Missing files, unreadable directories, bad flag combinations.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
    if (!out) throw InputError("write failed: " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string absolute(const std::string& path) { return fs::absolute(path).lexically_normal().string(); }

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// args is the canonical, fully resolved command line; replay feeds it back to run().
json manifest(const std::vector<std::string>& args, json params) {
    json j;
    j["command"] = args.front();
    j["args"] = args;
    j["params"] = std::move(params);
    j["version"] = version;
    j["timestamp"] = utc_timestamp();
    return j;
}

LinearBlockCode load_ecc(const std::string& source) {
    if (source == "hamming74") return hamming_7_4();
    return LinearBlockCode::from_generator(BitMatrix::from_text(read_text(source)));
}

std::string ecc_arg(const std::string& source) { return source == "hamming74" ? source : absolute(source); }

BitVec load_key(const std::string& path, std::size_t n) {
    std::string text = read_text(path);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
    auto key = BitVec::from_string(text);
    if (key.size() != n) throw DimensionMismatch("key has " + std::to_string(key.size()) + " bits, need " + std::to_string(n));
    return key;
}

std::size_t resolve_l(const BitMatrix& g_h, std::optional<std::size_t> l) {
    if (l) return *l;
    if (auto inferred = infer_generic_split(g_h)) return *inferred;
    throw InputError("cannot infer l from the code layout; pass --l");
}

json report_json(const CriteriaReport& r, std::size_t l, std::size_t w) {
    json j;
    j["l"] = l;
    j["w"] = w;
    j["invertible"] = r.invertible;
    j["mixing_ok"] = r.mixing_ok;
    j["min_column_weight"] = r.min_column_weight;
    j["g_star"] = r.g_star.to_text();
    j["g_star_rank"] = r.g_star_rank;
    j["passes_strict"] = r.passes_strict;
    j["passes_lenient"] = r.passes_lenient;
    j["density_g_h"] = r.density_g_h;
    j["density_g"] = r.density_g;
    if (std::isnan(r.density_g_h_inv)) {
        j["density_g_h_inv"] = nullptr;
    } else {
        j["density_g_h_inv"] = r.density_g_h_inv;
    }
    return j;
}

std::vector<double> parse_grid(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        double v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty()) {
            throw InputError(std::string("bad ") + what + " entry '" + std::string(item) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
        if (rest.empty()) throw InputError(std::string("trailing comma in ") + what);
    }
    if (out.empty()) throw InputError(std::string(what) + " is empty");
    return out;
}

// ---- build

struct BuildOpts {
    std::size_t l = 0;
    std::optional<std::size_t> m;
    std::size_t w = 1;
    std::string ecc = "hamming74";
    std::string out;
};

int cmd_build(const BuildOpts& o, std::ostream& out) {
    const auto ecc = load_ecc(o.ecc);
    const std::size_t m = o.m.value_or(2 * o.l);
    const SystemParams params{ecc.n(), m, o.l, o.w, 0.0};
    const auto code = build_generic(params, ecc);
    const auto report = validate(code, ecc);
    const auto rj = report_json(report, o.l, o.w);

    const fs::path dir = o.out;
    make_dir(dir);
    write_text(dir / "gh.txt", code.g_h().to_text());
    write_text(dir / "gh_inv.txt", code.g_h_inv().to_text());
    write_text(dir / "g.txt", compose(code, ecc).to_text());
    write_json(dir / "report.json", rj);

    const std::vector<std::string> args{"build", "--l", std::to_string(o.l), "--m", std::to_string(m), "--w",
                                        std::to_string(o.w), "--ecc", ecc_arg(o.ecc), "--out", absolute(o.out)};
    write_json(dir / "manifest.json",
               manifest(args, {{"n", ecc.n()}, {"m", m}, {"l", o.l}, {"w", o.w}, {"ecc", ecc_arg(o.ecc)},
                               {"out", absolute(o.out)}}));
    out << rj.dump(2) << "\n";
    return report.passes_strict ? exit_ok : exit_criteria;
}

// ---- validate

struct ValidateOpts {
    std::string code;
    std::string ecc = "hamming74";
    std::size_t w = 0;
    std::optional<std::size_t> l;
    std::string out;
};

int cmd_validate(const ValidateOpts& o, std::ostream& out) {
    const auto ecc = load_ecc(o.ecc);
    const auto g_h = BitMatrix::from_text(read_text(o.code));
    const std::size_t l = resolve_l(g_h, o.l);
    const auto report = validate(g_h, l, o.w, ecc);
    const auto rj = report_json(report, l, o.w);
    out << rj.dump(2) << "\n";

    if (!o.out.empty()) {
        const fs::path dir = o.out;
        make_dir(dir);
        write_json(dir / "report.json", rj);
        const std::vector<std::string> args{"validate", "--code", absolute(o.code), "--ecc", ecc_arg(o.ecc), "--w",
                                            std::to_string(o.w), "--l", std::to_string(l), "--out", absolute(o.out)};
        write_json(dir / "manifest.json", manifest(args, {{"n", ecc.n()},
                                                          {"m", g_h.rows()},
                                                          {"l", l},
                                                          {"w", o.w},
                                                          {"code", absolute(o.code)},
                                                          {"ecc", ecc_arg(o.ecc)},
                                                          {"out", absolute(o.out)}}));
    }
    return report.passes_strict ? exit_ok : exit_criteria;
}

// ---- simulate

struct SimulateOpts {
    double p = 0.0;
    std::size_t tau = 1;
    std::uint64_t seed = 0;
    std::string mode = "random";
    std::string code;
    std::optional<std::size_t> l;
    std::size_t w = 1;
    std::string ecc = "hamming74";
    std::string key;
    std::uint64_t key_seed = 1;
    std::string state;
    std::uint64_t state_seed = 2;
    std::size_t max_retries = 16;
    std::string out;
};

int cmd_simulate(const SimulateOpts& o, std::ostream& out) {
    const auto ecc = load_ecc(o.ecc);
    const std::size_t n = ecc.n();

    std::optional<HomophonicCode> code;
    std::size_t l = 0;
    if (!o.code.empty()) {
        auto g_h = BitMatrix::from_text(read_text(o.code));
        l = resolve_l(g_h, o.l);
        code = HomophonicCode::from_matrix(std::move(g_h), l, o.w);
    } else {
        l = o.l.value_or((ecc.m() + 1) / 2);
        code = build_generic({n, ecc.m(), l, o.w, o.p}, ecc);
    }
    const SystemParams params{n, code->m(), l, o.w, o.p};
    params.check();

    const BitVec key = o.key.empty() ? Rng(o.key_seed).bits(n) : load_key(o.key, n);
    const BitMatrix s = o.state.empty() ? random_state_matrix(n, o.state_seed) : BitMatrix::from_text(read_text(o.state));
    const LinearKeystream keystream(s, key);

    const SessionConfig cfg{params, o.seed, o.tau, o.max_retries,
                            o.mode == "zero" ? PlaintextSource::Zero : PlaintextSource::Random};
    const auto records = run_session(cfg, *code, ecc, keystream);

    const fs::path dir = o.out;
    make_dir(dir);
    {
        std::ostringstream rec;
        write_records(rec, {n, code->m(), l}, records);
        write_text(dir / "records.txt", rec.str());
        std::ostringstream sum;
        write_summary_csv(sum, records);
        write_text(dir / "summary.csv", sum.str());
    }
    write_text(dir / "code.txt", code->g_h().to_text());
    write_text(dir / "ecc.txt", ecc.generator().to_text());
    write_text(dir / "state.txt", s.to_text());
    write_text(dir / "key.txt", key.to_string() + "\n");

    std::vector<std::string> args{"simulate", "--p", fmt(o.p), "--tau", std::to_string(o.tau), "--seed",
                                  std::to_string(o.seed), "--mode", o.mode, "--w", std::to_string(o.w), "--l",
                                  std::to_string(l), "--ecc", ecc_arg(o.ecc), "--max-retries",
                                  std::to_string(o.max_retries)};
    json params_json{{"n", n},
                     {"m", code->m()},
                     {"l", l},
                     {"w", o.w},
                     {"p", o.p},
                     {"tau", o.tau},
                     {"seed", o.seed},
                     {"mode", o.mode},
                     {"max_retries", o.max_retries},
                     {"ecc", ecc_arg(o.ecc)}};
    if (!o.code.empty()) {
        args.insert(args.end(), {"--code", absolute(o.code)});
        params_json["code"] = absolute(o.code);
    }
    if (o.key.empty()) {
        args.insert(args.end(), {"--key-seed", std::to_string(o.key_seed)});
        params_json["key_seed"] = o.key_seed;
    } else {
        args.insert(args.end(), {"--key", absolute(o.key)});
        params_json["key"] = absolute(o.key);
    }
    if (o.state.empty()) {
        args.insert(args.end(), {"--state-seed", std::to_string(o.state_seed)});
        params_json["state_seed"] = o.state_seed;
    } else {
        args.insert(args.end(), {"--state", absolute(o.state)});
        params_json["state"] = absolute(o.state);
    }
    args.insert(args.end(), {"--out", absolute(o.out)});
    params_json["out"] = absolute(o.out);
    write_json(dir / "manifest.json", manifest(args, std::move(params_json)));

    std::size_t acks = 0;
    std::size_t max_attempts = 0;
    for (const auto& r : records) {
        acks += r.ack ? 1 : 0;
        max_attempts = std::max(max_attempts, r.attempts);
    }
    json summary{{"blocks", o.tau},
                 {"transmissions", records.size()},
                 {"acks", acks},
                 {"ack_rate", static_cast<double>(acks) / static_cast<double>(records.size())},
                 {"max_attempts", max_attempts}};
    out << summary.dump(2) << "\n";
    return exit_ok;
}

// ---- attack

struct AttackOpts {
    std::string transcript;
    bool recover = false;
    std::string export_path;
    std::string true_key;
    std::optional<double> p;
    std::optional<std::size_t> tau;
    std::string out;
};

int cmd_attack(const AttackOpts& o, std::ostream& out) {
    const fs::path dir = o.transcript;
    std::istringstream rec_in(read_text(dir / "records.txt"));
    RecordFileHeader header;
    auto records = read_records(rec_in, header);
    if (o.tau) {
        if (*o.tau > records.size()) {
            throw InputError("transcript holds " + std::to_string(records.size()) + " samples, --tau asks for " +
                             std::to_string(*o.tau));
        }
        records.resize(*o.tau);
    }

    double p = 0.0;
    std::size_t w = 0;
    if (fs::exists(dir / "manifest.json")) {
        const auto m = json::parse(read_text(dir / "manifest.json"), nullptr, false);
        if (m.is_discarded()) throw ParseError("manifest.json is not valid JSON");
        p = m.at("params").value("p", 0.0);
        w = m.at("params").value("w", std::size_t{0});
    }
    if (o.p) p = *o.p;

    const auto ecc = LinearBlockCode::from_generator(BitMatrix::from_text(read_text(dir / "ecc.txt")));
    const auto code = HomophonicCode::from_matrix(BitMatrix::from_text(read_text(dir / "code.txt")), header.l, w);
    if (ecc.n() != header.n || code.m() != header.m) {
        throw MalformedTranscript("records header disagrees with code.txt / ecc.txt");
    }
    const auto s = BitMatrix::from_text(read_text(dir / "state.txt"));
    const auto transcript = transcript_from_records(records, compose(code, ecc), s, p);
    const auto instance = eliminate_randomness(transcript, header.l);

    json result;
    result["n"] = instance.n;
    result["tau"] = instance.tau;
    result["p"] = p;
    result["equations"] = instance.size();
    result["expected_equations"] = instance.tau * (header.n - header.m + header.l);
    result["degenerate_samples"] = instance.degenerate_samples.size();
    result["min_combo_weight"] =
        instance.combo_weights.empty() ? 0 : *std::min_element(instance.combo_weights.begin(), instance.combo_weights.end());
    result["epsilon_bound"] = instance.epsilon_bound;

    std::optional<BitVec> key;
    if (!o.true_key.empty()) {
        key = load_key(o.true_key, instance.n);
        result["empirical_noise"] = empirical_noise(instance, *key);
    }
    if (o.recover) {
        const auto found = brute_force_recover(instance);
        result["recovered_key"] = found.key.to_string();
        result["agreement"] = found.agreement;
        if (key) result["key_correct"] = found.key == *key;
    }
    if (!o.export_path.empty()) {
        std::ostringstream csv;
        export_lpn(instance, csv);
        write_text(o.export_path, csv.str());
    }

    if (!o.out.empty()) {
        const fs::path out_dir = o.out;
        make_dir(out_dir);
        write_json(out_dir / "attack.json", result);
        std::vector<std::string> args{"attack", "--transcript", absolute(o.transcript), "--p", fmt(p)};
        json params{{"n", header.n}, {"m", header.m}, {"l", header.l}, {"w", w}, {"p", p}, {"tau", instance.tau},
                    {"transcript", absolute(o.transcript)}};
        if (o.tau) args.insert(args.end(), {"--tau", std::to_string(*o.tau)});
        if (o.recover) args.emplace_back("--recover");
        if (!o.export_path.empty()) {
            args.insert(args.end(), {"--export", absolute(o.export_path)});
            params["export"] = absolute(o.export_path);
        }
        if (!o.true_key.empty()) {
            args.insert(args.end(), {"--true-key", absolute(o.true_key)});
            params["true_key"] = absolute(o.true_key);
        }
        args.insert(args.end(), {"--out", absolute(o.out)});
        params["out"] = absolute(o.out);
        write_json(out_dir / "manifest.json", manifest(args, std::move(params)));
    }
    out << result.dump(2) << "\n";
    return exit_ok;
}

// ---- noise-curve

struct NoiseCurveOpts {
    std::string p_grid;
    std::string w_grid;
    std::size_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_noise_curve(const NoiseCurveOpts& o, std::ostream& out) {
    const auto ps = parse_grid(o.p_grid, "--p-grid");
    const auto ws_raw = parse_grid(o.w_grid, "--w-grid");
    std::vector<std::size_t> ws;
    for (double w : ws_raw) {
        if (w < 0 || w != std::floor(w)) throw InputError("--w-grid entries must be non-negative integers");
        ws.push_back(static_cast<std::size_t>(w));
    }

    std::ostringstream csv;
    csv << "p,w,formula_pw,empirical_pw,abs_error\n";
    std::uint64_t point = 0;
    for (double p : ps) {
        for (std::size_t w : ws) {
            const double formula = noise_lower_bound(p, w);
            const double est = xor_fold_estimate(p, w + 1, o.trials, o.seed + point++);
            csv << fmt(p) << ',' << w << ',' << fmt(formula) << ',' << fmt(est) << ',' << fmt(std::abs(est - formula))
                << '\n';
        }
    }

    if (o.out.empty()) {
        out << csv.str();
        return exit_ok;
    }
    write_text(o.out, csv.str());
    const std::vector<std::string> args{"noise-curve", "--p-grid", o.p_grid, "--w-grid", o.w_grid, "--trials",
                                        std::to_string(o.trials), "--seed", std::to_string(o.seed), "--out",
                                        absolute(o.out)};
    write_json(o.out + ".manifest.json",
               manifest(args, {{"p_grid", ps}, {"w_grid", ws}, {"trials", o.trials}, {"seed", o.seed},
                               {"out", absolute(o.out)}}));
    out << "wrote " << o.out << "\n";
    return exit_ok;
}

// ---- replay

int cmd_replay(const std::string& manifest_path, const std::string& out_override, std::ostream& out,
               std::ostream& err) {
    const auto m = json::parse(read_text(manifest_path), nullptr, false);
    if (m.is_discarded() || !m.contains("args") || !m["args"].is_array()) {
        throw ParseError(manifest_path + ": not a run manifest");
    }
    auto args = m["args"].get<std::vector<std::string>>();
    if (args.empty() || args.front() == "replay") throw ParseError(manifest_path + ": bad command in manifest");
    if (!out_override.empty()) {
        auto it = std::find(args.begin(), args.end(), "--out");
        if (it != args.end() && std::next(it) != args.end()) {
            *std::next(it) = absolute(out_override);
        } else {
            args.insert(args.end(), {"--out", absolute(out_override)});
        }
    }
    return run(args, out, err);
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const RetryExhausted& e) {
        err << "protocol failure: " << e.what() << "\n";
        return exit_protocol;
    } catch (const TooLarge& e) {
        err << "resource limit: " << e.what() << "\n";
        return exit_resource;
    } catch (const TableTooLarge& e) {
        err << "resource limit: " << e.what() << "\n";
        return exit_resource;
    } catch (const InfeasibleParams& e) {
        err << "infeasible parameters: " << e.what() << "\n";
        return exit_input;
    } catch (const MalformedTranscript& e) {
        err << "malformed transcript: " << e.what() << "\n";
        return exit_input;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_input;
    } catch (const NotInvertible& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homophonic coding / LPN experiment harness"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    BuildOpts build;
    auto* build_cmd = app.add_subcommand("build", "Construct a generic homophonic code");
    build_cmd->add_option("--l", build.l, "Plaintext bits per block")->required();
    build_cmd->add_option("--m", build.m, "Homophonic block length (default 2l)");
    build_cmd->add_option("--w", build.w, "Target column weight")->capture_default_str();
    build_cmd->add_option("--ecc", build.ecc, "Generator file or 'hamming74'")->capture_default_str();
    build_cmd->add_option("--out", build.out, "Output directory")->required();

    ValidateOpts val;
    auto* val_cmd = app.add_subcommand("validate", "Check a G_H against the design criteria");
    val_cmd->add_option("--code", val.code, "G_H matrix file")->required();
    val_cmd->add_option("--ecc", val.ecc, "Generator file or 'hamming74'")->capture_default_str();
    val_cmd->add_option("--w", val.w, "Required noise parameter")->required();
    val_cmd->add_option("--l", val.l, "Plaintext bits (inferred from the layout if absent)");
    val_cmd->add_option("--out", val.out, "Also save report.json and manifest.json here");

    SimulateOpts sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run an ARQ session over a BSC");
    sim_cmd->add_option("--p", sim.p, "BSC crossover probability")->required();
    sim_cmd->add_option("--tau", sim.tau, "Blocks to deliver")->required();
    sim_cmd->add_option("--seed", sim.seed, "Session seed")->capture_default_str();
    sim_cmd->add_option("--mode", sim.mode, "Plaintext source")
        ->check(CLI::IsMember({"zero", "random"}))
        ->capture_default_str();
    sim_cmd->add_option("--code", sim.code, "G_H matrix file (default: build_generic)");
    sim_cmd->add_option("--l", sim.l, "Plaintext bits");
    sim_cmd->add_option("--w", sim.w, "Noise parameter for the generated code")->capture_default_str();
    sim_cmd->add_option("--ecc", sim.ecc, "Generator file or 'hamming74'")->capture_default_str();
    auto* key_opt = sim_cmd->add_option("--key", sim.key, "Key file (one line of 0/1)");
    sim_cmd->add_option("--key-seed", sim.key_seed, "Seed for a random key")->excludes(key_opt)->capture_default_str();
    auto* state_opt = sim_cmd->add_option("--state", sim.state, "State matrix file");
    sim_cmd->add_option("--state-seed", sim.state_seed, "Seed for a random S")
        ->excludes(state_opt)
        ->capture_default_str();
    sim_cmd->add_option("--max-retries", sim.max_retries, "Attempts per block")->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "Output directory")->required();

    AttackOpts atk;
    auto* atk_cmd = app.add_subcommand("attack", "Reduce a zero-plaintext transcript to LPN");
    atk_cmd->add_option("--transcript", atk.transcript, "Directory written by simulate --mode zero")->required();
    atk_cmd->add_flag("--recover", atk.recover, "Brute-force the key (n <= 24)");
    atk_cmd->add_option("--export", atk.export_path, "Write the LPN instance as CSV");
    atk_cmd->add_option("--true-key", atk.true_key, "Key file, for measuring the noise rate");
    atk_cmd->add_option("--p", atk.p, "Channel p (default: from the transcript manifest)");
    atk_cmd->add_option("--tau", atk.tau, "Use only the first tau transmissions");
    atk_cmd->add_option("--out", atk.out, "Also save attack.json and manifest.json here");

    NoiseCurveOpts nc;
    auto* nc_cmd = app.add_subcommand("noise-curve", "Folded-noise formula vs Monte-Carlo");
    nc_cmd->add_option("--p-grid", nc.p_grid, "Comma-separated p values")->required();
    nc_cmd->add_option("--w-grid", nc.w_grid, "Comma-separated w values")->required();
    nc_cmd->add_option("--trials", nc.trials, "Samples per grid point")->capture_default_str();
    nc_cmd->add_option("--seed", nc.seed, "Base seed")->capture_default_str();
    nc_cmd->add_option("--out", nc.out, "CSV path (stdout if absent)");

    std::string manifest_path;
    std::string replay_out;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a command from its manifest");
    replay_cmd->add_option("--manifest", manifest_path, "manifest.json to replay")->required();
    replay_cmd->add_option("--out", replay_out, "Redirect outputs");

    std::vector<std::string> argv_store{"homolpn"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    if (*build_cmd) return guarded([&] { return cmd_build(build, out); }, err);
    if (*val_cmd) return guarded([&] { return cmd_validate(val, out); }, err);
    if (*sim_cmd) return guarded([&] { return cmd_simulate(sim, out); }, err);
    if (*atk_cmd) return guarded([&] { return cmd_attack(atk, out); }, err);
    if (*nc_cmd) return guarded([&] { return cmd_noise_curve(nc, out); }, err);
    return guarded([&] { return cmd_replay(manifest_path, replay_out, out, err); }, err);
}

}  // namespace homolpn::cli
