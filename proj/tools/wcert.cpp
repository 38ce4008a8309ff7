// Command-line front end: evaluate scenario files and run the embedded
// selftest. Reports are deterministic; set WCERT_THREADS to control worker
// count (the bytes do not change with it).

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wcert/certify.hpp"
#include "wcert/scenario_io.hpp"
#include "wcert/selfcheck.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + out_path);
    out << text;
}

struct Timer {
    bool enabled;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    explicit Timer(bool on) : enabled(on) {}
    ~Timer() {
        if (!enabled) return;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "timing: " << ms << " ms\n";
    }
};

int cmd_run(const std::string& scenario_path, long long window_override,
            const std::string& out_path, bool timing) {
    Timer t(timing);
    wcert::LoadedScenario loaded = wcert::load_scenario_file(scenario_path);
    wcert::Scenario& s = loaded.scenario;
    if (window_override > 0) s.window = wcert::Window(s.window.rank, window_override);

    wcert::Certificate cert;
    try {
        cert = wcert::evaluate(s);
    } catch (const wcert::Inconclusive& e) {
        cert = wcert::Certificate{};
        cert.kind = s.kind;
        cert.verdict = wcert::Verdict::Inconclusive;
        cert.detail = e.what();
    } catch (const std::overflow_error& e) {
        cert = wcert::Certificate{};
        cert.kind = s.kind;
        cert.verdict = wcert::Verdict::Inconclusive;
        cert.detail = std::string("exact arithmetic out of range: ") + e.what();
    }

    wcert::Json report = wcert::make_report(cert, s.id, s.window, loaded.synthetic_inputs);
    emit(wcert::dump_report(report), out_path);
    return wcert::exit_code(cert.verdict);
}

int cmd_selftest(long long window, const std::string& out_path, bool corrupt, bool timing) {
    Timer t(timing);
    wcert::selfcheck::SelftestOutcome res = wcert::selfcheck::run_selftest(
        window, corrupt ? wcert::PairingTable::CorruptForTest : wcert::PairingTable::Standard);
    emit(wcert::dump_report(res.report), out_path);
    return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wcert: exact certificates for quotient-space computations"};
    app.require_subcommand(1);

    std::string scenario_path, out_path;
    long long window_override = 0;
    bool timing = false;

    CLI::App* run = app.add_subcommand("run", "evaluate a scenario file");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--window", window_override, "override the window bound")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", out_path, "write the report here instead of stdout");
    run->add_flag("--timing", timing, "print elapsed wall time to stderr");

    long long selftest_window = 3;
    std::string selftest_out;
    bool selftest_timing = false, corrupt = false;
    CLI::App* selftest = app.add_subcommand("selftest", "run the embedded verification suite");
    selftest->add_option("--window", selftest_window, "window bound for the sweeps")
        ->check(CLI::PositiveNumber);
    selftest->add_option("--out", selftest_out, "write the report here instead of stdout");
    selftest->add_flag("--timing", selftest_timing, "print elapsed wall time to stderr");
    selftest
        ->add_flag("--corrupt-table", corrupt,
                   "negative control: corrupt the pairing table so the first check must fail")
        ->group("");  // hidden from help

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, window_override, out_path, timing);
        return cmd_selftest(selftest_window, selftest_out, corrupt, selftest_timing);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
