// Command-line front end: single-matrix reports, batch runs over matrix
// files, and the randomized verification suite.
//
// Exit codes: 0 success, 1 invariant/verification failure, 2 invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "torusbundle/report.hpp"
#include "torusbundle/verification.hpp"

namespace tb = torusbundle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInvalidInput = 2;

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

std::vector<tb::Int> parse_int_list(const std::string& text) {
    std::vector<tb::Int> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("invalid integer '" + item + "'");
        }
    }
    return out;
}

/// Matrix entries in row-major order alpha, gamma, beta, delta.
tb::GluingMatrix parse_theta(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[') {
        nlohmann::json j = nlohmann::json::parse(body);
        std::vector<tb::Int> v;
        if (j.is_array() && j.size() == 2 && j[0].is_array()) {
            v = {j[0][0].get<tb::Int>(), j[0][1].get<tb::Int>(), j[1][0].get<tb::Int>(),
                 j[1][1].get<tb::Int>()};
        } else {
            v = j.get<std::vector<tb::Int>>();
        }
        if (v.size() != 4) throw UsageError("matrix needs exactly four entries");
        return tb::GluingMatrix(v[0], v[1], v[2], v[3]);
    }
    std::vector<tb::Int> v = parse_int_list(body);
    if (v.size() != 4) throw UsageError("matrix needs exactly four entries: alpha,gamma,beta,delta");
    return tb::GluingMatrix(v[0], v[1], v[2], v[3]);
}

std::vector<tb::CoefficientRing> parse_rings(const std::vector<std::string>& tokens,
                                             const std::vector<tb::Int>& primes) {
    std::vector<tb::CoefficientRing> out;
    std::size_t prime_cursor = 0;
    for (const std::string& group : tokens) {
        std::string item;
        std::istringstream is(group);
        while (std::getline(is, item, ',')) {
            if (item == "Zp") {
                if (prime_cursor >= primes.size())
                    throw tb::InvalidPrimeError("ring Zp requires a matching --p value");
                out.push_back(tb::CoefficientRing::mod(primes[prime_cursor++]));
            } else {
                out.push_back(tb::CoefficientRing::parse(item));
            }
        }
    }
    if (out.empty()) out.push_back(tb::CoefficientRing::integers());
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path);
    if (!os) throw UsageError("cannot open output file '" + path + "'");
    os << content;
}

int cmd_report(const std::string& theta_text, const std::vector<std::string>& ring_tokens,
               const std::vector<tb::Int>& primes, const std::string& format,
               const std::string& output) {
    tb::GluingMatrix theta = parse_theta(theta_text);
    std::vector<tb::CoefficientRing> rings = parse_rings(ring_tokens, primes);
    tb::Report rep = tb::run_report(theta, rings);
    write_output(output, format == "json" ? tb::report_to_json(rep) + "\n"
                                          : tb::report_to_text(rep));
    return rep.all_checks_passed ? kExitOk : kExitCheckFailure;
}

int cmd_batch(const std::string& input, const std::string& output,
              const std::vector<std::string>& ring_tokens, const std::vector<tb::Int>& primes,
              int jobs) {
    std::ifstream is(input);
    if (!is) throw UsageError("cannot open input file '" + input + "'");
    std::vector<tb::CoefficientRing> rings = parse_rings(ring_tokens, primes);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);

    struct Entry {
        bool blank = false;
        bool valid = false;
        std::string error;
        nlohmann::json payload;
        bool passed = true;
    };
    std::vector<Entry> entries(lines.size());

    auto process = [&](std::size_t i) {
        Entry& e = entries[i];
        std::string text = lines[i];
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            e.blank = true;
            return;
        }
        try {
            tb::GluingMatrix theta = parse_theta(text);
            tb::Report rep = tb::run_report(theta, rings);
            e.valid = true;
            e.passed = rep.all_checks_passed;
            e.payload = nlohmann::json::parse(tb::report_to_json(rep, -1));
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || lines.size() < 2) {
        for (std::size_t i = 0; i < lines.size(); ++i) process(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < lines.size(); i = next.fetch_add(1))
                    process(i);
            });
        for (auto& t : pool) t.join();
    }

    nlohmann::json out = nlohmann::json::array();
    std::size_t valid = 0, invalid = 0, failed_checks = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Entry& e = entries[i];
        if (e.blank) continue;
        nlohmann::json item;
        item["line"] = i + 1;
        if (e.valid) {
            item["report"] = e.payload;
            ++valid;
            if (!e.passed) ++failed_checks;
        } else {
            item["error"] = e.error;
            ++invalid;
        }
        out.push_back(item);
    }
    write_output(output, out.dump(2) + "\n");

    std::cout << "batch: " << valid << " matrices processed, " << invalid << " rejected";
    if (invalid) {
        std::cout << " (lines:";
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (!entries[i].blank && !entries[i].valid) std::cout << " " << i + 1;
        std::cout << ")";
    }
    std::cout << "\n";
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!entries[i].blank && !entries[i].valid)
            std::cout << "  line " << i + 1 << ": " << entries[i].error << "\n";
    return failed_checks ? kExitCheckFailure : kExitOk;
}

int cmd_verify(std::uint64_t seed, int samples, int jobs) {
    if (samples < 1) throw UsageError("--samples must be at least 1");
    auto start = std::chrono::steady_clock::now();
    tb::VerificationReport rep = tb::run_verification({seed, samples, jobs});
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::cout << tb::verification_to_text(rep);
    // Timing lines start with '#' and are excluded from reproducibility.
    std::cout << "# elapsed " << elapsed.count() << "s\n";
    return rep.all_passed ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cohomology rings of torus bundles over the circle"};
    app.require_subcommand(1);

    std::string theta_text, format = "text", output, input;
    std::vector<std::string> ring_tokens;
    std::vector<tb::Int> primes;
    std::uint64_t seed = 20240817;
    int samples = 500;
    int jobs = 1;

    CLI::App* report = app.add_subcommand("report", "analyze one gluing matrix");
    report->add_option("--theta", theta_text,
                       "matrix entries alpha,gamma,beta,delta (row-major)")
        ->required();
    report->add_option("--ring", ring_tokens, "coefficient rings: Z, Z2, Z3, ... or Zp with --p");
    report->add_option("--p", primes, "primes consumed by Zp ring tokens in order");
    report->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    report->add_option("--output", output, "output path (default stdout)");

    CLI::App* batch = app.add_subcommand("batch", "analyze a file of matrices");
    batch->add_option("--input", input, "one matrix per line: a,c,b,d or [a,c,b,d]")->required();
    batch->add_option("--output", output, "JSON output path")->required();
    batch->add_option("--ring", ring_tokens, "coefficient rings per report");
    batch->add_option("--p", primes, "primes consumed by Zp ring tokens in order");
    batch->add_option("--jobs", jobs, "worker threads");

    CLI::App* verify = app.add_subcommand("verify", "run the randomized invariant suites");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--samples", samples, "number of random matrices");
    verify->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
        if (report->parsed()) return cmd_report(theta_text, ring_tokens, primes, format, output);
        if (batch->parsed()) return cmd_batch(input, output, ring_tokens, primes, jobs);
        return cmd_verify(seed, samples, jobs);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalidInput;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const tb::InvalidMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const tb::InvalidPrimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const tb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}
