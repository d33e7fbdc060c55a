// lnzfact: command line front end for last-nonzero-digit-of-n! sequences
// and the automata that compute them.
//
// Exit codes: 0 success, 1 mismatch/counterexample found, 2 usage error,
// 3 internal error or exhausted search.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lnz/dfao.hpp"
#include "lnz/errors.hpp"
#include "lnz/factbuild.hpp"
#include "lnz/numkit.hpp"
#include "lnz/witness.hpp"

namespace {

using namespace lnz;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

BigInt parse_bigint(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw usage_error("not a non-negative integer: '" + s + "'");
    return BigInt(s);
}

std::vector<std::uint64_t> parse_prime_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(static_cast<std::uint64_t>(parse_bigint(item)));
    if (out.empty()) throw usage_error("empty prime list");
    return out;
}

const char* verdict_text(const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::PrimePower: return "PRIME_POWER";
        case VerdictKind::Automatic: return "AUTOMATIC";
        default: return "NOT_AUTOMATIC";
    }
}

const char* signal_text(Signal s) {
    switch (s) {
        case Signal::Divides: return "DIVIDES";
        case Signal::NotDivides: return "NOT_DIVIDES";
        default: return "UNKNOWN";
    }
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void footer(bool quiet, const Timer& t) {
    if (!quiet) std::cerr << "elapsed_ms " << t.ms() << "\n";
}

std::string word_text(const Word& w) {
    std::ostringstream out;
    for (std::size_t i = 0; i < w.symbols.size(); ++i) {
        if (i > 0) out << ".";
        out << w.symbols[i];
    }
    return out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"last nonzero digit of n! workbench"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress the timing footer");

    // --- queries -----------------------------------------------------
    std::uint64_t q_base = 10;
    std::string q_n;
    std::uint64_t q_from = 0, q_to = 0;
    std::string q_format = "text";
    auto* lnz_cmd = app.add_subcommand("lnz", "last nonzero base-b digit of n!");
    lnz_cmd->add_option("--base", q_base, "sequence base")->required();
    auto* opt_n = lnz_cmd->add_option("--n", q_n, "single index");
    auto* opt_from = lnz_cmd->add_option("--from", q_from, "range start (inclusive)");
    auto* opt_to = lnz_cmd->add_option("--to", q_to, "range end (exclusive)");
    lnz_cmd->add_option("--format", q_format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));
    opt_to->needs(opt_from);
    opt_n->excludes(opt_to);

    std::uint64_t t_base = 10;
    auto* table_cmd = app.add_subcommand("table", "values of lnz(i!) for i < b");
    table_cmd->add_option("--base", t_base, "sequence base")->required();

    std::uint64_t c_base = 10;
    auto* classify_cmd = app.add_subcommand("classify", "automaticity verdict for a base");
    classify_cmd->add_option("--base", c_base, "sequence base")->required();

    std::uint64_t s_base = 12;
    std::string s_n;
    auto* signal_cmd =
        app.add_subcommand("signal", "digit-sum divisibility signal for a tie-case base");
    signal_cmd->add_option("--base", s_base, "sequence base")->required();
    signal_cmd->add_option("--n", s_n, "index (decimal, arbitrary size)")->required();

    std::string mem_primes, mem_n;
    std::uint64_t mem_threshold = 1;
    auto* member_cmd = app.add_subcommand("membership", "A-/A+ digit-sum set membership");
    member_cmd->add_option("--primes", mem_primes, "comma separated primes")->required();
    member_cmd->add_option("--threshold", mem_threshold, "digit-sum gap threshold")->required();
    member_cmd->add_option("--n", mem_n, "integer to test")->required();

    // --- automata ----------------------------------------------------
    std::uint64_t b_base = 9;
    std::string b_mode = "sound", b_out;
    auto* build_cmd = app.add_subcommand("build", "construct an automaton for a base");
    build_cmd->add_option("--base", b_base, "sequence base")->required();
    build_cmd->add_option("--mode", b_mode, "sound|literal|dominant")
        ->check(CLI::IsMember({"sound", "literal", "dominant"}));
    build_cmd->add_option("--out", b_out, "output automaton file")->required();

    std::string v_dfao;
    std::uint64_t v_base = 0, v_from = 0, v_to = 0;
    unsigned v_jobs = 1;
    std::string v_target = "value", v_format = "text";
    std::uint64_t v_prime = 0;
    std::uint32_t v_exponent = 1;
    auto* verify_cmd = app.add_subcommand("verify", "compare an automaton with the oracle");
    verify_cmd->add_option("--dfao", v_dfao, "automaton file")->required();
    verify_cmd->add_option("--base", v_base, "sequence base")->required();
    verify_cmd->add_option("--from", v_from, "range start (inclusive)");
    verify_cmd->add_option("--to", v_to, "range end (exclusive)")->required();
    verify_cmd->add_option("--jobs", v_jobs, "worker threads");
    verify_cmd->add_option("--target", v_target, "value|divisibility")
        ->check(CLI::IsMember({"value", "divisibility"}));
    verify_cmd->add_option("--prime", v_prime, "divisor prime (divisibility target)");
    verify_cmd->add_option("--exponent", v_exponent, "divisor exponent (divisibility target)");
    verify_cmd->add_option("--format", v_format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));

    std::string m_in, m_out;
    auto* minimize_cmd = app.add_subcommand("minimize", "state-minimal equivalent automaton");
    minimize_cmd->add_option("--in", m_in, "input automaton file")->required();
    minimize_cmd->add_option("--out", m_out, "output automaton file")->required();

    std::string e_a, e_b;
    auto* equiv_cmd = app.add_subcommand("equiv", "word-level equivalence of two automata");
    equiv_cmd->add_option("--a", e_a, "first automaton file")->required();
    equiv_cmd->add_option("--b", e_b, "second automaton file")->required();

    std::string r_in, r_out;
    auto* reverse_cmd = app.add_subcommand("reverse", "word-reversal construction");
    reverse_cmd->add_option("--in", r_in, "input automaton file")->required();
    reverse_cmd->add_option("--out", r_out, "output automaton file")->required();

    std::string rb_in, rb_out;
    std::uint32_t rb_lift = 0, rb_lower = 0;
    auto* rebase_cmd = app.add_subcommand("rebase", "alphabet change k <-> k^m");
    rebase_cmd->add_option("--in", rb_in, "input automaton file")->required();
    rebase_cmd->add_option("--out", rb_out, "output automaton file")->required();
    auto* opt_lift = rebase_cmd->add_option("--lift", rb_lift, "group m digits: k -> k^m");
    auto* opt_lower = rebase_cmd->add_option("--lower", rb_lower, "split digits: k^m -> k");
    opt_lift->excludes(opt_lower);

    std::uint64_t i_base = 10;
    std::uint32_t i_alphabet = 0, i_depth = 3;
    std::uint64_t i_train = 100000;
    std::size_t i_budget = 100000;
    std::string i_out;
    auto* infer_cmd = app.add_subcommand("infer", "learn a conjectural automaton from the oracle");
    infer_cmd->add_option("--base", i_base, "sequence base")->required();
    infer_cmd->add_option("--alphabet", i_alphabet, "input alphabet size")->required();
    infer_cmd->add_option("--train", i_train, "agreement bound");
    infer_cmd->add_option("--depth", i_depth, "signature depth");
    infer_cmd->add_option("--budget", i_budget, "state budget");
    infer_cmd->add_option("--out", i_out, "output automaton file")->required();

    // --- witnesses ---------------------------------------------------
    auto* witness_cmd = app.add_subcommand("witness", "prefix and extension certificates");
    witness_cmd->require_subcommand(1);
    std::uint64_t w_c = 2, w_base = 10, w_prefix = 1;
    std::uint32_t w_dmax = 10000;
    auto* pp_cmd = witness_cmd->add_subcommand("prefix-power",
                                               "power of c whose base-b digits start with a");
    pp_cmd->add_option("--c", w_c, "power base")->required();
    pp_cmd->add_option("--base", w_base, "digit base")->required();
    pp_cmd->add_option("--prefix", w_prefix, "required digit prefix")->required();
    pp_cmd->add_option("--dmax", w_dmax, "exponent search bound");

    std::string x_primes, x_prefix;
    std::uint64_t x_base = 10;
    std::uint32_t x_dmax = 10000;
    auto* ext_cmd = witness_cmd->add_subcommand(
        "extension", "extend a prefix until the maximal prime dominates the digit sums");
    ext_cmd->add_option("--primes", x_primes, "comma separated primes")->required();
    ext_cmd->add_option("--base", x_base, "digit base")->required();
    ext_cmd->add_option("--prefix", x_prefix, "digit prefix (decimal)")->required();
    ext_cmd->add_option("--dmax", x_dmax, "search bound");

    std::string f_dfao, f_base_str, f_id, f_out;
    std::uint64_t f_base = 12;
    std::uint32_t f_cmax = 400, f_dmax = 5000;
    auto* fool_cmd = app.add_subcommand("fool", "falsify a candidate divisibility automaton");
    fool_cmd->add_option("--dfao", f_dfao, "candidate automaton file")->required();
    fool_cmd->add_option("--base", f_base, "sequence base (tie case)")->required();
    fool_cmd->add_option("--cmax", f_cmax, "exponent collision bound");
    fool_cmd->add_option("--dmax", f_dmax, "extension search bound");
    fool_cmd->add_option("--id", f_id, "candidate label in the certificate");
    fool_cmd->add_option("--out", f_out, "also write the certificate as CSV");

    // Let the app-level --quiet flag appear after any subcommand.
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands([](const CLI::App*) { return true; }))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    Timer timer;

    if (*lnz_cmd) {
        if (!*opt_n && !*opt_to) throw usage_error("lnz: need --n or --from/--to");
        if (*opt_n) {
            std::cout << lnz_factorial(static_cast<std::uint64_t>(parse_bigint(q_n)), q_base)
                      << "\n";
        } else {
            if (q_to < q_from) throw usage_error("lnz: --to must be at least --from");
            auto values = lnz_range(q_base, q_from, q_to);
            if (q_format == "csv") std::cout << "n,value\n";
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (q_format == "csv")
                    std::cout << q_from + i << "," << values[i] << "\n";
                else
                    std::cout << values[i] << "\n";
            }
        }
        footer(quiet, timer);
        return kExitOk;
    }

    if (*table_cmd) {
        auto table = m_table(t_base);
        std::cout << "n,value\n";
        for (std::size_t i = 0; i < table.values.size(); ++i)
            std::cout << i << "," << table.values[i] << "\n";
        footer(quiet, timer);
        return kExitOk;
    }

    if (*classify_cmd) {
        auto v = classify(c_base);
        std::cout << verdict_text(v);
        if (v.kind == VerdictKind::PrimePower)
            std::cout << " " << v.prime << " " << v.exponent;
        else if (v.kind == VerdictKind::Automatic)
            std::cout << " " << v.prime;
        std::cout << "\n";
        footer(quiet, timer);
        return kExitOk;
    }

    if (*signal_cmd) {
        std::cout << signal_text(divisibility_signal(parse_bigint(s_n), s_base)) << "\n";
        footer(quiet, timer);
        return kExitOk;
    }

    if (*member_cmd) {
        SetSpec spec{parse_prime_list(mem_primes), mem_threshold};
        switch (set_membership(parse_bigint(mem_n), spec)) {
            case Membership::AMinus: std::cout << "A_MINUS\n"; break;
            case Membership::APlus: std::cout << "A_PLUS\n"; break;
            default: std::cout << "NEITHER\n"; break;
        }
        footer(quiet, timer);
        return kExitOk;
    }

    if (*build_cmd) {
        Dfao d;
        if (b_mode == "dominant") {
            auto verdict = classify(b_base);
            if (verdict.kind == VerdictKind::NotAutomatic) {
                auto f = factorize(b_base);
                std::ostringstream msg;
                msg << "base " << b_base << " has tied dominant primes";
                for (const auto& pp : f.parts)
                    if (pp.key() == f.parts[0].key()) msg << " " << pp.prime;
                throw usage_error(msg.str());
            }
            auto db = build_dominant_detailed(b_base);
            d = db.dfao;
            std::cout << "base " << b_base << " dominant " << db.dominant_prime << "^"
                      << db.dominant_exponent << " states " << d.num_states() << " patches "
                      << db.patches.size() << "\n";
        } else {
            auto f = factorize(b_base);
            if (f.parts.size() != 1)
                throw usage_error("base " + std::to_string(b_base) +
                                  " is not a prime power; use --mode dominant");
            auto mode = b_mode == "sound" ? PrimePowerMode::Sound : PrimePowerMode::Literal;
            d = build_prime_power(f.parts[0].prime, f.parts[0].exponent, mode);
            std::cout << "base " << b_base << " mode " << b_mode << " states " << d.num_states()
                      << "\n";
        }
        io_write_file(d, b_out);
        footer(quiet, timer);
        return kExitOk;
    }

    if (*verify_cmd) {
        auto d = io_read_file(v_dfao);
        auto target = v_target == "value" ? VerifyTarget::FullValue : VerifyTarget::Divisibility;
        if (target == VerifyTarget::Divisibility && v_prime == 0)
            throw usage_error("verify: --target divisibility needs --prime");
        auto rep = verify(d, v_base, v_from, v_to, target, v_prime, v_exponent, v_jobs);
        std::cout << (v_format == "csv" ? rep.to_csv() : rep.to_text(quiet));
        return rep.clean() ? kExitOk : kExitMismatch;
    }

    if (*minimize_cmd) {
        auto d = io_read_file(m_in);
        auto m = minimize(d);
        std::cout << "states " << d.num_states() << " -> " << m.num_states() << "\n";
        io_write_file(m, m_out);
        footer(quiet, timer);
        return kExitOk;
    }

    if (*equiv_cmd) {
        auto da = io_read_file(e_a);
        auto db = io_read_file(e_b);
        auto counter = equivalent(da, db);
        if (!counter) {
            std::cout << "EQUIVALENT\n";
            footer(quiet, timer);
            return kExitOk;
        }
        std::cout << "DIFFER on word " << word_text(*counter) << " outputs "
                  << eval_word(da, *counter) << " " << eval_word(db, *counter) << "\n";
        footer(quiet, timer);
        return kExitMismatch;
    }

    if (*reverse_cmd) {
        auto d = io_read_file(r_in);
        auto g = reverse(d);
        std::cout << "states " << d.num_states() << " -> " << g.num_states() << "\n";
        io_write_file(g, r_out);
        footer(quiet, timer);
        return kExitOk;
    }

    if (*rebase_cmd) {
        if (!*opt_lift && !*opt_lower) throw usage_error("rebase: need --lift or --lower");
        auto d = io_read_file(rb_in);
        Dfao g;
        if (*opt_lift) {
            g = lift(d, rb_lift);
        } else {
            g = lower(d, rb_lower);
        }
        std::cout << "alphabet " << d.alphabet << " -> " << g.alphabet << " states "
                  << d.num_states() << " -> " << g.num_states() << "\n";
        io_write_file(g, rb_out);
        footer(quiet, timer);
        return kExitOk;
    }

    if (*infer_cmd) {
        auto result = infer_dfao(i_base, i_alphabet, i_train, i_depth, i_budget);
        std::cout << "states " << result.dfao.num_states() << " depth " << result.depth
                  << " train_bound " << result.train_bound
                  << " (conjectural beyond the train bound)\n";
        io_write_file(result.dfao, i_out);
        footer(quiet, timer);
        return kExitOk;
    }

    if (*pp_cmd) {
        auto t = find_power_with_prefix(w_c, w_base, w_prefix, w_dmax);
        if (!t.verify()) throw std::runtime_error("witness failed re-verification");
        std::cout << "d=" << t.d << " e=" << t.e << " f=" << t.f << "\n";
        footer(quiet, timer);
        return kExitOk;
    }

    if (*ext_cmd) {
        auto primes = parse_prime_list(x_primes);
        auto a = find_extension(primes, x_base, parse_bigint(x_prefix), x_dmax);
        std::cout << a << "\n";
        footer(quiet, timer);
        return kExitOk;
    }

    if (*fool_cmd) {
        auto d = io_read_file(f_dfao);
        if (f_id.empty()) f_id = f_dfao;
        auto report = fooling_report(d, f_id, f_base, f_cmax, f_dmax);
        if (!verify_fooling_report(report, d))
            throw std::runtime_error("fooling certificate failed re-verification");
        std::cout << report.to_text();
        if (!f_out.empty()) {
            std::ofstream out(f_out, std::ios::binary);
            out << report.to_csv();
        }
        footer(quiet, timer);
        return kExitMismatch; // counterexample found
    }

    throw usage_error("no subcommand");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lnz::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lnz::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lnz::exhausted_error& e) {
        std::cerr << "exhausted: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
