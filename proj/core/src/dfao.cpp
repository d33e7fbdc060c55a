#include "lnz/dfao.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "lnz/errors.hpp"
#include "lnz/numkit.hpp"

namespace lnz {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::size_t h = v.size();
        for (auto x : v) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

std::vector<std::uint32_t> canonical_digits(const Dfao& d, std::uint64_t n) {
    auto s = to_digits(n, d.alphabet, Order::MsdFirst);
    if (d.order == Order::LsdFirst) std::ranges::reverse(s.digits);
    return s.digits;
}

} // namespace

void validate(const Dfao& d) {
    if (d.alphabet < 2) throw usage_error("dfao: alphabet size must be at least 2");
    const std::uint32_t n = d.num_states();
    if (n == 0) throw usage_error("dfao: at least one state required");
    if (d.initial >= n) throw usage_error("dfao: initial state out of range");
    if (d.transitions.size() != static_cast<std::size_t>(n) * d.alphabet)
        throw usage_error("dfao: transition table size mismatch");
    for (auto t : d.transitions)
        if (t >= n) throw usage_error("dfao: transition target out of range");
}

bool zero_robust(const Dfao& d) {
    return d.step(d.initial, 0) == d.initial;
}

std::uint32_t eval_word(const Dfao& d, const Word& w) {
    if (w.alphabet != d.alphabet) throw usage_error("eval_word: alphabet mismatch");
    std::uint32_t q = d.initial;
    for (auto s : w.symbols) {
        if (s >= d.alphabet) throw usage_error("eval_word: symbol out of range");
        q = d.step(q, s);
    }
    return d.outputs[q];
}

std::uint32_t eval(const Dfao& d, std::uint64_t n) {
    std::uint32_t q = d.initial;
    for (auto s : canonical_digits(d, n)) q = d.step(q, s);
    return d.outputs[q];
}

std::uint32_t eval(const Dfao& d, const BigInt& n) {
    auto digits = to_digits_msd(n, d.alphabet);
    if (d.order == Order::LsdFirst) std::ranges::reverse(digits);
    std::uint32_t q = d.initial;
    for (auto s : digits) q = d.step(q, s);
    return d.outputs[q];
}

Dfao reverse(const Dfao& d) {
    validate(d);
    const std::uint32_t n = d.num_states();
    // States of the reversal are output assignments Q -> Delta; only those
    // reachable from tau itself are materialized.
    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> index;
    std::vector<std::vector<std::uint64_t>> states;
    auto intern = [&](std::vector<std::uint64_t> g) {
        auto [it, inserted] = index.try_emplace(std::move(g), static_cast<std::uint32_t>(states.size()));
        if (inserted) states.push_back(it->first);
        return it->second;
    };

    std::vector<std::uint64_t> g0(d.outputs.begin(), d.outputs.end());
    Dfao r;
    r.alphabet = d.alphabet;
    r.order = d.order == Order::MsdFirst ? Order::LsdFirst : Order::MsdFirst;
    r.initial = intern(std::move(g0));
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        if (states.size() > 1u << 22)
            throw budget_error("reverse: state budget exceeded");
        const auto g = states[q]; // copy: states may reallocate below
        for (std::uint32_t s = 0; s < d.alphabet; ++s) {
            std::vector<std::uint64_t> next(n);
            for (std::uint32_t p = 0; p < n; ++p) next[p] = g[d.step(p, s)];
            r.transitions.push_back(intern(std::move(next)));
        }
        r.outputs.push_back(static_cast<std::uint32_t>(g[d.initial]));
    }
    return r;
}

Dfao map_output(const Dfao& d, const std::vector<std::uint32_t>& table) {
    validate(d);
    Dfao r = d;
    for (auto& o : r.outputs) {
        if (o >= table.size()) throw usage_error("map_output: output symbol outside table");
        o = table[o];
    }
    return r;
}

Dfao product(const Dfao& a, const Dfao& b,
             const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& combine) {
    validate(a);
    validate(b);
    if (a.alphabet != b.alphabet) throw usage_error("product: alphabet mismatch");
    if (a.order != b.order) throw usage_error("product: order mismatch");

    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::uint64_t> states;
    auto intern = [&](std::uint32_t qa, std::uint32_t qb) {
        std::uint64_t key = (static_cast<std::uint64_t>(qa) << 32) | qb;
        auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(states.size()));
        if (inserted) states.push_back(key);
        return it->second;
    };

    Dfao r;
    r.alphabet = a.alphabet;
    r.order = a.order;
    r.initial = intern(a.initial, b.initial);
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        auto qa = static_cast<std::uint32_t>(states[q] >> 32);
        auto qb = static_cast<std::uint32_t>(states[q]);
        for (std::uint32_t s = 0; s < r.alphabet; ++s)
            r.transitions.push_back(intern(a.step(qa, s), b.step(qb, s)));
        r.outputs.push_back(combine(a.outputs[qa], b.outputs[qb]));
    }
    return r;
}

Dfao lift(const Dfao& d, std::uint32_t m) {
    validate(d);
    if (m < 1) throw usage_error("lift: m must be positive");
    std::uint64_t big = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        big *= d.alphabet;
        if (big > (1u << 24)) throw usage_error("lift: target alphabet too large");
    }
    Dfao r;
    r.alphabet = static_cast<std::uint32_t>(big);
    r.order = d.order;
    r.initial = d.initial;
    r.outputs = d.outputs;
    r.transitions.reserve(static_cast<std::size_t>(d.num_states()) * big);
    for (std::uint32_t q = 0; q < d.num_states(); ++q) {
        for (std::uint64_t block = 0; block < big; ++block) {
            // One k^m symbol is m base-k digits, read in the automaton's
            // own direction.
            std::vector<std::uint32_t> digits(m);
            std::uint64_t v = block;
            for (std::uint32_t i = 0; i < m; ++i) {
                digits[m - 1 - i] = static_cast<std::uint32_t>(v % d.alphabet);
                v /= d.alphabet;
            }
            if (d.order == Order::LsdFirst) std::ranges::reverse(digits);
            std::uint32_t t = q;
            for (auto s : digits) t = d.step(t, s);
            r.transitions.push_back(t);
        }
    }
    return r;
}

Dfao lower(const Dfao& d, std::uint32_t k, std::size_t state_budget) {
    validate(d);
    if (d.order != Order::MsdFirst) throw usage_error("lower: only MSD-first automata supported");
    if (k < 2) throw usage_error("lower: target alphabet must be at least 2");
    std::uint32_t m = 0;
    std::uint64_t pw = 1;
    while (pw < d.alphabet) {
        pw *= k;
        ++m;
    }
    if (pw != d.alphabet) throw usage_error("lower: alphabet is not a power of the target base");
    if (m <= 1) return d;

    const bool robust = zero_robust(d);

    // Simulate the source automaton under all m possible leading-zero
    // paddings at once; the output picks the simulation whose padding
    // makes the total length a multiple of m. States where every
    // simulation sits at (initial, empty block) behave identically for
    // any length counter, so they collapse onto the initial state.
    struct Conf {
        std::uint32_t len_mod;
        std::vector<std::uint64_t> pairs; // m entries: (q << 32) | partial block
    };
    auto encode = [&](const Conf& c) {
        std::vector<std::uint64_t> v;
        v.reserve(1 + c.pairs.size());
        v.push_back(c.len_mod);
        v.insert(v.end(), c.pairs.begin(), c.pairs.end());
        return v;
    };

    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> index;
    std::vector<Conf> states;
    auto intern = [&](Conf c) {
        if (robust) {
            bool at_start = std::ranges::all_of(
                c.pairs, [&](std::uint64_t pr) { return pr == (static_cast<std::uint64_t>(d.initial) << 32); });
            if (at_start) c.len_mod = 0;
        }
        auto [it, inserted] = index.try_emplace(encode(c), static_cast<std::uint32_t>(states.size()));
        if (inserted) states.push_back(std::move(c));
        return it->second;
    };

    Conf init{0, std::vector<std::uint64_t>(m, static_cast<std::uint64_t>(d.initial) << 32)};
    Dfao r;
    r.alphabet = k;
    r.order = Order::MsdFirst;
    r.initial = intern(std::move(init));
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        if (states.size() > state_budget) throw budget_error("lower: state budget exceeded");
        const Conf cur = states[q];
        for (std::uint32_t s = 0; s < k; ++s) {
            Conf next;
            next.len_mod = (cur.len_mod + 1) % m;
            next.pairs.resize(m);
            for (std::uint32_t j = 0; j < m; ++j) {
                auto qj = static_cast<std::uint32_t>(cur.pairs[j] >> 32);
                auto rj = static_cast<std::uint32_t>(cur.pairs[j]);
                std::uint64_t block = static_cast<std::uint64_t>(rj) * k + s;
                if ((j + cur.len_mod + 1) % m == 0) {
                    next.pairs[j] = static_cast<std::uint64_t>(
                                        d.step(qj, static_cast<std::uint32_t>(block)))
                                    << 32;
                } else {
                    next.pairs[j] = (static_cast<std::uint64_t>(qj) << 32) | block;
                }
            }
            r.transitions.push_back(intern(std::move(next)));
        }
        std::uint32_t pick = (m - cur.len_mod) % m;
        r.outputs.push_back(d.outputs[static_cast<std::uint32_t>(cur.pairs[pick] >> 32)]);
    }
    return r;
}

Dfao minimize(const Dfao& d) {
    validate(d);
    // Reachable subset first.
    std::vector<std::int64_t> idx(d.num_states(), -1);
    std::vector<std::uint32_t> reach;
    idx[d.initial] = 0;
    reach.push_back(d.initial);
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (std::uint32_t s = 0; s < d.alphabet; ++s) {
            std::uint32_t t = d.step(reach[i], s);
            if (idx[t] < 0) {
                idx[t] = static_cast<std::int64_t>(reach.size());
                reach.push_back(t);
            }
        }

    const std::size_t n = reach.size();
    // Initial partition by output, refined until stable.
    std::vector<std::uint32_t> cls(n);
    {
        std::unordered_map<std::uint32_t, std::uint32_t> by_output;
        for (std::size_t i = 0; i < n; ++i) {
            auto [it, inserted] =
                by_output.try_emplace(d.outputs[reach[i]], static_cast<std::uint32_t>(by_output.size()));
            cls[i] = it->second;
        }
    }
    std::size_t num_classes = 0;
    for (auto c : cls) num_classes = std::max<std::size_t>(num_classes, c + 1);
    while (true) {
        std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> sig_index;
        std::vector<std::uint32_t> next_cls(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint64_t> sig;
            sig.reserve(d.alphabet + 1);
            sig.push_back(cls[i]);
            for (std::uint32_t s = 0; s < d.alphabet; ++s)
                sig.push_back(cls[idx[d.step(reach[i], s)]]);
            auto [it, inserted] =
                sig_index.try_emplace(std::move(sig), static_cast<std::uint32_t>(sig_index.size()));
            next_cls[i] = it->second;
        }
        if (sig_index.size() == num_classes) break;
        num_classes = sig_index.size();
        cls = std::move(next_cls);
    }

    Dfao r;
    r.alphabet = d.alphabet;
    r.order = d.order;
    r.initial = cls[0]; // reach[0] == d.initial
    r.outputs.assign(num_classes, 0);
    r.transitions.assign(num_classes * d.alphabet, 0);
    std::vector<bool> seen(num_classes, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t c = cls[i];
        if (seen[c]) continue;
        seen[c] = true;
        r.outputs[c] = d.outputs[reach[i]];
        for (std::uint32_t s = 0; s < d.alphabet; ++s)
            r.transitions[static_cast<std::size_t>(c) * d.alphabet + s] =
                cls[idx[d.step(reach[i], s)]];
    }
    return r;
}

std::optional<Word> equivalent(const Dfao& a, const Dfao& b) {
    validate(a);
    validate(b);
    if (a.alphabet != b.alphabet) throw usage_error("equivalent: alphabet mismatch");
    if (a.order != b.order) throw usage_error("equivalent: order mismatch");

    struct Node {
        std::uint32_t qa, qb;
        std::int64_t parent;
        std::uint32_t symbol;
    };
    std::unordered_map<std::uint64_t, std::uint32_t> visited;
    std::vector<Node> nodes;
    auto push = [&](std::uint32_t qa, std::uint32_t qb, std::int64_t parent, std::uint32_t sym) {
        std::uint64_t key = (static_cast<std::uint64_t>(qa) << 32) | qb;
        if (visited.contains(key)) return;
        visited.emplace(key, static_cast<std::uint32_t>(nodes.size()));
        nodes.push_back({qa, qb, parent, sym});
    };
    push(a.initial, b.initial, -1, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [qa, qb, parent, sym] = nodes[i];
        if (a.outputs[qa] != b.outputs[qb]) {
            Word w{a.alphabet, {}};
            for (std::int64_t j = static_cast<std::int64_t>(i); nodes[j].parent >= 0; j = nodes[j].parent)
                w.symbols.push_back(nodes[j].symbol);
            std::ranges::reverse(w.symbols);
            return w;
        }
        for (std::uint32_t s = 0; s < a.alphabet; ++s)
            push(a.step(qa, s), b.step(qb, s), static_cast<std::int64_t>(i), s);
    }
    return std::nullopt;
}

Dfao build_n_mod(std::uint32_t k, std::uint64_t m) {
    if (k < 2) throw usage_error("build_n_mod: alphabet must be at least 2");
    if (m < 1) throw usage_error("build_n_mod: modulus must be positive");
    Dfao d;
    d.alphabet = k;
    d.initial = 0;
    for (std::uint64_t q = 0; q < m; ++q) {
        d.outputs.push_back(static_cast<std::uint32_t>(q));
        for (std::uint32_t s = 0; s < k; ++s)
            d.transitions.push_back(static_cast<std::uint32_t>((q * k + s) % m));
    }
    return d;
}

Dfao build_digit_sum_mod(std::uint32_t k, std::uint64_t m) {
    if (k < 2) throw usage_error("build_digit_sum_mod: alphabet must be at least 2");
    if (m < 1) throw usage_error("build_digit_sum_mod: modulus must be positive");
    Dfao d;
    d.alphabet = k;
    d.initial = 0;
    for (std::uint64_t q = 0; q < m; ++q) {
        d.outputs.push_back(static_cast<std::uint32_t>(q));
        for (std::uint32_t s = 0; s < k; ++s)
            d.transitions.push_back(static_cast<std::uint32_t>((q + s) % m));
    }
    return d;
}

Dfao build_n_minus_digit_sum_mod(std::uint32_t k, std::uint64_t m) {
    if (k < 2) throw usage_error("build_n_minus_digit_sum_mod: alphabet must be at least 2");
    if (m < 1) throw usage_error("build_n_minus_digit_sum_mod: modulus must be positive");
    // State (n - s, s), both mod m: appending digit sigma maps
    // n - s to k(n - s) + (k - 1)s.
    Dfao d;
    d.alphabet = k;
    d.initial = 0;
    for (std::uint64_t diff = 0; diff < m; ++diff) {
        for (std::uint64_t s = 0; s < m; ++s) {
            d.outputs.push_back(static_cast<std::uint32_t>(diff));
            for (std::uint32_t sym = 0; sym < k; ++sym) {
                std::uint64_t ndiff = (diff * k + s % m * (k - 1)) % m;
                std::uint64_t ns = (s + sym) % m;
                d.transitions.push_back(static_cast<std::uint32_t>(ndiff * m + ns));
            }
        }
    }
    return d;
}

Dfao build_const(std::uint32_t k, std::uint32_t c) {
    if (k < 2) throw usage_error("build_const: alphabet must be at least 2");
    Dfao d;
    d.alphabet = k;
    d.initial = 0;
    d.outputs = {c};
    d.transitions.assign(k, 0);
    return d;
}

namespace {

// Trie over canonical MSD digit strings. State 0 is the root with a
// self-loop on 0 (leading-zero padding); the last state is the sinkhole.
// exact[q] holds the matched key, or -1.
struct MatchTrie {
    Dfao dfa; // outputs unused, all zero
    std::vector<std::int64_t> exact;
    bool zero_member = false;
};

MatchTrie build_match_trie(std::uint32_t k, const std::vector<std::uint64_t>& keys) {
    if (k < 2) throw usage_error("finite set: alphabet must be at least 2");
    MatchTrie t;
    std::vector<std::vector<std::uint32_t>> key_digits;
    for (auto key : keys) {
        if (key == 0) {
            t.zero_member = true;
            continue;
        }
        key_digits.push_back(to_digits(key, k, Order::MsdFirst).digits);
    }
    std::map<std::vector<std::uint32_t>, std::uint32_t> node_of;
    std::vector<std::vector<std::uint32_t>> nodes;
    auto is_live = [&](const std::vector<std::uint32_t>& s) {
        return s.empty() ||
               std::ranges::any_of(key_digits, [&](const auto& kd) { return is_digit_prefix(s, kd); });
    };
    nodes.push_back({});
    node_of.emplace(std::vector<std::uint32_t>{}, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto cur = nodes[i];
        for (std::uint32_t s = 0; s < k; ++s) {
            if (i == 0 && s == 0) continue; // root self-loop handled below
            auto ext = cur;
            ext.push_back(s);
            if (is_live(ext) && !node_of.contains(ext)) {
                node_of.emplace(ext, static_cast<std::uint32_t>(nodes.size()));
                nodes.push_back(ext);
            }
        }
    }
    const auto dead = static_cast<std::uint32_t>(nodes.size());
    t.dfa.alphabet = k;
    t.dfa.initial = 0;
    t.dfa.outputs.assign(nodes.size() + 1, 0);
    t.exact.assign(nodes.size() + 1, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::uint32_t s = 0; s < k; ++s) {
            if (i == 0 && s == 0) {
                t.dfa.transitions.push_back(0);
                continue;
            }
            auto ext = nodes[i];
            ext.push_back(s);
            auto it = node_of.find(ext);
            t.dfa.transitions.push_back(it == node_of.end() ? dead : it->second);
        }
        for (const auto& kd : key_digits)
            if (nodes[i] == kd) t.exact[i] = static_cast<std::int64_t>(from_digits({k, Order::MsdFirst, kd}));
    }
    for (std::uint32_t s = 0; s < k; ++s) t.dfa.transitions.push_back(dead);
    return t;
}

} // namespace

Dfao build_finite_set(std::uint32_t k, const std::vector<std::uint64_t>& members) {
    auto t = build_match_trie(k, members);
    Dfao d = t.dfa;
    for (std::size_t q = 0; q < d.outputs.size(); ++q)
        d.outputs[q] = t.exact[q] >= 0 ? 1 : 0;
    if (t.zero_member) d.outputs[d.initial] = 1;
    return d;
}

Dfao build_periodic(std::uint32_t k, const std::vector<std::uint32_t>& pattern) {
    if (pattern.empty()) throw usage_error("build_periodic: pattern must be non-empty");
    return map_output(build_n_mod(k, pattern.size()), pattern);
}

Dfao patch(const Dfao& d, const std::map<std::uint64_t, std::uint32_t>& overrides) {
    validate(d);
    if (d.order != Order::MsdFirst) throw usage_error("patch: only MSD-first automata supported");
    if (overrides.empty()) return d;
    std::vector<std::uint64_t> keys;
    for (const auto& [n, _] : overrides) keys.push_back(n);
    auto trie = build_match_trie(d.alphabet, keys);

    Dfao r;
    r.alphabet = d.alphabet;
    r.order = d.order;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::uint64_t> states;
    auto intern = [&](std::uint32_t qa, std::uint32_t qb) {
        std::uint64_t key = (static_cast<std::uint64_t>(qa) << 32) | qb;
        auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(states.size()));
        if (inserted) states.push_back(key);
        return it->second;
    };
    r.initial = intern(d.initial, trie.dfa.initial);
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        auto qa = static_cast<std::uint32_t>(states[q] >> 32);
        auto qb = static_cast<std::uint32_t>(states[q]);
        for (std::uint32_t s = 0; s < r.alphabet; ++s)
            r.transitions.push_back(intern(d.step(qa, s), trie.dfa.step(qb, s)));
        std::uint32_t out = d.outputs[qa];
        if (trie.exact[qb] >= 0)
            out = overrides.at(static_cast<std::uint64_t>(trie.exact[qb]));
        else if (qb == trie.dfa.initial && overrides.contains(0))
            out = overrides.at(0);
        r.outputs.push_back(out);
    }
    return r;
}

std::string io_write(const Dfao& d) {
    validate(d);
    std::ostringstream out;
    out << "LNZDFAO 1\n";
    out << "base " << d.alphabet << "\n";
    out << "order " << (d.order == Order::MsdFirst ? "msd" : "lsd") << "\n";
    out << "states " << d.num_states() << "\n";
    out << "initial " << d.initial << "\n";
    out << "outputs";
    for (auto o : d.outputs) out << " " << o;
    out << "\n";
    out << "transitions\n";
    for (std::uint32_t q = 0; q < d.num_states(); ++q) {
        for (std::uint32_t s = 0; s < d.alphabet; ++s) {
            if (s > 0) out << " ";
            out << d.step(q, s);
        }
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

void io_write_file(const Dfao& d, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw usage_error("cannot open file for writing: " + path);
    f << io_write(d);
}

namespace {

std::vector<std::string> split_tokens(const std::string& line, std::size_t line_no) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find(' ', pos);
        std::string tok =
            next == std::string::npos ? line.substr(pos) : line.substr(pos, next - pos);
        if (tok.empty()) throw parse_error("malformed spacing", line_no);
        tokens.push_back(std::move(tok));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return tokens;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line_no) {
    if (tok.empty() || tok.size() > 19) throw parse_error("bad integer '" + tok + "'", line_no);
    std::uint64_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw parse_error("bad integer '" + tok + "'", line_no);
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (tok.size() > 1 && tok[0] == '0') throw parse_error("bad integer '" + tok + "'", line_no);
    return v;
}

} // namespace

Dfao io_read(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            throw parse_error("CRLF line ending", lines.size() + 1);
        lines.push_back(line);
    }
    std::size_t at = 0;
    auto next_line = [&]() -> const std::string& {
        if (at >= lines.size()) throw parse_error("unexpected end of file", lines.size() + 1);
        return lines[at++];
    };

    if (next_line() != "LNZDFAO 1") throw parse_error("unknown header or version", 1);

    auto expect_field = [&](const std::string& name) {
        auto toks = split_tokens(next_line(), at);
        if (toks.size() != 2 || toks[0] != name)
            throw parse_error("expected '" + name + " <value>'", at);
        return toks[1];
    };

    Dfao d;
    std::uint64_t base = parse_uint(expect_field("base"), at);
    if (base < 2 || base > (1u << 24)) throw parse_error("base out of range", at);
    d.alphabet = static_cast<std::uint32_t>(base);

    std::string ord = expect_field("order");
    if (ord == "msd")
        d.order = Order::MsdFirst;
    else if (ord == "lsd")
        d.order = Order::LsdFirst;
    else
        throw parse_error("order must be 'msd' or 'lsd'", at);

    std::uint64_t n = parse_uint(expect_field("states"), at);
    if (n < 1 || n > (1u << 28)) throw parse_error("state count out of range", at);

    std::uint64_t init = parse_uint(expect_field("initial"), at);
    if (init >= n) throw parse_error("initial state out of range", at);
    d.initial = static_cast<std::uint32_t>(init);

    {
        auto toks = split_tokens(next_line(), at);
        if (toks.empty() || toks[0] != "outputs") throw parse_error("expected 'outputs ...'", at);
        if (toks.size() != n + 1) throw parse_error("expected one output per state", at);
        for (std::size_t i = 1; i < toks.size(); ++i)
            d.outputs.push_back(static_cast<std::uint32_t>(parse_uint(toks[i], at)));
    }
    if (next_line() != "transitions") throw parse_error("expected 'transitions'", at);
    for (std::uint64_t q = 0; q < n; ++q) {
        auto toks = split_tokens(next_line(), at);
        if (toks.size() != d.alphabet) throw parse_error("expected one entry per symbol", at);
        for (const auto& tok : toks) {
            std::uint64_t t = parse_uint(tok, at);
            if (t >= n) throw parse_error("transition target out of range", at);
            d.transitions.push_back(static_cast<std::uint32_t>(t));
        }
    }
    if (next_line() != "end") throw parse_error("expected 'end'", at);
    if (at != lines.size()) throw parse_error("trailing garbage after 'end'", at + 1);
    validate(d);
    return d;
}

Dfao io_read(const std::string& text) {
    std::istringstream in(text);
    return io_read(in);
}

Dfao io_read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw usage_error("cannot open file: " + path);
    return io_read(f);
}

} // namespace lnz
