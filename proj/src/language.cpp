#include "swmix/language.hpp"

#include "swmix/errors.hpp"

#include <deque>
#include <map>
#include <string>

namespace swmix {

namespace {

void check_alphabet(int m)
{
    if (m < 1 || m > max_alphabet) {
        throw InvalidArgument("alphabet size must be in [1, 64], got " + std::to_string(m));
    }
}

struct RawAutomaton {
    int alphabet;
    int start;
    std::vector<std::vector<int>> next;   // next[state][symbol], -1 if absent
};

RawAutomaton from_full(const FullShift& f)
{
    check_alphabet(f.alphabet);
    return {f.alphabet, 0, {std::vector<int>(static_cast<std::size_t>(f.alphabet), 0)}};
}

// Aho-Corasick automaton over the forbidden patterns. A node is dead when
// one of the patterns is a suffix of the text it represents.
RawAutomaton from_forbidden(const ForbiddenWords& f)
{
    check_alphabet(f.alphabet);
    auto m = static_cast<std::size_t>(f.alphabet);
    std::vector<std::vector<int>> go{std::vector<int>(m, -1)};
    std::vector<bool> dead{false};
    for (const Word& w : f.forbidden) {
        if (w.empty()) {
            throw InvalidArgument("forbidden words must be nonempty");
        }
        int node = 0;
        for (Symbol s : w) {
            if (s >= f.alphabet) {
                throw InvalidArgument("forbidden word " + w.str() + " uses a symbol outside the alphabet");
            }
            if (go[static_cast<std::size_t>(node)][s] < 0) {
                go[static_cast<std::size_t>(node)][s] = static_cast<int>(go.size());
                go.emplace_back(m, -1);
                dead.push_back(false);
            }
            node = go[static_cast<std::size_t>(node)][s];
        }
        dead[static_cast<std::size_t>(node)] = true;
    }

    std::vector<int> fail(go.size(), 0);
    std::deque<int> queue;
    for (std::size_t s = 0; s < m; ++s) {
        int& child = go[0][s];
        if (child < 0) {
            child = 0;
        } else {
            fail[static_cast<std::size_t>(child)] = 0;
            queue.push_back(child);
        }
    }
    while (!queue.empty()) {
        auto u = static_cast<std::size_t>(queue.front());
        queue.pop_front();
        if (dead[static_cast<std::size_t>(fail[u])]) {
            dead[u] = true;
        }
        for (std::size_t s = 0; s < m; ++s) {
            int child = go[u][s];
            if (child < 0) {
                go[u][s] = go[static_cast<std::size_t>(fail[u])][s];
            } else {
                fail[static_cast<std::size_t>(child)] = go[static_cast<std::size_t>(fail[u])][s];
                queue.push_back(child);
            }
        }
    }

    RawAutomaton raw{f.alphabet, 0, go};
    for (std::size_t u = 0; u < go.size(); ++u) {
        for (std::size_t s = 0; s < m; ++s) {
            int v = go[u][s];
            if (dead[u] || dead[static_cast<std::size_t>(v)]) {
                raw.next[u][s] = -1;
            }
        }
    }
    if (dead[0]) {
        raw.next[0].assign(m, -1);
    }
    return raw;
}

RawAutomaton from_dfa(const DfaSpec& d)
{
    check_alphabet(d.alphabet);
    if (d.states < 1) {
        throw InvalidArgument("dfa needs at least one state");
    }
    if (d.start < 0 || d.start >= d.states) {
        throw InvalidArgument("dfa start state out of range");
    }
    RawAutomaton raw{d.alphabet, d.start,
                     std::vector<std::vector<int>>(static_cast<std::size_t>(d.states),
                                                   std::vector<int>(static_cast<std::size_t>(d.alphabet), -1))};
    for (const auto& t : d.transitions) {
        if (t.from < 0 || t.from >= d.states || t.to < 0 || t.to >= d.states || t.symbol >= d.alphabet) {
            throw InvalidArgument("dfa transition out of range");
        }
        int& slot = raw.next[static_cast<std::size_t>(t.from)][t.symbol];
        if (slot >= 0 && slot != t.to) {
            throw InvalidArgument("dfa is not deterministic at state " + std::to_string(t.from));
        }
        slot = t.to;
    }
    return raw;
}

} // namespace

int alphabet_of(const LanguageSpec& spec)
{
    return std::visit([](const auto& s) { return s.alphabet; }, spec);
}

PrunedAutomaton compile(const LanguageSpec& spec)
{
    RawAutomaton raw = std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FullShift>) {
                return from_full(s);
            } else if constexpr (std::is_same_v<S, ForbiddenWords>) {
                return from_forbidden(s);
            } else {
                return from_dfa(s);
            }
        },
        spec);

    const std::size_t n = raw.next.size();
    const auto m = static_cast<std::size_t>(raw.alphabet);

    // Keep states reachable from the start...
    std::vector<bool> live(n, false);
    std::vector<int> order{raw.start};
    live[static_cast<std::size_t>(raw.start)] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (int v : raw.next[static_cast<std::size_t>(order[i])]) {
            if (v >= 0 && !live[static_cast<std::size_t>(v)]) {
                live[static_cast<std::size_t>(v)] = true;
                order.push_back(v);
            }
        }
    }
    // ...then peel off states with no transition into a live state until
    // every survivor has an infinite continuation.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t u = 0; u < n; ++u) {
            if (!live[u]) {
                continue;
            }
            bool has_exit = false;
            for (int v : raw.next[u]) {
                has_exit = has_exit || (v >= 0 && live[static_cast<std::size_t>(v)]);
            }
            if (!has_exit) {
                live[u] = false;
                changed = true;
            }
        }
    }
    if (!live[static_cast<std::size_t>(raw.start)]) {
        throw EmptyLanguage("switching language has no infinite admissible sequence");
    }

    // Renumber in BFS order from the start so state 0 is the start state.
    std::vector<int> id(n, -1);
    std::vector<int> kept;
    for (int u : order) {
        if (live[static_cast<std::size_t>(u)]) {
            id[static_cast<std::size_t>(u)] = static_cast<int>(kept.size());
            kept.push_back(u);
        }
    }
    std::vector<int> table(kept.size() * m, PrunedAutomaton::none);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (std::size_t s = 0; s < m; ++s) {
            int v = raw.next[static_cast<std::size_t>(kept[i])][s];
            if (v >= 0 && live[static_cast<std::size_t>(v)]) {
                table[i * m + s] = id[static_cast<std::size_t>(v)];
            }
        }
    }
    return PrunedAutomaton(raw.alphabet, static_cast<int>(kept.size()), 0, std::move(table));
}

int PrunedAutomaton::run(const Word& w) const
{
    int q = start_;
    for (Symbol s : w) {
        if (s >= alphabet_) {
            return none;
        }
        q = next(q, s);
        if (q == none) {
            return none;
        }
    }
    return q;
}

bool accepts_prefix(const PrunedAutomaton& aut, const Word& w)
{
    return aut.run(w) != PrunedAutomaton::none;
}

WordStream::WordStream(const PrunedAutomaton& aut, std::size_t length, Filter keep)
    : aut_(&aut), length_(length), keep_(std::move(keep))
{
    if (length == 0) {
        throw InvalidArgument("word length must be at least 1");
    }
    stack_.push_back({aut.start(), 0});
}

std::optional<Word> WordStream::next()
{
    while (!stack_.empty()) {
        Frame& top = stack_.back();
        if (top.next_symbol >= aut_->alphabet()) {
            stack_.pop_back();
            if (!prefix_.empty()) {
                prefix_.pop_back();
            }
            continue;
        }
        auto s = static_cast<Symbol>(top.next_symbol++);
        int q = aut_->next(top.state, s);
        if (q == PrunedAutomaton::none) {
            continue;
        }
        prefix_.push_back(s);
        if (keep_ && !keep_(prefix_)) {
            prefix_.pop_back();
            continue;
        }
        if (prefix_.size() == length_) {
            Word out = prefix_;
            prefix_.pop_back();
            return out;
        }
        stack_.push_back({q, 0});
    }
    return std::nullopt;
}

WordStream enumerate_words(const PrunedAutomaton& aut, std::size_t n, WordStream::Filter keep)
{
    return WordStream(aut, n, std::move(keep));
}

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

Matrix multiply(const Matrix& a, const Matrix& b)
{
    const std::size_t n = a.size();
    Matrix c(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

} // namespace

BigInt count_words(const PrunedAutomaton& aut, std::size_t n)
{
    if (n == 0) {
        throw InvalidArgument("word length must be at least 1");
    }
    const auto states = static_cast<std::size_t>(aut.states());
    Matrix step(states, std::vector<BigInt>(states, 0));
    for (std::size_t q = 0; q < states; ++q) {
        for (int s = 0; s < aut.alphabet(); ++s) {
            int r = aut.next(static_cast<int>(q), static_cast<Symbol>(s));
            if (r != PrunedAutomaton::none) {
                step[q][static_cast<std::size_t>(r)] += 1;
            }
        }
    }
    Matrix power(states, std::vector<BigInt>(states, 0));
    for (std::size_t i = 0; i < states; ++i) {
        power[i][i] = 1;
    }
    for (std::size_t e = n; e > 0; e >>= 1) {
        if (e & 1U) {
            power = multiply(power, step);
        }
        if (e > 1) {
            step = multiply(step, step);
        }
    }
    BigInt total = 0;
    for (const BigInt& v : power[static_cast<std::size_t>(aut.start())]) {
        total += v;
    }
    return total;
}

} // namespace swmix
