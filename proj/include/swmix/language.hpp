// Switching languages: the admissible infinite switching sequences and the
// finite words that prefix them.
#pragma once

#include "swmix/numeric.hpp"
#include "swmix/word.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace swmix {

struct FullShift {
    int alphabet = 2;
};

// Subshift of finite type: sequences avoiding every listed word as a factor.
struct ForbiddenWords {
    int alphabet = 2;
    std::vector<Word> forbidden;
};

struct DfaTransition {
    int from;
    Symbol symbol;
    int to;
};

// Sequences labelling infinite paths from `start`. Transitions may be partial.
struct DfaSpec {
    int alphabet = 2;
    int states = 1;
    int start = 0;
    std::vector<DfaTransition> transitions;
};

using LanguageSpec = std::variant<FullShift, ForbiddenWords, DfaSpec>;

int alphabet_of(const LanguageSpec& spec);

// Deterministic automaton in which every state has at least one outgoing
// transition into a state of the automaton, so every accepted finite word
// extends to an infinite admissible sequence. Only compile() builds one.
class PrunedAutomaton {
public:
    static constexpr int none = -1;

    int alphabet() const noexcept { return alphabet_; }
    int states() const noexcept { return states_; }
    int start() const noexcept { return start_; }

    int next(int state, Symbol s) const { return table_[static_cast<std::size_t>(state * alphabet_ + s)]; }

    // State reached after reading w from the start, or `none`.
    int run(const Word& w) const;

    friend PrunedAutomaton compile(const LanguageSpec& spec);

private:
    PrunedAutomaton(int alphabet, int states, int start, std::vector<int> table)
        : alphabet_(alphabet), states_(states), start_(start), table_(std::move(table))
    {
    }

    int alphabet_;
    int states_;
    int start_;
    std::vector<int> table_;
};

// Throws EmptyLanguage when the language has no infinite sequence.
PrunedAutomaton compile(const LanguageSpec& spec);

bool accepts_prefix(const PrunedAutomaton& aut, const Word& w);

// Lazy lexicographic stream of the admissible words of one length. The
// optional filter sees every proper or full prefix before it is extended and
// may reject it, which abandons the whole branch.
class WordStream {
public:
    using Filter = std::function<bool(const Word& prefix)>;

    WordStream(const PrunedAutomaton& aut, std::size_t length, Filter keep = {});

    std::optional<Word> next();

private:
    struct Frame {
        int state;
        int next_symbol;
    };

    const PrunedAutomaton* aut_;
    std::size_t length_;
    Filter keep_;
    std::vector<Frame> stack_;
    Word prefix_;
};

WordStream enumerate_words(const PrunedAutomaton& aut, std::size_t n, WordStream::Filter keep = {});

// |L^n| via powers of the transfer matrix.
BigInt count_words(const PrunedAutomaton& aut, std::size_t n);

} // namespace swmix
