#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace swmix {

using Symbol = std::uint8_t;

inline constexpr int max_alphabet = 64;

// A finite switching word, stored in application order: symbols()[0] is the
// map applied first. Concatenation u + v therefore means "u, then v".
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> symbols);
    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    void push_back(Symbol s) { symbols_.push_back(s); }
    void pop_back() { symbols_.pop_back(); }
    Word prefix(std::size_t n) const;

    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    // Symbols as a digit string, e.g. "0110"; symbols >= 10 are written as
    // bracketed decimals ("0[12]1").
    std::string str() const;
    static Word parse(const std::string& s);

    friend Word operator+(const Word& a, const Word& b);
    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
};

// Shortlex order: by length, then lexicographically. This is the canonical
// output order of every search.
inline bool shortlex_less(const Word& a, const Word& b)
{
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

} // namespace swmix
