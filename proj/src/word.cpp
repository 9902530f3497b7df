#include "swmix/word.hpp"

#include "swmix/errors.hpp"

namespace swmix {

Word::Word(std::initializer_list<int> symbols)
{
    symbols_.reserve(symbols.size());
    for (int s : symbols) {
        if (s < 0 || s >= max_alphabet) {
            throw InvalidArgument("symbol out of range: " + std::to_string(s));
        }
        symbols_.push_back(static_cast<Symbol>(s));
    }
}

Word Word::prefix(std::size_t n) const
{
    return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + static_cast<long>(std::min(n, size()))));
}

std::string Word::str() const
{
    std::string out;
    for (Symbol s : symbols_) {
        if (s < 10) {
            out.push_back(static_cast<char>('0' + s));
        } else {
            out += "[" + std::to_string(s) + "]";
        }
    }
    return out;
}

Word Word::parse(const std::string& s)
{
    Word w;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= '0' && s[i] <= '9') {
            w.push_back(static_cast<Symbol>(s[i] - '0'));
        } else if (s[i] == '[') {
            auto close = s.find(']', i);
            if (close == std::string::npos) {
                throw InvalidArgument("unterminated symbol in word: " + s);
            }
            int v = std::stoi(s.substr(i + 1, close - i - 1));
            if (v < 0 || v >= max_alphabet) {
                throw InvalidArgument("symbol out of range in word: " + s);
            }
            w.push_back(static_cast<Symbol>(v));
            i = close;
        } else {
            throw InvalidArgument("bad character in word: " + s);
        }
    }
    return w;
}

Word operator+(const Word& a, const Word& b)
{
    std::vector<Symbol> out = a.symbols_;
    out.insert(out.end(), b.symbols_.begin(), b.symbols_.end());
    return Word(std::move(out));
}

} // namespace swmix
