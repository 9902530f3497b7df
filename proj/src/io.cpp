#include "swmix/io.hpp"

namespace swmix {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what)
{
    throw InvalidDocument(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) {
        bad(where, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        bad(where, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

const Json& array_at(const Json& j, const std::string& where)
{
    if (!j.is_array()) {
        bad(where, "expected an array");
    }
    return j;
}

std::size_t count_from(const Json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        bad(where, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

bool bool_from(const Json& j, const std::string& where)
{
    if (!j.is_boolean()) {
        bad(where, "expected true or false");
    }
    return j.get<bool>();
}

std::string sub(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string sub(const std::string& where, const char* key) { return where + "." + key; }

template <Scalar T>
std::vector<T> scalars_from(const Json& j, const std::string& where)
{
    std::vector<T> out;
    for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
        out.push_back(scalar_from<T>(j[i], sub(where, i)));
    }
    return out;
}

template <Scalar T>
Json scalars_json(const std::vector<T>& v)
{
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(scalar_json(x));
    }
    return out;
}

std::vector<std::size_t> counts_from(const Json& j, const std::string& where)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
        out.push_back(count_from(j[i], sub(where, i)));
    }
    return out;
}

template <Scalar T>
const char* mode_name()
{
    return NumTraits<T>::exact ? "rational" : "float";
}

template <Scalar T>
void check_mode(const Json& j)
{
    if (document_is_float(j) == NumTraits<T>::exact) {
        bad("mode", "document mode does not match the decoder");
    }
}

// Wraps constructor errors from the library as document errors.
template <class F>
auto guarded(const std::string& where, F&& f)
{
    try {
        return f();
    } catch (const InvalidDocument&) {
        throw;
    } catch (const Error& e) {
        bad(where, e.what());
    } catch (const std::exception& e) {
        bad(where, e.what());
    }
}

Json map_piece_json(const Json& a, const Json& b) { return Json{{"a", a}, {"b", b}}; }

} // namespace

template <Scalar T>
Json scalar_json(const T& v)
{
    if constexpr (NumTraits<T>::exact) {
        return NumTraits<T>::str(v);
    } else {
        return v;
    }
}

template <Scalar T>
T scalar_from(const Json& j, const std::string& where)
{
    try {
        if (j.is_string()) {
            return NumTraits<T>::parse(j.get<std::string>());
        }
        if (j.is_number()) {
            if constexpr (NumTraits<T>::exact) {
                // The shortest decimal that reads back as the same double.
                return NumTraits<T>::parse(j.dump());
            } else {
                return j.get<double>();
            }
        }
    } catch (const std::exception& e) {
        bad(where, e.what());
    }
    bad(where, "expected a number or a \"p/q\" string");
}

Json word_json(const Word& w)
{
    Json out = Json::array();
    for (auto s : w) {
        out.push_back(static_cast<int>(s));
    }
    return out;
}

Word word_from(const Json& j, const std::string& where)
{
    Word w;
    for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
        const Json& s = j[i];
        if (!s.is_number_integer() || s.get<long long>() < 0 || s.get<long long>() >= max_alphabet) {
            bad(sub(where, i), "expected a symbol in 0..63");
        }
        w.push_back(static_cast<Symbol>(s.get<int>()));
    }
    return w;
}

template <Scalar T>
Json interval_json(const Interval<T>& iv)
{
    return Json::array({scalar_json(iv.lo), scalar_json(iv.hi)});
}

template <Scalar T>
Interval<T> interval_from(const Json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2) {
        bad(where, "expected [lo, hi]");
    }
    T lo = scalar_from<T>(j[0], sub(where, std::size_t{0}));
    T hi = scalar_from<T>(j[1], sub(where, std::size_t{1}));
    return guarded(where, [&] { return Interval<T>(lo, hi); });
}

template <Scalar T>
Json set_json(const IntervalSet<T>& s)
{
    Json out = Json::array();
    for (const auto& p : s) {
        out.push_back(interval_json(p));
    }
    return out;
}

template <Scalar T>
IntervalSet<T> set_from(const Json& j, const std::string& where)
{
    array_at(j, where);
    if (j.size() == 2 && !j[0].is_array()) {
        return IntervalSet<T>(interval_from<T>(j, where));
    }
    std::vector<Interval<T>> parts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        parts.push_back(interval_from<T>(j[i], sub(where, i)));
    }
    return guarded(where, [&] { return IntervalSet<T>::from_parts(std::move(parts)); });
}

template <Scalar T>
Json compact_json(const CompactRep<T>& c)
{
    Json out = Json::array();
    for (const auto& p : c.parts()) {
        out.push_back(Json::array({scalar_json(p.lo), scalar_json(p.hi)}));
    }
    return out;
}

template <Scalar T>
CompactRep<T> compact_from(const Json& j, const std::string& where)
{
    std::vector<ClosedInterval<T>> parts;
    for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
        const Json& p = j[i];
        if (p.is_array()) {
            if (p.size() != 2) {
                bad(sub(where, i), "expected [lo, hi]");
            }
            parts.push_back({scalar_from<T>(p[0], sub(where, i)), scalar_from<T>(p[1], sub(where, i))});
        } else {
            T x = scalar_from<T>(p, sub(where, i));
            parts.push_back({x, x});
        }
    }
    return guarded(where, [&] { return CompactRep<T>::intervals(std::move(parts)); });
}

Json language_json(const LanguageSpec& spec)
{
    return std::visit(
        [](const auto& l) -> Json {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, FullShift>) {
                return Json{{"kind", "full"}, {"m", l.alphabet}};
            } else if constexpr (std::is_same_v<L, ForbiddenWords>) {
                Json words = Json::array();
                for (const auto& w : l.forbidden) {
                    words.push_back(word_json(w));
                }
                return Json{{"kind", "sft"}, {"m", l.alphabet}, {"forbidden", words}};
            } else {
                Json trans = Json::array();
                for (const auto& t : l.transitions) {
                    trans.push_back(Json::array({t.from, static_cast<int>(t.symbol), t.to}));
                }
                return Json{{"kind", "dfa"},
                            {"m", l.alphabet},
                            {"dfa", Json{{"states", l.states}, {"start", l.start}, {"trans", trans}}}};
            }
        },
        spec);
}

LanguageSpec language_from(const Json& j, const std::string& where)
{
    const Json& kind = field(j, "kind", where);
    int m = static_cast<int>(count_from(field(j, "m", where), sub(where, "m")));
    if (kind == "full") {
        return FullShift{m};
    }
    if (kind == "sft") {
        ForbiddenWords fw{m, {}};
        const Json& list = field(j, "forbidden", where);
        for (std::size_t i = 0; i < array_at(list, sub(where, "forbidden")).size(); ++i) {
            fw.forbidden.push_back(word_from(list[i], sub(sub(where, "forbidden"), i)));
        }
        return fw;
    }
    if (kind == "dfa") {
        std::string w = sub(where, "dfa");
        const Json& d = field(j, "dfa", where);
        DfaSpec spec;
        spec.alphabet = m;
        spec.states = static_cast<int>(count_from(field(d, "states", w), sub(w, "states")));
        spec.start = static_cast<int>(count_from(field(d, "start", w), sub(w, "start")));
        const Json& trans = field(d, "trans", w);
        for (std::size_t i = 0; i < array_at(trans, sub(w, "trans")).size(); ++i) {
            std::string tw = sub(sub(w, "trans"), i);
            const Json& t = trans[i];
            if (!t.is_array() || t.size() != 3) {
                bad(tw, "expected [state, symbol, state]");
            }
            spec.transitions.push_back({static_cast<int>(count_from(t[0], tw)),
                                        static_cast<Symbol>(count_from(t[1], tw)),
                                        static_cast<int>(count_from(t[2], tw))});
        }
        return spec;
    }
    bad(sub(where, "kind"), "expected \"full\", \"sft\" or \"dfa\"");
}

template <Scalar T>
Json system_json(const SwitchedSystem<T>& sys)
{
    Json maps = Json::array();
    for (const auto& m : sys.maps()) {
        Json pieces = Json::array();
        for (const auto& p : m.pieces()) {
            pieces.push_back(Json{{"domain", Json::array({scalar_json(p.lo), scalar_json(p.hi)})},
                                  {"a", scalar_json(p.slope)},
                                  {"b", scalar_json(p.offset)}});
        }
        if (m.fallback()) {
            pieces.push_back(map_piece_json(scalar_json(m.fallback()->slope), scalar_json(m.fallback()->offset)));
        }
        if (m.declared_continuous()) {
            maps.push_back(Json{{"pieces", pieces}, {"continuous", true}});
        } else {
            maps.push_back(pieces);
        }
    }
    return Json{{"maps", maps},
                {"bounds", Json::array({scalar_json(sys.bounds_lo()), scalar_json(sys.bounds_hi())})},
                {"language", language_json(sys.language())}};
}

template <Scalar T>
SwitchedSystem<T> system_from(const Json& j, const std::string& where)
{
    if (j.is_string() && j == "tent") {
        return tent_system<T>();
    }
    const Json& maps_j = field(j, "maps", where);
    std::vector<PiecewiseAffineMap<T>> maps;
    for (std::size_t i = 0; i < array_at(maps_j, sub(where, "maps")).size(); ++i) {
        std::string mw = sub(sub(where, "maps"), i);
        const Json* pieces_j = &maps_j[i];
        bool continuous = false;
        if (pieces_j->is_object()) {
            if (pieces_j->contains("continuous")) {
                continuous = bool_from((*pieces_j)["continuous"], sub(mw, "continuous"));
            }
            pieces_j = &field(*pieces_j, "pieces", mw);
            mw = sub(mw, "pieces");
        }
        std::vector<AffinePiece<T>> pieces;
        std::optional<AffineFormula<T>> fallback;
        for (std::size_t k = 0; k < array_at(*pieces_j, mw).size(); ++k) {
            std::string pw = sub(mw, k);
            const Json& p = (*pieces_j)[k];
            T a = scalar_from<T>(field(p, "a", pw), sub(pw, "a"));
            T b = scalar_from<T>(field(p, "b", pw), sub(pw, "b"));
            if (!p.contains("domain")) {
                if (fallback) {
                    bad(pw, "a map has at most one global formula");
                }
                fallback = AffineFormula<T>{a, b};
                continue;
            }
            const Json& d = p["domain"];
            if (!d.is_array() || d.size() != 2) {
                bad(sub(pw, "domain"), "expected [lo, hi]");
            }
            pieces.push_back({scalar_from<T>(d[0], sub(pw, "domain")), scalar_from<T>(d[1], sub(pw, "domain")), a, b});
        }
        maps.push_back(guarded(mw, [&] { return PiecewiseAffineMap<T>(pieces, fallback, continuous); }));
    }
    Interval<T> bounds = interval_from<T>(field(j, "bounds", where), sub(where, "bounds"));
    LanguageSpec lang = j.contains("language") ? language_from(j["language"], sub(where, "language"))
                                               : LanguageSpec(FullShift{static_cast<int>(maps.size())});
    return guarded(where, [&] { return SwitchedSystem<T>(std::move(maps), std::move(lang), bounds.lo, bounds.hi); });
}

const char* kind_name(MixingKind k) { return k == MixingKind::type1 ? "type1" : "type2"; }

MixingKind kind_from(const Json& j, const std::string& where)
{
    if (j == "type1" || j == "wm1" || j == 1) {
        return MixingKind::type1;
    }
    if (j == "type2" || j == "wm2" || j == 2) {
        return MixingKind::type2;
    }
    bad(where, "expected \"type1\" or \"type2\"");
}

SearchBudget budget_from(const Json& j, const std::string& where)
{
    SearchBudget b;
    if (j.is_null()) {
        return b;
    }
    if (!j.is_object()) {
        bad(where, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        std::string w = where + "." + key;
        if (key == "horizon") {
            b.horizon = count_from(value, w);
        } else if (key == "max_nodes") {
            b.max_nodes = count_from(value, w);
        } else if (key == "seconds") {
            if (!value.is_number() || value.get<double>() <= 0) {
                bad(w, "expected a positive number");
            }
            b.seconds = value.get<double>();
        } else if (key == "required") {
            b.required = count_from(value, w);
        } else {
            bad(w, "unknown budget field");
        }
    }
    return b;
}

Json budget_json(const SearchBudget& b)
{
    return Json{{"horizon", b.horizon}, {"max_nodes", b.max_nodes}, {"seconds", b.seconds}, {"required", b.required}};
}

template <Scalar T>
Json wm_json(const SwitchedSystem<T>& sys, const WMCertificate<T>& cert)
{
    Json s = Json::array();
    if (cert.kind == MixingKind::type1) {
        for (auto n : cert.lengths) {
            s.push_back(n);
        }
    } else {
        for (const auto& w : cert.words) {
            s.push_back(word_json(w));
        }
    }
    Json pairs = Json::array();
    for (const auto& p : cert.pairs) {
        pairs.push_back(Json{{"U", set_json(p.u)}, {"V", set_json(p.v)}});
    }
    Json wits = Json::array();
    for (const auto& w : cert.witnesses) {
        wits.push_back(Json{{"pair", w.pair}, {"word", word_json(w.word)}, {"source", interval_json(w.source)}});
    }
    return Json{{"certificate", "wm"},
                {"mode", mode_name<T>()},
                {"kind", cert.kind == MixingKind::type1 ? "wm1" : "wm2"},
                {"order", cert.order()},
                {"S", s},
                {"witnesses", wits},
                {"exhausted", cert.exhausted},
                {"K", set_json(cert.k)},
                {"Q", set_json(cert.q)},
                {"pairs", pairs},
                {"system", system_json(sys)}};
}

template <Scalar T>
std::pair<SwitchedSystem<T>, WMCertificate<T>> wm_from(const Json& j)
{
    check_mode<T>(j);
    auto sys = system_from<T>(field(j, "system", ""), "system");
    WMCertificate<T> cert;
    cert.kind = kind_from(field(j, "kind", ""), "kind");
    cert.k = set_from<T>(field(j, "K", ""), "K");
    cert.q = set_from<T>(field(j, "Q", ""), "Q");
    const Json& pairs = field(j, "pairs", "");
    for (std::size_t i = 0; i < array_at(pairs, "pairs").size(); ++i) {
        std::string w = sub("pairs", i);
        cert.pairs.push_back({set_from<T>(field(pairs[i], "U", w), sub(w, "U")),
                              set_from<T>(field(pairs[i], "V", w), sub(w, "V"))});
    }
    if (count_from(field(j, "order", ""), "order") != cert.pairs.size()) {
        bad("order", "does not match the number of pairs");
    }
    const Json& s = field(j, "S", "");
    for (std::size_t i = 0; i < array_at(s, "S").size(); ++i) {
        if (cert.kind == MixingKind::type1) {
            cert.lengths.push_back(count_from(s[i], sub("S", i)));
        } else {
            cert.words.push_back(word_from(s[i], sub("S", i)));
        }
    }
    const Json& wits = field(j, "witnesses", "");
    for (std::size_t i = 0; i < array_at(wits, "witnesses").size(); ++i) {
        std::string w = sub("witnesses", i);
        cert.witnesses.push_back({count_from(field(wits[i], "pair", w), sub(w, "pair")),
                                  word_from(field(wits[i], "word", w), sub(w, "word")),
                                  interval_from<T>(field(wits[i], "source", w), sub(w, "source"))});
    }
    cert.exhausted = bool_from(field(j, "exhausted", ""), "exhausted");
    return {std::move(sys), std::move(cert)};
}

template <Scalar T>
Json spread_body_json(const SpreadCertificate<T>& cert)
{
    Json rows = Json::array();
    for (const auto& r : cert.rows) {
        Json row{{"alpha", r.alpha}};
        if (cert.kind == MixingKind::type2) {
            row["word"] = word_json(r.words.front());
        } else {
            Json words = Json::array();
            for (const auto& w : r.words) {
                words.push_back(word_json(w));
            }
            row["words"] = words;
        }
        rows.push_back(row);
    }
    return Json{{"kind", kind_name(cert.kind)},
                {"eps", scalar_json(cert.eps)},
                {"delta", scalar_json(cert.delta)},
                {"centers", scalars_json(cert.centers)},
                {"net", scalars_json(cert.net.centers)},
                {"net_radius", scalar_json(cert.net.radius)},
                {"rows", rows}};
}

template <Scalar T>
SpreadCertificate<T> spread_body_from(const Json& j, const std::string& where)
{
    SpreadCertificate<T> cert;
    cert.kind = kind_from(field(j, "kind", where), sub(where, "kind"));
    cert.eps = scalar_from<T>(field(j, "eps", where), sub(where, "eps"));
    cert.delta = scalar_from<T>(field(j, "delta", where), sub(where, "delta"));
    cert.centers = scalars_from<T>(field(j, "centers", where), sub(where, "centers"));
    cert.net.centers = scalars_from<T>(field(j, "net", where), sub(where, "net"));
    cert.net.radius = scalar_from<T>(field(j, "net_radius", where), sub(where, "net_radius"));
    const Json& rows = field(j, "rows", where);
    std::string rw = sub(where, "rows");
    for (std::size_t i = 0; i < array_at(rows, rw).size(); ++i) {
        std::string w = sub(rw, i);
        SpreadRow<T> row;
        row.alpha = counts_from(field(rows[i], "alpha", w), sub(w, "alpha"));
        if (cert.kind == MixingKind::type2) {
            Word word = word_from(field(rows[i], "word", w), sub(w, "word"));
            row.words.assign(cert.centers.size(), word);
        } else {
            const Json& words = field(rows[i], "words", w);
            for (std::size_t k = 0; k < array_at(words, sub(w, "words")).size(); ++k) {
                row.words.push_back(word_from(words[k], sub(sub(w, "words"), k)));
            }
        }
        cert.rows.push_back(std::move(row));
    }
    return cert;
}

template <Scalar T>
Json spread_json(const SwitchedSystem<T>& sys, const SpreadCertificate<T>& cert)
{
    Json out{{"certificate", "spread"}, {"mode", mode_name<T>()}};
    out.update(spread_body_json(cert));
    out["system"] = system_json(sys);
    return out;
}

template <Scalar T>
std::pair<SwitchedSystem<T>, SpreadCertificate<T>> spread_from(const Json& j)
{
    check_mode<T>(j);
    auto sys = system_from<T>(field(j, "system", ""), "system");
    return {std::move(sys), spread_body_from<T>(j, "")};
}

template <Scalar T>
Json chain_json(const SwitchedSystem<T>& sys, const SpreadChain<T>& chain)
{
    Json stages = Json::array();
    for (const auto& s : chain.stages) {
        stages.push_back(spread_body_json(s));
    }
    return Json{{"certificate", "spread-chain"},
                {"mode", mode_name<T>()},
                {"stages", stages},
                {"system", system_json(sys)}};
}

template <Scalar T>
std::pair<SwitchedSystem<T>, SpreadChain<T>> chain_from(const Json& j)
{
    check_mode<T>(j);
    auto sys = system_from<T>(field(j, "system", ""), "system");
    SpreadChain<T> chain;
    const Json& stages = field(j, "stages", "");
    for (std::size_t i = 0; i < array_at(stages, "stages").size(); ++i) {
        chain.stages.push_back(spread_body_from<T>(stages[i], sub("stages", i)));
    }
    return {std::move(sys), std::move(chain)};
}

template <Scalar T>
Json xiong_json(const SwitchedSystem<T>& sys, const XiongWitness<T>& wit)
{
    Json words = Json::array();
    for (const auto& stage : wit.words) {
        Json row = Json::array();
        for (const auto& w : stage) {
            row.push_back(word_json(w));
        }
        words.push_back(row);
    }
    return Json{{"certificate", "xiong"},
                {"mode", mode_name<T>()},
                {"kind", kind_name(wit.kind)},
                {"points", scalars_json(wit.points)},
                {"targets", scalars_json(wit.targets)},
                {"tolerances", scalars_json(wit.tolerances)},
                {"lengths", wit.lengths},
                {"words", words},
                {"errors", scalars_json(wit.errors)},
                {"complete", wit.complete},
                {"system", system_json(sys)}};
}

template <Scalar T>
std::pair<SwitchedSystem<T>, XiongWitness<T>> xiong_from(const Json& j)
{
    check_mode<T>(j);
    auto sys = system_from<T>(field(j, "system", ""), "system");
    XiongWitness<T> wit;
    wit.kind = kind_from(field(j, "kind", ""), "kind");
    wit.points = scalars_from<T>(field(j, "points", ""), "points");
    wit.targets = scalars_from<T>(field(j, "targets", ""), "targets");
    wit.tolerances = scalars_from<T>(field(j, "tolerances", ""), "tolerances");
    wit.lengths = counts_from(field(j, "lengths", ""), "lengths");
    const Json& words = field(j, "words", "");
    for (std::size_t i = 0; i < array_at(words, "words").size(); ++i) {
        std::vector<Word> row;
        for (std::size_t k = 0; k < array_at(words[i], sub("words", i)).size(); ++k) {
            row.push_back(word_from(words[i][k], sub(sub("words", i), k)));
        }
        wit.words.push_back(std::move(row));
    }
    wit.errors = scalars_from<T>(field(j, "errors", ""), "errors");
    wit.complete = bool_from(field(j, "complete", ""), "complete");
    return {std::move(sys), std::move(wit)};
}

template <Scalar T>
Json hitting_json(const HittingReport<T>& r)
{
    Json wits = Json::array();
    for (const auto& w : r.type2) {
        Json e{{"word", word_json(w.word)}};
        if (w.kind == WitnessKind::set) {
            e["source"] = interval_json(w.source);
        } else {
            e["point"] = scalar_json(w.point);
        }
        wits.push_back(e);
    }
    return Json{{"horizon", r.horizon}, {"type1", r.type1}, {"type2", wits}, {"exhausted", r.exhausted},
                {"nodes", r.nodes}};
}

template <Scalar T>
Json envelope_json(const DistanceEnvelope<T>& env)
{
    Json rows = Json::array();
    for (const auto& r : env.rows) {
        Json row{{"length", r.length}, {"d_min", scalar_json(r.d_min)}, {"d_max", scalar_json(r.d_max)}};
        if (env.kind == MixingKind::type2) {
            row["word_min"] = word_json(r.min_x);
            row["word_max"] = word_json(r.max_x);
        } else {
            row["word_min"] = Json::array({word_json(r.min_x), word_json(r.min_y)});
            row["word_max"] = Json::array({word_json(r.max_x), word_json(r.max_y)});
        }
        rows.push_back(row);
    }
    return Json{{"kind", kind_name(env.kind)},
                {"x", scalar_json(env.x)},
                {"y", scalar_json(env.y)},
                {"rows", rows},
                {"exhausted", env.exhausted},
                {"nodes", env.nodes}};
}

template <Scalar T>
Json verdict_json(const ScrambledVerdict<T>& v)
{
    return Json{{"verdict", verdict_name(v.verdict)},
                {"proximality", scalar_json(v.proximality)},
                {"divergence", scalar_json(v.divergence)},
                {"eps_prox", scalar_json(v.eps_prox)},
                {"eps_div", scalar_json(v.eps_div)},
                {"k", v.k},
                {"proximal_lengths", v.proximal_lengths},
                {"divergent_lengths", v.divergent_lengths}};
}

bool document_is_float(const Json& j)
{
    if (!j.is_object() || !j.contains("mode")) {
        return false;
    }
    const Json& m = j["mode"];
    if (m == "float") {
        return true;
    }
    if (m == "rational") {
        return false;
    }
    bad("mode", "expected \"rational\" or \"float\"");
}

namespace {

template <Scalar T>
bool verify_typed(const Json& j, const std::string& kind, unsigned threads)
{
    if (kind == "wm") {
        auto [sys, cert] = wm_from<T>(j);
        return verify_certificate(sys, cert);
    }
    if (kind == "spread") {
        auto [sys, cert] = spread_from<T>(j);
        return verify_spread(sys, cert, threads);
    }
    if (kind == "spread-chain") {
        auto [sys, chain] = chain_from<T>(j);
        for (std::size_t i = 0; i < chain.stages.size(); ++i) {
            if (!verify_spread(sys, chain.stages[i], threads)) {
                return false;
            }
            if (i == 0) {
                continue;
            }
            for (const auto& row : chain.stages[i].rows) {
                if (row.words.front().size() <= chain.stages[i - 1].max_length()) {
                    return false;
                }
            }
        }
        return !chain.stages.empty();
    }
    if (kind == "xiong") {
        auto [sys, wit] = xiong_from<T>(j);
        return verify_xiong(sys, wit);
    }
    bad("certificate", "unknown certificate kind \"" + kind + "\"");
}

} // namespace

DocumentCheck verify_document(const Json& j, unsigned threads)
{
    const Json& c = field(j, "certificate", "");
    if (!c.is_string()) {
        bad("certificate", "expected a string");
    }
    DocumentCheck out;
    out.certificate = c.get<std::string>();
    out.valid = document_is_float(j) ? verify_typed<double>(j, out.certificate, threads)
                                     : verify_typed<Rational>(j, out.certificate, threads);
    return out;
}

Json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidDocument(source + ": " + e.what());
    }
}

#define SWMIX_INSTANTIATE(T)                                                                                         \
    template Json scalar_json(const T&);                                                                             \
    template T scalar_from(const Json&, const std::string&);                                                         \
    template Json interval_json(const Interval<T>&);                                                                 \
    template Interval<T> interval_from(const Json&, const std::string&);                                             \
    template Json set_json(const IntervalSet<T>&);                                                                   \
    template IntervalSet<T> set_from(const Json&, const std::string&);                                               \
    template Json compact_json(const CompactRep<T>&);                                                                \
    template CompactRep<T> compact_from(const Json&, const std::string&);                                            \
    template Json system_json(const SwitchedSystem<T>&);                                                             \
    template SwitchedSystem<T> system_from(const Json&, const std::string&);                                         \
    template Json wm_json(const SwitchedSystem<T>&, const WMCertificate<T>&);                                        \
    template std::pair<SwitchedSystem<T>, WMCertificate<T>> wm_from(const Json&);                                    \
    template Json spread_body_json(const SpreadCertificate<T>&);                                                     \
    template SpreadCertificate<T> spread_body_from(const Json&, const std::string&);                                 \
    template Json spread_json(const SwitchedSystem<T>&, const SpreadCertificate<T>&);                                \
    template std::pair<SwitchedSystem<T>, SpreadCertificate<T>> spread_from(const Json&);                            \
    template Json chain_json(const SwitchedSystem<T>&, const SpreadChain<T>&);                                       \
    template std::pair<SwitchedSystem<T>, SpreadChain<T>> chain_from(const Json&);                                   \
    template Json xiong_json(const SwitchedSystem<T>&, const XiongWitness<T>&);                                      \
    template std::pair<SwitchedSystem<T>, XiongWitness<T>> xiong_from(const Json&);                                  \
    template Json hitting_json(const HittingReport<T>&);                                                             \
    template Json envelope_json(const DistanceEnvelope<T>&);                                                         \
    template Json verdict_json(const ScrambledVerdict<T>&);

SWMIX_INSTANTIATE(Rational)
SWMIX_INSTANTIATE(double)

#undef SWMIX_INSTANTIATE

} // namespace swmix
