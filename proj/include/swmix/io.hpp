// JSON encoding of systems, languages, sets and certificates.
//
// Rationals are written as "p/q" strings (plain "p" for integers) and floats
// as JSON numbers. Readers accept either form in both modes. Every decoder
// throws InvalidDocument with the path of the offending field.
#pragma once

#include "swmix/spread.hpp"

#include "json.hpp"

#include <string>
#include <utility>

namespace swmix {

using Json = nlohmann::ordered_json;

template <Scalar T>
Json scalar_json(const T& v);
template <Scalar T>
T scalar_from(const Json& j, const std::string& where);

Json word_json(const Word& w);
Word word_from(const Json& j, const std::string& where);

template <Scalar T>
Json interval_json(const Interval<T>& iv);
template <Scalar T>
Interval<T> interval_from(const Json& j, const std::string& where);

// [[lo,hi],...]; a bare [lo,hi] is also read as one interval.
template <Scalar T>
Json set_json(const IntervalSet<T>& s);
template <Scalar T>
IntervalSet<T> set_from(const Json& j, const std::string& where);

// Closed parts [[lo,hi],...]; bare scalars are points.
template <Scalar T>
Json compact_json(const CompactRep<T>& c);
template <Scalar T>
CompactRep<T> compact_from(const Json& j, const std::string& where);

Json language_json(const LanguageSpec& spec);
LanguageSpec language_from(const Json& j, const std::string& where);

// {"maps":[[{"domain":[lo,hi],"a":..,"b":..},...],...],"bounds":[lo,hi],"language":{...}}.
// A piece without "domain" is the map's global formula. A map may also be
// {"pieces":[...],"continuous":true}. The string "tent" names the built-in
// example.
template <Scalar T>
Json system_json(const SwitchedSystem<T>& sys);
template <Scalar T>
SwitchedSystem<T> system_from(const Json& j, const std::string& where);

const char* kind_name(MixingKind k);
MixingKind kind_from(const Json& j, const std::string& where);

SearchBudget budget_from(const Json& j, const std::string& where);
Json budget_json(const SearchBudget& b);

// Certificates embed the system and the numeric mode so they can be
// re-verified on their own.
template <Scalar T>
Json wm_json(const SwitchedSystem<T>& sys, const WMCertificate<T>& cert);
template <Scalar T>
std::pair<SwitchedSystem<T>, WMCertificate<T>> wm_from(const Json& j);

template <Scalar T>
Json spread_body_json(const SpreadCertificate<T>& cert);
template <Scalar T>
SpreadCertificate<T> spread_body_from(const Json& j, const std::string& where);
template <Scalar T>
Json spread_json(const SwitchedSystem<T>& sys, const SpreadCertificate<T>& cert);
template <Scalar T>
std::pair<SwitchedSystem<T>, SpreadCertificate<T>> spread_from(const Json& j);
template <Scalar T>
Json chain_json(const SwitchedSystem<T>& sys, const SpreadChain<T>& chain);
template <Scalar T>
std::pair<SwitchedSystem<T>, SpreadChain<T>> chain_from(const Json& j);

template <Scalar T>
Json xiong_json(const SwitchedSystem<T>& sys, const XiongWitness<T>& wit);
template <Scalar T>
std::pair<SwitchedSystem<T>, XiongWitness<T>> xiong_from(const Json& j);

template <Scalar T>
Json hitting_json(const HittingReport<T>& r);
template <Scalar T>
Json envelope_json(const DistanceEnvelope<T>& env);
template <Scalar T>
Json verdict_json(const ScrambledVerdict<T>& v);

// "rational" unless the document says "float".
bool document_is_float(const Json& j);

struct DocumentCheck {
    std::string certificate;
    bool valid = false;
};

// Loads any certificate document and runs the owning verifier.
DocumentCheck verify_document(const Json& j, unsigned threads = 1);

Json parse_json_text(const std::string& text, const std::string& source);

} // namespace swmix
