#include "app.hpp"

#include "swmix/demo.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace swmix::app {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what)
{
    throw InvalidDocument(where + ": " + what);
}

// Typed access to one JSON object with unknown-key rejection.
class Params {
public:
    Params(const Json& j, std::string where) : j_(j), where_(std::move(where))
    {
        if (!j_.is_null() && !j_.is_object()) {
            bad(where_, "expected an object");
        }
    }

    void allow(std::initializer_list<const char*> keys) const
    {
        if (j_.is_null()) {
            return;
        }
        std::set<std::string> known(keys.begin(), keys.end());
        for (const auto& [key, value] : j_.items()) {
            if (!known.count(key)) {
                bad(where_, "unknown field \"" + key + "\"");
            }
        }
    }

    bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

    const Json& req(const char* key) const
    {
        if (!has(key)) {
            bad(where_, std::string("missing field \"") + key + "\"");
        }
        return j_[key];
    }

    std::string at(const char* key) const { return where_ + "." + key; }

    std::size_t count(const char* key, std::size_t fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        const Json& v = j_[key];
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            bad(at(key), "expected a non-negative integer");
        }
        return v.get<std::size_t>();
    }

    bool flag(const char* key, bool fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        if (!j_[key].is_boolean()) {
            bad(at(key), "expected true or false");
        }
        return j_[key].get<bool>();
    }

    template <Scalar T>
    T scalar(const char* key) const
    {
        return scalar_from<T>(req(key), at(key));
    }

    template <Scalar T>
    std::vector<T> scalars(const char* key) const
    {
        const Json& v = req(key);
        if (!v.is_array()) {
            bad(at(key), "expected an array");
        }
        std::vector<T> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(scalar_from<T>(v[i], at(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    template <Scalar T>
    IntervalSet<T> set(const char* key) const
    {
        return set_from<T>(req(key), at(key));
    }

    template <Scalar T>
    std::vector<IntervalSet<T>> sets(const char* key) const
    {
        const Json& v = req(key);
        if (!v.is_array()) {
            bad(at(key), "expected an array");
        }
        std::vector<IntervalSet<T>> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(set_from<T>(v[i], at(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    MixingKind kind(MixingKind fallback) const { return has("kind") ? kind_from(j_["kind"], at("kind")) : fallback; }

    const Json& raw() const { return j_; }

private:
    const Json& j_;
    std::string where_;
};

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InvalidArgument("cannot write " + path.string());
    }
    f << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json error_object(const std::string& code, const std::string& message)
{
    return Json{{"status", "error"}, {"error", Json{{"code", code}, {"message", message}}}};
}

// Collects the artifacts written by one task.
struct Sink {
    fs::path dir;
    Json files = Json::array();

    void json(const std::string& name, const Json& j)
    {
        write_json(dir / name, j);
        files.push_back(name);
    }
    void text(const std::string& name, const std::string& t)
    {
        write_text(dir / name, t);
        files.push_back(name);
    }
};

struct TaskResult {
    Json result;
    bool partial = false;
    bool failed = false;
};

template <Scalar T>
SearchOptions<T> search_options(const Params& p, unsigned threads)
{
    SearchOptions<T> o;
    o.prune = p.flag("prune", true);
    if (p.has("kill_box")) {
        o.kill_box = interval_from<T>(p.req("kill_box"), p.at("kill_box"));
    }
    if (p.has("min_overlap")) {
        o.min_overlap = p.scalar<T>("min_overlap");
    }
    o.threads = threads;
    return o;
}

template <Scalar T>
TaskResult task_prelang(const SwitchedSystem<T>& sys, const Params& p, Sink& sink)
{
    p.allow({"max_length", "list", "list_limit"});
    std::size_t n_max = p.count("max_length", 10);
    bool list = p.flag("list", false);
    std::size_t limit = p.count("list_limit", 10000);
    Json counts = Json::array();
    std::string csv = "length,count\n";
    std::string words_csv = "length,word\n";
    std::size_t listed = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        BigInt c = count_words(sys.automaton(), n);
        counts.push_back(Json{{"length", n}, {"count", c.get_str()}});
        csv += std::to_string(n) + "," + c.get_str() + "\n";
        if (list) {
            auto stream = enumerate_words(sys.automaton(), n);
            while (listed < limit) {
                auto w = stream.next();
                if (!w) {
                    break;
                }
                words_csv += std::to_string(n) + "," + w->str() + "\n";
                ++listed;
            }
        }
    }
    sink.text("prelang.csv", csv);
    if (list) {
        sink.text("words.csv", words_csv);
    }
    return {Json{{"counts", counts}, {"listed", listed}, {"list_truncated", list && listed >= limit}}, false, false};
}

template <Scalar T>
std::vector<PartitionCell<T>> partition_from(const Json& j, const std::string& where)
{
    if (j == "tent") {
        return tent_partition<T>();
    }
    if (!j.is_array()) {
        bad(where, "expected \"tent\" or a list of cells");
    }
    std::vector<PartitionCell<T>> cells;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Params c(j[i], where + "[" + std::to_string(i) + "]");
        c.allow({"lo", "hi", "lo_closed", "hi_closed", "symbol"});
        cells.push_back({c.scalar<T>("lo"), c.scalar<T>("hi"), c.flag("lo_closed", true), c.flag("hi_closed", true),
                         static_cast<Symbol>(c.count("symbol", 0))});
    }
    return cells;
}

template <Scalar T>
TaskResult task_orbit(const SwitchedSystem<T>& sys, const Params& p, Sink& sink)
{
    p.allow({"x", "word", "partition", "length", "set"});
    T x = p.scalar<T>("x");
    Word w;
    if (p.has("word")) {
        w = word_from(p.req("word"), p.at("word"));
    } else {
        w = itinerary_word(sys, partition_from<T>(p.req("partition"), p.at("partition")), x, p.count("length", 10));
    }
    if (!accepts_prefix(sys.automaton(), w)) {
        bad(p.at("word"), "word " + w.str() + " is not admissible");
    }
    Json points = Json::array({scalar_json(x)});
    std::string csv = "step,symbol,x\n0,," + NumTraits<T>::str(x) + "\n";
    T cur = x;
    for (std::size_t i = 0; i < w.size(); ++i) {
        cur = eval_point(sys, Word{w[i]}, cur);
        points.push_back(scalar_json(cur));
        csv += std::to_string(i + 1) + "," + std::to_string(w[i]) + "," + NumTraits<T>::str(cur) + "\n";
    }
    Json result{{"word", word_json(w)}, {"points", points}};
    if (p.has("set")) {
        auto set = p.set<T>("set");
        Json images = Json::array({set_json(set)});
        for (std::size_t k = 1; k <= w.size(); ++k) {
            images.push_back(set_json(eval_interval(sys, w.prefix(k), set)));
        }
        result["images"] = images;
    }
    sink.text("orbit.csv", csv);
    return {result, false, false};
}

template <Scalar T>
TaskResult task_hitting(const SwitchedSystem<T>& sys, const Params& p, const SearchBudget& budget, unsigned threads,
                        Sink& sink)
{
    p.allow({"U", "V", "prune", "kill_box", "min_overlap"});
    auto report = hitting_sets(sys, p.set<T>("U"), p.set<T>("V"), budget, search_options<T>(p, threads));
    std::string csv = "length,word,source_lo,source_hi\n";
    for (const auto& w : report.type2) {
        csv += std::to_string(w.word.size()) + "," + w.word.str() + "," + NumTraits<T>::str(w.source.lo) + "," +
               NumTraits<T>::str(w.source.hi) + "\n";
    }
    sink.text("hitting.csv", csv);
    return {hitting_json(report), !report.exhausted, false};
}

template <Scalar T>
TaskResult task_wm(const SwitchedSystem<T>& sys, const Params& p, const SearchBudget& budget, unsigned threads,
                   Sink& sink)
{
    p.allow({"K", "Q", "pairs", "kind", "prune", "kill_box", "min_overlap"});
    std::vector<OpenPair<T>> pairs;
    const Json& pj = p.req("pairs");
    if (!pj.is_array()) {
        bad(p.at("pairs"), "expected an array");
    }
    for (std::size_t i = 0; i < pj.size(); ++i) {
        Params pair(pj[i], p.at("pairs") + "[" + std::to_string(i) + "]");
        pair.allow({"U", "V"});
        pairs.push_back({pair.set<T>("U"), pair.set<T>("V")});
    }
    auto cert = wm_certificate(sys, p.set<T>("K"), p.set<T>("Q"), pairs, p.kind(MixingKind::type1), budget,
                               search_options<T>(p, threads));
    bool ok = verify_certificate(sys, cert);
    Json doc = wm_json(sys, cert);
    sink.json("certificate.json", doc);
    return {Json{{"kind", doc["kind"]}, {"S", doc["S"]}, {"exhausted", cert.exhausted}, {"verified", ok}},
            !cert.exhausted, !ok};
}

template <Scalar T>
TaskResult task_scrambled(const SwitchedSystem<T>& sys, const Params& p, const SearchBudget& budget, Sink& sink)
{
    p.allow({"x", "y", "kind", "horizon", "eps_prox", "eps_div", "k", "prune"});
    auto env = distance_envelope(sys, p.scalar<T>("x"), p.scalar<T>("y"), p.kind(MixingKind::type2),
                                 p.count("horizon", budget.horizon), budget, p.flag("prune", true));
    sink.text("envelope.csv", envelope_csv(env));
    Json result{{"envelope", envelope_json(env)}};
    if (p.has("eps_prox") || p.has("eps_div")) {
        auto v = scrambled_verdict(env, p.scalar<T>("eps_prox"), p.scalar<T>("eps_div"), p.count("k", 3));
        result["verdict"] = verdict_json(v);
    }
    return {result, !env.exhausted, false};
}

template <Scalar T>
TaskResult task_xiong(const SwitchedSystem<T>& sys, const Params& p, const SearchBudget& budget, unsigned threads,
                      Sink& sink)
{
    p.allow({"points", "targets", "tolerances", "kind", "Q", "prune", "kill_box", "min_overlap"});
    IntervalSet<T> q = p.has("Q") ? p.set<T>("Q") : IntervalSet<T>{};
    auto wit = xiong_witness(sys, p.scalars<T>("points"), p.scalars<T>("targets"), p.kind(MixingKind::type2),
                             p.scalars<T>("tolerances"), budget, q, search_options<T>(p, threads));
    bool ok = verify_xiong(sys, wit);
    sink.json("certificate.json", xiong_json(sys, wit));
    Json errs = Json::array();
    for (const auto& e : wit.errors) {
        errs.push_back(scalar_json(e));
    }
    return {Json{{"complete", wit.complete}, {"lengths", wit.lengths}, {"errors", errs}, {"verified", ok}},
            !wit.complete, !ok};
}

template <Scalar T>
std::string spread_csv(const SpreadCertificate<T>& cert)
{
    std::string csv = "row,alpha,words\n";
    for (std::size_t i = 0; i < cert.rows.size(); ++i) {
        const auto& r = cert.rows[i];
        std::string alpha, words;
        for (std::size_t k = 0; k < r.alpha.size(); ++k) {
            alpha += (k ? " " : "") + std::to_string(r.alpha[k]);
            words += (k ? "|" : "") + r.words[k].str();
        }
        csv += std::to_string(i) + "," + alpha + "," + words + "\n";
    }
    return csv;
}

template <Scalar T>
TaskResult task_spread(const SwitchedSystem<T>& sys, const Params& p, const SearchBudget& budget, unsigned threads,
                       Sink& sink)
{
    p.allow({"seeds", "K", "Q", "eps", "net_radius", "kind", "chain", "points", "h", "min_length", "max_rows",
             "prune", "kill_box", "min_overlap"});
    auto seeds = p.sets<T>("seeds");
    auto k = p.set<T>("K");
    auto q = compact_from<T>(p.req("Q"), p.at("Q"));
    auto kind = p.kind(MixingKind::type1);
    auto search = search_options<T>(p, threads);
    if (p.has("chain")) {
        auto eps = p.scalars<T>("chain");
        auto chain = build_chain(sys, seeds, k, q, eps, kind, budget, search);
        bool ok = true;
        for (const auto& s : chain.stages) {
            ok = ok && verify_spread(sys, s, threads);
        }
        sink.json("chain.json", chain_json(sys, chain));
        Json stages = Json::array();
        for (std::size_t i = 0; i < chain.stages.size(); ++i) {
            const auto& s = chain.stages[i];
            stages.push_back(Json{{"eps", scalar_json(s.eps)},
                                  {"delta", scalar_json(s.delta)},
                                  {"rows", s.rows.size()},
                                  {"max_length", s.max_length()}});
            sink.text("stage" + std::to_string(i + 1) + ".csv", spread_csv(s));
        }
        Json result{{"stages", stages}, {"verified", ok}};
        if (p.has("points")) {
            auto wit = xiong_from_chain(sys, chain, p.scalars<T>("points"), p.scalars<T>("h"));
            bool xok = verify_xiong(sys, wit);
            ok = ok && xok;
            sink.json("xiong.json", xiong_json(sys, wit));
            Json errs = Json::array(), tols = Json::array();
            for (std::size_t i = 0; i < wit.errors.size(); ++i) {
                errs.push_back(scalar_json(wit.errors[i]));
                tols.push_back(scalar_json(wit.tolerances[i]));
            }
            result["xiong"] = Json{{"lengths", wit.lengths}, {"errors", errs}, {"tolerances", tols}, {"verified", xok}};
        }
        return {result, false, !ok};
    }
    T eps = p.scalar<T>("eps");
    T radius = p.has("net_radius") ? p.scalar<T>("net_radius") : T(eps * 3 / 4);
    SpreadOptions<T> opts;
    opts.min_length = p.count("min_length", 0);
    opts.max_rows = p.count("max_rows", opts.max_rows);
    opts.search = search;
    auto cert = certify_spread(sys, seeds, k, eps, build_qnet(q, radius), kind, budget, opts);
    bool ok = verify_spread(sys, cert, threads);
    sink.json("certificate.json", spread_json(sys, cert));
    sink.text("spread.csv", spread_csv(cert));
    return {Json{{"rows", cert.rows.size()},
                 {"delta", scalar_json(cert.delta)},
                 {"max_length", cert.max_length()},
                 {"verified", ok}},
            false, !ok};
}

Json demo_json(const TentDemoReport& r)
{
    Json entries = Json::array();
    for (const auto& e : r.wm.entries) {
        Json pairs = Json::array();
        for (const auto& p : e.pairs) {
            pairs.push_back(Json{{"U", set_json(p.u)}, {"V", set_json(p.v)}});
        }
        entries.push_back(Json{{"pairs", pairs}, {"S", e.cert.lengths}, {"verified", e.verified}});
    }
    return Json{{"passed", r.passed()},
                {"itinerary",
                 Json{{"samples", r.itinerary.samples},
                      {"max_m", r.itinerary.max_m},
                      {"checks", r.itinerary.checks},
                      {"mismatches", r.itinerary.mismatches}}},
                {"wm_batch",
                 Json{{"horizon", r.wm.horizon},
                      {"trials", r.wm.entries.size()},
                      {"found", r.wm.found},
                      {"verified", r.wm.verified},
                      {"entries", entries}}},
                {"slope_law",
                 Json{{"pairs", r.slope.pairs},
                      {"horizon", r.slope.horizon},
                      {"violations", r.slope.violations},
                      {"scrambled", r.slope.scrambled}}}};
}

std::string demo_csv(const TentDemoReport& r)
{
    std::string csv = "trial,U1,V1,U2,V2,first_length,verified\n";
    auto iv = [](const IntervalSet<Rational>& s) { return s.lo().get_str() + " " + s.hi().get_str(); };
    for (std::size_t i = 0; i < r.wm.entries.size(); ++i) {
        const auto& e = r.wm.entries[i];
        csv += std::to_string(i) + "," + iv(e.pairs[0].u) + "," + iv(e.pairs[0].v) + "," + iv(e.pairs[1].u) + "," +
               iv(e.pairs[1].v) + "," + (e.cert.lengths.empty() ? "" : std::to_string(e.cert.lengths.front())) +
               "," + (e.verified ? "1" : "0") + "\n";
    }
    return csv;
}

TaskResult task_tent_demo(const Params& p, std::uint64_t seed, unsigned threads, Sink& sink)
{
    p.allow({"samples", "max_m", "batch", "horizon", "slope_pairs", "slope_horizon"});
    TentDemoOptions o;
    o.samples = p.count("samples", o.samples);
    o.max_m = p.count("max_m", o.max_m);
    o.batch = p.count("batch", o.batch);
    o.horizon = p.count("horizon", o.horizon);
    o.slope_pairs = p.count("slope_pairs", o.slope_pairs);
    o.slope_horizon = p.count("slope_horizon", o.slope_horizon);
    o.seed = seed;
    o.threads = threads;
    auto r = tent_demo(o);
    sink.text("wm_batch.csv", demo_csv(r));
    return {demo_json(r), false, !r.passed()};
}

template <Scalar T>
SwitchedSystem<T> scenario_system(const Params& s)
{
    const Json& sj = s.req("system");
    if (!s.has("language")) {
        return system_from<T>(sj, "system");
    }
    LanguageSpec lang = language_from(s.req("language"), "language");
    if (sj == "tent") {
        try {
            return tent_system<T>(lang);
        } catch (const Error& e) {
            bad("language", e.what());
        }
    }
    Json copy = sj;
    copy["language"] = s.req("language");
    return system_from<T>(copy, "system");
}

template <Scalar T>
TaskResult dispatch(const std::string& task, const Params& s, const Params& p, const SearchBudget& budget,
                    unsigned threads, Sink& sink)
{
    auto sys = scenario_system<T>(s);
    if (task == "prelang") {
        return task_prelang(sys, p, sink);
    }
    if (task == "orbit") {
        return task_orbit(sys, p, sink);
    }
    if (task == "hitting") {
        return task_hitting(sys, p, budget, threads, sink);
    }
    if (task == "wm-cert") {
        return task_wm(sys, p, budget, threads, sink);
    }
    if (task == "scrambled") {
        return task_scrambled(sys, p, budget, sink);
    }
    if (task == "xiong") {
        return task_xiong(sys, p, budget, threads, sink);
    }
    return task_spread(sys, p, budget, threads, sink);
}

const std::set<std::string> tasks{"prelang", "orbit", "hitting", "wm-cert", "scrambled", "xiong", "spread", "tent-demo"};

Outcome finish(Outcome o, const fs::path& out)
{
    std::error_code ec;
    fs::create_directories(out, ec);
    if (!ec) {
        std::ofstream f(out / "report.json", std::ios::binary);
        f << o.report.dump(2) << "\n";
    }
    return o;
}

} // namespace

unsigned thread_cap()
{
    if (const char* env = std::getenv("SWMIX_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Outcome run_scenario(const Json& scenario, const fs::path& out)
{
    Outcome o;
    Json report{{"status", "ok"}};
    try {
        Params s(scenario, "scenario");
        if (!scenario.is_object()) {
            bad("scenario", "expected an object");
        }
        s.allow({"task", "mode", "seed", "system", "language", "budget", "params", "threads", "out"});
        const Json& task_j = s.req("task");
        if (!task_j.is_string() || !tasks.count(task_j.get<std::string>())) {
            bad("scenario.task", "expected one of prelang, orbit, hitting, wm-cert, scrambled, xiong, spread, tent-demo");
        }
        std::string task = task_j.get<std::string>();
        bool is_float = document_is_float(scenario);
        std::uint64_t seed = s.count("seed", 1);
        unsigned threads = static_cast<unsigned>(std::min<std::size_t>(s.count("threads", 1), thread_cap()));
        threads = std::max(1u, threads);
        SearchBudget budget = budget_from(s.has("budget") ? s.req("budget") : Json(), "scenario.budget");
        const Json params = s.has("params") ? s.req("params") : Json();
        Params p(params, "scenario.params");

        report["task"] = task;
        report["mode"] = is_float ? "float" : "rational";
        report["seed"] = seed;
        report["budget"] = budget_json(budget);

        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) {
            throw InvalidArgument("cannot create output directory " + out.string());
        }
        Sink sink{out, Json::array()};
        TaskResult r;
        if (task == "tent-demo") {
            r = task_tent_demo(p, seed, threads, sink);
        } else if (is_float) {
            r = dispatch<double>(task, s, p, budget, threads, sink);
        } else {
            r = dispatch<Rational>(task, s, p, budget, threads, sink);
        }
        report["status"] = r.failed ? "failed" : r.partial ? "partial" : "ok";
        report["result"] = r.result;
        report["artifacts"] = sink.files;
        o.code = r.failed ? check_failed : r.partial ? Exit::budget : ok;
    } catch (const BudgetExceeded& e) {
        report["status"] = "budget_exceeded";
        report["error"] = Json{{"code", e.code()}, {"message", e.what()}};
        o.code = Exit::budget;
    } catch (const Error& e) {
        report = error_object(e.code(), e.what());
        o.code = invalid;
    } catch (const std::exception& e) {
        report = error_object("InvalidArgument", e.what());
        o.code = invalid;
    }
    o.report = report;
    return finish(std::move(o), out);
}

Outcome run_scenario_file(const fs::path& file, const std::optional<fs::path>& out)
{
    fs::path dir = out.value_or("swmix-out");
    Json doc;
    try {
        std::ifstream f(file, std::ios::binary);
        if (!f) {
            throw InvalidDocument("cannot read " + file.string());
        }
        std::stringstream ss;
        ss << f.rdbuf();
        doc = parse_json_text(ss.str(), file.string());
    } catch (const Error& e) {
        return finish({invalid, error_object(e.code(), e.what())}, dir);
    }
    if (!out && doc.is_object() && doc.contains("out") && doc["out"].is_string()) {
        dir = doc["out"].get<std::string>();
    }
    return run_scenario(doc, dir);
}

Outcome run_tent_demo(const Json& params, std::uint64_t seed, const fs::path& out)
{
    return run_scenario(Json{{"task", "tent-demo"}, {"seed", seed}, {"params", params}}, out);
}

Outcome verify_file(const fs::path& file)
{
    try {
        std::ifstream f(file, std::ios::binary);
        if (!f) {
            throw InvalidDocument("cannot read " + file.string());
        }
        std::stringstream ss;
        ss << f.rdbuf();
        auto check = verify_document(parse_json_text(ss.str(), file.string()), thread_cap());
        return {check.valid ? ok : invalid,
                Json{{"status", check.valid ? "valid" : "invalid"}, {"certificate", check.certificate}}};
    } catch (const Error& e) {
        return {invalid, error_object(e.code(), e.what())};
    } catch (const std::exception& e) {
        return {invalid, error_object("InvalidArgument", e.what())};
    }
}

int main(int argc, char** argv)
{
    CLI::App cli{"swmix: hitting times, weak mixing and chaos certificates for switched piecewise-affine systems"};
    cli.require_subcommand(1);

    std::string scenario_path, cert_path, out_dir;
    auto* run = cli.add_subcommand("run", "Run one scenario file");
    run->add_option("scenario", scenario_path, "Scenario JSON")->required();
    run->add_option("--out", out_dir, "Output directory");

    std::size_t samples = 1000, horizon = 25, batch = 50;
    std::uint64_t seed = 1;
    auto* demo = cli.add_subcommand("tent-demo", "Built-in tent-map scenario");
    demo->add_option("--samples", samples, "Itinerary samples");
    demo->add_option("--horizon", horizon, "Weak-mixing search horizon");
    demo->add_option("--batch", batch, "Weak-mixing quadruples");
    demo->add_option("--seed", seed, "Random seed");
    demo->add_option("--out", out_dir, "Output directory");

    auto* verify = cli.add_subcommand("verify", "Re-verify a certificate file");
    verify->add_option("certificate", cert_path, "Certificate JSON")->required();

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e) == 0 ? ok : invalid;
    }

    std::optional<fs::path> out;
    if (!out_dir.empty()) {
        out = out_dir;
    }
    Outcome o;
    if (*run) {
        o = run_scenario_file(scenario_path, out);
    } else if (*demo) {
        o = run_tent_demo(Json{{"samples", samples}, {"horizon", horizon}, {"batch", batch}}, seed,
                          out.value_or("swmix-out"));
    } else {
        o = verify_file(cert_path);
    }
    std::cout << o.report.dump() << "\n";
    return o.code;
}

} // namespace swmix::app
