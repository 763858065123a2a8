#include "specseq_app/commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "specseq/bicomplex_ops.hpp"
#include "specseq/errors.hpp"
#include "specseq/filtered_ops.hpp"
#include "specseq/lattice.hpp"
#include "specseq/model_check.hpp"
#include "specseq/spectral.hpp"
#include "specseq/tot.hpp"
#include "specseq/witness.hpp"
#include "specseq_app/io.hpp"
#include "specseq_app/verify.hpp"

namespace specseq::app {

namespace {

/// Raised for command-line misuse detected after parsing.
class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::string field_text;
    std::string out_path;
    std::string input;
    int r = 1;
    std::string s_set;
    std::string window;
    std::uint64_t seed = 0;
    int cases = 50;
    int jobs = 1;
    std::string suite = "all";
    std::string replay;
    std::string predicate;
    std::string lattice_op;
    std::optional<std::string> lattice_first, lattice_second;
    bool r_given = false;
};

int parse_int(std::string_view text, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw UsageError(std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return v;
}

std::vector<int> split_ints(const std::string& text, char sep, const char* what) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t k = text.find(sep, start);
        if (k == std::string::npos) k = text.size();
        out.push_back(parse_int(std::string_view(text).substr(start, k - start), what));
        start = k + 1;
    }
    return out;
}

struct Input {
    Json json;
    InputKind kind;
    Field field;
};

Input load(const Options& o) {
    std::string text;
    if (o.input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        text = read_file(o.input);
    }
    // A blank file is the empty complex.
    const bool blank = std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
    Json j = blank ? Json::object() : parse_json(text);
    const InputKind kind = detect_kind(j);
    const std::optional<Field> declared = declared_field(j);
    Field field = Field::rationals();
    if (!o.field_text.empty()) {
        field = Field::parse(o.field_text);
        if (declared && *declared != field) {
            throw UsageError("--field " + field.name() + " conflicts with the input's field " + declared->name());
        }
    } else if (declared) {
        field = *declared;
    }
    return {std::move(j), kind, field};
}

[[noreturn]] void wrong_input(const char* command, const Input& in, const char* expected) {
    throw UsageError(std::string(command) + " expects " + expected + ", got a " + to_string(in.kind));
}

SSet parse_s_set(const Options& o, Flavor flavor) {
    if (o.s_set.empty()) throw UsageError("--s-set is required");
    const std::vector<int> xs = split_ints(o.s_set, ',', "--s-set");
    for (int x : xs) {
        if (x < 0) throw UsageError("--s-set entries must be naturals");
    }
    return SSet(std::set<int>(xs.begin(), xs.end()), flavor);
}

Json bidegree(Bidegree b) { return {{"p", b.p}, {"q", b.q}}; }

/// Bidegrees where E_{r+1}(f) is not an isomorphism.
template <class Map>
Json weq_witness(const Map& f, int r) {
    const PageTable src = page(f.source(), r + 1), tgt = page(f.target(), r + 1);
    const PageMap pm = page_map(f, src, tgt);
    std::set<Bidegree> all;
    for (const auto& [b, e] : src.entries) all.insert(b);
    for (const auto& [b, e] : tgt.entries) all.insert(b);
    Json bad = Json::array();
    for (Bidegree b : all) {
        const std::size_t sd = src.dim(b), td = tgt.dim(b);
        const std::size_t rank = pm.count(b) ? pm.at(b).rank() : 0;
        if (sd == td && rank == sd) continue;
        bad.push_back({{"p", b.p}, {"q", b.q}, {"source_dim", sd}, {"target_dim", td}, {"rank", rank}});
    }
    return {{"page", r + 1}, {"bidegrees", bad}};
}

/// A cycle of the target at the failing bidegree outside the image.
Json missing_cycle(const ChainMap& f, const FibrationFailure& fail) {
    const int n = fail.at.q - fail.at.p;
    const Subspace z = cycles(f.target(), fail.s, fail.at.p, n);
    const Subspace img = image(f.at(n), cycles(f.source(), fail.s, fail.at.p, n));
    for (std::size_t k = 0; k < z.dim(); ++k) {
        if (!img.contains(z.basis().col(k))) return to_json(z.basis().col(k).transpose())[0];
    }
    return nullptr;
}

Json missing_cycle(const BiMap& f, const FibrationFailure& fail) {
    const Subspace z = witness_cycles(f.target(), fail.s, fail.at.p, fail.at.q);
    const Subspace img = image(on_slots(f, fail.s, fail.at.p, fail.at.q),
                               witness_cycles(f.source(), fail.s, fail.at.p, fail.at.q));
    for (std::size_t k = 0; k < z.dim(); ++k) {
        if (!img.contains(z.basis().col(k))) return to_json(z.basis().col(k).transpose())[0];
    }
    return nullptr;
}

template <class Map>
std::pair<Json, bool> check_map(const Map& f, const Options& o, Flavor flavor) {
    Json v{{"predicate", o.predicate}, {"flavor", to_string(flavor)}};
    bool verdict = false;
    Json witness;
    auto fib_witness = [&](const FibrationFailure& fail) {
        return Json{{"s", fail.s}, {"bidegree", bidegree(fail.at)}, {"cycle", missing_cycle(f, fail)}};
    };
    if (o.predicate == "weq") {
        if (o.r < 0) throw UsageError("--r must be nonnegative");
        v["r"] = o.r;
        verdict = is_r_weq(f, o.r);
        if (!verdict) witness = weq_witness(f, o.r);
    } else if (o.predicate == "fib" || o.predicate == "acyclic-fib") {
        const SSet s = parse_s_set(o, flavor);
        v["s_set"] = std::vector<int>(s.elements().begin(), s.elements().end());
        if (auto fail = fibration_failure(f, s)) {
            witness = {{"fibration", fib_witness(*fail)}};
        } else if (o.predicate == "acyclic-fib" && !is_r_weq(f, s.r())) {
            witness = {{"weq", weq_witness(f, s.r())}};
        } else {
            verdict = true;
        }
    } else {
        throw UsageError("unknown predicate '" + o.predicate + "'");
    }
    v["verdict"] = verdict;
    if (!verdict) v["witness"] = witness;
    return {v, verdict};
}

std::pair<Json, int> cmd_pages(const Options& o) {
    const Input in = load(o);
    if (o.r < 0) throw UsageError("--r must be nonnegative");
    if (in.kind == InputKind::filtered) return {page_to_json(page(filtered_from_json(in.json, in.field), o.r), in.field, "filtered"), exit_pass};
    if (in.kind == InputKind::bicomplex) return {page_to_json(page(bicomplex_from_json(in.json, in.field), o.r), in.field, "bicomplex"), exit_pass};
    wrong_input("pages", in, "a complex");
}

std::pair<Json, int> cmd_check(const Options& o) {
    const Input in = load(o);
    std::pair<Json, bool> res;
    if (o.predicate == "effective-mono") {
        if (in.kind != InputKind::chain_map) wrong_input("check effective-mono", in, "a filtered map");
        const ChainMap f = chain_map_from_json(in.json, in.field);
        const bool verdict = is_effective_mono(f);
        Json v{{"predicate", o.predicate}, {"flavor", "filtered"}, {"verdict", verdict}};
        if (!verdict) v["witness"] = {{"injective", f.is_injective()}, {"strict", is_strict(f)}};
        res = {v, verdict};
    } else if (in.kind == InputKind::chain_map) {
        res = check_map(chain_map_from_json(in.json, in.field), o, Flavor::filtered);
    } else if (in.kind == InputKind::bimap) {
        res = check_map(bimap_from_json(in.json, in.field), o, Flavor::bicomplex);
    } else {
        wrong_input("check", in, "a map");
    }
    return {res.first, res.second ? exit_pass : exit_findings};
}

std::pair<Json, int> cmd_cone(const Options& o) {
    const Input in = load(o);
    if (o.r < 0) throw UsageError("--r must be nonnegative");
    if (in.kind == InputKind::chain_map) return {to_json(cone(chain_map_from_json(in.json, in.field), o.r).complex), exit_pass};
    if (in.kind == InputKind::bicomplex) return {to_json(cone(bicomplex_from_json(in.json, in.field), o.r)), exit_pass};
    wrong_input("cone", in, "a filtered map or a bicomplex");
}

std::pair<Json, int> cmd_tot(const Options& o) {
    const Input in = load(o);
    if (in.kind == InputKind::bicomplex) return {to_json(tot_pi(bicomplex_from_json(in.json, in.field))), exit_pass};
    if (in.kind == InputKind::bimap) return {to_json(tot_pi(bimap_from_json(in.json, in.field))), exit_pass};
    wrong_input("tot", in, "a bicomplex or a bicomplex map");
}

std::pair<Json, int> cmd_ladjoint(const Options& o) {
    const Input in = load(o);
    if (in.kind != InputKind::filtered) wrong_input("ladjoint", in, "a filtered complex");
    const FilteredComplex a = filtered_from_json(in.json, in.field);
    Window w;
    if (o.window.empty()) {
        const Range wr = a.weight_range().empty() ? Range{0, 0} : a.weight_range();
        w = {wr.lo - 2, wr.hi + 1, 1};
    } else {
        const std::vector<int> xs = split_ints(o.window, ':', "--window");
        if (xs.size() != 3) throw UsageError("--window is lo:hi:margin");
        w = {xs[0], xs[1], xs[2]};
    }
    return {to_json(l_adjoint(a, w)), exit_pass};
}

std::pair<Json, int> cmd_lattice(const Options& o) {
    std::vector<std::string> args;
    for (const auto& a : {o.lattice_first, o.lattice_second}) {
        if (a) args.push_back(*a);
    }
    auto need = [&](std::size_t k) {
        if (args.size() != k) throw UsageError("lattice " + o.lattice_op + " takes " + std::to_string(k) + " argument(s)");
    };
    Json j{{"op", o.lattice_op}};
    if (o.lattice_op == "join" || o.lattice_op == "meet" || o.lattice_op == "leq") {
        need(2);
        const LatticeElement a = element_from_text(args[0]), b = element_from_text(args[1]);
        j["args"] = {to_json(a), to_json(b)};
        if (o.lattice_op == "join") j["result"] = to_json(join(a, b));
        if (o.lattice_op == "meet") j["result"] = to_json(meet(a, b));
        if (o.lattice_op == "leq") j["result"] = {{"alpha", leq(a, b)}, {"generators", leq_by_generators(a, b)}};
    } else if (o.lattice_op == "alpha") {
        need(1);
        const LatticeElement a = element_from_text(args[0]);
        j["args"] = {to_json(a)};
        j["result"] = to_json(alpha(a));
    } else if (o.lattice_op == "beta") {
        need(1);
        const LowerSet l = lower_set_from_text(args[0]);
        j["args"] = {to_json(l)};
        j["result"] = to_json(beta(l));
    } else {
        throw UsageError("unknown lattice operation '" + o.lattice_op + "'");
    }
    return {j, exit_pass};
}

std::pair<Json, int> cmd_verify(const Options& o) {
    VerifyConfig cfg;
    cfg.suite = o.suite;
    cfg.seed = o.seed;
    cfg.cases = o.cases;
    cfg.jobs = o.jobs;
    if (!o.field_text.empty()) cfg.field = Field::parse(o.field_text);
    if (o.r_given) cfg.lattice_r = o.r;
    if (cfg.lattice_r < 0 || cfg.lattice_r > 8) throw UsageError("--r for the lattice suite must lie in [0, 8]");
    VerifyResult res;
    if (!o.replay.empty()) {
        const auto colon = o.replay.rfind(':');
        if (colon == std::string::npos) throw UsageError("--replay is property:seed");
        std::uint64_t seed = 0;
        const std::string_view digits = std::string_view(o.replay).substr(colon + 1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
            throw UsageError("bad seed in --replay '" + o.replay + "'");
        }
        res = replay_case(o.replay.substr(0, colon), seed, cfg);
    } else {
        res = run_verify(cfg);
    }
    return {res.report, res.pass() ? exit_pass : exit_findings};
}

void diagnose(std::ostream& err, const char* kind, const std::string& message, std::size_t offset = ParseError::npos) {
    Json j{{"error", kind}, {"message", message}};
    if (offset != ParseError::npos) j["offset"] = offset;
    err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact spectral sequences of filtered complexes and bicomplexes", "specseq"};
    app.require_subcommand(1, 1);
    app.add_option("--field", o.field_text, "Coefficient field: Q or Fp:N");
    app.add_option("--out", o.out_path, "Write the report here instead of stdout");

    auto* pages = app.add_subcommand("pages", "Page E_r of a complex, with d_r")->fallthrough();
    pages->add_option("input", o.input, "JSON file, or - for stdin")->required();
    pages->add_option("--r", o.r, "Page index")->capture_default_str();

    auto* check = app.add_subcommand("check", "Decide a predicate on a map")->fallthrough();
    check->add_option("predicate", o.predicate, "weq | fib | acyclic-fib | effective-mono")
        ->required()
        ->check(CLI::IsMember({"weq", "fib", "acyclic-fib", "effective-mono"}));
    check->add_option("input", o.input, "JSON file, or - for stdin")->required();
    check->add_option("--r", o.r, "Page of the weak equivalence (weq)")->capture_default_str();
    check->add_option("--s-set", o.s_set, "Indexing set, e.g. 0,1,3 (fib, acyclic-fib)");

    auto* cone_cmd = app.add_subcommand("cone", "r-cone of a filtered map, or of a bicomplex")->fallthrough();
    cone_cmd->add_option("input", o.input, "JSON file, or - for stdin")->required();
    cone_cmd->add_option("--r", o.r, "Cone index")->capture_default_str();

    auto* tot = app.add_subcommand("tot", "Total complex of a bicomplex or bicomplex map")->fallthrough();
    tot->add_option("input", o.input, "JSON file, or - for stdin")->required();

    auto* lad = app.add_subcommand("ladjoint", "Left adjoint of Tot on a column window")->fallthrough();
    lad->add_option("input", o.input, "JSON file, or - for stdin")->required();
    lad->add_option("--window", o.window, "lo:hi:margin (default: weights widened by 2 and 1, margin 1)");

    auto* lat = app.add_subcommand("lattice", "Operations in the lattice of indexing sets")->fallthrough();
    lat->add_option("op", o.lattice_op, "join | meet | leq | alpha | beta")
        ->required()
        ->check(CLI::IsMember({"join", "meet", "leq", "alpha", "beta"}));
    // Two scalar positionals: a vector option would split "[0,1]" itself.
    lat->add_option("first", o.lattice_first, "A set as 0,2 or [0,2], or a lower set as [[1],[0,1]]");
    lat->add_option("second", o.lattice_second, "The second set of join, meet and leq");

    auto* ver = app.add_subcommand("verify", "Run the verification suites")->fallthrough();
    ver->add_option("suite", o.suite, "all | pages | adjunction | stability | properness | lattice")
        ->capture_default_str()
        ->check(CLI::IsMember({"all", "pages", "adjunction", "stability", "properness", "lattice"}));
    ver->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    ver->add_option("--cases", o.cases, "Random cases per property; 0 runs fixtures only")->capture_default_str();
    ver->add_option("--jobs", o.jobs, "Concurrent cases")->capture_default_str();
    auto* ver_r = ver->add_option("--r", o.r, "Bound of the exhaustive lattice check (default 4)");
    ver->add_option("--replay", o.replay, "Rerun one case, given as property:seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_pass;
        }
        diagnose(err, "usage", e.what());
        return exit_usage;
    }
    o.r_given = ver_r->count() > 0;

    try {
        std::pair<Json, int> res;
        if (pages->parsed()) res = cmd_pages(o);
        if (check->parsed()) res = cmd_check(o);
        if (cone_cmd->parsed()) res = cmd_cone(o);
        if (tot->parsed()) res = cmd_tot(o);
        if (lad->parsed()) res = cmd_ladjoint(o);
        if (lat->parsed()) res = cmd_lattice(o);
        if (ver->parsed()) res = cmd_verify(o);
        const std::string text = dump(res.first);
        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(o.out_path, std::ios::binary);
            if (!(file << text)) throw UsageError("cannot write '" + o.out_path + "'");
        }
        return res.second;
    } catch (const ParseError& e) {
        diagnose(err, "parse", e.what(), e.offset());
        return exit_usage;
    } catch (const ValidationError& e) {
        diagnose(err, "validation", e.what());
        return exit_usage;
    } catch (const InternalError& e) {
        diagnose(err, "internal", e.what());
        return exit_findings;
    } catch (const Error& e) {
        diagnose(err, "usage", e.what());
        return exit_usage;
    }
}

}  // namespace specseq::app
