#include "specseq_app/verify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "specseq/bicomplex_ops.hpp"
#include "specseq/errors.hpp"
#include "specseq/filtered_ops.hpp"
#include "specseq/lattice.hpp"
#include "specseq/model_check.hpp"
#include "specseq/random.hpp"
#include "specseq/spectral.hpp"
#include "specseq/tot.hpp"
#include "specseq/witness.hpp"

namespace specseq::app {

namespace {

std::string dims_text(const std::map<Bidegree, std::size_t>& dims) {
    std::ostringstream s;
    s << "{";
    bool first = true;
    for (const auto& [b, d] : dims) {
        s << (first ? "" : ", ") << "(" << b.p << "," << b.q << "):" << d;
        first = false;
    }
    s << "}";
    return s.str();
}

Check equal_dims(std::string name, const std::map<Bidegree, std::size_t>& got,
                 const std::map<Bidegree, std::size_t>& want) {
    if (got == want) return {std::move(name), true, {}};
    return {std::move(name), false, "got " + dims_text(got) + ", expected " + dims_text(want)};
}

Check check(std::string name, bool ok, std::string detail = {}) {
    return {std::move(name), ok, ok ? std::string{} : std::move(detail)};
}

std::string rname(const char* stem, int r) { return std::string(stem) + "_r" + std::to_string(r); }

FilteredComplex small_filtered(Rng& rng, Field f) {
    FilteredGenOptions opt;
    opt.max_dim = 3;
    opt.deg_lo = -1;
    opt.deg_hi = 2;
    opt.weight_lo = -1;
    opt.weight_hi = 1;
    opt.max_pieces = 3;
    opt.max_drop = 2;
    return random_filtered(rng, f, opt);
}

Bicomplex random_columns(Rng& rng, Field f, int lo, int hi) {
    BicomplexGenOptions opt;
    opt.col_lo = lo;
    opt.col_hi = hi;
    opt.max_dim = 3;
    opt.max_r = 3;
    opt.max_pieces = 4;
    return random_bicomplex(rng, f, opt);
}

SSet random_s(Rng& rng, int r, Flavor flavor) {
    std::set<int> s{r};
    for (int k = 0; k < r; ++k) {
        if (rng.chance(1, 2)) s.insert(k);
    }
    if (flavor == Flavor::bicomplex) s.insert(0);
    return SSet(s, flavor);
}

void append(std::vector<Check>& out, const std::string& prefix, const std::vector<Check>& checks) {
    for (const Check& c : checks) out.push_back({prefix + c.name, c.pass, c.detail});
}

// pages

Outcome page_recursion_filtered(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const FilteredComplex x = random_filtered(rng, f);
    Outcome out{.instance = to_json(x)};
    for (int r = 0; r <= 4; ++r) {
        const PageTable t = page(x, r);
        out.checks.push_back(check(rname("d_squared_zero", r), t.squares_to_zero(f)));
        out.checks.push_back(equal_dims(rname("recursion", r), page(x, r + 1).dims(), t.homology_dims(f)));
    }
    return out;
}

Outcome page_recursion_bicomplex(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const Bicomplex a = random_bicomplex(rng, f);
    Outcome out{.instance = to_json(a)};
    for (int r = 0; r <= 4; ++r) {
        const PageTable t = page(a, r);
        out.checks.push_back(check(rname("d_squared_zero", r), t.squares_to_zero(f)));
        out.checks.push_back(equal_dims(rname("recursion", r), page(a, r + 1).dims(), t.homology_dims(f)));
    }
    return out;
}

Outcome witness_tot_agreement(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const Bicomplex a = random_bicomplex(rng, f);
    const FilteredComplex t = tot_pi(a);
    Outcome out{.instance = to_json(a)};
    for (int r = 0; r <= 4; ++r) out.checks.push_back(equal_dims(rname("dims", r), page(a, r).dims(), page(t, r).dims()));
    return out;
}

std::vector<Check> cone_criterion_checks(const ChainMap& f, int& weqs) {
    std::vector<Check> out;
    for (int r = 0; r <= 3; ++r) {
        const bool w = is_r_weq(f, r);
        const bool acyclic = is_r_acyclic(cone(f, r).complex, r);
        weqs += w;
        out.push_back(check(rname("weq_iff_cone_acyclic", r), w == acyclic,
                            std::string("is_r_weq ") + (w ? "true" : "false") + ", cone acyclic " +
                                (acyclic ? "true" : "false")));
    }
    return out;
}

Outcome cone_criterion(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const FilteredComplex a = random_filtered(rng, f);
    const bool engineered = rng.chance(1, 3);
    const ChainMap m = engineered ? random_filtered_iso(rng, a) : random_chain_map(rng, a, random_filtered(rng, f));
    int weqs = 0;
    Outcome out{.checks = cone_criterion_checks(m, weqs), .instance = to_json(m)};
    out.info = {{"engineered_iso", engineered}, {"weq_pages", weqs}};
    return out;
}

Outcome cone_criterion_fixtures(Field f, std::uint64_t, const VerifyConfig&) {
    Outcome out;
    const std::vector<std::pair<std::string, ChainMap>> maps{
        {"identity_z1/", identity_map(rep_cycle(f, 1, 0, 0))},
        {"zero_into_pure/", zero_map(FilteredComplex(f), pure(f, 0, 0))},
        {"z1_to_zero/", zero_map(rep_cycle(f, 1, 0, 0), FilteredComplex(f))},
        {"alpha_1/", alpha_morphism(f, 1, 1, 0)},
    };
    Json weqs = Json::object();
    for (const auto& [name, m] : maps) {
        int w = 0;
        append(out.checks, name, cone_criterion_checks(m, w));
        weqs[name.substr(0, name.size() - 1)] = w;
    }
    // Z_1 -> 0 is a 1-weq but not a 0-weq.
    const ChainMap z = maps[2].second;
    out.checks.push_back(check("z1_to_zero_weq_pattern", !is_r_weq(z, 0) && is_r_weq(z, 1)));
    out.info = {{"weq_pages", weqs}};
    return out;
}

Outcome decalage_shift(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const FilteredComplex x = random_filtered(rng, f);
    Outcome out{.instance = to_json(x)};
    for (int r = 0; r <= 3; ++r) out.checks.push_back(check(rname("dec_shift_is_identity", r), decalage(shift(x, r), r) == x));
    return out;
}

Outcome bicomplex_cone(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const Bicomplex a = random_bicomplex(rng, f);
    Outcome out{.instance = to_json(a)};
    for (int r = 0; r <= 2; ++r) {
        const Bicomplex c = cone(a, r);
        out.checks.push_back(check(rname("cone_valid", r), c.violations().empty()));
        out.checks.push_back(check(rname("cone_acyclic", r), page(c, r + 1).is_zero(),
                                   "E_" + std::to_string(r + 1) + " = " + dims_text(page(c, r + 1).dims())));
        const BiMap p = psi(a, r);
        out.checks.push_back(check(rname("psi_target_is_suspension", r), p.target() == suspension(a, r)));
        for (int k = 0; k <= r; ++k) {
            const auto fail = zw_surjectivity_failure(p, k);
            out.checks.push_back(check(rname(("psi_zw" + std::to_string(k) + "_surjective").c_str(), r), !fail,
                                       fail ? "not onto at (" + std::to_string(fail->p) + "," + std::to_string(fail->q) + ")"
                                            : ""));
        }
    }
    return out;
}

Outcome page_fixtures(Field f, std::uint64_t, const VerifyConfig&) {
    Outcome out;
    const FilteredComplex z1 = rep_cycle(f, 1, 0, 0);
    out.checks.push_back(check("z1_e2_zero", page(z1, 2).is_zero()));
    out.checks.push_back(equal_dims("z1_e1", page(z1, 1).dims(), {{{-1, 0}, 1}, {{0, 0}, 1}}));
    out.checks.push_back(check("empty_complex_pages_empty", page(FilteredComplex(f), 3).is_zero()));
    for (int r = 0; r <= 3; ++r) {
        const Cone c = cone(identity_map(pure(f, 1, 0)), r);
        std::size_t gens = 0;
        for (int n : c.complex.degrees()) gens += c.complex.dim(n);
        out.checks.push_back(check(rname("cone_id_pure_two_generators", r), gens == 2));
        out.checks.push_back(check(rname("cone_id_pure_acyclic", r), page(c.complex, r + 1).is_zero()));
    }
    return out;
}

// adjunction

Outcome l_tot_adjunction(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const FilteredComplex a = small_filtered(rng, f);
    const Range wr = a.weight_range().empty() ? Range{0, 0} : a.weight_range();
    const Window w{wr.lo - 2, wr.hi + 1, 1};
    const Bicomplex b = columns_from(random_columns(rng, f, w.col_lo - 1, w.col_lo + 4), w.col_lo);
    const TruncatedBicomplex l = l_adjoint(a, w);
    const auto down = hom_space(l.body, b);
    const auto up = hom_space(a, tot_pi(b));
    Outcome out{.instance = {{"a", to_json(a)}, {"b", to_json(b)}, {"window", to_json(w)}}};
    out.checks.push_back(check("hom_dims_equal", down.size() == up.size(),
                               std::to_string(down.size()) + " vs " + std::to_string(up.size())));
    bool ud = true, du = true;
    for (const BiMap& g : down) ud = ud && transpose_up(a, w, b, transpose_down(a, w, g)) == g;
    for (const ChainMap& g : up) du = du && transpose_down(a, w, transpose_up(a, w, b, g)) == g;
    out.checks.push_back(check("up_after_down_is_identity", ud));
    out.checks.push_back(check("down_after_up_is_identity", du));
    out.info = {{"hom_dim", down.size()}};
    return out;
}

Outcome r_tot_hom_dims(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const FilteredComplex a = small_filtered(rng, f);
    const Range wr = a.weight_range().empty() ? Range{0, 0} : a.weight_range();
    const Window w{wr.lo - 1, wr.hi + 2, 1};
    const Bicomplex b = columns_upto(random_columns(rng, f, w.col_hi - 4, w.col_hi + 1), w.col_hi);
    const std::size_t lhs = hom_space(tot_pi(b), a).size();
    const std::size_t rhs = hom_space(b, r_adjoint(a, w).body).size();
    Outcome out{.instance = {{"a", to_json(a)}, {"b", to_json(b)}, {"window", to_json(w)}}};
    out.checks.push_back(check("hom_dims_equal", lhs == rhs, std::to_string(lhs) + " vs " + std::to_string(rhs)));
    out.info = {{"hom_dim", lhs}};
    return out;
}

std::string spn(int s, int p, int n) {
    return "s" + std::to_string(s) + "_p" + std::to_string(p) + "_n" + std::to_string(n);
}

Outcome l_of_cycle_decomposition(Field f, std::uint64_t, const VerifyConfig&) {
    Outcome out;
    for (int s = 0; s <= 3; ++s) {
        for (int p = -1; p <= 1; ++p) {
            for (int n = -1; n <= 1; ++n) {
                const Window w{p - s - 3, p + 2, s + 1};
                const Decomposition d = decompose_l_of_cycle(f, s, p, n, w);
                const bool ok = d.verified && d.iso.is_iso() && w.col_hi - w.col_lo + 1 >= 6;
                out.checks.push_back(check(spn(s, p, n), ok));
            }
        }
    }
    return out;
}

Outcome unit_on_cycles(Field f, std::uint64_t, const VerifyConfig&) {
    Outcome out;
    Json reports = Json::array();
    for (int s = 1; s <= 3; ++s) {
        for (int p = -1; p <= 1; ++p) {
            for (int n = -1; n <= 1; ++n) {
                const Window w{p - 2 * s - 3, p + 2, s + 1};
                const UnitReport rep = verify_unit_on_cycle(f, s, p, n, w);
                const UnitReport wide = verify_unit_on_cycle(f, s, p, n, Window{w.col_lo - 1, w.col_hi + 1, w.margin + 1});
                append(out.checks, spn(s, p, n) + "/", rep.checks);
                const bool stable = wide.pass() && wide.source_page == rep.source_page &&
                                    wide.target_page == rep.target_page && wide.unit_page == rep.unit_page;
                out.checks.push_back(check(spn(s, p, n) + "/stable_at_margin_plus_one", stable));
                reports.push_back(to_json(rep));
            }
        }
    }
    out.info = {{"reports", reports}};
    return out;
}

// stability

Outcome stability_filtered(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const FilteredComplex a = random_filtered(rng, f);
    Outcome out{.instance = to_json(a)};
    for (int r = 0; r <= 2; ++r) append(out.checks, "r" + std::to_string(r) + "/", stability_check_filtered(a, r).checks);
    return out;
}

Outcome stability_bicomplex(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const Bicomplex a = random_bicomplex(rng, f);
    Outcome out{.instance = to_json(a)};
    for (int r = 0; r <= 2; ++r) append(out.checks, "r" + std::to_string(r) + "/", stability_check_bicomplex(a, r).checks);
    return out;
}

Outcome stability_fixtures(Field f, std::uint64_t, const VerifyConfig&) {
    Outcome out;
    append(out.checks, "pure_0_0_r1/", stability_check_filtered(pure(f, 0, 0), 1).checks);
    append(out.checks, "empty_r1/", stability_check_filtered(FilteredComplex(f), 1).checks);
    for (int r = 0; r <= 2; ++r) {
        append(out.checks, rname("single_0_0", r) + "/", stability_check_bicomplex(single(f, {0, 0}), r).checks);
    }
    return out;
}

// properness

Json s_json(const SSet& s) { return std::vector<int>(s.elements().begin(), s.elements().end()); }

Outcome properness_filtered(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const int r = rng.uniform(0, 2);
    const int kind = rng.uniform(0, 1);
    const SSet s = random_s(rng, r, Flavor::filtered);
    const int p = rng.uniform(-1, 1), n = rng.uniform(-1, 1);
    const ChainMap pi = random_acyclic_fibration(rng, f, r, kind);
    const ChainMap g = random_chain_map(rng, rep_cycle(f, r + 1, p, n), pi.source());
    const PropernessReport rep = properness_harness(pi, s, g, p, n);
    Outcome out{.checks = rep.checks,
                .instance = {{"pi", to_json(pi)}, {"g", to_json(g)}, {"s_set", s_json(s)}, {"p", p}, {"n", n}}};
    out.info = {{"r", r}, {"kind", kind}, {"s_set", s_json(s)}, {"p", p}, {"n", n}};
    return out;
}

Outcome properness_bicomplex(Field f, std::uint64_t seed, const VerifyConfig&) {
    Rng rng(seed);
    const int r = rng.uniform(0, 2);
    const int kind = rng.uniform(0, 1);
    const SSet s = random_s(rng, r, Flavor::bicomplex);
    const int p = rng.uniform(-1, 1), n = rng.uniform(-1, 1);
    const BiMap pi = random_acyclic_bifibration(rng, f, r, kind);
    const BiMap g = random_bimap(rng, rep_witness_cycle(f, r + 1, p, p + n), pi.source());
    const PropernessReport rep = properness_harness(pi, s, g, p, n);
    Outcome out{.checks = rep.checks,
                .instance = {{"pi", to_json(pi)}, {"g", to_json(g)}, {"s_set", s_json(s)}, {"p", p}, {"n", n}}};
    out.info = {{"r", r}, {"kind", kind}, {"s_set", s_json(s)}, {"p", p}, {"n", n}};
    return out;
}

Outcome separation(Field f, std::uint64_t, const VerifyConfig&) {
    Outcome out;
    Json reports = Json::array();
    const IndexWindow w{0, 1, -1, 0};
    for (int s = 0; s <= 3; ++s) {
        const SeparationReport rep = check_separation(f, s, w, s + 3);
        std::string fails;
        for (int k : rep.not_surjective) fails += (fails.empty() ? "" : ",") + std::to_string(k);
        out.checks.push_back(check("gamma_" + std::to_string(s), rep.pass(), "not Z_k-surjective for k in {" + fails + "}"));
        reports.push_back({{"s", s},
                           {"k_max", rep.k_max},
                           {"window", {{"p_lo", w.p_lo}, {"p_hi", w.p_hi}, {"n_lo", w.n_lo}, {"n_hi", w.n_hi}}},
                           {"surjective", rep.surjective},
                           {"not_surjective", rep.not_surjective}});
    }
    out.info = {{"reports", reports}};
    return out;
}

// lattice

Outcome lattice_laws(Field, std::uint64_t, const VerifyConfig& cfg) {
    const LatticeReport rep = check_distributive(cfg.lattice_r);
    std::string detail;
    for (std::size_t k = 0; k < rep.findings.size() && k < 20; ++k) detail += (k ? "; " : "") + rep.findings[k];
    Outcome out;
    out.checks.push_back(check("exhaustive_laws", rep.pass(), detail));
    out.info = {{"r", rep.r}, {"elements", rep.elements}, {"triples", rep.triples}, {"findings", rep.findings.size()}};
    return out;
}

struct Task {
    const Property* prop = nullptr;
    int index = 0;
    std::uint64_t seed = 0;
};

Outcome run_guarded(const Task& t, const VerifyConfig& cfg) {
    try {
        return t.prop->run(cfg.field, t.seed, cfg);
    } catch (const std::exception& e) {
        return Outcome{.checks = {{"exception", false, e.what()}}};
    }
}

Json case_json(const Task& t, const Outcome& o, const VerifyConfig& cfg) {
    const bool ok = all_pass(o.checks);
    Json checks = Json::array();
    for (const Check& c : o.checks) checks.push_back(to_json(c));
    Json j{{"index", t.index}, {"status", ok ? "pass" : "fail"}, {"checks", checks}};
    if (t.prop->random) j["seed"] = t.seed;
    if (!o.info.is_null()) j["info"] = o.info;
    if (!ok) {
        if (!o.instance.is_null()) j["instance"] = o.instance;
        j["replay"] = "specseq verify --replay " + t.prop->name + ":" + std::to_string(t.seed) +
                      " --field " + cfg.field.name();
    }
    return j;
}

struct Tally {
    std::size_t cases = 0, checks = 0, failed = 0;
    Json json() const {
        return {{"cases", cases}, {"checks", checks}, {"failed_cases", failed}, {"status", failed ? "fail" : "pass"}};
    }
};

VerifyResult assemble(const std::vector<Task>& tasks, const std::vector<Outcome>& outcomes, const VerifyConfig& cfg,
                      Json config) {
    Json suites = Json::object();
    std::map<std::string, Tally> per_suite;
    Tally total;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const Task& t = tasks[k];
        Json& prop = suites[t.prop->suite]["properties"][t.prop->name];
        prop["random"] = t.prop->random;
        prop["cases"].push_back(case_json(t, outcomes[k], cfg));
        const bool failed = !all_pass(outcomes[k].checks);
        for (Tally* tally : {&per_suite[t.prop->suite], &total}) {
            ++tally->cases;
            tally->checks += outcomes[k].checks.size();
            tally->failed += failed;
        }
    }
    for (const auto& [name, tally] : per_suite) suites[name]["summary"] = tally.json();
    VerifyResult res;
    res.failed_cases = total.failed;
    res.report = {{"config", std::move(config)}, {"suites", suites}, {"summary", total.json()}};
    return res;
}

std::vector<Outcome> run_tasks(const std::vector<Task>& tasks, const VerifyConfig& cfg) {
    std::vector<Outcome> outcomes(tasks.size());
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(cfg.jobs, 1)), 1, std::max<std::size_t>(tasks.size(), 1));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) outcomes[k] = run_guarded(tasks[k], cfg);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return outcomes;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"pages", "adjunction", "stability", "properness", "lattice"};
    return names;
}

const std::vector<Property>& properties() {
    static const std::vector<Property> props{
        {"pages", "page_recursion_filtered", true, page_recursion_filtered},
        {"pages", "page_recursion_bicomplex", true, page_recursion_bicomplex},
        {"pages", "witness_tot_agreement", true, witness_tot_agreement},
        {"pages", "cone_criterion", true, cone_criterion},
        {"pages", "cone_criterion_fixtures", false, cone_criterion_fixtures},
        {"pages", "decalage_shift", true, decalage_shift},
        {"pages", "bicomplex_cone", true, bicomplex_cone},
        {"pages", "page_fixtures", false, page_fixtures},
        {"adjunction", "l_tot_adjunction", true, l_tot_adjunction},
        {"adjunction", "r_tot_hom_dims", true, r_tot_hom_dims},
        {"adjunction", "l_of_cycle_decomposition", false, l_of_cycle_decomposition},
        {"adjunction", "unit_on_cycles", false, unit_on_cycles},
        {"stability", "stability_filtered", true, stability_filtered},
        {"stability", "stability_bicomplex", true, stability_bicomplex},
        {"stability", "stability_fixtures", false, stability_fixtures},
        {"properness", "properness_filtered", true, properness_filtered},
        {"properness", "properness_bicomplex", true, properness_bicomplex},
        {"properness", "separation", false, separation},
        {"lattice", "lattice_laws", false, lattice_laws},
    };
    return props;
}

VerifyResult run_properties(const std::vector<Property>& props, const VerifyConfig& cfg) {
    if (cfg.cases < 0) throw PreconditionError("--cases must be nonnegative");
    std::vector<Task> tasks;
    for (const Property& p : props) {
        if (!p.random) {
            tasks.push_back({&p, 0, 0});
            continue;
        }
        for (int k = 0; k < cfg.cases; ++k) tasks.push_back({&p, k, Rng::derive(cfg.seed, p.name, static_cast<std::uint64_t>(k))});
    }
    Json config{{"suite", cfg.suite}, {"seed", cfg.seed}, {"cases", cfg.cases}, {"field", to_json(cfg.field)},
                {"lattice_r", cfg.lattice_r}};
    return assemble(tasks, run_tasks(tasks, cfg), cfg, std::move(config));
}

VerifyResult run_verify(const VerifyConfig& cfg) {
    const auto& names = suite_names();
    if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
        throw PreconditionError("unknown suite '" + cfg.suite + "'");
    }
    std::vector<Property> selected;
    for (const Property& p : properties()) {
        if (cfg.suite == "all" || p.suite == cfg.suite) selected.push_back(p);
    }
    return run_properties(selected, cfg);
}

VerifyResult replay_case(const std::string& property, std::uint64_t case_seed, const VerifyConfig& cfg) {
    const auto& props = properties();
    auto it = std::find_if(props.begin(), props.end(), [&](const Property& p) { return p.name == property; });
    if (it == props.end()) throw PreconditionError("unknown property '" + property + "'");
    const std::vector<Task> tasks{{&*it, 0, it->random ? case_seed : 0}};
    Json config{{"replay", property}, {"seed", case_seed}, {"field", to_json(cfg.field)}, {"lattice_r", cfg.lattice_r}};
    return assemble(tasks, run_tasks(tasks, cfg), cfg, std::move(config));
}

}  // namespace specseq::app
