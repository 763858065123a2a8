#include "specseq/model_check.hpp"

#include <type_traits>

#include "specseq/bicomplex_ops.hpp"
#include "specseq/filtered_ops.hpp"
#include "specseq/spectral.hpp"
#include "specseq/witness.hpp"

namespace specseq {

namespace {

std::string bidegree_name(Bidegree b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

void require_flavor(const SSet& s, Flavor f, const char* what) {
    if (s.flavor() != f) {
        throw PreconditionError(std::string(what) + ": expected a " + to_string(f) + " S, got " + to_string(s.flavor()));
    }
}

ChainMap sum_map(const ChainMap& f, const ChainMap& g) {
    const DirectSum ab = direct_sum(f.source(), g.source());
    const DirectSum cd = direct_sum(f.target(), g.target());
    return copair(compose(cd.in1, f), compose(cd.in2, g), ab);
}

FilteredComplex sum_all(const std::vector<FilteredComplex>& parts, Field field) {
    FilteredComplex acc(field);
    for (const auto& x : parts) acc = direct_sum(acc, x).sum;
    return acc;
}

Bicomplex sum_all(const std::vector<Bicomplex>& parts, Field field) {
    Bicomplex acc(field);
    for (const auto& x : parts) acc = direct_sum(acc, x).sum;
    return acc;
}

bool page_injective(const PageMap& m) {
    for (const auto& [b, mat] : m) {
        if (mat.rank() != mat.cols()) return false;
    }
    return true;
}

std::string page_injectivity_detail(const PageMap& m) {
    for (const auto& [b, mat] : m) {
        if (mat.rank() != mat.cols()) return "kernel at " + bidegree_name(b);
    }
    return {};
}

template <class Map>
std::string fibration_detail(const std::optional<FibrationFailure>& f) {
    if (!f) return {};
    return "not surjective on " + std::string(std::is_same_v<Map, BiMap> ? "ZW_" : "Z_") + std::to_string(f->s) +
           " at " + bidegree_name(f->at);
}

FilteredGenOptions small_filtered_options() {
    FilteredGenOptions opt;
    opt.max_dim = 2;
    opt.deg_lo = -1;
    opt.deg_hi = 1;
    opt.weight_lo = -1;
    opt.weight_hi = 1;
    opt.max_pieces = 3;
    opt.max_drop = 2;
    return opt;
}

BicomplexGenOptions small_bicomplex_options() {
    BicomplexGenOptions opt;
    opt.max_dim = 2;
    opt.col_lo = -1;
    opt.col_hi = 1;
    opt.row_lo = -1;
    opt.row_hi = 1;
    opt.max_pieces = 2;
    opt.max_r = 2;
    return opt;
}

}  // namespace

std::string to_string(Flavor f) { return f == Flavor::filtered ? "filtered" : "bicomplex"; }

SSet::SSet(std::set<int> elements, Flavor flavor) : elements_(std::move(elements)), flavor_(flavor) {
    if (elements_.empty()) throw PreconditionError("S must be nonempty");
    if (*elements_.begin() < 0) throw PreconditionError("S must contain naturals only");
    if (flavor_ == Flavor::bicomplex && !contains(0)) throw PreconditionError("S must contain 0 for bicomplexes");
}

std::string SSet::to_string() const {
    std::string out = "{";
    for (int s : elements_) {
        if (out.size() > 1) out += ",";
        out += std::to_string(s);
    }
    return out + "}";
}

std::optional<FibrationFailure> fibration_failure(const ChainMap& f, const SSet& s) {
    require_flavor(s, Flavor::filtered, "is_fibration");
    for (int k : s.elements()) {
        if (auto b = zk_surjectivity_failure(f, k)) return FibrationFailure{k, *b};
    }
    return std::nullopt;
}

std::optional<FibrationFailure> fibration_failure(const BiMap& f, const SSet& s) {
    require_flavor(s, Flavor::bicomplex, "is_fibration");
    for (int k : s.elements()) {
        if (auto c = zw_surjectivity_failure(f, k)) return FibrationFailure{k, *c};
    }
    return std::nullopt;
}

bool is_fibration(const ChainMap& f, const SSet& s) { return !fibration_failure(f, s).has_value(); }
bool is_fibration(const BiMap& f, const SSet& s) { return !fibration_failure(f, s).has_value(); }
bool is_acyclic_fibration(const ChainMap& f, const SSet& s) { return is_fibration(f, s) && is_r_weq(f, s.r()); }
bool is_acyclic_fibration(const BiMap& f, const SSet& s) { return is_fibration(f, s) && is_r_weq(f, s.r()); }

std::size_t IndexWindow::size() const {
    if (p_lo > p_hi || n_lo > n_hi) return 0;
    return static_cast<std::size_t>(p_hi - p_lo + 1) * static_cast<std::size_t>(n_hi - n_lo + 1);
}

GeneratingSets<ChainMap> filtered_generating_sets(Field field, const SSet& s, const IndexWindow& w) {
    require_flavor(s, Flavor::filtered, "generating_sets");
    GeneratingSets<ChainMap> out;
    const int r = s.r();
    for (int p = w.p_lo; p <= w.p_hi; ++p) {
        for (int n = w.n_lo; n <= w.n_hi; ++n) out.i.push_back({"phi", r + 1, p, n, phi(field, r + 1, p, n)});
    }
    for (int k : s.elements()) {
        for (int p = w.p_lo; p <= w.p_hi; ++p) {
            for (int n = w.n_lo; n <= w.n_hi; ++n) {
                Generator<ChainMap> g{"zero", k, p, n, zero_map(FilteredComplex(field), rep_cycle(field, k, p, n))};
                out.i.push_back(g);
                out.j.push_back(std::move(g));
            }
        }
    }
    return out;
}

GeneratingSets<BiMap> bicomplex_generating_sets(Field field, const SSet& s, const IndexWindow& w) {
    require_flavor(s, Flavor::bicomplex, "generating_sets");
    GeneratingSets<BiMap> out;
    const int r = s.r();
    for (int p = w.p_lo; p <= w.p_hi; ++p) {
        for (int n = w.n_lo; n <= w.n_hi; ++n) out.i.push_back({"phi", r + 1, p, n, witness_phi(field, r + 1, p, p + n)});
    }
    // 0 is in S, so the extra 0 -> ZW_0 family is the J_0 part.
    for (int k : s.elements()) {
        for (int p = w.p_lo; p <= w.p_hi; ++p) {
            for (int n = w.n_lo; n <= w.n_hi; ++n) {
                Generator<BiMap> g{"zero", k, p, n, zero_map(Bicomplex(field), rep_witness_cycle(field, k, p, p + n))};
                out.i.push_back(g);
                out.j.push_back(std::move(g));
            }
        }
    }
    return out;
}

std::optional<ChainMap> lift_cycle(const ChainMap& q, const ChainMap& y, int s, int p, int n) {
    const Field field = q.source().field();
    const FilteredComplex z = rep_cycle(field, s, p, n);
    if (!(y.source() == z)) throw PreconditionError("lift_cycle: y is not defined on Z_s(p, n)");
    if (!(y.target() == q.target())) throw PreconditionError("lift_cycle: y and q have different targets");
    const FilteredComplex& x = q.source();
    const Subspace zx = cycles(x, s, p, n);
    const auto t = (q.at(n) * zx.basis()).solve(y.at(n));
    if (!t) return std::nullopt;
    const Matrix u = zx.basis() * *t;
    ChainMap lift(z, x);
    lift.set(n, u);
    lift.set(n + 1, x.d(n) * u);
    lift.validate();
    return lift;
}

std::optional<BiMap> lift_witness(const BiMap& q, const BiMap& y, int s, int p, int qq) {
    if (!(y.target() == q.target())) throw PreconditionError("lift_witness: y and q have different targets");
    const Bicomplex& x = q.source();
    const Matrix tuple = witness_of(y, s, p, qq);
    const Subspace zx = witness_cycles(x, s, p, qq);
    const auto t = (on_slots(q, s, p, qq) * zx.basis()).solve(tuple);
    if (!t) return std::nullopt;
    return map_from_witness(x, s, p, qq, zx.basis() * *t);
}

ChainMap assembled_gamma(Field field, int s, const IndexWindow& w) {
    if (w.size() == 0) throw PreconditionError("assembled_gamma: empty window");
    std::optional<ChainMap> acc;
    for (int p = w.p_lo; p <= w.p_hi; ++p) {
        for (int n = w.n_lo; n <= w.n_hi; ++n) {
            const ChainMap g = gamma_morphism(field, s, p, n);
            acc = acc ? sum_map(*acc, g) : g;
        }
    }
    return *acc;
}

SeparationReport check_separation(Field field, int s, const IndexWindow& w, int k_max) {
    SeparationReport rep;
    rep.s = s;
    rep.window = w;
    rep.k_max = k_max;
    const ChainMap g = assembled_gamma(field, s, w);
    for (int k = 0; k <= k_max; ++k) (is_zk_surjective(g, k) ? rep.surjective : rep.not_surjective).push_back(k);
    return rep;
}

StabilityReport stability_check_filtered(const FilteredComplex& a, int r) {
    if (r < 0) throw PreconditionError("stability_check: r must be >= 0");
    const Field field = a.field();
    StabilityReport rep;
    rep.flavor = Flavor::filtered;
    rep.r = r;
    const ChainMap pi = omega_cone_fibration(a, r);
    const Pullback pb = pullback(pi, zero_map(FilteredComplex(field), a));
    rep.checks.push_back({"pullback_is_kernel",
                          pb.to_a.is_injective() && compose(pi, pb.to_a) == zero_map(pb.complex, a), {}});
    // Degree n of the domain is A^n + A^{n-1}; on the kernel the second
    // block is a copy of Omega^r A.
    const FilteredComplex target = loops(a, r);
    ChainMap iso(pb.complex, target);
    for (int n : pb.complex.degrees()) {
        iso.set(n, pb.to_a.at(n).block(a.dim(n), 0, a.dim(n - 1), pb.complex.dim(n)));
    }
    const auto pv = iso.violations();
    rep.checks.push_back({"block_is_chain_map", pv.empty(), pv.empty() ? "" : pv.front()});
    if (!pv.empty()) return rep;
    const bool ok = is_filtered_iso(iso);
    rep.checks.push_back({"iso_to_loops", ok, ok ? "" : "pullback -> Omega^r A is not a filtered isomorphism"});
    if (ok) {
        const ChainMap back = inverse(iso);
        rep.checks.push_back({"inverse_is_explicit",
                              compose(back, iso) == identity_map(pb.complex) && compose(iso, back) == identity_map(target), {}});
    }
    return rep;
}

StabilityReport stability_check_bicomplex(const Bicomplex& a, int r) {
    if (r < 0) throw PreconditionError("stability_check: r must be >= 0");
    const Field field = a.field();
    StabilityReport rep;
    rep.flavor = Flavor::bicomplex;
    rep.r = r;
    const BiMap lp = loops(psi(a, r), r);
    rep.checks.push_back({"fibration_target_is_a", lp.target() == a, {}});
    const BiPullback pb = pullback(lp, zero_map(Bicomplex(field), lp.target()));
    rep.checks.push_back({"pullback_is_kernel",
                          pb.to_a.is_injective() && compose(lp, pb.to_a) == zero_map(pb.complex, lp.target()), {}});
    if (r == 0) {
        rep.checks.push_back({"pullback_is_loops", pb.complex == loops(a, 0), {}});
        return rep;
    }
    const Bicomplex expect = loops(tensor(nw(field, r), a), r);
    rep.checks.push_back({"pullback_is_loops_nw_tensor", pb.complex == expect, {}});
    rep.checks.push_back({"loops_commute_with_tensor", expect == tensor(loops(nw(field, r), r), a), {}});
    const BiMap i = omega_i_inclusion(a, r);
    rep.checks.push_back({"inclusion_is_1_weq", is_r_weq(i, 1), {}});
    return rep;
}

PropernessReport properness_harness(const ChainMap& pi, const SSet& s, const ChainMap& g, int p, int n) {
    require_flavor(s, Flavor::filtered, "properness_harness");
    const Field field = pi.source().field();
    const int r = s.r();
    if (auto f = fibration_failure(pi, s)) {
        throw PreconditionError("properness_harness: pi is not an S-fibration (" + fibration_detail<ChainMap>(f) + ")");
    }
    if (!is_r_weq(pi, r)) throw PreconditionError("properness_harness: pi is not an r-weak equivalence");
    if (!(g.source() == rep_cycle(field, r + 1, p, n)) || !(g.target() == pi.source())) {
        throw PreconditionError("properness_harness: g must map Z_{r+1}(p, n) to the source of pi");
    }
    PropernessReport rep;
    rep.flavor = Flavor::filtered;
    rep.r = r;
    rep.p = p;
    rep.n = n;

    const Pushout a1 = pushout(g, phi(field, r + 1, p, n));
    const ChainMap& f = a1.from_a;
    const Pushout b1 = pushout(pi, f);
    const ChainMap& pi2 = b1.from_b;
    if (!(compose(pi2, f) == compose(b1.from_a, pi))) throw InternalError("properness_harness: pushout square does not commute");

    std::optional<FibrationFailure> bad;
    for (int k : s.elements()) {
        if (auto b = zk_surjectivity_failure(pi2, k); b && !bad) bad = FibrationFailure{k, *b};
    }
    rep.checks.push_back({"zs_transfer", !bad, fibration_detail<ChainMap>(bad)});
    const auto next = zk_surjectivity_failure(pi2, r + 1);
    rep.checks.push_back({"z_r+1_surjective", !next, next ? "fails at " + bidegree_name(*next) : ""});

    const Subcomplex k = kernel(pi);
    const Subcomplex k2 = kernel(pi2);
    const ChainMap into = compose(f, k.inclusion);
    ChainMap cmp(k.complex, k2.complex);
    bool inside = true;
    for (int d : k.complex.degrees()) {
        auto x = k2.inclusion.at(d).solve(into.at(d));
        if (!x) {
            inside = false;
            break;
        }
        cmp.set(d, *x);
    }
    const bool same = inside && is_filtered_iso(cmp);
    rep.checks.push_back({"kernel_equality", same, same ? "" : (inside ? "ker pi -> ker pi' is not an isomorphism" : "f(ker pi) leaves ker pi'")});

    const PageMap e = page_map(pi2, r + 1);
    rep.checks.push_back({"e_r+1_injective", page_injective(e), page_injectivity_detail(e)});
    const auto closure = fibration_failure(pi2, s);
    const bool weq = is_r_weq(pi2, r);
    rep.checks.push_back({"acyclic_fibration_closure", !closure && weq,
                          closure ? fibration_detail<ChainMap>(closure) : (weq ? "" : "not an r-weak equivalence")});
    return rep;
}

PropernessReport properness_harness(const BiMap& pi, const SSet& s, const BiMap& g, int p, int n) {
    require_flavor(s, Flavor::bicomplex, "properness_harness");
    const Field field = pi.source().field();
    const int r = s.r();
    if (auto f = fibration_failure(pi, s)) {
        throw PreconditionError("properness_harness: pi is not an S-fibration (" + fibration_detail<BiMap>(f) + ")");
    }
    if (!is_r_weq(pi, r)) throw PreconditionError("properness_harness: pi is not an r-weak equivalence");
    if (!(g.source() == rep_witness_cycle(field, r + 1, p, p + n)) || !(g.target() == pi.source())) {
        throw PreconditionError("properness_harness: g must map ZW_{r+1}(p, p+n) to the source of pi");
    }
    PropernessReport rep;
    rep.flavor = Flavor::bicomplex;
    rep.r = r;
    rep.p = p;
    rep.n = n;

    const BiPushout a1 = pushout(g, witness_phi(field, r + 1, p, p + n));
    const BiMap& f = a1.from_a;
    const BiPushout b1 = pushout(pi, f);
    const BiMap& pi2 = b1.from_b;
    if (!(compose(pi2, f) == compose(b1.from_a, pi))) throw InternalError("properness_harness: pushout square does not commute");

    std::optional<FibrationFailure> bad;
    for (int k : s.elements()) {
        if (auto c = zw_surjectivity_failure(pi2, k); c && !bad) bad = FibrationFailure{k, *c};
    }
    rep.checks.push_back({"zs_transfer", !bad, fibration_detail<BiMap>(bad)});
    const auto next = zw_surjectivity_failure(pi2, r + 1);
    rep.checks.push_back({"z_r+1_surjective", !next, next ? "fails at " + bidegree_name(*next) : ""});

    const SubBicomplex k = kernel(pi);
    const SubBicomplex k2 = kernel(pi2);
    const BiMap into = compose(f, k.inclusion);
    BiMap cmp(k.complex, k2.complex);
    bool inside = true;
    for (Cell c : k.complex.cells()) {
        auto x = k2.inclusion.at(c).solve(into.at(c));
        if (!x) {
            inside = false;
            break;
        }
        cmp.set(c, *x);
    }
    const bool same = inside && cmp.violations().empty() && cmp.is_iso();
    rep.checks.push_back({"kernel_equality", same, same ? "" : (inside ? "ker pi -> ker pi' is not an isomorphism" : "f(ker pi) leaves ker pi'")});

    const PageMap e = page_map(pi2, r + 1);
    rep.checks.push_back({"e_r+1_injective", page_injective(e), page_injectivity_detail(e)});
    const auto closure = fibration_failure(pi2, s);
    const bool weq = is_r_weq(pi2, r);
    rep.checks.push_back({"acyclic_fibration_closure", !closure && weq,
                          closure ? fibration_detail<BiMap>(closure) : (weq ? "" : "not an r-weak equivalence")});
    return rep;
}

ChainMap random_acyclic_fibration(Rng& rng, Field field, int r, int kind) {
    if (r < 0) throw PreconditionError("random_acyclic_fibration: r must be >= 0");
    const FilteredGenOptions opt = small_filtered_options();
    ChainMap pi;
    if (kind == 0) {
        const FilteredComplex x = random_filtered(rng, field, opt);
        const FilteredComplex a = random_filtered(rng, field, opt);
        const ChainMap fib = omega_cone_fibration(a, r);
        const ChainMap h = random_chain_map(rng, a, x);
        const DirectSum ds = direct_sum(x, fib.source());
        pi = copair(identity_map(x), compose(h, fib), ds);
    } else {
        std::vector<FilteredComplex> parts;
        const int pieces = rng.uniform(1, 3);
        for (int k = 0; k < pieces; ++k) {
            parts.push_back(rep_cycle(field, rng.uniform(0, r), rng.uniform(-1, 1), rng.uniform(-1, 1)));
        }
        const FilteredComplex base = random_filtered_iso(rng, sum_all(parts, field)).target();
        pi = omega_cone_fibration(base, r);
    }
    const ChainMap alpha = random_filtered_iso(rng, pi.source());
    const ChainMap beta = random_filtered_iso(rng, pi.target());
    const ChainMap out = compose(beta, compose(pi, inverse(alpha)));
    out.validate();
    return out;
}

BiMap random_acyclic_bifibration(Rng& rng, Field field, int r, int kind) {
    if (r < 0) throw PreconditionError("random_acyclic_bifibration: r must be >= 0");
    const BicomplexGenOptions opt = small_bicomplex_options();
    BiMap pi;
    if (kind == 0) {
        const Bicomplex x = random_bicomplex(rng, field, opt);
        const Bicomplex a = random_bicomplex(rng, field, opt);
        const BiMap fib = loops(psi(a, r), r);
        const BiMap h = random_bimap(rng, fib.target(), x);
        const BiDirectSum ds = direct_sum(x, fib.source());
        pi = copair(identity_map(x), compose(h, fib), ds);
    } else {
        std::vector<Bicomplex> parts;
        const int pieces = rng.uniform(1, 2);
        for (int k = 0; k < pieces; ++k) {
            const int p = rng.uniform(-1, 1);
            parts.push_back(rep_witness_cycle(field, rng.uniform(0, r), p, p + rng.uniform(-1, 1)));
        }
        const Bicomplex base = random_bicomplex_iso(rng, sum_all(parts, field)).target();
        pi = loops(psi(base, r), r);
    }
    const BiMap alpha = random_bicomplex_iso(rng, pi.source());
    const BiMap beta = random_bicomplex_iso(rng, pi.target());
    const BiMap out = compose(beta, compose(pi, inverse(alpha)));
    out.validate();
    return out;
}

}  // namespace specseq
