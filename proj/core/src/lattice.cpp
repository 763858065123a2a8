#include "specseq/lattice.hpp"

#include <algorithm>
#include <deque>
#include <iterator>

#include "specseq/errors.hpp"

namespace specseq {

namespace {

int max_of(const LatticeElement& s) { return *s.rbegin(); }

LatticeElement shifted(const LatticeElement& s, int by) {
    LatticeElement out;
    for (int x : s) out.insert(x + by);
    return out;
}

bool subset(const LowerSet& a, const LowerSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

LowerSet set_union(const LowerSet& a, const LowerSet& b) {
    LowerSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

LowerSet set_intersection(const LowerSet& a, const LowerSet& b) {
    LowerSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

}  // namespace

LatticeElement JoinIrreducible::as_set() const { return with_zero ? LatticeElement{0, n} : LatticeElement{n}; }

bool irreducible_leq(const JoinIrreducible& a, const JoinIrreducible& b) {
    if (a.with_zero) return b.with_zero && a.n == b.n;
    return a.n <= b.n;
}

void validate_element(const LatticeElement& s) {
    if (s.empty()) throw PreconditionError("lattice element must be nonempty");
    if (*s.begin() < 0) throw PreconditionError("lattice element must contain naturals only");
}

void validate_lower_set(const LowerSet& l) {
    for (const JoinIrreducible& x : l) {
        if (x.n < 1) throw PreconditionError("join-irreducible needs n >= 1, got " + std::to_string(x.n));
        for (int m = 1; m <= x.n; ++m) {
            if (!l.count({m, false})) {
                throw PreconditionError("not a lower set: " + to_string(x.as_set()) + " present without {" +
                                        std::to_string(m) + "}");
            }
        }
    }
}

LatticeElement join(const LatticeElement& s, const LatticeElement& t) {
    validate_element(s);
    validate_element(t);
    const int m = std::max(max_of(s), max_of(t));
    LatticeElement out = shifted(s, m - max_of(s));
    const LatticeElement b = shifted(t, m - max_of(t));
    out.insert(b.begin(), b.end());
    return out;
}

LatticeElement meet(const LatticeElement& s, const LatticeElement& t) {
    validate_element(s);
    validate_element(t);
    const int m = std::max(max_of(s), max_of(t));
    const LatticeElement a = shifted(s, max_of(t) - m);
    const LatticeElement b = shifted(t, max_of(s) - m);
    LatticeElement out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    if (out.empty()) throw PreconditionError("meet of " + to_string(s) + " and " + to_string(t) + " is empty");
    return out;
}

LowerSet alpha(const LatticeElement& s) {
    validate_element(s);
    const int top = max_of(s);
    LowerSet out;
    for (int n = 1; n <= top; ++n) out.insert({n, false});
    for (int t : s) {
        if (t < top) out.insert({top - t, true});
    }
    return out;
}

LatticeElement beta(const LowerSet& l) {
    validate_lower_set(l);
    int top = 0;
    for (const JoinIrreducible& x : l) {
        if (!x.with_zero) top = std::max(top, x.n);
    }
    LatticeElement out{top};
    for (const JoinIrreducible& x : l) {
        if (x.with_zero) out.insert(top - x.n);
    }
    return out;
}

bool leq(const LatticeElement& t, const LatticeElement& s) { return subset(alpha(t), alpha(s)); }

bool leq_by_generators(const LatticeElement& t, const LatticeElement& s) {
    validate_element(t);
    validate_element(s);
    const int bound = max_of(s);
    if (max_of(t) > bound) return false;
    const std::vector<LatticeElement> all = elements(bound);
    std::set<LatticeElement> seen{t};
    std::deque<LatticeElement> todo{t};
    while (!todo.empty()) {
        const LatticeElement x = todo.front();
        todo.pop_front();
        if (x == s) return true;
        std::vector<LatticeElement> next;
        for (const auto& y : all) {
            if (y != x && max_of(y) == max_of(x) && std::includes(y.begin(), y.end(), x.begin(), x.end())) next.push_back(y);
        }
        if (max_of(x) < bound) next.push_back(shifted(x, 1));
        for (auto& y : next) {
            if (seen.insert(y).second) todo.push_back(std::move(y));
        }
    }
    return false;
}

std::vector<LatticeElement> elements(int r) {
    if (r < 0) return {};
    std::vector<LatticeElement> out;
    for (unsigned mask = 1; mask < (1u << (r + 1)); ++mask) {
        LatticeElement s;
        for (int k = 0; k <= r; ++k) {
            if (mask & (1u << k)) s.insert(k);
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const LatticeElement& a, const LatticeElement& b) {
        if (max_of(a) != max_of(b)) return max_of(a) < max_of(b);
        return a < b;
    });
    return out;
}

std::vector<JoinIrreducible> join_irreducibles(int r) {
    std::vector<JoinIrreducible> out;
    for (int n = 1; n <= r; ++n) {
        out.push_back({n, false});
        out.push_back({n, true});
    }
    return out;
}

std::vector<LowerSet> enumerate_lower_sets(int r) {
    const std::vector<JoinIrreducible> ji = join_irreducibles(r);
    std::vector<LowerSet> out;
    for (unsigned mask = 0; mask < (1u << ji.size()); ++mask) {
        LowerSet l;
        for (std::size_t k = 0; k < ji.size(); ++k) {
            if (mask & (1u << k)) l.insert(ji[k]);
        }
        bool closed = true;
        for (const auto& x : l) {
            for (const auto& y : ji) {
                if (irreducible_leq(y, x) && !l.count(y)) closed = false;
            }
        }
        if (closed) out.push_back(std::move(l));
    }
    return out;
}

LatticeReport check_distributive(int r) {
    LatticeReport rep;
    rep.r = r;
    const std::vector<LatticeElement> all = elements(r);
    rep.elements = all.size();
    auto finding = [&](const std::string& law, std::initializer_list<LatticeElement> xs) {
        std::string line = law + ":";
        for (const auto& x : xs) line += " " + to_string(x);
        rep.findings.push_back(std::move(line));
    };

    for (const auto& a : all) {
        if (beta(alpha(a)) != a) finding("beta(alpha(S)) != S", {a});
        if (join(a, a) != a || meet(a, a) != a) finding("idempotence", {a});
    }
    for (const auto& a : all) {
        for (const auto& b : all) {
            LatticeElement m;
            try {
                m = meet(a, b);
            } catch (const PreconditionError&) {
                finding("meet is empty", {a, b});
                continue;
            }
            const LatticeElement j = join(a, b);
            if (!leq(a, j) || !leq(b, j)) finding("a <= a v b", {a, b});
            if (!leq(m, a) || !leq(m, b)) finding("a ^ b <= a", {a, b});
            if (alpha(j) != set_union(alpha(a), alpha(b))) finding("alpha(a v b) != alpha(a) u alpha(b)", {a, b});
            if (alpha(m) != set_intersection(alpha(a), alpha(b))) finding("alpha(a ^ b) != alpha(a) n alpha(b)", {a, b});
            if (leq(a, b) != leq_by_generators(a, b)) finding("leq disagrees with generator reachability", {a, b});
        }
    }
    for (const auto& a : all) {
        for (const auto& b : all) {
            for (const auto& c : all) {
                ++rep.triples;
                try {
                    if (join(a, meet(b, c)) != meet(join(a, b), join(a, c))) finding("a v (b ^ c)", {a, b, c});
                    if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) finding("a ^ (b v c)", {a, b, c});
                } catch (const PreconditionError&) {
                    finding("meet is empty", {a, b, c});
                }
            }
        }
    }

    const std::vector<LowerSet> lowers = enumerate_lower_sets(r);
    if (lowers.size() != all.size()) rep.findings.push_back("lower set count " + std::to_string(lowers.size()) + " != " + std::to_string(all.size()));
    std::set<LatticeElement> images;
    for (const auto& l : lowers) {
        const LatticeElement b = beta(l);
        images.insert(b);
        if (alpha(b) != l) rep.findings.push_back("alpha(beta(L)) != L for " + to_string(l));
        for (const auto& m : lowers) {
            if (subset(l, m) != leq(b, beta(m))) rep.findings.push_back("beta is not an order isomorphism at " + to_string(l) + ", " + to_string(m));
        }
    }
    if (images.size() != lowers.size()) rep.findings.push_back("beta is not injective");

    for (const JoinIrreducible& x : join_irreducibles(r)) {
        const LatticeElement e = x.as_set();
        if (e == LatticeElement{0}) finding("least element listed as join-irreducible", {e});
        for (const auto& a : all) {
            for (const auto& b : all) {
                if (a == e || b == e || !leq(a, e) || !leq(b, e)) continue;
                if (join(a, b) == e) finding("join-reducible", {e, a, b});
            }
        }
    }
    return rep;
}

std::string to_string(const LatticeElement& s) {
    std::string out = "{";
    for (int x : s) {
        if (out.size() > 1) out += ",";
        out += std::to_string(x);
    }
    return out + "}";
}

std::string to_string(const LowerSet& l) {
    std::string out = "{";
    for (const auto& x : l) {
        if (out.size() > 1) out += ",";
        out += to_string(x.as_set());
    }
    return out + "}";
}

}  // namespace specseq
