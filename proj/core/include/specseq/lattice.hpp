#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace specseq {

/// An element of the lattice N of indexing sets: a finite nonempty set of
/// naturals.
using LatticeElement = std::set<int>;

/// A join-irreducible {n} (with_zero false) or {0, n} (with_zero true),
/// n >= 1.
struct JoinIrreducible {
    int n = 1;
    bool with_zero = false;
    LatticeElement as_set() const;
    friend auto operator<=>(const JoinIrreducible&, const JoinIrreducible&) = default;
};

/// {m} <= {n} and {m} <= {0,n} iff m <= n; {0,m} <= {0,n} iff m = n.
bool irreducible_leq(const JoinIrreducible& a, const JoinIrreducible& b);

using LowerSet = std::set<JoinIrreducible>;

/// Throws PreconditionError unless s is nonempty with nonnegative entries.
void validate_element(const LatticeElement& s);
/// Throws PreconditionError unless l is downward closed.
void validate_lower_set(const LowerSet& l);

/// (S + m - max S) u (T + m - max T), m = max(S u T).
LatticeElement join(const LatticeElement& s, const LatticeElement& t);
/// (S - m + max T) n (T - m + max S). Throws PreconditionError when empty.
LatticeElement meet(const LatticeElement& s, const LatticeElement& t);

/// {{1}, ..., {s}} u {{0, s - t} : t in S, t < s} for s = max S.
LowerSet alpha(const LatticeElement& s);
/// Inverse of alpha; the empty lower set gives {0}.
LatticeElement beta(const LowerSet& l);

/// alpha(t) contained in alpha(s).
bool leq(const LatticeElement& t, const LatticeElement& s);
/// Reachability through T -> S for T a subset of S with equal maxima, and
/// T -> T + 1, inside N_r with r = max of both.
bool leq_by_generators(const LatticeElement& t, const LatticeElement& s);

/// Elements of N_r: nonempty subsets of {0, ..., r}, ordered by max then
/// lexicographically.
std::vector<LatticeElement> elements(int r);
/// The 2r join-irreducibles with n <= r.
std::vector<JoinIrreducible> join_irreducibles(int r);
/// Every lower set of join_irreducibles(r), the empty one included.
std::vector<LowerSet> enumerate_lower_sets(int r);

struct LatticeReport {
    int r = 0;
    std::size_t elements = 0;
    std::size_t triples = 0;
    /// Failed law and the offending elements, one line each.
    std::vector<std::string> findings;
    bool pass() const { return findings.empty(); }
};
/// Exhaustive check on N_r: both distributive laws, absorption bounds,
/// alpha/beta inverse and order preserving, alpha of join and meet,
/// leq against generator reachability, meet nonemptiness and
/// join-irreducibility of join_irreducibles(r).
LatticeReport check_distributive(int r);

std::string to_string(const LatticeElement& s);
std::string to_string(const LowerSet& l);

}  // namespace specseq
